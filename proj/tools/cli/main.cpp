#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "codediter/error.hpp"
#include "codediter/problems/edge_list.hpp"
#include "codediter/problems/graphs.hpp"
#include "codediter/sim/experiment.hpp"
#include "codediter/verify/checks.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using namespace codediter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::vector<std::string> sets;
    std::optional<unsigned> threads;
};

cli::Config load(const CommonFlags& flags) {
    cli::Config cfg = flags.config.empty() ? cli::Config::parse("") : cli::Config::load(flags.config);
    for (const auto& kv : flags.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (flags.seed) cfg.set("seed", std::to_string(*flags.seed));
    if (flags.threads) cfg.set("threads", std::to_string(*flags.threads));
    return cfg;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

int cmd_run(const CommonFlags& flags, const std::vector<std::string>& schemes, std::optional<std::int64_t> runs,
            std::optional<std::int64_t> iters) {
    cli::Config cfg = load(flags);
    if (!schemes.empty()) cfg.set("schemes", join(schemes));
    if (runs) cfg.set("runs", std::to_string(*runs));
    if (iters) cfg.set("iterations", std::to_string(*iters));
    const cli::RunSettings settings = cli::run_settings(cfg);
    const auto& base = settings.experiment;

    std::optional<ProblemInstance> shared;
    if (!base.problem.regenerates()) shared = build_problem(base.problem, base.seed);

    struct Result {
        std::string label;
        MetricsTrace mean;
    };
    std::vector<Result> results;
    for (const auto& choice : settings.schemes) {
        ExperimentConfig ex = base;
        ex.engine.scheme = choice.scheme;
        ex.engine.d = choice.d;
        const auto traces = shared ? run_experiment(ex, *shared) : run_experiment(ex);
        results.push_back({choice.label, average_traces(traces)});
    }

    const fs::path out_dir(flags.out);
    ensure_dir(out_dir);
    for (const auto& r : results) {
        const auto path = out_dir / (r.label + ".csv");
        auto out = open_out(path);
        write_trace_csv(out, r.mean);
        if (!out) throw IoError("failed while writing " + path.string());
    }

    std::printf("%-22s %14s %14s %12s %14s\n", "scheme", "final_error", "error_std", "delta_mean", "comm_cost");
    for (const auto& r : results) {
        const auto& last = r.mean.records.back();
        double delta = 0.0;
        for (std::size_t t = 1; t < r.mean.records.size(); ++t) delta += r.mean.records[t].delta;
        if (r.mean.records.size() > 1) delta /= static_cast<double>(r.mean.records.size() - 1);
        std::printf("%-22s %14.6e %14.6e %12.6f %14.6e\n", r.label.c_str(), last.error, last.error_std, delta,
                    last.comm_cost);
    }
    return kExitOk;
}

int cmd_verify(const CommonFlags& flags, const std::vector<std::string>& checks) {
    cli::Config cfg = load(flags);
    if (!checks.empty()) cfg.set("checks", join(checks));
    const cli::VerifySettings s = cli::verify_settings(cfg);

    std::vector<VerificationReport> reports;
    for (const auto& check : s.checks) {
        if (check == "lemma1") {
            for (const auto d : s.lemma1_degrees) {
                if (s.lemma1_workers != 2 * s.lemma1_splits)
                    throw ConfigError("lemma1 uses a combined-cyclic pattern, so lemma1_workers must be 2 * lemma1_splits");
                Rng rng = make_rng(s.lemma1.seed, static_cast<std::uint64_t>(d), "pattern");
                auto report = check_lemma1(make_combined_cyclic(s.lemma1_splits, d, rng), s.lemma1);
                report.check = "lemma1_d" + std::to_string(d);
                reports.push_back(std::move(report));
            }
        } else if (check == "theorem1") {
            reports.push_back(check_theorem1(s.theorem1));
        } else if (check == "theorem2") {
            reports.push_back(check_theorem2(s.theorem2));
        } else if (check == "norm_lemmas") {
            reports.push_back(check_norm_lemmas(s.norms));
        }
    }

    const fs::path out_dir(flags.out);
    ensure_dir(out_dir);
    const auto path = out_dir / "verify.csv";
    auto out = open_out(path);
    out << kReportCsvHeader << '\n';
    bool ok = true;
    for (const auto& r : reports) {
        write_report_csv_rows(out, r);
        write_report_text(std::cout, r);
        ok = ok && r.pass();
    }
    if (!out) throw IoError("failed while writing " + path.string());
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? kExitOk : kExitVerify;
}

int cmd_gen(const CommonFlags& flags) {
    cli::Config cfg = load(flags);
    const cli::GenSettings g = cli::gen_settings(cfg);
    const fs::path out_dir(flags.out);
    ensure_dir(out_dir);
    // Same stream build_problem uses, so a run with this seed sees the same graph.
    Rng rng = make_rng(g.seed, 0, "problem");

    std::vector<std::pair<std::string, std::string>> meta = {
        {"generator", g.generator}, {"seed", std::to_string(g.seed)}, {"nodes", std::to_string(g.nodes)}};
    auto fmt = [](double v) { return format_double(v); };
    if (g.generator == "er") {
        ProblemSpec spec;
        spec.nodes = g.nodes;
        spec.edge_probability = g.edge_probability;
        spec.mean_degree = g.mean_degree;
        const double p = spec.er_probability();
        const auto adj = gen_er(g.nodes, p, rng);
        write_edge_list(out_dir / (g.name + ".edges"), adj, true);
        meta.push_back({"edge_probability", fmt(p)});
        meta.push_back({"format", "undirected edge list"});
    } else if (g.generator == "sbm") {
        const auto sbm = gen_sbm(g.nodes, g.p_in, g.p_out, rng);
        write_edge_list(out_dir / (g.name + ".edges"), sbm.adjacency, true);
        auto labels = open_out(out_dir / (g.name + ".labels"));
        for (std::size_t i = 0; i < sbm.labels.size(); ++i) labels << i << ' ' << sbm.labels[i] << '\n';
        if (!labels) throw IoError("failed while writing labels");
        meta.push_back({"p_in", fmt(g.p_in)});
        meta.push_back({"p_out", fmt(g.p_out)});
        meta.push_back({"format", "undirected edge list"});
    } else {
        const std::vector<PlantedBlock> blocks(static_cast<std::size_t>(g.planted_blocks),
                                               PlantedBlock{g.planted_size, g.planted_density});
        const auto M = gen_planted(g.nodes, g.background_density, blocks, rng);
        auto out = open_out(out_dir / (g.name + ".triplets"));
        out << "# " << M.rows() << ' ' << M.cols() << ' ' << M.nnz() << '\n';
        const auto offsets = M.row_offsets();
        const auto cols = M.col_indices();
        const auto vals = M.values();
        for (std::int64_t r = 0; r < M.rows(); ++r)
            for (auto q = offsets[r]; q < offsets[r + 1]; ++q)
                out << r << ' ' << cols[q] << ' ' << format_double(vals[q]) << '\n';
        if (!out) throw IoError("failed while writing planted matrix");
        meta.push_back({"background_density", fmt(g.background_density)});
        meta.push_back({"planted_blocks", std::to_string(g.planted_blocks)});
        meta.push_back({"planted_size", std::to_string(g.planted_size)});
        meta.push_back({"planted_density", fmt(g.planted_density)});
        meta.push_back({"format", "row col value triplets"});
    }
    auto m = open_out(out_dir / (g.name + ".meta"));
    for (const auto& [k, v] : meta) m << k << " = " << v << '\n';
    if (!m) throw IoError("failed while writing metadata");
    return kExitOk;
}

void add_common(CLI::App* app, CommonFlags& flags) {
    app->add_option("--config", flags.config, "Config file (key = value lines)");
    app->add_option("--seed", flags.seed, "Master seed");
    app->add_option("--out", flags.out, "Output directory");
    app->add_option("--set", flags.sets, "Override a config key (KEY=VALUE, repeatable)");
    app->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed iterative computing simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags, verify_flags, gen_flags;
    std::vector<std::string> schemes, checks;
    std::optional<std::int64_t> runs, iters;

    auto* run = app.add_subcommand("run", "Simulate schemes and write one CSV trace per scheme");
    add_common(run, run_flags);
    run->add_option("--scheme", schemes, "Scheme to run, e.g. coded-d3 (repeatable)");
    run->add_option("--runs", runs, "Independent runs to average");
    run->add_option("--iters", iters, "Iterations per run");

    auto* verify = app.add_subcommand("verify", "Run the statistical checks and write verify.csv");
    add_common(verify, verify_flags);
    verify->add_option("--check", checks, "Check to run (repeatable)");

    auto* gen = app.add_subcommand("gen", "Write a synthetic graph or matrix with a metadata sidecar");
    add_common(gen, gen_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags, schemes, runs, iters);
        if (verify->parsed()) return cmd_verify(verify_flags, checks);
        return cmd_gen(gen_flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
