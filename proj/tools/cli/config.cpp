#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "codediter/error.hpp"

namespace codediter::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

Config Config::parse(std::string_view text, std::filesystem::path base_dir) {
    Config cfg;
    cfg.base_dir_ = std::move(base_dir);
    std::int64_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (cfg.values_.contains(key))
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        cfg.values_[key] = {value, line_no};
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.parent_path());
}

void Config::set(const std::string& key, std::string value) { values_[key] = {std::move(value), 0}; }

const ConfigValue* Config::find(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
}

void Config::bad_value(const std::string& key, std::string_view expected) const {
    const auto& v = values_.at(key);
    std::string where = v.line > 0 ? " (line " + std::to_string(v.line) + ")" : " (command line)";
    throw ConfigError("config key '" + key + "'" + where + ": expected " + std::string(expected) + ", got '" +
                      v.text + "'");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    const auto* v = find(key);
    return v ? v->text : fallback;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    std::int64_t out = 0;
    if (!parse_number(v->text, out)) bad_value(key, "an integer");
    return out;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    if (!parse_number(v->text, out)) bad_value(key, "an unsigned integer");
    return out;
}

double Config::get_double(const std::string& key, double fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    double out = 0.0;
    if (!parse_number(v->text, out)) bad_value(key, "a number");
    return out;
}

bool Config::get_bool(const std::string& key, bool fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->text == "true" || v->text == "yes" || v->text == "on" || v->text == "1") return true;
    if (v->text == "false" || v->text == "no" || v->text == "off" || v->text == "0") return false;
    bad_value(key, "true or false");
}

std::vector<std::string> Config::get_list(const std::string& key, const std::vector<std::string>& fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    std::vector<std::string> out;
    std::string_view rest = v->text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (item.empty()) bad_value(key, "a comma-separated list");
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) bad_value(key, "a non-empty list");
    return out;
}

std::filesystem::path Config::get_path(const std::string& key) {
    const auto* v = find(key);
    if (!v || v->text.empty()) return {};
    std::filesystem::path p(v->text);
    if (p.is_relative() && v->line > 0 && !base_dir_.empty()) p = base_dir_ / p;
    return p;
}

void Config::reject_unused() const {
    for (const auto& [key, v] : values_)
        if (!used_.contains(key))
            throw ConfigError("unknown config key '" + key + "'" +
                              (v.line > 0 ? " (line " + std::to_string(v.line) + ")" : std::string{}));
}

SchemeChoice parse_scheme_choice(std::string_view token, std::int64_t default_d) {
    SchemeChoice out;
    out.label = std::string(token);
    out.d = default_d;
    std::string_view name = token;
    if (const auto dash = token.rfind("-d"); dash != std::string_view::npos && dash + 2 < token.size()) {
        std::int64_t d = 0;
        if (parse_number(token.substr(dash + 2), d)) {
            out.d = d;
            name = token.substr(0, dash);
        }
    }
    out.scheme = parse_scheme(name);
    return out;
}

namespace {

DanglingMode parse_dangling(const std::string& s) {
    if (s == "keep") return DanglingMode::Keep;
    if (s == "uniform") return DanglingMode::Uniform;
    throw ConfigError("config key 'dangling': expected keep or uniform, got '" + s + "'");
}

IsolateMode parse_isolate(const std::string& s) {
    if (s == "reject") return IsolateMode::Reject;
    if (s == "drop") return IsolateMode::Drop;
    throw ConfigError("config key 'isolated': expected reject or drop, got '" + s + "'");
}

PatternKind parse_pattern_kind(const std::string& s) {
    if (s == "combined_cyclic") return PatternKind::CombinedCyclic;
    if (s == "random_regular") return PatternKind::RandomRegular;
    throw ConfigError("config key 'pattern': expected combined_cyclic or random_regular, got '" + s + "'");
}

AccelRoute parse_route(const std::string& s) {
    if (s == "svd") return AccelRoute::Svd;
    if (s == "eig") return AccelRoute::Eig;
    throw ConfigError("config key 'accel_route': expected svd or eig, got '" + s + "'");
}

ErasureKind parse_erasure(const std::string& s) {
    if (s == "fixed") return ErasureKind::FixedFraction;
    if (s == "bernoulli") return ErasureKind::Bernoulli;
    throw ConfigError("config key 'erasure': expected fixed or bernoulli, got '" + s + "'");
}

StorageMode parse_storage(const std::string& s) {
    if (s == "materialized") return StorageMode::Materialized;
    if (s == "shared") return StorageMode::Shared;
    throw ConfigError("config key 'storage': expected materialized or shared, got '" + s + "'");
}

template <class Fn>
auto with_key(const char* key, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

void read_threads(Config& cfg, unsigned& threads) {
    const auto t = cfg.get_int("threads", 0);
    if (t < 0) throw ConfigError("config key 'threads': must be >= 0");
    threads = static_cast<unsigned>(t);
}

}  // namespace

RunSettings run_settings(Config& cfg) {
    RunSettings out;
    auto& ex = out.experiment;
    auto& p = ex.problem;
    auto& e = ex.engine;

    p.kind = with_key("problem", [&] { return parse_problem_kind(cfg.get_string("problem", "pagerank")); });
    p.graph = with_key("graph", [&] { return parse_graph_source(cfg.get_string("graph", "er")); });
    p.edge_list = cfg.get_path("edge_list");
    p.undirected = cfg.get_bool("undirected", p.undirected);
    if (p.graph == GraphSource::File && p.edge_list.empty())
        throw ConfigError("config key 'edge_list': required when graph = file");
    p.nodes = cfg.get_int("nodes", p.nodes);
    p.edge_probability = cfg.get_double("edge_probability", p.edge_probability);
    p.mean_degree = cfg.get_double("mean_degree", cfg.has("edge_probability") ? 0.0 : p.mean_degree);
    p.p_in = cfg.get_double("p_in", p.p_in);
    p.p_out = cfg.get_double("p_out", p.p_out);
    p.damping = cfg.get_double("damping", p.damping);
    p.dangling = parse_dangling(cfg.get_string("dangling", "keep"));
    p.isolate = parse_isolate(cfg.get_string("isolated", "reject"));
    p.rank = cfg.get_int("rank", p.rank);
    p.background_density = cfg.get_double("background_density", p.background_density);
    p.planted_blocks = cfg.get_int("planted_blocks", p.planted_blocks);
    p.planted_size = cfg.get_int("planted_size", p.planted_size);
    p.planted_density = cfg.get_double("planted_density", p.planted_density);
    p.samples = cfg.get_int("samples", p.samples);
    p.dim = cfg.get_int("dim", p.dim);
    if (cfg.has("regenerate")) p.regenerate = cfg.get_bool("regenerate", true);

    e.split = with_key("split", [&] { return parse_split_scheme(cfg.get_string("split", "row")); });
    e.P = cfg.get_int("workers", e.P);
    e.k = cfg.get_int("splits", e.k);
    e.d = cfg.get_int("degree", e.d);
    e.pattern_kind = parse_pattern_kind(cfg.get_string("pattern", "combined_cyclic"));
    if (const auto path = cfg.get_path("pattern_file"); !path.empty()) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read pattern file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        e.pattern = SparsityPattern::parse(ss.str());
    }
    e.accelerate = cfg.get_bool("accelerate", e.accelerate);
    e.route = parse_route(cfg.get_string("accel_route", "svd"));
    e.step_size = cfg.get_double("step_size", e.step_size);
    e.step_relative = cfg.get_bool("step_relative", e.step_relative);
    e.rank_tol = cfg.get_double("rank_tol", e.rank_tol);
    e.fast_path = cfg.get_bool("fast_path", e.fast_path);
    e.storage = parse_storage(cfg.get_string("storage", "materialized"));

    ex.erasure.kind = parse_erasure(cfg.get_string("erasure", "fixed"));
    ex.erasure.epsilon = cfg.get_double("epsilon", ex.erasure.epsilon);
    ex.iterations = cfg.get_int("iterations", ex.iterations);
    ex.runs = cfg.get_int("runs", ex.runs);
    ex.seed = cfg.get_u64("seed", ex.seed);
    read_threads(cfg, ex.threads);

    if (ex.iterations < 0) throw ConfigError("config key 'iterations': must be >= 0");
    if (ex.runs < 1) throw ConfigError("config key 'runs': must be >= 1");
    if (!(ex.erasure.epsilon >= 0.0 && ex.erasure.epsilon <= 1.0))
        throw ConfigError("config key 'epsilon': must lie in [0, 1]");

    for (const auto& token : cfg.get_list("schemes", {"noiseless", "uncoded", "replication", "coded-d2"})) {
        auto choice = with_key("schemes", [&] { return parse_scheme_choice(token, e.d); });
        for (const auto& prev : out.schemes)
            if (prev.label == choice.label) throw ConfigError("config key 'schemes': duplicate '" + token + "'");
        EngineConfig probe = e;
        probe.scheme = choice.scheme;
        probe.d = choice.d;
        with_key("schemes", [&] {
            validate_engine_config(probe, p.kind);
            return 0;
        });
        out.schemes.push_back(std::move(choice));
    }
    cfg.reject_unused();
    return out;
}

VerifySettings verify_settings(Config& cfg) {
    VerifySettings out;
    out.checks = cfg.get_list("checks", kAllChecks);
    for (const auto& c : out.checks)
        if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
            throw ConfigError("unknown check '" + c + "' (expected lemma1, theorem1, theorem2 or norm_lemmas)");
    const auto seed = cfg.get_u64("seed", kDefaultVerifySeed);
    unsigned threads = 0;
    read_threads(cfg, threads);

    for (const auto& d : cfg.get_list("lemma1_degrees", {"2", "3"})) {
        std::int64_t v = 0;
        if (!parse_number(std::string_view(d), v) || v < 1) throw ConfigError("config key 'lemma1_degrees': bad '" + d + "'");
        out.lemma1_degrees.push_back(v);
    }
    out.lemma1_workers = cfg.get_int("lemma1_workers", out.lemma1_workers);
    out.lemma1_splits = cfg.get_int("lemma1_splits", out.lemma1_splits);
    auto& l = out.lemma1;
    l.seed = seed;
    l.threads = threads;
    l.erasure.epsilon = cfg.get_double("lemma1_epsilon", l.erasure.epsilon);
    l.samples = cfg.get_int("lemma1_samples", l.samples);
    l.delta_samples = cfg.get_int("lemma1_delta_samples", l.delta_samples);
    l.max_off_diagonal = cfg.get_double("lemma1_max_off_diagonal", l.max_off_diagonal);
    l.max_diagonal_spread = cfg.get_double("lemma1_max_diagonal_spread", l.max_diagonal_spread);
    l.max_diagonal_bias = cfg.get_double("lemma1_max_diagonal_bias", l.max_diagonal_bias);

    auto& t1 = out.theorem1;
    t1.seed = seed;
    t1.threads = threads;
    t1.runs = cfg.get_int("theorem1_runs", t1.runs);
    t1.d = cfg.get_int("theorem1_degree", t1.d);
    t1.epsilon = cfg.get_double("theorem1_epsilon", t1.epsilon);
    t1.iterations = cfg.get_int("theorem1_iterations", t1.iterations);
    t1.spectral_norm = cfg.get_double("theorem1_norm", t1.spectral_norm);
    t1.se_multiplier = cfg.get_double("theorem1_se_multiplier", t1.se_multiplier);

    auto& t2 = out.theorem2;
    t2.seed = seed;
    t2.threads = threads;
    t2.runs = cfg.get_int("theorem2_runs", t2.runs);
    t2.d = cfg.get_int("theorem2_degree", t2.d);
    t2.epsilon = cfg.get_double("theorem2_epsilon", t2.epsilon);
    t2.iterations = cfg.get_int("theorem2_iterations", t2.iterations);
    t2.col_norm = cfg.get_double("theorem2_col_norm", t2.col_norm);
    t2.se_multiplier = cfg.get_double("theorem2_se_multiplier", t2.se_multiplier);

    auto& n = out.norms;
    n.seed = seed;
    n.threads = threads;
    n.N = cfg.get_int("norm_nodes", n.N);
    n.p = cfg.get_double("norm_edge_probability", n.p);
    n.epsilon = cfg.get_double("norm_epsilon", n.epsilon);
    n.k = cfg.get_int("norm_splits", n.k);
    n.graphs = cfg.get_int("norm_graphs", n.graphs);
    n.vacuous_bound_level = cfg.get_double("norm_vacuous_level", n.vacuous_bound_level);
    cfg.reject_unused();
    return out;
}

GenSettings gen_settings(Config& cfg) {
    GenSettings g;
    g.generator = cfg.get_string("generator", g.generator);
    if (g.generator != "er" && g.generator != "sbm" && g.generator != "planted")
        throw ConfigError("config key 'generator': expected er, sbm or planted, got '" + g.generator + "'");
    g.name = cfg.get_string("name", g.generator);
    g.nodes = cfg.get_int("nodes", g.nodes);
    g.edge_probability = cfg.get_double("edge_probability", g.edge_probability);
    g.mean_degree = cfg.get_double("mean_degree", cfg.has("edge_probability") ? 0.0 : g.mean_degree);
    g.p_in = cfg.get_double("p_in", g.p_in);
    g.p_out = cfg.get_double("p_out", g.p_out);
    g.background_density = cfg.get_double("background_density", g.background_density);
    g.planted_blocks = cfg.get_int("planted_blocks", g.planted_blocks);
    g.planted_size = cfg.get_int("planted_size", g.planted_size);
    g.planted_density = cfg.get_double("planted_density", g.planted_density);
    g.seed = cfg.get_u64("seed", g.seed);
    if (g.nodes < 1) throw ConfigError("config key 'nodes': must be >= 1");
    cfg.reject_unused();
    return g;
}

}  // namespace codediter::cli
