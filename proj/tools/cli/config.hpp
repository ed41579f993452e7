#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "codediter/sim/experiment.hpp"
#include "codediter/verify/checks.hpp"

namespace codediter::cli {

struct ConfigValue {
    std::string text;
    std::int64_t line = 0;  ///< 0 for command-line overrides
};

/// Flat `key = value` settings; '#' starts a comment.
class Config {
public:
    static Config parse(std::string_view text, std::filesystem::path base_dir = {});
    static Config load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value);
    bool has(const std::string& key) const { return values_.contains(key); }

    std::string get_string(const std::string& key, const std::string& fallback);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    double get_double(const std::string& key, double fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback);
    /// Relative paths resolve against the config file's directory.
    std::filesystem::path get_path(const std::string& key);

    /// Throws ConfigError for the first key never read.
    void reject_unused() const;

private:
    const ConfigValue* find(const std::string& key);
    [[noreturn]] void bad_value(const std::string& key, std::string_view expected) const;

    std::map<std::string, ConfigValue> values_;
    std::set<std::string> used_;
    std::filesystem::path base_dir_;
};

struct SchemeChoice {
    std::string label;
    Scheme scheme = Scheme::Coded;
    std::int64_t d = 0;
};

/// "coded-d3" -> Coded with d = 3; names without a -dN suffix use default_d.
SchemeChoice parse_scheme_choice(std::string_view token, std::int64_t default_d);

struct RunSettings {
    ExperimentConfig experiment;
    std::vector<SchemeChoice> schemes;
};

RunSettings run_settings(Config& cfg);

struct VerifySettings {
    std::vector<std::string> checks;
    std::vector<std::int64_t> lemma1_degrees;
    std::int64_t lemma1_workers = 20;
    std::int64_t lemma1_splits = 10;
    Lemma1Config lemma1;
    Theorem1Config theorem1;
    Theorem2Config theorem2;
    NormLemmaConfig norms;
};

inline const std::vector<std::string> kAllChecks = {"lemma1", "theorem1", "theorem2", "norm_lemmas"};

VerifySettings verify_settings(Config& cfg);

struct GenSettings {
    std::string generator = "er";  ///< er | sbm | planted
    std::string name;
    std::int64_t nodes = 1000;
    double edge_probability = 0.0;
    double mean_degree = 20.0;
    double p_in = 0.02;
    double p_out = 0.003;
    double background_density = 0.01;
    std::int64_t planted_blocks = 5;
    std::int64_t planted_size = 50;
    double planted_density = 0.2;
    std::uint64_t seed = kDefaultSeed;
};

GenSettings gen_settings(Config& cfg);

}  // namespace codediter::cli
