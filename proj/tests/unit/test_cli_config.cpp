#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "codediter/error.hpp"
#include "config.hpp"

using namespace codediter;
using codediter::cli::Config;

TEST(CliConfig, GrammarAndGetters) {
    auto c = Config::parse(
        "# comment\n"
        "nodes = 500   # trailing comment\n"
        "  epsilon=0.25\n"
        "\n"
        "accelerate = yes\n"
        "schemes = uncoded, coded-d3\n"
        "name = two words\n");
    EXPECT_EQ(c.get_int("nodes", 0), 500);
    EXPECT_DOUBLE_EQ(c.get_double("epsilon", 0), 0.25);
    EXPECT_TRUE(c.get_bool("accelerate", false));
    EXPECT_EQ(c.get_list("schemes", {}), (std::vector<std::string>{"uncoded", "coded-d3"}));
    EXPECT_EQ(c.get_string("name", ""), "two words");
    EXPECT_EQ(c.get_int("absent", 7), 7);
    EXPECT_NO_THROW(c.reject_unused());
}

TEST(CliConfig, ErrorsNameTheLine) {
    auto expect_msg = [](const std::string& text, const std::string& fragment) {
        try {
            Config::parse(text);
            FAIL() << text;
        } catch (const ConfigError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_msg("a = 1\nbroken\n", "line 2");
    expect_msg("a = 1\na = 2\n", "line 2");
    expect_msg(" = 3\n", "line 1");
}

TEST(CliConfig, BadValuesAndUnusedKeys) {
    auto c = Config::parse("nodes = lots\nflag = maybe\nstray = 1\n");
    EXPECT_THROW(c.get_int("nodes", 0), ConfigError);
    EXPECT_THROW(c.get_bool("flag", false), ConfigError);
    try {
        c.reject_unused();
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("stray"), std::string::npos);
    }
}

TEST(CliConfig, OverridesAndPaths) {
    const auto dir = std::filesystem::temp_directory_path() / "codediter_cli_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "x.conf");
        f << "edge_list = graph.edges\nruns = 3\n";
    }
    auto c = Config::load(dir / "x.conf");
    c.set("runs", "9");
    EXPECT_EQ(c.get_int("runs", 0), 9);
    EXPECT_EQ(c.get_path("edge_list"), dir / "graph.edges");
    EXPECT_THROW(Config::load(dir / "missing.conf"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(CliConfig, SchemeChoices) {
    auto s = cli::parse_scheme_choice("coded-d3", 2);
    EXPECT_EQ(s.scheme, Scheme::Coded);
    EXPECT_EQ(s.d, 3);
    EXPECT_EQ(s.label, "coded-d3");
    s = cli::parse_scheme_choice("replication_storage", 2);
    EXPECT_EQ(s.scheme, Scheme::ReplicationStorage);
    EXPECT_EQ(s.d, 2);
    EXPECT_THROW(cli::parse_scheme_choice("magic", 2), ConfigError);
}

TEST(CliConfig, RunSettingsDefaultsAndValidation) {
    auto c = Config::parse("");
    const auto rs = cli::run_settings(c);
    EXPECT_EQ(rs.experiment.seed, kDefaultSeed);
    ASSERT_EQ(rs.schemes.size(), 4u);
    EXPECT_EQ(rs.schemes[3].label, "coded-d2");

    auto bad_scheme = Config::parse("schemes = approx_gc\n");
    EXPECT_THROW(cli::run_settings(bad_scheme), ConfigError);
    auto dup = Config::parse("schemes = uncoded, uncoded\n");
    EXPECT_THROW(cli::run_settings(dup), ConfigError);
    auto eps = Config::parse("epsilon = 1.5\n");
    EXPECT_THROW(cli::run_settings(eps), ConfigError);
    auto unknown = Config::parse("nodez = 3\n");
    EXPECT_THROW(cli::run_settings(unknown), ConfigError);
    auto file = Config::parse("graph = file\n");
    EXPECT_THROW(cli::run_settings(file), ConfigError);

    auto gd = Config::parse("problem = gd\nschemes = coded-d2, approx_gc\nsamples = 500\ndim = 100\n");
    const auto g = cli::run_settings(gd);
    EXPECT_EQ(g.experiment.problem.kind, ProblemKind::Gradient);
    EXPECT_EQ(g.schemes[1].scheme, Scheme::ApproxGradientCoding);
}

TEST(CliConfig, VerifySettings) {
    auto c = Config::parse("checks = lemma1\nlemma1_samples = 10\nseed = 5\n");
    const auto v = cli::verify_settings(c);
    EXPECT_EQ(v.checks, (std::vector<std::string>{"lemma1"}));
    EXPECT_EQ(v.lemma1.samples, 10);
    EXPECT_EQ(v.lemma1.seed, 5u);
    EXPECT_EQ(v.lemma1_degrees, (std::vector<std::int64_t>{2, 3}));
    auto bad = Config::parse("checks = lemma9\n");
    EXPECT_THROW(cli::verify_settings(bad), ConfigError);
}
