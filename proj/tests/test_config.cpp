#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "brandsim/config.hpp"

namespace brandsim {
namespace {

SimConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

const char* kMinimal = "N = 3\nK = 10\nM = 4\nmode = hierarchy\nseed = 99\n";

std::string config_error_key(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
    const auto cfg = parse(kMinimal);
    EXPECT_EQ(cfg.N, 3);
    EXPECT_EQ(cfg.K, 10);
    EXPECT_EQ(cfg.M, 4);
    EXPECT_EQ(cfg.mode, Mode::Hierarchy);
    EXPECT_EQ(cfg.seed, 99u);
    EXPECT_EQ(cfg.p_unknown, 0.25);
    EXPECT_EQ(cfg.shop_teach_rate, 0.0);
    EXPECT_EQ(cfg.epsilon, 1e-12);
    EXPECT_EQ(cfg.record_every, 1);
    EXPECT_EQ(cfg.p_copy, 0.5);
    EXPECT_EQ(cfg.leader_count, 0);
    EXPECT_EQ(cfg.leader_pupils, 0);
    EXPECT_FALSE(cfg.aligned_leader_brand.has_value());
    EXPECT_EQ(cfg.shop_counts, (std::vector<std::int64_t>{1, 1, 1}));
    EXPECT_EQ(cfg.max_sweeps, 10000);
}

TEST(Config, FullFileWithComments) {
    const auto cfg = parse(
        "# market\n"
        "N = 2\nK = 100\nM = 10   # needs\nmode = Equality\n"
        "p_copy = 1\np_unknown = 0\nleader_count = 1\nleader_pupils = 5\n"
        "aligned_leader_brand = 0\nshop_counts = 2, 3\nshop_teach_rate = 1.5\n"
        "epsilon = 1e-9\nmax_sweeps = 500\nrecord_every = 10\nseed = 18446744073709551615\n");
    EXPECT_EQ(cfg.mode, Mode::Equality);
    EXPECT_EQ(cfg.aligned_leader_brand, 0);
    EXPECT_EQ(cfg.shop_counts, (std::vector<std::int64_t>{2, 3}));
    EXPECT_EQ(cfg.shop_teach_rate, 1.5);
    EXPECT_EQ(cfg.epsilon, 1e-9);
    EXPECT_EQ(cfg.record_every, 10);
    EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
}

TEST(Config, RangeErrorsNameTheKey) {
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "p_copy = 1.5\n"), "p_copy");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "p_unknown = -0.1\n"), "p_unknown");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "leader_count = 10\n"), "leader_count");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "leader_pupils = 10\n"), "leader_pupils");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "aligned_leader_brand = 3\n"), "aligned_leader_brand");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "shop_counts = 1,2\n"), "shop_counts");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "shop_counts = 1,0,2\n"), "shop_counts");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "epsilon = 0\n"), "epsilon");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "max_sweeps = 0\n"), "max_sweeps");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "record_every = 0\n"), "record_every");
    EXPECT_EQ(config_error_key("N = 0\nK = 10\nM = 4\nmode = equality\nseed = 1\n"), "N");
    EXPECT_EQ(config_error_key("N = 1\nK = 1\nM = 4\nmode = equality\nseed = 1\n"), "K");
    EXPECT_EQ(config_error_key("N = 1\nK = 2\nM = 0\nmode = equality\nseed = 1\n"), "M");
}

TEST(Config, SyntaxErrors) {
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "colour = red\n"), "colour");
    EXPECT_EQ(config_error_key(std::string(kMinimal) + "K = 12\n"), "K");
    EXPECT_EQ(config_error_key("N = 3\nK = 10\nM = 4\nseed = 1\n"), "mode");
    EXPECT_EQ(config_error_key("N = 3\nK = ten\nM = 4\nmode = equality\nseed = 1\n"), "K");
    EXPECT_EQ(config_error_key("N = 3\nK = 10\nM = 4\nmode = anarchy\nseed = 1\n"), "mode");
    EXPECT_THROW(parse(std::string(kMinimal) + "just words\n"), ConfigError);
}

TEST(Config, MissingFileIsIoError) {
    EXPECT_THROW(load_config("/nonexistent/brandsim.cfg"), IoError);
}

}  // namespace brandsim
