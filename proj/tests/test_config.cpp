#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "gkss/config.hpp"

using nlohmann::json;

TEST(Range, Parses)
{
    gkss::SweepConfig cfg;
    gkss::parse_range("0.1:2:20", cfg);
    EXPECT_DOUBLE_EQ(cfg.start, 0.1);
    EXPECT_DOUBLE_EQ(cfg.stop, 2.0);
    EXPECT_EQ(cfg.steps, 20u);
    EXPECT_NO_THROW(cfg.check());
}

TEST(Range, RejectsMalformed)
{
    gkss::SweepConfig cfg;
    for (const char* bad : {"", "1:2", "a:2:3", "0:1:x", "0:1:3:4", "0:1:-2", "0:1:2.5"}) {
        EXPECT_THROW(gkss::parse_range(bad, cfg), gkss::ConfigError) << bad;
    }
}

TEST(Sweep, Invariants)
{
    gkss::SweepConfig cfg;
    cfg.start = 0.0;
    cfg.stop = 1.0;
    cfg.steps = 1;
    EXPECT_THROW(cfg.check(), gkss::ConfigError);
    cfg.steps = 3;
    cfg.stop = 0.0;
    EXPECT_THROW(cfg.check(), gkss::ConfigError);
    cfg.stop = 1.0;
    cfg.variable = gkss::SweepVariable::eta;
    EXPECT_THROW(cfg.check(), gkss::ConfigError);
    cfg.base.spectrum.kind = "trapped_ion";
    EXPECT_NO_THROW(cfg.check());
    cfg.variable = gkss::SweepVariable::r;
    cfg.start = -0.5;
    EXPECT_THROW(cfg.check(), gkss::ConfigError);
}

TEST(Sweep, GridHitsBothEnds)
{
    gkss::SweepConfig cfg;
    cfg.start = 0.1;
    cfg.stop = 2.0;
    cfg.steps = 20;
    const auto xs = cfg.grid();
    ASSERT_EQ(xs.size(), 20u);
    EXPECT_EQ(xs.front(), 0.1);
    EXPECT_EQ(xs.back(), 2.0);
    EXPECT_NEAR(xs[1], 0.2, 1e-15);
}

TEST(Spectrum, MakeFromSpec)
{
    gkss::SpectrumSpec spec;
    spec.kind = "poschl_teller";
    EXPECT_THROW(gkss::make_spectrum(spec), gkss::ConfigError);
    spec.nu = 5.0;
    EXPECT_DOUBLE_EQ(gkss::make_spectrum(spec).eigenvalue(2), 14.0);
    spec.kind = "trapped_ion";
    EXPECT_THROW(gkss::make_spectrum(spec), gkss::ConfigError);
    spec.kind = "table";
    EXPECT_THROW(gkss::make_spectrum(spec), gkss::ConfigError);
    spec.values = {0.0, 2.0, 5.0};
    EXPECT_DOUBLE_EQ(gkss::make_spectrum(spec).eigenvalue(2), 5.0);
    spec.kind = "morse";
    EXPECT_THROW(gkss::make_spectrum(spec), gkss::ConfigError);
}

TEST(Document, FullDocument)
{
    const auto doc = gkss::config_from_json(json::parse(R"({
        "spectrum": {"kind": "trapped_ion"},
        "state": {"class": "IV", "phi": 0.2, "alpha": 1.5},
        "truncation": {"tol": 1e-14, "max_n": 500, "force_truncate": 40},
        "sweep": {"variable": "eta", "range": "0.1:0.7:7"}
    })"));
    EXPECT_EQ(doc.state.spectrum.kind, "trapped_ion");
    EXPECT_EQ(doc.state.state_class, gkss::StateClass::IV);
    EXPECT_DOUBLE_EQ(doc.state.params.alpha, 1.5);
    EXPECT_DOUBLE_EQ(doc.state.policy.tol, 1e-14);
    EXPECT_EQ(doc.state.policy.max_terms, 500u);
    EXPECT_EQ(doc.state.policy.force_terms, std::optional<std::size_t>(40));
    ASSERT_TRUE(doc.sweep.has_value());
    EXPECT_EQ(doc.sweep->variable, gkss::SweepVariable::eta);
    EXPECT_EQ(doc.sweep->steps, 7u);
}

TEST(Document, StartStopForm)
{
    const auto doc = gkss::config_from_json(
        json::parse(R"({"state": {"r": 1}, "sweep": {"variable": "alpha", "start": 0, "stop": 3.49, "steps": 50}})"));
    EXPECT_EQ(doc.sweep->variable, gkss::SweepVariable::alpha);
    EXPECT_DOUBLE_EQ(doc.sweep->stop, 3.49);
    EXPECT_EQ(doc.sweep->steps, 50u);
}

TEST(Document, Rejects)
{
    for (const char* bad : {
             R"([])",
             R"({"spectrum": {"nu": 2}})",
             R"({"state": {"class": "V"}})",
             R"({"state": {"r": "one"}})",
             R"({"truncation": {"max_n": 0}})",
             R"({"sweep": {"variable": "beta"}})",
             R"({"state": {"r": 1}, "sweep": {"variable": "r", "range": "0:1:3"}})",
             R"({"spectrum": {"kind": "trapped_ion", "eta": 0.5}, "sweep": {"variable": "eta", "range": "0:1:3"}})",
         }) {
        EXPECT_THROW(gkss::config_from_json(json::parse(bad)), gkss::ConfigError) << bad;
    }
}

TEST(Document, LoadFromFile)
{
    const std::string path = testing::TempDir() + "gkss_config_test.json";
    {
        std::ofstream out(path);
        out << R"({"spectrum": {"kind": "hydrogen"}, "state": {"class": "I", "r": 0.5}})";
    }
    const auto doc = gkss::load_config(path);
    EXPECT_EQ(doc.state.spectrum.kind, "hydrogen");
    EXPECT_DOUBLE_EQ(doc.state.params.r, 0.5);
    std::remove(path.c_str());
    EXPECT_THROW(gkss::load_config(path), gkss::ConfigError);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    EXPECT_THROW(gkss::load_config(path), gkss::ConfigError);
    std::remove(path.c_str());
}
