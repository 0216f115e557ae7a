#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "gkss/cli.hpp"

namespace {

struct Invocation {
    int code = -1;
    std::string out;
};

/// Runs the built executable with `args`; stderr is folded into `out` when
/// `with_stderr` is set.
Invocation run(const std::string& args, bool with_stderr = false)
{
    const std::string cmd = std::string(GKSS_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    Invocation r;
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

gkss::StateRequest request(const std::string& kind, gkss::StateClass c, double r)
{
    gkss::StateRequest req;
    req.spectrum.kind = kind;
    req.state_class = c;
    req.params.r = r;
    return req;
}

} // namespace

TEST(CmdState, VacuumSingleRow)
{
    std::ostringstream out, err;
    EXPECT_EQ(gkss::cli::cmd_state(request("harmonic", gkss::StateClass::I, 0.0), out, err), 0);
    EXPECT_EQ(out.str(), "n,re,im,P\n0,1,0,1\n");
}

TEST(CmdState, SqueezedVacuumGroundProbability)
{
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_state(request("harmonic", gkss::StateClass::I, 1.0), out, err), 0);
    const auto rows = csv(out.str());
    ASSERT_GT(rows.size(), 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "re", "im", "P"}));
    EXPECT_NEAR(std::stod(rows[1][3]), 0.64805, 5e-6);
    EXPECT_EQ(rows[2][3], "0");
    EXPECT_EQ(rows.size() % 2, 0u);
}

TEST(CmdState, DivergenceExitCode)
{
    std::ostringstream out, err;
    EXPECT_EQ(gkss::cli::cmd_state(request("hydrogen", gkss::StateClass::II, 0.5), out, err), 3);
    EXPECT_NE(err.str().find("diverges"), std::string::npos);
    EXPECT_TRUE(out.str().empty());
}

TEST(CmdState, ForcedTruncationIsLabelled)
{
    auto req = request("hydrogen", gkss::StateClass::II, 0.5);
    req.policy.force_terms = 4;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_state(req, out, err), 0);
    EXPECT_EQ(out.str().rfind("# truncated=forced N=4\n", 0), 0u);
    EXPECT_EQ(csv(out.str()).size(), 10u);
}

TEST(CmdState, ErrorCodes)
{
    std::ostringstream out, err;
    EXPECT_EQ(gkss::cli::cmd_state(request("morse", gkss::StateClass::I, 1.0), out, err), 2);
    auto bad_r = request("harmonic", gkss::StateClass::I, -1.0);
    EXPECT_EQ(gkss::cli::cmd_state(bad_r, out, err), 2);
    auto singular = request("trapped_ion", gkss::StateClass::I, 0.5);
    singular.spectrum.eta = 1.0;
    EXPECT_EQ(gkss::cli::cmd_state(singular, out, err), 4);
    auto capped = request("harmonic", gkss::StateClass::I, 2.0);
    capped.policy.max_terms = 5;
    EXPECT_EQ(gkss::cli::cmd_state(capped, out, err), 3);
}

TEST(CmdSweep, HarmonicQIsCoshTwoR)
{
    gkss::SweepConfig cfg;
    cfg.variable = gkss::SweepVariable::r;
    cfg.start = 0.1;
    cfg.stop = 2.0;
    cfg.steps = 20;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, out, err, 3), 0);
    const auto rows = csv(out.str());
    ASSERT_EQ(rows.size(), 21u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "Q", "var_x", "var_p", "mean_n", "error"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double r = std::stod(rows[i][0]);
        EXPECT_NEAR(std::stod(rows[i][1]), std::cosh(2.0 * r), 1e-8) << "r=" << r;
        EXPECT_EQ(rows[i][5], "");
    }
}

TEST(CmdSweep, AlphaWindow)
{
    gkss::SweepConfig cfg;
    cfg.base.params.r = 1.0;
    cfg.variable = gkss::SweepVariable::alpha;
    cfg.start = 0.0;
    cfg.stop = 3.49;
    cfg.steps = 350;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, out, err, 2), 0);
    const auto rows = csv(out.str());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double a = std::stod(rows[i][0]);
        EXPECT_EQ(std::stod(rows[i][2]) < 0.5, a > 1.218 && a < 1.923) << "alpha=" << a;
    }
}

TEST(CmdSweep, UndefinedQAndDivergentRows)
{
    gkss::SweepConfig cfg;
    cfg.base.spectrum.kind = "hydrogen";
    cfg.base.state_class = gkss::StateClass::II;
    cfg.variable = gkss::SweepVariable::r;
    cfg.start = 0.0;
    cfg.stop = 0.5;
    cfg.steps = 3;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, out, err, 2), 0);
    EXPECT_EQ(out.str(), "x,Q,var_x,var_p,mean_n,error\n"
                         "0,,0.5,0.5,0,\n"
                         "0.25,,,,,divergent\n"
                         "0.5,,,,,divergent\n");
}

TEST(CmdSweep, EtaSweepAndConfigError)
{
    gkss::SweepConfig cfg;
    cfg.base.spectrum.kind = "trapped_ion";
    cfg.base.params.r = 1.0;
    cfg.variable = gkss::SweepVariable::eta;
    cfg.start = 0.0;
    cfg.stop = 0.5;
    cfg.steps = 3;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, out, err, 2), 0);
    const auto rows = csv(out.str());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_NEAR(std::stod(rows[1][1]), std::cosh(2.0), 1e-8);
    cfg.steps = 1;
    EXPECT_EQ(gkss::cli::cmd_sweep(cfg, out, err, 2), 2);
}

TEST(CmdSweep, ThreadCountDoesNotChangeOutput)
{
    gkss::SweepConfig cfg;
    cfg.base.spectrum.kind = "trapped_ion";
    cfg.base.spectrum.eta = 0.5;
    cfg.variable = gkss::SweepVariable::r;
    cfg.start = 0.05;
    cfg.stop = 2.0;
    cfg.steps = 40;
    std::ostringstream one, four, err;
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, one, err, 1), 0);
    ASSERT_EQ(gkss::cli::cmd_sweep(cfg, four, err, 4), 0);
    EXPECT_EQ(one.str(), four.str());
}

TEST(CmdSpectra, ListsValuesAndReport)
{
    gkss::SpectrumSpec spec;
    spec.kind = "square_well";
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_spectra(spec, 3, out, err), 0);
    const std::string text = out.str();
    EXPECT_EQ(text.rfind("# spectrum poschl_teller", 0), std::string::npos);
    const auto rows = csv(text);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "e", "eps", "ln_jackson", "ln_dual_jackson"}));
    EXPECT_EQ(rows[3][1], "8");
    EXPECT_EQ(rows[3][2], "0.5");
    EXPECT_NEAR(std::stod(rows[3][3]), std::log(24.0), 1e-15);
    EXPECT_EQ(gkss::cli::cmd_spectra(spec, 0, out, err), 2);
}

TEST(CmdSpectra, FlagsTrappedIonViolations)
{
    gkss::SpectrumSpec spec;
    spec.kind = "trapped_ion";
    spec.eta = 0.5;
    std::ostringstream out, err;
    ASSERT_EQ(gkss::cli::cmd_spectra(spec, 50, out, err), 0);
    EXPECT_NE(out.str().find("invalid"), std::string::npos);
    EXPECT_NE(out.str().find("# violation: non_monotonic at n=6"), std::string::npos);
}

TEST(CmdVerify, OneLinePerCriterion)
{
    std::ostringstream out;
    const int code = gkss::cli::cmd_verify(out);
    std::istringstream in(out.str());
    std::string line;
    int pass = 0, fail = 0;
    while (std::getline(in, line)) {
        if (line.rfind("[PASS] criterion ", 0) == 0) ++pass;
        if (line.rfind("[FAIL] criterion ", 0) == 0) ++fail;
    }
    EXPECT_EQ(pass + fail, 13);
    EXPECT_EQ(code == 0, fail == 0);
}

TEST(Executable, StateAndExitCodes)
{
    const Invocation vac = run("state --spectrum harmonic --class I --r 0");
    EXPECT_EQ(vac.code, 0);
    EXPECT_EQ(vac.out, "n,re,im,P\n0,1,0,1\n");

    const Invocation div = run("state --spectrum hydrogen --class II --r 0.5", true);
    EXPECT_EQ(div.code, 3);
    EXPECT_NE(div.out.find("diverges"), std::string::npos);

    const Invocation forced = run("state --spectrum hydrogen --class II --r 0.5 --force-truncate 3");
    EXPECT_EQ(forced.code, 0);
    EXPECT_EQ(forced.out.rfind("# truncated=forced N=3", 0), 0u);

    EXPECT_EQ(run("state --spectrum harmonic --class VII").code, 2);
    EXPECT_EQ(run("state --bogus-flag").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("state --spectrum poschl_teller --nu -3 --r 1").code, 4);
    EXPECT_EQ(run("state --config /nonexistent/gkss.json").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Executable, SweepIsByteStable)
{
    const std::string args = "sweep --spectrum trapped_ion --eta 0.5 --class I --sweep-var r --range 0.1:2:25";
    const Invocation a = run(args + " --threads 1");
    const Invocation b = run(args + " --threads 3");
    const Invocation c = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_EQ(csv(a.out).size(), 26u);
    EXPECT_EQ(run("sweep --spectrum harmonic --sweep-var r --range 0:1:3 --r 1").code, 2);
    EXPECT_EQ(run("sweep --spectrum harmonic --range 1:0:3").code, 2);
    EXPECT_EQ(run("sweep --spectrum harmonic").code, 2);
}

TEST(Executable, ConfigFileAndOverrides)
{
    const std::string cfg = testing::TempDir() + "gkss_cli_config.json";
    const std::string out = testing::TempDir() + "gkss_cli_out.csv";
    {
        std::ofstream f(cfg);
        f << R"({"spectrum": {"kind": "harmonic"}, "state": {"class": "I", "alpha": 0},
                "sweep": {"variable": "r", "range": "0.5:1:2"}})";
    }
    const Invocation from_file = run("sweep --config " + cfg);
    ASSERT_EQ(from_file.code, 0);
    const auto rows = csv(from_file.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(std::stod(rows[2][1]), std::cosh(2.0), 1e-8);

    const Invocation overridden = run("sweep --config " + cfg + " --range 0.5:1:3 --output " + out);
    ASSERT_EQ(overridden.code, 0);
    EXPECT_TRUE(overridden.out.empty());
    std::ifstream in(out);
    std::stringstream written;
    written << in.rdbuf();
    EXPECT_EQ(csv(written.str()).size(), 4u);

    const Invocation state = run("state --config " + cfg + " --r 1");
    ASSERT_EQ(state.code, 0);
    EXPECT_NEAR(std::stod(csv(state.out)[1][3]), 0.64805, 5e-6);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST(Executable, Spectra)
{
    const Invocation r = run("spectra --spectrum hydrogen --max-n 3");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(std::stod(rows[4][2]), 9.6, 1e-14);
    EXPECT_NEAR(std::stod(rows[4][3]), std::log(5.0 / 8.0), 1e-15);
}
