#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gkss/cli.hpp"

namespace {

struct Flags {
    std::string config;
    std::string spectrum;
    double nu = 0.0;
    double eta = 0.0;
    std::string state_class;
    double r = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
    std::string sweep_var;
    std::string range;
    double tol = 0.0;
    std::size_t max_n = 0;
    std::size_t force_truncate = 0;
    std::string output = "-";
    unsigned threads = 0;

    CLI::Option* o_spectrum = nullptr;
    CLI::Option* o_nu = nullptr;
    CLI::Option* o_eta = nullptr;
    CLI::Option* o_class = nullptr;
    CLI::Option* o_r = nullptr;
    CLI::Option* o_phi = nullptr;
    CLI::Option* o_alpha = nullptr;
    CLI::Option* o_sweep_var = nullptr;
    CLI::Option* o_range = nullptr;
    CLI::Option* o_tol = nullptr;
    CLI::Option* o_max_n = nullptr;
    CLI::Option* o_force = nullptr;
};

void add_spectrum_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "JSON configuration file; explicit flags override it");
    f.o_spectrum = cmd->add_option("--spectrum", f.spectrum,
                                   "harmonic, poschl_teller, square_well, hydrogen, trapped_ion");
    f.o_nu = cmd->add_option("--nu", f.nu, "Poschl-Teller parameter");
    f.o_eta = cmd->add_option("--eta", f.eta, "Lamb-Dicke parameter");
    cmd->add_option("--output", f.output, "output path, - for standard output");
}

void add_state_flags(CLI::App* cmd, Flags& f)
{
    add_spectrum_flags(cmd, f);
    f.o_class = cmd->add_option("--class", f.state_class, "state class I, II, III or IV");
    f.o_r = cmd->add_option("--r", f.r, "squeeze magnitude");
    f.o_phi = cmd->add_option("--phi", f.phi, "squeeze phase");
    f.o_alpha = cmd->add_option("--alpha", f.alpha, "temporal parameter");
    f.o_tol = cmd->add_option("--tol", f.tol, "relative truncation tolerance");
    f.o_max_n = cmd->add_option("--max-n", f.max_n, "largest number of terms before giving up");
    f.o_force = cmd->add_option("--force-truncate", f.force_truncate, "keep exactly N+1 terms, no checks");
}

gkss::ConfigDocument resolve(const Flags& f)
{
    gkss::ConfigDocument doc;
    if (!f.config.empty()) {
        doc = gkss::load_config(f.config);
    }
    auto& st = doc.state;
    if (f.o_spectrum && *f.o_spectrum) {
        st.spectrum = gkss::SpectrumSpec{};
        st.spectrum.kind = f.spectrum;
    }
    if (f.o_nu && *f.o_nu) st.spectrum.nu = f.nu;
    if (f.o_eta && *f.o_eta) st.spectrum.eta = f.eta;
    if (f.o_class && *f.o_class) {
        const auto c = gkss::parse_state_class(f.state_class);
        if (!c) throw gkss::ConfigError("--class must be one of I, II, III, IV");
        st.state_class = *c;
    }
    if (f.o_r && *f.o_r) st.params.r = f.r;
    if (f.o_phi && *f.o_phi) st.params.phi = f.phi;
    if (f.o_alpha && *f.o_alpha) st.params.alpha = f.alpha;
    if (f.o_tol && *f.o_tol) st.policy.tol = f.tol;
    if (f.o_max_n && *f.o_max_n) st.policy.max_terms = f.max_n;
    if (f.o_force && *f.o_force) st.policy.force_terms = f.force_truncate;
    st.params.check();

    if (!f.o_sweep_var) {
        // Only the sweep command reads the sweep entry.
        doc.sweep.reset();
        return doc;
    }
    const bool sweep_flags = *f.o_sweep_var || (f.o_range && *f.o_range);
    if (sweep_flags && !doc.sweep) {
        doc.sweep = gkss::SweepConfig{};
    }
    if (doc.sweep) {
        if (*f.o_sweep_var) doc.sweep->variable = gkss::parse_sweep_variable(f.sweep_var);
        if (f.o_range && *f.o_range) gkss::parse_range(f.range, *doc.sweep);
        const auto v = doc.sweep->variable;
        if ((v == gkss::SweepVariable::r && f.o_r && *f.o_r) ||
            (v == gkss::SweepVariable::alpha && f.o_alpha && *f.o_alpha) ||
            (v == gkss::SweepVariable::eta && st.spectrum.eta.has_value())) {
            throw gkss::ConfigError("swept variable '" + gkss::to_string(v) + "' is also given a fixed value");
        }
        doc.sweep->base = st;
    }
    return doc;
}

template <class Run>
int with_output(const std::string& path, Run&& run)
{
    if (path.empty() || path == "-") {
        return run(std::cout);
    }
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return gkss::cli::config_error;
    }
    return run(file);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gazeau-Klauder squeezed states: build, sweep, inspect spectra, verify"};
    app.require_subcommand(1);
    Flags f;

    auto* state = app.add_subcommand("state", "emit n, re, im, P for one state");
    add_state_flags(state, f);

    Flags g;
    auto* sweep = app.add_subcommand("sweep", "emit x, Q, var_x, var_p, mean_n over a parameter grid");
    add_state_flags(sweep, g);
    g.o_sweep_var = sweep->add_option("--sweep-var", g.sweep_var, "r, alpha or eta");
    g.o_range = sweep->add_option("--range", g.range, "start:stop:steps");
    sweep->add_option("--threads", g.threads, "worker count, 0 for the hardware default");

    Flags h;
    std::size_t spectra_n = 50;
    auto* spectra = app.add_subcommand("spectra", "validate a spectrum and list e, eps and Jackson factorials");
    add_spectrum_flags(spectra, h);
    spectra->add_option("--max-n", spectra_n, "largest index listed");

    std::string verify_output = "-";
    auto* verify = app.add_subcommand("verify", "run the regression criteria");
    verify->add_option("--output", verify_output, "output path, - for standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : gkss::cli::config_error;
    }

    if (*state) {
        return gkss::cli::guarded(std::cerr, [&] {
            const auto doc = resolve(f);
            return with_output(f.output, [&](std::ostream& out) { return gkss::cli::cmd_state(doc.state, out, std::cerr); });
        });
    }
    if (*sweep) {
        return gkss::cli::guarded(std::cerr, [&] {
            const auto doc = resolve(g);
            if (!doc.sweep) throw gkss::ConfigError("sweep needs --sweep-var and --range or a config sweep entry");
            const unsigned threads = g.threads ? g.threads : std::max(1u, std::thread::hardware_concurrency());
            return with_output(g.output, [&](std::ostream& out) {
                return gkss::cli::cmd_sweep(*doc.sweep, out, std::cerr, threads);
            });
        });
    }
    if (*spectra) {
        return gkss::cli::guarded(std::cerr, [&] {
            const auto doc = resolve(h);
            return with_output(h.output, [&](std::ostream& out) {
                return gkss::cli::cmd_spectra(doc.state.spectrum, spectra_n, out, std::cerr);
            });
        });
    }
    return with_output(verify_output, [](std::ostream& out) { return gkss::cli::cmd_verify(out); });
}
