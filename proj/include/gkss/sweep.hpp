#pragma once

#include <algorithm>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gkss/config.hpp"
#include "gkss/stats.hpp"

namespace gkss {

/// Fixed 17-significant-digit rendering; empty for NaN.
inline std::string format_double(double v)
{
    if (std::isnan(v)) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SweepRow {
    double x = 0.0;
    std::optional<StatisticsReport> stats;
    /// Empty on success; otherwise one of divergent, inconclusive,
    /// invalid_spectrum, invalid_parameter.
    std::string error;
};

inline StateRequest sweep_point(const SweepConfig& cfg, double x)
{
    StateRequest req = cfg.base;
    switch (cfg.variable) {
    case SweepVariable::r: req.params.r = x; break;
    case SweepVariable::alpha: req.params.alpha = x; break;
    case SweepVariable::eta: req.spectrum.eta = x; break;
    }
    return req;
}

inline SweepRow evaluate_point(const SweepConfig& cfg, const Spectrum* shared, double x)
{
    SweepRow row;
    row.x = x;
    try {
        const StateRequest req = sweep_point(cfg, x);
        const Spectrum s = shared ? *shared : make_spectrum(req.spectrum);
        row.stats = statistics(build_squeezed(req.state_class, s, req.params, req.policy));
    } catch (const DivergentSeries&) {
        row.error = "divergent";
    } catch (const InconclusiveSeries&) {
        row.error = "inconclusive";
    } catch (const SpectrumError&) {
        row.error = "invalid_spectrum";
    } catch (const ConfigError&) {
        row.error = "invalid_parameter";
    }
    return row;
}

/// Evaluates every grid point, concurrently when `threads` > 1; rows come
/// back in grid order regardless.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = std::thread::hardware_concurrency())
{
    cfg.check();
    const std::vector<double> xs = cfg.grid();
    std::optional<Spectrum> shared;
    if (cfg.variable != SweepVariable::eta) {
        shared = make_spectrum(cfg.base.spectrum);
    }
    const Spectrum* sp = shared ? &*shared : nullptr;

    std::vector<SweepRow> rows(xs.size());
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, xs.size());
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < xs.size(); i += workers) {
                rows[i] = evaluate_point(cfg, sp, xs[i]);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "x,Q,var_x,var_p,mean_n,error\n";
    for (const auto& row : rows) {
        out << format_double(row.x) << ',';
        if (row.stats) {
            const auto& s = *row.stats;
            out << (s.mandel_q ? format_double(*s.mandel_q) : std::string{}) << ',' << format_double(s.var_x) << ','
                << format_double(s.var_p) << ',' << format_double(s.mean_n) << ',';
        } else {
            out << ",,,,";
        }
        out << row.error << '\n';
    }
}

/// Rows n, re(c), im(c), P(n) over Fock levels 0..2N.
inline void write_state_csv(std::ostream& out, const SqueezedState& st)
{
    if (st.forced_truncation()) {
        out << "# truncated=forced N=" << st.truncation() << '\n';
    }
    out << "n,re,im,P\n";
    const auto fock = st.fock_vector();
    const auto prob = photon_distribution(st);
    for (std::size_t n = 0; n < fock.size(); ++n) {
        out << n << ',' << format_double(fock[n].real()) << ',' << format_double(fock[n].imag()) << ','
            << format_double(prob[n]) << '\n';
    }
}

} // namespace gkss
