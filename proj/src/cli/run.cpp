#include "revlab/cli/run.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "revlab/diophantine.hpp"
#include "revlab/dynamics.hpp"
#include "revlab/kernel/phase_sum.hpp"
#include "revlab/parallel.hpp"
#include "revlab/revival.hpp"

namespace revlab::cli {

namespace {

constexpr const char* kVersion = "revival-lab 1.0.0";

// 17 significant digits round-trips doubles exactly
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct CsvWriter {
    std::ofstream out;

    CsvWriter(const std::filesystem::path& p, const std::string& header) : out(p, std::ios::binary) {
        if (!out) throw Error("cannot open output file " + p.string());
        out << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ",";
            out << cells[i];
        }
        out << "\n";
    }
};

std::string describe(const Config& cfg) {
    std::ostringstream os;
    for (const auto& [ij, c] : cfg.scenario.f.coeffs)
        os << "coeff = " << ij.first << " " << ij.second << " " << num(c) << "\n";
    os << "omega1 = " << num(cfg.scenario.osc.omega1) << "\n";
    os << "omega2 = " << num(cfg.scenario.osc.omega2) << "\n";
    os << "E1 = " << num(cfg.scenario.e.e1) << "\n";
    os << "E2 = " << num(cfg.scenario.e.e2) << "\n";
    os << "h = " << num(cfg.h) << "\n";
    if (!cfg.h_sweep.empty()) {
        os << "h_sweep =";
        for (double h : cfg.h_sweep) os << " " << num(h);
        os << "\n";
    }
    os << "delta1 = " << num(cfg.scenario.params.delta1) << "\n";
    os << "delta2 = " << num(cfg.scenario.params.delta2) << "\n";
    os << "delta1p = " << num(cfg.scenario.params.delta1p) << "\n";
    os << "delta2p = " << num(cfg.scenario.params.delta2p) << "\n";
    os << "window_factor = " << num(cfg.scenario.params.window_factor) << "\n";
    os << "t_start = " << num(cfg.t_start) << "\n";
    if (cfg.t_end) os << "t_end = " << num(*cfg.t_end) << "\n";
    os << "samples = " << cfg.samples << "\n";
    os << "alpha = " << num(cfg.alpha) << "\n";
    os << "beta = " << num(cfg.beta) << "\n";
    os << "mu = " << num(cfg.mu) << "\n";
    os << "s = " << num(cfg.s) << "\n";
    os << "max_den = " << cfg.max_den << "\n";
    os << "tol = " << num(cfg.tol) << "\n";
    os << "q_max = " << cfg.q_max << "\n";
    os << "eta = " << num(cfg.eta) << "\n";
    os << "eps = " << num(cfg.eps) << "\n";
    return os.str();
}

void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const Config& cfg) {
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    out << kVersion << "\n";
    out << "subcommand = " << subcommand << "\n";
    out << "kernel = " << kernel::active_kernel() << "\n";
    out << describe(cfg);
}

std::string opt_period(const std::optional<double>& v) {
    return v ? num(*v) : std::string("undefined");
}

double default_t_end(const Config& cfg, const PeriodSet& ps) {
    if (cfg.t_end) return *cfg.t_end;
    if (ps.classical_defined()) return 3.0 * std::max(std::abs(ps.t_cl1()), std::abs(ps.t_cl2()));
    throw ValidationError("t_end required when classical periods are undefined");
}

void run_simulate(const Config& cfg, const std::filesystem::path& dir, int threads) {
    const WavePacket p = cfg.scenario.packet(cfg.h);
    const PeriodSet ps = cfg.scenario.periods(cfg.h);
    const TimeGrid grid(cfg.t_start, default_t_end(cfg, ps), cfg.samples);

    if (cfg.dump_packet) {
        CsvWriter pk(dir / "packet.csv", "n,m,a");
        const auto& a = p.amplitudes();
        size_t idx = 0;
        for (long long n = p.window.n_lo; n <= p.window.n_hi; ++n)
            for (long long m = p.window.m_lo; m <= p.window.m_hi; ++m, ++idx)
                pk.row({std::to_string(n), std::to_string(m), num(a[idx])});
    }

    const auto ts = grid.values();
    struct Row {
        double r, a1, a2, env;
        bool has_a1, has_a2, has_env;
    };
    std::vector<Row> rows(ts.size());
    const bool has_cl = ps.classical_defined() && ps.scl1 && ps.scl2;
    const bool has_rev = has_cl && ps.revival_defined();
    parallel_for(ts.size(), threads, [&](size_t i) {
        Row r{};
        r.r = return_amplitude(p, cfg.scenario.f, cfg.scenario.osc, ts[i]).abs();
        r.has_a1 = has_cl;
        if (has_cl) r.a1 = linear_approx(p, ps, ts[i], false).abs();
        r.has_a2 = has_rev;
        if (has_rev) r.a2 = quadratic_approx(p, ps, ts[i]).abs();
        r.has_env = has_cl && cfg.scenario.env.has_ft();
        if (r.has_env) r.env = envelope_formula(p, ps, cfg.scenario.env, ts[i]);
        rows[i] = r;
    });

    CsvWriter csv(dir / "simulate.csv", "t,r_abs,a1_abs,a2_abs,envelope");
    for (size_t i = 0; i < ts.size(); ++i) {
        csv.row({num(ts[i]), num(rows[i].r), rows[i].has_a1 ? num(rows[i].a1) : "",
                 rows[i].has_a2 ? num(rows[i].a2) : "", rows[i].has_env ? num(rows[i].env) : ""});
    }
}

void run_periods(const Config& cfg, const std::filesystem::path& dir) {
    const PeriodSet ps = cfg.scenario.periods(cfg.h);
    std::ofstream out(dir / "periods.txt", std::ios::binary);
    out << "periods at h = " << num(cfg.h) << "\n";
    out << "  T_cl1    = " << opt_period(ps.cl1) << "\n";
    out << "  T_cl2    = " << opt_period(ps.cl2) << "\n";
    out << "  T_scl1   = " << opt_period(ps.scl1) << "\n";
    out << "  T_scl2   = " << opt_period(ps.scl2) << "\n";
    out << "  T_rev1   = " << opt_period(ps.rev1) << "\n";
    out << "  T_rev2   = " << opt_period(ps.rev2) << "\n";
    out << "  T_rev12  = " << opt_period(ps.rev12) << "\n";
    out << "  T_srev1  = " << opt_period(ps.srev1) << "\n";
    out << "  T_srev2  = " << opt_period(ps.srev2) << "\n";
    out << "  T_srev12 = " << opt_period(ps.srev12) << "\n";
    if (!ps.revival_defined())
        out << "note: revival periods undefined (a second derivative of F vanishes at E)\n";

    if (ps.classical_defined()) {
        const double ratio = std::abs(ps.t_cl1() / ps.t_cl2());
        out << "T_cl1/T_cl2 = " << num(ps.t_cl1() / ps.t_cl2()) << "\n";
        Rational frac;
        const auto seq = cf_expand(ratio, 32);
        bool found = false;
        for (const auto& c : seq.convergents) {
            if (c.q > cfg.max_den) break;
            if (std::abs(ratio - static_cast<double>(c.p) / static_cast<double>(c.q)) <= cfg.tol) {
                out << "commensurate: |T_cl1/T_cl2| = " << c.p << "/" << c.q << " within tol "
                    << num(cfg.tol) << "\n";
                found = true;
                break;
            }
        }
        if (!found)
            out << "no rational T_cl1/T_cl2 within max_den = " << cfg.max_den << ", tol = "
                << num(cfg.tol) << " (incommensurate regime)\n";
    } else {
        out << "classical periods undefined (a first derivative of F vanishes at E)\n";
    }
}

void run_convergence(const Config& cfg, const std::filesystem::path& dir, int threads) {
    if (cfg.h_sweep.size() < 3)
        throw InsufficientData("convergence needs h_sweep with at least 3 values");
    const auto lin =
        remainder_scaling(RemainderKind::linear, cfg.scenario, cfg.h_sweep, cfg.alpha, 257, threads);
    const auto quad =
        remainder_scaling(RemainderKind::quadratic, cfg.scenario, cfg.h_sweep, cfg.beta, 257, threads);

    CsvWriter csv(dir / "convergence.csv", "h,sup_error_linear,sup_error_quadratic");
    for (size_t i = 0; i < cfg.h_sweep.size(); ++i)
        csv.row({num(cfg.h_sweep[i]), num(lin.errors[i].second), num(quad.errors[i].second)});

    const double mind = std::min(cfg.scenario.params.delta1, cfg.scenario.params.delta2);
    CsvWriter sc(dir / "slopes.csv", "kind,theoretical_exponent,fitted_slope,exact");
    sc.row({"linear", num(cfg.alpha + 2.0 * mind - 1.0),
            lin.exact ? "" : num(lin.slope), lin.exact ? "1" : "0"});
    sc.row({"quadratic", num(cfg.beta + 3.0 * mind - 1.0),
            quad.exact ? "" : num(quad.slope), quad.exact ? "1" : "0"});
}

void run_cf(const Config& cfg, const std::filesystem::path& dir) {
    const PeriodSet ps = cfg.scenario.periods(cfg.h);
    const FlowParams fp = FlowParams::from_periods(ps);
    const double theta = fp.theta();
    const auto seq = cf_expand(theta, 24);

    std::ofstream out(dir / "cf.txt", std::ios::binary);
    out << "theta = T_cl1/T_cl2 = " << num(theta) << " (floating input)\n";
    out << "partial quotients:";
    for (long long a : seq.partial_quotients) out << " " << a;
    out << "\n";
    switch (seq.termination) {
        case CfTermination::precision_exhausted:
            out << "termination: precision exhausted\n";
            break;
        case CfTermination::overflow:
            out << "termination: 64-bit overflow\n";
            break;
        case CfTermination::max_terms:
            out << "termination: max terms\n";
            break;
    }

    const double mind = std::min(cfg.scenario.params.delta1, cfg.scenario.params.delta2);
    const double mindp = std::min(cfg.scenario.params.delta1p, cfg.scenario.params.delta2p);
    const auto rs = count_revival_set(seq, cfg.h, mind, mindp, cfg.mu);
    out << "A_h interval: [" << num(rs.lo) << ", " << num(rs.hi) << "], count " << rs.count
        << ", bound " << rs.upper_bound << "\n";

    CsvWriter csv(dir / "cf.csv", "k,a_k,p_k,q_k,approach_time,flow_distance,in_A_h");
    for (size_t k = 0; k < seq.convergents.size(); ++k) {
        const auto c = seq.convergents[k];
        const double tau = approach_time(fp, c);
        const double d = flow_lattice_distance(fp, tau);
        const bool in_set =
            static_cast<double>(c.q) >= rs.lo && static_cast<double>(c.q) <= rs.hi;
        csv.row({std::to_string(k), std::to_string(seq.partial_quotients[k]), std::to_string(c.p),
                 std::to_string(c.q), num(tau), num(d), in_set ? "1" : "0"});
        out << "k=" << k << "  a=" << seq.partial_quotients[k] << "  p/q=" << c.p << "/" << c.q
            << "  tau=" << num(tau) << "  d(phi_tau,Z^2*)=" << num(d)
            << (in_set ? "  [A_h]" : "") << "\n";
    }
}

void run_revival(const Config& cfg, const std::filesystem::path& dir) {
    const WavePacket p = cfg.scenario.packet(cfg.h);
    const PeriodSet ps = cfg.scenario.periods(cfg.h);
    const ResonanceData res = detect_resonance(ps, cfg.max_den, cfg.tol);
    const auto theta = theta_sequence(res, p.n0, p.m0);
    const auto table = fractional_coefficients(theta, res.ell1, res.ell2, p.n0, p.m0);

    double parseval = 0.0;
    for (const auto& b : table.b) parseval += std::norm(b);

    const Amplitude rec = reconstruct_at_revival(p, ps, res, table, 0.0);
    const Amplitude a2 = quadratic_approx(p, ps, res.t_frac);
    const double residual = std::hypot(rec.re - a2.re, rec.im - a2.im);

    std::ofstream out(dir / "revival.txt", std::ios::binary);
    out << "resonance:\n";
    out << "  p1/q1   = " << res.frac1.num << "/" << res.frac1.den << "\n";
    out << "  p2/q2   = " << res.frac2.num << "/" << res.frac2.den << "\n";
    out << "  p12/q12 = " << res.frac12.num << "/" << res.frac12.den << "\n";
    out << "  T_frac  = " << num(res.t_frac) << "\n";
    out << "  (r1,s1) = (" << res.r1 << "," << res.s1 << ")  (r2,s2) = (" << res.r2 << ","
        << res.s2 << ")\n";
    out << "  (l1,l2) = (" << res.ell1 << "," << res.ell2 << ")\n";
    out << "sum |b|^2 = " << num(parseval) << "\n";
    if (res.frac12.is_integer()) {
        out << "factorized moduli check: "
            << (factorized_moduli_check(res, table) ? "pass" : "FAIL") << "\n";
    } else {
        out << "factorized moduli check: skipped (p12/q12 not an integer)\n";
    }
    out << "|c| table (k1, k2, |c|):\n";
    for (long long k1 = 0; k1 < res.ell1; ++k1)
        for (long long k2 = 0; k2 < res.ell2; ++k2)
            out << "  " << k1 << " " << k2 << " "
                << num(std::abs(table.c[static_cast<size_t>(k1 * res.ell2 + k2)])) << "\n";
    out << "reconstruction residual at t=0: " << num(residual) << "\n";
    out << "|a2(T_frac)| = " << num(a2.abs()) << "\n";

    CsvWriter csv(dir / "revival_coefficients.csv", "k1,k2,re,im,mod2");
    for (long long k1 = 0; k1 < res.ell1; ++k1)
        for (long long k2 = 0; k2 < res.ell2; ++k2) {
            const auto& c = table.c[static_cast<size_t>(k1 * res.ell2 + k2)];
            csv.row({std::to_string(k1), std::to_string(k2), num(c.real()), num(c.imag()),
                     num(std::norm(c))});
        }
}

}  // namespace

void run(const std::string& subcommand, const Config& cfg, const std::string& out_dir,
         int threads) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    if (subcommand == "simulate") {
        run_simulate(cfg, dir, threads);
    } else if (subcommand == "periods") {
        run_periods(cfg, dir);
    } else if (subcommand == "convergence") {
        run_convergence(cfg, dir, threads);
    } else if (subcommand == "cf") {
        run_cf(cfg, dir);
    } else if (subcommand == "revival") {
        run_revival(cfg, dir);
    } else {
        throw ValidationError("unknown subcommand `" + subcommand + "`");
    }
    write_manifest(dir, subcommand, cfg);
}

int run_cli(const std::string& subcommand, const std::string& config_path,
            const std::string& out_dir, int threads) {
    try {
        const Config cfg = parse_config(config_path);
        run(subcommand, cfg, out_dir, threads);
        return kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PeriodUndefined& e) {
        std::cerr << "period undefined: " << e.what() << "\n";
        return kExitPeriodUndefined;
    } catch (const NoResonance& e) {
        std::cerr << "no resonance: " << e.what() << "\n";
        return kExitNoResonance;
    } catch (const NotAvailable& e) {
        std::cerr << "not available: " << e.what() << "\n";
        return kExitNotAvailable;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitUnexpected;
    }
}

}  // namespace revlab::cli
