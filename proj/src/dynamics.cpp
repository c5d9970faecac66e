#include "revlab/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "revlab/diophantine.hpp"
#include "revlab/kernel/phase_sum.hpp"
#include "revlab/parallel.hpp"

namespace revlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Amplitude to_amp(kernel::PhaseSum s) { return {s.re, s.im}; }

// turn rates (phase per unit time, in turns) for the exact spectrum,
// optionally aligned by the phase at (n0, m0)
std::vector<double> eigen_turn_rates(const WavePacket& p, const PolynomialF& f,
                                     const OscillatorPair& osc, bool align) {
    const auto& dn = p.delta_n();
    const auto& dm = p.delta_m();
    std::vector<double> v(dn.size());
    const double e0 =
        align ? joint_eigenvalue(f, p.n0, p.m0, p.h, osc) : 0.0;
    const double scale = 1.0 / (kTwoPi * p.h);
    for (size_t i = 0; i < v.size(); ++i) {
        const long long n = p.n0 + static_cast<long long>(dn[i]);
        const long long m = p.m0 + static_cast<long long>(dm[i]);
        v[i] = (joint_eigenvalue(f, n, m, p.h, osc) - e0) * scale;
    }
    return v;
}

std::vector<double> linear_turn_rates(const WavePacket& p, double T1, double T2) {
    const auto& dn = p.delta_n();
    const auto& dm = p.delta_m();
    std::vector<double> v(dn.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = dn[i] / T1 + dm[i] / T2;
    return v;
}

// linear part at (T1, T2), quadratic part at (R1, R2, R12) with cross factor
// cross_scale (1 for the quadratic approximation as defined, 2 for the
// Taylor-consistent comparator in the remainder measurement)
std::vector<double> quadratic_turn_rates(const WavePacket& p, double T1, double T2, double R1,
                                         double R2, double R12, double cross_scale) {
    const auto& dn = p.delta_n();
    const auto& dm = p.delta_m();
    std::vector<double> v(dn.size());
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] = dn[i] / T1 + dm[i] / T2 + dn[i] * dn[i] / R1 + dm[i] * dm[i] / R2 +
               cross_scale * dn[i] * dm[i] / R12;
    }
    return v;
}

}  // namespace

Amplitude return_amplitude(const WavePacket& p, const PolynomialF& f, const OscillatorPair& osc,
                           double t) {
    const auto v = eigen_turn_rates(p, f, osc, false);
    return to_amp(kernel::scaled_phase_sum(p.weights(), v, t));
}

std::vector<std::pair<double, double>> autocorrelation(const WavePacket& p, const PolynomialF& f,
                                                       const OscillatorPair& osc,
                                                       const TimeGrid& grid, int threads) {
    const auto v = eigen_turn_rates(p, f, osc, false);
    const auto ts = grid.values();
    std::vector<std::pair<double, double>> out(ts.size());
    parallel_for(ts.size(), threads, [&](size_t i) {
        out[i] = {ts[i], kernel::scaled_phase_sum(p.weights(), v, ts[i]).abs()};
    });
    return out;
}

Amplitude linear_approx(const WavePacket& p, const PeriodSet& periods, double t,
                        bool use_semiclassical) {
    const double T1 = use_semiclassical ? periods.t_scl1() : periods.t_cl1();
    const double T2 = use_semiclassical ? periods.t_scl2() : periods.t_cl2();
    const auto v = linear_turn_rates(p, T1, T2);
    return to_amp(kernel::scaled_phase_sum(p.weights(), v, t));
}

Amplitude quadratic_approx(const WavePacket& p, const PeriodSet& periods, double t) {
    const auto v = quadratic_turn_rates(p, periods.t_scl1(), periods.t_scl2(), periods.t_rev1(),
                                        periods.t_rev2(), periods.t_rev12(), 1.0);
    return to_amp(kernel::scaled_phase_sum(p.weights(), v, t));
}

Amplitude pseudo_classical(const WavePacket& p, const PeriodSet& periods, double t1, double t2) {
    const auto& dn = p.delta_n();
    const auto& dm = p.delta_m();
    std::vector<double> v1(dn.size()), v2(dn.size());
    const double T1 = periods.t_scl1();
    const double T2 = periods.t_scl2();
    for (size_t i = 0; i < v1.size(); ++i) {
        v1[i] = dn[i] / T1;
        v2[i] = dm[i] / T2;
    }
    return to_amp(kernel::scaled_phase_sum2(p.weights(), v1, v2, t1, t2));
}

double envelope_formula(const WavePacket& p, const PeriodSet& periods, const Envelope& env,
                        double t) {
    if (!env.has_ft()) throw NotAvailable("envelope formula needs an analytic F(chi^2)");
    const double T1 = periods.t_cl1();
    const double T2 = periods.t_cl2();
    // fractional distance of t/T_cl to the integers (the Poisson dual
    // variable is dimensionless)
    const double d1 = lattice_distance(t, std::abs(T1)) / std::abs(T1);
    const double d2 = lattice_distance(t, std::abs(T2)) / std::abs(T2);
    const double H1 = std::pow(p.h, p.params.delta1p - 1.0);
    const double H2 = std::pow(p.h, p.params.delta2p - 1.0);
    return ft_envelope_sq(env, -H1 * d1 / p.osc.omega1, -H2 * d2 / p.osc.omega2) /
           ft_envelope_sq(env, 0.0, 0.0);
}

RemainderFit remainder_scaling(RemainderKind kind, const Scenario& scenario,
                               std::span<const double> h_list, double alpha_or_beta,
                               int grid_points, int threads) {
    if (h_list.size() < 3) throw InsufficientData("remainder scaling needs at least 3 h values");
    if (grid_points < 2) throw ValidationError("remainder grid needs at least 2 points");

    RemainderFit fit;
    for (const double h : h_list) {
        const WavePacket p = scenario.packet(h);
        const PeriodSet ps = scenario.periods(h);
        const auto exact = eigen_turn_rates(p, scenario.f, scenario.osc, true);
        const std::vector<double> approx =
            kind == RemainderKind::linear
                ? linear_turn_rates(p, ps.t_scl1(), ps.t_scl2())
                : quadratic_turn_rates(p, ps.t_scl1(), ps.t_scl2(), ps.t_srev1(), ps.t_srev2(),
                                       ps.t_srev12(), 2.0);
        const double t_max = std::pow(h, alpha_or_beta);
        std::vector<double> errs(static_cast<size_t>(grid_points));
        parallel_for(errs.size(), threads, [&](size_t i) {
            const double t =
                t_max * static_cast<double>(i) / static_cast<double>(grid_points - 1);
            const auto r = kernel::scaled_phase_sum(p.weights(), exact, t);
            const auto q = kernel::scaled_phase_sum(p.weights(), approx, t);
            errs[i] = std::hypot(r.re - q.re, r.im - q.im);
        });
        double sup = 0.0;
        for (double e : errs) sup = std::max(sup, e);
        fit.errors.emplace_back(h, sup);
    }

    // phase rounding alone contributes up to ~1e-11 at t ~ 1/h; anything
    // below 1e-10 is a vanishing remainder, not a measurable order
    fit.exact = true;
    for (const auto& [h, e] : fit.errors)
        if (e > 1e-10) fit.exact = false;
    if (fit.exact) {
        fit.slope = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }

    // least squares on log(err) vs log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.errors.size());
    for (const auto& [h, e] : fit.errors) {
        const double x = std::log(h);
        const double y = std::log(std::max(e, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

}  // namespace revlab
