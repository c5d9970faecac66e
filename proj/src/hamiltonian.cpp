#include "revlab/hamiltonian.hpp"

#include <cmath>
#include <numbers>

namespace revlab {

PolynomialF PolynomialF::dx() const {
    PolynomialF out;
    for (const auto& [ij, c] : coeffs) {
        const auto [i, j] = ij;
        if (i > 0 && c != 0.0) out.coeffs[{i - 1, j}] += c * i;
    }
    return out;
}

PolynomialF PolynomialF::dy() const {
    PolynomialF out;
    for (const auto& [ij, c] : coeffs) {
        const auto [i, j] = ij;
        if (j > 0 && c != 0.0) out.coeffs[{i, j - 1}] += c * j;
    }
    return out;
}

double eval_f(const PolynomialF& f, double x, double y) {
    if (f.coeffs.empty()) return 0.0;
    // rows[i] = coefficients of Y^j for X^i, dense in j
    int imax = 0, jmax = 0;
    for (const auto& [ij, c] : f.coeffs) {
        imax = std::max(imax, ij.first);
        jmax = std::max(jmax, ij.second);
    }
    std::vector<std::vector<double>> rows(static_cast<size_t>(imax) + 1,
                                          std::vector<double>(static_cast<size_t>(jmax) + 1, 0.0));
    for (const auto& [ij, c] : f.coeffs) rows[ij.first][ij.second] = c;

    double acc = 0.0;
    for (int i = imax; i >= 0; --i) {
        double row = 0.0;
        for (int j = jmax; j >= 0; --j) row = row * y + rows[i][j];
        acc = acc * x + row;
    }
    return acc;
}

Partials partials(const PolynomialF& f, double x, double y) {
    const PolynomialF fx = f.dx();
    const PolynomialF fy = f.dy();
    return Partials{
        eval_f(fx, x, y),
        eval_f(fy, x, y),
        eval_f(fx.dx(), x, y),
        eval_f(fy.dy(), x, y),
        eval_f(fx.dy(), x, y),
    };
}

double oscillator_eigenvalue(int axis, long long n, double h, const OscillatorPair& osc) {
    if (axis != 1 && axis != 2) throw ValidationError("oscillator axis must be 1 or 2");
    if (n < 0) throw ValidationError("quantum number must be nonnegative");
    const double w = axis == 1 ? osc.omega1 : osc.omega2;
    return w * h * (static_cast<double>(n) + 0.5);
}

double joint_eigenvalue(const PolynomialF& f, long long n, long long m, double h,
                        const OscillatorPair& osc) {
    return eval_f(f, oscillator_eigenvalue(1, n, h, osc), oscillator_eigenvalue(2, m, h, osc));
}

namespace {

long long argmin_index(double e, double w, double h) {
    // tau_n increasing with constant gap w*h: scan [0, ceil(2E/(w h)) + 2],
    // strict improvement keeps the smaller index on ties
    const long long n_hi = static_cast<long long>(std::ceil(2.0 * e / (w * h))) + 2;
    long long best = 0;
    double best_d = std::abs(w * h * 0.5 - e);
    for (long long n = 1; n <= n_hi; ++n) {
        const double d = std::abs(w * h * (static_cast<double>(n) + 0.5) - e);
        if (d < best_d) {
            best_d = d;
            best = n;
        }
    }
    return best;
}

}  // namespace

std::pair<long long, long long> closest_quantum_numbers(const EnergyPoint& e, double h,
                                                        const OscillatorPair& osc) {
    if (!(h > 0.0)) throw ValidationError("h must be positive");
    return {argmin_index(e.e1, osc.omega1, h), argmin_index(e.e2, osc.omega2, h)};
}

PeriodSet period_set(const PolynomialF& f, const EnergyPoint& e, double h,
                     const OscillatorPair& osc) {
    if (!(h > 0.0)) throw ValidationError("h must be positive");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double four_pi = 4.0 * std::numbers::pi;

    const auto [n0, m0] = closest_quantum_numbers(e, h, osc);
    const Partials pE = partials(f, e.e1, e.e2);
    const Partials pS = partials(f, oscillator_eigenvalue(1, n0, h, osc),
                                 oscillator_eigenvalue(2, m0, h, osc));

    PeriodSet out;
    out.h = h;
    auto maybe = [](double num, double den) -> std::optional<double> {
        if (den == 0.0) return std::nullopt;
        return num / den;
    };
    out.cl1 = maybe(two_pi, pE.gx * osc.omega1);
    out.cl2 = maybe(two_pi, pE.gy * osc.omega2);
    out.scl1 = maybe(two_pi, pS.gx * osc.omega1);
    out.scl2 = maybe(two_pi, pS.gy * osc.omega2);
    out.rev1 = maybe(four_pi, h * pE.hxx * osc.omega1 * osc.omega1);
    out.rev2 = maybe(four_pi, h * pE.hyy * osc.omega2 * osc.omega2);
    out.rev12 = maybe(four_pi, h * pE.hxy * osc.omega1 * osc.omega2);
    out.srev1 = maybe(four_pi, h * pS.hxx * osc.omega1 * osc.omega1);
    out.srev2 = maybe(four_pi, h * pS.hyy * osc.omega2 * osc.omega2);
    out.srev12 = maybe(four_pi, h * pS.hxy * osc.omega1 * osc.omega2);
    return out;
}

}  // namespace revlab
