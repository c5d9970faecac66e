#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "revlab/errors.hpp"

// Classical/quantum Hamiltonian F(P1, P2) for a pair of harmonic oscillators:
// polynomial symbol, exact derivatives, joint spectrum and the period
// families (classical, semiclassical, revival) at an energy point.

namespace revlab {

// Bivariate real polynomial, finitely many terms, independent of h.
// Coefficients are keyed by the exponent pair (i, j) for X^i Y^j.
struct PolynomialF {
    std::map<std::pair<int, int>, double> coeffs;

    PolynomialF() = default;
    PolynomialF(std::initializer_list<std::pair<std::pair<int, int>, double>> terms) {
        for (const auto& t : terms) add_term(t.first.first, t.first.second, t.second);
    }

    void add_term(int i, int j, double c) {
        if (i < 0 || j < 0) throw ValidationError("polynomial exponents must be nonnegative");
        coeffs[{i, j}] += c;
    }

    // d/dX and d/dY as polynomials (exact symbolic differentiation).
    PolynomialF dx() const;
    PolynomialF dy() const;
};

struct OscillatorPair {
    double omega1;
    double omega2;

    OscillatorPair(double w1, double w2) : omega1(w1), omega2(w2) {
        if (!(w1 > 0.0) || !(w2 > 0.0)) throw ValidationError("oscillator frequencies must be positive");
    }
};

struct EnergyPoint {
    double e1;
    double e2;

    EnergyPoint(double a, double b) : e1(a), e2(b) {
        if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
            throw ValidationError("energy components must lie in [0,1]");
    }
};

struct Partials {
    double gx, gy;        // first derivatives
    double hxx, hyy, hxy; // second derivatives
};

// All period families at an energy point. A period is absent when the
// derivative it divides by vanishes (Assumption on the gradient for the
// classical family, on the Hessian for the revival family); accessing an
// absent period throws PeriodUndefined.
class PeriodSet {
public:
    double h = 0.0;
    std::optional<double> cl1, cl2;
    std::optional<double> scl1, scl2;
    std::optional<double> rev1, rev2, rev12;
    std::optional<double> srev1, srev2, srev12;

    double t_cl1() const { return get(cl1, "T_cl1"); }
    double t_cl2() const { return get(cl2, "T_cl2"); }
    double t_scl1() const { return get(scl1, "T_scl1"); }
    double t_scl2() const { return get(scl2, "T_scl2"); }
    double t_rev1() const { return get(rev1, "T_rev1"); }
    double t_rev2() const { return get(rev2, "T_rev2"); }
    double t_rev12() const { return get(rev12, "T_rev12"); }
    double t_srev1() const { return get(srev1, "T_srev1"); }
    double t_srev2() const { return get(srev2, "T_srev2"); }
    double t_srev12() const { return get(srev12, "T_srev12"); }

    bool classical_defined() const { return cl1 && cl2; }
    bool revival_defined() const { return rev1 && rev2 && rev12; }

private:
    static double get(const std::optional<double>& v, const char* name) {
        if (!v) throw PeriodUndefined(std::string(name) + " undefined: required derivative of F vanishes");
        return *v;
    }
};

// Horner-style evaluation: rows grouped by ascending X-exponent, each row a
// Horner pass in Y (descending J), rows combined by a Horner pass in X.
double eval_f(const PolynomialF& f, double x, double y);

// First and second partial derivatives at a point, from the exact symbolic
// derivative polynomials (never finite differences).
Partials partials(const PolynomialF& f, double x, double y);

// Eigenvalue of the single oscillator: omega_axis * h * (n + 1/2).
double oscillator_eigenvalue(int axis, long long n, double h, const OscillatorPair& osc);

// F(tau_n, mu_m).
double joint_eigenvalue(const PolynomialF& f, long long n, long long m, double h,
                        const OscillatorPair& osc);

// argmin over n of |tau_n - E_1| and over m of |mu_m - E_2|; ties break
// toward the smaller index.
std::pair<long long, long long> closest_quantum_numbers(const EnergyPoint& e, double h,
                                                        const OscillatorPair& osc);

// T_cl_i = 2*pi / (dF_i(E) * omega_i); T_scl_i the same at (tau_n0, mu_m0);
// T_rev = 4*pi / (h * second derivative * omega^2) signed by the Hessian
// entry, with semiclassical variants alongside.
PeriodSet period_set(const PolynomialF& f, const EnergyPoint& e, double h,
                     const OscillatorPair& osc);

}  // namespace revlab
