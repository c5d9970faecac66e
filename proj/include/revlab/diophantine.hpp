#pragma once

#include <cstdint>
#include <vector>

#include "revlab/errors.hpp"
#include "revlab/hamiltonian.hpp"

// Continued fractions and convergents, distances from the linear flow to the
// integer lattice, approach times, Roth-type horizons, and counting of the
// near-revival denominator set.

namespace revlab {

// theta = (p + q*sqrt(d)) / r with d > 0 not a perfect square, q > 0, r != 0.
// Exact representation so long expansions never lose precision.
struct QuadraticIrrational {
    long long p;
    long long q;
    long long d;
    long long r;

    QuadraticIrrational(long long p_, long long q_, long long d_, long long r_);

    double value() const;

    static QuadraticIrrational sqrt2() { return {0, 1, 2, 1}; }
    static QuadraticIrrational golden_ratio() { return {1, 1, 5, 2}; }
};

struct Convergent {
    long long p;
    long long q;
};

enum class CfTermination {
    max_terms,           // ran to the requested length
    precision_exhausted, // floating input: residual within 1e-12 of an integer
    overflow             // convergents would exceed 64-bit range
};

struct ConvergentSequence {
    double theta = 0.0;
    bool exact_input = false;
    std::vector<long long> partial_quotients;
    std::vector<Convergent> convergents;  // convergents[k] = p_k / q_k
    CfTermination termination = CfTermination::max_terms;

    long long q(size_t k) const { return convergents.at(k).q; }
    long long p(size_t k) const { return convergents.at(k).p; }
};

// Standard floor/reciprocal expansion. The floating overload halts with
// termination = precision_exhausted once the residual is within 1e-12 of an
// integer; the exact overload runs the integer surd algorithm and never
// exhausts. Convergents follow q_{k+1} = a_k q_k + q_{k-1} in exact integer
// arithmetic.
ConvergentSequence cf_expand(double theta, int max_terms);
ConvergentSequence cf_expand(const QuadraticIrrational& theta, int max_terms);

// min over integers l of |t - l*period|, in [0, period/2].
double lattice_distance(double t, double period);

// Linear-flow speeds in angular coordinates: phi_t = (a*t, b*t) with
// T_cl1 = 1/a, T_cl2 = 1/b.
struct FlowParams {
    double a;
    double b;

    FlowParams(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("flow speeds must be positive");
    }

    static FlowParams from_periods(const PeriodSet& ps) {
        return FlowParams{1.0 / std::abs(ps.t_cl1()), 1.0 / std::abs(ps.t_cl2())};
    }

    double theta() const { return b / a; }
};

// Euclidean distance from phi_t to Z^2 \ {(0,0)}, by searching the 3x3 block
// of lattice points around the rounded flow point with the origin excluded.
double flow_lattice_distance(const FlowParams& fp, double t);

// tau_n = (a q + b p)/(a^2 + b^2); at this time the flow-lattice distance is
// bounded by a / (sqrt(a^2+b^2) q) < 1/q for a convergent (q, p) of b/a.
double approach_time(const FlowParams& fp, Convergent conv);

// Guaranteed upper bound on flow_lattice_distance over the ball B(tau_n, r).
double neighborhood_bound(const FlowParams& fp, Convergent conv, double r);

// Brute-force lower estimate of the diophantine constant C_0:
// min over 1 <= q <= q_max (p nearest) of q^2 |theta - p/q|.
double diophantine_constant(const QuadraticIrrational& theta, long long q_max);

// t_eta(eps) = (1/sqrt(a^2+b^2)) ((k_eps/eta)^(1/(1+eps)) - sqrt(2)/2).
// Contract: flow_lattice_distance(t) >= eta for all t in [0, t_eta].
double t_eta(const FlowParams& fp, double k_eps, double eps, double eta);

// Convergent denominators q_n inside [h^(min delta' - 1 + mu),
// h^(1 - 2 min delta - mu)], with the interval-width counting bound.
struct RevivalSet {
    std::vector<long long> members;
    long long count = 0;
    long long upper_bound = 0;
    double lo = 0.0;
    double hi = 0.0;
};

RevivalSet count_revival_set(const ConvergentSequence& conv, double h, double delta_min,
                             double deltap_min, double mu);

}  // namespace revlab
