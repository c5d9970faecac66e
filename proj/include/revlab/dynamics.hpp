#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "revlab/hamiltonian.hpp"
#include "revlab/scenario.hpp"
#include "revlab/wavepacket.hpp"

// Exact return amplitude, the linear and quadratic approximations, the
// two-time pseudo-classical function, the Poisson-summation envelope, and
// h-sweep measurement of the approximation-error orders.

namespace revlab {

struct TimeGrid {
    double t_start;
    double t_end;
    int samples;

    TimeGrid(double t0, double t1, int n) : t_start(t0), t_end(t1), samples(n) {
        if (!(t1 > t0)) throw ValidationError("time grid must have t_end > t_start");
        if (n < 2) throw ValidationError("time grid needs at least 2 samples");
    }

    std::vector<double> values() const {
        std::vector<double> v(static_cast<size_t>(samples));
        for (int i = 0; i < samples; ++i)
            v[static_cast<size_t>(i)] =
                t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(samples - 1);
        return v;
    }
};

struct Amplitude {
    double re = 0.0;
    double im = 0.0;
    double abs() const { return std::hypot(re, im); }
};

// r(t) = sum a_{n,m}^2 exp(-i t F(tau_n, mu_m)/h), lexicographic (n,m) order.
Amplitude return_amplitude(const WavePacket& p, const PolynomialF& f, const OscillatorPair& osc,
                           double t);

// |r(t)| mapped over a grid; grid points may be evaluated in parallel.
std::vector<std::pair<double, double>> autocorrelation(const WavePacket& p, const PolynomialF& f,
                                                       const OscillatorPair& osc,
                                                       const TimeGrid& grid, int threads = 1);

// a1(t) = sum a^2 exp(-2*pi*i t ((n-n0)/T1 + (m-m0)/T2)) with classical or
// semiclassical periods.
Amplitude linear_approx(const WavePacket& p, const PeriodSet& periods, double t,
                        bool use_semiclassical);

// a2(t): linear part at T_scl plus quadratic part at the revival periods.
Amplitude quadratic_approx(const WavePacket& p, const PeriodSet& periods, double t);

// psi_cl(t1, t2), doubly periodic with periods (T_scl1, T_scl2);
// psi_cl(t, t) equals the semiclassical linear approximation.
Amplitude pseudo_classical(const WavePacket& p, const PeriodSet& periods, double t1, double t2);

// Poisson-summation principal term: F(chi^2) at the scaled fractional
// distances of t/T_cl_i, normalized by F(chi^2)(0,0). Matches |a1| up to
// O(h^inf) for rapidly decaying envelopes.
double envelope_formula(const WavePacket& p, const PeriodSet& periods, const Envelope& env,
                        double t);

enum class RemainderKind { linear, quadratic };

struct RemainderFit {
    double slope = 0.0;                           // least-squares d log(err)/d log(h)
    bool exact = false;                           // all errors at rounding level
    std::vector<std::pair<double, double>> errors; // (h, sup error)
};

// For each h: sup over a t-grid on [0, h^exponent] of the phase-aligned
// difference | r(t) e^{+i t F(tau0,mu0)/h} - approximation |, then the
// log-log slope across the sweep. The comparators are the semiclassical
// sums; the quadratic one uses the full Taylor cross coefficient.
RemainderFit remainder_scaling(RemainderKind kind, const Scenario& scenario,
                               std::span<const double> h_list, double alpha_or_beta,
                               int grid_points = 257, int threads = 1);

}  // namespace revlab
