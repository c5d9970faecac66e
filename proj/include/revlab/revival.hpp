#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "revlab/dynamics.hpp"
#include "revlab/errors.hpp"
#include "revlab/hamiltonian.hpp"
#include "revlab/wavepacket.hpp"

// Resonance of the revival periods, the quadratic-phase sequence theta_{n,m},
// its decomposition over the DFT basis of doubly periodic sequences, Gauss
// sums with their closed-form moduli, and reconstruction of the quadratic
// approximation near T_frac.

namespace revlab {

// Reduced fraction, den >= 1; gcd(|num|, den) = 1.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational reduce(long long n, long long d);

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

// Resonance fractions p_j/q_j with (p_j/q_j) T_rev_j = T_frac for all j and
// the derived integers r_j = p12 q_j, s_j = q12 p_j, plus the periodicity
// orders (l1, l2) of the theta sequence.
struct ResonanceData {
    Rational frac1, frac2, frac12;
    double t_frac = 0.0;
    long long r1 = 0, s1 = 0, r2 = 0, s2 = 0;
    long long ell1 = 1, ell2 = 1;
};

// Rationalizes the period ratios T_rev_j / T_rev_12 by their continued
// fractions (denominators <= max_den, absolute tolerance tol), pins
// T_frac = T_rev12 (so p12/q12 = 1/1, the smallest-denominator common
// period the three ratios admit), and selects the minimal (l1, l2)
// satisfying the periodicity congruences by an exact divisor search over
// q_j s_j. Throws NoResonance when a ratio has no rational approximation
// within max_den / tol.
ResonanceData detect_resonance(const PeriodSet& periods, long long max_den, double tol);

// One fundamental domain [0,l1) x [0,l2) of
// theta_{n,m} = exp(-2*pi*i (p1/q1 (n-n0)^2 + p12/q12 (n-n0)(m-m0) + p2/q2 (m-m0)^2)),
// phases reduced mod 1 in exact integer arithmetic before exponentiation.
std::vector<std::complex<double>> theta_sequence(const ResonanceData& res, long long n0,
                                                 long long m0);

struct CoefficientTable {
    std::vector<std::complex<double>> b;  // row-major l1 x l2
    std::vector<std::complex<double>> c;  // c_{k1,k2} = phase(n0,m0) * b_{k1,k2}
    long long ell1 = 1, ell2 = 1;
    long long n0 = 0, m0 = 0;
};

// b_{k1,k2} = (1/(l1 l2)) sum theta_{n,m} e^{+2 pi i k1 n / l1} e^{+2 pi i k2 m / l2}.
CoefficientTable fractional_coefficients(const std::vector<std::complex<double>>& theta,
                                         long long ell1, long long ell2, long long n0,
                                         long long m0);

// d_k(l, p, q) = (1/l) sum_{n=0}^{l-1} e^{-2 pi i (p/q)(n-n0)^2} e^{+2 pi i k n / l};
// requires gcd(p, q) = 1.
std::complex<double> gauss_sum(long long ell, long long p, long long q, long long n0,
                               long long k);

// |d_k(q, p, q)|^2: 1/q for q odd; for q even, 2/q or 0 split by the parity
// of q/2 and k.
double modulus_closed_form(long long q, long long k);

// Checks |b_{k1,k2}|^2 = |d_{k1}(l1, p1 s1, l1)|^2 |d_{k2}(l2, p2 s2, l2)|^2
// to 1e-10 for all (k1,k2); requires p12/q12 integer (HypothesisNotMet
// otherwise).
bool factorized_moduli_check(const ResonanceData& res, const CoefficientTable& table);

// sum_{k1,k2} c_{k1,k2} psi_cl(t + T_frac + (k1/l1) T_scl1, t + T_frac + (k2/l2) T_scl2);
// equals quadratic_approx(T_frac) exactly at t = 0.
Amplitude reconstruct_at_revival(const WavePacket& p, const PeriodSet& periods,
                                 const ResonanceData& res, const CoefficientTable& table,
                                 double t);

}  // namespace revlab
