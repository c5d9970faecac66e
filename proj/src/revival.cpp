#include "revlab/revival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "revlab/diophantine.hpp"

namespace revlab {

namespace {

using i128 = __int128;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-2*pi*i * (num/den)) with num/den reduced mod 1 exactly
std::complex<double> unit_phase(long long num, long long den) {
    long long r = num % den;
    if (r < 0) r += den;
    const double ang = -kTwoPi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

// (a*b) mod m without overflow, result in [0, m)
long long mulmod(long long a, long long b, long long m) {
    i128 r = static_cast<i128>(a) * b % m;
    if (r < 0) r += m;
    return static_cast<long long>(r);
}

// best rational approximation of x with denominator <= max_den and
// |x - p/q| <= tol, via continued-fraction convergents
bool rationalize(double x, long long max_den, double tol, Rational* out) {
    const double ax = std::abs(x);
    if (ax < tol) {
        *out = Rational{0, 1};
        return true;
    }
    const auto seq = cf_expand(ax, 64);
    for (const auto& c : seq.convergents) {
        if (c.q > max_den) break;
        if (std::abs(ax - static_cast<double>(c.p) / static_cast<double>(c.q)) <= tol) {
            *out = Rational::reduce(x < 0 ? -c.p : c.p, c.q);
            return true;
        }
    }
    return false;
}

std::vector<long long> sorted_divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// periodicity congruences for a shift by ell along the first index:
// l^2 p1/q1, 2 p1 l / q1 and p12 l / q12 must all be integers
bool satisfies_congruences(long long ell, const Rational& diag, const Rational& cross) {
    const long long q = diag.den;
    const bool c1 = mulmod(mulmod(ell % q, ell % q, q), diag.num % q, q) == 0;
    const bool c2 = mulmod((2 * (ell % q)) % q, diag.num % q, q) == 0;
    const long long q12 = cross.den;
    const bool c3 = mulmod(ell % q12, cross.num % q12, q12) == 0;
    return c1 && c2 && c3;
}

// Valid shifts form a subgroup of Z, so the minimal one divides the obvious
// solution q_j s_j; search its divisors in ascending order.
long long minimal_period(const Rational& diag, const Rational& cross, long long s_j) {
    const long long fallback = std::abs(diag.den * s_j);
    for (long long d : sorted_divisors(fallback)) {
        if (satisfies_congruences(d, diag, cross)) return d;
    }
    return fallback;
}

// d_k without the coprimality guard (the factorized-moduli statement calls
// it with p = p_j s_j, q = l_j which need not be coprime)
std::complex<double> gauss_sum_raw(long long ell, long long p, long long q, long long n0,
                                   long long k) {
    std::complex<double> acc{0.0, 0.0};
    for (long long n = 0; n < ell; ++n) {
        const long long dn = n - n0;
        const long long sq = mulmod(dn % q, dn % q, q);
        const std::complex<double> quad = unit_phase(mulmod(p % q, sq, q), q);
        const std::complex<double> chr = unit_phase(-mulmod(k % ell, n % ell, ell), ell);
        acc += quad * chr;
    }
    return acc / static_cast<double>(ell);
}

}  // namespace

Rational Rational::reduce(long long n, long long d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(std::abs(n), d);
    return Rational{g ? n / g : n, g ? d / g : d};
}

ResonanceData detect_resonance(const PeriodSet& periods, long long max_den, double tol) {
    if (max_den < 1) throw ValidationError("max_den must be at least 1");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");
    const double R1 = periods.t_rev1();
    const double R2 = periods.t_rev2();
    const double R12 = periods.t_rev12();

    Rational ratio1, ratio2;  // T_rev_j / T_rev12
    if (!rationalize(R1 / R12, max_den, tol, &ratio1) ||
        !rationalize(R2 / R12, max_den, tol, &ratio2) || ratio1.num == 0 || ratio2.num == 0) {
        throw NoResonance("revival period ratios admit no rational approximation within bounds");
    }

    ResonanceData res;
    res.frac12 = Rational{1, 1};
    // T_frac = T_rev12, so p_j/q_j = T_rev12 / T_rev_j = 1 / ratio_j
    res.frac1 = Rational::reduce(ratio1.den * (ratio1.num < 0 ? -1 : 1), std::abs(ratio1.num));
    res.frac2 = Rational::reduce(ratio2.den * (ratio2.num < 0 ? -1 : 1), std::abs(ratio2.num));
    res.t_frac = R12;
    res.r1 = res.frac12.num * res.frac1.den;
    res.s1 = res.frac12.den * res.frac1.num;
    res.r2 = res.frac12.num * res.frac2.den;
    res.s2 = res.frac12.den * res.frac2.num;
    res.ell1 = minimal_period(res.frac1, res.frac12, res.s1);
    res.ell2 = minimal_period(res.frac2, res.frac12, res.s2);

    // resonance identity must close to relative 1e-10
    for (const auto& [fr, R] : {std::pair{res.frac1, R1}, {res.frac2, R2}, {res.frac12, R12}}) {
        if (std::abs(fr.value() * R - res.t_frac) > 1e-10 * std::abs(res.t_frac))
            throw NoResonance("rationalized ratios do not close the resonance identity");
    }
    return res;
}

std::vector<std::complex<double>> theta_sequence(const ResonanceData& res, long long n0,
                                                 long long m0) {
    const long long L1 = res.ell1, L2 = res.ell2;
    if (L1 < 1 || L2 < 1) throw ValidationError("theta sequence needs positive periods");
    std::vector<std::complex<double>> out(static_cast<size_t>(L1 * L2));
    const long long q1 = res.frac1.den, q2 = res.frac2.den, q12 = res.frac12.den;
    for (long long n = 0; n < L1; ++n) {
        const long long dn = n - n0;
        for (long long m = 0; m < L2; ++m) {
            const long long dm = m - m0;
            // accumulate the three quadratic-phase residues over a common
            // denominator q1*q2*q12 (exact, 128-bit intermediates)
            const long long r1 = mulmod(res.frac1.num % q1, mulmod(dn % q1, dn % q1, q1), q1);
            const long long r2 = mulmod(res.frac2.num % q2, mulmod(dm % q2, dm % q2, q2), q2);
            const long long r12 =
                mulmod(res.frac12.num % q12, mulmod(dn % q12, dm % q12, q12), q12);
            const long long den = q1 * q2 * q12;
            const long long num =
                mulmod(r1, q2 * q12, den) + mulmod(r12, q1 * q2, den) + mulmod(r2, q1 * q12, den);
            out[static_cast<size_t>(n * L2 + m)] = unit_phase(num % den, den);
        }
    }
    return out;
}

CoefficientTable fractional_coefficients(const std::vector<std::complex<double>>& theta,
                                         long long ell1, long long ell2, long long n0,
                                         long long m0) {
    if (static_cast<long long>(theta.size()) != ell1 * ell2)
        throw ShapeMismatch("theta array does not match l1 x l2");
    CoefficientTable tbl;
    tbl.ell1 = ell1;
    tbl.ell2 = ell2;
    tbl.n0 = n0;
    tbl.m0 = m0;
    tbl.b.resize(theta.size());
    tbl.c.resize(theta.size());
    const double norm = 1.0 / static_cast<double>(ell1 * ell2);
    for (long long k1 = 0; k1 < ell1; ++k1) {
        for (long long k2 = 0; k2 < ell2; ++k2) {
            std::complex<double> acc{0.0, 0.0};
            for (long long n = 0; n < ell1; ++n) {
                for (long long m = 0; m < ell2; ++m) {
                    // conjugate of the basis sequence: e^{+2 pi i (k1 n / l1 + k2 m / l2)}
                    const std::complex<double> ph =
                        unit_phase(-mulmod(k1, n, ell1) * ell2 - mulmod(k2, m, ell2) * ell1,
                                   ell1 * ell2);
                    acc += theta[static_cast<size_t>(n * ell2 + m)] * ph;
                }
            }
            const size_t idx = static_cast<size_t>(k1 * ell2 + k2);
            tbl.b[idx] = acc * norm;
            tbl.c[idx] =
                unit_phase(mulmod(k1, n0 % ell1, ell1) * ell2 + mulmod(k2, m0 % ell2, ell2) * ell1,
                           ell1 * ell2) *
                tbl.b[idx];
        }
    }
    return tbl;
}

std::complex<double> gauss_sum(long long ell, long long p, long long q, long long n0,
                               long long k) {
    if (ell < 1) throw ValidationError("gauss_sum requires ell >= 1");
    if (q < 1) throw ValidationError("gauss_sum requires q >= 1");
    if (std::gcd(std::abs(p), q) != 1) throw NotCoprime("gauss_sum requires gcd(p, q) = 1");
    return gauss_sum_raw(ell, p, q, n0, k);
}

double modulus_closed_form(long long q, long long k) {
    if (q < 1) throw ValidationError("modulus_closed_form requires q >= 1");
    if (q % 2 == 1) return 1.0 / static_cast<double>(q);
    const bool k_even = ((k % 2) + 2) % 2 == 0;
    const bool half_even = (q / 2) % 2 == 0;
    if (half_even) return k_even ? 2.0 / static_cast<double>(q) : 0.0;
    return k_even ? 0.0 : 2.0 / static_cast<double>(q);
}

bool factorized_moduli_check(const ResonanceData& res, const CoefficientTable& table) {
    if (!res.frac12.is_integer())
        throw HypothesisNotMet("factorized moduli require p12/q12 to be an integer");
    for (long long k1 = 0; k1 < table.ell1; ++k1) {
        const double d1 =
            std::norm(gauss_sum_raw(table.ell1, res.frac1.num * res.s1, table.ell1, table.n0, k1));
        for (long long k2 = 0; k2 < table.ell2; ++k2) {
            const double d2 = std::norm(
                gauss_sum_raw(table.ell2, res.frac2.num * res.s2, table.ell2, table.m0, k2));
            const double lhs = std::norm(table.b[static_cast<size_t>(k1 * table.ell2 + k2)]);
            if (std::abs(lhs - d1 * d2) > 1e-10) return false;
        }
    }
    return true;
}

Amplitude reconstruct_at_revival(const WavePacket& p, const PeriodSet& periods,
                                 const ResonanceData& res, const CoefficientTable& table,
                                 double t) {
    const double T1 = periods.t_scl1();
    const double T2 = periods.t_scl2();
    std::complex<double> acc{0.0, 0.0};
    for (long long k1 = 0; k1 < table.ell1; ++k1) {
        for (long long k2 = 0; k2 < table.ell2; ++k2) {
            const Amplitude psi = pseudo_classical(
                p, periods,
                t + res.t_frac + static_cast<double>(k1) / static_cast<double>(table.ell1) * T1,
                t + res.t_frac + static_cast<double>(k2) / static_cast<double>(table.ell2) * T2);
            acc += table.c[static_cast<size_t>(k1 * table.ell2 + k2)] *
                   std::complex<double>{psi.re, psi.im};
        }
    }
    return {acc.real(), acc.imag()};
}

}  // namespace revlab
