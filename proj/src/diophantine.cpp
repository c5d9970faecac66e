#include "revlab/diophantine.hpp"

#include <cmath>
#include <limits>

namespace revlab {

namespace {

using i128 = __int128;

constexpr long long kI64Max = std::numeric_limits<long long>::max();

bool is_perfect_square(long long d, long long* root = nullptr) {
    if (d < 0) return false;
    const long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(d))));
    for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c) {
        if (c * c == d) {
            if (root) *root = c;
            return true;
        }
    }
    return false;
}

long long isqrt_floor(long long d) {
    long long r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(d))));
    while ((r + 1) * (r + 1) <= d) ++r;
    while (r * r > d) --r;
    return r;
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// push quotient a onto the recurrence, seeded with p_{-1}/q_{-1} = 1/0 and
// p_{-2}/q_{-2} = 0/1; false when the next convergent would overflow 64 bits
bool push_convergent(ConvergentSequence& seq, long long a) {
    const size_t k = seq.convergents.size();
    const long long pm1 = k >= 1 ? seq.convergents[k - 1].p : 1;
    const long long qm1 = k >= 1 ? seq.convergents[k - 1].q : 0;
    const long long pm2 = k >= 2 ? seq.convergents[k - 2].p : (k == 1 ? 1 : 0);
    const long long qm2 = k >= 2 ? seq.convergents[k - 2].q : (k == 1 ? 0 : 1);
    const i128 pn = static_cast<i128>(a) * pm1 + pm2;
    const i128 qn = static_cast<i128>(a) * qm1 + qm2;
    if (pn > kI64Max || qn > kI64Max) return false;
    seq.partial_quotients.push_back(a);
    seq.convergents.push_back({static_cast<long long>(pn), static_cast<long long>(qn)});
    return true;
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(long long p_, long long q_, long long d_, long long r_)
    : p(p_), q(q_), d(d_), r(r_) {
    if (r == 0) throw ValidationError("quadratic irrational: zero denominator");
    if (r < 0) {
        p = -p;
        q = -q;
        r = -r;
    }
    if (q <= 0) throw ValidationError("quadratic irrational: sqrt coefficient must be positive");
    if (d <= 0 || is_perfect_square(d))
        throw ValidationError("quadratic irrational: d must be a positive non-square");
    if (!(value() > 0.0)) throw ValidationError("continued fractions require theta > 0");
}

double QuadraticIrrational::value() const {
    return (static_cast<double>(p) + static_cast<double>(q) * std::sqrt(static_cast<double>(d))) /
           static_cast<double>(r);
}

ConvergentSequence cf_expand(double theta, int max_terms) {
    if (!(theta > 0.0)) throw ValidationError("continued fractions require theta > 0");
    if (max_terms <= 0) throw ValidationError("max_terms must be positive");

    // a double resolves its continued fraction only while q_k^2 |theta - p/q|
    // stays above the representation error, i.e. up to q ~ 1/sqrt(eps)
    constexpr long long kQLimit = 100000000;  // 1e8

    ConvergentSequence seq;
    seq.theta = theta;
    seq.exact_input = false;

    double x = theta;
    for (int k = 0; k < max_terms; ++k) {
        const double a = std::floor(x);
        const double frac = x - a;
        if (frac >= 1.0 - 1e-12) {
            // x just below an integer: floor itself is no longer reliable
            seq.termination = CfTermination::precision_exhausted;
            return seq;
        }
        const size_t nk = seq.convergents.size();
        const long long q_prev = nk >= 1 ? seq.convergents[nk - 1].q : 0;
        if (a > 0 && q_prev > kQLimit / a) {
            seq.termination = CfTermination::precision_exhausted;
            return seq;
        }
        if (!push_convergent(seq, static_cast<long long>(a))) {
            seq.termination = CfTermination::overflow;
            return seq;
        }
        if (frac <= 1e-12) {
            // residual within 1e-12 of an integer: the double carries no
            // more reliable quotients
            seq.termination = CfTermination::precision_exhausted;
            return seq;
        }
        x = 1.0 / frac;
    }
    seq.termination = CfTermination::max_terms;
    return seq;
}

ConvergentSequence cf_expand(const QuadraticIrrational& theta, int max_terms) {
    if (max_terms <= 0) throw ValidationError("max_terms must be positive");

    // normalize (p + q sqrt(d))/r to (P + sqrt(D))/Q with Q | (D - P^2):
    // multiply numerator and denominator by r
    const i128 D128 = static_cast<i128>(theta.d) * theta.q * theta.q * theta.r * theta.r;
    if (D128 > kI64Max) throw ValidationError("quadratic irrational out of range");
    long long D = static_cast<long long>(D128);
    long long P = theta.p * theta.r;
    long long Q = theta.r * theta.r;

    ConvergentSequence seq;
    seq.theta = theta.value();
    seq.exact_input = true;

    const long long sD = isqrt_floor(D);
    for (int k = 0; k < max_terms; ++k) {
        // floor((P + sqrt(D))/Q): sqrt(D) in (sD, sD+1), direction flips with
        // the sign of Q
        const long long a = Q > 0 ? floor_div(P + sD, Q) : floor_div(-P - sD - 1, -Q);
        if (!push_convergent(seq, a)) {
            seq.termination = CfTermination::overflow;
            return seq;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    seq.termination = CfTermination::max_terms;
    return seq;
}

double lattice_distance(double t, double period) {
    if (!(period > 0.0)) throw ValidationError("lattice_distance requires a positive period");
    const double k = std::nearbyint(t / period);
    return std::abs(t - k * period);
}

double flow_lattice_distance(const FlowParams& fp, double t) {
    const double x = fp.a * t;
    const double y = fp.b * t;
    const long long rx = static_cast<long long>(std::nearbyint(x));
    const long long ry = static_cast<long long>(std::nearbyint(y));
    double best = std::numeric_limits<double>::infinity();
    for (long long n = rx - 1; n <= rx + 1; ++n) {
        for (long long m = ry - 1; m <= ry + 1; ++m) {
            if (n == 0 && m == 0) continue;
            best = std::min(best, std::hypot(x - static_cast<double>(n), y - static_cast<double>(m)));
        }
    }
    return best;
}

double approach_time(const FlowParams& fp, Convergent conv) {
    return (fp.a * static_cast<double>(conv.q) + fp.b * static_cast<double>(conv.p)) /
           (fp.a * fp.a + fp.b * fp.b);
}

double neighborhood_bound(const FlowParams& fp, Convergent conv, double r) {
    if (r < 0.0) throw ValidationError("neighborhood radius must be nonnegative");
    const double a = fp.a, b = fp.b;
    const double n2 = a * a + b * b;
    const double q = static_cast<double>(conv.q);
    const double u = a * b / q + r * a * n2;
    const double v = a * a / q + r * b * n2;
    return std::hypot(u, v) / n2;
}

double diophantine_constant(const QuadraticIrrational& theta, long long q_max) {
    if (q_max < 1) throw ValidationError("q_max must be at least 1");
    const double th = theta.value();
    double best = std::numeric_limits<double>::infinity();
    for (long long q = 1; q <= q_max; ++q) {
        const double qd = static_cast<double>(q);
        const double p = std::nearbyint(th * qd);
        best = std::min(best, qd * qd * std::abs(th - p / qd));
    }
    return best;
}

double t_eta(const FlowParams& fp, double k_eps, double eps, double eta) {
    if (!(k_eps > 0.0 && k_eps <= 0.5)) throw ValidationError("k_eps must lie in (0, 1/2]");
    if (!(eps >= 0.0)) throw ValidationError("eps must be nonnegative");
    if (!(eta > 0.0)) throw ValidationError("eta must be positive");
    const double limit = 0.5 * std::pow(std::sqrt(2.0), 1.0 + eps);
    if (eta >= limit) throw EtaTooLarge("eta must be below sqrt(2)^(1+eps)/2");
    return (std::pow(k_eps / eta, 1.0 / (1.0 + eps)) - std::sqrt(2.0) / 2.0) /
           std::hypot(fp.a, fp.b);
}

RevivalSet count_revival_set(const ConvergentSequence& conv, double h, double delta_min,
                             double deltap_min, double mu) {
    if (!(h > 0.0 && h < 1.0)) throw ValidationError("count_revival_set requires 0 < h < 1");
    RevivalSet out;
    out.lo = std::pow(h, deltap_min - 1.0 + mu);
    out.hi = std::pow(h, 1.0 - 2.0 * delta_min - mu);
    if (out.hi >= out.lo) {
        for (const auto& c : conv.convergents) {
            const double q = static_cast<double>(c.q);
            if (q >= out.lo && q <= out.hi) {
                if (out.members.empty() || out.members.back() != c.q) out.members.push_back(c.q);
            }
        }
        out.upper_bound = static_cast<long long>(std::floor(out.hi - out.lo)) + 1;
    }
    out.count = static_cast<long long>(out.members.size());
    return out;
}

}  // namespace revlab
