#include "revlab/wavepacket.hpp"

#include <cmath>
#include <numbers>

namespace revlab {

Envelope Envelope::tabulated(std::function<double(double, double)> chi,
                             std::function<double(double, double)> ft_chi_sq) {
    if (!chi) throw ValidationError("tabulated envelope requires a profile function");
    Envelope e;
    e.kind = Kind::tabulated;
    e.chi_fn = std::move(chi);
    e.ft_chi_sq_fn = std::move(ft_chi_sq);
    return e;
}

double Envelope::chi(double x, double y) const {
    if (kind == Kind::gaussian) return std::exp(-0.5 * (x * x + y * y));
    return chi_fn(x, y);
}

void PacketParams::validate() const {
    auto in_range = [](double d) { return d > 0.5 && d < 1.0; };
    if (!in_range(delta1) || !in_range(delta2) || !in_range(delta1p) || !in_range(delta2p))
        throw ValidationError("localization exponents must lie in (1/2, 1)");
    if (!(delta1p > delta1) || !(delta2p > delta2))
        throw ValidationError("delta_i' must exceed delta_i (tail lemma hypothesis)");
    if (!(window_factor >= 0.0)) throw ValidationError("window_factor must be nonnegative");
}

double WavePacket::coeff(long long n, long long m) const {
    if (n < window.n_lo || n > window.n_hi || m < window.m_lo || m > window.m_hi) return 0.0;
    return a_[static_cast<size_t>((n - window.n_lo) * window.cols() + (m - window.m_lo))];
}

WavePacket build_packet(const EnergyPoint& e, double h, const OscillatorPair& osc,
                        const PacketParams& params, const Envelope& env) {
    params.validate();
    if (!(h > 0.0)) throw ValidationError("h must be positive");

    const auto [n0, m0] = closest_quantum_numbers(e, h, osc);
    const double H1 = std::pow(h, params.delta1p - 1.0);
    const double H2 = std::pow(h, params.delta2p - 1.0);
    const long long half_n = static_cast<long long>(std::ceil(params.window_factor * H1 / osc.omega1));
    const long long half_m = static_cast<long long>(std::ceil(params.window_factor * H2 / osc.omega2));

    WavePacket p;
    p.n0 = n0;
    p.m0 = m0;
    p.h = h;
    p.osc = osc;
    p.params = params;
    p.env = env;
    p.window = Window{std::max(0LL, n0 - half_n), n0 + half_n, std::max(0LL, m0 - half_m), m0 + half_m};
    if (p.window.rows() <= 0 || p.window.cols() <= 0) throw WindowDegenerate("empty packet window");

    const size_t npts = static_cast<size_t>(p.window.size());
    p.a_.resize(npts);
    p.dn_.resize(npts);
    p.dm_.resize(npts);

    long double norm2 = 0.0L;
    size_t idx = 0;
    for (long long n = p.window.n_lo; n <= p.window.n_hi; ++n) {
        const double xn = osc.omega1 * static_cast<double>(n - n0) / H1;
        for (long long m = p.window.m_lo; m <= p.window.m_hi; ++m, ++idx) {
            const double ym = osc.omega2 * static_cast<double>(m - m0) / H2;
            const double a = env.chi(xn, ym);
            if (a < 0.0) throw ValidationError("envelope must be nonnegative");
            p.a_[idx] = a;
            p.dn_[idx] = static_cast<double>(n - n0);
            p.dm_[idx] = static_cast<double>(m - m0);
            norm2 += static_cast<long double>(a) * a;
        }
    }
    if (norm2 <= 0.0L) throw ValidationError("envelope vanished on the whole window");

    const double k = static_cast<double>(1.0L / std::sqrt(norm2));
    p.k_h = k;
    p.w_.resize(npts);
    for (size_t i = 0; i < npts; ++i) {
        p.a_[i] *= k;
        p.w_[i] = p.a_[i] * p.a_[i];
    }
    return p;
}

double tail_mass(const WavePacket& p, double delta1, double delta2) {
    const double bound_n = std::pow(p.h, delta1 - 1.0);
    const double bound_m = std::pow(p.h, delta2 - 1.0);
    long double acc = 0.0L;
    const auto& w = p.weights();
    const auto& dn = p.delta_n();
    const auto& dm = p.delta_m();
    for (size_t i = 0; i < w.size(); ++i) {
        if (std::abs(dn[i]) > bound_n || std::abs(dm[i]) > bound_m) acc += w[i];
    }
    return static_cast<double>(acc);
}

double ft_envelope_sq(const Envelope& env, double z1, double z2) {
    if (env.kind == Envelope::Kind::gaussian) {
        constexpr double pi = std::numbers::pi;
        return pi * std::exp(-pi * pi * (z1 * z1 + z2 * z2));
    }
    if (!env.ft_chi_sq_fn)
        throw NotAvailable("tabulated envelope has no Fourier transform of chi^2");
    return env.ft_chi_sq_fn(z1, z2);
}

}  // namespace revlab
