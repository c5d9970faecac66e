#pragma once

#include <functional>
#include <vector>

#include "revlab/hamiltonian.hpp"

// Localized initial state on a truncated coefficient lattice: envelope,
// window geometry, exact window normalization and tail bookkeeping.

namespace revlab {

// Envelope profile chi. The default is the isotropic unit gaussian
// chi(x,y) = exp(-(x^2+y^2)/2), whose squared profile has the analytic
// Fourier transform F(chi^2)(z) = pi * exp(-pi^2 |z|^2) under the
// convention F f(zeta) = integral f(x) exp(-2*pi*i x.zeta) dx.
struct Envelope {
    enum class Kind { gaussian, tabulated };

    Kind kind = Kind::gaussian;
    std::function<double(double, double)> chi_fn;        // tabulated only
    std::function<double(double, double)> ft_chi_sq_fn;  // tabulated, optional

    static Envelope gaussian() { return Envelope{}; }
    static Envelope tabulated(std::function<double(double, double)> chi,
                              std::function<double(double, double)> ft_chi_sq = nullptr);

    double chi(double x, double y) const;
    bool has_ft() const { return kind == Kind::gaussian || static_cast<bool>(ft_chi_sq_fn); }
};

// Localization exponents delta'_i (envelope dilation) and window exponents
// delta_i (the set Delta used for tail estimates), all in (1/2, 1) with
// delta'_i > delta_i. window_factor W truncates the lattice at W envelope
// widths; for the gaussian the discarded tail is < 1.3e-14 of peak at W = 8.
struct PacketParams {
    double delta1p;
    double delta2p;
    double delta1;
    double delta2;
    double window_factor = 8.0;

    void validate() const;
};

struct Window {
    long long n_lo, n_hi;
    long long m_lo, m_hi;

    long long rows() const { return n_hi - n_lo + 1; }
    long long cols() const { return m_hi - m_lo + 1; }
    long long size() const { return rows() * cols(); }
};

// Immutable once built. Coefficients are stored row-major in lexicographic
// (n, m) order; weights() is the cached a^2 table every spectral sum uses.
class WavePacket {
public:
    long long n0 = 0, m0 = 0;
    double h = 0.0;
    Window window{};
    double k_h = 0.0;  // normalization constant actually applied
    OscillatorPair osc{1.0, 1.0};
    PacketParams params{};
    Envelope env{};

    const std::vector<double>& amplitudes() const { return a_; }
    const std::vector<double>& weights() const { return w_; }
    // n - n0 and m - m0 per lattice point, same layout as weights()
    const std::vector<double>& delta_n() const { return dn_; }
    const std::vector<double>& delta_m() const { return dm_; }

    double coeff(long long n, long long m) const;

    friend WavePacket build_packet(const EnergyPoint&, double, const OscillatorPair&,
                                   const PacketParams&, const Envelope&);

private:
    std::vector<double> a_, w_, dn_, dm_;
};

// Coefficients a_{n,m} = K * chi(omega1 (n-n0)/h^(delta1'-1), omega2 (m-m0)/h^(delta2'-1))
// on the window [n0 +- ceil(W h^(delta1'-1)/omega1)] x [...], clipped to
// nonnegative indices, K chosen so the l2 norm over the window is exactly 1.
WavePacket build_packet(const EnergyPoint& e, double h, const OscillatorPair& osc,
                        const PacketParams& params, const Envelope& env);

// Sum of a^2 over window points outside Delta = { |n-n0| <= h^(delta1-1),
// |m-m0| <= h^(delta2-1) }.
double tail_mass(const WavePacket& p, double delta1, double delta2);

// F(chi^2)(z1, z2); analytic closed form for the gaussian kind.
double ft_envelope_sq(const Envelope& env, double z1, double z2);

}  // namespace revlab
