#pragma once

#include "revlab/hamiltonian.hpp"
#include "revlab/wavepacket.hpp"

namespace revlab {

// Everything that defines one physical setup, independent of h; useful for
// h sweeps.
struct Scenario {
    PolynomialF f;
    EnergyPoint e{0.5, 0.5};
    OscillatorPair osc{1.0, 1.0};
    PacketParams params{};
    Envelope env = Envelope::gaussian();

    WavePacket packet(double h) const { return build_packet(e, h, osc, params, env); }
    PeriodSet periods(double h) const { return period_set(f, e, h, osc); }
};

}  // namespace revlab
