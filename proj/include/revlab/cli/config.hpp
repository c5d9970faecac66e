#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revlab/scenario.hpp"

namespace revlab::cli {

// Flat key = value scenario file. One pair per line, '#' comments, repeated
// `coeff = i j c` lines build the polynomial. Unknown and duplicate keys are
// rejected at parse time; module preconditions are checked with actionable
// messages.
//
// Keys:
//   coeff = i j c          polynomial term c * X^i Y^j   (repeatable)
//   omega1, omega2         oscillator frequencies        (> 0)
//   E1, E2                 energy point                  (in [0, 1])
//   h                      semiclassical parameter       (> 0)
//   h_sweep = v1 v2 ...    h list for `convergence`
//   delta1, delta2         window exponents              (in (1/2, 1))
//   delta1p, delta2p       localization exponents        (> delta_i)
//   window_factor          truncation half-width factor  (default 8)
//   t_start, t_end, samples   time grid (defaults 0 / 3*max T_cl / 1024)
//   alpha, beta            remainder time-scale exponents (defaults 0, -1)
//   mu                     near-revival margin exponent   (default 0.05)
//   s                      collapse-horizon exponent      (default 0.1)
//   max_den, tol           resonance search bounds        (defaults 64, 1e-9)
//   q_max                  diophantine brute-force bound  (default 10000)
//   eta, eps               flow-distance threshold inputs (defaults 0.01, 0)
//   dump_packet            write packet.csv               (default false)
struct Config {
    Scenario scenario;
    double h = 0.0;
    std::vector<double> h_sweep;
    double t_start = 0.0;
    std::optional<double> t_end;
    int samples = 1024;
    double alpha = 0.0;
    double beta = -1.0;
    double mu = 0.05;
    double s = 0.1;
    long long max_den = 64;
    double tol = 1e-9;
    long long q_max = 10000;
    double eta = 0.01;
    double eps = 0.0;
    bool dump_packet = false;
};

Config parse_config(const std::string& path);

// parse from text (path used only in messages); exposed for tests
Config parse_config_text(const std::string& text, const std::string& path);

}  // namespace revlab::cli
