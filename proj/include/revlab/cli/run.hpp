#pragma once

#include <string>

#include "revlab/cli/config.hpp"

namespace revlab::cli {

// simulate    CSV of t, |r|, |a1|, |a2|, envelope over the time grid
// periods     text report of all periods + commensurability diagnosis
// convergence CSV of h vs sup remainder errors, plus fitted slopes
// cf          continued-fraction report for T_cl1/T_cl2 (+ CSV)
// revival     resonance report, |c| table, reconstruction residual (+ CSV)
//
// Every run writes manifest.txt (config echo + artifact version) into
// out_dir. Identical config => byte-identical outputs.
void run(const std::string& subcommand, const Config& cfg, const std::string& out_dir,
         int threads);

// run() with errors mapped to documented exit codes (0 = success).
int run_cli(const std::string& subcommand, const std::string& config_path,
            const std::string& out_dir, int threads);

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitPeriodUndefined = 4;
inline constexpr int kExitNoResonance = 5;
inline constexpr int kExitNotAvailable = 6;
inline constexpr int kExitDomain = 7;

}  // namespace revlab::cli
