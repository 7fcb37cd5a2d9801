#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "silverforge/io.hpp"

namespace silverforge {

struct SerPoint {
    double snr_db = 0.0;
    long long symbol_errors = 0;
    long long symbols_sent = 0;
    double ser = 0.0;
    double wall_time = 0.0; // seconds; logged to stderr, not serialized
};

// Encode -> transmit -> conditional decode per trial; complex-symbol error
// counting; deterministic given cfg.seed (independent of thread count and
// chunking). Writes the versioned CSV to `csv`, progress lines to `log`.
std::vector<SerPoint> run_ser_sweep(const SimulationConfig& cfg, std::ostream& csv,
                                    std::ostream& log);

// Paired capacity / mutual-information sweep; CSV columns snr_db, capacity,
// cap_stderr, mi, mi_stderr.
void run_capacity_sweep(const SimulationConfig& cfg, std::ostream& csv);

// Bundled construction checks with named pass/fail lines; weights_path
// optionally cross-checks a weight dump against the fresh construction.
// Returns true when every check passes.
bool run_verification(const SimulationConfig& cfg, const std::string& weights_path,
                      int r_trials, std::ostream& out);

// Rate-1 minimum determinant (dual-path verified) and, for 2-layer codes at
// n_t <= 4, the even-layer phase sweep over {0, 15, ..., 90} degrees.
void run_mindet(const SimulationConfig& cfg, int n_layers, std::ostream& out);

// Oracle-equivalence selftest CSV: trial, metric_bf, metric_sd, metric_cond,
// nodes_sd, nodes_cond. Returns true when all metrics agree within 1e-9.
bool run_decode_selftest(const SimulationConfig& cfg, double snr_db, std::ostream& csv,
                         std::ostream& err);

// Full argument parser / dispatcher. Exit codes: 0 success, 1 check failure,
// 2 configuration error.
int run_cli(int argc, char** argv);

} // namespace silverforge
