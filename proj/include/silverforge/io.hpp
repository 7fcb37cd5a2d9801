#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "silverforge/errors.hpp"
#include "silverforge/linalg.hpp"

namespace silverforge {

// Matrix text format: a "rows cols" header line, then one row per line with
// space-separated entries. Complex entries print as re+imj with 17 significant
// digits (round-trip exact for doubles).
void write_complex_matrix(std::ostream& os, const CMat& M);
CMat read_complex_matrix(std::istream& is);
void write_real_matrix(std::ostream& os, const RMat& M);
RMat read_real_matrix(std::istream& is);

struct SimulationConfig {
    int nt = 2;
    int nr = 2;
    std::string code = "silver"; // silver | none
    int M = 4;                   // constellation size (QAM)
    std::vector<double> snr_db;
    long long trials = 10000;
    long long target_errors = 0; // 0 = fixed-trials mode
    std::uint64_t seed = 0;
    bool seed_set = false;
    double phase_deg = 0.0;
    bool phase_set = false;
    std::string output;
};

// Structured text config: one "key value..." pair per line; '#' comments and
// blank lines ignored. Keys: nt, nr, code, snr_db (list), trials,
// target_errors, seed, M, phase_deg, output.
SimulationConfig parse_config_file(const std::string& path);
SimulationConfig parse_config_stream(std::istream& is);

// field-level validation shared by the CLI subcommands; throws ConfigInvalid
void validate_config(const SimulationConfig& cfg);

} // namespace silverforge
