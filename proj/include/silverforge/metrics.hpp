#pragma once

#include <string>
#include <vector>

#include "silverforge/channel.hpp"
#include "silverforge/group_code.hpp"
#include "silverforge/linalg.hpp"
#include "silverforge/rng.hpp"
#include "silverforge/silver.hpp"

namespace silverforge {

struct CapacityEstimate {
    double mean = 0.0;      // per channel use
    double std_error = 0.0; // sample std / sqrt(trials)
    long long trials = 0;
    double snr_db = 0.0;
    std::string unit = "bits/channel use";
};

// One channel draw evaluated both ways (identical H): ergodic-capacity
// integrand and the code-constrained mutual-information integrand.
struct PairedMiSample {
    double capacity = 0.0; // log2 det(I + (snr/n_t) H H^H)
    double mi = 0.0;       // (1/2T) log2 det(I + (snr/n_t) H_eq^T H_eq)
};

// Trial t draws H from rng.substream(t), so estimates with the same seed are
// paired realization-by-realization.
std::vector<PairedMiSample> paired_capacity_mi(const GeneratorMatrix& gen, int n_t, int n_r,
                                               double snr, long long trials, const Prng& rng);

CapacityEstimate ergodic_capacity_mc(int n_t, int n_r, double snr, long long trials,
                                     const Prng& rng);

CapacityEstimate stbc_mutual_info_mc(const GeneratorMatrix& gen, int n_t, int n_r, double snr,
                                     long long trials, const Prng& rng);

// First series coefficient of the code-constrained mutual information in
// natural-log units: n_r * sum_i tr(A_i A_i^H) * scale^2 / (2 T n_t);
// equals n_r exactly when the transmit power budget holds.
double expansion_I1(const LinearDispersionCode& code, int n_r);

// Second series coefficient from the weight matrices (natural-log units):
//   I2 = -(n_r / (16 T n_t^2)) * sum_i sum_j [tr(S_ij^2) + n_r (tr S_ij)^2],
// S_ij = A_i A_j^H + A_j A_i^H on power-scaled weights, full symmetric double
// sum including the j = i diagonal terms.
double expansion_I2(const LinearDispersionCode& code, int n_r);

struct ExpansionCoefficients {
    double I1 = 0.0;
    double I2 = 0.0;
    double C1 = 0.0; // capacity series: n_r
    double C2 = 0.0; // capacity series: -n_r (n_r + n_t) / (2 n_t)
};

ExpansionCoefficients expansion_coefficients(const LinearDispersionCode& code, int n_r);

// Least-squares quadratic coefficient of MC mutual information (nats) on the
// low-SNR grid {0.005, 0.01, 0.02}, common channel draws across grid points;
// cross-checks expansion_I2.
double expansion_mc_fit(const GeneratorMatrix& gen, int n_t, int n_r, long long trials,
                        const Prng& rng);

} // namespace silverforge
