#pragma once

#include <vector>

#include "silverforge/frames.hpp"
#include "silverforge/group_code.hpp"
#include "silverforge/linalg.hpp"

namespace silverforge {

// One layer's multiplier: the product of the listed frame elements (ascending),
// optionally times j, times a unit-phase scalar. Layer 1 is always identity.
// use_u post-multiplies by the 2-Tx unitary U instead of pre-multiplying a
// frame product.
struct LayerMultiplier {
    std::vector<int> frame_indices; // 1-based frame element numbers
    bool j_flag = false;
    cplx phase{1.0, 0.0};
    bool use_u = false;
};

struct LayerPlan {
    int n_t = 0;
    int n_layers = 0;
    std::vector<LayerMultiplier> multipliers; // one per layer
};

// Real generator: column i = tilde_vec(vec(A_i)) / sqrt(n_t). physical_gain
// converts normalized columns to transmit-power columns: physical_gain * G has
// columns tilde_vec(vec(codebook_scale * A_i)).
struct GeneratorMatrix {
    RMat G; // 2*T*n_t x 2k
    int n_t = 0;
    double normalization = 0.0;
    int n_layers = 1;
    double physical_gain = 1.0;
};

struct HrCensus {
    int zero_pairs = 0;
    int total_pairs = 0;
};

// 2-Tx post-multiplier U = (1/sqrt(7)) [[1+j, 1+2j], [-1+2j, 1-j]].
CMat silver_u_matrix();

// Dense matrix of a multiplier (frame products and j/phase scaling only;
// use_u layers still post-multiply separately inside extend_layers).
CMat layer_multiplier_matrix(const LayerMultiplier& m, const Frame& f);

// Layer schedule: layer 1 = I; layers 2..n_t/2 = products of {F4, F6, ..., F_{2a}}
// in size-major then lexicographic order; layers n_t/2+1..n_t = j times the
// first half; phase e^{j*pi/4} on every second layer for n_t >= 4.
// n_t = 2 is the special pair [I, jU].
LayerPlan default_layer_plan(int n_t, int n_layers);

// Weights of layer i = (multiplier_i) * (base weights); layer-major layout.
// Throws DependentLayers when the stacked real vectors of all weights lose
// rank (threshold 1e-9).
LinearDispersionCode extend_layers(const LinearDispersionCode& base, const LayerPlan& plan,
                                   const Frame& frame);

// The 8-weight 2-Tx Silver code: Alamouti weights plus j*(Alamouti)*U.
LinearDispersionCode build_silver2();

// Rate-n_layers generalized Silver code on n_t antennas via the default plan.
LinearDispersionCode build_silver(int n_t, int n_layers);

GeneratorMatrix assemble_generator(const LinearDispersionCode& code);

// Count of weight pairs i < j with A_i A_j^H + A_j A_i^H = 0 (Frobenius 1e-12).
HrCensus hr_pair_census(const LinearDispersionCode& code);

// max over i < j of |tr(A_i A_j^H + A_j A_i^H)|; equals 2*n_t*max offdiag of
// G^T G, which tests assert separately.
double self_interference_trace_check(const LinearDispersionCode& code);

} // namespace silverforge
