#pragma once

#include <vector>

#include "silverforge/channel.hpp"
#include "silverforge/constellation.hpp"
#include "silverforge/group_code.hpp"
#include "silverforge/linalg.hpp"
#include "silverforge/rng.hpp"
#include "silverforge/silver.hpp"

namespace silverforge {

struct DecodeResult {
    RVec symbols; // length 2k, entries from the PAM alphabet
    double metric = 0.0;
    long long nodes_visited = 0;
};

// Zero-pattern audit of R = qr(H_eq).R: within each layer's diagonal block,
// entries coupling different groups must vanish for every channel draw.
struct RStructureReport {
    int n_layers = 0;
    int group_size = 0;
    bool d_is_block_diagonal = false;
    bool t_is_upper_triangular = false;
    double max_leak = 0.0;
    int resampled = 0; // rank-deficient draws replaced
    bool pass(double tol = 1e-9) const {
        return d_is_block_diagonal && t_is_upper_triangular && max_leak <= tol;
    }
};

// Decode-ready bundle: weights are the rotated (primed) ones in decode order —
// layer-major, group-major, within-group index — so layer 1 occupies the
// leading columns of H_eq and the conditional decoder's tail is the trailing
// block.
struct DecoderContext {
    LinearDispersionCode code; // weights already primed, decode order
    GeneratorMatrix gen;       // generator of the primed weights
};

DecoderContext make_decoder_context(const LinearDispersionCode& code, const RotationPair& rot);

// S = codebook_scale * sum_i y_i A'_i for a PAM vector y of length 2k.
CMat encode_codeword(const DecoderContext& ctx, const RVec& y);

// Exact argmin of ||Y - sqrt(snr/n_t) H S||_F^2 over the full codebook by
// incremental odometer enumeration (last coordinate fastest); ties fall to the
// lexicographically smallest symbol vector. Guard: M^k <= 2^20.
DecodeResult brute_force_ml(const CMat& Y, const ChannelInstance& ch, const DecoderContext& ctx,
                            const Constellation& cons);

// Schnorr-Euchner sphere decoder on the reduced metric
// ||y_prime - sqrt(snr/n_t) R s||^2; per-level candidates visited in
// increasing partial-distance order, unbounded initial radius, radius shrink
// at each leaf. nodes_visited counts leaves reached.
DecodeResult sphere_decode(const RVec& y_prime, const RMat& R, const Constellation& cons,
                           double snr, int n_t);

// Structure-exploiting ML: Schnorr-Euchner enumeration of the trailing
// (tail-layer) coordinates; for each tail hypothesis the leading layer
// decouples into 4 independent group searches whose last-decoded symbol is
// resolved by quantization. Throws StructureViolation when the head diagonal
// block leaks across groups beyond 1e-9. nodes_visited counts tail leaves
// plus group candidate evaluations.
DecodeResult conditional_group_decode(const RVec& y_prime, const RMat& R,
                                      const DecoderContext& ctx, const Constellation& cons,
                                      double snr);

// Max absolute value found in mandated-zero positions of R across `trials`
// random channels; rank-deficient draws are resampled and counted.
RStructureReport r_structure_report(const DecoderContext& ctx, int n_r, int trials, Prng rng);

} // namespace silverforge
