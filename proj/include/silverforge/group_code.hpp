#pragma once

#include <vector>

#include "silverforge/constellation.hpp"
#include "silverforge/frames.hpp"
#include "silverforge/linalg.hpp"

namespace silverforge {

// Linear dispersion code S = codebook_scale * sum_i s_i A_i. Weights are
// stored unscaled (tr(A_i A_i^H) = n_t each); codebook_scale = 1/sqrt(n_layers)
// restores the transmit power budget sum_i tr(A_i A_i^H) E(s_i^2) = n_t T.
struct LinearDispersionCode {
    int n_t = 0;
    int T = 0;
    int k = 0;                            // complex symbols per block
    std::vector<CMat> weights;            // A_1 .. A_{2k}
    std::vector<std::vector<int>> groups; // decoding groups (indices into weights)
    std::vector<int> layer_tags;          // extension layer per weight, 0-based
    int n_layers = 1;
    double codebook_scale = 1.0;

    int group_size() const { return n_t / 2; }
};

// Table-style view of a 4-group code: cell(i, m) = weight index of the i-th
// element of group m, laid out group-major in `weights`.
struct GroupTable {
    int rows = 0; // k/g
    int cols = 0; // g
    int cell(int i, int m) const { return m * rows + i; } // 0-based
};

struct GroupReport {
    double group1_square_dev = 0.0;    // A_i^2 = +I on the first group
    double head_square_dev = 0.0;      // head^2 = -I on groups 2..g
    double group1_commute_dev = 0.0;   // first group commutes internally
    double head_commute_dev = 0.0;     // first group commutes with heads
    double head_anticommute_dev = 0.0; // heads pairwise anticommute
    double table_product_dev = 0.0;    // A_{m*rows+i} = A_i * A_{m*rows}
    double cross_group_hr_dev = 0.0;   // A_iA_j^H + A_jA_i^H = 0 across groups
    double max_dev() const {
        double m = group1_square_dev;
        m = std::max(m, head_square_dev);
        m = std::max(m, group1_commute_dev);
        m = std::max(m, head_commute_dev);
        m = std::max(m, head_anticommute_dev);
        m = std::max(m, table_product_dev);
        m = std::max(m, cross_group_hr_dev);
        return m;
    }
    bool pass(double tol = 1e-12) const { return max_dev() <= tol; }
};

// Per-group encoding rotation: s_p = W^T V y_p.
struct RotationPair {
    RMat W;
    RMat V;
    RMat R_enc; // W^T * V
};

// Rate-1, 4-group decodable code on n_t = 2^a antennas. Group 1 is the
// product closure of {j F4F5, j F6F7, ..., F1F2F3} in binary-counting order;
// groups 2..4 are that set times the heads F1, F2, F3.
LinearDispersionCode build_rate1_4group(int a);

GroupTable group_table(const LinearDispersionCode& code, int g = 4);

GroupReport verify_g_group(const LinearDispersionCode& code, int g);

// W(j,i) = sqrt(2/n_t) * A_i(2j-1, 2j-1) over the first group's diagonal
// weights; throws StructureViolation if those weights are not paired +-1
// diagonal matrices.
RMat extract_W(const LinearDispersionCode& code);

// W from the code plus the tabulated 4-decimal rotation literals for
// n_t in {4, 8}; n_t = 2 takes V = [1]. Throws UnsupportedSize otherwise.
RotationPair rotation_pair(int n_t);

// Codeword of the rate-1 code from 2*n_t PAM values: groups of n_t/2 entries
// rotate through R_enc and weight the group's matrices. ||S||_F^2 equals
// n_t*||y||^2 up to the gram deviation of the tabulated rotation literals.
CMat encode_layer(const RVec& y, const RotationPair& rot, const LinearDispersionCode& code);

// Rotated ("primed") weights A'_{p,i} = sum_j R_enc(j,i) A_{p,j}, layer-major;
// encoding with PAM values against these reproduces encode_layer exactly.
std::vector<CMat> primed_weights(const LinearDispersionCode& code, const RotationPair& rot);

enum class ExecPolicy { Serial, Parallel };

// Minimum of det(dS dS^H) over nonzero codeword differences of the rate-1
// code, via the single-group factorized search
//   min over dy != 0 of prod_j [sqrt(n_t/2) * (V dy)_j]^4.
// For n_t <= 4 the exhaustive all-coordinate search must agree to 1e-9
// relative (checked internally).
double min_determinant(const LinearDispersionCode& code, const RotationPair& rot,
                       const Constellation& pam);

double min_determinant_factorized(const LinearDispersionCode& code, const RotationPair& rot,
                                  const Constellation& pam);

// Exhaustive search over the full difference lattice of any code whose
// weights/scale are given by `ctx_weights` (already rotated if applicable).
double min_determinant_brute(const std::vector<CMat>& weights, double scale,
                             const Constellation& pam,
                             ExecPolicy policy = ExecPolicy::Parallel);

} // namespace silverforge
