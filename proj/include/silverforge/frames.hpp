#pragma once

#include <vector>

#include "silverforge/linalg.hpp"

namespace silverforge {

// The 2a anti-Hermitian, pairwise anticommuting, unitary matrices of size
// 2^a x 2^a that seed every code construction here.
struct Frame {
    int a = 0;                  // n_t = 2^a
    std::vector<CMat> matrices; // F_1 .. F_{2a}, in order
    int n() const { return 1 << a; }
};

// Subset selector over a frame: product of the F_i with lambda_i = 1, taken
// in increasing index order, optionally times the imaginary unit.
struct ProductMask {
    std::vector<std::uint8_t> lambdas; // length 2a
    bool j_flag = false;
};

struct FrameReport {
    double max_unitarity_dev = 0.0;
    double max_anti_hermitian_dev = 0.0;
    double max_anticommutator = 0.0; // max_{i<j} ||F_i F_j + F_j F_i||_F
    double max_square_dev = 0.0;     // max_i ||F_i^2 + I||_F
    bool pass(double tol = 1e-12) const {
        return max_unitarity_dev <= tol && max_anti_hermitian_dev <= tol &&
               max_anticommutator <= tol && max_square_dev <= tol;
    }
};

// The fixed 2x2 generators everything is built from.
void pauli_generators(CMat& P1, CMat& P2, CMat& P3);

// Builds F_1 = +j P3^{(x)a}; F_{2k} = I^{(x)(a-k)} (x) P1 (x) P3^{(x)(k-1)};
// F_{2k+1} = I^{(x)(a-k)} (x) P2 (x) P3^{(x)(k-1)}. Throws UnsupportedSize
// outside 1 <= a <= 4.
Frame build_frame(int a);

FrameReport verify_frame(const Frame& f);

CMat subset_product(const Frame& f, const ProductMask& m);

// Sign of the square of a product of s distinct frame elements: (-1)^{s(s+1)/2}.
int square_sign(int s);

// Whether products of sizes r and s sharing p common factors commute:
// true iff exactly one of {r,s,p all odd} / {rs even and p even} holds.
bool commute_predicate(int r, int s, int p);

// Stacks tilde_vec(vec(.)) of all subset products and their j-multiples and
// checks full column rank (they span the real matrix space). a <= 3.
bool basis_independence_check(const Frame& f);

} // namespace silverforge
