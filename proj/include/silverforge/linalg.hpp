#pragma once

#include <Eigen/Dense>
#include <complex>

#include "silverforge/errors.hpp"

namespace silverforge {

using cplx = std::complex<double>;
// Row-major storage so serialized matrices are byte-comparable across runs.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Kronecker product: block (i,j) of the result equals A(i,j)*B.
CMat kron(const CMat& A, const CMat& B);

// Expand each complex entry x into the 2x2 real block [[re,-im],[im,re]].
// Ring homomorphism: realify(A*B) == realify(A)*realify(B).
RMat realify(const CMat& X);

// Interleave real/imaginary parts: [x1_re, x1_im, x2_re, x2_im, ...].
RVec tilde_vec(const CVec& x);

// tilde_vec of the column-major vectorization of M.
RVec tilde_vec_mat(const CMat& M);

// Householder QR with the post-hoc sign flip making diag(R) > 0, so the
// R zero-pattern checks are deterministic. Throws RankDeficient when a
// pivot falls below 1e-12 of the column norm scale.
struct QrResult {
    RMat Q;
    RMat R;
};
QrResult qr_decompose(const RMat& M);

// LU determinant with partial pivoting; singular inputs return 0 within
// roundoff rather than erroring.
cplx det_complex(const CMat& M);

} // namespace silverforge
