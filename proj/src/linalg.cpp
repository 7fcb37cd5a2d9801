#include "silverforge/linalg.hpp"

#include <cmath>

namespace silverforge {

CMat kron(const CMat& A, const CMat& B) {
    CMat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

RMat realify(const CMat& X) {
    RMat out(2 * X.rows(), 2 * X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const double re = X(i, j).real(), im = X(i, j).imag();
            out(2 * i, 2 * j) = re;
            out(2 * i, 2 * j + 1) = -im;
            out(2 * i + 1, 2 * j) = im;
            out(2 * i + 1, 2 * j + 1) = re;
        }
    }
    return out;
}

RVec tilde_vec(const CVec& x) {
    RVec out(2 * x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out(2 * i) = x(i).real();
        out(2 * i + 1) = x(i).imag();
    }
    return out;
}

RVec tilde_vec_mat(const CMat& M) {
    RVec out(2 * M.rows() * M.cols());
    Eigen::Index p = 0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            out(p++) = M(i, j).real();
            out(p++) = M(i, j).imag();
        }
    }
    return out;
}

QrResult qr_decompose(const RMat& M) {
    if (M.rows() < M.cols())
        throw DimensionMismatch("qr_decompose: rows < cols");
    const Eigen::Index n = M.cols();

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(M.rows(), n);
    Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();

    // Rank guard: pivots measured against the overall column-norm scale.
    double scale = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) scale = std::max(scale, M.col(j).norm());
    for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(R(j, j)) <= 1e-12 * std::max(scale, 1.0))
            throw RankDeficient("qr_decompose: pivot " + std::to_string(j) + " below tolerance");

    for (Eigen::Index j = 0; j < n; ++j) {
        if (R(j, j) < 0.0) {
            R.row(j) = -R.row(j);
            Q.col(j) = -Q.col(j);
        }
    }
    QrResult out;
    out.Q = Q;
    out.R = R;
    return out;
}

cplx det_complex(const CMat& M) {
    if (M.rows() != M.cols())
        throw DimensionMismatch("det_complex: matrix not square");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu{Eigen::MatrixXcd(M)};
    return lu.determinant();
}

} // namespace silverforge
