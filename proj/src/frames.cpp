#include "silverforge/frames.hpp"

#include <Eigen/QR>

namespace silverforge {

namespace {

const cplx kJ{0.0, 1.0};

CMat kron_chain(const std::vector<const CMat*>& parts) {
    CMat out = CMat::Identity(1, 1);
    for (const CMat* p : parts) out = kron(out, *p);
    return out;
}

} // namespace

void pauli_generators(CMat& P1, CMat& P2, CMat& P3) {
    P1.resize(2, 2);
    P2.resize(2, 2);
    P3.resize(2, 2);
    P1 << 0, 1, -1, 0;
    P2 << 0, kJ, kJ, 0;
    P3 << 1, 0, 0, -1;
}

Frame build_frame(int a) {
    if (a < 1 || a > 4)
        throw UnsupportedSize("build_frame: a must lie in [1,4], got " + std::to_string(a));
    CMat P1, P2, P3;
    pauli_generators(P1, P2, P3);
    const CMat I2 = CMat::Identity(2, 2);

    Frame f;
    f.a = a;
    f.matrices.resize(2 * a);

    std::vector<const CMat*> parts(a, &P3);
    f.matrices[0] = kJ * kron_chain(parts); // F_1, sign fixed to +j

    for (int k = 1; k <= a; ++k) { // F_{2k}
        parts.assign(a - k, &I2);
        parts.push_back(&P1);
        parts.insert(parts.end(), k - 1, &P3);
        f.matrices[2 * k - 1] = kron_chain(parts);
    }
    for (int k = 1; k <= a - 1; ++k) { // F_{2k+1}
        parts.assign(a - k, &I2);
        parts.push_back(&P2);
        parts.insert(parts.end(), k - 1, &P3);
        f.matrices[2 * k] = kron_chain(parts);
    }
    return f;
}

FrameReport verify_frame(const Frame& f) {
    FrameReport rep;
    const int n = f.n();
    const CMat I = CMat::Identity(n, n);
    for (std::size_t i = 0; i < f.matrices.size(); ++i) {
        const CMat& F = f.matrices[i];
        rep.max_unitarity_dev =
            std::max(rep.max_unitarity_dev, (F * F.adjoint() - I).cwiseAbs().maxCoeff());
        rep.max_anti_hermitian_dev =
            std::max(rep.max_anti_hermitian_dev, (F.adjoint() + F).cwiseAbs().maxCoeff());
        rep.max_square_dev = std::max(rep.max_square_dev, (F * F + I).norm());
        for (std::size_t j = i + 1; j < f.matrices.size(); ++j) {
            const CMat& G = f.matrices[j];
            rep.max_anticommutator = std::max(rep.max_anticommutator, (F * G + G * F).norm());
        }
    }
    return rep;
}

CMat subset_product(const Frame& f, const ProductMask& m) {
    if (m.lambdas.size() != f.matrices.size())
        throw DimensionMismatch("subset_product: mask length != 2a");
    const int n = f.n();
    CMat out = CMat::Identity(n, n);
    for (std::size_t i = 0; i < m.lambdas.size(); ++i)
        if (m.lambdas[i]) out = out * f.matrices[i];
    if (m.j_flag) out *= kJ;
    return out;
}

int square_sign(int s) {
    return (s * (s + 1) / 2) % 2 == 0 ? 1 : -1;
}

bool commute_predicate(int r, int s, int p) {
    const bool all_odd = (r % 2 == 1) && (s % 2 == 1) && (p % 2 == 1);
    const bool even_even = ((r * s) % 2 == 0) && (p % 2 == 0);
    return all_odd != even_even;
}

bool basis_independence_check(const Frame& f) {
    if (f.a > 3)
        throw UnsupportedSize("basis_independence_check: a <= 3 only");
    const int two_a = 2 * f.a;
    const int count = 1 << two_a;
    const int dim = 2 * f.n() * f.n();
    RMat stacked(dim, 2 * count);
    for (int mask = 0; mask < count; ++mask) {
        ProductMask pm;
        pm.lambdas.assign(two_a, 0);
        for (int b = 0; b < two_a; ++b) pm.lambdas[b] = (mask >> b) & 1;
        pm.j_flag = false;
        const CMat M = subset_product(f, pm);
        stacked.col(2 * mask) = tilde_vec_mat(M);
        stacked.col(2 * mask + 1) = tilde_vec_mat(CMat(kJ * M));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
    qr.setThreshold(1e-9);
    return qr.rank() == stacked.cols();
}

} // namespace silverforge
