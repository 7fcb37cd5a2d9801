#include "silverforge/group_code.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace silverforge {

namespace {

const cplx kJ{0.0, 1.0};

} // namespace

Constellation make_pam(int levels) {
    if (levels < 2 || levels > 8)
        throw ConfigInvalid("make_pam: levels must lie in [2,8]");
    Constellation c;
    c.kind = Constellation::Kind::PAM;
    c.M = levels;
    c.pam_levels = levels;
    c.scale = std::sqrt(3.0 / (2.0 * (static_cast<double>(levels) * levels - 1.0)));
    for (int m = 1; m <= levels; ++m)
        c.pam_points.push_back((2.0 * m - 1.0 - levels) * c.scale);
    return c;
}

Constellation make_qam(int M) {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
    if (root * root != M)
        throw ConfigInvalid("make_qam: M must be a perfect square, got " + std::to_string(M));
    Constellation c = make_pam(root);
    c.kind = Constellation::Kind::QAM;
    c.M = M;
    return c;
}

LinearDispersionCode build_rate1_4group(int a) {
    if (a < 1 || a > 4)
        throw UnsupportedSize("build_rate1_4group: a must lie in [1,4]");
    const Frame f = build_frame(a);
    const int n = f.n();
    const auto& F = f.matrices; // F[i] is F_{i+1}

    // Generator list for the first group, in listed order (first = LSB).
    std::vector<CMat> gens;
    for (int k = 2; k <= a - 1; ++k) // j F_{2k} F_{2k+1}
        gens.push_back(CMat(kJ * F[2 * k - 1] * F[2 * k]));
    if (a >= 2) gens.push_back(CMat(F[0] * F[1] * F[2]));

    std::vector<CMat> group1;
    const int gsz = 1 << static_cast<int>(gens.size()); // == n/2
    for (int m = 0; m < gsz; ++m) {
        CMat M = CMat::Identity(n, n);
        for (std::size_t b = 0; b < gens.size(); ++b)
            if ((m >> b) & 1) M = M * gens[b];
        group1.push_back(M);
    }

    std::vector<CMat> heads;
    if (a == 1)
        heads = {F[0], F[1], CMat(F[0] * F[1])};
    else
        heads = {F[0], F[1], F[2]};

    LinearDispersionCode code;
    code.n_t = n;
    code.T = n;
    code.k = n;
    code.n_layers = 1;
    code.codebook_scale = 1.0;
    code.weights = group1;
    for (const CMat& h : heads)
        for (const CMat& g : group1) code.weights.push_back(CMat(g * h));
    code.groups.resize(4);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < gsz; ++i) code.groups[m].push_back(m * gsz + i);
    code.layer_tags.assign(code.weights.size(), 0);
    return code;
}

GroupTable group_table(const LinearDispersionCode& code, int g) {
    GroupTable t;
    t.cols = g;
    t.rows = static_cast<int>(code.weights.size()) / g;
    return t;
}

GroupReport verify_g_group(const LinearDispersionCode& code, int g) {
    const int two_k = static_cast<int>(code.weights.size());
    if (two_k % g != 0)
        throw DimensionMismatch("verify_g_group: weight count not divisible by group count");
    const int rows = two_k / g;
    const int n = code.n_t;
    const CMat I = CMat::Identity(n, n);
    const auto& A = code.weights;

    GroupReport rep;
    for (int i = 0; i < rows; ++i)
        rep.group1_square_dev =
            std::max(rep.group1_square_dev, (A[i] * A[i] - I).cwiseAbs().maxCoeff());
    for (int m = 1; m < g; ++m) {
        const CMat& h = A[m * rows];
        rep.head_square_dev = std::max(rep.head_square_dev, (h * h + I).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < rows; ++j)
            rep.group1_commute_dev =
                std::max(rep.group1_commute_dev, (A[i] * A[j] - A[j] * A[i]).cwiseAbs().maxCoeff());
    for (int i = 0; i < rows; ++i)
        for (int m = 1; m < g; ++m) {
            const CMat& h = A[m * rows];
            rep.head_commute_dev =
                std::max(rep.head_commute_dev, (A[i] * h - h * A[i]).cwiseAbs().maxCoeff());
        }
    for (int m = 1; m < g; ++m)
        for (int mm = m + 1; mm < g; ++mm) {
            const CMat& h1 = A[m * rows];
            const CMat& h2 = A[mm * rows];
            rep.head_anticommute_dev =
                std::max(rep.head_anticommute_dev, (h1 * h2 + h2 * h1).cwiseAbs().maxCoeff());
        }
    for (int m = 1; m < g; ++m)
        for (int i = 0; i < rows; ++i)
            rep.table_product_dev = std::max(
                rep.table_product_dev, (A[m * rows + i] - A[i] * A[m * rows]).cwiseAbs().maxCoeff());
    for (int i = 0; i < two_k; ++i)
        for (int j = i + 1; j < two_k; ++j) {
            if (i / rows == j / rows) continue;
            rep.cross_group_hr_dev = std::max(
                rep.cross_group_hr_dev,
                (A[i] * A[j].adjoint() + A[j] * A[i].adjoint()).cwiseAbs().maxCoeff());
        }
    return rep;
}

RMat extract_W(const LinearDispersionCode& code) {
    const int gsz = code.group_size();
    const int n = code.n_t;
    RMat W(gsz, gsz);
    for (int i = 0; i < gsz; ++i) {
        const CMat& A = code.weights[i];
        // first-group weights must be diagonal with paired real +-1 entries
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                if (r == c) {
                    if (std::abs(A(r, c).imag()) > 1e-12 || std::abs(std::abs(A(r, c).real()) - 1.0) > 1e-12)
                        throw StructureViolation("extract_W: group-1 weight not a +-1 diagonal");
                } else if (std::abs(A(r, c)) > 1e-12) {
                    throw StructureViolation("extract_W: group-1 weight not diagonal");
                }
            }
        for (int j = 0; j < gsz; ++j) {
            if (std::abs(A(2 * j, 2 * j) - A(2 * j + 1, 2 * j + 1)) > 1e-12)
                throw StructureViolation("extract_W: diagonal entries not paired");
            W(j, i) = std::sqrt(2.0 / n) * A(2 * j, 2 * j).real();
        }
    }
    return W;
}

RotationPair rotation_pair(int n_t) {
    LinearDispersionCode code;
    switch (n_t) {
        case 2: code = build_rate1_4group(1); break;
        case 4: code = build_rate1_4group(2); break;
        case 8: code = build_rate1_4group(3); break;
        default:
            throw UnsupportedSize("rotation_pair: tabulated rotations cover n_t in {2,4,8}");
    }
    RotationPair rp;
    rp.W = extract_W(code);
    if (n_t == 2) {
        rp.V = RMat::Identity(1, 1);
    } else if (n_t == 4) {
        rp.V.resize(2, 2);
        rp.V << 0.8507, -0.5257, 0.5257, 0.8507;
    } else {
        rp.V.resize(4, 4);
        rp.V << -0.3664, -0.7677, 0.4231, 0.3121,   //
            -0.2264, -0.4745, -0.6846, -0.5050,     //
            -0.4745, 0.2264, -0.5050, 0.6846,       //
            -0.7677, 0.3664, 0.3121, -0.4231;
    }
    rp.R_enc = rp.W.transpose() * rp.V;
    return rp;
}

CMat encode_layer(const RVec& y, const RotationPair& rot, const LinearDispersionCode& code) {
    const int n = code.n_t;
    const int gsz = code.group_size();
    if (y.size() != 2 * n)
        throw DimensionMismatch("encode_layer: expected 2*n_t PAM values");
    if (rot.R_enc.rows() != gsz)
        throw DimensionMismatch("encode_layer: rotation size mismatch");
    CMat S = CMat::Zero(n, n);
    for (int p = 0; p < 4; ++p) {
        const RVec yp = y.segment(p * gsz, gsz);
        const RVec sp = rot.R_enc * yp;
        for (int i = 0; i < gsz; ++i) S += sp(i) * code.weights[p * gsz + i];
    }
    return S;
}

std::vector<CMat> primed_weights(const LinearDispersionCode& code, const RotationPair& rot) {
    const int n = code.n_t;
    const int gsz = code.group_size();
    std::vector<CMat> out;
    out.reserve(code.weights.size());
    for (int layer = 0; layer < code.n_layers; ++layer) {
        const int base = layer * 2 * n;
        for (int p = 0; p < 4; ++p) {
            for (int i = 0; i < gsz; ++i) {
                CMat Ap = CMat::Zero(n, n);
                for (int j = 0; j < gsz; ++j)
                    Ap += rot.R_enc(j, i) * code.weights[base + p * gsz + j];
                out.push_back(Ap);
            }
        }
    }
    return out;
}

double min_determinant_factorized(const LinearDispersionCode& code, const RotationPair& rot,
                                  const Constellation& pam) {
    const int gsz = code.group_size();
    const std::vector<double> diffs = pam.difference_set();
    const double amp = std::sqrt(code.n_t / 2.0);
    double best = -1.0;
    const auto total = static_cast<std::uint64_t>(std::pow(diffs.size(), gsz));
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t m = it;
        bool all_zero = true;
        RVec dy(gsz);
        for (int i = 0; i < gsz; ++i) {
            dy(i) = diffs[m % diffs.size()];
            m /= diffs.size();
            if (dy(i) != 0.0) all_zero = false;
        }
        if (all_zero) continue;
        const RVec x = rot.V * dy;
        double prod = 1.0;
        for (int j = 0; j < gsz; ++j) {
            const double t = amp * x(j);
            prod *= t * t * t * t;
        }
        if (best < 0.0 || prod < best) best = prod;
    }
    return best;
}

double min_determinant_brute(const std::vector<CMat>& weights, double scale,
                             const Constellation& pam, ExecPolicy policy) {
    const int two_k = static_cast<int>(weights.size());
    const std::vector<double> diffs = pam.difference_set();
    const double ds = static_cast<double>(diffs.size());
    const double combos = std::pow(ds, two_k);
    if (combos > static_cast<double>(1 << 24))
        throw SearchTooLarge("min_determinant_brute: difference lattice too large");
    const auto total = static_cast<std::int64_t>(combos);
    const int n = static_cast<int>(weights[0].rows());

    double best = std::numeric_limits<double>::infinity();
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for reduction(min : best) schedule(static) \
    if (policy == ExecPolicy::Parallel)
#endif
    for (std::int64_t it = 1; it < total; ++it) {
        std::int64_t m = it;
        CMat D = CMat::Zero(n, n);
        for (int i = 0; i < two_k; ++i) {
            const double c = diffs[static_cast<std::size_t>(m % diffs.size())];
            m /= static_cast<std::int64_t>(diffs.size());
            if (c != 0.0) D += c * weights[i];
        }
        D *= scale;
        const double v = std::abs(det_complex(CMat(D * D.adjoint())));
        best = std::min(best, v);
    }
    return best;
}

double min_determinant(const LinearDispersionCode& code, const RotationPair& rot,
                       const Constellation& pam) {
    if (pam.pam_levels > 4)
        throw SearchTooLarge("min_determinant: PAM alphabet capped at 4 levels");
    if (code.n_t > 8)
        throw SearchTooLarge("min_determinant: n_t capped at 8");
    if (code.n_layers != 1)
        throw StructureViolation("min_determinant: factorized search applies to the rate-1 code");
    const double fact = min_determinant_factorized(code, rot, pam);
    if (code.n_t <= 4) {
        const double brute =
            min_determinant_brute(primed_weights(code, rot), code.codebook_scale, pam);
        if (std::abs(brute - fact) > 1e-9 * std::max(1.0, std::abs(fact)))
            throw std::logic_error("min_determinant: dual search paths disagree");
    }
    return fact;
}

} // namespace silverforge
