#include "silverforge/silver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

namespace silverforge {

namespace {

const cplx kJ{0.0, 1.0};

} // namespace

CMat silver_u_matrix() {
    CMat U(2, 2);
    const double r7 = std::sqrt(7.0);
    U << cplx{1.0, 1.0} / r7, cplx{1.0, 2.0} / r7, //
        cplx{-1.0, 2.0} / r7, cplx{1.0, -1.0} / r7;
    return U;
}

CMat layer_multiplier_matrix(const LayerMultiplier& m, const Frame& f) {
    const int n = f.n();
    CMat M = CMat::Identity(n, n);
    for (int idx : m.frame_indices) {
        if (idx < 1 || idx > static_cast<int>(f.matrices.size()))
            throw DimensionMismatch("layer_multiplier_matrix: frame index out of range");
        M = M * f.matrices[idx - 1];
    }
    if (m.j_flag) M *= kJ;
    M *= m.phase;
    return M;
}

LayerPlan default_layer_plan(int n_t, int n_layers) {
    if (n_t != 2 && n_t != 4 && n_t != 8 && n_t != 16)
        throw UnsupportedSize("default_layer_plan: n_t must be one of {2,4,8,16}");
    if (n_layers < 1 || n_layers > n_t)
        throw ConfigInvalid("default_layer_plan: need 1 <= n_layers <= n_t");

    LayerPlan plan;
    plan.n_t = n_t;
    plan.n_layers = n_layers;

    if (n_t == 2) {
        plan.multipliers.push_back(LayerMultiplier{});
        if (n_layers == 2) {
            LayerMultiplier u;
            u.j_flag = true;
            u.use_u = true;
            plan.multipliers.push_back(u);
        }
        return plan;
    }

    // first-half multipliers: products of {F4, F6, ..., F_{2a}}, size-major
    // then lexicographic; exactly n_t/2 of them
    int a = 0;
    while ((1 << a) < n_t) ++a;
    std::vector<int> evens;
    for (int k = 2; k <= a; ++k) evens.push_back(2 * k);

    std::vector<std::vector<int>> subsets;
    const int m_count = static_cast<int>(evens.size());
    for (int mask = 0; mask < (1 << m_count); ++mask) {
        std::vector<int> s;
        for (int b = 0; b < m_count; ++b)
            if ((mask >> b) & 1) s.push_back(evens[b]);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });

    const cplx even_phase = std::exp(kJ * (M_PI / 4.0));
    for (int layer = 0; layer < n_layers; ++layer) {
        LayerMultiplier m;
        m.frame_indices = subsets[layer % (n_t / 2)];
        m.j_flag = layer >= n_t / 2;
        if (layer % 2 == 1) m.phase = even_phase;
        plan.multipliers.push_back(std::move(m));
    }
    return plan;
}

LinearDispersionCode extend_layers(const LinearDispersionCode& base, const LayerPlan& plan,
                                   const Frame& frame) {
    if (base.n_layers != 1)
        throw ConfigInvalid("extend_layers: base must be the single-layer rate-1 code");
    if (plan.n_t != base.n_t || frame.n() != base.n_t)
        throw DimensionMismatch("extend_layers: plan/frame/base sizes disagree");
    if (plan.n_layers < 1 || plan.n_layers > plan.n_t ||
        static_cast<int>(plan.multipliers.size()) != plan.n_layers)
        throw ConfigInvalid("extend_layers: plan has wrong multiplier count");

    const CMat U = silver_u_matrix();
    LinearDispersionCode code;
    code.n_t = base.n_t;
    code.T = base.T;
    code.n_layers = plan.n_layers;
    code.k = base.k * plan.n_layers;
    code.codebook_scale = 1.0 / std::sqrt(static_cast<double>(plan.n_layers));

    for (int layer = 0; layer < plan.n_layers; ++layer) {
        const LayerMultiplier& lm = plan.multipliers[layer];
        const CMat M = layer_multiplier_matrix(lm, frame);
        for (std::size_t i = 0; i < base.weights.size(); ++i) {
            CMat B = M * base.weights[i];
            if (lm.use_u) {
                if (code.n_t != 2)
                    throw ConfigInvalid("extend_layers: U post-multiplier is 2-Tx only");
                B = B * U;
            }
            code.weights.push_back(std::move(B));
            code.layer_tags.push_back(layer);
        }
        const int gsz = base.group_size();
        const int base_off = layer * 2 * base.n_t;
        for (int g = 0; g < 4; ++g) {
            std::vector<int> grp;
            for (int i = 0; i < gsz; ++i) grp.push_back(base_off + g * gsz + i);
            code.groups.push_back(std::move(grp));
        }
    }

    // disjointness / independence: stacked real vectors must have full rank
    const int two_k = static_cast<int>(code.weights.size());
    RMat stacked(2 * code.T * code.n_t, two_k);
    for (int i = 0; i < two_k; ++i) stacked.col(i) = tilde_vec_mat(code.weights[i]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
    qr.setThreshold(1e-9);
    if (qr.rank() != two_k)
        throw DependentLayers("extend_layers: layer multipliers give dependent weights (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(two_k) + ")");
    return code;
}

LinearDispersionCode build_silver(int n_t, int n_layers) {
    int a = 0;
    while ((1 << a) < n_t) ++a;
    if ((1 << a) != n_t)
        throw UnsupportedSize("build_silver: n_t must be a power of two in {2,4,8,16}");
    const LinearDispersionCode base = build_rate1_4group(a);
    const LayerPlan plan = default_layer_plan(n_t, n_layers);
    return extend_layers(base, plan, build_frame(a));
}

LinearDispersionCode build_silver2() {
    return build_silver(2, 2);
}

GeneratorMatrix assemble_generator(const LinearDispersionCode& code) {
    const int two_k = static_cast<int>(code.weights.size());
    GeneratorMatrix gen;
    gen.n_t = code.n_t;
    gen.normalization = 1.0 / std::sqrt(static_cast<double>(code.n_t));
    gen.n_layers = code.n_layers;
    gen.physical_gain = std::sqrt(static_cast<double>(code.n_t) / code.n_layers);
    gen.G.resize(2 * code.T * code.n_t, two_k);
    for (int i = 0; i < two_k; ++i)
        gen.G.col(i) = gen.normalization * tilde_vec_mat(code.weights[i]);
    return gen;
}

HrCensus hr_pair_census(const LinearDispersionCode& code) {
    const int two_k = static_cast<int>(code.weights.size());
    HrCensus census;
    for (int i = 0; i < two_k; ++i)
        for (int j = i + 1; j < two_k; ++j) {
            ++census.total_pairs;
            const CMat s = code.weights[i] * code.weights[j].adjoint() +
                           code.weights[j] * code.weights[i].adjoint();
            if (s.norm() <= 1e-12) ++census.zero_pairs;
        }
    return census;
}

double self_interference_trace_check(const LinearDispersionCode& code) {
    const int two_k = static_cast<int>(code.weights.size());
    double worst = 0.0;
    for (int i = 0; i < two_k; ++i)
        for (int j = i + 1; j < two_k; ++j) {
            const cplx t = (code.weights[i] * code.weights[j].adjoint() +
                            code.weights[j] * code.weights[i].adjoint())
                               .trace();
            worst = std::max(worst, std::abs(t));
        }
    return worst;
}

} // namespace silverforge
