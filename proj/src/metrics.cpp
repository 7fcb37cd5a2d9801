#include "silverforge/metrics.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace silverforge {

namespace {

double logdet_hermitian(const CMat& M) { // M Hermitian positive definite
    Eigen::LLT<CMat> llt(M);
    double acc = 0.0;
    for (int i = 0; i < M.rows(); ++i) acc += std::log(llt.matrixLLT()(i, i).real());
    return 2.0 * acc;
}

double logdet_spd(const RMat& M) {
    Eigen::LLT<RMat> llt(M);
    double acc = 0.0;
    for (int i = 0; i < M.rows(); ++i) acc += std::log(llt.matrixLLT()(i, i));
    return 2.0 * acc;
}

// natural-log integrands for one channel draw
PairedMiSample evaluate_draw(const CMat& H, const GeneratorMatrix* gen, double snr, int n_t) {
    PairedMiSample out;
    const int n_r = static_cast<int>(H.rows());
    const double c = snr / n_t;
    const CMat gram = CMat::Identity(n_r, n_r) + c * H * H.adjoint();
    out.capacity = logdet_hermitian(gram);
    if (gen != nullptr) {
        const int T = static_cast<int>(gen->G.rows()) / (2 * n_t);
        ChannelInstance ch;
        ch.H = H;
        ch.snr = snr;
        const RMat heq = equivalent_channel(ch, *gen);
        const RMat g2 =
            RMat::Identity(heq.cols(), heq.cols()) + c * heq.transpose() * heq;
        out.mi = logdet_spd(g2) / (2.0 * T);
    }
    return out;
}

CapacityEstimate reduce(const std::vector<double>& vals, double snr) {
    CapacityEstimate est;
    est.trials = static_cast<long long>(vals.size());
    est.snr_db = 10.0 * std::log10(snr);
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max<double>(1.0, static_cast<double>(vals.size() - 1));
    est.mean = mean;
    est.std_error = std::sqrt(var / static_cast<double>(vals.size()));
    return est;
}

} // namespace

std::vector<PairedMiSample> paired_capacity_mi(const GeneratorMatrix& gen, int n_t, int n_r,
                                               double snr, long long trials, const Prng& rng) {
    std::vector<PairedMiSample> out(static_cast<std::size_t>(trials));
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < trials; ++t) {
        Prng sub = rng.substream(static_cast<std::uint64_t>(t));
        const ChannelInstance ch = sample_channel(n_t, n_r, snr, sub);
        out[static_cast<std::size_t>(t)] = evaluate_draw(ch.H, &gen, snr, n_t);
    }
    const double to_bits = 1.0 / std::log(2.0);
    for (auto& s : out) {
        s.capacity *= to_bits;
        s.mi *= to_bits;
    }
    return out;
}

CapacityEstimate ergodic_capacity_mc(int n_t, int n_r, double snr, long long trials,
                                     const Prng& rng) {
    std::vector<double> vals(static_cast<std::size_t>(trials));
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < trials; ++t) {
        Prng sub = rng.substream(static_cast<std::uint64_t>(t));
        const ChannelInstance ch = sample_channel(n_t, n_r, snr, sub);
        vals[static_cast<std::size_t>(t)] =
            evaluate_draw(ch.H, nullptr, snr, n_t).capacity / std::log(2.0);
    }
    return reduce(vals, snr);
}

CapacityEstimate stbc_mutual_info_mc(const GeneratorMatrix& gen, int n_t, int n_r, double snr,
                                     long long trials, const Prng& rng) {
    std::vector<double> vals(static_cast<std::size_t>(trials));
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < trials; ++t) {
        Prng sub = rng.substream(static_cast<std::uint64_t>(t));
        const ChannelInstance ch = sample_channel(n_t, n_r, snr, sub);
        vals[static_cast<std::size_t>(t)] =
            evaluate_draw(ch.H, &gen, snr, n_t).mi / std::log(2.0);
    }
    return reduce(vals, snr);
}

double expansion_I1(const LinearDispersionCode& code, int n_r) {
    double power = 0.0;
    for (const CMat& A : code.weights) power += (A * A.adjoint()).real().trace();
    power *= code.codebook_scale * code.codebook_scale;
    return n_r * power / (2.0 * code.T * code.n_t);
}

double expansion_I2(const LinearDispersionCode& code, int n_r) {
    const int two_k = static_cast<int>(code.weights.size());
    const double s2 = code.codebook_scale * code.codebook_scale;
    double acc = 0.0;
    for (int i = 0; i < two_k; ++i)
        for (int j = 0; j < two_k; ++j) {
            const CMat S = s2 * (code.weights[i] * code.weights[j].adjoint() +
                                 code.weights[j] * code.weights[i].adjoint());
            const cplx tr2 = (S * S).trace();
            const cplx tr = S.trace();
            acc += tr2.real() + n_r * tr.real() * tr.real();
        }
    const double nt = code.n_t;
    return -n_r / (16.0 * code.T * nt * nt) * acc;
}

ExpansionCoefficients expansion_coefficients(const LinearDispersionCode& code, int n_r) {
    ExpansionCoefficients out;
    out.I1 = expansion_I1(code, n_r);
    out.I2 = expansion_I2(code, n_r);
    out.C1 = n_r;
    out.C2 = -static_cast<double>(n_r) * (n_r + code.n_t) / (2.0 * code.n_t);
    return out;
}

double expansion_mc_fit(const GeneratorMatrix& gen, int n_t, int n_r, long long trials,
                        const Prng& rng) {
    const double grid[3] = {0.005, 0.01, 0.02};
    std::vector<double> vals(static_cast<std::size_t>(trials) * 3);
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < trials; ++t) {
        Prng sub = rng.substream(static_cast<std::uint64_t>(t));
        const ChannelInstance ch = sample_channel(n_t, n_r, 1.0, sub);
        for (int p = 0; p < 3; ++p)
            vals[static_cast<std::size_t>(t) * 3 + p] = evaluate_draw(ch.H, &gen, grid[p], n_t).mi;
    }
    double mean[3] = {0.0, 0.0, 0.0};
    for (long long t = 0; t < trials; ++t)
        for (int p = 0; p < 3; ++p) mean[p] += vals[static_cast<std::size_t>(t) * 3 + p];
    for (double& m : mean) m /= static_cast<double>(trials);

    // least squares for mi(rho) = a rho + b rho^2 over the 3 grid points
    double s22 = 0.0, s23 = 0.0, s33 = 0.0, r1 = 0.0, r2 = 0.0;
    for (int p = 0; p < 3; ++p) {
        const double x = grid[p];
        s22 += x * x;
        s23 += x * x * x;
        s33 += x * x * x * x;
        r1 += x * mean[p];
        r2 += x * x * mean[p];
    }
    const double det = s22 * s33 - s23 * s23;
    return (s22 * r2 - s23 * r1) / det; // b
}

} // namespace silverforge
