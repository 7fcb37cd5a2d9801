#include "silverforge/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace silverforge {

namespace {

constexpr double kTieWindow = 1e-12;

bool lex_less(const RVec& a, const RVec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

// accept `cand` when strictly better than `best`, or lex-smaller within the
// tie window; shared by every decoder so oracle-equality tests see identical
// tie handling
void consider(double m, const RVec& s, double& best, RVec& best_s) {
    if (m < best - kTieWindow) {
        best = m;
        best_s = s;
    } else if (m <= best + kTieWindow && (best_s.size() == 0 || lex_less(s, best_s))) {
        best = std::min(best, m);
        best_s = s;
    }
}

// Schnorr-Euchner depth-first enumeration over columns [lo, hi) of R, visiting
// per-level candidates in increasing partial-distance order. `on_leaf` is
// called with the partial distance accumulated over the enumerated levels;
// it must fold in any remaining cost and update `best` itself. Pruning uses
// `best` + tie window, valid because the remaining cost is nonnegative.
template <typename LeafFn>
long long se_enumerate(const RVec& y, const RMat& R, const Constellation& cons, double c, int lo,
                       int hi, RVec& s, double& best, LeafFn&& on_leaf) {
    const int width = hi - lo;
    if (width == 0) { // nothing to enumerate: single empty hypothesis
        on_leaf(0.0);
        return 0;
    }
    const auto& pts = cons.pam_points;
    const int L = static_cast<int>(pts.size());
    std::vector<std::vector<std::pair<double, double>>> cand(width);
    std::vector<int> pos(width, 0);
    std::vector<double> pd(width + 1, 0.0); // pd[i-lo+1] = dist of levels > i
    long long leaves = 0;

    auto enter = [&](int lvl) {
        double b = y(lvl);
        for (int j = lvl + 1; j < hi; ++j) b -= c * R(lvl, j) * s(j);
        auto& cv = cand[lvl - lo];
        cv.clear();
        for (int q = 0; q < L; ++q) {
            const double d = b - c * R(lvl, lvl) * pts[q];
            cv.emplace_back(d * d, pts[q]);
        }
        std::sort(cv.begin(), cv.end());
        pos[lvl - lo] = 0;
    };

    int lvl = hi - 1;
    enter(lvl);
    while (true) {
        const int li = lvl - lo;
        if (pos[li] < L) {
            const auto [d, v] = cand[li][pos[li]++];
            const double npd = pd[li + 1] + d;
            if (npd > best + kTieWindow) { // sorted: remaining candidates worse
                pos[li] = L;
                continue;
            }
            s(lvl) = v;
            if (lvl == lo) {
                ++leaves;
                on_leaf(npd);
            } else {
                pd[li] = npd;
                --lvl;
                enter(lvl);
            }
        } else {
            ++lvl;
            if (lvl == hi) break;
        }
    }
    return leaves;
}

} // namespace

DecoderContext make_decoder_context(const LinearDispersionCode& code, const RotationPair& rot) {
    DecoderContext ctx;
    ctx.code = code;
    ctx.code.weights = primed_weights(code, rot);
    ctx.gen = assemble_generator(ctx.code);
    return ctx;
}

CMat encode_codeword(const DecoderContext& ctx, const RVec& y) {
    const auto& code = ctx.code;
    if (y.size() != static_cast<int>(code.weights.size()))
        throw DimensionMismatch("encode_codeword: symbol count != weight count");
    CMat S = CMat::Zero(code.n_t, code.T);
    for (int i = 0; i < y.size(); ++i) S += y(i) * code.weights[i];
    return S * code.codebook_scale;
}

DecodeResult brute_force_ml(const CMat& Y, const ChannelInstance& ch, const DecoderContext& ctx,
                            const Constellation& cons) {
    const int two_k = static_cast<int>(ctx.code.weights.size());
    const double hyp = std::pow(static_cast<double>(cons.M), ctx.code.k);
    if (hyp > static_cast<double>(1 << 20))
        throw SearchTooLarge("brute_force_ml: hypothesis count above 2^20");

    const RMat heq = equivalent_channel(ch, ctx.gen);
    const double c = std::sqrt(ch.snr / ctx.code.n_t);
    const RMat A = c * heq;
    const RVec y = tilde_vec_mat(Y);
    const auto& pts = cons.pam_points;
    const int L = static_cast<int>(pts.size());

    std::vector<int> idx(two_k, 0);
    RVec s = RVec::Constant(two_k, pts[0]);
    RVec r = y - A * s;

    double best = std::numeric_limits<double>::infinity();
    RVec best_s;
    long long count = 0;
    while (true) {
        ++count;
        consider(r.squaredNorm(), s, best, best_s);
        // odometer: last coordinate fastest => lexicographic ascending
        int i = two_k - 1;
        while (i >= 0 && idx[i] == L - 1) {
            r += A.col(i) * (pts[idx[i]] - pts[0]);
            idx[i] = 0;
            s(i) = pts[0];
            --i;
        }
        if (i < 0) break;
        r -= A.col(i) * (pts[idx[i] + 1] - pts[idx[i]]);
        ++idx[i];
        s(i) = pts[idx[i]];
    }

    DecodeResult res;
    res.symbols = best_s;
    res.metric = best;
    res.nodes_visited = count;
    return res;
}

DecodeResult sphere_decode(const RVec& y_prime, const RMat& R, const Constellation& cons,
                           double snr, int n_t) {
    const int n = static_cast<int>(R.cols());
    if (y_prime.size() != n || R.rows() != n)
        throw DimensionMismatch("sphere_decode: R must be square and match y_prime");
    const double c = std::sqrt(snr / n_t);

    RVec s = RVec::Zero(n);
    double best = std::numeric_limits<double>::infinity();
    RVec best_s;
    DecodeResult res;
    res.nodes_visited = se_enumerate(y_prime, R, cons, c, 0, n, s,
                                     best, [&](double pd) { consider(pd, s, best, best_s); });
    res.symbols = best_s;
    res.metric = best;
    return res;
}

DecodeResult conditional_group_decode(const RVec& y_prime, const RMat& R,
                                      const DecoderContext& ctx, const Constellation& cons,
                                      double snr) {
    const auto& code = ctx.code;
    const int two_k = static_cast<int>(code.weights.size());
    const int head_n = 2 * code.n_t;
    const int gsz = code.group_size();
    if (y_prime.size() != two_k || R.cols() != two_k || R.rows() != two_k)
        throw DimensionMismatch("conditional_group_decode: R must be 2k x 2k");

    // mandated zeros: cross-group entries of the head diagonal block
    double leak = 0.0;
    for (int r = 0; r < head_n; ++r)
        for (int col = r + 1; col < head_n; ++col)
            if (r / gsz != col / gsz) leak = std::max(leak, std::abs(R(r, col)));
    if (leak > 1e-9)
        throw StructureViolation("conditional_group_decode: head block couples groups, leak " +
                                 std::to_string(leak));

    const double c = std::sqrt(snr / code.n_t);
    const auto& pts = cons.pam_points;
    const int L = static_cast<int>(pts.size());

    double best = std::numeric_limits<double>::infinity();
    RVec best_s;
    long long group_nodes = 0;
    RVec s = RVec::Zero(two_k);
    RVec head(head_n);

    auto on_tail_leaf = [&](double pd_tail) {
        // head target with the tail contribution removed
        RVec yh = y_prime.head(head_n);
        for (int r = 0; r < head_n; ++r)
            for (int j = head_n; j < two_k; ++j) yh(r) -= c * R(r, j) * s(j);

        double total = pd_tail;
        for (int g = 0; g < 4 && total <= best + kTieWindow; ++g) {
            const int base = g * gsz;
            double gbest = std::numeric_limits<double>::infinity();
            // enumerate trailing gsz-1 coordinates lexicographically; the
            // first coordinate of the group falls out by quantization
            std::vector<int> idx(gsz, 0);
            while (true) {
                ++group_nodes;
                double d = 0.0;
                for (int row = gsz - 1; row >= 1; --row) {
                    double acc = yh(base + row);
                    for (int col = row; col < gsz; ++col)
                        acc -= c * R(base + row, base + col) * pts[idx[col]];
                    d += acc * acc;
                }
                double b0 = yh(base);
                for (int col = 1; col < gsz; ++col)
                    b0 -= c * R(base, base + col) * pts[idx[col]];
                const double q = cons.quantize(b0 / (c * R(base, base)));
                const double rd = b0 - c * R(base, base) * q;
                d += rd * rd;
                if (d < gbest) {
                    gbest = d;
                    head(base) = q;
                    for (int col = 1; col < gsz; ++col) head(base + col) = pts[idx[col]];
                }
                int i = gsz - 1;
                while (i >= 1 && idx[i] == L - 1) idx[i--] = 0;
                if (i < 1) break;
                ++idx[i];
            }
            total += gbest;
        }
        if (total <= best + kTieWindow) {
            RVec full = s;
            full.head(head_n) = head;
            consider(total, full, best, best_s);
        }
    };

    long long tail_leaves =
        se_enumerate(y_prime, R, cons, c, head_n, two_k, s, best, on_tail_leaf);

    DecodeResult res;
    res.symbols = best_s;
    // exact metric under the full R, including sub-tolerance leak entries
    RVec resid = y_prime - c * (R * best_s.matrix());
    res.metric = resid.squaredNorm();
    res.nodes_visited = tail_leaves + group_nodes;
    return res;
}

RStructureReport r_structure_report(const DecoderContext& ctx, int n_r, int trials, Prng rng) {
    const auto& code = ctx.code;
    RStructureReport rep;
    rep.n_layers = code.n_layers;
    rep.group_size = code.group_size();
    rep.t_is_upper_triangular = true;
    const int bn = 2 * code.n_t;
    const int gsz = code.group_size();

    int draw = 0;
    for (int t = 0; t < trials; ++t) {
        QrResult qr;
        while (true) {
            Prng sub = rng.substream(draw++);
            const ChannelInstance ch = sample_channel(code.n_t, n_r, 1.0, sub);
            try {
                qr = qr_decompose(equivalent_channel(ch, ctx.gen));
                break;
            } catch (const RankDeficient&) {
                ++rep.resampled; // measure-zero draw: replace and count
            }
        }
        for (int layer = 0; layer < code.n_layers; ++layer) {
            const int off = layer * bn;
            for (int r = 0; r < bn; ++r)
                for (int c = r + 1; c < bn; ++c)
                    if (r / gsz != c / gsz)
                        rep.max_leak = std::max(rep.max_leak, std::abs(qr.R(off + r, off + c)));
        }
        for (int r = 0; r < qr.R.rows(); ++r)
            for (int c = 0; c < r && c < qr.R.cols(); ++c)
                if (qr.R(r, c) != 0.0) rep.t_is_upper_triangular = false;
    }
    rep.d_is_block_diagonal = rep.max_leak <= 1e-9;
    return rep;
}

} // namespace silverforge
