#include "silverforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "silverforge/channel.hpp"
#include "silverforge/decoder.hpp"
#include "silverforge/metrics.hpp"

namespace silverforge {

namespace {

constexpr const char* kCsvBanner = "# silverforge v1";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

int log2_exact(int n) {
    int a = 0;
    while ((1 << a) < n) ++a;
    if ((1 << a) != n) throw ConfigInvalid("nt: must be a power of two");
    return a;
}

LinearDispersionCode build_configured_silver(const SimulationConfig& cfg, int n_layers) {
    const int a = log2_exact(cfg.nt);
    LayerPlan plan = default_layer_plan(cfg.nt, n_layers);
    if (cfg.phase_set) {
        const cplx ph = std::exp(cplx{0.0, 1.0} * (cfg.phase_deg * M_PI / 180.0));
        for (int i = 1; i < n_layers; i += 2) plan.multipliers[i].phase = ph;
    }
    return extend_layers(build_rate1_4group(a), plan, build_frame(a));
}

DecoderContext decoder_context_for(const SimulationConfig& cfg, int n_layers) {
    return make_decoder_context(build_configured_silver(cfg, n_layers), rotation_pair(cfg.nt));
}

RVec draw_symbols(const DecoderContext& ctx, const Constellation& cons, Prng& rng) {
    const int two_k = static_cast<int>(ctx.code.weights.size());
    RVec y(two_k);
    const auto L = static_cast<std::uint64_t>(cons.pam_points.size());
    for (int i = 0; i < two_k; ++i)
        y(i) = cons.pam_points[static_cast<std::size_t>(rng.next_u64() % L)];
    return y;
}

long long count_symbol_errors(const RVec& sent, const RVec& decoded) {
    long long err = 0;
    for (int m = 0; m < sent.size() / 2; ++m)
        if (sent(2 * m) != decoded(2 * m) || sent(2 * m + 1) != decoded(2 * m + 1)) ++err;
    return err;
}

} // namespace

std::vector<SerPoint> run_ser_sweep(const SimulationConfig& cfg, std::ostream& csv,
                                    std::ostream& log) {
    validate_config(cfg);
    if (!cfg.seed_set) throw ConfigInvalid("seed: required for ser sweeps");
    if (cfg.code != "silver") throw ConfigInvalid("code: ser sweep decodes silver codes only");
    if (cfg.snr_db.empty()) throw ConfigInvalid("snr_db: at least one SNR point required");

    const int n_layers = std::min(cfg.nt, cfg.nr);
    const DecoderContext ctx = decoder_context_for(cfg, n_layers);
    const Constellation cons = make_qam(cfg.M);
    const int two_k = static_cast<int>(ctx.code.weights.size());
    const int k = ctx.code.k;
    const int tail_n = two_k - 2 * cfg.nt;
    const int gsz = ctx.code.group_size();

    // worst-case conditional enumeration per trial
    const double worst = std::pow(cons.pam_levels, tail_n) * 4.0 *
                         std::pow(cons.pam_levels, gsz - 1);
    if (worst > static_cast<double>(1 << 22))
        throw ConfigInvalid("decoder: conditional hypothesis count above 2^22 per trial");

    std::vector<double> snrs = cfg.snr_db;
    std::sort(snrs.begin(), snrs.end());

    csv << kCsvBanner << '\n';
    csv << "snr_db,symbol_errors,symbols_sent,ser\n";

    std::vector<SerPoint> points;
    const long long chunk = 4096;
    for (std::size_t p = 0; p < snrs.size(); ++p) {
        const double snr = std::pow(10.0, snrs[p] / 10.0);
        const auto t0 = std::chrono::steady_clock::now();
        SerPoint pt;
        pt.snr_db = snrs[p];
        long long done = 0;
        const long long want_errors =
            cfg.target_errors > 0 ? std::max<long long>(cfg.target_errors, 100) : 0;
        while (true) {
            long long todo;
            if (want_errors > 0)
                todo = chunk;
            else
                todo = std::min(chunk, cfg.trials - done);
            if (todo <= 0) break;
            long long errs = 0;
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(+ : errs)
#endif
            for (long long t = done; t < done + todo; ++t) {
                Prng rng(cfg.seed, (static_cast<std::uint64_t>(p) << 40) |
                                       static_cast<std::uint64_t>(t));
                const RVec y = draw_symbols(ctx, cons, rng);
                const CMat S = encode_codeword(ctx, y);
                QrResult qr;
                ChannelInstance ch;
                while (true) {
                    ch = sample_channel(cfg.nt, cfg.nr, snr, rng);
                    try {
                        qr = qr_decompose(equivalent_channel(ch, ctx.gen));
                        break;
                    } catch (const RankDeficient&) { // measure-zero draw, redo
                    }
                }
                const CMat Y = transmit(S, ch, rng);
                const RVec yp = qr.Q.transpose() * tilde_vec_mat(Y);
                const DecodeResult dec = conditional_group_decode(yp, qr.R, ctx, cons, snr);
                errs += count_symbol_errors(y, dec.symbols);
            }
            pt.symbol_errors += errs;
            done += todo;
            if (want_errors > 0 && pt.symbol_errors >= want_errors) break;
        }
        pt.symbols_sent = done * k;
        pt.ser = pt.symbols_sent > 0
                     ? static_cast<double>(pt.symbol_errors) / static_cast<double>(pt.symbols_sent)
                     : 0.0;
        pt.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (done > 0)
            csv << fmt_short(pt.snr_db) << ',' << pt.symbol_errors << ',' << pt.symbols_sent << ','
                << fmt(pt.ser) << '\n';
        log << "# snr " << fmt_short(pt.snr_db) << " dB: " << done << " trials, "
            << pt.symbol_errors << " errors, wall " << fmt_short(pt.wall_time) << " s\n";
        points.push_back(pt);
    }
    return points;
}

void run_capacity_sweep(const SimulationConfig& cfg, std::ostream& csv) {
    validate_config(cfg);
    if (!cfg.seed_set) throw ConfigInvalid("seed: required for capacity sweeps");
    if (cfg.snr_db.empty()) throw ConfigInvalid("snr_db: at least one SNR point required");
    if (cfg.trials < 100) throw ConfigInvalid("trials: capacity estimates need >= 100 trials");

    GeneratorMatrix gen;
    if (cfg.code == "silver") {
        gen = assemble_generator(build_configured_silver(cfg, std::min(cfg.nt, cfg.nr)));
    } else { // uncoded: T = 1, identity generator, full rate
        gen.G = RMat::Identity(2 * cfg.nt, 2 * cfg.nt);
        gen.n_t = cfg.nt;
        gen.normalization = 1.0;
        gen.n_layers = 1;
        gen.physical_gain = 1.0;
    }

    std::vector<double> snrs = cfg.snr_db;
    std::sort(snrs.begin(), snrs.end());

    csv << kCsvBanner << '\n';
    csv << "snr_db,capacity,cap_stderr,mi,mi_stderr\n";
    for (std::size_t p = 0; p < snrs.size(); ++p) {
        const double snr = std::pow(10.0, snrs[p] / 10.0);
        const Prng base(cfg.seed, static_cast<std::uint64_t>(p) << 40);
        const auto samples = paired_capacity_mi(gen, cfg.nt, cfg.nr, snr, cfg.trials, base);
        double cm = 0.0, mm = 0.0;
        for (const auto& s : samples) {
            cm += s.capacity;
            mm += s.mi;
        }
        cm /= static_cast<double>(samples.size());
        mm /= static_cast<double>(samples.size());
        double cv = 0.0, mv = 0.0;
        for (const auto& s : samples) {
            cv += (s.capacity - cm) * (s.capacity - cm);
            mv += (s.mi - mm) * (s.mi - mm);
        }
        const double n = static_cast<double>(samples.size());
        const double cse = std::sqrt(cv / (n - 1.0) / n);
        const double mse = std::sqrt(mv / (n - 1.0) / n);
        csv << fmt_short(snrs[p]) << ',' << fmt(cm) << ',' << fmt(cse) << ',' << fmt(mm) << ','
            << fmt(mse) << '\n';
    }
}

bool run_decode_selftest(const SimulationConfig& cfg, double snr_db, std::ostream& csv,
                         std::ostream& err) {
    validate_config(cfg);
    if (!cfg.seed_set) throw ConfigInvalid("seed: required for decode-selftest");
    if (cfg.nr > cfg.nt)
        throw ConfigInvalid("nr: selftest requires nr <= nt (square equivalent channel)");
    const int n_layers = std::min(cfg.nt, cfg.nr);
    const DecoderContext ctx = decoder_context_for(cfg, n_layers);
    const Constellation cons = make_qam(cfg.M);
    if (std::pow(static_cast<double>(cfg.M), ctx.code.k) > static_cast<double>(1 << 20))
        throw ConfigInvalid("decode-selftest: brute-force hypothesis count above 2^20");

    const double snr = std::pow(10.0, snr_db / 10.0);
    const Prng base(cfg.seed);
    double worst_sd = 0.0, worst_cond = 0.0;

    csv << kCsvBanner << '\n';
    csv << "trial,metric_bf,metric_sd,metric_cond,nodes_sd,nodes_cond\n";
    for (long long t = 0; t < cfg.trials; ++t) {
        Prng rng = base.substream(static_cast<std::uint64_t>(t));
        const RVec y = draw_symbols(ctx, cons, rng);
        const CMat S = encode_codeword(ctx, y);
        QrResult qr;
        ChannelInstance ch;
        while (true) {
            ch = sample_channel(cfg.nt, cfg.nr, snr, rng);
            try {
                qr = qr_decompose(equivalent_channel(ch, ctx.gen));
                break;
            } catch (const RankDeficient&) {
            }
        }
        const CMat Y = transmit(S, ch, rng);
        const RVec yp = qr.Q.transpose() * tilde_vec_mat(Y);

        const DecodeResult bf = brute_force_ml(Y, ch, ctx, cons);
        const DecodeResult sd = sphere_decode(yp, qr.R, cons, snr, cfg.nt);
        const DecodeResult cond = conditional_group_decode(yp, qr.R, ctx, cons, snr);

        worst_sd = std::max(worst_sd, std::abs(bf.metric - sd.metric));
        worst_cond = std::max(worst_cond, std::abs(bf.metric - cond.metric));
        csv << t << ',' << fmt(bf.metric) << ',' << fmt(sd.metric) << ',' << fmt(cond.metric)
            << ',' << sd.nodes_visited << ',' << cond.nodes_visited << '\n';
    }
    const bool pass = worst_sd <= 1e-9 && worst_cond <= 1e-9;
    err << "decode-selftest: " << (pass ? "PASS" : "FAIL") << " (max |bf-sd| " << fmt_short(worst_sd)
        << ", max |bf-cond| " << fmt_short(worst_cond) << ", " << cfg.trials << " trials)\n";
    return pass;
}

bool run_verification(const SimulationConfig& cfg, const std::string& weights_path, int r_trials,
                      std::ostream& out) {
    validate_config(cfg);
    const int a = log2_exact(cfg.nt);
    const int n_layers = std::min(cfg.nt, cfg.nr);
    bool all = true;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        out << "check " << name << ": " << (ok ? "PASS" : "FAIL") << " (" << detail << ")\n";
        all = all && ok;
    };

    const Frame frame = build_frame(a);
    const FrameReport fr = verify_frame(frame);
    check("frame_algebra", fr.pass(1e-12),
          "max deviation " + fmt_short(std::max(
                                 std::max(fr.max_unitarity_dev, fr.max_anti_hermitian_dev),
                                 std::max(fr.max_anticommutator, fr.max_square_dev))));

    const LinearDispersionCode rate1 = build_rate1_4group(a);
    const GroupReport gr = verify_g_group(rate1, 4);
    check("group_relations", gr.pass(1e-12), "max deviation " + fmt_short(gr.max_dev()));

    if (cfg.nt <= 8) {
        const RotationPair rot = rotation_pair(cfg.nt);
        const RMat wtw = rot.W.transpose() * rot.W -
                         RMat::Identity(rot.W.cols(), rot.W.cols());
        check("rotation_w_orthogonal", wtw.cwiseAbs().maxCoeff() <= 1e-12,
              "||W^T W - I||_max " + fmt_short(wtw.cwiseAbs().maxCoeff()));
    } else {
        out << "check rotation_w_orthogonal: SKIP (no tabulated rotation for nt=16)\n";
    }

    const LinearDispersionCode code = build_configured_silver(cfg, n_layers);
    const GeneratorMatrix gen = assemble_generator(code);
    const RMat gram = gen.G.transpose() * gen.G -
                      RMat::Identity(gen.G.cols(), gen.G.cols());
    check("generator_orthogonality", gram.cwiseAbs().maxCoeff() <= 1e-9,
          "||G^T G - I||_max " + fmt_short(gram.cwiseAbs().maxCoeff()));

    const HrCensus census = hr_pair_census(code);
    const int gsz = code.group_size();
    const int expect = n_layers * 6 * gsz * gsz; // within-layer cross-group pairs
    check("hr_census", census.zero_pairs >= expect,
          std::to_string(census.zero_pairs) + " of " + std::to_string(census.total_pairs) +
          " pairs zero, expected >= " + std::to_string(expect));

    const double trace_max = self_interference_trace_check(code);
    check("tracelessness", trace_max <= 1e-9, "max |tr S_ij| " + fmt_short(trace_max));

    double equiv_dev = 0.0;
    for (int i = 0; i < static_cast<int>(code.weights.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(code.weights.size()); ++j) {
            const double lhs = 2.0 * cfg.nt * gen.G.col(i).dot(gen.G.col(j));
            const cplx tr = (code.weights[i] * code.weights[j].adjoint() +
                             code.weights[j] * code.weights[i].adjoint())
                                .trace();
            equiv_dev = std::max(equiv_dev, std::abs(lhs - tr.real()));
        }
    check("trace_column_equivalence", equiv_dev <= 1e-9, "max deviation " + fmt_short(equiv_dev));

    if (cfg.nt <= 8) {
        const DecoderContext ctx = make_decoder_context(code, rotation_pair(cfg.nt));
        const RStructureReport rs =
            r_structure_report(ctx, cfg.nr, r_trials, Prng(cfg.seed_set ? cfg.seed : 0x5eed));
        check("r_structure", rs.pass(1e-9),
              "leak " + fmt_short(rs.max_leak) + " over " + std::to_string(r_trials) +
              " channels");
    } else {
        out << "check r_structure: SKIP (no tabulated rotation for nt=16)\n";
    }

    if (!weights_path.empty()) {
        std::ifstream f(weights_path);
        if (!f) {
            check("weights_file_match", false, "cannot open " + weights_path);
        } else {
            bool ok = true;
            std::string detail = "all " + std::to_string(code.weights.size()) + " weights match";
            for (std::size_t i = 0; i < code.weights.size() && ok; ++i) {
                try {
                    const CMat W = read_complex_matrix(f);
                    const double dev = (W - code.weights[i]).cwiseAbs().maxCoeff();
                    if (W.rows() != code.weights[i].rows() || W.cols() != code.weights[i].cols() ||
                        dev > 1e-12) {
                        ok = false;
                        detail = "weight " + std::to_string(i) + " deviates by " + fmt_short(dev);
                    }
                } catch (const ConfigInvalid& e) {
                    ok = false;
                    detail = std::string("weight ") + std::to_string(i) + ": " + e.what();
                }
            }
            check("weights_file_match", ok, detail);
        }
    }

    out << "verification: " << (all ? "ALL PASS" : "FAILED") << '\n';
    return all;
}

namespace {

double abs_det_sq(const CMat& D) {
    if (D.rows() == 2) {
        Eigen::Matrix2cd m = D;
        return std::norm(m.determinant());
    }
    Eigen::Matrix4cd m = D;
    return std::norm(m.determinant());
}

// difference codewords of one layer: every combination of per-symbol
// differences, combined with that layer's weights (zero vector included)
std::vector<CMat> layer_difference_blocks(const std::vector<CMat>& weights,
                                          const std::vector<double>& diffs, int n) {
    const int m = static_cast<int>(weights.size());
    const auto total = static_cast<std::uint64_t>(std::pow(diffs.size(), m));
    std::vector<CMat> out;
    out.reserve(total);
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t v = it;
        CMat D = CMat::Zero(n, n);
        for (int i = 0; i < m; ++i) {
            const double d = diffs[v % diffs.size()];
            v /= diffs.size();
            if (d != 0.0) D += d * weights[i];
        }
        out.push_back(std::move(D));
    }
    return out;
}

} // namespace

void run_mindet(const SimulationConfig& cfg, int n_layers, std::ostream& out) {
    validate_config(cfg);
    const int a = log2_exact(cfg.nt);
    const Constellation pam = make_pam(static_cast<int>(std::lround(std::sqrt(cfg.M))));
    if (pam.pam_points.empty()) throw ConfigInvalid("constellation: empty alphabet");

    const LinearDispersionCode rate1 = build_rate1_4group(a);
    const RotationPair rot = rotation_pair(cfg.nt);
    const double md = min_determinant(rate1, rot, pam);
    out << "rate1_mindet " << fmt(md) << '\n';

    if (n_layers != 2) return;
    if (cfg.nt > 4)
        throw SearchTooLarge("mindet: exhaustive 2-layer sweep supported for n_t <= 4 only");
    if (cfg.M != 4)
        throw SearchTooLarge("mindet: 2-layer phase sweep pinned to 4-QAM");

    // even-layer phase sweep: layer 2 carries e^{j theta} instead of its
    // default scalar; layer-pair difference blocks precomputed once
    LayerPlan plan = default_layer_plan(cfg.nt, 2);
    plan.multipliers[1].phase = cplx{1.0, 0.0};
    const LinearDispersionCode code =
        extend_layers(rate1, plan, build_frame(a));
    const std::vector<CMat> primed = primed_weights(code, rot);
    const int per_layer = 2 * cfg.nt;
    const std::vector<CMat> w1(primed.begin(), primed.begin() + per_layer);
    const std::vector<CMat> w2(primed.begin() + per_layer, primed.end());
    const std::vector<double> diffs = pam.difference_set();
    const std::vector<CMat> D1 = layer_difference_blocks(w1, diffs, cfg.nt);
    const std::vector<CMat> D2 = layer_difference_blocks(w2, diffs, cfg.nt);
    const double scale = code.codebook_scale;

    out << kCsvBanner << '\n';
    out << "phase_deg,min_det\n";
    std::vector<std::pair<double, double>> landscape;
    for (int deg = 0; deg <= 90; deg += 15) {
        const cplx ph = std::exp(cplx{0.0, 1.0} * (deg * M_PI / 180.0));
        const auto n1 = static_cast<std::int64_t>(D1.size());
        const auto n2 = static_cast<std::int64_t>(D2.size());
        double best = std::numeric_limits<double>::infinity();
#ifdef SILVERFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
        for (std::int64_t i = 0; i < n1; ++i) {
            for (std::int64_t j = 0; j < n2; ++j) {
                if (i == 0 && j == 0) continue;
                const CMat D = scale * (D1[i] + ph * D2[j]);
                best = std::min(best, abs_det_sq(D));
            }
        }
        landscape.emplace_back(static_cast<double>(deg), best);
        out << deg << ',' << fmt(best) << '\n';
    }
    double top = -1.0;
    for (const auto& [deg, v] : landscape) top = std::max(top, v);
    out << "# argmax_deg:";
    for (const auto& [deg, v] : landscape)
        if (v >= top - 1e-9 * std::max(1.0, top)) out << ' ' << fmt_short(deg);
    out << '\n';
}

namespace {

void dump_frame(const Frame& f, std::ostream& out) {
    out << "a " << f.a << "\nn " << f.n() << '\n';
    for (std::size_t i = 0; i < f.matrices.size(); ++i) {
        out << "frame " << (i + 1) << '\n';
        write_complex_matrix(out, f.matrices[i]);
    }
}

void dump_weights(const std::vector<CMat>& w, std::ostream& out) {
    for (const CMat& m : w) write_complex_matrix(out, m);
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"silverforge: generalized silver space-time block codes on 2^a antennas"};
    app.require_subcommand(1);

    auto* c_frame = app.add_subcommand("frame", "build and verify an anticommuting matrix frame");
    int frame_a = 1;
    c_frame->add_option("--a", frame_a, "frame size parameter (n = 2^a)")->required();

    auto* c_build = app.add_subcommand("build", "emit the rate-1 4-group code weights");
    int build_nt = 2;
    c_build->add_option("--nt", build_nt, "transmit antennas {2,4,8,16}")->required();

    auto* c_silver = app.add_subcommand("silver", "construct a generalized silver code");
    SimulationConfig silver_cfg;
    c_silver->add_option("--nt", silver_cfg.nt, "transmit antennas")->required();
    c_silver->add_option("--nr", silver_cfg.nr, "receive antennas")->required();
    double silver_phase = 0.0;
    auto* silver_phase_opt =
        c_silver->add_option("--phase", silver_phase, "even-layer phase override, degrees");
    std::string silver_wout;
    c_silver->add_option("--weights-out", silver_wout, "write the weight matrices to a file");

    auto* c_selftest =
        app.add_subcommand("decode-selftest", "decoder oracle-equivalence self test");
    SimulationConfig st_cfg;
    c_selftest->add_option("--nt", st_cfg.nt)->required();
    c_selftest->add_option("--nr", st_cfg.nr)->required();
    c_selftest->add_option("--trials", st_cfg.trials)->required();
    c_selftest->add_option("--seed", st_cfg.seed)->required();
    c_selftest->add_option("--M", st_cfg.M, "QAM size");
    double st_snr_db = 10.0;
    c_selftest->add_option("--snr-db", st_snr_db);

    auto* c_capacity = app.add_subcommand("capacity", "paired capacity / mutual info sweep");
    SimulationConfig cap_cfg;
    std::string cap_config_path;
    c_capacity->add_option("--config", cap_config_path, "config file");
    int cap_nt_v = 0, cap_nr_v = 0;
    auto* cap_nt = c_capacity->add_option("--nt", cap_nt_v);
    auto* cap_nr = c_capacity->add_option("--nr", cap_nr_v);
    std::string cap_code_v;
    auto* cap_code = c_capacity->add_option("--code", cap_code_v, "silver|none");
    std::vector<double> cap_snrs;
    auto* cap_snr = c_capacity->add_option("--snr-db", cap_snrs)->expected(-1);
    long long cap_trials_v = 0;
    auto* cap_trials = c_capacity->add_option("--trials", cap_trials_v);
    std::uint64_t cap_seed = 0;
    auto* cap_seed_opt = c_capacity->add_option("--seed", cap_seed);

    auto* c_ser = app.add_subcommand("ser", "symbol-error-rate sweep");
    SimulationConfig ser_cfg;
    std::string ser_config_path;
    c_ser->add_option("--config", ser_config_path, "config file");
    int ser_nt_v = 0, ser_nr_v = 0, ser_m_v = 0;
    auto* ser_nt = c_ser->add_option("--nt", ser_nt_v);
    auto* ser_nr = c_ser->add_option("--nr", ser_nr_v);
    auto* ser_m = c_ser->add_option("--M", ser_m_v);
    std::vector<double> ser_snrs;
    auto* ser_snr = c_ser->add_option("--snr-db", ser_snrs)->expected(-1);
    long long ser_trials_v = 0;
    auto* ser_trials = c_ser->add_option("--trials", ser_trials_v);
    long long ser_target = 0;
    auto* ser_target_opt = c_ser->add_option("--target-errors", ser_target);
    std::uint64_t ser_seed = 0;
    auto* ser_seed_opt = c_ser->add_option("--seed", ser_seed);
    std::string ser_out;
    c_ser->add_option("--out", ser_out, "CSV path (default stdout)");

    auto* c_mindet = app.add_subcommand("mindet", "minimum determinant and phase sweep");
    SimulationConfig md_cfg;
    c_mindet->add_option("--nt", md_cfg.nt)->required();
    int md_layers = 1;
    c_mindet->add_option("--layers", md_layers);
    c_mindet->add_option("--M", md_cfg.M);

    auto* c_verify = app.add_subcommand("verify", "bundled construction checks");
    SimulationConfig ver_cfg;
    c_verify->add_option("--nt", ver_cfg.nt)->required();
    c_verify->add_option("--nr", ver_cfg.nr)->required();
    std::uint64_t ver_seed = 0x5eed;
    auto* ver_seed_opt = c_verify->add_option("--seed", ver_seed);
    int ver_trials = 100;
    c_verify->add_option("--trials", ver_trials, "channels for the R-structure check");
    std::string ver_weights;
    c_verify->add_option("--weights", ver_weights, "weight dump to cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_frame) {
            const Frame f = build_frame(frame_a);
            const FrameReport rep = verify_frame(f);
            std::cout << "unitarity_dev " << fmt(rep.max_unitarity_dev) << '\n'
                      << "anti_hermitian_dev " << fmt(rep.max_anti_hermitian_dev) << '\n'
                      << "anticommutator_dev " << fmt(rep.max_anticommutator) << '\n'
                      << "square_dev " << fmt(rep.max_square_dev) << '\n'
                      << "frame_pass " << (rep.pass(1e-12) ? 1 : 0) << '\n';
            dump_frame(f, std::cout);
            return rep.pass(1e-12) ? 0 : 1;
        }
        if (*c_build) {
            const int a = log2_exact(build_nt);
            const LinearDispersionCode code = build_rate1_4group(a);
            dump_weights(code.weights, std::cout);
            for (std::size_t g = 0; g < code.groups.size(); ++g) {
                std::cout << "group " << (g + 1) << ':';
                for (int idx : code.groups[g]) std::cout << ' ' << idx;
                std::cout << '\n';
            }
            return 0;
        }
        if (*c_silver) {
            silver_cfg.phase_set = silver_phase_opt->count() > 0;
            silver_cfg.phase_deg = silver_phase;
            validate_config(silver_cfg);
            const int n_layers = std::min(silver_cfg.nt, silver_cfg.nr);
            const LinearDispersionCode code = build_configured_silver(silver_cfg, n_layers);
            const GeneratorMatrix gen = assemble_generator(code);
            const HrCensus census = hr_pair_census(code);
            const RMat gram = gen.G.transpose() * gen.G -
                              RMat::Identity(gen.G.cols(), gen.G.cols());
            std::cout << "nt " << code.n_t << "\nnr " << silver_cfg.nr << "\nn_layers "
                      << code.n_layers << "\nk " << code.k << "\ncodebook_scale "
                      << fmt(code.codebook_scale) << '\n';
            std::cout << "layer_tags";
            for (int t : code.layer_tags) std::cout << ' ' << t;
            std::cout << '\n';
            for (std::size_t i = 0; i < code.weights.size(); ++i) {
                std::cout << "weight " << i << " layer " << code.layer_tags[i] << '\n';
                write_complex_matrix(std::cout, code.weights[i]);
            }
            std::cout << "generator\n";
            write_real_matrix(std::cout, gen.G);
            std::cout << "census_zero_pairs " << census.zero_pairs << "\ncensus_total_pairs "
                      << census.total_pairs << '\n';
            std::cout << "tracelessness_max " << fmt(self_interference_trace_check(code)) << '\n';
            std::cout << "generator_gram_dev " << fmt(gram.cwiseAbs().maxCoeff()) << '\n';
            if (!silver_wout.empty()) {
                std::ofstream wf(silver_wout);
                if (!wf) throw ConfigInvalid("cannot open for writing: " + silver_wout);
                dump_weights(code.weights, wf);
            }
            return 0;
        }
        if (*c_selftest) {
            st_cfg.seed_set = true;
            return run_decode_selftest(st_cfg, st_snr_db, std::cout, std::cerr) ? 0 : 1;
        }
        if (*c_capacity) {
            if (!cap_config_path.empty()) cap_cfg = parse_config_file(cap_config_path);
            if (cap_nt->count()) cap_cfg.nt = cap_nt_v;
            if (cap_nr->count()) cap_cfg.nr = cap_nr_v;
            if (cap_code->count()) cap_cfg.code = cap_code_v;
            if (cap_snr->count()) cap_cfg.snr_db = cap_snrs;
            if (cap_trials->count()) cap_cfg.trials = cap_trials_v;
            if (cap_seed_opt->count()) {
                cap_cfg.seed = cap_seed;
                cap_cfg.seed_set = true;
            }
            run_capacity_sweep(cap_cfg, std::cout);
            return 0;
        }
        if (*c_ser) {
            if (!ser_config_path.empty()) ser_cfg = parse_config_file(ser_config_path);
            if (ser_nt->count()) ser_cfg.nt = ser_nt_v;
            if (ser_nr->count()) ser_cfg.nr = ser_nr_v;
            if (ser_m->count()) ser_cfg.M = ser_m_v;
            if (ser_snr->count()) ser_cfg.snr_db = ser_snrs;
            if (ser_trials->count()) ser_cfg.trials = ser_trials_v;
            if (ser_target_opt->count()) ser_cfg.target_errors = ser_target;
            if (ser_seed_opt->count()) {
                ser_cfg.seed = ser_seed;
                ser_cfg.seed_set = true;
            }
            if (!ser_out.empty()) {
                std::ofstream f(ser_out);
                if (!f) throw ConfigInvalid("cannot open for writing: " + ser_out);
                run_ser_sweep(ser_cfg, f, std::cerr);
            } else {
                run_ser_sweep(ser_cfg, std::cout, std::cerr);
            }
            return 0;
        }
        if (*c_mindet) {
            run_mindet(md_cfg, md_layers, std::cout);
            return 0;
        }
        if (*c_verify) {
            (void)ver_seed_opt;
            ver_cfg.seed = ver_seed;
            ver_cfg.seed_set = true;
            return run_verification(ver_cfg, ver_weights, ver_trials, std::cout) ? 0 : 1;
        }
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedSize& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const SearchTooLarge& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace silverforge
