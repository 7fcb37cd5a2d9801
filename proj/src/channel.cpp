#include "silverforge/channel.hpp"

#include <cmath>

namespace silverforge {

ChannelInstance sample_channel(int n_t, int n_r, double snr, Prng& rng) {
    ChannelInstance ch;
    ch.snr = snr;
    ch.H.resize(n_r, n_t);
    for (int r = 0; r < n_r; ++r)
        for (int c = 0; c < n_t; ++c) ch.H(r, c) = rng.next_cgaussian(1.0);
    return ch;
}

CMat transmit(const CMat& S, const ChannelInstance& ch, Prng& rng, bool add_noise) {
    if (S.rows() != ch.H.cols())
        throw DimensionMismatch("transmit: codeword rows != channel columns");
    const double c = std::sqrt(ch.snr / static_cast<double>(ch.H.cols()));
    CMat Y = c * ch.H * S;
    if (add_noise)
        for (int r = 0; r < Y.rows(); ++r)
            for (int t = 0; t < Y.cols(); ++t) Y(r, t) += rng.next_cgaussian(1.0);
    return Y;
}

RMat equivalent_channel(const ChannelInstance& ch, const GeneratorMatrix& gen) {
    const int n_t = static_cast<int>(ch.H.cols());
    const int n_r = static_cast<int>(ch.H.rows());
    if (gen.n_t != n_t || gen.G.rows() % (2 * n_t) != 0)
        throw DimensionMismatch("equivalent_channel: generator antenna count != channel columns");
    const int T = static_cast<int>(gen.G.rows()) / (2 * n_t);
    const RMat Hr = realify(ch.H);
    RMat heq(2 * n_r * T, gen.G.cols());
    for (int t = 0; t < T; ++t)
        heq.middleRows(2 * n_r * t, 2 * n_r) =
            gen.physical_gain * Hr * gen.G.middleRows(2 * n_t * t, 2 * n_t);
    return heq;
}

} // namespace silverforge
