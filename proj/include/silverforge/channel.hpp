#pragma once

#include "silverforge/linalg.hpp"
#include "silverforge/rng.hpp"
#include "silverforge/silver.hpp"

namespace silverforge {

// Rayleigh block-fading instance: H entries i.i.d. circularly symmetric
// complex Gaussian, zero mean, unit variance; snr is linear.
struct ChannelInstance {
    CMat H; // n_r x n_t
    double snr = 1.0;
};

// Entries drawn in row-major order from rng (determinism contract).
ChannelInstance sample_channel(int n_t, int n_r, double snr, Prng& rng);

// Y = sqrt(snr/n_t) * H * S + N with unit-variance complex noise; noise
// suppressed when add_noise = false.
CMat transmit(const CMat& S, const ChannelInstance& ch, Prng& rng, bool add_noise = true);

// Real equivalent channel: physical_gain * (I_T kron realify(H)) * G, so that
// tilde_vec(vec(Y - N)) = sqrt(snr/n_t) * H_eq * s for the code's PAM vector s.
RMat equivalent_channel(const ChannelInstance& ch, const GeneratorMatrix& gen);

} // namespace silverforge
