#pragma once

#include <vector>

#include "silverforge/errors.hpp"

namespace silverforge {

// PAM/QAM alphabet normalized so every real coordinate has mean power 1/2
// (square QAM = two independent sqrt(M)-PAM coordinates).
struct Constellation {
    enum class Kind { PAM, QAM };
    Kind kind = Kind::QAM;
    int M = 4;                      // alphabet size
    int pam_levels = 2;             // per real dimension
    double scale = 0.0;             // spacing normalizer
    std::vector<double> pam_points; // ascending

    double quantize(double v) const { // nearest point, clipped to the extremes
        const double lo = pam_points.front(), hi = pam_points.back();
        if (v <= lo) return lo;
        if (v >= hi) return hi;
        // uniform grid with spacing 2*scale
        const double idx = (v - lo) / (2.0 * scale);
        auto k = static_cast<std::size_t>(idx + 0.5);
        if (k >= pam_points.size()) k = pam_points.size() - 1;
        return pam_points[k];
    }

    // Nonzero pairwise differences plus zero, ascending; drives coding-gain searches.
    std::vector<double> difference_set() const {
        std::vector<double> d{0.0};
        for (int s = 1; s < pam_levels; ++s) {
            d.push_back(2.0 * scale * s);
            d.push_back(-2.0 * scale * s);
        }
        return d;
    }
};

Constellation make_qam(int M);
Constellation make_pam(int levels);

} // namespace silverforge
