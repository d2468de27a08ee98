#pragma once

#include "rbfdd/smoothness.hpp"

#include <cstddef>
#include <vector>

namespace rbfdd {

struct AdaptationParams {
    double eps = 1.0;    // base shape parameter
    double c = 1e-16;    // keeps eps / (c + psi) finite
    double cap_c = 10.0; // C
    double t = 2.0;

    void validate() const;
};

struct AdaptedShapes {
    std::vector<double> eps_tilde;
    std::vector<int> psi_flags;
    std::size_t smooth_count = 0;

    /// Uniform eps with every flag set, as used by classical models.
    static AdaptedShapes uniform(std::size_t n, double eps);
};

/// round(exp(-(C * I)^t)), half away from zero; always 0 or 1.
int psi(double indicator, const AdaptationParams& params);

/// eps / (c + psi(I)).
double adapted_shape(double indicator, const AdaptationParams& params);

AdaptedShapes adapt_all(const SmoothnessField& field, const AdaptationParams& params);

} // namespace rbfdd
