#include "rbfdd/adaptation.hpp"

#include <cmath>
#include <stdexcept>

namespace rbfdd {

void AdaptationParams::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("AdaptationParams: eps must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("AdaptationParams: c must be > 0");
    if (!(cap_c > 0.0)) throw std::invalid_argument("AdaptationParams: C must be > 0");
    if (!(t >= 1.0)) throw std::invalid_argument("AdaptationParams: t must be >= 1");
}

AdaptedShapes AdaptedShapes::uniform(std::size_t n, double eps) {
    AdaptedShapes s;
    s.eps_tilde.assign(n, eps);
    s.psi_flags.assign(n, 1);
    s.smooth_count = n;
    return s;
}

int psi(double indicator, const AdaptationParams& params) {
    if (!(indicator >= 0.0)) throw std::invalid_argument("psi: indicator must be >= 0");
    const double v = std::exp(-std::pow(params.cap_c * indicator, params.t));
    return std::round(v) >= 1.0 ? 1 : 0;
}

double adapted_shape(double indicator, const AdaptationParams& params) {
    return params.eps / (params.c + static_cast<double>(psi(indicator, params)));
}

AdaptedShapes adapt_all(const SmoothnessField& field, const AdaptationParams& params) {
    params.validate();
    AdaptedShapes out;
    out.eps_tilde.reserve(field.values.size());
    out.psi_flags.reserve(field.values.size());
    for (double value : field.values) {
        const int flag = psi(value, params);
        out.psi_flags.push_back(flag);
        out.eps_tilde.push_back(params.eps / (params.c + static_cast<double>(flag)));
        out.smooth_count += static_cast<std::size_t>(flag);
    }
    return out;
}

} // namespace rbfdd
