#include "rbfdd/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace rbfdd {

KernelSpec KernelSpec::of(KernelKind kind) {
    switch (kind) {
    case KernelKind::G:
    case KernelKind::IMQ: return {kind, continuity_infinite, false, 1.0};
    case KernelKind::M2: return {kind, 2, false, 1.0};
    case KernelKind::M4: return {kind, 4, false, 3.0};
    case KernelKind::W2: return {kind, 2, true, 1.0};
    case KernelKind::W4: return {kind, 4, true, 3.0};
    }
    throw std::invalid_argument("KernelSpec: unknown kind");
}

KernelKind parse_kernel(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "g") return KernelKind::G;
    if (lower == "imq") return KernelKind::IMQ;
    if (lower == "m2") return KernelKind::M2;
    if (lower == "m4") return KernelKind::M4;
    if (lower == "w2") return KernelKind::W2;
    if (lower == "w4") return KernelKind::W4;
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string kernel_name(KernelKind kind) {
    switch (kind) {
    case KernelKind::G: return "G";
    case KernelKind::IMQ: return "IMQ";
    case KernelKind::M2: return "M2";
    case KernelKind::M4: return "M4";
    case KernelKind::W2: return "W2";
    case KernelKind::W4: return "W4";
    }
    return "?";
}

double kernel_eval(KernelKind kind, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("kernel_eval: s must be >= 0");
    if (std::isinf(s)) return 0.0;
    return detail::dispatch(kind, [s]<KernelKind K>() { return detail::phi<K>(s); });
}

double kernel_at(const KernelSpec& spec, double eps, double r) {
    if (!(eps > 0.0)) throw std::invalid_argument("kernel_at: eps must be > 0");
    if (!(r >= 0.0)) throw std::invalid_argument("kernel_at: r must be >= 0");
    if (r == 0.0) return spec.value_at_zero;
    return kernel_eval(spec.kind, eps * r);
}

} // namespace rbfdd
