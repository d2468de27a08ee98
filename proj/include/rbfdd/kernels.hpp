#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace rbfdd {

enum class KernelKind { G, IMQ, M2, M4, W2, W4 };

inline constexpr std::array<KernelKind, 6> all_kernels{
    KernelKind::G, KernelKind::IMQ, KernelKind::W2, KernelKind::W4, KernelKind::M2, KernelKind::M4};

/// Continuity class sentinel for infinitely smooth kernels.
inline constexpr int continuity_infinite = -1;

struct KernelSpec {
    KernelKind kind = KernelKind::G;
    int continuity = continuity_infinite;
    bool compact_support = false;
    double value_at_zero = 1.0;

    static KernelSpec of(KernelKind kind);
};

/// Case-insensitive: "g", "imq", "m2", "m4", "w2", "w4".
KernelKind parse_kernel(std::string_view name);
std::string kernel_name(KernelKind kind);

inline double cutoff_plus(double x) { return x > 0.0 ? x : 0.0; }

/// phi(s) with s = eps * r >= 0. s = +inf yields the limit 0.
double kernel_eval(KernelKind kind, double s);

/// phi(eps * r).
double kernel_at(const KernelSpec& spec, double eps, double r);

namespace detail {

/// Unchecked phi(s) for hot loops; s must be finite and >= 0.
template <KernelKind Kind>
inline double phi(double s) {
    if constexpr (Kind == KernelKind::G) {
        return std::exp(-s * s);
    } else if constexpr (Kind == KernelKind::IMQ) {
        return 1.0 / std::sqrt(1.0 + s * s);
    } else if constexpr (Kind == KernelKind::M2) {
        const double e = std::exp(-s);
        return e == 0.0 ? 0.0 : e * (1.0 + s);
    } else if constexpr (Kind == KernelKind::M4) {
        const double e = std::exp(-s);
        return e == 0.0 ? 0.0 : e * (3.0 + 3.0 * s + s * s);
    } else if constexpr (Kind == KernelKind::W2) {
        const double q = cutoff_plus(1.0 - s);
        const double q2 = q * q;
        return q2 * q2 * (4.0 * s + 1.0);
    } else {
        const double q = cutoff_plus(1.0 - s);
        const double q3 = q * q * q;
        return q3 * q3 * (35.0 * s * s + 18.0 * s + 3.0);
    }
}

/// Calls f.template operator()<Kind>() for the runtime kind.
template <class F>
decltype(auto) dispatch(KernelKind kind, F&& f) {
    switch (kind) {
    case KernelKind::G: return f.template operator()<KernelKind::G>();
    case KernelKind::IMQ: return f.template operator()<KernelKind::IMQ>();
    case KernelKind::M2: return f.template operator()<KernelKind::M2>();
    case KernelKind::M4: return f.template operator()<KernelKind::M4>();
    case KernelKind::W2: return f.template operator()<KernelKind::W2>();
    case KernelKind::W4: break;
    }
    return f.template operator()<KernelKind::W4>();
}

} // namespace detail

} // namespace rbfdd
