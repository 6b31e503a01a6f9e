#pragma once

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

namespace pulseion {

// Working-precision menu. Double covers 15 significant digits; beyond that we
// switch to software floats. Escalation doubles the digit count, so the menu
// is exactly the orbit of 15 under doubling, capped at 240.
using cplx = std::complex<double>;
using mp30 = boost::multiprecision::cpp_complex<30>;
using mp60 = boost::multiprecision::cpp_complex<60>;
using mp120 = boost::multiprecision::cpp_complex<120>;
using mp240 = boost::multiprecision::cpp_complex<240>;

constexpr int kPrecisionMenu[] = {15, 30, 60, 120, 240};
constexpr int kMaxMenuDigits = 240;

inline int menu_digits(int requested) {
    for (int d : kPrecisionMenu)
        if (d >= requested) return d;
    return kMaxMenuDigits;
}

struct PrecisionPolicy {
    int base_digits = 15;
    double cancellation_threshold = 1e12;
    int escalation_factor = 2;
    int max_digits = 120;
};

inline PrecisionPolicy default_policy() {
    PrecisionPolicy p;
    if (const char* env = std::getenv("PULSEION_DIGITS")) {
        int v = std::atoi(env);
        if (v >= 15) p.max_digits = std::min(v, kMaxMenuDigits);
    }
    return p;
}

enum class EscalateDecision { accept, rerun, exhausted };

// Cancellation gate. A sum of terms with magnitudes totalling T that collapses
// to magnitude S has lost log10(T/S) digits; accept while the surviving digits
// at the current level still clear the base-precision quality bar, i.e.
// T/S <= threshold * 10^(digits - base).
inline EscalateDecision escalate_if_cancelled(double sum_abs, double abs_term_total,
                                              int current_digits, const PrecisionPolicy& policy) {
    const double tiny = 1e-300;
    double lost = std::log10(abs_term_total / std::max(sum_abs, tiny));
    double allowed = std::log10(policy.cancellation_threshold) +
                     static_cast<double>(current_digits - policy.base_digits);
    if (lost <= allowed) return EscalateDecision::accept;
    int cap = menu_digits(std::min(policy.max_digits, kMaxMenuDigits));
    if (current_digits >= cap) return EscalateDecision::exhausted;
    return EscalateDecision::rerun;
}

inline int escalated_digits(int current_digits, const PrecisionPolicy& policy) {
    int cap = menu_digits(std::min(policy.max_digits, kMaxMenuDigits));
    return std::min(menu_digits(current_digits * policy.escalation_factor), cap);
}

// Scalar bridges used by code templated over the complex type.
inline double to_double(double v) { return v; }
template <class T>
double to_double(const T& v) {
    return v.template convert_to<double>();
}

template <class C>
struct scalar_of {
    using type = typename C::value_type;
};
template <class C>
using scalar_t = typename scalar_of<C>::type;

template <class C>
constexpr int digits_of() {
    if constexpr (std::is_same_v<C, cplx>) return 15;
    else if constexpr (std::is_same_v<C, mp30>) return 30;
    else if constexpr (std::is_same_v<C, mp60>) return 60;
    else if constexpr (std::is_same_v<C, mp120>) return 120;
    else return 240;
}

// Runs fn<C>(digits) with the menu type matching `digits`.
template <class Fn>
auto dispatch_precision(int digits, Fn&& fn) {
    switch (menu_digits(digits)) {
        case 15: return fn.template operator()<cplx>(15);
        case 30: return fn.template operator()<mp30>(30);
        case 60: return fn.template operator()<mp60>(60);
        case 120: return fn.template operator()<mp120>(120);
        default: return fn.template operator()<mp240>(240);
    }
}

}  // namespace pulseion
