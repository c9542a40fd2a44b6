#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace biq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::gcd;

/// Floor of the square root; requires x >= 0.
inline Int isqrt(const Int& x) {
    if (x < 0) throw std::domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const Int& x, Int* root = nullptr) {
    if (x < 0) return false;
    Int r = isqrt(x);
    if (r * r != x) return false;
    if (root) *root = r;
    return true;
}

/// Floor division, correct for negative numerators.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Smallest integer strictly greater than sqrt(u); u > 1 and not a perfect
/// square in every caller, so this equals isqrt(u) + 1.
inline int64_t ceil_sqrt_strict(int64_t u) {
    Int r = isqrt(Int(u));
    auto r64 = static_cast<int64_t>(r);
    return r64 + 1;
}

/// Smallest odd integer strictly greater than sqrt(u).
inline int64_t ceil_sqrt_odd(int64_t u) {
    int64_t c = ceil_sqrt_strict(u);
    return (c % 2 == 1) ? c : c + 1;
}

inline bool is_squarefree(int64_t n) {
    if (n < 1) return false;
    if (n % 4 == 0) return false;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

}  // namespace biq
