#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "biq/int.hpp"

namespace biq {

struct NotSquarefreeError : std::invalid_argument {
    explicit NotSquarefreeError(int64_t n)
        : std::invalid_argument("radicand is not square-free: " + std::to_string(n)) {}
};

struct DegenerateFieldError : std::invalid_argument {
    DegenerateFieldError() : std::invalid_argument("the two radicands generate a quadratic field") {}
};

struct FieldMismatchError : std::invalid_argument {
    FieldMismatchError() : std::invalid_argument("elements belong to different fields") {}
};

enum class BasisClass { B1, B2, B3, B4a, B4b };

std::string to_string(BasisClass b);

/// A totally real biquadratic field Q(sqrt(m), sqrt(s)), with the three
/// radicands m < s < t, t = m*s/gcd(m,s)^2, the (p,q,r) relabeling that
/// selects the integral-basis row, and the pairwise-coprime factors
/// m0 = gcd(s,t), s0 = gcd(m,t), t0 = gcd(m,s).
struct FieldSpec {
    int64_t m = 0, s = 0, t = 0;
    int64_t p = 0, q = 0, r = 0;
    int64_t m0 = 0, s0 = 0, t0 = 0;
    BasisClass basis = BasisClass::B1;

    // Index in (m,s,t) of p, q, r respectively.
    std::array<int, 3> role_pos{0, 0, 0};
    // emb[e][i] is the sign (+1/-1) embedding e applies to the coordinate on
    // (sqrt(m), sqrt(s), sqrt(t)).  The four sign patterns on (p,q,r) are
    // (+,+,+), (-,+,-), (+,-,-), (-,-,+).
    std::array<std::array<int, 3>, 4> emb{};

    bool operator==(const FieldSpec& o) const { return m == o.m && s == o.s; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    bool contains_radicand(int64_t n) const { return n == m || n == s || n == t; }

    std::string label() const;  // "Q(sqrt(m),sqrt(s))"
};

/// Normalizes two generating radicands into a FieldSpec.  Accepts the three
/// radicands in any role; the result is canonical in (m,s,t).
FieldSpec classify_field(int64_t n1, int64_t n2);

}  // namespace biq
