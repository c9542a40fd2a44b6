#pragma once

#include <cstdint>

#include "biq/int.hpp"

namespace biq {

enum class SignValue { Negative, Zero, Positive };

/// Exact sign of a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t).
///
/// Zero is decided first by coordinate comparison (1, sqrt m, sqrt s, sqrt t
/// are linearly independent over Q).  Otherwise the value is bracketed with
/// dyadic bounds floor(sqrt(n)*2^k) <= sqrt(n)*2^k < floor(..)+1, doubling k
/// until the interval clears zero.  No floating point anywhere.
SignValue sign_of_quad(const Int& a, const Int& b, const Int& c, const Int& d,
                       int64_t m, int64_t s, int64_t t);

/// Dyadic bounds lo/2^k <= sqrt(n) < (lo+1)/2^k, served from a process-wide
/// cache that only ever refines.  Safe for concurrent use.
Int sqrt_lower_scaled(int64_t n, unsigned k);

}  // namespace biq
