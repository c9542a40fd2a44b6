#include "biq/sign.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace biq {

namespace {

struct SqrtCacheEntry {
    unsigned k = 0;
    Int lo;  // floor(sqrt(n) * 2^k)
};

std::shared_mutex g_sqrt_mutex;
std::map<int64_t, SqrtCacheEntry> g_sqrt_cache;

}  // namespace

Int sqrt_lower_scaled(int64_t n, unsigned k) {
    {
        std::shared_lock lock(g_sqrt_mutex);
        auto it = g_sqrt_cache.find(n);
        if (it != g_sqrt_cache.end() && it->second.k >= k)
            return it->second.lo >> (it->second.k - k);
    }
    std::unique_lock lock(g_sqrt_mutex);
    auto& e = g_sqrt_cache[n];
    if (e.k < k) {
        e.k = k;
        e.lo = isqrt(Int(n) << (2 * k));
    }
    return e.lo >> (e.k - k);
}

SignValue sign_of_quad(const Int& a, const Int& b, const Int& c, const Int& d,
                       int64_t m, int64_t s, int64_t t) {
    if (b == 0 && c == 0 && d == 0) {
        if (a == 0) return SignValue::Zero;
        return a > 0 ? SignValue::Positive : SignValue::Negative;
    }
    for (unsigned k = 16;; k *= 2) {
        Int lom = sqrt_lower_scaled(m, k), los = sqrt_lower_scaled(s, k), lot = sqrt_lower_scaled(t, k);
        Int scaled_a = a * (Int(1) << k);
        Int lower = scaled_a, upper = scaled_a;
        auto acc = [&](const Int& coef, const Int& lo) {
            if (coef == 0) return;
            if (coef > 0) {
                lower += coef * lo;
                upper += coef * (lo + 1);
            } else {
                lower += coef * (lo + 1);
                upper += coef * lo;
            }
        };
        acc(b, lom);
        acc(c, los);
        acc(d, lot);
        if (lower > 0) return SignValue::Positive;
        if (upper < 0) return SignValue::Negative;
        // k doubles; the element is nonzero, so the loop terminates.
    }
}

}  // namespace biq
