// Independent brute-force oracles used to cross-check the library.  The
// routes here deliberately avoid the library's own decision paths: signs are
// decided by algebraic descent instead of dyadic intervals, integrality by
// solving against the literal integral-basis vectors, and searches scan raw
// coordinate boxes with no pruning beyond the trace bound.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "biq/element.hpp"
#include "biq/field.hpp"
#include "biq/quadratic.hpp"

namespace biq::oracle {

inline int sign_rat(const Rat& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

/// Sign of x + y*sqrt(n) for rational x, y by descent to rational signs.
inline int sign_quad(const Rat& x, const Rat& y, int64_t n) {
    if (y == 0) return sign_rat(x);
    if (x == 0) return sign_rat(y);
    int sx = sign_rat(x), sy = sign_rat(y);
    if (sx == sy) return sx;
    int sn = sign_rat(x * x - y * y * n);
    return sx > 0 ? sn : -sn;
}

/// Sign of a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t) via A + B*sqrt(s) with
/// A, B in Q(sqrt m); uses sqrt(t) = sqrt(m)sqrt(s)/t0.
inline int sign_biquad(const FieldSpec& f, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    Rat bx = c, by = d / f.t0;
    int sA = sign_quad(a, b, f.m);
    int sB = sign_quad(bx, by, f.m);
    if (sB == 0) return sA;
    if (sA == 0) return sB;
    if (sA == sB) return sA;
    // A^2 - s B^2 in Q(sqrt m)
    Rat px = a * a + b * b * f.m - f.s * (bx * bx + by * by * f.m);
    Rat py = 2 * a * b - f.s * 2 * bx * by;
    int sp = sign_quad(px, py, f.m);
    return sA > 0 ? sp : -sp;
}

inline int sign_emb(const Element& x, int e) {
    const auto& sg = x.field().emb[e];
    Rat den(x.den());
    return sign_biquad(x.field(), Rat(x.num_a()) / den, Rat(sg[0] * x.num_b()) / den,
                       Rat(sg[1] * x.num_c()) / den, Rat(sg[2] * x.num_d()) / den);
}

inline bool totally_positive(const Element& x) {
    for (int e = 0; e < 4; ++e)
        if (sign_emb(x, e) <= 0) return false;
    return true;
}

inline bool totally_nonneg(const Element& x) { return x.is_zero() || totally_positive(x); }

/// The literal integral-basis vectors of the field, as elements of K.
inline std::vector<Element> basis_elements(const FieldSpec& f) {
    auto mk = [&](Rat one, Rat cp, Rat cq, Rat cr) {
        // coords over (1, sqrt p, sqrt q, sqrt r) -> (1, sqrt m, sqrt s, sqrt t)
        std::array<Rat, 3> pos{};
        pos[f.role_pos[0]] = cp;
        pos[f.role_pos[1]] = cq;
        pos[f.role_pos[2]] = cr;
        Int den = 1;
        for (const Rat* r : {&one, &pos[0], &pos[1], &pos[2]})
            den = den / gcd(den, denominator(*r)) * denominator(*r);
        auto sc = [&](const Rat& r) { return numerator(r) * (den / denominator(r)); };
        return Element::make(f, sc(one), sc(pos[0]), sc(pos[1]), sc(pos[2]), den);
    };
    Rat h(1, 2), q(1, 4);
    switch (f.basis) {
        case BasisClass::B1:
            return {mk(1, 0, 0, 0), mk(0, 1, 0, 0), mk(0, 0, 1, 0), mk(0, h, 0, h)};
        case BasisClass::B2:
        case BasisClass::B3:
            return {mk(1, 0, 0, 0), mk(0, 1, 0, 0), mk(h, 0, h, 0), mk(0, h, 0, h)};
        case BasisClass::B4a:
            return {mk(1, 0, 0, 0), mk(h, h, 0, 0), mk(h, 0, h, 0), mk(q, q, q, q)};
        case BasisClass::B4b:
            return {mk(1, 0, 0, 0), mk(h, h, 0, 0), mk(h, 0, h, 0), mk(q, -q, q, q)};
    }
    throw std::logic_error("bad basis");
}

/// Integrality by solving x = M y against the basis matrix with rational
/// Gaussian elimination and checking that y is an integer vector.
inline bool integral(const Element& x) {
    const FieldSpec& f = x.field();
    auto basis = basis_elements(f);
    // Column matrix over coordinates (1, sqrt m, sqrt s, sqrt t).
    Rat M[4][5];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Element& bj = basis[static_cast<size_t>(j)];
            Rat den(bj.den());
            Rat coord = i == 0   ? Rat(bj.num_a()) / den
                        : i == 1 ? Rat(bj.num_b()) / den
                        : i == 2 ? Rat(bj.num_c()) / den
                                 : Rat(bj.num_d()) / den;
            M[i][j] = coord;
        }
        Rat den(x.den());
        M[i][4] = i == 0   ? Rat(x.num_a()) / den
                  : i == 1 ? Rat(x.num_b()) / den
                  : i == 2 ? Rat(x.num_c()) / den
                           : Rat(x.num_d()) / den;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        for (int k = 0; k < 5; ++k) std::swap(M[col][k], M[piv][k]);
        Rat p = M[col][col];
        for (int k = col; k < 5; ++k) M[col][k] /= p;
        for (int r = 0; r < 4; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rat fac = M[r][col];
            for (int k = col; k < 5; ++k) M[r][k] -= fac * M[col][k];
        }
    }
    for (int i = 0; i < 4; ++i)
        if (denominator(M[i][4]) != 1) return false;
    return true;
}

/// Double loop over the coordinate box |b_i| sqrt(n_i) < a given by the
/// total-positivity inequalities of the candidate part alone (no pruning from
/// the complement); exact checks with the oracle sign and integrality routes.
inline std::vector<Element> dominated_by(const Element& alpha) {
    const FieldSpec& f = alpha.field();
    auto q = alpha.quarters();
    Int A = q[0];
    std::vector<Element> out;
    for (Int a = 0; a <= A; ++a) {
        Int bb = isqrt(a * a / f.m), cb = isqrt(a * a / f.s), db = isqrt(a * a / f.t);
        for (Int b = -bb; b <= bb; ++b)
            for (Int c = -cb; c <= cb; ++c)
                for (Int d = -db; d <= db; ++d) {
                    Element beta = Element::make(f, a, b, c, d, 4);
                    if (!integral(beta)) continue;
                    if (!totally_nonneg(beta)) continue;
                    if (!totally_nonneg(alpha - beta)) continue;
                    out.push_back(beta);
                }
    }
    std::sort(out.begin(), out.end(),
              [](const Element& x, const Element& y) { return x.lex_less(y); });
    return out;
}

/// All omega (up to sign, first nonzero coordinate positive) in the raw box
/// trace(omega^2) <= trace(P) with omega^2 totally dominated by P.
inline std::vector<Element> square_roots_under(const Element& P) {
    const FieldSpec& f = P.field();
    Rat tr = P.trace();
    Int T4 = 4 * (numerator(tr) / denominator(tr));
    std::vector<Element> out;
    Int ab = isqrt(T4), bb = isqrt(T4 / f.m), cb = isqrt(T4 / f.s), db = isqrt(T4 / f.t);
    for (Int a = 0; a <= ab; ++a)
        for (Int b = -bb; b <= bb; ++b)
            for (Int c = -cb; c <= cb; ++c)
                for (Int d = -db; d <= db; ++d) {
                    bool canonical = a > 0 || (a == 0 && (b > 0 || (b == 0 && (c > 0 || (c == 0 && d >= 0)))));
                    if (!canonical) continue;
                    Element w = Element::make(f, a, b, c, d, 4);
                    if (!integral(w)) continue;
                    if (!totally_nonneg(P - w * w)) continue;
                    out.push_back(w);
                }
    return out;
}

inline std::vector<Element> square_parts(const Element& alpha) {
    std::vector<Element> out;
    for (const auto& w : square_roots_under(alpha)) out.push_back(w * w);
    std::sort(out.begin(), out.end(),
              [](const Element& x, const Element& y) { return x.lex_less(y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Element> rho_candidates(const Element& li, const Element& lj) {
    std::vector<Element> out;
    for (const auto& w : square_roots_under(li * lj)) {
        out.push_back(w);
        if (!w.is_zero()) out.push_back(-w);
    }
    std::sort(out.begin(), out.end(),
              [](const Element& x, const Element& y) { return x.lex_less(y); });
    return out;
}

/// Exhaustive search for x^2 - n y^2 = rhs with 0 <= x, y <= cap.
inline bool pell_search(int64_t n, int rhs, int64_t cap) {
    for (Int y = 0; y <= cap; ++y)
        for (Int x = 0; x <= cap; ++x)
            if (x * x - n * y * y == rhs) return true;
    return false;
}

/// Brute-force list of indecomposables of Q(sqrt n) with quadratic trace at
/// most bound, as (u + v sqrt n)/2 pairs.
inline std::vector<QuadElem> quad_indecomposables(int64_t n, int64_t bound) {
    auto integral2 = [&](const Int& u, const Int& v) {
        if (n % 4 == 1) return ((u - v) % 2) == 0;
        return u % 2 == 0 && v % 2 == 0;
    };
    auto tp2 = [&](const Int& u, const Int& v) { return u > 0 && u * u > v * v * n; };
    std::vector<QuadElem> out;
    for (Int u = 1; u <= bound; ++u) {
        Int vb = isqrt(u * u / n);
        for (Int v = -vb; v <= vb; ++v) {
            if (!integral2(u, v) || !tp2(u, v)) continue;
            bool indec = true;
            for (Int u2 = 1; u2 < u && indec; ++u2) {
                Int vb2 = isqrt(u2 * u2 / n);
                for (Int v2 = -vb2; v2 <= vb2; ++v2) {
                    if (!integral2(u2, v2) || !tp2(u2, v2)) continue;
                    if (tp2(u - u2, v - v2) && integral2(u - u2, v - v2)) {
                        indec = false;
                        break;
                    }
                }
            }
            if (indec) out.push_back(QuadElem{n, u, v});
        }
    }
    return out;
}

/// Dyadic lower/upper bounds of x^(1/4) for a positive rational, scaled by 2^k.
inline std::pair<Int, Int> fourth_root_bounds(const Rat& x, unsigned k) {
    Int scale = Int(1) << (4 * k);
    Int lo_arg = floor_div(numerator(x) * scale, denominator(x));
    Int lo = isqrt(isqrt(lo_arg));
    Int hi = isqrt(isqrt(lo_arg + 1)) + 1;
    return {lo, hi};
}

/// Fields with t <= tmax in canonical (m, s) order.
inline std::vector<FieldSpec> all_fields_with_t_at_most(int64_t tmax) {
    std::vector<FieldSpec> out;
    for (int64_t m = 2; m < tmax; ++m) {
        if (!is_squarefree(m)) continue;
        for (int64_t s = m + 1; s <= tmax; ++s) {
            if (!is_squarefree(s)) continue;
            int64_t g = std::gcd(m, s);
            int64_t t = (m / g) * (s / g);
            if (t <= s || t > tmax) continue;  // canonical representative has t largest
            out.push_back(classify_field(m, s));
        }
    }
    return out;
}

/// Deterministic random integral element with coefficients in [-r, r] in the
/// integral basis.
inline Element random_integral(const FieldSpec& f, std::mt19937_64& rng, int r) {
    auto basis = basis_elements(f);
    std::uniform_int_distribution<int> dist(-r, r);
    Element x = Element::zero(f);
    for (const auto& b : basis) x = x + b * Int(dist(rng));
    return x;
}

/// Random totally positive integral element: a random integral element pushed
/// up by an integer exceeding the magnitude of every embedding.
inline Element random_totally_positive(const FieldSpec& f, std::mt19937_64& rng, int r) {
    Element x = random_integral(f, rng, r);
    auto q = x.quarters();
    Int bound = (abs(q[0]) + abs(q[1]) * f.m + abs(q[2]) * f.s + abs(q[3]) * f.t) / 4 + 1;
    return x + Element::integer(f, bound);
}

}  // namespace biq::oracle
