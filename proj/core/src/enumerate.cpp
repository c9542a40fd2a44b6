#include "biq/enumerate.hpp"

#include <algorithm>
#include <array>

namespace biq {

namespace {

Int mod4i(const Int& x) { return ((x % 4) + 4) % 4; }
Int mod2i(const Int& x) { return ((x % 2) + 2) % 2; }

/// Largest k >= 0 with k^2 * n < bound^2, i.e. strict Lemma-3.1 range; 0 if none.
Int strict_coeff_bound(const Int& bound, int64_t n) {
    if (bound <= 0) return -1;  // no k at all (even k = 0 fails the caller's use)
    return isqrt((bound * bound - 1) / n);
}

bool tp_quarters(const FieldSpec& f, const Int& a, const Int& b, const Int& c, const Int& d) {
    if (a <= 0) return false;
    Int aa = a * a;
    if (b * b * f.m >= aa || c * c * f.s >= aa || d * d * f.t >= aa) return false;
    for (int e = 0; e < 4; ++e) {
        const auto& sg = f.emb[e];
        if (sign_of_quad(a, sg[0] > 0 ? b : Int(-b), sg[1] > 0 ? c : Int(-c),
                         sg[2] > 0 ? d : Int(-d), f.m, f.s, f.t) != SignValue::Positive)
            return false;
    }
    return true;
}

}  // namespace

bool integral_quarters(const FieldSpec& f, const Int& a, const Int& b, const Int& c, const Int& d) {
    std::array<const Int*, 3> coords{&b, &c, &d};
    const Int& yp = *coords[f.role_pos[0]];
    const Int& zq = *coords[f.role_pos[1]];
    const Int& wr = *coords[f.role_pos[2]];
    switch (f.basis) {
        case BasisClass::B1:
            return mod4i(a) == 0 && mod4i(zq) == 0 && mod2i(yp) == 0 && mod2i(wr) == 0 &&
                   mod4i(yp - wr) == 0;
        case BasisClass::B2:
        case BasisClass::B3:
            return mod2i(a) == 0 && mod2i(zq) == 0 && mod2i(yp) == 0 && mod2i(wr) == 0 &&
                   mod4i(a - zq) == 0 && mod4i(yp - wr) == 0;
        case BasisClass::B4a:
        case BasisClass::B4b: {
            Int pa = mod2i(a);
            if (mod2i(yp) != pa || mod2i(zq) != pa || mod2i(wr) != pa) return false;
            Int sum = mod4i(a + yp + zq + wr);
            if (f.basis == BasisClass::B4a) return sum == 0;
            return pa == 0 ? sum == 0 : sum == 2;
        }
    }
    return false;
}

namespace {

/// Core box scan behind dominated_by / is_indecomposable.  Visits every
/// integral beta with 0 < trace(beta) < trace(alpha), beta >= 0 and
/// alpha - beta >= 0; stops after the first hit when early_stop is set.
template <typename Visit>
void scan_interior_parts(const Element& alpha, SearchBudget budget, bool early_stop, Visit visit) {
    const FieldSpec& f = alpha.field();
    auto q = alpha.quarters();
    const Int &A = q[0], &B = q[1], &C = q[2], &D = q[3];
    uint64_t examined = 0;
    for (Int a = 1; a < A; ++a) {
        Int a2 = A - a;
        Int bm1 = strict_coeff_bound(a, f.m), bm2 = strict_coeff_bound(a2, f.m);
        Int blo = std::max(Int(B - bm2), Int(-bm1));
        Int bhi = std::min(Int(B + bm2), bm1);
        for (Int b = blo; b <= bhi; ++b) {
            Int cm1 = strict_coeff_bound(a, f.s), cm2 = strict_coeff_bound(a2, f.s);
            Int clo = std::max(Int(C - cm2), Int(-cm1));
            Int chi = std::min(Int(C + cm2), cm1);
            for (Int c = clo; c <= chi; ++c) {
                Int dm1 = strict_coeff_bound(a, f.t), dm2 = strict_coeff_bound(a2, f.t);
                Int dlo = std::max(Int(D - dm2), Int(-dm1));
                Int dhi = std::min(Int(D + dm2), dm1);
                for (Int d = dlo; d <= dhi; ++d) {
                    if (++examined > budget.max_candidates) throw BudgetExceededError(examined);
                    if (!integral_quarters(f, a, b, c, d)) continue;
                    if (!tp_quarters(f, a, b, c, d)) continue;
                    if (!tp_quarters(f, a2, B - b, C - c, D - d)) continue;
                    visit(a, b, c, d);
                    if (early_stop) return;
                }
            }
        }
    }
}

}  // namespace

std::vector<Element> dominated_by(const Element& alpha, SearchBudget budget) {
    if (!alpha.is_totally_nonnegative() || !alpha.is_integral())
        throw std::invalid_argument("dominated_by expects an integral totally nonnegative element");
    const FieldSpec& f = alpha.field();
    std::vector<Element> out;
    out.push_back(Element::zero(f));
    scan_interior_parts(alpha, budget, false, [&](const Int& a, const Int& b, const Int& c, const Int& d) {
        out.push_back(Element::from_quarters(f, a, b, c, d));
    });
    if (!alpha.is_zero()) out.push_back(alpha);
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) { return x.lex_less(y); });
    return out;
}

bool is_indecomposable(const Element& alpha, SearchBudget budget) {
    if (!alpha.is_totally_positive() || !alpha.is_integral())
        throw std::invalid_argument("is_indecomposable expects an integral totally positive element");
    bool found = false;
    scan_interior_parts(alpha, budget, true,
                        [&](const Int&, const Int&, const Int&, const Int&) { found = true; });
    return !found;
}

DecompositionSet decompositions(const Element& alpha, bool include_zero, SearchBudget budget) {
    DecompositionSet ds;
    ds.target = alpha;
    auto parts = dominated_by(alpha, budget);
    for (const auto& beta : parts) {
        Element gamma = alpha - beta;
        if (!include_zero && (beta.is_zero() || gamma.is_zero())) continue;
        if (gamma.lex_less(beta)) continue;  // keep one orientation per unordered pair
        ds.pairs.emplace_back(beta, gamma);
    }

    std::vector<EmbeddingId> stab;
    for (int e = 0; e < 4; ++e) {
        auto id = static_cast<EmbeddingId>(e);
        if (alpha.apply_embedding(id) == alpha) stab.push_back(id);
    }
    auto pair_less = [](const std::pair<Element, Element>& x, const std::pair<Element, Element>& y) {
        if (x.first != y.first) return x.first.lex_less(y.first);
        return x.second.lex_less(y.second);
    };
    auto canonical = [&](const std::pair<Element, Element>& pr) {
        std::pair<Element, Element> best = pr;
        for (auto e : stab) {
            Element u = pr.first.apply_embedding(e), v = pr.second.apply_embedding(e);
            if (v.lex_less(u)) std::swap(u, v);
            std::pair<Element, Element> cand{u, v};
            if (pair_less(cand, best)) best = cand;
        }
        return best;
    };
    for (const auto& pr : ds.pairs) {
        auto rep = canonical(pr);
        if (std::find(ds.canonical_orbits.begin(), ds.canonical_orbits.end(), rep) ==
            ds.canonical_orbits.end())
            ds.canonical_orbits.push_back(rep);
    }
    std::sort(ds.canonical_orbits.begin(), ds.canonical_orbits.end(), pair_less);
    return ds;
}

namespace {

/// Square root of a rational, if it is one.
std::optional<Rat> rat_sqrt(const Rat& x) {
    if (x < 0) return std::nullopt;
    Int n, d;
    if (!is_perfect_square(numerator(x), &n) || !is_perfect_square(denominator(x), &d))
        return std::nullopt;
    return Rat(n, d);
}

/// x + y*sqrt(n) with rational coordinates.
struct Q2 {
    Rat x, y;
    bool zero() const { return x == 0 && y == 0; }
};

std::optional<Q2> q2_sqrt(const Q2& g, int64_t n) {
    if (g.zero()) return Q2{0, 0};
    if (g.y == 0) {
        if (auto r = rat_sqrt(g.x)) return Q2{*r, 0};
        if (auto r = rat_sqrt(g.x / n)) return Q2{0, *r};
        return std::nullopt;
    }
    Rat N = g.x * g.x - g.y * g.y * n;
    auto n0 = rat_sqrt(N);
    if (!n0) return std::nullopt;
    for (int sgn : {+1, -1}) {
        Rat xx = (g.x + sgn * *n0) / 2;
        if (auto r = rat_sqrt(xx)) {
            if (*r == 0) continue;
            Rat yy = g.y / (2 * *r);
            if (yy * yy * n + *r * *r == g.x && 2 * *r * yy == g.y) return Q2{*r, yy};
        }
    }
    return std::nullopt;
}

Element element_from_q2_pair(const FieldSpec& f, const Q2& A, const Q2& B) {
    // A + B*sqrt(s) with A = x1 + y1 sqrt(m), B = x2 + y2 sqrt(m);
    // sqrt(m)sqrt(s) = t0 sqrt(t).
    Rat ca = A.x, cb = A.y, cc = B.x, cd = B.y * f.t0;
    Int den = 1;
    for (const Rat* r : {&ca, &cb, &cc, &cd}) den = den / gcd(den, denominator(*r)) * denominator(*r);
    auto scale = [&](const Rat& r) { return numerator(r) * (den / denominator(r)); };
    return Element::make(f, scale(ca), scale(cb), scale(cc), scale(cd), den);
}

}  // namespace

std::optional<Element> sqrt_in_ring(const Element& alpha) {
    const FieldSpec& f = alpha.field();
    if (!alpha.is_integral()) throw std::invalid_argument("sqrt_in_ring expects an integral element");
    if (alpha.is_zero()) return Element::zero(f);
    if (!alpha.is_totally_positive()) return std::nullopt;

    // alpha = U + V*sqrt(s) over Q(sqrt m): sqrt(t) = sqrt(m)sqrt(s)/t0.
    Q2 U{Rat(alpha.num_a(), alpha.den()), Rat(alpha.num_b(), alpha.den())};
    Q2 V{Rat(alpha.num_c(), alpha.den()), Rat(alpha.num_d(), Int(alpha.den() * f.t0))};

    auto finish = [&](const Element& omega) -> std::optional<Element> {
        Element root = omega;
        if (root.num_a() < 0 || (root.num_a() == 0 && root.lex_less(Element::zero(f))))
            root = -root;
        if (!(root * root == alpha) || !root.is_integral())
            throw std::logic_error("square root verification failed");
        return root;
    };

    if (V.zero()) {
        // alpha in Q(sqrt m): either a square there, or s * (square).
        if (auto a0 = q2_sqrt(U, f.m)) return finish(element_from_q2_pair(f, *a0, Q2{0, 0}));
        Q2 Us{U.x * f.s, U.y * f.s};
        if (auto d0 = q2_sqrt(Us, f.m)) {
            Q2 B{d0->x / f.s, d0->y / f.s};
            return finish(element_from_q2_pair(f, Q2{0, 0}, B));
        }
        return std::nullopt;
    }

    // omega = A + B sqrt(s): A^2 and s B^2 are the roots of X^2 - U X + s V^2 / 4.
    Q2 disc{U.x * U.x + U.y * U.y * f.m - f.s * (V.x * V.x + V.y * V.y * f.m),
            2 * U.x * U.y - f.s * 2 * V.x * V.y};
    auto delta = q2_sqrt(disc, f.m);
    if (!delta) return std::nullopt;
    for (int sgn : {+1, -1}) {
        Q2 Asq{(U.x + sgn * delta->x) / 2, (U.y + sgn * delta->y) / 2};
        auto A = q2_sqrt(Asq, f.m);
        if (!A || A->zero()) continue;
        // B = V / (2A) in Q(sqrt m).
        Rat denom = 4 * (A->x * A->x - A->y * A->y * f.m);
        if (denom == 0) continue;
        Q2 B{(V.x * A->x * 2 - V.y * A->y * 2 * f.m) / denom,
             (V.y * A->x * 2 - V.x * A->y * 2) / denom};
        Element omega = element_from_q2_pair(f, *A, B);
        if (omega * omega == alpha) return finish(omega);
    }
    return std::nullopt;
}

namespace {

/// Visits one representative of {omega, -omega} for every integral omega with
/// trace(omega^2) <= tbound; the representative has its first nonzero
/// coordinate positive, plus omega = 0.
template <typename Visit>
void scan_square_roots(const FieldSpec& f, const Int& tbound, SearchBudget budget, Visit visit) {
    Int lim = 4 * tbound;  // a^2 + b^2 m + c^2 s + d^2 t <= 4*trace bound
    if (lim < 0) return;
    uint64_t examined = 0;
    Int amax = isqrt(lim);
    for (Int a = 0; a <= amax; ++a) {
        Int rem_a = lim - a * a;
        Int bmax = isqrt(rem_a / f.m);
        for (Int b = (a > 0 ? -bmax : Int(0)); b <= bmax; ++b) {
            Int rem_b = rem_a - b * b * f.m;
            Int cmax = isqrt(rem_b / f.s);
            for (Int c = (a > 0 || b > 0 ? -cmax : Int(0)); c <= cmax; ++c) {
                Int rem_c = rem_b - c * c * f.s;
                Int dmax = isqrt(rem_c / f.t);
                for (Int d = (a > 0 || b > 0 || c > 0 ? -dmax : Int(0)); d <= dmax; ++d) {
                    if (++examined > budget.max_candidates) throw BudgetExceededError(examined);
                    if (a == 0 && b == 0 && c == 0 && d < 0) continue;
                    if (!integral_quarters(f, a, b, c, d)) continue;
                    visit(a, b, c, d);
                }
            }
        }
    }
}

}  // namespace

std::vector<Element> square_parts(const Element& alpha, SearchBudget budget) {
    if (!alpha.is_totally_nonnegative() || !alpha.is_integral())
        throw std::invalid_argument("square_parts expects an integral totally nonnegative element");
    const FieldSpec& f = alpha.field();
    Rat tr = alpha.trace();
    Int tbound = numerator(tr) / denominator(tr);
    std::vector<Element> out;
    scan_square_roots(f, tbound, budget, [&](const Int& a, const Int& b, const Int& c, const Int& d) {
        Element omega = Element::from_quarters(f, a, b, c, d);
        Element sq = omega * omega;
        if ((alpha - sq).is_totally_nonnegative()) out.push_back(sq);
    });
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) { return x.lex_less(y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Element> rho_candidates(const Element& li, const Element& lj, SearchBudget budget) {
    if (!li.is_totally_positive() || !lj.is_totally_positive() || !li.is_integral() ||
        !lj.is_integral())
        throw std::invalid_argument("rho_candidates expects integral totally positive entries");
    const FieldSpec& f = li.field();
    Element prod = li * lj;
    Rat tr = prod.trace();
    Int tbound = numerator(tr) / denominator(tr);
    std::vector<Element> out;
    scan_square_roots(f, tbound, budget, [&](const Int& a, const Int& b, const Int& c, const Int& d) {
        Element omega = Element::from_quarters(f, a, b, c, d);
        if ((prod - omega * omega).is_totally_nonnegative()) {
            out.push_back(omega);
            if (!omega.is_zero()) out.push_back(-omega);
        }
    });
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) { return x.lex_less(y); });
    return out;
}

bool odd_divisor_square_filter(const Element& alpha, const FieldSpec& f) {
    auto n1 = alpha.quadratic_subfield();
    if (!n1 || !alpha.is_integral())
        throw std::invalid_argument("filter expects an integral element of a quadratic subfield");
    int64_t g = 0;
    if (*n1 == f.m) g = f.m0;
    else if (*n1 == f.s) g = f.s0;
    else g = f.t0;
    for (int64_t p = 3; p * p <= g; p += 2)
        if (g % p == 0) {
            Element quot = Element::make(f, alpha.num_a(), alpha.num_b(), alpha.num_c(),
                                         alpha.num_d(), alpha.den() * p);
            if (!quot.is_integral()) return false;
            while (g % p == 0) g /= p;
        }
    if (g % 2 == 0) g /= 2;
    if (g > 1) {
        Element quot =
            Element::make(f, alpha.num_a(), alpha.num_b(), alpha.num_c(), alpha.num_d(), alpha.den() * g);
        if (!quot.is_integral()) return false;
    }
    return true;
}

}  // namespace biq
