#include "biq/forms.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace biq {

FormMatrix FormMatrix::diagonal(const std::vector<Element>& diag) {
    int n = static_cast<int>(diag.size());
    std::vector<Element> e(static_cast<size_t>(n) * n, Element::zero(diag.front().field()));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = diag[i];
    return from_entries(n, std::move(e));
}

FormMatrix FormMatrix::from_entries(int n, std::vector<Element> entries) {
    if (n <= 0 || entries.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("bad Gram matrix shape");
    const FieldSpec& f = entries.front().field();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Element& x = entries[static_cast<size_t>(i) * n + j];
            if (x.field() != f) throw FieldMismatchError();
            if (!x.is_integral()) throw std::invalid_argument("Gram matrix entry not integral");
            if (x != entries[static_cast<size_t>(j) * n + i])
                throw std::invalid_argument("Gram matrix not symmetric");
        }
    FormMatrix m;
    m.n_ = n;
    m.entries_ = std::move(entries);
    return m;
}

Element bilinear(const FormMatrix& Q, const std::vector<Element>& v, const std::vector<Element>& w) {
    int n = Q.arity();
    if (v.size() != static_cast<size_t>(n) || w.size() != static_cast<size_t>(n))
        throw std::invalid_argument("vector arity mismatch");
    Element acc = Element::zero(Q.field());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc = acc + Q.at(i, j) * v[i] * w[j];
    return acc;
}

Element evaluate(const FormMatrix& Q, const std::vector<Element>& v) { return bilinear(Q, v, v); }

namespace {

Element det_block(const FormMatrix& Q, int n) {
    const FieldSpec& f = Q.field();
    std::vector<int> cols(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) cols[static_cast<size_t>(i)] = i;
    // Cofactor expansion; n <= 4 in every caller.
    struct Rec {
        const FormMatrix& Q;
        const FieldSpec& f;
        Element run(int row, std::vector<int>& cs) {
            if (cs.size() == 1) return Q.at(row, cs[0]);
            Element acc = Element::zero(f);
            for (size_t j = 0; j < cs.size(); ++j) {
                int col = cs[j];
                if (Q.at(row, col).is_zero()) continue;
                std::vector<int> rest;
                rest.reserve(cs.size() - 1);
                for (size_t k = 0; k < cs.size(); ++k)
                    if (k != j) rest.push_back(cs[k]);
                Element sub = run(row + 1, rest);
                Element term = Q.at(row, col) * sub;
                acc = (j % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        }
    } rec{Q, f};
    return rec.run(0, cols);
}

}  // namespace

Element det(const FormMatrix& Q) { return det_block(Q, Q.arity()); }

bool is_tp_definite(const FormMatrix& Q) {
    for (int k = 1; k <= Q.arity(); ++k) {
        std::vector<Element> sub;
        sub.reserve(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.push_back(Q.at(i, j));
        if (!det(FormMatrix::from_entries(k, std::move(sub))).is_totally_positive()) return false;
    }
    return true;
}

namespace {

/// Rational bracket of sigma_e(x) with sqrt bounds at precision k.
std::pair<Rat, Rat> emb_bounds(const Element& x, int e, unsigned k) {
    const FieldSpec& f = x.field();
    const auto& sg = f.emb[e];
    Int b = sg[0] > 0 ? x.num_b() : -x.num_b();
    Int c = sg[1] > 0 ? x.num_c() : -x.num_c();
    Int d = sg[2] > 0 ? x.num_d() : -x.num_d();
    Int lo = x.num_a() * (Int(1) << k), hi = lo;
    auto acc = [&](const Int& coef, int64_t n) {
        if (coef == 0) return;
        Int l = sqrt_lower_scaled(n, k);
        if (coef > 0) {
            lo += coef * l;
            hi += coef * (l + 1);
        } else {
            lo += coef * (l + 1);
            hi += coef * l;
        }
    };
    acc(b, f.m);
    acc(c, f.s);
    acc(d, f.t);
    Int scale = x.den() * (Int(1) << k);
    return {Rat(lo, scale), Rat(hi, scale)};
}

Rat emb_lower_positive(const Element& x, int e) {
    // x is known totally positive; refine until the lower bound clears zero.
    for (unsigned k = 24;; k *= 2) {
        auto [lo, hi] = emb_bounds(x, e, k);
        if (lo > 0) return lo;
    }
}

Int rat_floor(const Rat& q) { return floor_div(numerator(q), denominator(q)); }

/// All integral x with sum_e sigma_e(x)^2 <= bound, i.e. quarter coordinates
/// with a^2 + b^2 m + c^2 s + d^2 t <= 4*bound.  Lexicographic order.
std::vector<Element> ellipsoid_candidates(const FieldSpec& f, const Rat& bound,
                                          SearchBudget budget) {
    std::vector<Element> out;
    Int lim = rat_floor(4 * bound);
    if (lim < 0) return out;
    uint64_t examined = 0;
    Int amax = isqrt(lim);
    for (Int a = -amax; a <= amax; ++a) {
        Int rem_a = lim - a * a;
        Int bmax = isqrt(rem_a / f.m);
        for (Int b = -bmax; b <= bmax; ++b) {
            Int rem_b = rem_a - b * b * f.m;
            Int cmax = isqrt(rem_b / f.s);
            for (Int c = -cmax; c <= cmax; ++c) {
                Int rem_c = rem_b - c * c * f.s;
                Int dmax = isqrt(rem_c / f.t);
                for (Int d = -dmax; d <= dmax; ++d) {
                    if (++examined > budget.max_candidates) throw BudgetExceededError(examined);
                    if (integral_quarters(f, a, b, c, d))
                        out.push_back(Element::from_quarters(f, a, b, c, d));
                }
            }
        }
    }
    return out;
}

/// Integral roots of A x^2 + B x + C = 0.
std::vector<Element> quadratic_integral_roots(const Element& A, const Element& B, const Element& C) {
    std::vector<Element> roots;
    const FieldSpec& f = A.field();
    Element disc = B * B - A * C * Int(4);
    if (!disc.is_totally_nonnegative()) return roots;
    auto delta = sqrt_in_ring(disc);
    if (!delta) return roots;
    Element twoA = A * Int(2);
    for (int sgn : {+1, -1}) {
        Element x = ((sgn > 0 ? *delta : -*delta) - B) / twoA;
        if (x.is_integral()) {
            if (roots.empty() || roots.front() != x) roots.push_back(x);
        }
        if (delta->is_zero()) break;
    }
    (void)f;
    return roots;
}

template <typename OnSolution>
RepStatus representation_scan(const FormMatrix& Q, const Element& target, SearchBudget budget,
                              OnSolution on_solution) {
    const FieldSpec& f = Q.field();
    int n = Q.arity();
    if (n < 1 || n > 3) throw std::invalid_argument("representation search supports arity 1..3");
    if (!is_tp_definite(Q)) throw std::invalid_argument("form is not totally positive definite");
    if (!target.is_totally_positive() || !target.is_integral())
        throw std::invalid_argument("target must be integral and totally positive");

    if (n == 1) {
        Element q = target / Q.at(0, 0);
        if (q.is_integral() && q.is_totally_nonnegative()) {
            if (auto r = sqrt_in_ring(q)) {
                if (!on_solution({*r})) return RepStatus::Found;
                if (!r->is_zero() && !on_solution({-*r})) return RepStatus::Found;
            }
        }
        return RepStatus::Absent;
    }

    // Per-embedding ellipsoid radius  R_e = sigma_e(target) / lambda_min(sigma_e Q).
    Element D = det(Q);
    Rat total_R = 0;
    for (int e = 0; e < 4; ++e) {
        Rat det_lb = emb_lower_positive(D, e);
        Rat lambda_max_ub = 0;
        unsigned k = 24;
        for (int i = 0; i < n; ++i) {
            Rat row = 0;
            for (int j = 0; j < n; ++j) {
                auto [lo, hi] = emb_bounds(Q.at(i, j), e, k);
                Rat mag = abs(lo) > abs(hi) ? abs(lo) : abs(hi);
                row += mag;
            }
            if (row > lambda_max_ub) lambda_max_ub = row;
        }
        Rat lambda_min_lb = det_lb;
        for (int i = 1; i < n; ++i) lambda_min_lb /= lambda_max_ub;
        auto [tlo, thi] = emb_bounds(target, e, k);
        total_R += thi / lambda_min_lb;
    }

    auto cands = ellipsoid_candidates(f, total_R, budget);
    uint64_t examined = 0;

    if (n == 2) {
        for (const Element& v0 : cands) {
            if (++examined > budget.max_candidates) return RepStatus::BudgetExceeded;
            Element B = Q.at(0, 1) * v0 * Int(2);
            Element C = Q.at(0, 0) * v0 * v0 - target;
            for (const Element& x : quadratic_integral_roots(Q.at(1, 1), B, C))
                if (!on_solution({v0, x})) return RepStatus::Found;
        }
        return RepStatus::Absent;
    }

    for (const Element& v0 : cands) {
        for (const Element& v1 : cands) {
            if (++examined > budget.max_candidates) return RepStatus::BudgetExceeded;
            Element B = (Q.at(0, 2) * v0 + Q.at(1, 2) * v1) * Int(2);
            Element C = Q.at(0, 0) * v0 * v0 + Q.at(0, 1) * v0 * v1 * Int(2) +
                        Q.at(1, 1) * v1 * v1 - target;
            for (const Element& x : quadratic_integral_roots(Q.at(2, 2), B, C))
                if (!on_solution({v0, v1, x})) return RepStatus::Found;
        }
    }
    return RepStatus::Absent;
}

}  // namespace

RepResult represents(const FormMatrix& Q, const Element& target, SearchBudget budget) {
    RepResult res;
    res.status = representation_scan(Q, target, budget, [&](std::vector<Element> v) {
        res.vec = std::move(v);
        return false;  // stop
    });
    if (!res.vec.empty() && res.status != RepStatus::BudgetExceeded) res.status = RepStatus::Found;
    return res;
}

RepAllResult represent_all(const FormMatrix& Q, const Element& target, SearchBudget budget) {
    RepAllResult res;
    res.status = representation_scan(Q, target, budget, [&](std::vector<Element> v) {
        res.vecs.push_back(std::move(v));
        return true;  // keep going
    });
    if (!res.vecs.empty() && res.status != RepStatus::BudgetExceeded) res.status = RepStatus::Found;
    return res;
}

std::string to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::NoSingularMatrix: return "no-singular-matrix";
        case VerdictKind::SingularWitness: return "singular-witness";
        case VerdictKind::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

bool in_first_subfield(const Element& x) { return x.num_c() == 0 && x.num_d() == 0; }

FormMatrix assemble(const FieldSpec& f, const std::array<Element, 4>& lam,
                    const std::array<Element, 6>& rho) {
    // rho order: (01),(02),(03),(12),(13),(23)
    std::vector<Element> e(16, Element::zero(f));
    auto put = [&](int i, int j, const Element& x) {
        e[static_cast<size_t>(i) * 4 + j] = x;
        e[static_cast<size_t>(j) * 4 + i] = x;
    };
    for (int i = 0; i < 4; ++i) put(i, i, lam[static_cast<size_t>(i)]);
    put(0, 1, rho[0]);
    put(0, 2, rho[1]);
    put(0, 3, rho[2]);
    put(1, 2, rho[3]);
    put(1, 3, rho[4]);
    put(2, 3, rho[5]);
    return FormMatrix::from_entries(4, std::move(e));
}

Element det3(const FieldSpec& f, const Element& a00, const Element& a01, const Element& a02,
             const Element& a11, const Element& a12, const Element& a22) {
    Element t = a00 * (a11 * a22 - a12 * a12);
    t = t - a01 * (a01 * a22 - a12 * a02);
    t = t + a02 * (a01 * a12 - a11 * a02);
    (void)f;
    return t;
}

}  // namespace

EscalationRun escalate_quadruple(const FieldSpec& f, const std::array<Element, 4>& lambda,
                                 SearchBudget budget, int workers) {
    EscalationRun run;
    run.field = f;
    run.diagonal = lambda;
    for (const auto& l : lambda)
        if (!l.is_totally_positive() || !l.is_integral())
            throw std::invalid_argument("escalation diagonal must be integral and totally positive");

    static constexpr int PI[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int PJ[6] = {1, 2, 3, 2, 3, 3};
    for (int p = 0; p < 6; ++p)
        run.rho_sets[static_cast<size_t>(p)] =
            rho_candidates(lambda[static_cast<size_t>(PI[p])], lambda[static_cast<size_t>(PJ[p])], budget);

    const auto& S = run.rho_sets;
    uint64_t total = 1;
    bool overflow = false;
    for (const auto& s : S) {
        if (s.empty()) throw std::logic_error("empty rho candidate set");
        if (total > budget.max_candidates / s.size()) overflow = true;
        total *= s.size();
        if (overflow) break;
    }
    if (overflow || total > budget.max_candidates) {
        run.verdict.kind = VerdictKind::BudgetExceeded;
        return run;
    }

    // Fast path: when everything except lambda4 lies in Q(sqrt m) and lambda4
    // does not, det G = Delta*lambda4 + (a value in Q(sqrt m)) with Delta the
    // leading 3x3 minor, so Delta != 0 rules out singularity for the whole
    // (rho14, rho24, rho34) block at once.
    bool fast_ok = in_first_subfield(lambda[0]) && in_first_subfield(lambda[1]) &&
                   in_first_subfield(lambda[2]) && !in_first_subfield(lambda[3]);
    for (int p = 0; p < 6 && fast_ok; ++p)
        for (const auto& x : S[static_cast<size_t>(p)])
            if (!in_first_subfield(x)) {
                fast_ok = false;
                break;
            }

    const uint64_t n03 = S[2].size(), n13 = S[4].size(), n23 = S[5].size();
    const uint64_t inner_block = n03 * n13 * n23;
    const uint64_t outer_total = S[0].size() * S[1].size() * S[3].size();

    struct WitnessHit {
        uint64_t index;
        std::array<Element, 6> rho;
    };
    std::atomic<uint64_t> best_index{UINT64_MAX};
    std::mutex best_mutex;
    std::optional<WitnessHit> best_hit;
    std::atomic<uint64_t> examined_total{0};

    int nworkers = std::max(1, workers);
    auto work = [&](uint64_t lo, uint64_t hi) {
        uint64_t examined = 0;
        Element two = Element::integer(f, 2);
        for (uint64_t oi = lo; oi < hi; ++oi) {
            if (oi * inner_block >= best_index.load(std::memory_order_relaxed)) break;
            uint64_t rest = oi;
            const Element& r01 = S[0][static_cast<size_t>(rest % S[0].size())];
            rest /= S[0].size();
            const Element& r02 = S[1][static_cast<size_t>(rest % S[1].size())];
            rest /= S[1].size();
            const Element& r12 = S[3][static_cast<size_t>(rest)];

            Element delta = det3(f, lambda[0], r01, r02, lambda[1], r12, lambda[2]);
            if (fast_ok && !delta.is_zero()) {
                examined += inner_block;
                continue;
            }
            for (uint64_t i03 = 0; i03 < n03; ++i03) {
                const Element& r03 = S[2][static_cast<size_t>(i03)];
                for (uint64_t i13 = 0; i13 < n13; ++i13) {
                    const Element& r13 = S[4][static_cast<size_t>(i13)];
                    // det as a quadratic polynomial in the (2,3) entry.
                    auto det_at = [&](const Element& x) {
                        return det(assemble(f, lambda, {r01, r02, r03, r12, r13, x}));
                    };
                    Element zero = Element::zero(f), one = Element::integer(f, 1);
                    Element D0 = det_at(zero), Dp = det_at(one), Dm = det_at(-one);
                    Element P1 = (Dp - Dm) / two;
                    Element P2 = (Dp + Dm) / two - D0;
                    for (uint64_t i23 = 0; i23 < n23; ++i23) {
                        const Element& x = S[5][static_cast<size_t>(i23)];
                        ++examined;
                        Element val = (P2 * x + P1) * x + D0;
                        if (val.is_zero()) {
                            uint64_t idx = ((oi * n03 + i03) * n13 + i13) * n23 + i23;
                            uint64_t cur = best_index.load();
                            while (idx < cur && !best_index.compare_exchange_weak(cur, idx)) {
                            }
                            if (idx <= best_index.load()) {
                                std::lock_guard lock(best_mutex);
                                if (!best_hit || idx < best_hit->index)
                                    best_hit = WitnessHit{idx, {r01, r02, r03, r12, r13, x}};
                            }
                        }
                    }
                }
            }
        }
        examined_total += examined;
    };

    if (nworkers == 1 || outer_total < 2) {
        work(0, outer_total);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = (outer_total + nworkers - 1) / static_cast<uint64_t>(nworkers);
        for (int w = 0; w < nworkers; ++w) {
            uint64_t lo = chunk * static_cast<uint64_t>(w);
            uint64_t hi = std::min(outer_total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    if (best_hit) {
        run.verdict.kind = VerdictKind::SingularWitness;
        run.verdict.witness = assemble(f, lambda, best_hit->rho);
        run.candidates_examined = best_hit->index + 1;
    } else {
        run.verdict.kind = VerdictKind::NoSingularMatrix;
        run.candidates_examined = total;
    }
    return run;
}

std::string to_string(WitnessBranch b) {
    switch (b) {
        case WitnessBranch::Table1: return "table1";
        case WitnessBranch::M2Family: return "m2-escalation";
        case WitnessBranch::M5Family: return "m5-escalation";
        case WitnessBranch::CaseIUnits: return "case-i-units";
        case WitnessBranch::CaseIINonsquare2Eps: return "case-ii-nonsquare-2eps";
        case WitnessBranch::CaseIISquare2EpsM: return "case-ii-square-2eps-M";
        case WitnessBranch::CaseIISquare2EpsS: return "case-ii-square-2eps-S";
        case WitnessBranch::CaseIIIM65: return "case-iii-m65";
        case WitnessBranch::CaseIIIM85: return "case-iii-m85";
        case WitnessBranch::CaseIIIGeneric: return "case-iii-generic";
    }
    return "?";
}

const std::vector<std::pair<int64_t, int64_t>>& table1_fields() {
    static const std::vector<std::pair<int64_t, int64_t>> rows{
        {2, 3}, {2, 5}, {2, 21}, {2, 33}, {3, 5}, {5, 13}, {5, 17}};
    return rows;
}

namespace {

std::array<Element, 4> table1_diagonal(const FieldSpec& f) {
    static const std::map<std::pair<int64_t, int64_t>, std::array<const char*, 3>> rows{
        {{2, 3},
         {"4+5/2*sqrt(2)+2*sqrt(3)+3/2*sqrt(6)", "3+sqrt(6)", "3-3/2*sqrt(2)-sqrt(3)+1/2*sqrt(6)"}},
        {{2, 5}, {"2+sqrt(2)", "3", "5/2+1/2*sqrt(2)+1/2*sqrt(5)+1/2*sqrt(10)"}},
        {{2, 21}, {"2+sqrt(2)", "5/2+1/2*sqrt(21)", "5+5/2*sqrt(2)+sqrt(21)+1/2*sqrt(42)"}},
        {{2, 33}, {"2+sqrt(2)", "7/2+1/2*sqrt(33)", "6+sqrt(33)"}},
        {{3, 5},
         {"2+sqrt(3)", "5/2+1/2*sqrt(3)+1/2*sqrt(5)+1/2*sqrt(15)", "3+1/2*sqrt(3)+1/2*sqrt(15)"}},
        {{5, 13}, {"5/2+1/2*sqrt(13)", "4+sqrt(13)", "13/4+3/4*sqrt(5)+3/4*sqrt(13)+1/4*sqrt(65)"}},
        {{5, 17},
         {"5/2+1/2*sqrt(17)", "29/2+7/2*sqrt(17)", "13/4+1/4*sqrt(5)+1/4*sqrt(17)+1/4*sqrt(85)"}}};
    auto it = rows.find({f.m, f.s});
    if (it == rows.end()) throw std::logic_error("no bespoke diagonal for this field");
    return {Element::integer(f, 1), parse_element(f, it->second[0]), parse_element(f, it->second[1]),
            parse_element(f, it->second[2])};
}

}  // namespace

WitnessQuadruple witness_quadruple(const FieldSpec& f) { return witness_quadruple(f, unit_report(f)); }

WitnessQuadruple witness_quadruple(const FieldSpec& f, const UnitReport& units) {
    Element one = Element::integer(f, 1);
    auto is_table1 = [&] {
        for (const auto& [m, s] : table1_fields())
            if (f.m == m && f.s == s) return true;
        return false;
    }();
    if (is_table1) return {table1_diagonal(f), WitnessBranch::Table1, false};
    if (f.m == 2)
        return {{one, element_M(f), Element::integer(f, 3), element_S(f)}, WitnessBranch::M2Family,
                false};
    if (f.m == 5)
        return {{one, Element::integer(f, 2), parse_element(f, "6+sqrt(5)"), element_S(f)},
                WitnessBranch::M5Family, false};

    if (units.unit_case == UnitCase::CaseI) {
        auto [i, j] = *units.case1_pair;
        const Element& e1 = units.products[static_cast<size_t>(i)];
        const Element& e2 = units.products[static_cast<size_t>(j)];
        return {{one, e1, e2, e1 * e2}, WitnessBranch::CaseIUnits, true};
    }
    if (units.unit_case == UnitCase::CaseII) {
        const Element& eps = units.products[static_cast<size_t>(*units.case2_index)];
        if (!*units.case2_two_eps_square)
            return {{one, eps, Element::integer(f, 2), eps * Int(2)},
                    WitnessBranch::CaseIINonsquare2Eps, true};
        if (f.m == 3) {
            Element S = element_S(f);
            return {{one, eps, S, eps * S}, WitnessBranch::CaseIISquare2EpsS, true};
        }
        Element M = element_M(f);
        return {{one, eps, M, eps * M}, WitnessBranch::CaseIISquare2EpsM, true};
    }

    Element two = Element::integer(f, 2), five = Element::integer(f, 5);
    if (f.m == 65)
        return {{one, two, five, parse_element(f, "(25+3*sqrt(65))/2")}, WitnessBranch::CaseIIIM65,
                false};
    if (f.m == 85)
        return {{one, two, five, element_M1(f, 85)}, WitnessBranch::CaseIIIM85, false};
    return {{one, two, five, element_M(f)}, WitnessBranch::CaseIIIGeneric, false};
}

}  // namespace biq
