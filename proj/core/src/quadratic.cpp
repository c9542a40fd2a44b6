#include "biq/quadratic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace biq {

namespace {

/// One step of the continued fraction of (P + sqrt(D))/Q; maintains Q | D - P^2.
struct SurdState {
    Int P, Q;
    bool operator<(const SurdState& o) const {
        return P != o.P ? P < o.P : Q < o.Q;
    }
};

CFData continued_fraction_of_minus_conj_omega(int64_t n) {
    // -conj(omega_n) is sqrt(n) for n = 2,3 mod 4 and (sqrt(n)-1)/2 otherwise.
    Int D = n;
    Int sd = isqrt(D);
    SurdState st;
    if (n % 4 == 1) {
        st = {Int(-1), Int(2)};
    } else {
        st = {Int(0), Int(1)};
    }
    CFData cf;
    std::map<SurdState, size_t> seen;
    std::vector<Int> terms;  // u_0, u_1, ...
    for (size_t i = 0;; ++i) {
        Int u = floor_div(st.P + sd, st.Q);
        terms.push_back(u);
        Int Pn = u * st.Q - st.P;
        Int Qn = (D - Pn * Pn) / st.Q;
        st = {Pn, Qn};
        auto [it, fresh] = seen.emplace(st, i + 1);
        if (!fresh) {
            size_t start = it->second;  // preperiod length
            if (start != 1) throw std::logic_error("unexpected preperiod in surd expansion");
            cf.u0 = terms[0];
            cf.period.assign(terms.begin() + 1, terms.end());
            return cf;
        }
    }
}

std::shared_mutex g_quad_mutex;
std::map<int64_t, QuadData> g_quad_cache;

QuadData compute_quad_data(int64_t n) {
    if (n <= 1 || !is_squarefree(n)) throw NotSquarefreeError(n);
    QuadData qd;
    qd.n = n;
    qd.omega_half = (n % 4 == 1);
    qd.omega = qd.omega_half ? QuadElem{n, 1, 1} : QuadElem{n, 0, 2};
    qd.cf = continued_fraction_of_minus_conj_omega(n);

    size_t l = qd.cf.period.size();
    qd.fundamental_unit = qd.convergent(static_cast<int64_t>(l) - 1);
    qd.fu_norm = (l % 2 == 0) ? +1 : -1;

    qd.Mk = 0;
    for (size_t j = 0; j < l; ++j) {
        bool at_odd_index = (l % 2 == 1) || (j % 2 == 0);  // term j sits at indices j+1+kl
        if (at_odd_index) qd.Mk = std::max(qd.Mk, qd.cf.period[j]);
    }
    return qd;
}

}  // namespace

QuadElem QuadData::convergent(int64_t i) const {
    // p_{-1} = 1, q_{-1} = 0, p_0 = u_0, q_0 = 1, p_{i+1} = p_{i-1} + u_{i+1} p_i.
    Int pm = 1, qm = 0;  // index -1
    if (i == -1) return omega_half ? QuadElem{n, 2, 0} : QuadElem{n, 2, 0};
    Int p = cf.u0, q = 1;
    for (int64_t j = 1; j <= i; ++j) {
        Int pn = pm + cf.term(static_cast<size_t>(j)) * p;
        Int qn = qm + cf.term(static_cast<size_t>(j)) * q;
        pm = std::move(p);
        qm = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    // p + q*omega as (u + v sqrt n)/2.
    if (omega_half) return {n, 2 * p + q, q};
    return {n, 2 * p, 2 * q};
}

const QuadData& quad_data(int64_t n) {
    {
        std::shared_lock lock(g_quad_mutex);
        auto it = g_quad_cache.find(n);
        if (it != g_quad_cache.end()) return it->second;
    }
    QuadData qd = compute_quad_data(n);
    std::unique_lock lock(g_quad_mutex);
    return g_quad_cache.emplace(n, std::move(qd)).first->second;
}

std::vector<QuadElem> quadratic_indecomposables(int64_t n, const Int& trace_bound) {
    const QuadData& qd = quad_data(n);
    std::vector<QuadElem> out;
    for (int64_t i = -1;; i += 2) {
        QuadElem ai = qd.convergent(i);
        if (ai.trace() > trace_bound) break;
        QuadElem an = qd.convergent(i + 1);
        Int kmax = qd.cf.term(static_cast<size_t>(i + 2));
        for (Int k = 0; k <= kmax; ++k) {
            QuadElem cand = ai + an * k;
            if (cand.trace() > trace_bound) break;
            if (k == kmax && cand.trace() <= trace_bound) {
                // equals convergent i+2; picked up as the next row's k = 0
                break;
            }
            out.push_back(cand);
        }
    }
    // The indecomposables are closed under conjugation: the conjugate of a
    // semiconvergent is the corresponding element of the descending unit
    // orbit, which the i >= -1 ladder does not reach.
    size_t direct = out.size();
    for (size_t i = 0; i < direct; ++i) out.push_back(out[i].conj());
    std::sort(out.begin(), out.end(), [](const QuadElem& a, const QuadElem& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_convergent(int64_t n, const QuadElem& elem) {
    if (elem.n != n) return false;
    const QuadData& qd = quad_data(n);
    for (int64_t i = -1;; ++i) {
        QuadElem c = qd.convergent(i);
        if (c == elem) return true;
        if (i >= 0 && c.trace() > elem.trace()) return false;
    }
}

bool pell_solvable(int64_t n, int rhs) {
    if (n <= 1 || !is_squarefree(n)) throw NotSquarefreeError(n);
    if (rhs != -1 && rhs != 2 && rhs != -2) throw std::invalid_argument("rhs must be -1, +2 or -2");
    if (n == 2) return true;  // (1,1), (2,1), (0,1)
    if (n == 3) {
        // x^2+y^2 = 3 mod 4 is impossible, and x^2 = 2 mod 3 is impossible;
        // (1,1) solves x^2 - 3y^2 = -2.
        return rhs == -2;
    }
    // For n >= 5, |rhs| < sqrt(n), so any solution appears among convergents
    // of sqrt(n): p_{i-1}^2 - n q_{i-1}^2 = (-1)^i Q_i.
    Int D = n, sd = isqrt(D);
    Int P = 0, Q = 1;
    size_t l = 0;
    {
        // period length of sqrt(n)
        Int P1, Q1;
        Int Pc = 0, Qc = 1;
        for (size_t i = 0;; ++i) {
            Int u = floor_div(Pc + sd, Qc);
            Int Pn = u * Qc - Pc;
            Int Qn = (D - Pn * Pn) / Qc;
            Pc = Pn;
            Qc = Qn;
            if (i == 0) {
                P1 = Pc;
                Q1 = Qc;
            } else if (Pc == P1 && Qc == Q1) {
                l = i;
                break;
            }
        }
    }
    for (size_t i = 1; i <= 2 * l; ++i) {
        Int u = floor_div(P + sd, Q);
        Int Pn = u * Q - P;
        Int Qn = (D - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        Int val = (i % 2 == 0) ? Q : -Q;
        if (val == rhs) return true;
    }
    return false;
}

Element element_M1(const FieldSpec& f, int64_t u) {
    if (!f.contains_radicand(u)) throw std::invalid_argument("radicand not in field");
    return Element::quad_halves(f, u, Int(2 * ceil_sqrt_strict(u)), 2);
}

Element element_Mhalf(const FieldSpec& f, int64_t u) {
    if (!f.contains_radicand(u)) throw std::invalid_argument("radicand not in field");
    if (u % 4 != 1)
        throw VariantUndefinedError("half variant undefined for radicand " + std::to_string(u));
    return Element::quad_halves(f, u, Int(ceil_sqrt_odd(u)), 1);
}

Element element_U(const FieldSpec& f, int64_t u) {
    return (u % 4 == 1) ? element_Mhalf(f, u) : element_M1(f, u);
}

bool theorem22_criterion(const FieldSpec& f, SubfieldRole which, const QuadElem& elem) {
    int64_t u = which == SubfieldRole::P ? f.p : which == SubfieldRole::Q ? f.q : f.r;
    if (elem.n != u) throw std::invalid_argument("element lies in a different subfield");
    const QuadData& qd = quad_data(u);

    bool b123 = f.basis == BasisClass::B1 || f.basis == BasisClass::B2 || f.basis == BasisClass::B3;
    if (which == SubfieldRole::Q && b123) return true;

    int64_t other = (which == SubfieldRole::R) ? f.p : f.r;  // sqrt(other) must dominate
    if (Int(other) > qd.Mk * qd.Mk * u) return true;
    if (other > u && is_convergent(u, elem)) return true;
    return false;
}

}  // namespace biq
