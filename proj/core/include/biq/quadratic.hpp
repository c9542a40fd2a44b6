#pragma once

#include <cstdint>
#include <vector>

#include "biq/element.hpp"
#include "biq/field.hpp"
#include "biq/int.hpp"

namespace biq {

struct VariantUndefinedError : std::invalid_argument {
    explicit VariantUndefinedError(const std::string& what) : std::invalid_argument(what) {}
};

/// (u + v*sqrt(n))/2 in the real quadratic field Q(sqrt n).
struct QuadElem {
    int64_t n = 0;
    Int u, v;

    Int trace() const { return u; }                        // over Q(sqrt n)
    Rat qnorm() const { return Rat(u * u - v * v * n, 4); }  // over Q(sqrt n)
    QuadElem conj() const { return {n, u, -v}; }
    QuadElem operator+(const QuadElem& o) const { return {n, u + o.u, v + o.v}; }
    QuadElem operator*(const Int& k) const { return {n, u * k, v * k}; }
    bool operator==(const QuadElem& o) const { return n == o.n && u == o.u && v == o.v; }

    Element in_field(const FieldSpec& f) const { return Element::quad_halves(f, n, u, v); }
};

/// Continued fraction [u0; overline(u1..ul)] of -conj(omega_n).
struct CFData {
    Int u0;
    std::vector<Int> period;

    /// u_i of the periodic continuation, i >= 0.
    const Int& term(size_t i) const { return i == 0 ? u0 : period[(i - 1) % period.size()]; }
};

struct QuadData {
    int64_t n = 0;
    bool omega_half = false;  // omega = (1+sqrt n)/2 when n = 1 mod 4, else sqrt n
    CFData cf;
    QuadElem omega;
    QuadElem fundamental_unit;
    int fu_norm = 0;  // +1 or -1
    Int Mk;           // max of the period terms that occur at odd indices

    /// Convergent p_i + q_i omega, i >= -1.
    QuadElem convergent(int64_t i) const;
};

/// Cached per n; safe for concurrent lookup.
const QuadData& quad_data(int64_t n);

/// All totally positive semiconvergents of -conj(omega_n) with quadratic
/// trace at most trace_bound, i.e. every indecomposable of Q(sqrt n) in that
/// trace range.  Sorted by (trace, coefficient).
std::vector<QuadElem> quadratic_indecomposables(int64_t n, const Int& trace_bound);

/// True iff elem equals some convergent p_i + q_i omega_n (i >= -1).
bool is_convergent(int64_t n, const QuadElem& elem);

/// Solvability of x^2 - n y^2 = rhs for rhs in {-1, +2, -2}, decided from the
/// continued-fraction period of sqrt(n).
bool pell_solvable(int64_t n, int rhs);

/// ceil_sqrt(u) + sqrt(u)            (any square-free u > 1)
Element element_M1(const FieldSpec& f, int64_t u);
/// (ceil_sqrt_odd(u) + sqrt(u)) / 2  (requires u = 1 mod 4)
Element element_Mhalf(const FieldSpec& f, int64_t u);
/// The distinguished element for radicand u: M1 when u = 2,3 mod 4, Mhalf
/// when u = 1 mod 4.
Element element_U(const FieldSpec& f, int64_t u);

inline Element element_M(const FieldSpec& f) { return element_U(f, f.m); }
inline Element element_S(const FieldSpec& f) { return element_U(f, f.s); }
inline Element element_T(const FieldSpec& f) { return element_U(f, f.t); }

enum class SubfieldRole { P, Q, R };

/// Sufficient criterion for an indecomposable of the named quadratic subfield
/// to stay indecomposable in K: convergent-plus-size test, the M_k size test,
/// or the unconditional q-case for bases B1..B3.  False means the criterion
/// is silent, not that the element decomposes.
bool theorem22_criterion(const FieldSpec& f, SubfieldRole which, const QuadElem& elem);

}  // namespace biq
