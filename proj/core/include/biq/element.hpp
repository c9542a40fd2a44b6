#pragma once

#include <array>
#include <optional>
#include <string>

#include "biq/field.hpp"
#include "biq/int.hpp"
#include "biq/sign.hpp"

namespace biq {

enum class EmbeddingId { Sigma1 = 0, Sigma2 = 1, Sigma3 = 2, Sigma4 = 3 };

/// An element of K = Q(sqrt m, sqrt s) stored exactly as
/// (a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / den with integer numerators and
/// den > 0, fully reduced.  Ring elements of O_K always admit den | 4.
class Element {
public:
    Element() = default;

    static Element zero(const FieldSpec& f) { return from_quarters(f, 0, 0, 0, 0); }
    static Element integer(const FieldSpec& f, const Int& n) { return make(f, n, 0, 0, 0, 1); }
    static Element rational(const FieldSpec& f, const Rat& x);
    /// (a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / 4
    static Element from_quarters(const FieldSpec& f, Int a, Int b, Int c, Int d);
    /// (a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / den
    static Element make(const FieldSpec& f, Int a, Int b, Int c, Int d, Int den);
    /// coef * sqrt(n) for one of the three radicands of f.
    static Element sqrt_radicand(const FieldSpec& f, int64_t n);
    /// (u + v*sqrt(n)) / 2 for one of the three radicands of f.
    static Element quad_halves(const FieldSpec& f, int64_t n, const Int& u, const Int& v);

    const FieldSpec& field() const { return field_; }
    const Int& num_a() const { return a_; }
    const Int& num_b() const { return b_; }
    const Int& num_c() const { return c_; }
    const Int& num_d() const { return d_; }
    const Int& den() const { return den_; }

    /// Numerators over the canonical denominator 4.  Throws unless den | 4.
    std::array<Int, 4> quarters() const;

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    /// Radicand n with nonzero coordinate if the element lies in exactly one
    /// quadratic subfield Q(sqrt n) and is irrational; nullopt otherwise.
    std::optional<int64_t> quadratic_subfield() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element operator*(const Int& k) const;
    /// Exact field division; throws on division by zero.
    Element operator/(const Element& o) const;

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }
    /// Lexicographic on the reduced coordinate tuple; total order used for
    /// deterministic output.
    bool lex_less(const Element& o) const;

    Element apply_embedding(EmbeddingId e) const;
    Element conjugate_in(int64_t n) const;  // the embedding flipping sqrt(n) (and its partners)

    Rat trace() const;
    Rat norm() const;

    SignValue sign_at(EmbeddingId e) const;
    bool is_totally_positive() const;
    /// Totally positive or the zero element.
    bool is_totally_nonnegative() const;

    /// Membership in O_K per the integral-basis pattern of the field.
    bool is_integral() const;

    /// Canonical text form "(a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t))/4" when
    /// den | 4 (scaled to 4), else the same shape over the reduced den.
    std::string str() const;

private:
    FieldSpec field_;
    Int a_, b_, c_, d_;
    Int den_ = 1;

    void reduce();
};

/// Parses an element of f.  Accepts the canonical quadruple form with
/// denominator 1, 2 or 4 as well as free sums like "3/2 + 1/2*sqrt(21)" or
/// "(7 + 3*sqrt(2) + sqrt(21) + sqrt(42))/2".
Element parse_element(const FieldSpec& f, const std::string& text);

}  // namespace biq
