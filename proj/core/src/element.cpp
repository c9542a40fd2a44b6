#include "biq/element.hpp"

#include <cctype>
#include <sstream>

namespace biq {

namespace {

Int mod4(const Int& x) { return ((x % 4) + 4) % 4; }
Int mod2(const Int& x) { return ((x % 2) + 2) % 2; }

}  // namespace

void Element::reduce() {
    if (den_ < 0) {
        den_ = -den_;
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
    Int g = gcd(gcd(abs(a_), abs(b_)), gcd(abs(c_), abs(d_)));
    g = gcd(g, den_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
        d_ /= g;
        den_ /= g;
    }
    if (den_ == 0) throw std::domain_error("zero denominator");
}

Element Element::make(const FieldSpec& f, Int a, Int b, Int c, Int d, Int den) {
    Element e;
    e.field_ = f;
    e.a_ = std::move(a);
    e.b_ = std::move(b);
    e.c_ = std::move(c);
    e.d_ = std::move(d);
    e.den_ = std::move(den);
    e.reduce();
    return e;
}

Element Element::from_quarters(const FieldSpec& f, Int a, Int b, Int c, Int d) {
    return make(f, std::move(a), std::move(b), std::move(c), std::move(d), 4);
}

Element Element::rational(const FieldSpec& f, const Rat& x) {
    return make(f, numerator(x), 0, 0, 0, denominator(x));
}

Element Element::sqrt_radicand(const FieldSpec& f, int64_t n) {
    if (!f.contains_radicand(n)) throw std::invalid_argument("sqrt radicand not in field");
    return make(f, 0, n == f.m ? 1 : 0, n == f.s ? 1 : 0, n == f.t ? 1 : 0, 1);
}

Element Element::quad_halves(const FieldSpec& f, int64_t n, const Int& u, const Int& v) {
    if (!f.contains_radicand(n)) throw std::invalid_argument("radicand not in field");
    return make(f, u, n == f.m ? v : 0, n == f.s ? v : 0, n == f.t ? v : 0, 2);
}

std::array<Int, 4> Element::quarters() const {
    if (4 % den_ != 0) throw std::domain_error("element does not lie over denominator 4");
    Int k = 4 / den_;
    return {a_ * k, b_ * k, c_ * k, d_ * k};
}

std::optional<int64_t> Element::quadratic_subfield() const {
    int nz = (b_ != 0) + (c_ != 0) + (d_ != 0);
    if (nz != 1) return std::nullopt;
    if (b_ != 0) return field_.m;
    if (c_ != 0) return field_.s;
    return field_.t;
}

Element Element::operator+(const Element& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    return make(field_, a_ * o.den_ + o.a_ * den_, b_ * o.den_ + o.b_ * den_,
                c_ * o.den_ + o.c_ * den_, d_ * o.den_ + o.d_ * den_, den_ * o.den_);
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return make(field_, -a_, -b_, -c_, -d_, den_); }

Element Element::operator*(const Element& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    const Int &a1 = a_, &b1 = b_, &c1 = c_, &d1 = d_;
    const Int &a2 = o.a_, &b2 = o.b_, &c2 = o.c_, &d2 = o.d_;
    // sqrt(m)sqrt(s) = t0 sqrt(t), sqrt(m)sqrt(t) = s0 sqrt(s), sqrt(s)sqrt(t) = m0 sqrt(m)
    Int A = a1 * a2 + b1 * b2 * field_.m + c1 * c2 * field_.s + d1 * d2 * field_.t;
    Int B = a1 * b2 + b1 * a2 + (c1 * d2 + d1 * c2) * field_.m0;
    Int C = a1 * c2 + c1 * a2 + (b1 * d2 + d1 * b2) * field_.s0;
    Int D = a1 * d2 + d1 * a2 + (b1 * c2 + c1 * b2) * field_.t0;
    return make(field_, std::move(A), std::move(B), std::move(C), std::move(D), den_ * o.den_);
}

Element Element::operator*(const Int& k) const {
    return make(field_, a_ * k, b_ * k, c_ * k, d_ * k, den_);
}

Element Element::operator/(const Element& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    if (o.is_zero()) throw std::domain_error("division by zero element");
    Element cof = o.apply_embedding(EmbeddingId::Sigma2) * o.apply_embedding(EmbeddingId::Sigma3) *
                  o.apply_embedding(EmbeddingId::Sigma4);
    Element nrm = o * cof;  // rational: norm(o) = nrm.a_/nrm.den_
    Element num = *this * cof;
    return make(field_, num.a_ * nrm.den_, num.b_ * nrm.den_, num.c_ * nrm.den_,
                num.d_ * nrm.den_, num.den_ * nrm.a_);
}

bool Element::operator==(const Element& o) const {
    return field_ == o.field_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_ &&
           den_ == o.den_;
}

bool Element::lex_less(const Element& o) const {
    // Compare the quadruples over a common denominator.
    Int x0 = a_ * o.den_, y0 = o.a_ * den_;
    if (x0 != y0) return x0 < y0;
    Int x1 = b_ * o.den_, y1 = o.b_ * den_;
    if (x1 != y1) return x1 < y1;
    Int x2 = c_ * o.den_, y2 = o.c_ * den_;
    if (x2 != y2) return x2 < y2;
    return d_ * o.den_ < o.d_ * den_;
}

Element Element::apply_embedding(EmbeddingId e) const {
    const auto& sg = field_.emb[static_cast<int>(e)];
    return make(field_, a_, sg[0] > 0 ? b_ : -b_, sg[1] > 0 ? c_ : -c_, sg[2] > 0 ? d_ : -d_,
                den_);
}

Element Element::conjugate_in(int64_t n) const {
    if (!field_.contains_radicand(n)) throw std::invalid_argument("radicand not in field");
    int pos = (n == field_.m) ? 0 : (n == field_.s ? 1 : 2);
    for (int e = 1; e < 4; ++e)
        if (field_.emb[e][pos] < 0) return apply_embedding(static_cast<EmbeddingId>(e));
    throw std::logic_error("no embedding flips the radicand");
}

Rat Element::trace() const { return Rat(4 * a_, den_); }

Rat Element::norm() const {
    Element y = *this * apply_embedding(EmbeddingId::Sigma2);
    Element z = apply_embedding(EmbeddingId::Sigma3) * apply_embedding(EmbeddingId::Sigma4);
    Element w = y * z;
    if (!w.is_rational()) throw std::logic_error("norm is not rational");
    return Rat(w.a_, w.den_);
}

SignValue Element::sign_at(EmbeddingId e) const {
    const auto& sg = field_.emb[static_cast<int>(e)];
    return sign_of_quad(a_, sg[0] > 0 ? b_ : -b_, sg[1] > 0 ? c_ : -c_, sg[2] > 0 ? d_ : -d_,
                        field_.m, field_.s, field_.t);
}

bool Element::is_totally_positive() const {
    // Necessary box condition first: a > |b| sqrt m etc. (cheap rejects).
    if (a_ <= 0) return false;
    Int aa = a_ * a_;
    if (b_ * b_ * field_.m >= aa || c_ * c_ * field_.s >= aa || d_ * d_ * field_.t >= aa)
        return false;
    for (int e = 0; e < 4; ++e)
        if (sign_at(static_cast<EmbeddingId>(e)) != SignValue::Positive) return false;
    return true;
}

bool Element::is_totally_nonnegative() const { return is_zero() || is_totally_positive(); }

bool Element::is_integral() const {
    if (4 % den_ != 0) return false;
    auto q4 = quarters();
    const Int& a = q4[0];
    std::array<Int, 3> coords{q4[1], q4[2], q4[3]};
    Int yp = coords[field_.role_pos[0]];
    Int zq = coords[field_.role_pos[1]];
    Int wr = coords[field_.role_pos[2]];
    switch (field_.basis) {
        case BasisClass::B1:
            return mod4(a) == 0 && mod4(zq) == 0 && mod2(yp) == 0 && mod2(wr) == 0 &&
                   mod4(yp - wr) == 0;
        case BasisClass::B2:
        case BasisClass::B3:
            return mod2(a) == 0 && mod2(zq) == 0 && mod2(yp) == 0 && mod2(wr) == 0 &&
                   mod4(a - zq) == 0 && mod4(yp - wr) == 0;
        case BasisClass::B4a:
        case BasisClass::B4b: {
            Int pa = mod2(a);
            if (mod2(yp) != pa || mod2(zq) != pa || mod2(wr) != pa) return false;
            Int sum = mod4(a + yp + zq + wr);
            if (field_.basis == BasisClass::B4a) return sum == 0;
            return pa == 0 ? sum == 0 : sum == 2;
        }
    }
    return false;
}

std::string Element::str() const {
    Int num_a = a_, num_b = b_, num_c = c_, num_d = d_, den = den_;
    if (4 % den_ == 0) {
        Int k = 4 / den_;
        num_a *= k;
        num_b *= k;
        num_c *= k;
        num_d *= k;
        den = 4;
    }
    std::ostringstream os;
    os << "(" << num_a;
    auto term = [&](const Int& coef, int64_t rad) {
        os << (coef < 0 ? " - " : " + ") << abs(coef) << "*sqrt(" << rad << ")";
    };
    term(num_b, field_.m);
    term(num_c, field_.s);
    term(num_d, field_.t);
    os << ")/" << den;
    return os.str();
}

namespace {

struct Parser {
    const FieldSpec& f;
    std::string text;
    size_t pos = 0;

    explicit Parser(const FieldSpec& fld, const std::string& raw) : f(fld) {
        for (char ch : raw)
            if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("cannot parse element '" + text + "': " + why);
    }

    bool eat(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Int parse_uint() {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return Int(text.substr(start, pos - start));
    }

    // rational := uint [ '/' uint ]
    Rat parse_rational() {
        Int n = parse_uint();
        if (eat('/')) {
            Int d = parse_uint();
            if (d == 0) fail("zero denominator");
            return Rat(n, d);
        }
        return Rat(n);
    }

    int coord_of_radicand(int64_t n) {
        if (n == f.m) return 1;
        if (n == f.s) return 2;
        if (n == f.t) return 3;
        fail("radicand " + std::to_string(n) + " is not one of m, s, t");
    }

    // term := rational ['*' sqrt] | sqrt ['/' uint] | rational
    void parse_term(std::array<Rat, 4>& acc, int sign) {
        Rat coef(1);
        bool have_coef = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coef = parse_rational();
            have_coef = true;
            if (!eat('*')) {
                acc[0] += sign * coef;
                return;
            }
        }
        if (text.compare(pos, 5, "sqrt(") != 0) fail(have_coef ? "expected sqrt(...) after '*'" : "expected a term");
        pos += 5;
        Int rad = parse_uint();
        if (!eat(')')) fail("missing ')' after sqrt");
        if (rad > Int(INT64_MAX)) fail("radicand too large");
        int idx = coord_of_radicand(static_cast<int64_t>(rad));
        if (!have_coef && eat('/')) {
            Int d = parse_uint();
            if (d == 0) fail("zero denominator");
            coef /= Rat(d);
        }
        acc[idx] += sign * coef;
    }

    // sum := ['+'|'-'] term ( ('+'|'-') term )*
    void parse_sum(std::array<Rat, 4>& acc) {
        int sign = 1;
        if (eat('-'))
            sign = -1;
        else
            eat('+');
        parse_term(acc, sign);
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = (text[pos] == '+') ? 1 : -1;
            ++pos;
            parse_term(acc, sign);
        }
    }

    Element parse() {
        std::array<Rat, 4> acc{Rat(0), Rat(0), Rat(0), Rat(0)};
        if (!text.empty() && text[0] == '(') {
            // Whole-expression form "( sum ) / den" or "( sum )".
            int depth = 0;
            size_t close = std::string::npos;
            for (size_t i = 0; i < text.size(); ++i) {
                if (text[i] == '(') ++depth;
                if (text[i] == ')' && --depth == 0) {
                    close = i;
                    break;
                }
            }
            if (close == std::string::npos) fail("unbalanced parentheses");
            bool whole = (close + 1 == text.size()) ||
                         (close + 1 < text.size() && text[close + 1] == '/');
            if (whole) {
                Parser inner(f, text.substr(1, close - 1));
                inner.parse_sum(acc);
                if (inner.pos != inner.text.size()) inner.fail("trailing input");
                pos = close + 1;
                if (eat('/')) {
                    Int d = parse_uint();
                    if (d == 0) fail("zero denominator");
                    for (auto& x : acc) x /= Rat(d);
                }
                if (pos != text.size()) fail("trailing input");
                return build(acc);
            }
        }
        parse_sum(acc);
        if (pos != text.size()) fail("trailing input");
        return build(acc);
    }

    Element build(const std::array<Rat, 4>& acc) const {
        Int l = 1;
        for (const auto& x : acc) l = l / gcd(l, denominator(x)) * denominator(x);
        return Element::make(f, numerator(acc[0]) * (l / denominator(acc[0])),
                             numerator(acc[1]) * (l / denominator(acc[1])),
                             numerator(acc[2]) * (l / denominator(acc[2])),
                             numerator(acc[3]) * (l / denominator(acc[3])), l);
    }
};

}  // namespace

Element parse_element(const FieldSpec& f, const std::string& text) {
    return Parser(f, text).parse();
}

}  // namespace biq
