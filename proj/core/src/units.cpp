#include "biq/units.hpp"

#include "biq/enumerate.hpp"

namespace biq {

std::string to_string(UnitCase c) {
    switch (c) {
        case UnitCase::CaseI: return "case-i";
        case UnitCase::CaseII: return "case-ii";
        case UnitCase::CaseIIICandidate: return "case-iii-candidate";
    }
    return "?";
}

const char* UnitReport::product_name(int idx) {
    static const char* names[7] = {"eps_m", "eps_s", "eps_t", "eps_m*eps_s",
                                   "eps_m*eps_t", "eps_s*eps_t", "eps_m*eps_s*eps_t"};
    return names[idx];
}

UnitReport unit_report(const FieldSpec& f) {
    UnitReport r;
    r.field = f;
    std::array<int64_t, 3> rad{f.m, f.s, f.t};
    for (int i = 0; i < 3; ++i) {
        const QuadData& qd = quad_data(rad[i]);
        r.eps[i] = qd.fundamental_unit.in_field(f);
        r.eps_norm[i] = qd.fu_norm;
        r.eps_totally_positive[i] = r.eps[i].is_totally_positive();
    }

    // Product classes by subset mask over (eps_m, eps_s, eps_t).
    static constexpr int masks[7] = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    for (int k = 0; k < 7; ++k) {
        Element p = Element::integer(f, 1);
        for (int i = 0; i < 3; ++i)
            if (masks[k] & (1 << i)) p = p * r.eps[i];
        r.products[k] = p;
        r.product_totally_positive[k] = p.is_totally_positive();
        r.product_square_in_K[k] = sqrt_in_ring(p).has_value();
    }

    auto usable = [&](int k) { return r.product_totally_positive[k] && !r.product_square_in_K[k]; };
    auto mask_index = [&](int mask) {
        for (int k = 0; k < 7; ++k)
            if (masks[k] == mask) return k;
        return -1;
    };

    for (int i = 0; i < 7 && !r.case1_pair; ++i) {
        if (!usable(i)) continue;
        for (int j = i + 1; j < 7; ++j) {
            if (!usable(j)) continue;
            int k = mask_index(masks[i] ^ masks[j]);
            // products[i]*products[j] differs from products[k] by a square of
            // units, so its square class is the class of products[k].
            if (k >= 0 && !r.product_square_in_K[k]) {
                r.case1_pair = {i, j};
                break;
            }
        }
    }
    if (r.case1_pair) {
        r.unit_case = UnitCase::CaseI;
        return r;
    }
    for (int i = 0; i < 7; ++i) {
        if (usable(i)) {
            r.unit_case = UnitCase::CaseII;
            r.case2_index = i;
            r.case2_two_eps_square = two_eps_square(f, r.products[i]);
            return r;
        }
    }
    r.unit_case = UnitCase::CaseIIICandidate;
    return r;
}

bool two_eps_square(const FieldSpec& f, const Element& eps) {
    if (eps.field() != f) throw FieldMismatchError();
    if (!eps.is_totally_positive() || !eps.is_integral())
        throw std::invalid_argument("two_eps_square expects a totally positive unit");
    Rat n = eps.norm();
    if (n != 1) throw std::invalid_argument("two_eps_square expects a unit");
    return sqrt_in_ring(eps * Int(2)).has_value();
}

bool quadratic_unit_square_filter(const FieldSpec& f, int64_t subfield_radicand) {
    int64_t g;
    if (subfield_radicand == f.m) g = f.m0;       // gcd(s, t)
    else if (subfield_radicand == f.s) g = f.s0;  // gcd(m, t)
    else if (subfield_radicand == f.t) g = f.t0;  // gcd(m, s)
    else throw std::invalid_argument("radicand not in field");
    return g < 3;
}

}  // namespace biq
