#include "biq/field.hpp"

#include <algorithm>
#include <numeric>

namespace biq {

std::string to_string(BasisClass b) {
    switch (b) {
        case BasisClass::B1: return "B1";
        case BasisClass::B2: return "B2";
        case BasisClass::B3: return "B3";
        case BasisClass::B4a: return "B4a";
        case BasisClass::B4b: return "B4b";
    }
    return "?";
}

std::string FieldSpec::label() const {
    return "Q(sqrt(" + std::to_string(m) + "),sqrt(" + std::to_string(s) + "))";
}

FieldSpec classify_field(int64_t n1, int64_t n2) {
    if (n1 <= 1 || !is_squarefree(n1)) throw NotSquarefreeError(n1);
    if (n2 <= 1 || !is_squarefree(n2)) throw NotSquarefreeError(n2);
    if (n1 == n2) throw DegenerateFieldError();

    int64_t g = std::gcd(n1, n2);
    int64_t n3 = (n1 / g) * (n2 / g);
    if (n3 == 1) throw DegenerateFieldError();  // cannot happen for distinct square-free inputs

    std::array<int64_t, 3> v{n1, n2, n3};
    std::sort(v.begin(), v.end());
    FieldSpec f;
    f.m = v[0];
    f.s = v[1];
    f.t = v[2];
    f.m0 = std::gcd(f.s, f.t);
    f.s0 = std::gcd(f.m, f.t);
    f.t0 = std::gcd(f.m, f.s);

    // Pick (p,q,r) so that exactly one basis row applies.  Square-free values
    // are never 0 mod 4, and an even one is 2 mod 4.  With two evens the odd
    // radicand is q; with all odd either two are 3 mod 4 (q is the 1 mod 4
    // one) or all are 1 mod 4 (B4, all roles interchangeable).
    auto mod4 = [](int64_t x) { return x % 4; };
    int pos_p = -1, pos_q = -1, pos_r = -1;
    int evens = 0;
    for (auto x : v) evens += (mod4(x) == 2);
    if (evens == 2) {
        for (int i = 0; i < 3; ++i)
            if (mod4(v[i]) != 2) pos_q = i;
        for (int i = 0; i < 3; ++i)
            if (i != pos_q) (pos_p < 0 ? pos_p : pos_r) = i;
        f.basis = (mod4(v[pos_q]) == 3) ? BasisClass::B1 : BasisClass::B2;
    } else {
        int threes = 0;
        for (auto x : v) threes += (mod4(x) == 3);
        if (threes == 2) {
            for (int i = 0; i < 3; ++i)
                if (mod4(v[i]) == 1) pos_q = i;
            for (int i = 0; i < 3; ++i)
                if (i != pos_q) (pos_p < 0 ? pos_p : pos_r) = i;
            f.basis = BasisClass::B3;
        } else if (threes == 0) {
            pos_p = 0;
            pos_q = 1;
            pos_r = 2;
            // In B4 all three gcds are congruent mod 4.
            f.basis = (f.t0 % 4 == 1) ? BasisClass::B4a : BasisClass::B4b;
        } else {
            // Impossible: t = m*s/gcd^2 forces the residues to multiply up.
            throw std::logic_error("inconsistent residues mod 4");
        }
    }
    f.p = v[pos_p];
    f.q = v[pos_q];
    f.r = v[pos_r];
    f.role_pos = {pos_p, pos_q, pos_r};

    static constexpr int patterns[4][3] = {
        {+1, +1, +1}, {-1, +1, -1}, {+1, -1, -1}, {-1, -1, +1}};
    std::array<int, 3> role_of_pos{};  // for position i in (m,s,t), its role index 0=p,1=q,2=r
    for (int roleidx = 0; roleidx < 3; ++roleidx) role_of_pos[f.role_pos[roleidx]] = roleidx;
    for (int e = 0; e < 4; ++e)
        for (int i = 0; i < 3; ++i) f.emb[e][i] = patterns[e][role_of_pos[i]];

    return f;
}

}  // namespace biq
