#include "doctest.h"

#include "biq/quadratic.hpp"
#include "oracles.hpp"

using namespace biq;

namespace {

QuadElem qmul(const QuadElem& a, const QuadElem& b) {
    REQUIRE(a.n == b.n);
    Int u = a.u * b.u + a.v * b.v * a.n;
    Int v = a.u * b.v + a.v * b.u;
    REQUIRE(u % 2 == 0);
    REQUIRE(v % 2 == 0);
    return QuadElem{a.n, u / 2, v / 2};
}

}  // namespace

TEST_CASE("fundamental units from the continued fraction") {
    const QuadData& q3 = quad_data(3);
    CHECK(q3.fundamental_unit == QuadElem{3, 4, 2});  // 2 + sqrt(3)
    CHECK(q3.fu_norm == +1);
    CHECK(q3.cf.u0 == 1);
    CHECK(q3.cf.period == std::vector<Int>{1, 2});

    CHECK(quad_data(6).fundamental_unit == QuadElem{6, 10, 4});  // 5 + 2 sqrt(6)
    CHECK(quad_data(2).fundamental_unit == QuadElem{2, 2, 2});   // 1 + sqrt(2)
    CHECK(quad_data(2).fu_norm == -1);
    CHECK(quad_data(5).fundamental_unit == QuadElem{5, 1, 1});   // (1 + sqrt(5))/2
    CHECK(quad_data(5).fu_norm == -1);
    CHECK(quad_data(13).fundamental_unit == QuadElem{13, 3, 1});
    CHECK(quad_data(21).fundamental_unit == QuadElem{21, 5, 1});
    CHECK(quad_data(21).fu_norm == +1);
    CHECK(quad_data(65).fundamental_unit == QuadElem{65, 16, 2});  // 8 + sqrt(65)
    CHECK(quad_data(10).fundamental_unit == QuadElem{10, 6, 2});   // 3 + sqrt(10)
    CHECK(quad_data(33).fundamental_unit == QuadElem{33, 46, 8});  // 23 + 4 sqrt(33)
    CHECK(quad_data(7).fundamental_unit == QuadElem{7, 16, 6});    // 8 + 3 sqrt(7)

    // max odd-index period term; the period of (sqrt(65)-1)/2 is [1,1,7]
    CHECK(quad_data(65).cf.period == std::vector<Int>{1, 1, 7});
    CHECK(quad_data(65).Mk == 7);
    CHECK(quad_data(10).Mk == 6);
}

TEST_CASE("fundamental unit sanity over a range") {
    for (int64_t n : {2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 19, 21, 29, 33, 42, 65, 85, 91, 101, 910}) {
        if (!is_squarefree(n)) continue;
        const QuadData& qd = quad_data(n);
        CAPTURE(n);
        // |norm| = 1 and the sign matches the period parity
        Rat nrm = qd.fundamental_unit.qnorm();
        REQUIRE(nrm == qd.fu_norm);
        // unit exceeds 1, and no small power is trivial
        REQUIRE(qd.fundamental_unit.u > 0);
        QuadElem pow = qd.fundamental_unit;
        for (int k = 1; k <= 6; ++k) {
            REQUIRE_FALSE(pow == QuadElem{n, 2, 0});
            REQUIRE_FALSE(pow == QuadElem{n, -2, 0});
            pow = qmul(pow, qd.fundamental_unit);
        }
        // recomputing -conj(omega) from the continued fraction: the convergent
        // recurrence p_{i+1} = p_{i-1} + u_{i+1} p_i holds by construction;
        // cross-check the defining identity via convergent values instead.
        for (int64_t i = 0; i + 2 < 8; ++i) {
            QuadElem a = qd.convergent(i - 1), b = qd.convergent(i), c = qd.convergent(i + 1);
            REQUIRE(c == a + b * qd.cf.term(static_cast<size_t>(i + 1)));
        }
    }
}

TEST_CASE("quadratic indecomposables by trace bound") {
    auto l2 = quadratic_indecomposables(2, 5);
    CHECK(l2 == std::vector<QuadElem>{{2, 2, 0}, {2, 4, -2}, {2, 4, 2}});  // 1, 2 +- sqrt(2)

    auto l5 = quadratic_indecomposables(5, 4);
    CHECK(l5 == std::vector<QuadElem>{{5, 2, 0}, {5, 3, -1}, {5, 3, 1}});  // 1, (3 +- sqrt(5))/2

    auto l10 = quadratic_indecomposables(10, 20);
    CHECK(l10 == std::vector<QuadElem>{{10, 2, 0},
                                       {10, 8, -2},
                                       {10, 8, 2},
                                       {10, 14, -4},
                                       {10, 14, 4},
                                       {10, 20, -6},
                                       {10, 20, 6}});
}

TEST_CASE("quadratic indecomposables agree with brute force for n <= 60") {
    for (int64_t n = 2; n <= 60; ++n) {
        if (!is_squarefree(n)) continue;
        CAPTURE(n);
        auto fast = quadratic_indecomposables(n, 30);
        auto slow = oracle::quad_indecomposables(n, 30);
        std::sort(slow.begin(), slow.end(), [](const QuadElem& a, const QuadElem& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        REQUIRE(fast == slow);
    }
}

TEST_CASE("pell predicates") {
    CHECK(pell_solvable(10, -1));   // 3^2 - 10 = -1
    CHECK_FALSE(pell_solvable(10, 2));
    CHECK_FALSE(pell_solvable(10, -2));
    CHECK(pell_solvable(2, -2));    // 4^2 - 2*3^2 = -2
    CHECK(pell_solvable(2, 2));
    CHECK(pell_solvable(2, -1));
    CHECK(pell_solvable(3, -2));    // 1 - 3 = -2
    CHECK_FALSE(pell_solvable(3, -1));
    CHECK_FALSE(pell_solvable(3, 2));
    CHECK(pell_solvable(7, 2));     // 3^2 - 7 = 2
    CHECK(pell_solvable(23, 2));    // 5^2 - 23 = 2
    CHECK(pell_solvable(6, -2));    // 2^2 - 6 = -2

    // positive-side consistency with the exhaustive oracle
    for (int64_t n : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 31, 33}) {
        if (!is_squarefree(n)) continue;
        for (int rhs : {-1, 2, -2}) {
            CAPTURE(n);
            CAPTURE(rhs);
            if (oracle::pell_search(n, rhs, 60)) REQUIRE(pell_solvable(n, rhs));
        }
    }
    // norm of the fundamental unit decides rhs = -1
    for (int64_t n = 2; n <= 80; ++n) {
        if (!is_squarefree(n)) continue;
        CAPTURE(n);
        REQUIRE(pell_solvable(n, -1) == (quad_data(n).fu_norm == -1));
    }
}

TEST_CASE("distinguished elements M, S, T") {
    FieldSpec f221 = classify_field(2, 21);
    CHECK(element_S(f221) == parse_element(f221, "(5+sqrt(21))/2"));
    CHECK(element_T(f221) == parse_element(f221, "7+sqrt(42)"));
    CHECK(element_M(f221) == parse_element(f221, "2+sqrt(2)"));

    FieldSpec f1011 = classify_field(10, 11);
    CHECK(element_M(f1011) == parse_element(f1011, "4+sqrt(10)"));

    FieldSpec f85 = classify_field(85, 87);
    CHECK(f85.m == 85);
    CHECK(element_M1(f85, 85) == parse_element(f85, "10+sqrt(85)"));
    CHECK(element_M(f85) == parse_element(f85, "(11+sqrt(85))/2"));
    CHECK_THROWS_AS(element_Mhalf(f85, 87), VariantUndefinedError);

    // each distinguished element is integral and totally positive
    for (auto [a, b] : std::vector<std::pair<int64_t, int64_t>>{{2, 3}, {5, 13}, {21, 33}, {10, 11}}) {
        FieldSpec f = classify_field(a, b);
        for (const Element& x : {element_M(f), element_S(f), element_T(f)}) {
            CAPTURE(x.str());
            REQUIRE(x.is_integral());
            REQUIRE(x.is_totally_positive());
        }
    }
}

TEST_CASE("sufficient indecomposability criterion in K") {
    FieldSpec f23 = classify_field(2, 3);
    // 2 + sqrt(3) lies in Q(sqrt q) and the basis is B1: criterion fires.
    CHECK(theorem22_criterion(f23, SubfieldRole::Q, QuadElem{3, 4, 2}));

    FieldSpec f221 = classify_field(2, 21);
    CHECK(f221.r == 42);
    // 7 + sqrt(42) is a semiconvergent but not a convergent, and sqrt(2) is
    // far below M sqrt(42): the criterion stays silent.
    CHECK_FALSE(theorem22_criterion(f221, SubfieldRole::R, QuadElem{42, 14, 2}));
    CHECK_FALSE(is_convergent(42, QuadElem{42, 14, 2}));
    CHECK(is_convergent(42, QuadElem{42, 12, 2}));  // 6 + sqrt(42) is a convergent

    FieldSpec f5101 = classify_field(5, 101);
    CHECK(f5101.basis == BasisClass::B4a);
    // sqrt(r) > M_p sqrt(p): every indecomposable of Q(sqrt 5) stays one.
    CHECK(theorem22_criterion(f5101, SubfieldRole::P, QuadElem{5, 3, 1}));
}
