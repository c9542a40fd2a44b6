#include "doctest.h"

#include "biq/units.hpp"
#include "biq/enumerate.hpp"
#include "oracles.hpp"

using namespace biq;

TEST_CASE("subfield unit squareness in small fields") {
    FieldSpec f23 = classify_field(2, 3);
    UnitReport r = unit_report(f23);
    CHECK(r.eps[1] == parse_element(f23, "2+sqrt(3)"));
    CHECK(r.eps_totally_positive[1]);
    CHECK(r.product_square_in_K[1]);  // eps_3 = ((sqrt2+sqrt6)/2)^2 here
    CHECK(r.eps[2] == parse_element(f23, "5+2*sqrt(6)"));
    CHECK(r.product_square_in_K[2]);  // eps_6 = (sqrt2+sqrt3)^2
    CHECK_FALSE(r.eps_totally_positive[0]);  // eps_2 = 1+sqrt(2) has norm -1
    CHECK(r.unit_case == UnitCase::CaseIIICandidate);
}

TEST_CASE("fields with eight independent positive unit classes are Case I") {
    for (auto [a, b] : std::vector<std::pair<int64_t, int64_t>>{{3, 910}, {21, 55}, {21, 110}}) {
        CAPTURE(a);
        CAPTURE(b);
        UnitReport r = unit_report(classify_field(a, b));
        REQUIRE(r.unit_case == UnitCase::CaseI);
        // all three subfield units totally positive and all seven classes nonsquare
        for (int i = 0; i < 3; ++i) CHECK(r.eps_totally_positive[i]);
        for (int i = 0; i < 7; ++i) {
            CHECK(r.product_totally_positive[i]);
            CHECK_FALSE(r.product_square_in_K[i]);
        }
        auto [i, j] = *r.case1_pair;
        CHECK(i != j);
    }
}

TEST_CASE("Q(sqrt3, sqrt7) keeps a nonsquare totally positive unit") {
    UnitReport r = unit_report(classify_field(3, 7));
    CHECK(r.eps_totally_positive[0]);  // eps_3
    CHECK_FALSE(r.product_square_in_K[0]);
    CHECK(r.product_square_in_K[2]);  // eps_21 = ((sqrt3+sqrt7)/2)^2
    CHECK((r.unit_case == UnitCase::CaseI || r.unit_case == UnitCase::CaseII));
}

TEST_CASE("two_eps_square") {
    FieldSpec f37 = classify_field(3, 7);
    Element eps3 = parse_element(f37, "2+sqrt(3)");
    CHECK(two_eps_square(f37, eps3));  // 2 eps_3 = (1+sqrt3)^2

    FieldSpec f221 = classify_field(2, 21);
    Element eps21 = parse_element(f221, "(5+sqrt(21))/2");
    // 2 eps_21 square in K iff one of x^2-21y^2 = +-2 is solvable; both fail
    CHECK_FALSE(pell_solvable(21, 2));
    CHECK_FALSE(pell_solvable(21, -2));
    CHECK_FALSE(two_eps_square(f221, eps21));

    // a unit with norm -1 is not totally positive: precondition error
    Element eps2 = parse_element(f221, "1+sqrt(2)");
    CHECK_THROWS_AS(two_eps_square(f221, eps2), std::invalid_argument);
    CHECK_THROWS_AS(two_eps_square(f221, Element::integer(f221, 2)), std::invalid_argument);
}

TEST_CASE("unit square filter against the full square test") {
    // the filter never contradicts the exact test on the fundamental units
    for (const auto& f : oracle::all_fields_with_t_at_most(120)) {
        for (int64_t n : {f.m, f.s, f.t}) {
            CAPTURE(f.m);
            CAPTURE(f.s);
            CAPTURE(n);
            Element eps = quad_data(n).fundamental_unit.in_field(f);
            if (!quadratic_unit_square_filter(f, n))
                REQUIRE_FALSE(sqrt_in_ring(eps).has_value());
        }
        // eps_m is always certified nonsquare without search: gcd(s,t) >= 3
        REQUIRE_FALSE(quadratic_unit_square_filter(f, f.m));
        if (f.m != 2) REQUIRE_FALSE(quadratic_unit_square_filter(f, f.s));
    }
}

TEST_CASE("positivity of the fundamental unit matches the Pell criterion") {
    for (const auto& f : oracle::all_fields_with_t_at_most(100)) {
        UnitReport r = unit_report(f);
        std::array<int64_t, 3> rad{f.m, f.s, f.t};
        for (int i = 0; i < 3; ++i) {
            CAPTURE(rad[i]);
            bool neg_pell = pell_solvable(rad[i], -1);
            REQUIRE(r.eps_norm[i] == (neg_pell ? -1 : +1));
            REQUIRE(r.eps_totally_positive[i] == !neg_pell);
        }
    }
}

TEST_CASE("square flags are subgroup compatible") {
    static constexpr int masks[7] = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    for (const auto& f : oracle::all_fields_with_t_at_most(80)) {
        UnitReport r = unit_report(f);
        auto flag_of_mask = [&](int mask) {
            for (int k = 0; k < 7; ++k)
                if (masks[k] == mask) return r.product_square_in_K[static_cast<size_t>(k)];
            throw std::logic_error("bad mask");
        };
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) {
                if (i == j || !r.product_square_in_K[static_cast<size_t>(i)] ||
                    !r.product_square_in_K[static_cast<size_t>(j)])
                    continue;
                int k = masks[i] ^ masks[j];
                if (k == 0) continue;
                CAPTURE(f.m);
                CAPTURE(f.s);
                // product of two squares is a square
                REQUIRE(flag_of_mask(k));
            }
    }
}

TEST_CASE("report does not depend on the generating pair") {
    for (auto [a, b] : std::vector<std::pair<int64_t, int64_t>>{{2, 3}, {3, 7}, {5, 13}}) {
        FieldSpec f = classify_field(a, b);
        UnitReport r1 = unit_report(classify_field(f.m, f.s));
        UnitReport r2 = unit_report(classify_field(f.s, f.t));
        UnitReport r3 = unit_report(classify_field(f.m, f.t));
        CHECK(r1.unit_case == r2.unit_case);
        CHECK(r1.unit_case == r3.unit_case);
        CHECK(r1.product_square_in_K == r2.product_square_in_K);
        CHECK(r1.product_square_in_K == r3.product_square_in_K);
    }
}
