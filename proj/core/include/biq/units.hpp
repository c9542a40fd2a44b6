#pragma once

#include <array>
#include <optional>
#include <utility>

#include "biq/element.hpp"
#include "biq/quadratic.hpp"

namespace biq {

enum class UnitCase { CaseI, CaseII, CaseIIICandidate };

std::string to_string(UnitCase c);

/// Totally positive unit analysis from the subgroup generated by the three
/// quadratic-subfield fundamental units.  CaseIIICandidate is a lower bound:
/// it means no nonsquare totally positive unit was found in that subgroup,
/// not that the full quotient of positive units by squares is trivial.
struct UnitReport {
    FieldSpec field;
    std::array<Element, 3> eps;  // fundamental units of Q(sqrt m), Q(sqrt s), Q(sqrt t)
    std::array<int, 3> eps_norm{};
    std::array<bool, 3> eps_totally_positive{};

    /// The seven nontrivial products of subfield units, in the fixed order
    /// m, s, t, ms, mt, st, mst.
    std::array<Element, 7> products;
    std::array<bool, 7> product_totally_positive{};
    std::array<bool, 7> product_square_in_K{};

    UnitCase unit_case = UnitCase::CaseIIICandidate;
    std::optional<std::pair<int, int>> case1_pair;   // indices into products
    std::optional<int> case2_index;                  // index into products
    std::optional<bool> case2_two_eps_square;

    static const char* product_name(int idx);
};

UnitReport unit_report(const FieldSpec& f);

/// True iff 2*eps is a square in O_K; eps must be a totally positive unit.
bool two_eps_square(const FieldSpec& f, const Element& eps);

/// False when gcd of the other two radicands is >= 3, which certifies without
/// search that the fundamental unit of Q(sqrt n) is not a square in K; true
/// means a full square test is required.
bool quadratic_unit_square_filter(const FieldSpec& f, int64_t subfield_radicand);

}  // namespace biq
