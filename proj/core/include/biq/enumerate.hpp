#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "biq/element.hpp"

namespace biq {

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(uint64_t n)
        : std::runtime_error("search budget exceeded after " + std::to_string(n) + " candidates") {}
};

struct SearchBudget {
    uint64_t max_candidates = 500'000'000;
};

/// All integral beta with beta >= 0 and alpha - beta >= 0 (totally), found by
/// scanning the coordinate box the total-positivity inequalities allow.
/// Output in lexicographic coordinate order.
std::vector<Element> dominated_by(const Element& alpha, SearchBudget budget = {});

struct DecompositionSet {
    Element target;
    /// Unordered pairs {beta, gamma}, beta + gamma = target, beta lex <= gamma.
    std::vector<std::pair<Element, Element>> pairs;
    /// One representative per orbit of `pairs` under the embeddings fixing the
    /// target; the representative is the orbit's lexicographically least pair.
    std::vector<std::pair<Element, Element>> canonical_orbits;
};

DecompositionSet decompositions(const Element& alpha, bool include_zero,
                                SearchBudget budget = {});

bool is_indecomposable(const Element& alpha, SearchBudget budget = {});

/// Some omega in O_K with omega^2 = alpha, if one exists.  Decided by exact
/// descent through the quadratic subfield (no search), so it stays cheap for
/// inputs with huge height such as unit products.
std::optional<Element> sqrt_in_ring(const Element& alpha);

/// All distinct values omega^2 with omega integral and alpha - omega^2 >= 0.
std::vector<Element> square_parts(const Element& alpha, SearchBudget budget = {});

/// All integral rho with lambda_i*lambda_j - rho^2 >= 0, both signs included.
std::vector<Element> rho_candidates(const Element& li, const Element& lj,
                                    SearchBudget budget = {});

/// Necessary condition from the becoming-a-square criterion: alpha lies in a
/// quadratic subfield Q(sqrt n1) and is not a square there; returns false if
/// some odd prime divisor of gcd(n2,n3) fails to divide alpha (then alpha
/// cannot become a square in K), true if the test is inconclusive.
bool odd_divisor_square_filter(const Element& alpha, const FieldSpec& f);

/// Integral test on a quarters quadruple without building an Element.
bool integral_quarters(const FieldSpec& f, const Int& a, const Int& b, const Int& c, const Int& d);

}  // namespace biq
