#pragma once

#include <array>
#include <optional>
#include <vector>

#include "biq/element.hpp"
#include "biq/enumerate.hpp"
#include "biq/units.hpp"

namespace biq {

struct NoRecipeError : std::runtime_error {
    explicit NoRecipeError(const std::string& what) : std::runtime_error(what) {}
};

/// Gram matrix of a classical form: symmetric with entries in O_K.
class FormMatrix {
public:
    FormMatrix() = default;
    static FormMatrix diagonal(const std::vector<Element>& diag);
    /// Row-major entries; validated symmetric, integral, one field.
    static FormMatrix from_entries(int n, std::vector<Element> entries);

    int arity() const { return n_; }
    const FieldSpec& field() const { return entries_.front().field(); }
    const Element& at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }

    bool operator==(const FormMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

private:
    int n_ = 0;
    std::vector<Element> entries_;
};

/// v^T G v, exact.
Element evaluate(const FormMatrix& Q, const std::vector<Element>& v);
/// v^T G w, exact.
Element bilinear(const FormMatrix& Q, const std::vector<Element>& v, const std::vector<Element>& w);
Element det(const FormMatrix& Q);
/// Sylvester: all leading principal minors totally positive.
bool is_tp_definite(const FormMatrix& Q);

enum class RepStatus { Found, Absent, BudgetExceeded };

struct RepResult {
    RepStatus status = RepStatus::Absent;
    std::vector<Element> vec;  // a representing vector when status == Found
};

struct RepAllResult {
    RepStatus status = RepStatus::Absent;
    std::vector<std::vector<Element>> vecs;  // every representing vector
};

/// Searches for integral v with Q(v) = target.  Absence is certified by
/// exhausting the box cut out by per-embedding ellipsoid bounds
/// |sigma(v)|^2 <= sigma(target) / lambda_min(sigma(Q)).  Arity <= 3.
RepResult represents(const FormMatrix& Q, const Element& target, SearchBudget budget = {});
RepAllResult represent_all(const FormMatrix& Q, const Element& target, SearchBudget budget = {});

enum class VerdictKind { NoSingularMatrix, SingularWitness, BudgetExceeded };

std::string to_string(VerdictKind v);

struct Verdict {
    VerdictKind kind = VerdictKind::NoSingularMatrix;
    std::optional<FormMatrix> witness;
};

struct EscalationRun {
    FieldSpec field;
    std::array<Element, 4> diagonal;
    /// Candidate off-diagonal entries for positions (12),(13),(14),(23),(24),(34).
    std::array<std::vector<Element>, 6> rho_sets;
    uint64_t candidates_examined = 0;
    Verdict verdict;
};

/// Checks every symmetric matrix with the given totally positive diagonal and
/// off-diagonal entries satisfying rho^2 <= lambda_i lambda_j for a vanishing
/// determinant.  NoSingularMatrix certifies that no ternary classical totally
/// positive definite form represents all four diagonal elements at once.
EscalationRun escalate_quadruple(const FieldSpec& f, const std::array<Element, 4>& lambda,
                                 SearchBudget budget = {}, int workers = 1);

enum class WitnessBranch {
    Table1,
    M2Family,
    M5Family,
    CaseIUnits,
    CaseIINonsquare2Eps,
    CaseIISquare2EpsM,
    CaseIISquare2EpsS,
    CaseIIIM65,
    CaseIIIM85,
    CaseIIIGeneric,
};

std::string to_string(WitnessBranch b);

struct WitnessQuadruple {
    std::array<Element, 4> diagonal;
    WitnessBranch branch;
    /// True when the branch is certified by the unit/indecomposability
    /// argument alone and no escalation run is called for.
    bool units_certificate;
};

/// The four-element witness for the field, chosen by the case analysis over
/// the unit report and the special families.
WitnessQuadruple witness_quadruple(const FieldSpec& f);
WitnessQuadruple witness_quadruple(const FieldSpec& f, const UnitReport& units);

/// The seven fields with bespoke escalation diagonals, as (m, s) pairs in
/// canonical order.
const std::vector<std::pair<int64_t, int64_t>>& table1_fields();

}  // namespace biq
