#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vscert/evidence.hpp"
#include "vscert/lattice.hpp"
#include "vscert/meataxe.hpp"

namespace vscert {

/// No subgroup of index d (1 < d) in the simple non-abelian group G:
/// arithmetic when |G| does not divide d!/2 (G would embed in A_d); else the
/// least proper subgroup index from the ledger; else a mod-2 dimension bound
/// at least d (a subgroup of index d gives a faithful Q_{G/H} of dimension
/// below d). UNKNOWN otherwise, or when G is not known to be simple.
ProofOrFact no_subgroup_of_index(const Factorization& order, std::uint64_t d, bool simple, const CaseFacts& facts);

/// No absolutely simple F_2[G]-module of dimension d > 1: arithmetic when |G|
/// does not divide |GL_d(F_2)| (such a module is faithful); else the ledger's
/// lower bound on nontrivial 2-modular dimensions exceeds d; else UNKNOWN.
ProofOrFact no_simple_module_of_dim(const Factorization& order, std::uint64_t d, bool simple, const CaseFacts& facts);

struct DimensionLeg {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    ProofOrFact side_a;
    ProofOrFact side_b;
    bool closed() const noexcept { return side_a.closed() || side_b.closed(); }
    /// "a", "b", "both" or "none".
    std::string closed_by() const;
};

struct VerySimpleCertificate {
    std::string module_label;
    std::uint64_t N = 0;
    AbsoluteSimplicity abs_simple;
    /// Some generator acts nontrivially; with G simple the action is faithful.
    bool faithful = false;
    /// Every divisor d of N with 1 < d <= N.
    std::map<std::uint64_t, ProofOrFact> index_condition;
    /// Every factorization N = a b with 1 < a <= b, both sides examined.
    std::vector<DimensionLeg> dim_condition;
    bool verdict = false;
    std::string reason;
};

/// Legs only, from the group order: used for building and for re-checking.
void fill_criterion_legs(VerySimpleCertificate& cert, const Factorization& order, bool simple, const CaseFacts& facts);
/// Verdict and reason from the filled certificate.
void decide(VerySimpleCertificate& cert);

/// Very-simplicity via the index and dimension criterion.
VerySimpleCertificate check_very_simple_via_criterion(const GModule& v, const PermGroup& g, const CaseFacts& facts,
                                                      bool simple, const MeataxeBudget& budget = {});

enum class DirectVerdict { very_simple, not_very_simple, budget_exceeded };
std::string to_string(DirectVerdict v);

struct DirectCheck {
    DirectVerdict verdict = DirectVerdict::budget_exceeded;
    /// Basis of a generator-stable proper unital subalgebra R with F Id < R < End(V).
    std::vector<F2Matrix> witness;
    LatticeStatus lattice_status = LatticeStatus::infeasible;
    std::size_t submodules = 0;
    std::size_t candidates = 0;
    std::string reason;
};

/// The definition itself: every submodule of End(V) (conjugation action)
/// containing Id is tested for closure under multiplication.
DirectCheck check_very_simple_direct(const GModule& v, std::size_t lattice_budget = 1'000'000,
                                     const MeataxeBudget& budget = {}, std::size_t dim_cap = 16);

} // namespace vscert
