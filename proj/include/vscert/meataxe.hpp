#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vscert/gmodule.hpp"

namespace vscert {

/// Element of the algebra generated by the module generators: a sum of
/// words, each word a product g_{i1} g_{i2} ... (the empty word is Id).
struct AlgebraElement {
    std::vector<std::vector<std::size_t>> words;

    std::string to_string() const;
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

F2Matrix evaluate(const GModule& v, const AlgebraElement& theta);

/// Smallest generator-stable subspace containing the seed rows.
SubmoduleBasis spin(const GModule& v, const F2Matrix& seeds);
SubmoduleBasis spin(const GModule& v, std::span<const F2Matrix::Word> seed);

struct MeataxeBudget {
    std::size_t max_candidates = 5'000;  // algebra elements examined
    std::size_t max_nullity = 12;        // 2^k kernel vectors are spun
    std::size_t max_spins = 2'000'000;
    std::uint64_t seed = 0x5eed'c0de'2718'2818ULL;
};

/// The fixed candidate sequence: sums of pairs of words of length <= 3 in
/// sweep order, then pseudorandom sums of words drawn from the seeded stream.
class ThetaSequence {
public:
    ThetaSequence(std::size_t generator_count, std::uint64_t seed);
    AlgebraElement next();

private:
    std::size_t gens_;
    std::vector<std::vector<std::size_t>> words_;
    std::size_t a_ = 0;
    std::size_t b_ = 1;
    std::uint64_t state_;
};

enum class Irreducibility { irreducible, reducible, inconclusive };
std::string to_string(Irreducibility v);

struct IrreducibilityResult {
    Irreducibility verdict = Irreducibility::inconclusive;
    /// Certifying element when a Norton test ran: every nonzero vector of its
    /// kernel spins to V and a kernel vector of its transpose spins to V*.
    std::optional<AlgebraElement> theta;
    std::size_t nullity = 0;
    /// Proper nonzero submodule when reducible.
    std::optional<SubmoduleBasis> witness;
    std::size_t candidates_tried = 0;
    std::size_t spins = 0;
};

/// Norton's irreducibility test. A singular theta with nullity at most the
/// budget decides the question exactly; running out of candidates or spins
/// yields inconclusive, never a guess.
IrreducibilityResult is_irreducible(const GModule& v, const MeataxeBudget& budget = {});

/// Re-runs the Norton test for a recorded theta. Returns the verdict it proves
/// (irreducible or reducible), or inconclusive if theta is not usable.
Irreducibility norton_check(const GModule& v, const AlgebraElement& theta, const MeataxeBudget& budget = {});

/// Commutant { X : X g = g X for every generator }, each basis element a
/// dim x dim matrix. Solved as a linear system in dim^2 unknowns.
struct Commutant {
    std::vector<F2Matrix> basis;
    std::size_t dim() const noexcept { return basis.size(); }
};
Commutant endomorphism_algebra(const GModule& v);

/// dim End(V) for an irreducible V, from the theta that certified it:
/// counts the u in ker(theta) for which the standard basis spun from u
/// defines a homomorphism. Cheaper than the linear solve for large V.
std::size_t endomorphism_dimension_by_spin(const GModule& v, const AlgebraElement& theta);

struct AbsoluteSimplicity {
    Irreducibility irreducible = Irreducibility::inconclusive;
    IrreducibilityResult norton;
    std::optional<std::size_t> commutant_dim;
    std::string commutant_method; // "linear-solve" or "kernel-spin"
    bool absolutely_simple = false;
    bool conclusive() const noexcept { return irreducible != Irreducibility::inconclusive; }
};

/// Irreducible and the commutant is the scalars. The linear solve is used up
/// to linear_solve_cap, the kernel-spin count above it.
AbsoluteSimplicity is_absolutely_simple(const GModule& v, const MeataxeBudget& budget = {},
                                        std::size_t linear_solve_cap = 128);

/// Composition factors from repeated splitting, bottom to top.
/// Returns nullopt if some Norton test is inconclusive.
std::optional<std::vector<GModule>> composition_factors(const GModule& v, const MeataxeBudget& budget = {});

/// End(V) with generators acting by X -> g X g^{-1}, realised on row-major
/// vec(X) as kron(g^T, g^{-1}). Throws when dim V exceeds cap.
GModule conjugation_module(const GModule& v, std::size_t cap = 16);
/// vec of a dim x dim matrix, and back.
F2Vector vec_of(const F2Matrix& x);
F2Matrix unvec(std::span<const F2Matrix::Word> v, std::size_t dim);

} // namespace vscert
