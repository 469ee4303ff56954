#pragma once

#include <string>
#include <vector>

#include "vscert/f2matrix.hpp"
#include "vscert/permgroup.hpp"

namespace vscert {

/// A finite-dimensional F_2[G]-module given by one invertible matrix per
/// group generator. Vectors are rows and generators act on the right, v -> v g.
class GModule {
public:
    /// Throws std::invalid_argument unless every matrix is dim x dim and invertible.
    GModule(std::size_t dim, std::vector<F2Matrix> gens, std::string label = {});

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<F2Matrix>& gens() const noexcept { return gens_; }
    const std::string& label() const noexcept { return label_; }

    /// The module with every generator transposed (the dual V*).
    GModule dual() const;

private:
    std::size_t dim_;
    std::vector<F2Matrix> gens_;
    std::string label_;
};

/// A generator-stable subspace, stored as its reduced row-echelon basis.
struct SubmoduleBasis {
    F2Matrix basis;
    std::vector<std::size_t> pivots;

    std::size_t dim() const noexcept { return basis.rows(); }
    std::size_t ambient_dim() const noexcept { return basis.cols(); }
    bool contains(std::span<const F2Matrix::Word> v) const;
    friend bool operator==(const SubmoduleBasis& a, const SubmoduleBasis& b) { return a.basis == b.basis; }
};

/// Canonicalises an arbitrary spanning set (rows of m) into a SubmoduleBasis.
/// Does not check stability.
SubmoduleBasis make_subspace(const F2Matrix& spanning);
bool is_stable(const GModule& v, const SubmoduleBasis& u);

/// Quotient V/U realised on the non-pivot coordinates of U's rref basis.
struct QuotientModule {
    GModule module;
    std::vector<std::size_t> complement; // ambient coordinate of each quotient basis vector
};

GModule restrict_to(const GModule& v, const SubmoduleBasis& u);
QuotientModule quotient(const GModule& v, const SubmoduleBasis& u);
/// Ambient vector (quotient coordinates placed on the complement columns).
F2Vector lift(const QuotientModule& q, std::span<const F2Matrix::Word> coords, std::size_t ambient_dim);

/// F_2^B: generator s sends e_b to e_{s(b)}, so h -> h o s^{-1} on functions.
GModule permutation_module(const PermGroup& g);
/// The all-ones vector 1_B.
F2Vector all_ones(std::size_t n);
/// (F_2^B)^0 = { h : sum_b h(b) = 0 }. Expects a permutation module.
SubmoduleBasis sum_zero_submodule(const GModule& perm_module);
/// Q_B: (F_2^B)^0 for odd n, (F_2^B)^0 / F_2 1_B for even n. Requires n >= 5.
/// For even n the quotient basis is the rref basis of (F_2^B)^0 minus its
/// last vector.
GModule heart_module(const PermGroup& g);

/// Block-diagonal direct sum.
GModule direct_sum(const GModule& a, const GModule& b);
/// Conjugates every generator by a change of basis P: g -> P g P^{-1}.
GModule change_basis(const GModule& v, const F2Matrix& p);

} // namespace vscert
