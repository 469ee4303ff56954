#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vscert/field.hpp"
#include "vscert/permutation.hpp"

namespace vscert {

/// Point of P^{m-1}(F_q), normalised so the first nonzero coordinate is 1.
struct ProjPoint {
    std::vector<FqElement> coords;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Scales v so its first nonzero coordinate is 1. Throws on the zero vector.
std::vector<FqElement> normalize(const FqField& field, std::vector<FqElement> v);

/// m x m matrix over F_q, row-major, with its determinant computed at build.
class MatrixFq {
public:
    MatrixFq(const FqField& field, unsigned m, std::vector<FqElement> entries);
    static MatrixFq identity(const FqField& field, unsigned m);
    static MatrixFq scalar(const FqField& field, unsigned m, FqElement c);
    /// Identity plus c in position (row, col), row != col.
    static MatrixFq transvection(const FqField& field, unsigned m, unsigned row, unsigned col, FqElement c);

    unsigned size() const noexcept { return m_; }
    FqElement at(unsigned r, unsigned c) const { return entries_[r * m_ + c]; }
    FqElement determinant() const noexcept { return det_; }
    bool is_identity() const;

    std::vector<FqElement> apply(const std::vector<FqElement>& v) const;
    MatrixFq operator*(const MatrixFq& other) const;
    friend bool operator==(const MatrixFq& a, const MatrixFq& b) { return a.m_ == b.m_ && a.entries_ == b.entries_; }

private:
    const FqField* field_;
    unsigned m_;
    std::vector<FqElement> entries_;
    FqElement det_ = 0;
};

/// The points of P^{m-1}(F_q) in lexicographic order of their normalised
/// coordinate tuples, with an index for lookup.
class ProjectiveSpace {
public:
    /// Throws for m < 2 or when the point count exceeds cap.
    ProjectiveSpace(const FqField& field, unsigned m, std::size_t cap = 10'000);

    const FqField& field() const noexcept { return *field_; }
    unsigned dimension() const noexcept { return m_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<ProjPoint>& points() const noexcept { return points_; }

    /// Index of the point spanned by a nonzero vector (normalised internally).
    std::size_t index_of(const std::vector<FqElement>& v) const;

private:
    std::uint64_t encode(const std::vector<FqElement>& normalized) const;

    const FqField* field_;
    unsigned m_;
    std::vector<ProjPoint> points_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

std::vector<ProjPoint> enumerate_points(unsigned m, const FqField& field);

/// Transvection I + E_{01}, the signed cyclic shift e_i -> e_{i+1},
/// e_{m-1} -> (-1)^{m-1} e_0, and, when q is not prime, diag(w, w^{-1}, 1, ...)
/// for the primitive element w.
std::vector<MatrixFq> sl_generators(unsigned m, const FqField& field);
/// sl_generators plus diag(w, 1, ..., 1).
std::vector<MatrixFq> gl_generators(unsigned m, const FqField& field);

/// i -> index(normalize(A * points[i])). Throws on a singular matrix.
Permutation action_to_permutation(const MatrixFq& A, const ProjectiveSpace& space);

} // namespace vscert
