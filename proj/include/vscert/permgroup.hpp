#pragma once

#include <cstddef>
#include <vector>

#include "vscert/arith.hpp"
#include "vscert/permutation.hpp"

namespace vscert {

/// Permutation group with a stabilizer chain built by deterministic
/// Schreier-Sims. Base points are taken in increasing order: every new base
/// point is the smallest point moved by the generator that needed it.
///
/// Immutable once built; safe to share across threads.
class PermGroup {
public:
    static constexpr std::size_t default_degree_cap = 10'000;

    /// Throws std::invalid_argument on a degree mismatch or a degree above cap.
    /// An empty generator list needs the explicit degree.
    static PermGroup build_chain(std::vector<Permutation> gens, std::size_t degree,
                                 std::size_t degree_cap = default_degree_cap);
    static PermGroup build_chain(std::vector<Permutation> gens);

    std::size_t degree() const noexcept { return degree_; }
    const std::vector<Permutation>& generators() const noexcept { return gens_; }

    const BigInt& order() const noexcept { return order_; }
    const Factorization& order_factorization() const noexcept { return order_factors_; }

    const std::vector<Point>& base() const noexcept { return base_; }
    /// Sizes of the basic orbits, one per base point.
    std::vector<std::size_t> basic_orbit_sizes() const;
    /// The basic orbit at the given level (orbit of base()[level] under the
    /// stabilizer of the earlier base points).
    const std::vector<Point>& basic_orbit(std::size_t level) const { return levels_.at(level).orbit; }

    /// Exact membership by sifting. Throws on degree mismatch.
    bool contains(const Permutation& s) const;

    /// Orbit of a point under the generators, in discovery order.
    std::vector<Point> orbit(Point point) const;
    bool is_transitive() const;
    /// Transitive and the stabilizer of point 0 is transitive on the rest.
    bool is_two_transitive() const;

    /// Orbit partition of {0..n-1}, each orbit sorted, ordered by least element.
    std::vector<std::vector<Point>> orbits() const;

private:
    struct Level {
        Point base_point = 0;
        std::vector<std::size_t> gens; // indices into strong_
        std::vector<Point> orbit;
        // transversal[b] maps base_point to b; empty when b is outside the orbit.
        std::vector<Permutation> transversal;
    };

    PermGroup() = default;
    void compute_orbit(Level& level) const;
    // Returns the residue and the level at which sifting stopped.
    std::pair<Permutation, std::size_t> sift(const Permutation& g, std::size_t from) const;
    void schreier_sims();

    std::size_t degree_ = 0;
    std::vector<Permutation> gens_;
    std::vector<Permutation> strong_;
    std::vector<Point> base_;
    std::vector<Level> levels_;
    BigInt order_ = 1;
    Factorization order_factors_;
};

} // namespace vscert
