#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vscert {

using Point = std::uint32_t;

/// A bijection of {0, ..., n-1} stored as its image list.
///
/// Products compose as functions: (a * b)(i) = a(b(i)).
class Permutation {
public:
    Permutation() = default;
    /// Throws std::invalid_argument if the images are not a bijection.
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t degree);
    /// Builds from 0-based disjoint cycles.
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

    std::size_t degree() const noexcept { return images_.size(); }
    Point operator()(Point i) const { return images_[i]; }
    std::span<const Point> images() const noexcept { return images_; }

    bool is_identity() const noexcept;
    Permutation inverse() const;
    /// Smallest moved point, or degree() when the permutation is the identity.
    Point first_moved_point() const noexcept;
    /// +1 or -1.
    int sign() const;
    std::string to_cycle_string() const;

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct Unchecked {};
    Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

    std::vector<Point> images_;
};

} // namespace vscert
