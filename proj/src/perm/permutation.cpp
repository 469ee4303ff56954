#include "vscert/permutation.hpp"

#include <sstream>
#include <stdexcept>

namespace vscert {

Permutation::Permutation(std::vector<Point> images)
    : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
        if (x >= images_.size() || seen[x])
            throw std::invalid_argument("Permutation: images are not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(std::size_t degree)
{
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i)
        img[i] = static_cast<Point>(i);
    return Permutation(std::move(img), Unchecked{});
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles)
{
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i)
        img[i] = static_cast<Point>(i);
    for (const auto& cycle : cycles) {
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (cycle[k] >= degree)
                throw std::invalid_argument("Permutation::from_cycles: point out of range");
            img[cycle[k]] = cycle[(k + 1) % cycle.size()];
        }
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i)
            return false;
    return true;
}

Permutation Permutation::inverse() const
{
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv), Unchecked{});
}

Point Permutation::first_moved_point() const noexcept
{
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i)
            return static_cast<Point>(i);
    return static_cast<Point>(images_.size());
}

int Permutation::sign() const
{
    std::vector<bool> seen(images_.size(), false);
    int s = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0)
            s = -s;
    }
    return s;
}

std::string Permutation::to_cycle_string() const
{
    std::ostringstream os;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i] || images_[i] == i)
            continue;
        os << '(';
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            if (j != i)
                os << ',';
            os << j;
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& a, const Permutation& b)
{
    if (a.degree() != b.degree())
        throw std::invalid_argument("Permutation product: degree mismatch");
    std::vector<Point> img(a.degree());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = a.images_[b.images_[i]];
    return Permutation(std::move(img), Permutation::Unchecked{});
}

} // namespace vscert
