#include "vscert/permgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace vscert {

PermGroup PermGroup::build_chain(std::vector<Permutation> gens)
{
    if (gens.empty())
        throw std::invalid_argument("build_chain: empty generator list needs an explicit degree");
    const std::size_t n = gens.front().degree();
    return build_chain(std::move(gens), n);
}

PermGroup PermGroup::build_chain(std::vector<Permutation> gens, std::size_t degree, std::size_t degree_cap)
{
    if (degree > degree_cap)
        throw std::invalid_argument("build_chain: degree exceeds cap");
    for (const auto& g : gens)
        if (g.degree() != degree)
            throw std::invalid_argument("build_chain: generator degree mismatch");

    PermGroup G;
    G.degree_ = degree;
    G.gens_ = std::move(gens);
    for (const auto& g : G.gens_)
        if (!g.is_identity() && std::find(G.strong_.begin(), G.strong_.end(), g) == G.strong_.end())
            G.strong_.push_back(g);
    G.schreier_sims();
    return G;
}

void PermGroup::compute_orbit(Level& level) const
{
    level.orbit.clear();
    level.transversal.assign(degree_, Permutation{});
    level.transversal[level.base_point] = Permutation::identity(degree_);
    level.orbit.push_back(level.base_point);
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
        const Point b = level.orbit[k];
        for (std::size_t gi : level.gens) {
            const Permutation& s = strong_[gi];
            const Point c = s(b);
            if (level.transversal[c].degree() == 0) {
                level.transversal[c] = s * level.transversal[b];
                level.orbit.push_back(c);
            }
        }
    }
}

std::pair<Permutation, std::size_t> PermGroup::sift(const Permutation& g, std::size_t from) const
{
    Permutation h = g;
    for (std::size_t l = from; l < levels_.size(); ++l) {
        const Point b = h(levels_[l].base_point);
        const Permutation& u = levels_[l].transversal[b];
        if (u.degree() == 0)
            return {h, l};
        h = u.inverse() * h;
    }
    return {h, levels_.size()};
}

void PermGroup::schreier_sims()
{
    auto fixes_base = [&](const Permutation& s, std::size_t upto) {
        for (std::size_t l = 0; l < upto; ++l)
            if (s(base_[l]) != base_[l])
                return false;
        return true;
    };

    if (!strong_.empty()) {
        Point least = static_cast<Point>(degree_);
        for (const auto& s : strong_)
            least = std::min(least, s.first_moved_point());
        base_.push_back(least);
    }
    for (const auto& s : strong_) {
        if (fixes_base(s, base_.size()))
            base_.push_back(s.first_moved_point());
    }
    levels_.resize(base_.size());
    for (std::size_t l = 0; l < base_.size(); ++l) {
        levels_[l].base_point = base_[l];
        for (std::size_t gi = 0; gi < strong_.size(); ++gi)
            if (fixes_base(strong_[gi], l))
                levels_[l].gens.push_back(gi);
        compute_orbit(levels_[l]);
    }

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
        bool restarted = false;
        Level& level = levels_[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; !restarted && k < level.orbit.size(); ++k) {
            const Point b = level.orbit[k];
            for (std::size_t gi : level.gens) {
                const Permutation& s = strong_[gi];
                const Point c = s(b);
                Permutation h = level.transversal[c].inverse() * s * level.transversal[b];
                auto [residue, stop] = sift(h, static_cast<std::size_t>(i) + 1);
                if (residue.is_identity())
                    continue;
                strong_.push_back(residue);
                const std::size_t r = strong_.size() - 1;
                if (stop == levels_.size()) {
                    base_.push_back(residue.first_moved_point());
                    Level fresh;
                    fresh.base_point = base_.back();
                    levels_.push_back(std::move(fresh));
                }
                for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= stop; ++l) {
                    levels_[l].gens.push_back(r);
                    compute_orbit(levels_[l]);
                }
                i = static_cast<std::ptrdiff_t>(stop);
                restarted = true;
                break;
            }
        }
        if (!restarted)
            --i;
    }

    order_ = 1;
    order_factors_.clear();
    for (const auto& level : levels_) {
        order_ *= level.orbit.size();
        if (level.orbit.size() > 1)
            order_factors_ = arith::multiply(order_factors_, arith::factor(level.orbit.size()));
    }
}

std::vector<std::size_t> PermGroup::basic_orbit_sizes() const
{
    std::vector<std::size_t> sizes;
    for (const auto& level : levels_)
        sizes.push_back(level.orbit.size());
    return sizes;
}

bool PermGroup::contains(const Permutation& s) const
{
    if (s.degree() != degree_)
        throw std::invalid_argument("contains: degree mismatch");
    auto [residue, stop] = sift(s, 0);
    return stop == levels_.size() && residue.is_identity();
}

std::vector<Point> PermGroup::orbit(Point point) const
{
    if (point >= degree_)
        throw std::out_of_range("orbit: point out of range");
    std::vector<bool> seen(degree_, false);
    std::vector<Point> out{point};
    seen[point] = true;
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (const auto& g : gens_) {
            const Point c = g(out[k]);
            if (!seen[c]) {
                seen[c] = true;
                out.push_back(c);
            }
        }
    }
    return out;
}

bool PermGroup::is_transitive() const
{
    return degree_ == 0 || orbit(0).size() == degree_;
}

bool PermGroup::is_two_transitive() const
{
    if (degree_ < 2 || !is_transitive())
        return false;
    // The first base point is the least moved point, 0 for a transitive group.
    if (levels_.size() < 2 || base_[0] != 0)
        return false;
    return levels_[1].orbit.size() == degree_ - 1;
}

std::vector<std::vector<Point>> PermGroup::orbits() const
{
    std::vector<bool> seen(degree_, false);
    std::vector<std::vector<Point>> out;
    for (Point p = 0; p < degree_; ++p) {
        if (seen[p])
            continue;
        auto o = orbit(p);
        for (Point x : o)
            seen[x] = true;
        std::sort(o.begin(), o.end());
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace vscert
