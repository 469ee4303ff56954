#pragma once

// Dense, deliberately naive reference computations shared by the unit and
// acceptance tests. Nothing here uses the bit-packed linear algebra.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "vscert/gmodule.hpp"

namespace vscert::oracle {

using Vec = std::vector<int>;

inline Vec times(const Vec& v, const F2Matrix& g)
{
    Vec out(g.cols());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            for (std::size_t j = 0; j < g.cols(); ++j)
                out[j] ^= g.get(i, j);
    return out;
}

// Reduced basis kept as rows with a leading 1; returns true when v was new.
struct NaiveSpan {
    std::vector<std::pair<std::size_t, Vec>> rows;
    bool reduce_insert(Vec v)
    {
        for (const auto& [p, r] : rows)
            if (v[p])
                for (std::size_t k = 0; k < v.size(); ++k)
                    v[k] ^= r[k];
        const auto it = std::find(v.begin(), v.end(), 1);
        if (it == v.end())
            return false;
        rows.emplace_back(static_cast<std::size_t>(it - v.begin()), v);
        return true;
    }
};

inline std::size_t naive_spin_dim(const GModule& m, const Vec& seed)
{
    NaiveSpan s;
    std::vector<Vec> todo{seed};
    while (!todo.empty()) {
        Vec v = todo.back();
        todo.pop_back();
        if (!s.reduce_insert(v))
            continue;
        for (const auto& g : m.gens())
            todo.push_back(times(v, g));
    }
    return s.rows.size();
}

// Irreducible iff every nonzero vector spins to the whole space.
inline bool oracle_irreducible(const GModule& m)
{
    const std::size_t d = m.dim();
    for (std::uint64_t x = 1; x < (std::uint64_t{1} << d); ++x) {
        Vec v(d);
        for (std::size_t i = 0; i < d; ++i)
            v[i] = (x >> i) & 1;
        if (naive_spin_dim(m, v) != d)
            return false;
    }
    return true;
}

} // namespace vscert::oracle
