#include "vscert/gmodule.hpp"

#include <stdexcept>

namespace vscert {

GModule::GModule(std::size_t dim, std::vector<F2Matrix> gens, std::string label)
    : dim_(dim), gens_(std::move(gens)), label_(std::move(label))
{
    for (const auto& g : gens_) {
        if (g.rows() != dim_ || g.cols() != dim_)
            throw std::invalid_argument("GModule: generator is not dim x dim");
        if (rank(g) != dim_)
            throw std::invalid_argument("GModule: generator is singular");
    }
}

GModule GModule::dual() const
{
    std::vector<F2Matrix> t;
    t.reserve(gens_.size());
    for (const auto& g : gens_)
        t.push_back(g.transpose());
    return GModule(dim_, std::move(t), label_ + "*");
}

bool SubmoduleBasis::contains(std::span<const F2Matrix::Word> v) const
{
    F2Vector tmp(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (bit_of(tmp, pivots[i]))
            for (std::size_t w = 0; w < tmp.size(); ++w)
                tmp[w] ^= basis.row(i)[w];
    return is_zero_vector(tmp);
}

SubmoduleBasis make_subspace(const F2Matrix& spanning)
{
    auto r = rref(spanning);
    return SubmoduleBasis{std::move(r.reduced), std::move(r.pivots)};
}

bool is_stable(const GModule& v, const SubmoduleBasis& u)
{
    for (const auto& g : v.gens())
        for (std::size_t i = 0; i < u.dim(); ++i)
            if (!u.contains(vec_mul(u.basis.row(i), g)))
                return false;
    return true;
}

GModule restrict_to(const GModule& v, const SubmoduleBasis& u)
{
    // In rref, the coordinates of a vector of U are its entries at the pivots.
    std::vector<F2Matrix> gens;
    for (const auto& g : v.gens()) {
        F2Matrix r(u.dim(), u.dim());
        for (std::size_t i = 0; i < u.dim(); ++i) {
            const auto img = vec_mul(u.basis.row(i), g);
            for (std::size_t j = 0; j < u.dim(); ++j)
                if (bit_of(img, u.pivots[j]))
                    r.set(i, j, true);
        }
        gens.push_back(std::move(r));
    }
    return GModule(u.dim(), std::move(gens), v.label() + "|sub");
}

QuotientModule quotient(const GModule& v, const SubmoduleBasis& u)
{
    std::vector<bool> is_pivot(v.dim(), false);
    for (auto p : u.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> complement;
    for (std::size_t c = 0; c < v.dim(); ++c)
        if (!is_pivot[c])
            complement.push_back(c);
    const std::size_t qd = complement.size();
    std::vector<F2Matrix> gens;
    for (const auto& g : v.gens()) {
        F2Matrix r(qd, qd);
        for (std::size_t i = 0; i < qd; ++i) {
            auto src = g.row(complement[i]);
            F2Vector img(src.begin(), src.end());
            // Reduce modulo U so the pivot coordinates vanish.
            for (std::size_t k = 0; k < u.dim(); ++k)
                if (bit_of(img, u.pivots[k]))
                    for (std::size_t w = 0; w < img.size(); ++w)
                        img[w] ^= u.basis.row(k)[w];
            for (std::size_t j = 0; j < qd; ++j)
                if (bit_of(img, complement[j]))
                    r.set(i, j, true);
        }
        gens.push_back(std::move(r));
    }
    return QuotientModule{GModule(qd, std::move(gens), v.label() + "/sub"), std::move(complement)};
}

F2Vector lift(const QuotientModule& q, std::span<const F2Matrix::Word> coords, std::size_t ambient_dim)
{
    F2Vector out(f2_words(ambient_dim), 0);
    for (std::size_t j = 0; j < q.complement.size(); ++j)
        if (bit_of(coords, j))
            flip_bit(out, q.complement[j]);
    return out;
}

GModule permutation_module(const PermGroup& g)
{
    const std::size_t n = g.degree();
    std::vector<F2Matrix> gens;
    for (const auto& s : g.generators()) {
        F2Matrix m(n, n);
        for (Point b = 0; b < n; ++b)
            m.set(b, s(b), true);
        gens.push_back(std::move(m));
    }
    return GModule(n, std::move(gens), "F2^B");
}

F2Vector all_ones(std::size_t n)
{
    F2Vector v(f2_words(n), 0);
    for (std::size_t i = 0; i < n; ++i)
        flip_bit(v, i);
    return v;
}

SubmoduleBasis sum_zero_submodule(const GModule& perm_module)
{
    const std::size_t n = perm_module.dim();
    if (n == 0)
        throw std::invalid_argument("sum_zero_submodule: empty module");
    // Rows e_i + e_{n-1}, already in rref with pivots 0..n-2.
    F2Matrix basis(n - 1, n);
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        basis.set(i, i, true);
        basis.set(i, n - 1, true);
        pivots.push_back(i);
    }
    return SubmoduleBasis{std::move(basis), std::move(pivots)};
}

GModule heart_module(const PermGroup& g)
{
    const std::size_t n = g.degree();
    if (n < 5)
        throw std::invalid_argument("heart_module: need n >= 5");
    const GModule perm = permutation_module(g);
    const GModule zero_sum = restrict_to(perm, sum_zero_submodule(perm));
    if (n % 2 == 1)
        return GModule(zero_sum.dim(), zero_sum.gens(), "Q_B");

    // In the basis e_i + e_{n-1} of (F_2^B)^0, 1_B is the all-ones vector of
    // length n-1. Drop the last basis vector: a coordinate vector c is reduced
    // modulo 1_B by adding all-ones whenever its last entry is set.
    const std::size_t d = n - 2;
    std::vector<F2Matrix> gens;
    for (const auto& h : zero_sum.gens()) {
        F2Matrix r(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            const bool flip_all = h.get(i, n - 2);
            for (std::size_t j = 0; j < d; ++j)
                if (h.get(i, j) != flip_all)
                    r.set(i, j, true);
        }
        gens.push_back(std::move(r));
    }
    return GModule(d, std::move(gens), "Q_B");
}

GModule direct_sum(const GModule& a, const GModule& b)
{
    if (a.gens().size() != b.gens().size())
        throw std::invalid_argument("direct_sum: generator counts differ");
    const std::size_t d = a.dim() + b.dim();
    std::vector<F2Matrix> gens;
    for (std::size_t k = 0; k < a.gens().size(); ++k) {
        F2Matrix m(d, d);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                if (a.gens()[k].get(i, j))
                    m.set(i, j, true);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j)
                if (b.gens()[k].get(i, j))
                    m.set(a.dim() + i, a.dim() + j, true);
        gens.push_back(std::move(m));
    }
    return GModule(d, std::move(gens), a.label() + "+" + b.label());
}

GModule change_basis(const GModule& v, const F2Matrix& p)
{
    auto pinv = inverse(p);
    if (!pinv)
        throw std::invalid_argument("change_basis: singular basis change");
    std::vector<F2Matrix> gens;
    for (const auto& g : v.gens())
        gens.push_back(mat_mul(mat_mul(p, g), *pinv));
    return GModule(v.dim(), std::move(gens), v.label());
}

} // namespace vscert
