#include "vscert/meataxe.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vscert {

using Word = F2Matrix::Word;

std::string AlgebraElement::to_string() const
{
    if (words.empty())
        return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i)
            os << " + ";
        if (words[i].empty()) {
            os << "1";
            continue;
        }
        for (std::size_t j = 0; j < words[i].size(); ++j) {
            if (j)
                os << '*';
            os << 'g' << words[i][j];
        }
    }
    return os.str();
}

F2Matrix evaluate(const GModule& v, const AlgebraElement& theta)
{
    F2Matrix acc(v.dim(), v.dim());
    for (const auto& word : theta.words) {
        F2Matrix m = F2Matrix::identity(v.dim());
        for (std::size_t g : word) {
            if (g >= v.gens().size())
                throw std::invalid_argument("evaluate: generator index out of range");
            m = mat_mul(m, v.gens()[g]);
        }
        acc += m;
    }
    return acc;
}

namespace {

// Spins the seed rows already inserted into eb; stops early at `limit`.
void spin_closure(const GModule& v, EchelonBasis& eb, std::size_t limit)
{
    for (std::size_t i = 0; i < eb.dim() && eb.dim() < limit; ++i) {
        for (const auto& g : v.gens()) {
            eb.insert(vec_mul(eb.row(i), g));
            if (eb.dim() >= limit)
                return;
        }
    }
}

std::size_t spin_dimension(const GModule& v, std::span<const Word> seed)
{
    EchelonBasis eb(v.dim());
    eb.insert(F2Vector(seed.begin(), seed.end()));
    spin_closure(v, eb, v.dim());
    return eb.dim();
}

struct NortonOutcome {
    bool usable = false;
    Irreducibility verdict = Irreducibility::inconclusive;
    std::optional<SubmoduleBasis> witness;
    std::size_t nullity = 0;
};

NortonOutcome norton_with_matrix(const GModule& v, const GModule& dual, const F2Matrix& t,
                                 const MeataxeBudget& budget, std::size_t& spins)
{
    NortonOutcome out;
    const F2Matrix kernel = left_nullspace(t); // rows x with x t = 0
    out.nullity = kernel.rows();
    if (out.nullity == 0 || out.nullity > budget.max_nullity)
        return out;
    const std::size_t count = (std::size_t{1} << out.nullity) - 1;
    if (spins + count + 1 > budget.max_spins)
        return out;
    out.usable = true;

    F2Vector x(f2_words(v.dim()), 0);
    for (std::size_t i = 1; i <= count; ++i) {
        // Gray-code walk through the nonzero kernel vectors.
        const std::size_t flip = static_cast<std::size_t>(std::countr_zero(i));
        for (std::size_t w = 0; w < x.size(); ++w)
            x[w] ^= kernel.row(flip)[w];
        ++spins;
        if (spin_dimension(v, x) < v.dim()) {
            out.verdict = Irreducibility::reducible;
            out.witness = spin(v, x);
            return out;
        }
    }

    // Kernel of the transpose, spun in the dual module.
    const F2Matrix tkernel = nullspace(t); // rows y with t y^T = 0, i.e. y t^T = 0
    ++spins;
    const SubmoduleBasis w = spin(dual, tkernel.row(0));
    if (w.dim() < v.dim()) {
        // Its annihilator is a proper nonzero submodule of V.
        out.verdict = Irreducibility::reducible;
        out.witness = make_subspace(nullspace(w.basis));
        return out;
    }
    out.verdict = Irreducibility::irreducible;
    return out;
}

} // namespace

SubmoduleBasis spin(const GModule& v, const F2Matrix& seeds)
{
    if (seeds.cols() != v.dim())
        throw std::invalid_argument("spin: seed dimension mismatch");
    EchelonBasis eb(v.dim());
    for (std::size_t r = 0; r < seeds.rows(); ++r) {
        auto s = seeds.row(r);
        eb.insert(F2Vector(s.begin(), s.end()));
    }
    spin_closure(v, eb, v.dim() + 1);
    auto red = rref([&] {
        F2Matrix m(0, v.dim());
        for (std::size_t i = 0; i < eb.dim(); ++i)
            m.append_row(eb.row(i));
        return m;
    }());
    return SubmoduleBasis{std::move(red.reduced), std::move(red.pivots)};
}

SubmoduleBasis spin(const GModule& v, std::span<const Word> seed)
{
    F2Matrix m(0, v.dim());
    m.append_row(seed);
    return spin(v, m);
}

ThetaSequence::ThetaSequence(std::size_t generator_count, std::uint64_t seed)
    : gens_(generator_count), state_(seed)
{
    words_.push_back({});
    std::vector<std::vector<std::size_t>> layer{{}};
    for (int len = 1; len <= 3; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& w : layer)
            for (std::size_t g = 0; g < gens_; ++g) {
                auto x = w;
                x.push_back(g);
                next.push_back(x);
            }
        words_.insert(words_.end(), next.begin(), next.end());
        layer = std::move(next);
    }
}

AlgebraElement ThetaSequence::next()
{
    if (gens_ > 0 && b_ < words_.size()) {
        AlgebraElement e{{words_[a_], words_[b_]}};
        if (++b_ == words_.size()) {
            ++a_;
            b_ = a_ + 1;
        }
        return e;
    }
    // splitmix64 keeps the stream identical on every platform.
    auto draw = [this]() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    AlgebraElement e;
    const std::size_t terms = 2 + draw() % 3;
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<std::size_t> w;
        const std::size_t len = gens_ == 0 ? 0 : 1 + draw() % 6;
        for (std::size_t i = 0; i < len; ++i)
            w.push_back(draw() % gens_);
        e.words.push_back(std::move(w));
    }
    return e;
}

std::string to_string(Irreducibility v)
{
    switch (v) {
    case Irreducibility::irreducible:
        return "IRREDUCIBLE";
    case Irreducibility::reducible:
        return "REDUCIBLE";
    case Irreducibility::inconclusive:
        return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

IrreducibilityResult is_irreducible(const GModule& v, const MeataxeBudget& budget)
{
    if (v.dim() == 0)
        throw std::invalid_argument("is_irreducible: zero-dimensional module");
    IrreducibilityResult res;
    if (v.dim() == 1) {
        res.verdict = Irreducibility::irreducible;
        return res;
    }
    const GModule dual = v.dual();
    ThetaSequence seq(v.gens().size(), budget.seed);
    while (res.candidates_tried < budget.max_candidates) {
        AlgebraElement theta = seq.next();
        ++res.candidates_tried;
        auto out = norton_with_matrix(v, dual, evaluate(v, theta), budget, res.spins);
        if (!out.usable)
            continue;
        res.verdict = out.verdict;
        res.theta = std::move(theta);
        res.nullity = out.nullity;
        res.witness = std::move(out.witness);
        return res;
    }
    return res;
}

Irreducibility norton_check(const GModule& v, const AlgebraElement& theta, const MeataxeBudget& budget)
{
    if (v.dim() == 1)
        return Irreducibility::irreducible;
    std::size_t spins = 0;
    auto out = norton_with_matrix(v, v.dual(), evaluate(v, theta), budget, spins);
    return out.usable ? out.verdict : Irreducibility::inconclusive;
}

Commutant endomorphism_algebra(const GModule& v)
{
    const std::size_t d = v.dim();
    const std::size_t unknowns = d * d;
    EchelonBasis eqs(unknowns);
    F2Vector row(f2_words(unknowns));
    for (const auto& g : v.gens()) {
        // Entry (r, c) of X g + g X.
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                std::fill(row.begin(), row.end(), 0);
                for (std::size_t k = 0; k < d; ++k) {
                    if (g.get(k, c))
                        flip_bit(row, r * d + k);
                    if (g.get(r, k))
                        flip_bit(row, k * d + c);
                }
                eqs.insert(row);
            }
    }
    F2Matrix system(0, unknowns);
    for (std::size_t i = 0; i < eqs.dim(); ++i)
        system.append_row(eqs.row(i));
    const F2Matrix sol = nullspace(system);
    Commutant out;
    for (std::size_t i = 0; i < sol.rows(); ++i)
        out.basis.push_back(unvec(sol.row(i), d));
    return out;
}

std::size_t endomorphism_dimension_by_spin(const GModule& v, const AlgebraElement& theta)
{
    const std::size_t d = v.dim();
    const F2Matrix kernel = left_nullspace(evaluate(v, theta));
    if (kernel.rows() == 0)
        throw std::invalid_argument("endomorphism_dimension_by_spin: theta is nonsingular");
    if (kernel.rows() > 20)
        throw std::invalid_argument("endomorphism_dimension_by_spin: kernel too large");

    // Standard basis spun from the first kernel vector, remembering each step.
    struct Step {
        std::size_t parent;
        std::size_t gen;
    };
    std::vector<F2Vector> basis;
    std::vector<Step> steps;
    EchelonBasis eb(d);
    {
        auto s = kernel.row(0);
        basis.emplace_back(s.begin(), s.end());
        eb.insert(basis.back());
        steps.push_back({0, 0});
    }
    for (std::size_t i = 0; i < basis.size() && basis.size() < d; ++i)
        for (std::size_t g = 0; g < v.gens().size() && basis.size() < d; ++g) {
            auto w = vec_mul(basis[i], v.gens()[g]);
            if (eb.insert(w)) {
                basis.push_back(std::move(w));
                steps.push_back({i, g});
            }
        }
    if (basis.size() != d)
        throw std::invalid_argument("endomorphism_dimension_by_spin: kernel vector does not generate V");

    F2Matrix b(0, d);
    for (const auto& x : basis)
        b.append_row(x);
    const auto binv = inverse(b);
    // Coordinates of basis[i] * g in the spun basis.
    std::vector<std::vector<F2Vector>> coords(d);
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& g : v.gens())
            coords[i].push_back(vec_mul(vec_mul(basis[i], g), *binv));

    std::size_t homs = 0;
    const std::size_t total = std::size_t{1} << kernel.rows();
    for (std::size_t mask = 0; mask < total; ++mask) {
        F2Vector u(f2_words(d), 0);
        for (std::size_t j = 0; j < kernel.rows(); ++j)
            if ((mask >> j) & 1u)
                for (std::size_t w = 0; w < u.size(); ++w)
                    u[w] ^= kernel.row(j)[w];
        F2Matrix images(0, d);
        images.append_row(u);
        for (std::size_t i = 1; i < d; ++i)
            images.append_row(vec_mul(images.row(steps[i].parent), v.gens()[steps[i].gen]));
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i)
            for (std::size_t g = 0; g < v.gens().size() && ok; ++g)
                ok = vec_mul(coords[i][g], images) == vec_mul(images.row(i), v.gens()[g]);
        if (ok)
            ++homs;
    }
    if (!std::has_single_bit(homs))
        throw std::logic_error("endomorphism_dimension_by_spin: hom count is not a power of two");
    return static_cast<std::size_t>(std::countr_zero(homs));
}

AbsoluteSimplicity is_absolutely_simple(const GModule& v, const MeataxeBudget& budget, std::size_t linear_solve_cap)
{
    AbsoluteSimplicity out;
    out.norton = is_irreducible(v, budget);
    out.irreducible = out.norton.verdict;
    if (out.irreducible != Irreducibility::irreducible)
        return out;
    if (v.dim() <= linear_solve_cap || !out.norton.theta) {
        out.commutant_dim = endomorphism_algebra(v).dim();
        out.commutant_method = "linear-solve";
    } else {
        out.commutant_dim = endomorphism_dimension_by_spin(v, *out.norton.theta);
        out.commutant_method = "kernel-spin";
    }
    out.absolutely_simple = *out.commutant_dim == 1;
    return out;
}

std::optional<std::vector<GModule>> composition_factors(const GModule& v, const MeataxeBudget& budget)
{
    auto r = is_irreducible(v, budget);
    if (r.verdict == Irreducibility::inconclusive)
        return std::nullopt;
    if (r.verdict == Irreducibility::irreducible)
        return std::vector<GModule>{v};
    auto lower = composition_factors(restrict_to(v, *r.witness), budget);
    auto upper = composition_factors(quotient(v, *r.witness).module, budget);
    if (!lower || !upper)
        return std::nullopt;
    lower->insert(lower->end(), upper->begin(), upper->end());
    return lower;
}

GModule conjugation_module(const GModule& v, std::size_t cap)
{
    if (v.dim() > cap)
        throw std::invalid_argument("conjugation_module: dimension exceeds cap");
    std::vector<F2Matrix> gens;
    for (const auto& g : v.gens())
        gens.push_back(kron(g.transpose(), *inverse(g)));
    return GModule(v.dim() * v.dim(), std::move(gens), "End(" + v.label() + ")");
}

F2Vector vec_of(const F2Matrix& x)
{
    const std::size_t d = x.rows();
    F2Vector out(f2_words(d * x.cols()), 0);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < x.cols(); ++c)
            if (x.get(r, c))
                flip_bit(out, r * x.cols() + c);
    return out;
}

F2Matrix unvec(std::span<const Word> v, std::size_t dim)
{
    F2Matrix x(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (bit_of(v, r * dim + c))
                x.set(r, c, true);
    return x;
}

} // namespace vscert
