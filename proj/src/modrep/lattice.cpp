#include "vscert/lattice.hpp"

#include <bit>
#include <set>
#include <stdexcept>

namespace vscert {

std::string to_string(LatticeStatus s)
{
    switch (s) {
    case LatticeStatus::complete:
        return "COMPLETE";
    case LatticeStatus::exhausted:
        return "EXHAUSTED";
    case LatticeStatus::infeasible:
        return "INFEASIBLE";
    case LatticeStatus::stopped:
        return "STOPPED";
    }
    return "INFEASIBLE";
}

namespace {

using Key = std::pair<std::size_t, std::vector<F2Matrix::Word>>;

Key key_of(const SubmoduleBasis& u) { return {u.dim(), u.basis.data()}; }

// One algebra element per composition factor type, singular on that factor.
// A factor already killed by an earlier element needs none of its own.
std::optional<std::vector<AlgebraElement>> choose_thetas(const GModule& v, const std::vector<GModule>& factors,
                                                         const LatticeOptions& opt)
{
    std::vector<AlgebraElement> chosen;
    for (const auto& f : factors) {
        bool covered = false;
        for (const auto& t : chosen)
            if (rank(evaluate(f, t)) < f.dim()) {
                covered = true;
                break;
            }
        if (covered)
            continue;
        ThetaSequence seq(v.gens().size(), opt.budget.seed);
        std::optional<AlgebraElement> best;
        std::size_t best_nullity = 0;
        // Smallest kernel on V wins; a kernel of dimension <= 4 is good enough.
        for (std::size_t i = 0; i < opt.budget.max_candidates && !(best && best_nullity <= 4); ++i) {
            auto t = seq.next();
            if (rank(evaluate(f, t)) == f.dim())
                continue;
            const std::size_t k = v.dim() - rank(evaluate(v, t));
            if (k <= opt.max_kernel_nullity && (!best || k < best_nullity)) {
                best = t;
                best_nullity = k;
            }
        }
        if (!best)
            return std::nullopt;
        chosen.push_back(*best);
    }
    return chosen;
}

} // namespace

LatticeResult submodule_lattice(const GModule& v, const LatticeOptions& opt, const LatticeVisitor& visit)
{
    LatticeResult res;
    SubmoduleBasis base = opt.base ? *opt.base : SubmoduleBasis{F2Matrix(0, v.dim()), {}};
    if (base.ambient_dim() != v.dim() || !is_stable(v, base))
        throw std::invalid_argument("submodule_lattice: base is not a submodule");

    res.submodules.push_back(base);
    if (visit && !visit(base)) {
        res.status = LatticeStatus::stopped;
        return res;
    }
    if (base.dim() == v.dim()) {
        res.status = LatticeStatus::complete;
        return res;
    }

    const auto factors = composition_factors(quotient(v, base).module, opt.budget);
    if (!factors) {
        res.reason = "composition factors: Norton test inconclusive";
        return res;
    }
    const auto thetas = choose_thetas(v, *factors, opt);
    if (!thetas) {
        res.reason = "no singular algebra element with small kernel for some composition factor";
        return res;
    }

    std::set<Key> seen{key_of(base)};
    std::vector<SubmoduleBasis> layer{base};
    while (!layer.empty()) {
        std::vector<SubmoduleBasis> next;
        for (const auto& u : layer) {
            if (u.dim() == v.dim())
                continue;
            const auto q = quotient(v, u);
            const GModule& qm = q.module;
            std::vector<SubmoduleBasis> simples;
            std::set<Key> spun;
            for (const auto& theta : *thetas) {
                const F2Matrix kernel = left_nullspace(evaluate(qm, theta));
                if (kernel.rows() > opt.max_kernel_nullity) {
                    res.status = LatticeStatus::infeasible;
                    res.reason = "kernel nullity " + std::to_string(kernel.rows()) + " above limit";
                    return res;
                }
                F2Vector x(f2_words(qm.dim()), 0);
                const std::size_t count = (std::size_t{1} << kernel.rows()) - 1;
                for (std::size_t i = 1; i <= count; ++i) {
                    const auto flip = static_cast<std::size_t>(std::countr_zero(i));
                    for (std::size_t w = 0; w < x.size(); ++w)
                        x[w] ^= kernel.row(flip)[w];
                    bool inside = false;
                    for (const auto& s : simples)
                        if (s.contains(x)) {
                            inside = true;
                            break;
                        }
                    if (inside)
                        continue;
                    if (++res.candidates > opt.max_candidates) {
                        res.status = LatticeStatus::exhausted;
                        res.reason = "candidate cap reached";
                        return res;
                    }
                    auto w = spin(qm, x);
                    if (!spun.insert(key_of(w)).second)
                        continue;
                    const auto irr = is_irreducible(restrict_to(qm, w), opt.budget);
                    if (irr.verdict == Irreducibility::inconclusive) {
                        res.status = LatticeStatus::infeasible;
                        res.reason = "Norton test inconclusive on a candidate";
                        return res;
                    }
                    if (irr.verdict == Irreducibility::irreducible)
                        simples.push_back(std::move(w));
                }
            }
            for (const auto& s : simples) {
                F2Matrix span = u.basis;
                for (std::size_t r = 0; r < s.dim(); ++r)
                    span.append_row(lift(q, s.basis.row(r), v.dim()));
                auto cover = make_subspace(span);
                if (!seen.insert(key_of(cover)).second)
                    continue;
                res.submodules.push_back(cover);
                if (visit && !visit(cover)) {
                    res.status = LatticeStatus::stopped;
                    return res;
                }
                next.push_back(std::move(cover));
            }
        }
        layer = std::move(next);
    }
    res.status = LatticeStatus::complete;
    return res;
}

} // namespace vscert
