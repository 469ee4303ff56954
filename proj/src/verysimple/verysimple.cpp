#include "vscert/verysimple.hpp"

#include <sstream>

namespace vscert {

namespace {

// First prime whose exponent in |G| exceeds the bound; 0 if none does.
template <class Valuation>
std::uint64_t excess_prime(const Factorization& order, Valuation bound)
{
    for (auto [p, e] : order)
        if (e > bound(p))
            return p;
    return 0;
}

std::string not_simple_detail() { return "G is not known to be simple non-abelian; no criterion applies"; }

} // namespace

ProofOrFact no_subgroup_of_index(const Factorization& order, std::uint64_t d, bool simple, const CaseFacts& facts)
{
    ProofOrFact out;
    if (d < 2)
        throw std::invalid_argument("no_subgroup_of_index: d must exceed 1");
    if (!simple) {
        out.detail = not_simple_detail();
        return out;
    }
    const auto p = excess_prime(order, [d](std::uint64_t q) { return arith::half_factorial_valuation(d, q); });
    if (p) {
        std::ostringstream os;
        os << "v_" << p << "(|G|) = " << order.at(p) << " > v_" << p << "(" << d << "!/2) = "
           << arith::half_factorial_valuation(d, p) << "; a subgroup of index " << d
           << " would embed G in A_" << d;
        out.kind = EvidenceKind::arithmetic_proof;
        out.detail = os.str();
        return out;
    }
    if (auto f = facts.integer("min_proper_subgroup_index"); f && *f->evaluated > static_cast<std::int64_t>(d)) {
        out.kind = EvidenceKind::cited_fact;
        out.detail = "every proper subgroup has index >= " + std::to_string(*f->evaluated) + " > " + std::to_string(d);
        out.facts.push_back(*f);
        return out;
    }
    if (auto f = facts.integer("min_nontrivial_dim_mod2"); f && *f->evaluated >= static_cast<std::int64_t>(d)) {
        out.kind = EvidenceKind::cited_fact;
        out.detail = "a subgroup H of index " + std::to_string(d) + " gives a faithful Q_{G/H} of dimension < " +
                     std::to_string(d) + ", but nontrivial 2-modular dimensions are >= " +
                     std::to_string(*f->evaluated);
        out.facts.push_back(*f);
        return out;
    }
    out.detail = "|G| divides " + std::to_string(d) + "!/2 and no ledger fact excludes index " + std::to_string(d);
    return out;
}

ProofOrFact no_simple_module_of_dim(const Factorization& order, std::uint64_t d, bool simple, const CaseFacts& facts)
{
    ProofOrFact out;
    if (d < 2)
        throw std::invalid_argument("no_simple_module_of_dim: d must exceed 1");
    if (!simple) {
        out.detail = not_simple_detail();
        return out;
    }
    const auto p = excess_prime(order, [d](std::uint64_t q) { return arith::gl2_valuation(d, q); });
    if (p) {
        std::ostringstream os;
        os << "v_" << p << "(|G|) = " << order.at(p) << " > v_" << p << "(|GL_" << d
           << "(F_2)|) = " << arith::gl2_valuation(d, p) << "; a simple module of dimension " << d
           << " would be faithful";
        out.kind = EvidenceKind::arithmetic_proof;
        out.detail = os.str();
        return out;
    }
    if (auto f = facts.integer("min_nontrivial_dim_mod2"); f && *f->evaluated > static_cast<std::int64_t>(d)) {
        out.kind = EvidenceKind::cited_fact;
        out.detail = "nontrivial 2-modular dimensions are >= " + std::to_string(*f->evaluated) + " > " +
                     std::to_string(d);
        out.facts.push_back(*f);
        return out;
    }
    out.detail = "|G| divides |GL_" + std::to_string(d) + "(F_2)| and no ledger fact excludes dimension " +
                 std::to_string(d);
    return out;
}

std::string DimensionLeg::closed_by() const
{
    if (side_a.closed() && side_b.closed())
        return "both";
    if (side_a.closed())
        return "a";
    if (side_b.closed())
        return "b";
    return "none";
}

void fill_criterion_legs(VerySimpleCertificate& cert, const Factorization& order, bool simple, const CaseFacts& facts)
{
    cert.index_condition.clear();
    cert.dim_condition.clear();
    const std::uint64_t n = cert.N;
    for (std::uint64_t d = 2; d <= n; ++d)
        if (n % d == 0)
            cert.index_condition.emplace(d, no_subgroup_of_index(order, d, simple, facts));
    for (std::uint64_t a = 2; a * a <= n; ++a)
        if (n % a == 0) {
            DimensionLeg leg;
            leg.a = a;
            leg.b = n / a;
            leg.side_a = no_simple_module_of_dim(order, leg.a, simple, facts);
            leg.side_b = no_simple_module_of_dim(order, leg.b, simple, facts);
            cert.dim_condition.push_back(std::move(leg));
        }
}

void decide(VerySimpleCertificate& cert)
{
    cert.verdict = false;
    if (cert.abs_simple.irreducible == Irreducibility::inconclusive) {
        cert.reason = "irreducibility inconclusive within budget";
        return;
    }
    if (!cert.abs_simple.absolutely_simple) {
        cert.reason = "module is not absolutely simple";
        return;
    }
    if (!cert.faithful) {
        cert.reason = "module is not faithful";
        return;
    }
    for (const auto& [d, leg] : cert.index_condition)
        if (!leg.closed()) {
            cert.reason = "index leg d = " + std::to_string(d) + " is UNKNOWN";
            return;
        }
    for (const auto& leg : cert.dim_condition)
        if (!leg.closed()) {
            cert.reason = "dimension leg " + std::to_string(leg.a) + " x " + std::to_string(leg.b) + " is UNKNOWN";
            return;
        }
    cert.verdict = true;
    cert.reason.clear();
}

VerySimpleCertificate check_very_simple_via_criterion(const GModule& v, const PermGroup& g, const CaseFacts& facts,
                                                      bool simple, const MeataxeBudget& budget)
{
    if (v.gens().size() != g.generators().size())
        throw std::invalid_argument("check_very_simple_via_criterion: generator counts differ");
    VerySimpleCertificate cert;
    cert.module_label = v.label();
    cert.N = v.dim();
    cert.abs_simple = is_absolutely_simple(v, budget);
    bool nontrivial = false;
    for (const auto& m : v.gens())
        nontrivial = nontrivial || !m.is_identity();
    cert.faithful = nontrivial && simple;
    fill_criterion_legs(cert, g.order_factorization(), simple, facts);
    decide(cert);
    return cert;
}

std::string to_string(DirectVerdict v)
{
    switch (v) {
    case DirectVerdict::very_simple:
        return "VERY_SIMPLE";
    case DirectVerdict::not_very_simple:
        return "NOT_VERY_SIMPLE";
    case DirectVerdict::budget_exceeded:
        return "BUDGET_EXCEEDED";
    }
    return "BUDGET_EXCEEDED";
}

DirectCheck check_very_simple_direct(const GModule& v, std::size_t lattice_budget, const MeataxeBudget& budget,
                                     std::size_t dim_cap)
{
    DirectCheck out;
    const std::size_t d = v.dim();
    if (d == 1) {
        // End(V) = F Id already.
        out.verdict = DirectVerdict::very_simple;
        out.lattice_status = LatticeStatus::complete;
        return out;
    }
    if (d > dim_cap) {
        out.reason = "dimension " + std::to_string(d) + " above the direct-check cap " + std::to_string(dim_cap);
        return out;
    }
    const GModule end = conjugation_module(v, dim_cap);
    F2Matrix id_row(0, end.dim());
    id_row.append_row(vec_of(F2Matrix::identity(d)));

    LatticeOptions opt;
    opt.max_candidates = lattice_budget;
    opt.base = make_subspace(id_row);
    opt.budget = budget;

    auto closed_subalgebra = [&](const SubmoduleBasis& r) {
        std::vector<F2Matrix> mats;
        for (std::size_t i = 0; i < r.dim(); ++i)
            mats.push_back(unvec(r.basis.row(i), d));
        for (const auto& a : mats)
            for (const auto& b : mats)
                if (!r.contains(vec_of(mat_mul(a, b))))
                    return std::vector<F2Matrix>{};
        return mats;
    };
    auto lat = submodule_lattice(end, opt, [&](const SubmoduleBasis& r) {
        if (r.dim() == 1 || r.dim() == end.dim())
            return true;
        auto mats = closed_subalgebra(r);
        if (mats.empty())
            return true;
        out.witness = std::move(mats);
        return false;
    });
    out.lattice_status = lat.status;
    out.submodules = lat.submodules.size();
    out.candidates = lat.candidates;
    switch (lat.status) {
    case LatticeStatus::stopped:
        out.verdict = DirectVerdict::not_very_simple;
        break;
    case LatticeStatus::complete:
        out.verdict = DirectVerdict::very_simple;
        break;
    default:
        out.verdict = DirectVerdict::budget_exceeded;
        out.reason = to_string(lat.status) + ": " + lat.reason;
        break;
    }
    return out;
}

} // namespace vscert
