#include "vscert/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "vscert/projective.hpp"

namespace vscert {

using nlohmann::json;
using nlohmann::ordered_json;

void CaseSpec::validate() const
{
    if (kind == Kind::m12)
        return;
    if (m <= 2)
        throw std::invalid_argument("case psl: m must be greater than 2");
    if (q < 3)
        throw std::invalid_argument("case psl: q must be an odd prime power");
    const auto f = arith::factor(q);
    if (f.size() != 1 || f.begin()->first == 2)
        throw std::invalid_argument("case psl: q must be an odd prime power");
}

std::string CaseSpec::case_key() const
{
    if (kind == Kind::m12)
        return "M12";
    return "L" + std::to_string(m) + "_" + std::to_string(q);
}

std::string FactsSource::label() const { return kind == "file" ? "file:" + path : kind; }

std::string to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::end_is_z:
        return "END_IS_Z";
    case Conclusion::end_is_z_or_supersingular:
        return "END_IS_Z_OR_SUPERSINGULAR";
    case Conclusion::incomplete:
        return "INCOMPLETE";
    }
    return "INCOMPLETE";
}

int exit_code(Conclusion c) { return c == Conclusion::incomplete ? 2 : 0; }

FactsLedger load_facts(const FactsSource& source)
{
    if (source.kind == "builtin")
        return FactsLedger::builtin();
    if (source.kind == "empty")
        return FactsLedger{};
    if (source.kind == "file")
        return FactsLedger::load_file(source.path);
    throw FactsError("unknown facts source '" + source.kind + "'");
}

namespace {

const char* bridge_step =
    "For y^2 = f(x) with deg f = n and Galois group G acting on the roots R, the G-module of points of order 2 "
    "of the jacobian is isomorphic to Q_R; so it is very simple whenever Q_R is";
const char* dichotomy_step =
    "If the 2-torsion module of the jacobian is very simple, then either End = Z, or char K > 0 and the jacobian "
    "is supersingular";
const char* overgroup_step =
    "A module that is very simple for a subgroup is very simple for every overgroup acting through it; after a "
    "finite extension of the base field the Galois group may be taken to be L_m(q)";

std::vector<Permutation> to_permutations(const std::vector<MatrixFq>& mats, const ProjectiveSpace& space)
{
    std::vector<Permutation> out;
    for (const auto& a : mats)
        out.push_back(action_to_permutation(a, space));
    return out;
}

GroupSummary summarize(const PermGroup& g, std::string name, std::string simplicity)
{
    GroupSummary s;
    s.name = std::move(name);
    s.degree = g.degree();
    s.generator_count = g.generators().size();
    s.order = g.order();
    s.factorization = g.order_factorization();
    s.transitive = g.is_transitive();
    s.two_transitive = g.is_two_transitive();
    s.base.assign(g.base().begin(), g.base().end());
    s.simplicity = std::move(simplicity);
    return s;
}

void decide_conclusion(CaseReport& r)
{
    r.conclusion = Conclusion::incomplete;
    if (!r.very_simple) {
        return;
    }
    if (!r.very_simple->verdict) {
        r.reason = "very-simple certificate: " + r.very_simple->reason;
        return;
    }
    if (r.direct && r.direct->verdict == DirectVerdict::not_very_simple) {
        r.reason = "direct check found a stable proper subalgebra, contradicting the criterion";
        return;
    }
    if (r.n % 2 == 1) {
        r.conclusion = Conclusion::end_is_z_or_supersingular;
        r.reason = "n odd: the supersingular branch is not excluded";
        return;
    }
    if (!r.exclusion || !r.exclusion->verdict) {
        r.reason = "exclusion: " + (r.exclusion ? r.exclusion->reason : std::string("not run"));
        return;
    }
    r.conclusion = Conclusion::end_is_z;
    r.reason.clear();
}

} // namespace

CaseReport run_case(const CaseSpec& spec, const FactsLedger& ledger, const FactsSource& source)
{
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    CaseReport r;
    r.spec = spec;
    r.facts_source = source;
    r.facts_digest = ledger.digest();
    r.cited_steps = {bridge_step, dichotomy_step};

    std::optional<PermGroup> group;
    CaseFacts facts;
    if (spec.kind == CaseSpec::Kind::psl) {
        const auto f = arith::factor(spec.q);
        const FqField field(static_cast<std::uint32_t>(f.begin()->first), f.begin()->second);
        const ProjectiveSpace space(field, spec.m);
        const std::string name = "L" + std::to_string(spec.m) + "(" + std::to_string(spec.q) + ")";
        group = PermGroup::build_chain(to_permutations(sl_generators(spec.m, field), space), space.size());
        r.group = summarize(*group, name, "L_m(q) is simple for m >= 3 (Jordan-Dickson)");
        r.group->formula_order = arith::to_integer(arith::psl_order(spec.m, spec.q));
        if (*r.group->formula_order != group->order())
            throw std::logic_error("stabilizer chain order differs from the order formula for " + name);
        if (spec.pgl) {
            const auto pgl = PermGroup::build_chain(to_permutations(gl_generators(spec.m, field), space), space.size());
            OvergroupSummary o;
            o.name = "PGL" + std::to_string(spec.m) + "(" + std::to_string(spec.q) + ")";
            o.order = pgl.order();
            o.formula_order = arith::to_integer(arith::pgl_order(spec.m, spec.q));
            if (o.order != o.formula_order)
                throw std::logic_error("stabilizer chain order differs from the order formula for " + o.name);
            o.contains_subgroup = true;
            for (const auto& s : group->generators())
                o.contains_subgroup = o.contains_subgroup && pgl.contains(s);
            r.overgroup = o;
            r.cited_steps.push_back(overgroup_step);
        }
        r.n = space.size();
        r.g = genus_of(r.n);
        facts = CaseFacts(ledger, spec.case_key(), "Lmq_generic", static_cast<std::int64_t>(r.n),
                          static_cast<std::int64_t>(r.g));
    } else {
        const auto* rec = ledger.find("M12");
        if (!rec || rec->generators.empty()) {
            r.n = 12;
            r.g = genus_of(r.n);
            r.reason = "the ledger has no M12 generators";
            return r;
        }
        group = PermGroup::build_chain(rec->generators);
        r.group = summarize(*group, "M12", "M12 is simple (Mathieu)");
        r.n = group->degree();
        r.g = genus_of(r.n);
        facts = CaseFacts(ledger, "M12", "", static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.g));
    }
    if (facts.record() && facts.record()->order && facts.record()->order->value != group->order())
        throw FactsError("ledger order for " + facts.record()->key + " differs from the computed order " +
                         group->order().str());

    const GModule heart = heart_module(*group);
    r.very_simple = check_very_simple_via_criterion(heart, *group, facts, true, spec.budget);
    if (spec.direct)
        r.direct = check_very_simple_direct(heart, spec.lattice_budget, spec.budget);
    r.exclusion = not_supersingular(spec.case_key(), r.n, group->order_factorization(), true, facts);
    decide_conclusion(r);
    if (spec.timing)
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

ordered_json factorization_json(const Factorization& f)
{
    ordered_json j = ordered_json::object();
    for (auto [p, e] : f)
        j[std::to_string(p)] = e;
    return j;
}

ordered_json evidence_json(const ProofOrFact& e) { return ordered_json(to_json(e)); }

ordered_json group_json(const GroupSummary& g)
{
    ordered_json j;
    j["name"] = g.name;
    j["degree"] = g.degree;
    j["generators"] = g.generator_count;
    j["order"] = g.order.str();
    j["order_factorization"] = factorization_json(g.factorization);
    if (g.formula_order) {
        j["order_formula"] = g.formula_order->str();
        j["order_matches_formula"] = *g.formula_order == g.order;
    }
    j["transitive"] = g.transitive;
    j["two_transitive"] = g.two_transitive;
    j["base"] = g.base;
    j["simplicity"] = g.simplicity;
    return j;
}

ordered_json module_json(const CaseReport& r)
{
    const auto& c = *r.very_simple;
    const auto& a = c.abs_simple;
    ordered_json j;
    j["label"] = c.module_label;
    j["dim"] = c.N;
    j["dim_rule"] = r.n % 2 ? "n - 1 (n odd)" : "n - 2 (n even)";
    j["irreducibility"] = to_string(a.irreducible);
    j["norton_theta"] = a.norton.theta ? a.norton.theta->to_string() : std::string();
    j["norton_nullity"] = a.norton.nullity;
    j["norton_candidates"] = a.norton.candidates_tried;
    j["norton_spins"] = a.norton.spins;
    j["commutant_dim"] = a.commutant_dim ? ordered_json(*a.commutant_dim) : ordered_json(nullptr);
    j["commutant_method"] = a.commutant_method;
    j["absolutely_simple"] = a.absolutely_simple;
    j["faithful"] = c.faithful;
    return j;
}

ordered_json very_simple_json(const VerySimpleCertificate& c)
{
    ordered_json j;
    j["N"] = c.N;
    j["index_legs"] = ordered_json::array();
    for (const auto& [d, e] : c.index_condition) {
        ordered_json leg;
        leg["d"] = d;
        const auto ev = evidence_json(e);
        for (const auto& [k, v] : ev.items())
            leg[k] = v;
        j["index_legs"].push_back(leg);
    }
    j["dimension_legs"] = ordered_json::array();
    for (const auto& leg : c.dim_condition)
        j["dimension_legs"].push_back({{"a", leg.a},
                                       {"b", leg.b},
                                       {"side_a", evidence_json(leg.side_a)},
                                       {"side_b", evidence_json(leg.side_b)},
                                       {"closed_by", leg.closed_by()}});
    j["verdict"] = c.verdict;
    j["reason"] = c.reason;
    return j;
}

ordered_json direct_json(const DirectCheck& d)
{
    ordered_json j;
    j["verdict"] = to_string(d.verdict);
    j["lattice_status"] = to_string(d.lattice_status);
    j["submodules"] = d.submodules;
    j["candidates"] = d.candidates;
    j["witness_dim"] = d.witness.size();
    j["reason"] = d.reason;
    return j;
}

ordered_json exclusion_json(const ExclusionCertificate& e)
{
    ordered_json j;
    j["case"] = e.case_key;
    j["n"] = e.n;
    j["g"] = e.g;
    j["applicable"] = e.applicable;
    if (e.applicable) {
        j["gate1_central_kernel"] = evidence_json(e.gate1);
        j["gate2_double_cover"] = evidence_json(e.gate2);
        j["status"] = e.verdict ? "EXCLUDED" : "UNKNOWN";
    } else {
        j["status"] = "NOT_APPLICABLE";
    }
    j["verdict"] = e.verdict;
    j["reason"] = e.reason;
    return j;
}

} // namespace

ordered_json report_to_json(const CaseReport& r)
{
    ordered_json j;
    j["schema"] = std::string(report_schema);
    ordered_json in;
    in["case"] = r.spec.kind == CaseSpec::Kind::psl ? "psl" : "m12";
    if (r.spec.kind == CaseSpec::Kind::psl) {
        in["m"] = r.spec.m;
        in["q"] = r.spec.q;
        in["variant"] = r.spec.pgl ? "PGL" : "PSL";
    }
    in["budgets"] = {{"meataxe_candidates", r.spec.budget.max_candidates},
                     {"meataxe_max_nullity", r.spec.budget.max_nullity},
                     {"meataxe_spins", r.spec.budget.max_spins},
                     {"meataxe_seed", r.spec.budget.seed},
                     {"lattice_candidates", r.spec.lattice_budget}};
    in["direct_check"] = r.spec.direct;
    in["facts"] = {{"source", r.facts_source.kind}, {"path", r.facts_source.path}, {"digest", r.facts_digest}};
    j["inputs"] = in;
    j["n"] = r.n;
    j["g"] = r.g;
    j["parity"] = r.n % 2 ? "odd" : "even";
    j["group"] = r.group ? group_json(*r.group) : ordered_json(nullptr);
    if (r.overgroup)
        j["overgroup"] = {{"name", r.overgroup->name},
                          {"order", r.overgroup->order.str()},
                          {"order_formula", r.overgroup->formula_order.str()},
                          {"contains_certified_subgroup", r.overgroup->contains_subgroup}};
    j["module"] = r.very_simple ? module_json(r) : ordered_json(nullptr);
    j["very_simple"] = r.very_simple ? very_simple_json(*r.very_simple) : ordered_json(nullptr);
    if (r.direct)
        j["direct_check"] = direct_json(*r.direct);
    j["exclusion"] = r.exclusion ? exclusion_json(*r.exclusion) : ordered_json(nullptr);
    j["cited_steps"] = r.cited_steps;
    j["conclusion"] = {{"verdict", to_string(r.conclusion)}, {"reason", r.reason}};
    if (r.seconds)
        j["timing"] = {{"seconds", *r.seconds}};
    return j;
}

namespace {

void text_evidence(std::ostringstream& os, const ProofOrFact& e)
{
    os << to_string(e.kind) << ": " << e.detail;
    for (const auto& f : e.facts)
        os << " [" << f.record << "." << f.field << " = " << f.value.dump() << "; " << f.provenance << "]";
}

std::string text_report(const CaseReport& r)
{
    std::ostringstream os;
    os << "vscert report (" << report_schema << ")\n";
    os << "case: " << r.spec.case_key() << (r.spec.pgl ? " (PGL variant)" : "") << "\n";
    os << "facts: " << r.facts_source.label() << " (digest " << r.facts_digest << ")\n";
    os << "n = " << r.n << ", g = " << r.g << ", n is " << (r.n % 2 ? "odd" : "even") << "\n\n";
    if (r.group) {
        const auto& g = *r.group;
        os << "[group] " << g.name << " on " << g.degree << " points, order " << g.order << " = "
           << arith::to_string(g.factorization);
        if (g.formula_order)
            os << " (order formula: " << *g.formula_order << (*g.formula_order == g.order ? ", match" : ", MISMATCH")
               << ")";
        os << "; transitive: " << (g.transitive ? "yes" : "no") << ", 2-transitive: " << (g.two_transitive ? "yes" : "no")
           << "\n        simplicity: " << g.simplicity << "\n";
    }
    if (r.overgroup)
        os << "[overgroup] " << r.overgroup->name << ", order " << r.overgroup->order << ", contains the certified group: "
           << (r.overgroup->contains_subgroup ? "yes" : "no") << "\n";
    if (r.very_simple) {
        const auto& c = *r.very_simple;
        const auto& a = c.abs_simple;
        os << "[heart module] Q_B of dimension " << c.N << (r.n % 2 ? " = n - 1" : " = n - 2") << "\n";
        os << "[absolute simplicity] Norton test " << to_string(a.irreducible);
        if (a.norton.theta)
            os << " with theta = " << a.norton.theta->to_string() << " (nullity " << a.norton.nullity << ")";
        if (a.commutant_dim)
            os << "; commutant dimension " << *a.commutant_dim << " (" << a.commutant_method << ")";
        os << "\n[very-simple criterion] N = " << c.N << "\n";
        for (const auto& [d, e] : c.index_condition) {
            os << "  no subgroup of index " << d << ": ";
            text_evidence(os, e);
            os << "\n";
        }
        for (const auto& leg : c.dim_condition) {
            os << "  N = " << leg.a << " x " << leg.b << " (closed by " << leg.closed_by() << ")\n    dim "
               << leg.a << ": ";
            text_evidence(os, leg.side_a);
            os << "\n    dim " << leg.b << ": ";
            text_evidence(os, leg.side_b);
            os << "\n";
        }
        os << "  verdict: " << (c.verdict ? "very simple" : "not established: " + c.reason) << "\n";
    }
    if (r.direct)
        os << "[direct check] " << to_string(r.direct->verdict) << " (" << r.direct->submodules
           << " submodules of End(V) containing Id, lattice " << to_string(r.direct->lattice_status) << ")"
           << (r.direct->reason.empty() ? "" : ": " + r.direct->reason) << "\n";
    if (r.exclusion) {
        const auto& e = *r.exclusion;
        os << "[supersingular exclusion] ";
        if (!e.applicable) {
            os << "NOT_APPLICABLE (n odd)\n";
        } else {
            os << (e.verdict ? "EXCLUDED" : "UNKNOWN") << "\n  gate 1, central kernel: ";
            text_evidence(os, e.gate1);
            os << "\n  gate 2, double cover: ";
            text_evidence(os, e.gate2);
            os << "\n";
        }
    }
    os << "[cited steps]\n";
    for (const auto& s : r.cited_steps)
        os << "  - " << s << "\n";
    os << "\nconclusion: " << to_string(r.conclusion) << (r.reason.empty() ? "" : " (" + r.reason + ")") << "\n";
    if (r.seconds)
        os << "time: " << *r.seconds << " s\n";
    return os.str();
}

} // namespace

std::string emit_report(const CaseReport& report, ReportFormat format)
{
    if (format == ReportFormat::text)
        return text_report(report);
    return report_to_json(report).dump(2) + "\n";
}

namespace {

CaseSpec spec_from_json(const json& in)
{
    CaseSpec spec;
    const auto kind = in.at("case").get<std::string>();
    if (kind == "psl") {
        spec.kind = CaseSpec::Kind::psl;
        spec.m = in.at("m").get<unsigned>();
        spec.q = in.at("q").get<std::uint64_t>();
        const auto variant = in.at("variant").get<std::string>();
        if (variant != "PSL" && variant != "PGL")
            throw std::invalid_argument("unknown variant '" + variant + "'");
        spec.pgl = variant == "PGL";
    } else if (kind == "m12") {
        spec.kind = CaseSpec::Kind::m12;
    } else {
        throw std::invalid_argument("unknown case '" + kind + "'");
    }
    const auto& b = in.at("budgets");
    spec.budget.max_candidates = b.at("meataxe_candidates").get<std::size_t>();
    spec.budget.max_nullity = b.at("meataxe_max_nullity").get<std::size_t>();
    spec.budget.max_spins = b.at("meataxe_spins").get<std::size_t>();
    spec.budget.seed = b.at("meataxe_seed").get<std::uint64_t>();
    spec.lattice_budget = b.at("lattice_candidates").get<std::size_t>();
    spec.direct = in.at("direct_check").get<bool>();
    return spec;
}

Factorization factorization_from_json(const json& j)
{
    Factorization f;
    for (auto it = j.begin(); it != j.end(); ++it)
        f[std::stoull(it.key())] = it->get<unsigned>();
    return f;
}

// Re-resolves each cited fact of a serialized leg against the ledger.
void check_facts(const json& leg, const FactsLedger& ledger, const std::string& where, std::vector<std::string>& problems)
{
    for (const auto& f : leg.at("facts")) {
        const auto record = f.at("record").get<std::string>();
        const auto field = f.at("field").get<std::string>();
        std::optional<CitedValue> cv;
        try {
            cv = ledger.query(record, field);
        } catch (const FactsError& e) {
            problems.push_back(where + ": cited fact " + record + "." + field + " does not resolve: " + e.what());
            continue;
        }
        if (!cv) {
            problems.push_back(where + ": cited fact " + record + "." + field + " is absent from the ledger");
            continue;
        }
        if (cv->value != f.at("value") || cv->provenance != f.at("provenance").get<std::string>())
            problems.push_back(where + ": cited fact " + record + "." + field + " does not match the ledger");
    }
}

void compare_leg(const json& got, const ProofOrFact& want, const std::string& where, std::vector<std::string>& problems)
{
    const json expect = to_json(want);
    for (const char* key : {"kind", "detail", "facts"})
        if (!got.contains(key) || got.at(key) != expect.at(key))
            problems.push_back(where + ": " + key + " does not re-derive (expected " + expect.at(key).dump() + ")");
}

} // namespace

VerifyResult verify_report(const std::string& text, const std::optional<FactsSource>& facts_override)
{
    VerifyResult out;
    auto& problems = out.problems;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        problems.push_back(std::string("not valid JSON: ") + e.what());
        return out;
    }
    try {
        if (doc.value("schema", std::string()) != report_schema) {
            problems.push_back("schema is not " + std::string(report_schema));
            return out;
        }
        const auto& in = doc.at("inputs");
        const CaseSpec spec = spec_from_json(in);
        FactsSource source;
        source.kind = in.at("facts").at("source").get<std::string>();
        source.path = in.at("facts").at("path").get<std::string>();
        if (facts_override)
            source = *facts_override;
        const FactsLedger ledger = load_facts(source);
        if (ledger.digest() != in.at("facts").at("digest").get<std::string>())
            problems.push_back("inputs.facts.digest: the ledger differs from the one the report was made with");

        // Arithmetic legs are recomputed from the order the report states,
        // after checking that order against its own factorization.
        if (!doc.at("group").is_null()) {
            const auto& g = doc.at("group");
            const auto order = factorization_from_json(g.at("order_factorization"));
            if (arith::to_integer(order).str() != g.at("order").get<std::string>())
                problems.push_back("group.order: does not match its factorization");
            const auto n = doc.at("n").get<std::uint64_t>();
            const auto gen = doc.at("g").get<std::uint64_t>();
            const CaseFacts facts = spec.kind == CaseSpec::Kind::psl
                                        ? CaseFacts(ledger, spec.case_key(), "Lmq_generic", n, gen)
                                        : CaseFacts(ledger, "M12", "", n, gen);
            if (!doc.at("very_simple").is_null()) {
                const auto& vs = doc.at("very_simple");
                for (const auto& leg : vs.at("index_legs")) {
                    const auto d = leg.at("d").get<std::uint64_t>();
                    const std::string where = "very_simple.index_legs[d=" + std::to_string(d) + "]";
                    if (d < 2) {
                        problems.push_back(where + ": d must exceed 1");
                        continue;
                    }
                    compare_leg(leg, no_subgroup_of_index(order, d, true, facts), where, problems);
                    check_facts(leg, ledger, where, problems);
                }
                for (const auto& leg : vs.at("dimension_legs")) {
                    const auto a = leg.at("a").get<std::uint64_t>();
                    const auto b = leg.at("b").get<std::uint64_t>();
                    const std::string where =
                        "very_simple.dimension_legs[" + std::to_string(a) + "x" + std::to_string(b) + "]";
                    if (a < 2 || b < 2) {
                        problems.push_back(where + ": sides must exceed 1");
                        continue;
                    }
                    compare_leg(leg.at("side_a"), no_simple_module_of_dim(order, a, true, facts), where + ".side_a",
                                problems);
                    compare_leg(leg.at("side_b"), no_simple_module_of_dim(order, b, true, facts), where + ".side_b",
                                problems);
                    check_facts(leg.at("side_a"), ledger, where + ".side_a", problems);
                    check_facts(leg.at("side_b"), ledger, where + ".side_b", problems);
                }
            }
            const auto& ex = doc.at("exclusion");
            if (!ex.is_null() && ex.value("applicable", false) && gen >= 1) {
                compare_leg(ex.at("gate1_central_kernel"), central_kernel_gate(order, facts, gen, true),
                            "exclusion.gate1_central_kernel", problems);
                compare_leg(ex.at("gate2_double_cover"), double_cover_gate(facts, gen), "exclusion.gate2_double_cover",
                            problems);
                check_facts(ex.at("gate1_central_kernel"), ledger, "exclusion.gate1_central_kernel", problems);
                check_facts(ex.at("gate2_double_cover"), ledger, "exclusion.gate2_double_cover", problems);
            }
        }

        // Everything else, module computations included, by re-running the case.
        const CaseReport again = run_case(spec, ledger, source);
        json fresh = json::parse(emit_report(again, ReportFormat::json));
        json given = doc;
        given.erase("timing");
        if (facts_override)
            given["inputs"]["facts"] = fresh["inputs"]["facts"];
        for (const auto& op : json::diff(fresh, given))
            problems.push_back("re-run differs at " + op.at("path").get<std::string>() + " (" +
                               op.at("op").get<std::string>() + ")");
        out.conclusion = again.conclusion;
    } catch (const std::exception& e) {
        problems.push_back(std::string("malformed report: ") + e.what());
    }
    out.ok = problems.empty();
    return out;
}

} // namespace vscert
