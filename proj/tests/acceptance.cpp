// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "vscert/arith.hpp"
#include "vscert/pipeline.hpp"
#include "vscert/projective.hpp"

using namespace vscert;
using nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_s(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

// |PSL_m(q)| straight from the product formula, in big integers.
BigInt psl_formula(unsigned m, std::uint64_t q)
{
    BigInt r = 1;
    BigInt qq = q;
    for (unsigned i = 0; i < m * (m - 1) / 2; ++i)
        r *= q;
    for (unsigned i = 2; i <= m; ++i) {
        BigInt p = 1;
        for (unsigned k = 0; k < i; ++k)
            p *= qq;
        r *= p - 1;
    }
    return r / std::gcd<std::uint64_t>(m, q - 1);
}

PermGroup psl_group(unsigned m, std::uint64_t q)
{
    const auto f = arith::factor(q);
    const FqField field(static_cast<std::uint32_t>(f.begin()->first), f.begin()->second);
    const ProjectiveSpace space(field, m);
    std::vector<Permutation> g;
    for (const auto& a : sl_generators(m, field))
        g.push_back(action_to_permutation(a, space));
    return PermGroup::build_chain(g, space.size());
}

CaseSpec psl_spec(unsigned m, std::uint64_t q)
{
    CaseSpec s;
    s.m = m;
    s.q = q;
    return s;
}

bool all_kind(const VerySimpleCertificate& c, EvidenceKind k)
{
    for (const auto& [d, leg] : c.index_condition)
        if (leg.kind != k)
            return false;
    for (const auto& leg : c.dim_condition)
        if (leg.side_a.kind != k || leg.side_b.kind != k)
            return false;
    return true;
}

bool uses_field(const ProofOrFact& e, const std::string& field)
{
    for (const auto& f : e.facts)
        if (f.field == field)
            return true;
    return false;
}

Outcome criterion1()
{
    Outcome o;
    const auto t = std::chrono::steady_clock::now();
    const auto r = run_case(psl_spec(4, 3), FactsLedger::builtin());
    const double dt = seconds_since(t);
    o.expect(r.n == 40, "n = 40");
    o.expect(r.g == 19, "g = 19");
    const auto& vs = *r.very_simple;
    o.expect(vs.N == 38, "dim Q_B = 38");
    o.expect(vs.abs_simple.commutant_dim == std::size_t{1}, "commutant dimension 1");
    o.expect(vs.abs_simple.irreducible == Irreducibility::irreducible, "irreducible");
    o.expect(vs.verdict, "very-simple certificate");
    bool index40 = false, mod2 = false;
    for (const auto& [d, leg] : vs.index_condition)
        index40 = index40 || uses_field(leg, "min_proper_subgroup_index");
    for (const auto& leg : vs.dim_condition)
        mod2 = mod2 || uses_field(leg.side_a, "min_nontrivial_dim_mod2") || uses_field(leg.side_b, "min_nontrivial_dim_mod2");
    o.expect(index40 && mod2, "both cited facts used");
    const auto& ex = *r.exclusion;
    o.expect(ex.verdict, "exclusion");
    o.expect(ex.gate1.facts.size() == 1 && ex.gate1.facts[0].evaluated == 26 && 26 > 19, "gate 1 via 26 > 19");
    o.expect(ex.gate2.closed(), "gate 2");
    o.expect(r.conclusion == Conclusion::end_is_z, "END_IS_Z");
    o.expect(dt < 120, "runtime under 2 minutes");
    o.note << " n=" << r.n << " dim=" << vs.N << " g=" << r.g << " commutant=" << vs.abs_simple.commutant_dim.value_or(0)
           << " conclusion=" << to_string(r.conclusion) << " time=" << fmt_s(dt);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    const auto t = std::chrono::steady_clock::now();
    const auto r = run_case(psl_spec(3, 3), FactsLedger{}, FactsSource{"empty", ""});
    const double dt = seconds_since(t);
    o.expect(r.n == 13, "n = 13");
    o.expect(r.very_simple->N == 12, "dim Q_B = 12");
    o.expect(r.group->order == 5616 && psl_formula(3, 3) == 5616, "order 5616 by chain and formula");
    o.expect(r.very_simple->index_condition.size() == 5, "five index legs");
    o.expect(r.very_simple->dim_condition.size() == 2, "two factorizations (four sides)");
    o.expect(all_kind(*r.very_simple, EvidenceKind::arithmetic_proof), "all legs ARITHMETIC_PROOF");
    o.expect(r.conclusion == Conclusion::end_is_z_or_supersingular, "END_IS_Z_OR_SUPERSINGULAR");
    o.expect(dt < 10, "runtime under 10 s");
    o.note << " order=" << r.group->order << " legs=" << r.very_simple->index_condition.size() << "+"
           << 2 * r.very_simple->dim_condition.size() << " arithmetic, conclusion=" << to_string(r.conclusion)
           << " time=" << fmt_s(dt);
    return o;
}

Outcome criterion3()
{
    Outcome o;
    const auto t = std::chrono::steady_clock::now();
    CaseSpec s;
    s.kind = CaseSpec::Kind::m12;
    const auto r = run_case(s, FactsLedger::builtin());
    const double dt = seconds_since(t);
    o.expect(r.group && r.group->order == 95040, "order 95040");
    o.expect(r.n == 12 && r.g == 5, "n = 12, g = 5");
    o.expect(r.very_simple->N == 10, "dim Q_B = 10");
    o.expect(r.very_simple->verdict && all_kind(*r.very_simple, EvidenceKind::arithmetic_proof),
             "arithmetic certificate");
    o.expect(!is_square_in_q2(Rational(-2)), "-2 is not a 2-adic square");
    o.expect(r.exclusion->verdict, "exclusion");
    o.expect(uses_field(r.exclusion->gate2, "double_cover_2g_char_field_obstruction"), "gate 2 via the -2 obstruction");
    o.expect(r.conclusion == Conclusion::end_is_z, "END_IS_Z");
    o.expect(dt < 10, "runtime under 10 s");
    o.note << " order=" << (r.group ? r.group->order : BigInt(0)) << " dim=" << r.very_simple->N
           << " conclusion=" << to_string(r.conclusion) << " time=" << fmt_s(dt);
    return o;
}

Outcome criterion4()
{
    Outcome o;
    CaseSpec m12;
    m12.kind = CaseSpec::Kind::m12;
    m12.direct = true;
    auto p33 = psl_spec(3, 3);
    p33.direct = true;
    for (const auto& s : {m12, p33}) {
        const auto r = run_case(s, FactsLedger::builtin());
        const auto& d = *r.direct;
        if (d.verdict == DirectVerdict::budget_exceeded) {
            o.note << " " << s.case_key() << ": BUDGET_EXCEEDED (criterion path only)";
            o.expect(r.very_simple->verdict, s.case_key() + " criterion path");
            continue;
        }
        o.expect((d.verdict == DirectVerdict::very_simple) == r.very_simple->verdict,
                 s.case_key() + " direct agrees with criterion");
        o.note << " " << s.case_key() << ": direct=" << to_string(d.verdict) << " (" << d.submodules
               << " submodules) criterion=" << (r.very_simple->verdict ? "VERY_SIMPLE" : "not certified") << ";";
    }
    const auto ledger = FactsLedger::builtin();
    const auto g = PermGroup::build_chain(ledger.find("M12")->generators);
    const GModule perm = permutation_module(g);
    const auto d = check_very_simple_direct(perm);
    o.expect(d.verdict == DirectVerdict::not_very_simple, "F2^B NOT_VERY_SIMPLE");
    F2Matrix w(0, 144), expect(0, 144);
    for (const auto& x : d.witness)
        w.append_row(vec_of(x));
    F2Matrix j(12, 12);
    for (std::size_t a = 0; a < 12; ++a)
        for (std::size_t b = 0; b < 12; ++b)
            j.set(a, b, true);
    expect.append_row(vec_of(F2Matrix::identity(12)));
    expect.append_row(vec_of(j));
    o.expect(d.witness.size() == 2 && make_subspace(w) == make_subspace(expect), "witness is span{Id, J}");
    o.note << " F2^B: " << to_string(d.verdict) << " witness dim " << d.witness.size() << " = span{Id, J}";
    return o;
}

Outcome criterion5()
{
    Outcome o;
    std::vector<GModule> grid;
    std::vector<PermGroup> groups;
    for (std::uint64_t q : {3, 5, 7, 9})
        groups.push_back(psl_group(2, q));
    groups.push_back(psl_group(3, 3));
    const auto ledger = FactsLedger::builtin();
    groups.push_back(PermGroup::build_chain(ledger.find("M12")->generators));
    for (const auto& g : groups) {
        const GModule p = permutation_module(g);
        grid.push_back(p);
        grid.push_back(restrict_to(p, sum_zero_submodule(p)));
        grid.push_back(quotient(p, make_subspace([&] { F2Matrix o1(0, p.dim()); o1.append_row(all_ones(p.dim())); return o1; }())).module);
        if (g.degree() >= 5) {
            const GModule h = heart_module(g);
            grid.push_back(h);
            grid.push_back(h.dual());
            if (const auto f = composition_factors(p))
                for (const auto& c : *f)
                    grid.push_back(c);
        }
    }
    std::size_t checked = 0, irreducible = 0;
    for (const auto& m : grid) {
        if (m.dim() > 13)
            continue;
        const auto r = is_irreducible(m);
        const bool oracle = oracle::oracle_irreducible(m);
        o.expect(r.verdict != Irreducibility::inconclusive, "conclusive on " + m.label());
        o.expect((r.verdict == Irreducibility::irreducible) == oracle, "agreement on " + m.label());
        ++checked;
        irreducible += oracle;
    }
    o.note << " " << checked << " modules of dim <= 13 (" << irreducible << " irreducible) agree with the all-vector spin oracle";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    std::size_t cases = 0;
    for (std::uint64_t q : {3, 5, 7, 9})
        for (unsigned m : {3u, 4u}) {
            const auto g = psl_group(m, q);
            const std::size_t n = g.degree();
            std::uint64_t count = 0, pw = 1;
            for (unsigned i = 0; i < m; ++i, pw *= q)
                count += pw;
            const std::string tag = "(" + std::to_string(m) + "," + std::to_string(q) + ")";
            o.expect(n == count, tag + " point count");
            o.expect(n % 2 == m % 2, tag + " parity");
            const GModule p = permutation_module(g);
            const auto z = sum_zero_submodule(p);
            o.expect(heart_module(g).dim() == (n % 2 ? n - 1 : n - 2), tag + " dim Q_B rule");
            if (n % 2) {
                F2Matrix both = z.basis;
                both.append_row(all_ones(n));
                o.expect(z.dim() == n - 1 && rank(both) == n, tag + " splitting by rank");
            } else {
                o.expect(z.contains(all_ones(n)), tag + " 1_B in the sum-zero submodule");
            }
            ++cases;
        }
    o.note << " " << cases << " grid cases: point counts, parity, heart dimension, splitting";
    return o;
}

std::vector<std::string> leg_paths(const ordered_json& r)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < r["very_simple"]["index_legs"].size(); ++i)
        out.push_back("/very_simple/index_legs/" + std::to_string(i));
    for (std::size_t i = 0; i < r["very_simple"]["dimension_legs"].size(); ++i) {
        out.push_back("/very_simple/dimension_legs/" + std::to_string(i) + "/side_a");
        out.push_back("/very_simple/dimension_legs/" + std::to_string(i) + "/side_b");
    }
    for (const char* gate : {"gate1_central_kernel", "gate2_double_cover"})
        if (r["exclusion"].contains(gate))
            out.push_back(std::string("/exclusion/") + gate);
    return out;
}

// Every single-field edit of every leg, plus a few global ones.
std::vector<std::pair<std::string, ordered_json>> mutations(const ordered_json& r)
{
    std::vector<std::pair<std::string, ordered_json>> out;
    auto add = [&](const std::string& what, const std::function<void(ordered_json&)>& f) {
        ordered_json c = r;
        f(c);
        out.emplace_back(what, std::move(c));
    };
    for (const auto& path : leg_paths(r)) {
        const nlohmann::json_pointer<std::string> p(path);
        for (const char* kind : {"ARITHMETIC_PROOF", "CITED_FACT", "UNKNOWN"})
            if (r.at(p)["kind"] != kind)
                add(path + " kind=" + kind, [&](ordered_json& c) { c.at(p)["kind"] = kind; });
        add(path + " detail", [&](ordered_json& c) { c.at(p)["detail"] = c.at(p)["detail"].get<std::string>() + " "; });
        add(path + " extra fact", [&](ordered_json& c) {
            c.at(p)["facts"].push_back({{"field", "min_proper_subgroup_index"}, {"provenance", "x"}, {"record", "L4_3"}, {"value", 1}});
        });
        const auto& facts = r.at(p)["facts"];
        for (std::size_t i = 0; i < facts.size(); ++i) {
            const std::string fi = path + " facts/" + std::to_string(i);
            add(fi + " removed", [&](ordered_json& c) { c.at(p)["facts"].erase(i); });
            add(fi + " provenance", [&](ordered_json& c) { c.at(p)["facts"][i]["provenance"] = "elsewhere"; });
            if (facts[i].contains("evaluated"))
                add(fi + " evaluated+1", [&](ordered_json& c) {
                    c.at(p)["facts"][i]["evaluated"] = c.at(p)["facts"][i]["evaluated"].get<std::int64_t>() + 1;
                });
        }
    }
    for (std::size_t i = 0; i < r["very_simple"]["index_legs"].size(); ++i)
        add("index_legs/" + std::to_string(i) + " d+1", [&](ordered_json& c) {
            auto& d = c["very_simple"]["index_legs"][i]["d"];
            d = d.get<std::int64_t>() + 1;
        });
    for (std::size_t i = 0; i < r["very_simple"]["dimension_legs"].size(); ++i)
        add("dimension_legs/" + std::to_string(i) + " closed_by", [&](ordered_json& c) {
            auto& cb = c["very_simple"]["dimension_legs"][i]["closed_by"];
            cb = cb == "both" ? "a" : "both";
        });
    add("module/commutant_dim", [](ordered_json& c) { c["module"]["commutant_dim"] = 2; });
    add("conclusion", [](ordered_json& c) {
        c["conclusion"]["verdict"] = c["conclusion"]["verdict"] == "END_IS_Z" ? "INCOMPLETE" : "END_IS_Z";
    });
    add("very_simple/verdict", [](ordered_json& c) { c["very_simple"]["verdict"] = !c["very_simple"]["verdict"].get<bool>(); });
    add("facts digest", [](ordered_json& c) { c["inputs"]["facts"]["digest"] = "0000000000000000"; });
    return out;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(VSCERT_CLI) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

Outcome criterion7()
{
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "vscert_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::pair<CaseSpec, FactsSource>> cases;
    cases.emplace_back(psl_spec(4, 3), FactsSource{});
    cases.emplace_back(psl_spec(3, 3), FactsSource{"empty", ""});
    CaseSpec m12;
    m12.kind = CaseSpec::Kind::m12;
    m12.direct = true;
    cases.emplace_back(m12, FactsSource{});
    auto pgl = psl_spec(3, 5);
    pgl.pgl = true;
    cases.emplace_back(pgl, FactsSource{});
    std::size_t total = 0, caught = 0;
    for (const auto& [spec, src] : cases) {
        const auto report = run_case(spec, load_facts(src), src);
        const std::string text = emit_report(report, ReportFormat::json);
        const auto v = verify_report(text);
        o.expect(v.ok, spec.case_key() + " verifies");
        const auto file = dir / (spec.case_key() + ".json");
        std::ofstream(file) << text;
        o.expect(run_cli("verify " + file.string()) == exit_code(report.conclusion), spec.case_key() + " CLI verify exit");
        for (const auto& [what, mutated] : mutations(ordered_json::parse(text))) {
            ++total;
            if (!verify_report(mutated.dump(2)).ok)
                ++caught;
            else
                o.expect(false, spec.case_key() + " " + what + " not detected");
        }
    }
    // CLI on a tampered file
    auto j = ordered_json::parse(std::ifstream(dir / "L4_3.json"));
    j["very_simple"]["index_legs"][1]["facts"][0]["evaluated"] = 41;
    std::ofstream(dir / "tampered.json") << j.dump(2) << "\n";
    o.expect(run_cli("verify " + (dir / "tampered.json").string()) == 1, "CLI verify rejects a tampered report");
    o.note << " " << cases.size() << " reports verify (exit 0); " << caught << "/" << total << " single-leg mutations rejected";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 L4(3): n=40, dim 38, g=19, commutant 1, cited certificate, gates, END_IS_Z", criterion1},
        {"2 L3(3): n=13, dim 12, order 5616, all legs arithmetic with no facts, END_IS_Z_OR_SUPERSINGULAR", criterion2},
        {"3 M12: order 95040, dim 10, arithmetic certificate, -2 obstruction, END_IS_Z", criterion3},
        {"4 direct definition agrees with the criterion; F2^B witness span{Id, J}", criterion4},
        {"5 Meataxe agrees with the exhaustive spin oracle", criterion5},
        {"6 structural invariants across the grid", criterion6},
        {"7 verify re-derives reports and rejects single-leg tampering", criterion7},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << " |" << o.note.str() << std::endl;
        failures += !o.pass;
    }
    return failures ? 1 : 0;
}
