// Command-line front end: run a case, re-verify a report, check a facts file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vscert/pipeline.hpp"

using namespace vscert;

namespace {

FactsSource pick_facts(const std::string& flag, bool none)
{
    FactsSource s;
    if (none) {
        s.kind = "empty";
    } else if (!flag.empty()) {
        s.kind = "file";
        s.path = flag;
    } else if (const char* env = std::getenv("VSCERT_FACTS"); env && *env) {
        s.kind = "file";
        s.path = env;
    }
    return s;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + out);
    f << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Very-simple heart module certificates for L_m(q) and M12"};
    app.require_subcommand(1);

    CaseSpec spec;
    std::string facts_path;
    bool no_facts = false;
    std::string format = "json";
    std::string out_path;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--facts", facts_path, "Facts file (default: $VSCERT_FACTS, else the built-in ledger)");
        c->add_flag("--no-facts", no_facts, "Run with an empty ledger");
        c->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        c->add_option("--budget-spins", spec.budget.max_spins, "Meataxe spin budget");
        c->add_option("--budget-lattice", spec.lattice_budget, "Submodule-lattice candidate budget");
        c->add_option("--out", out_path, "Write the report here instead of stdout");
        c->add_flag("--direct", spec.direct, "Also check very simplicity from the definition (dim <= 16)");
        c->add_flag("--timing", spec.timing, "Record wall-clock time (output is then not reproducible)");
    };

    auto* case_cmd = app.add_subcommand("case", "Run a case and emit its report");
    case_cmd->require_subcommand(1);
    auto* psl = case_cmd->add_subcommand("psl", "L_m(q) on the points of P^{m-1}(F_q)");
    psl->add_option("--m", spec.m, "m > 2")->required();
    psl->add_option("--q", spec.q, "odd prime power")->required();
    psl->add_flag("--pgl", spec.pgl, "Galois group PGL_m(q) instead of L_m(q)");
    add_common(psl);
    auto* m12 = case_cmd->add_subcommand("m12", "M12 on 12 points, generators from the ledger");
    add_common(m12);

    std::string report_path;
    auto* verify = app.add_subcommand("verify", "Re-derive every leg of a JSON report");
    verify->add_option("report", report_path, "Report file")->required();
    verify->add_option("--facts", facts_path, "Facts file to use instead of the recorded source");

    std::string validate_path;
    auto* facts_cmd = app.add_subcommand("facts", "Facts ledger tools");
    facts_cmd->require_subcommand(1);
    auto* validate = facts_cmd->add_subcommand("validate", "Load and validate a facts file");
    validate->add_option("file", validate_path, "Facts file")->required();
    auto* dump = facts_cmd->add_subcommand("dump", "Print the built-in ledger");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (case_cmd->parsed()) {
            spec.kind = m12->parsed() ? CaseSpec::Kind::m12 : CaseSpec::Kind::psl;
            const FactsSource source = pick_facts(facts_path, no_facts);
            const FactsLedger ledger = load_facts(source);
            const CaseReport report = run_case(spec, ledger, source);
            write_output(emit_report(report, format == "text" ? ReportFormat::text : ReportFormat::json), out_path);
            return exit_code(report.conclusion);
        }
        if (verify->parsed()) {
            std::optional<FactsSource> override;
            if (!facts_path.empty())
                override = FactsSource{"file", facts_path};
            const auto result = verify_report(read_file(report_path), override);
            if (!result.ok) {
                std::cout << "verify: FAILED\n";
                for (const auto& p : result.problems)
                    std::cout << "  " << p << "\n";
                return 1;
            }
            std::cout << "verify: OK (" << to_string(result.conclusion) << ")\n";
            return exit_code(result.conclusion);
        }
        if (validate->parsed()) {
            const auto ledger = FactsLedger::load_file(validate_path);
            std::cout << "facts: OK, " << ledger.records().size() << " records, digest " << ledger.digest() << "\n";
            for (const auto& r : ledger.records()) {
                std::cout << "  " << r.key;
                if (r.order)
                    std::cout << " order " << r.order->value;
                std::cout << ", " << r.fields.size() << " fields";
                if (!r.generators.empty())
                    std::cout << ", " << r.generators.size() << " generators checked";
                std::cout << "\n";
            }
            return 0;
        }
        if (dump->parsed()) {
            std::cout << FactsLedger::builtin().serialize();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
