#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vscert/exclusion.hpp"
#include "vscert/verysimple.hpp"

namespace vscert {

inline constexpr std::string_view report_schema = "vs-report/1";

struct CaseSpec {
    enum class Kind { psl, m12 };
    Kind kind = Kind::psl;
    unsigned m = 0;
    std::uint64_t q = 0;
    bool pgl = false;
    MeataxeBudget budget;
    std::size_t lattice_budget = 1'000'000;
    bool direct = false; // also run the direct very-simple check
    bool timing = false; // wall-clock times in the report (breaks byte identity)

    /// Throws std::invalid_argument unless m > 2 and q is an odd prime power.
    void validate() const;
    /// "L4_3", "M12": the ledger record for the group whose module is certified.
    std::string case_key() const;
};

/// Where the ledger came from, recorded so verify can reload it.
struct FactsSource {
    std::string kind = "builtin"; // builtin | file | empty
    std::string path;
    std::string label() const;
};

struct GroupSummary {
    std::string name;
    std::size_t degree = 0;
    std::size_t generator_count = 0;
    BigInt order;
    Factorization factorization;
    std::optional<BigInt> formula_order; // classical formula, PSL cases
    bool transitive = false;
    bool two_transitive = false;
    std::vector<std::size_t> base;
    std::string simplicity; // the classical fact relied on
};

struct OvergroupSummary { // PGL variant
    std::string name;
    BigInt order;
    BigInt formula_order;
    bool contains_subgroup = false;
};

enum class Conclusion { end_is_z, end_is_z_or_supersingular, incomplete };
std::string to_string(Conclusion c);

struct CaseReport {
    CaseSpec spec;
    FactsSource facts_source;
    std::string facts_digest;
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    std::optional<GroupSummary> group;
    std::optional<OvergroupSummary> overgroup;
    std::optional<VerySimpleCertificate> very_simple;
    std::optional<DirectCheck> direct;
    std::optional<ExclusionCertificate> exclusion;
    std::vector<std::string> cited_steps;
    Conclusion conclusion = Conclusion::incomplete;
    std::string reason;
    std::optional<double> seconds;
};

/// Runs a case end to end. Throws std::invalid_argument on a bad spec and
/// FactsError when the ledger contradicts a computed value.
CaseReport run_case(const CaseSpec& spec, const FactsLedger& ledger, const FactsSource& source = {});

/// Exit status for a conclusion: 0 positive, 2 incomplete.
int exit_code(Conclusion c);

enum class ReportFormat { json, text };
std::string emit_report(const CaseReport& report, ReportFormat format);
nlohmann::ordered_json report_to_json(const CaseReport& report);

/// Ledger named by a source. Throws FactsError on a load failure.
FactsLedger load_facts(const FactsSource& source);

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> problems;
    Conclusion conclusion = Conclusion::incomplete;
};

/// Re-derives a serialized report: reloads the recorded ledger, recomputes
/// every arithmetic leg, re-resolves every cited fact, re-runs the case and
/// compares the regenerated report with the given one.
VerifyResult verify_report(const std::string& text, const std::optional<FactsSource>& facts_override = {});

} // namespace vscert
