#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vscert/arith.hpp"
#include "vscert/permutation.hpp"

namespace vscert {

struct FactsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cited value: an integer, a formula in n and g, a rational written as a
/// string, or a list, always with its source.
struct CitedValue {
    nlohmann::json value;
    std::string provenance;
    friend bool operator==(const CitedValue&, const CitedValue&) = default;
};

struct OrderFact {
    BigInt value;
    Factorization factorization;
    std::string provenance;
};

struct GroupFactsRecord {
    std::string key;
    std::optional<OrderFact> order;
    /// Optional fields by name; see FactsLedger::field_names.
    std::map<std::string, CitedValue> fields;
    /// Decoded generator permutations, when the record ships them.
    std::vector<Permutation> generators;
};

/// Immutable ledger of cited group facts, loaded from a strict JSON schema
/// ("vs-facts/1"). Loading validates every record; errors are fatal.
class FactsLedger {
public:
    static constexpr std::string_view schema = "vs-facts/1";

    FactsLedger() = default; // empty ledger
    static FactsLedger parse(std::string_view text);
    static FactsLedger load_file(const std::string& path);
    /// The ledger compiled into the binary from facts/default_facts.json.
    static FactsLedger builtin();
    static std::string_view builtin_text();

    static const std::vector<std::string>& field_names();

    /// Canonical serialization; parse(serialize()) reproduces it exactly.
    std::string serialize() const;
    /// FNV-1a 64 of serialize(), as 16 hex digits.
    std::string digest() const;

    const std::vector<GroupFactsRecord>& records() const noexcept { return records_; }
    const GroupFactsRecord* find(std::string_view key) const;
    /// Exact lookup. Absent fields give nullopt; an unknown key or field name throws.
    std::optional<CitedValue> query(std::string_view key, std::string_view field) const;

    /// Copy with one field (or, for field "*", the whole record) removed.
    FactsLedger without(std::string_view key, std::string_view field) const;

private:
    std::vector<GroupFactsRecord> records_;
};

/// A fact resolved for one case, with formulas evaluated.
struct ResolvedFact {
    std::string record;
    std::string field;
    nlohmann::json value;
    std::string provenance;
    std::optional<std::int64_t> evaluated; // integer fields and formulas
};

/// Evaluates the small formula language of parametric records: integers,
/// n, g, + - * /, parentheses, floor(...); "2g" means 2*g. Division is
/// integer division on nonnegative values.
std::int64_t evaluate_formula(std::string_view text, std::int64_t n, std::int64_t g);

/// The ledger as seen from one case: a specific record, or a parametric one
/// that does not list the case among its exceptions.
class CaseFacts {
public:
    CaseFacts() = default; // sees nothing
    /// record_key names the specific record (e.g. "L4_3"); generic_key the
    /// parametric fallback, or empty for none.
    CaseFacts(const FactsLedger& ledger, std::string record_key, std::string generic_key, std::int64_t n, std::int64_t g);

    const GroupFactsRecord* record() const noexcept { return record_; }
    std::optional<ResolvedFact> integer(std::string_view field) const;
    std::optional<ResolvedFact> raw(std::string_view field) const;

private:
    const GroupFactsRecord* record_ = nullptr;
    std::int64_t n_ = 0;
    std::int64_t g_ = 0;
};

nlohmann::json to_json(const ResolvedFact& f);

} // namespace vscert
