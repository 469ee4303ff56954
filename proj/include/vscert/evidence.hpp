#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vscert/facts.hpp"

namespace vscert {

enum class EvidenceKind { arithmetic_proof, cited_fact, unknown };
std::string to_string(EvidenceKind k);
std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s);

/// One leg of a certificate. Arithmetic proofs are re-derivable from the
/// group order alone; cited facts name the ledger entries they rest on.
struct ProofOrFact {
    EvidenceKind kind = EvidenceKind::unknown;
    std::string detail;
    std::vector<ResolvedFact> facts;

    bool closed() const noexcept { return kind != EvidenceKind::unknown; }
};

nlohmann::json to_json(const ProofOrFact& e);

} // namespace vscert
