#include "vscert/evidence.hpp"

namespace vscert {

std::string to_string(EvidenceKind k)
{
    switch (k) {
    case EvidenceKind::arithmetic_proof:
        return "ARITHMETIC_PROOF";
    case EvidenceKind::cited_fact:
        return "CITED_FACT";
    case EvidenceKind::unknown:
        return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s)
{
    if (s == "ARITHMETIC_PROOF")
        return EvidenceKind::arithmetic_proof;
    if (s == "CITED_FACT")
        return EvidenceKind::cited_fact;
    if (s == "UNKNOWN")
        return EvidenceKind::unknown;
    return std::nullopt;
}

nlohmann::json to_json(const ProofOrFact& e)
{
    nlohmann::json facts = nlohmann::json::array();
    for (const auto& f : e.facts)
        facts.push_back(to_json(f));
    return {{"kind", to_string(e.kind)}, {"detail", e.detail}, {"facts", facts}};
}

} // namespace vscert
