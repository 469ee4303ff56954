#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vscert/meataxe.hpp"

namespace vscert {

enum class LatticeStatus { complete, exhausted, infeasible, stopped };
std::string to_string(LatticeStatus s);

struct LatticeOptions {
    /// Submodule candidates (spins of kernel vectors) before giving up.
    std::size_t max_candidates = 1'000'000;
    /// Enumerate only submodules containing this one (default: all).
    std::optional<SubmoduleBasis> base;
    MeataxeBudget budget;
    /// Largest kernel nullity whose vectors are enumerated at one node.
    std::size_t max_kernel_nullity = 16;
};

struct LatticeResult {
    LatticeStatus status = LatticeStatus::infeasible;
    /// In discovery order: breadth-first over covering steps from the base.
    std::vector<SubmoduleBasis> submodules;
    std::size_t candidates = 0;
    std::string reason;
};

/// Called for every submodule found; return false to stop the enumeration.
using LatticeVisitor = std::function<bool(const SubmoduleBasis&)>;

/// All submodules of V containing the base, by layers: the covers of U are
/// U + S for the simple submodules S of V/U. Every simple S is isomorphic to
/// a composition factor F of V, so it meets the kernel of any algebra element
/// singular on F; those kernels are spun and the simple spins kept.
LatticeResult submodule_lattice(const GModule& v, const LatticeOptions& options = {},
                                const LatticeVisitor& visit = {});

} // namespace vscert
