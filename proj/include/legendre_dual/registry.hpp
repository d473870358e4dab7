#pragma once

// The identity registry and the batch runner. Each identity is a residual
// max|LHS - RHS| over the sample plan of one side; gates are the hypotheses
// the identities depend on, evaluated on the same samples.

#include <optional>
#include <string>
#include <vector>

#include "legendre_dual/report.hpp"
#include "legendre_dual/scenario.hpp"

namespace ldual {

inline constexpr const char* kEngineName = "legendre-dual";
inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr double kGateThreshold = 1e-8;

struct RunConfig {
    std::optional<double> tolerance;  // replaces the scenario default threshold
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<std::string>> ids;  // overrides the scenario's [checks]
    int threads = 0;                              // 0: LEGENDRE_DUAL_THREADS, else hardware
};

struct IdentityInfo {
    std::string id;
    std::string equation;
    std::string gate;
};

const std::vector<IdentityInfo>& registryEntries();

// Throws Error for identity ids not in the registry.
Report runChecks(const Scenario& sc, const RunConfig& cfg = {});

}  // namespace ldual
