#pragma once

// Residual reports: text table, JSON (stable schema, shortest round-trip
// numbers) and the exit-code contract.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ldual {

struct WorstPoint {
    std::string side;  // "E" or "E*"
    std::vector<double> x;
    std::vector<double> fiber;
};

struct GateResult {
    std::string name;
    std::string description;
    std::optional<double> residual;
    double threshold = 0.0;
    std::string status;  // HOLDS, FAILS, ERROR, SKIP
    std::optional<WorstPoint> worst;
    std::string message;
};

struct IdentityResult {
    std::string id;
    std::string equation;
    std::optional<double> residual;
    double threshold = 0.0;
    std::string status;  // PASS, FAIL, SKIP, ERROR
    std::string gate;    // empty when the identity has no gate
    std::optional<WorstPoint> worst;
    std::string message;
};

struct Report {
    std::string engine;
    std::string version;
    std::string scenario;
    std::string digest;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string banner;
    std::vector<GateResult> gates;
    std::vector<IdentityResult> identities;
    std::vector<std::string> derived;
    std::vector<std::string> footnotes;
    std::vector<std::string> warnings;
};

std::string renderText(const Report& r);
std::string renderJson(const Report& r);
Report reportFromJson(const std::string& text);

// 2 if any identity errored, else 1 if any failed, else 0.
int exitCode(const Report& r);

}  // namespace ldual
