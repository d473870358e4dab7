#pragma once

// Scenario files: sectioned text with `[section]` headers and `key = value`
// entries, values being quoted expressions, numbers, or `[lo, hi]` intervals.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/connection.hpp"
#include "legendre_dual/legendre.hpp"
#include "legendre_dual/mechanics.hpp"
#include "legendre_dual/sampling.hpp"

namespace ldual {

inline int sideIndex(Side s) { return s == Side::E ? 0 : 1; }

struct SamplingSpec {
    std::size_t count = 200;
    std::uint64_t seed = 1;
    std::vector<Interval> x;  // m
    std::vector<Interval> y;  // r
    std::vector<Interval> p;  // r, defaults to the y box

    SamplePlan plan(Side side) const;  // E uses seed, E* uses seed + 1
};

struct Scenario {
    std::string name;
    bool classical = false;
    Dims dims;
    AlgebroidData alg;
    LegendrePair pair;
    std::array<std::optional<Connection>, 2> conn;
    std::array<std::optional<DistinguishedConnection>, 2> dconn;
    std::array<std::optional<MechanicalSystem>, 2> mech;
    SamplingSpec sampling;
    double defaultTolerance = 1e-7;
    std::map<std::string, double> tolerances;
    std::optional<std::vector<std::string>> checks;
    std::vector<Diagnostic> warnings;
    std::string digest;  // FNV-1a 64 of the source bytes, hex

    const std::optional<Connection>& connection(Side s) const { return conn[sideIndex(s)]; }
    const std::optional<DistinguishedConnection>& distinguished(Side s) const { return dconn[sideIndex(s)]; }
    const std::optional<MechanicalSystem>& mechanics(Side s) const { return mech[sideIndex(s)]; }
    double threshold(const std::string& id) const;
};

// Throws ParseError (message carries line and key), ValidationError with all
// diagnostics, or IoError for unreadable files.
Scenario parseScenario(const std::string& text);
Scenario loadScenario(const std::string& path);

std::vector<Diagnostic> validateScenario(const Scenario& sc);

std::string fnv1a64Hex(const std::string& bytes);

// Accepts ASCII ' or U+2032 for primes; returns the canonical ASCII form.
std::string canonicalId(const std::string& id);

}  // namespace ldual
