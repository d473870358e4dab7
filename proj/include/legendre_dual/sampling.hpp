#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ldual {

// SplitMix64 (Steele, Lea, Flood): state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform01();  // 53-bit mantissa, in [0, 1)
    double uniform(double lo, double hi);

private:
    std::uint64_t state_;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SamplePlan {
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::vector<Interval> box;
};

// Throws Error on an empty or non-finite box interval.
std::vector<std::vector<double>> samplePoints(const SamplePlan& plan);

}  // namespace ldual
