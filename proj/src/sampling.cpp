#include "legendre_dual/sampling.hpp"

#include <cmath>
#include <string>

#include "legendre_dual/errors.hpp"

namespace ldual {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::vector<std::vector<double>> samplePoints(const SamplePlan& plan) {
    for (std::size_t k = 0; k < plan.box.size(); ++k) {
        const auto& iv = plan.box[k];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
            throw Error("invalid sample box on coordinate " + std::to_string(k + 1));
    }
    SplitMix64 rng(plan.seed);
    std::vector<std::vector<double>> pts(plan.count, std::vector<double>(plan.box.size()));
    for (auto& pt : pts)
        for (std::size_t k = 0; k < plan.box.size(); ++k) pt[k] = rng.uniform(plan.box[k].lo, plan.box[k].hi);
    return pts;
}

}  // namespace ldual
