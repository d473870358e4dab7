#pragma once

// Bundled example scenarios.

#include <string>
#include <vector>

namespace ldual {

struct Fixture {
    std::string name;
    std::string summary;
    std::string text;
};

const std::vector<Fixture>& fixtures();
const Fixture* findFixture(const std::string& name);

}  // namespace ldual
