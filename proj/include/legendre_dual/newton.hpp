#pragma once

#include <functional>
#include <vector>

#include "legendre_dual/dense_matrix.hpp"

namespace ldual {

struct NewtonConfig {
    double tol = 1e-11;
    int maxIter = 50;
    int maxHalvings = 20;
    int polishSteps = 2;
};

struct NewtonResult {
    std::vector<double> z;
    int iterations = 0;
    double residualNorm = 0.0;
    int startIndex = 0;  // position in the seed ladder that converged
};

// Fills F (size n) and J (n x n) at z. May throw DomainError, which is treated
// as a rejected trial point.
using ResidualFn = std::function<void(const std::vector<double>& z, std::vector<double>& F, DenseMatrix& J)>;

// Caller seed, zero vector, then the corners of [-1,1]^n scaled by 1, 2, 4.
std::vector<std::vector<double>> seedLadder(const std::vector<double>& seed);

// Damped Newton with multi-start fallback. Throws SingularJacobian when every
// start failed on an ill-conditioned Jacobian or the root found is singular,
// NoConvergence otherwise.
NewtonResult newtonSolve(const ResidualFn& fn, const std::vector<double>& seed, const NewtonConfig& cfg = {});

}  // namespace ldual
