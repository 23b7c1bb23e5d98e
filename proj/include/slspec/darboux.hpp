#pragma once

#include <utility>
#include <vector>

#include "slspec/potential.hpp"
#include "slspec/records.hpp"

namespace slspec {

struct DarbouxStep {
    int n = 0;
    double t = 0.0;
};

// Isospectral transform shifting ν_n by t and leaving every other ν_m and
// all eigenvalues unchanged. The result is resampled on the same grid.
// Steps with |t| > 10 are split into ⌈|t|/2⌉ equal substeps.
std::pair<Potential, double> darboux_transform(const Potential& q, double b, DarbouxStep step);

// η(x) = 1 + (e^t - 1)∫ₓ¹ψ² on the grid for a computed eigenpair.
std::vector<double> darboux_eta(const Potential& q, const EigenRecord& eig, double t);

// Single step using an already computed eigenpair of (q, b).
std::pair<Potential, double> darboux_step(const Potential& q, double b, const EigenRecord& eig,
                                          double t);

}  // namespace slspec
