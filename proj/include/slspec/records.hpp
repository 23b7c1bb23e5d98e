#pragma once

#include <vector>

namespace slspec {

// One spectral triple of the problem ψ(0)=0, ψ'(1)+bψ(1)=0.
struct EigenRecord {
    int n = 0;
    double lambda = 0.0;
    double nu = 0.0;    // log[(-1)^n φ(1,λ)]
    double wdot = 0.0;  // dw/dλ at λ
    double mu = 0.0;    // λ - λ_n^0 - Q0 - 2b
    double psi_prime0 = 0.0;
    std::vector<double> psi;        // normalized eigenfunction on the grid
    std::vector<double> psi_prime;
};

// Same for ψ'(0)-aψ(0)=0, ψ'(1)+bψ(1)=0.
struct GeneralEigenRecord {
    int n = 0;
    double sigma = 0.0;
    double kappa = 0.0;  // log[(-1)^n (θ+aφ)(1,σ)]
    double wdot = 0.0;
    double tau = 0.0;    // σ - π²n² - Q0 - 2a - 2b
};

}  // namespace slspec
