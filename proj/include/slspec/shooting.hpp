#pragma once

#include <complex>
#include <vector>

#include "slspec/potential.hpp"
#include "slspec/records.hpp"

namespace slspec {

// θ, φ with θ(0)=1, θ'(0)=0, φ(0)=0, φ'(0)=1, and their λ-derivatives.
struct FundamentalSolution {
    double lambda = 0.0;
    std::vector<double> theta, theta_prime, phi, phi_prime;
    std::vector<double> dtheta, dtheta_prime, dphi, dphi_prime;
    double error_estimate = 0.0;  // coarse/fine disagreement at x=1
};

// ξ_b with ξ_b(1) = -1, ξ_b'(1) = b, integrated from the right.
struct BackwardSolution {
    double lambda = 0.0;
    double b = 0.0;
    std::vector<double> xi, xi_prime;
};

// Solution of one initial-value problem, values at x = 1 only.
struct ShotEnd {
    double u = 0, up = 0, du = 0, dup = 0;
    int zeros = 0;  // sign changes of u over the interior nodes
    double error_estimate = 0.0;
};

struct Trajectory {
    std::vector<double> u, up, du, dup;
};

// Throws OverflowError when λ is too negative for the given (q, b).
void check_lambda(const Potential& q, double b, double lambda);

// u(0)=u0, u'(0)=up0, marched to x=1. The caller supplies b only for the
// negative-λ guard.
ShotEnd shoot(const Potential& q, double lambda, double u0, double up0, bool with_derivative,
              double guard_b = 0.0);
Trajectory trajectory(const Potential& q, double lambda, double u0, double up0,
                      bool with_derivative);
// Values at x=1 for complex λ (contour work). No negative-λ guard; the
// result is checked for finiteness instead.
void shoot_complex(const Potential& q, std::complex<double> lambda, double u0, double up0,
                   std::complex<double>& u1, std::complex<double>& up1);

FundamentalSolution solve_forward(const Potential& q, double lambda);
BackwardSolution solve_backward(const Potential& q, double b, double lambda);

// Integrals of products of solutions of the same equation at the same λ,
// using the trajectories' derivatives (u'' = (q - λ) u).
double solution_product_integral(const Potential& q, double lambda, const std::vector<double>& u,
                                 const std::vector<double>& up, const std::vector<double>& v,
                                 const std::vector<double>& vp);

struct Eigenfunction {
    std::vector<double> psi, psi_prime;
    double psi_prime0 = 0.0;
    double phi_norm_sq = 0.0;
};

// ψ_n = φ(·,λ_n)/‖φ‖. Throws NotAnEigenvalue when w(λ_n) is not small.
Eigenfunction eigenfunction(const Potential& q, double b, double lambda_n, int n);

struct Chi {
    std::vector<double> chi, chi_prime;
};

// χ_n = θ(·,λ_n)/ψ_n'(0) - ψ_n ∫φθ.
Chi chi(const Potential& q, double b, int n, const EigenRecord& eig);

}  // namespace slspec
