#pragma once

#include <utility>
#include <vector>

#include "slspec/potential.hpp"
#include "slspec/records.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

// Problem ψ'(0) - aψ(0) = 0, ψ'(1) + bψ(1) = 0. The Wronskian is
// w(λ) = u'(1) + b u(1) for u = θ + aφ.
double unperturbed_general_eigenvalue(int n);  // π²n²

std::vector<GeneralEigenRecord> general_eigen(const Potential& q, double a, double b, int N);

// (c = Q0 + 2a + 2b, τ, κ) with data.a set.
SpectralData general_spectral_data(const std::vector<GeneralEigenRecord>& eig, double c, double a,
                                   double b);
SpectralData general_forward_map(const Potential& q, double a, double b, int N);

struct GeneralIdentityReport {
    double residual_plus = 0.0;   // b - (-1 + Σ(2 - e^{κ_n}/|ẇ|))
    double residual_minus = 0.0;  // a - (-1 + Σ(2 - e^{-κ_n}/|ẇ|))
    double tail_plus = 0.0;
    double tail_minus = 0.0;
    std::vector<double> terms_plus;
    std::vector<double> terms_minus;
};

GeneralIdentityReport general_identity_residuals(const Potential& q, double a, double b, int N);

// The functions of τ₀ that pin down the index-0 data once (c, τ_n, κ_n),
// n ≥ 1, are known: F = 1/|Ẇ(σ₀)| and G± = -1 - Σ_{n≥1}(2 - e^{±κ_n}/|Ẇ(σ_n)|)
// with W the product over σ₀ = τ₀ + c and the stored σ_n.
class IndexZeroFunctions {
public:
    IndexZeroFunctions(double c, std::vector<double> tau_rest, std::vector<double> kappa_rest);

    double F(double tau0) const;
    double G_plus(double tau0) const;
    double G_minus(double tau0) const;
    // τ₀ must stay below π² + τ₁ for the roots to remain ordered.
    double upper() const;

private:
    ProductModel model(double tau0) const;

    double c_;
    std::vector<double> tau_rest_;
    std::vector<double> kappa_;  // κ with a placeholder at index 0
};

// Unique (τ₀, κ₀) with e^{-κ₀}F + G₋ = -a and e^{κ₀}F + G₊ = -b.
std::pair<double, double> recover_tau0_kappa0(double a, double b, double c,
                                              const std::vector<double>& tau_rest,
                                              const std::vector<double>& kappa_rest);

}  // namespace slspec
