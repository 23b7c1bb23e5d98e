#pragma once

#include <vector>

#include "slspec/errors.hpp"
#include "slspec/potential.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

struct NewtonOptions {
    double tol = 1e-8;
    int max_iter = 40;
    int max_halvings = 8;
    // Extra modes past the data, driven towards the tail model: zero, or the
    // fitted 1/k² + 1/k⁴ tail when match_tail is set. -1 picks N or 0.
    int guard_modes = -1;
    int grid = Potential::default_grid;
    // Match the iterate's 1/k² tails past N to those fitted from the data.
    bool match_tail = true;
    int max_tail_passes = 6;
    double tail_tol = 1e-7;
};

struct NewtonDiagnostics {
    int iterations = 0;
    std::vector<double> residual_history;  // residual of every accepted iterate
    std::vector<double> step_sizes;        // damping factor of every accepted step
    std::vector<int> pass_starts;          // history index where each Newton pass starts
    std::vector<double> tail_corrections;  // |ΔA| + |ΔB| measured before each tail pass
    bool converged = false;
};

struct InverseResult {
    Potential q;
    double b = 0.0;
    NewtonDiagnostics diagnostics;
};

// NoConvergence carrying the last iterate and its diagnostics.
class NewtonFailure : public SolverError {
public:
    NewtonFailure(const std::string& what, InverseResult last)
        : SolverError(ErrorKind::NoConvergence, what), last_(std::move(last)) {}
    const InverseResult& last() const { return last_; }

private:
    InverseResult last_;
};

// |δc| + ‖δμ‖₂ + ‖(n+1)δν‖₂ over the stored range.
double data_residual(const SpectralData& current, const SpectralData& target);

// Damped Newton iteration for Φ(q, b) = target using the biorthogonal
// inverse (1;0), Z_m, T_m at every iterate.
InverseResult newton_invert(const SpectralData& target, const Potential& q0, double b0,
                            const NewtonOptions& opts = {});
// Starts from q ≡ 0, b = c/2.
InverseResult newton_invert(const SpectralData& target, const NewtonOptions& opts = {});

// Chain of Darboux steps (highest index first) moving ν_k - ν_k⁰ to
// target_dnu[k] for k < target_dnu.size().
std::pair<Potential, double> flow_norming_constants(const Potential& q0, double b0,
                                                    const std::vector<double>& target_dnu);

// Σ_n (2 - e^{ν_n}/|Ẇ(λ_n)|) built from (c, μ, ν - ν⁰).
double trace_function(double c, const std::vector<double>& mu, const std::vector<double>& dnu);

// Unique μ₀ < λ₁⁰ - λ₀⁰ + μ₁ with trace_function(c, {μ₀, mu_rest}, dnu) = b.
double recover_mu0(double b, double c, const std::vector<double>& mu_rest,
                   const std::vector<double>& dnu);

// ν_m from the other norming constants; nu_rest holds ν_n - ν_n⁰ for n ≠ m
// in increasing n. Returns ν_m itself (not the difference).
double recover_nu_m(double b, const SpectralData& data, int m, const std::vector<double>& nu_rest);

}  // namespace slspec
