#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slspec/hadamard.hpp"
#include "slspec/potential.hpp"
#include "slspec/records.hpp"

namespace slspec {

struct WronskianValue {
    double w = 0.0;
    double wdot = 0.0;
};

// w(λ) = φ'(1,λ) + bφ(1,λ) and dw/dλ.
WronskianValue wronskian(const Potential& q, double b, double lambda);

double unperturbed_eigenvalue(int n);  // π²(n+1/2)²
double unperturbed_nu(int n);          // -log π(n+1/2)

// The N lowest eigenvalues with norming constants and eigenfunctions.
std::vector<EigenRecord> eigenvalues(const Potential& q, double b, int N);
// Same without eigenfunctions (psi left empty).
std::vector<EigenRecord> eigenvalues_only(const Potential& q, double b, int N);

double norming_constant(const Potential& q, double b, const EigenRecord& eig);

// Winding number of w around |λ| = π²N².
int count_roots(const Potential& q, double b, int N);

// Truncated coordinates (c, μ, ν - ν⁰). With `a` set the entries are the
// general-boundary analogues (c = Q0 + 2a + 2b, τ_n, κ_n).
struct SpectralData {
    double c = 0.0;
    std::vector<double> mu;
    std::vector<double> dnu;
    int N = 0;
    std::optional<double> a;  // empty: ψ(0) = 0
    double b = 0.0;
};

SpectralData spectral_data(const std::vector<EigenRecord>& eig, double c, double b);
SpectralData forward_map(const Potential& q, double b, int N);
// Throws InterlacingViolation unless the eigenvalues are strictly increasing.
void check_interlacing(const SpectralData& data);
ProductModel product_model(const SpectralData& data);

std::string to_json(const SpectralData& data);
SpectralData spectral_data_from_json(const std::string& text);
SpectralData read_spectral_data(const std::string& path);
void write_spectral_data(const std::string& path, const SpectralData& data);

HadamardValue hadamard_w(const SpectralData& data, double lambda);

struct IdentityReport {
    double residual = 0.0;
    double tail = 0.0;       // fitted contribution of n ≥ N
    double fit_C = 0.0;      // tail model C/(n+1/2)²
    std::vector<double> terms;  // 2 - e^{ν_n}/|ẇ(λ_n)|
};

// b - Σ_{n<N} terms - tail.
IdentityReport identity_residual(const Potential& q, double b, int N);

// Least-squares C in t_n ≈ C/(n+offset)² over the last quarter of `terms`
// and the corresponding sum over n ≥ terms.size().
void fit_inverse_square_tail(const std::vector<double>& terms, double offset, double& C,
                             double& tail);

namespace detail {

struct Root {
    double lambda = 0.0;
    double wdot = 0.0;
    double u1 = 0.0;  // solution value at x = 1
};

// n-th root of w(λ) = u'(1) + b u(1) for the solution with u(0)=u0,
// u'(0)=up0, bracketed by the oscillation count of u and polished by
// safeguarded Newton.
Root find_root(const Potential& q, double u0, double up0, double b, int n, double seed);

}  // namespace detail

}  // namespace slspec
