#pragma once

#include <vector>

namespace slspec {

enum class BcKind { Mixed, General };

struct HadamardValue {
    double W = 0.0;
    double Wdot = 0.0;
};

// Entire function rebuilt from its roots:
//   W(λ) = R(λ - c) · Π_{k<N} (λ - λ_k) / (λ - c - z_k),   λ_k = z_k + c + s_k,
// where R(z) = cos√z with zeros z_k = π²(k+1/2)² (mixed case) or
// R(z) = -√z sin√z with zeros z_k = π²k² (general case). This equals the
// product over unperturbed roots with all tail factors taken at shift c.
// Written this way it has no poles; the one factor nearest to λ is merged
// with R and evaluated in a cancellation-free form.
class ProductModel {
public:
    ProductModel(BcKind kind, double c, std::vector<double> shifts);

    BcKind kind() const { return kind_; }
    double c() const { return c_; }
    int size() const { return static_cast<int>(shifts_.size()); }
    const std::vector<double>& shifts() const { return shifts_; }
    double zero(int k) const;
    // Root λ_k; for k ≥ size() the tail root z_k + c.
    double root(int k) const;

    HadamardValue eval(double lambda) const;

    // Σ_n (2 - e^{L_n + log_scale_n}/|Ẇ(λ_n)|) over all n ≥ 0, where
    // L_n = log_weights[n] and log_scale_n is the unperturbed value
    // (-log k_n mixed, 0 general). With at least 8 known roots the sum past
    // them is closed by a C/(n+off)² fit to the last quarter; otherwise the
    // model's own tail (weights 0) is summed explicitly and closed with its
    // 1/z_n asymptotics. Index `skip` (if ≥ 0) is omitted.
    double trace_sum(const std::vector<double>& log_weights, int skip = -1) const;
    double trace_term(int n, double log_weight) const;

private:
    BcKind kind_;
    double c_;
    std::vector<double> shifts_;
};

// R(z) and R'(z) for the two reference functions.
void reference_function(BcKind kind, double z, double& R, double& dR);
// R(z)/(z - z_k) and its z-derivative, stable near z_k.
void reference_ratio(BcKind kind, double z, int k, double& r, double& dr);
double unperturbed_root(BcKind kind, int k);
double unperturbed_log_scale(BcKind kind, int k);

}  // namespace slspec
