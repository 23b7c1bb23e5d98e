#pragma once

#include <vector>

#include "slspec/potential.hpp"
#include "slspec/records.hpp"
#include "slspec/shooting.hpp"

namespace slspec {

// Sampled function together with its first two derivatives on the grid.
// Pairings integrate products with the quintic Hermite rule.
struct Jet {
    std::vector<double> v, d1, d2;
};

enum class RowKind { Const, Lambda, Mu, Nu };
enum class DualKind { One, Z, T };

// Element (func; boundary) of L²(0,1)×R.
struct GradientRow {
    RowKind kind = RowKind::Mu;
    int n = 0;
    Jet func;
    double boundary = 0.0;
};

struct DualVector {
    DualKind kind = DualKind::One;
    int m = 0;
    Jet func;
    double boundary = 0.0;
};

// ⟨(f;g),(p;h)⟩ = ∫fp + gh
double pairing(const Jet& f, double fb, const Jet& g, double gb, double h);
double pairing(const GradientRow& row, const DualVector& dual, double h);

GradientRow const_row(int M);                            // (1;2)
GradientRow lambda_row(const Potential& q, const EigenRecord& eig);  // (ψ²; ψ²(1))
GradientRow mu_row(const Potential& q, const EigenRecord& eig);      // (ψ²-1; ψ²(1)-2)
GradientRow nu_row(const Potential& q, const EigenRecord& eig, const Chi& c);  // (ψχ; ψχ(1))

DualVector one_vector(int M);                                           // (1;0)
DualVector z_vector(const Potential& q, const EigenRecord& eig, const Chi& c);  // (-2(ψχ)'; ψχ(1))
DualVector t_vector(const Potential& q, const EigenRecord& eig);        // (2(ψ²)'; -ψ²(1))

// (1;2), then X_n for n < N, then Y_n for n < N.
std::vector<GradientRow> gradient_rows(const Potential& q, double b, int N);
// (1;0), then Z_m for m < N, then T_m for m < N.
std::vector<DualVector> dual_basis(const Potential& q, double b, int N);

}  // namespace slspec
