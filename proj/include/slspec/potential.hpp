#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace slspec {

// Real potential sampled at x_j = j/M, j = 0..M. Between nodes it is the
// C2 piecewise quintic Hermite interpolant whose node derivatives come from
// seven-point finite differences (one-sided near the ends).
class Potential {
public:
    static constexpr int default_grid = 1024;

    explicit Potential(std::vector<double> samples);

    static Potential zero(int M = default_grid);
    static Potential constant(double value, int M = default_grid);
    static Potential from_function(const std::function<double(double)>& f, int M = default_grid);

    int grid_size() const { return M_; }
    double step() const { return 1.0 / M_; }
    double node(int j) const { return static_cast<double>(j) / M_; }
    const std::vector<double>& samples() const { return q_; }
    double operator[](int j) const { return q_[j]; }

    double operator()(double x) const;
    // First and second derivative of the interpolant at node j.
    double slope(int j) const { return slope_[j]; }
    double curvature(int j) const { return curv_[j]; }

    // q*(x) = q(1 - x).
    Potential reflected() const;

    double norm() const { return norm_; }
    double min_value() const { return min_; }

    // Interpolant values at the two Gauss–Legendre points of every cell
    // (coarse) and of every half cell (fine), in marching order.
    const std::vector<double>& gauss_coarse() const { return gauss_coarse_; }
    const std::vector<double>& gauss_fine() const { return gauss_fine_; }

private:
    int M_;
    std::vector<double> q_;
    std::vector<double> slope_;
    std::vector<double> curv_;
    std::vector<double> gauss_coarse_;
    std::vector<double> gauss_fine_;
    double norm_ = 0.0;
    double min_ = 0.0;
};

double mean(const Potential& q);
double l2_norm(const Potential& q);
// (∫q cos 2k x, ∫q sin 2k x) with k = π(n + 1/2).
std::pair<double, double> fourier_mixed(const Potential& q, int n);

// Node derivatives of the interpolant through equispaced samples.
void node_derivatives(const std::vector<double>& f, double h, std::vector<double>& d1,
                      std::vector<double>& d2);
// Exact integral of that interpolant over [0, 1].
double integrate(const std::vector<double>& f, double h);

// Two-point Hermite rule using f, f', f'' at every node (exact for quintics
// on each cell). Used for products of ODE solutions, whose derivatives are
// known from the trajectories.
double integrate_hermite(const std::vector<double>& f, const std::vector<double>& df,
                         const std::vector<double>& d2f, double h);
// tail[j] = ∫_{x_j}^1 f, same rule.
std::vector<double> integrate_hermite_from_right(const std::vector<double>& f,
                                                 const std::vector<double>& df,
                                                 const std::vector<double>& d2f, double h);

Potential read_potential_csv(const std::string& path);
void write_potential_csv(const std::string& path, const Potential& q);

}  // namespace slspec
