#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slspec/errors.hpp"
#include "slspec/general_bc.hpp"

using namespace slspec;
using std::numbers::pi;

namespace {

// Roots of cos s - s sin s (q ≡ 0, a = 1, b = 0) by bisection; the n-th
// lies in (nπ, nπ + π/2).
double cot_root(int n) {
    double lo = n * pi + 1e-12, hi = n * pi + pi / 2;
    auto f = [](double s) { return std::cos(s) - s * std::sin(s); };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) > 0) == (f(lo) > 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

template <class T>
std::vector<T> tail_of(const std::vector<T>& v) {
    return {v.begin() + 1, v.end()};
}

}  // namespace

TEST_CASE("flat general spectrum") {
    const auto eig = general_eigen(Potential::zero(), 0.0, 0.0, 5);
    for (int n = 0; n < 5; ++n) {
        CHECK(eig[n].n == n);
        CHECK(std::abs(eig[n].sigma - unperturbed_general_eigenvalue(n)) < 1e-9);
        CHECK(std::abs(eig[n].kappa) < 1e-12);
        CHECK(std::abs(eig[n].tau) < 1e-9);
    }
    CHECK(eig[0].wdot == doctest::Approx(-1.0));
    for (int n = 1; n < 5; ++n) CHECK(std::abs(eig[n].wdot) == doctest::Approx(0.5));
}

TEST_CASE("constant shift") {
    const auto eig = general_eigen(Potential::constant(2.5), 0.0, 0.0, 6);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(eig[n].sigma - unperturbed_general_eigenvalue(n) - 2.5) < 1e-8);
}

TEST_CASE("Robin end at zero against a scalar root") {
    const auto eig = general_eigen(Potential::zero(), 1.0, 0.0, 3);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(eig[n].sigma - std::pow(cot_root(n), 2)) < 1e-8);
}

TEST_CASE("structure of general spectra") {
    const auto q = Potential::from_function([](double x) { return std::exp(x) - 3 * x * x; });
    const auto eig = general_eigen(q, -0.6, 1.3, 30);
    for (int n = 0; n < 30; ++n) {
        CHECK((eig[n].wdot > 0) == (n % 2 == 1));
        if (n > 0) CHECK(eig[n].sigma > eig[n - 1].sigma);
    }
    const auto d = general_forward_map(q, -0.6, 1.3, 30);
    CHECK(*d.a == -0.6);
    CHECK(d.c == doctest::Approx(mean(q) + 2 * (-0.6) + 2 * 1.3));
    CHECK(d.mu[7] == eig[7].tau);
    CHECK(d.dnu[7] == eig[7].kappa);
}

TEST_CASE("flat identities") {
    const auto r = general_identity_residuals(Potential::zero(), 0.0, 0.0, 50);
    CHECK(std::abs(r.residual_plus) < 1e-10);
    CHECK(std::abs(r.residual_minus) < 1e-10);
    CHECK(r.terms_plus[0] == doctest::Approx(1.0));
    for (std::size_t n = 1; n < r.terms_plus.size(); ++n) CHECK(std::abs(r.terms_plus[n]) < 1e-10);
}

TEST_CASE("even potential with equal ends") {
    const auto q = Potential::from_function([](double x) { return std::cos(2 * pi * x); });
    const auto eig = general_eigen(q, 0.5, 0.5, 60);
    for (const auto& e : eig) CHECK(std::abs(e.kappa) < 1e-7);
    const auto r = general_identity_residuals(q, 0.5, 0.5, 200);
    CHECK(std::abs(r.residual_plus) < 1e-5);
    CHECK(std::abs(r.residual_minus) < 1e-5);
}

TEST_CASE("both identities on a nontrivial problem") {
    const auto q = Potential::from_function([](double x) { return std::cos(pi * x); });
    const auto r = general_identity_residuals(q, 0.3, -0.2, 200);
    CHECK(std::abs(r.residual_plus) < 1e-5);
    CHECK(std::abs(r.residual_minus) < 1e-5);
}

TEST_CASE("index-0 recovery at the flat point") {
    const auto d = general_forward_map(Potential::zero(), 0.0, 0.0, 40);
    const auto [tau0, kappa0] = recover_tau0_kappa0(0.0, 0.0, d.c, tail_of(d.mu), tail_of(d.dnu));
    CHECK(std::abs(tau0) < 1e-7);
    CHECK(std::abs(kappa0) < 1e-7);
}

TEST_CASE("index-0 recovery from forward data") {
    const auto q = Potential::from_function([](double x) { return 0.4 * std::cos(pi * x); });
    const double a = 0.2, b = -0.1;
    const auto d = general_forward_map(q, a, b, 200);
    const auto [tau0, kappa0] = recover_tau0_kappa0(a, b, d.c, tail_of(d.mu), tail_of(d.dnu));
    CHECK(std::abs(tau0 - d.mu[0]) < 1e-5);
    CHECK(std::abs(kappa0 - d.dnu[0]) < 1e-5);

    // F² rises and (a + G₋)(b + G₊) falls below the recovered τ₀
    const IndexZeroFunctions fz(d.c, tail_of(d.mu), tail_of(d.dnu));
    double prevF = -INFINITY, prevG = INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double t = tau0 - 40.0 + 40.0 * i / 49.0;
        const double F2 = std::pow(fz.F(t), 2);
        const double G = (a + fz.G_minus(t)) * (b + fz.G_plus(t));
        CHECK(F2 > prevF);
        CHECK(G < prevG);
        prevF = F2;
        prevG = G;
    }
    CHECK(fz.upper() == doctest::Approx(pi * pi + d.mu[1]));
}

TEST_CASE("index-0 recovery failures") {
    const auto d = general_forward_map(Potential::zero(), 0.0, 0.0, 10);
    auto tau = tail_of(d.mu);
    tau[3] = -200;
    CHECK_THROWS_AS(IndexZeroFunctions(d.c, tau, tail_of(d.dnu)), SolverError);
    CHECK_THROWS_AS(IndexZeroFunctions(d.c, tail_of(d.mu), {0.0}), SolverError);
}
