#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slspec/errors.hpp"
#include "slspec/shooting.hpp"
#include "slspec/spectrum.hpp"

using namespace slspec;
using std::numbers::pi;

namespace {

// Bisection oracle for the roots of tan s = -s (q ≡ 0, b = 1), one per
// interval ((n+1/2)π, (n+1)π).
double tan_root(int n) {
    double lo = (n + 0.5) * pi + 1e-12, hi = (n + 1) * pi;
    auto f = [](double s) { return s * std::cos(s) + std::sin(s); };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) > 0) == (f(lo) > 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Potential cos_pi() {
    return Potential::from_function([](double x) { return std::cos(pi * x); });
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const SolverError& e) {
        return e.kind();
    }
    FAIL("expected a SolverError");
    return ErrorKind::InvalidInput;
}

// Slope of log|e_n| against log n (negative for decay).
double decay_slope(const std::vector<double>& e, int n0, int n1) {
    return std::log(std::abs(e[n1]) / std::abs(e[n0])) / std::log((n1 + 0.5) / (n0 + 0.5));
}

}  // namespace

TEST_CASE("free Wronskian") {
    const auto q = Potential::zero();
    CHECK(std::abs(wronskian(q, 0.0, 0.0).w - 1.0) < 1e-14);
    for (double lambda : {-20.0, 3.0, 77.7})
        CHECK(std::abs(wronskian(q, 0.0, lambda).w - std::cos(std::sqrt(std::complex<double>(lambda))).real()) <
              1e-11 * std::cosh(std::sqrt(std::abs(lambda))));
    for (int n : {0, 1, 7}) {
        const auto v = wronskian(q, 0.0, unperturbed_eigenvalue(n));
        CHECK(std::abs(v.w) < 1e-12);
        const double k = pi * (n + 0.5);
        CHECK(std::abs(v.wdot - (n % 2 ? 1.0 : -1.0) / (2 * k)) < 1e-12);
    }
    const double s0 = tan_root(0);
    CHECK(std::abs(s0 - 2.028758) < 1e-6);
    CHECK(std::abs(wronskian(q, 1.0, 4.115858).w) < 1e-5);
}

TEST_CASE("eigenvalues of flat and shifted problems") {
    const auto e0 = eigenvalues(Potential::zero(), 0.0, 10);
    const auto e5 = eigenvalues(Potential::constant(5.0), 0.0, 10);
    for (int n = 0; n < 10; ++n) {
        CHECK(std::abs(e0[n].lambda - unperturbed_eigenvalue(n)) < 1e-9);
        CHECK(std::abs(e5[n].lambda - unperturbed_eigenvalue(n) - 5.0) < 1e-8);
        CHECK(std::abs(e5[n].mu) < 1e-8);
    }
    const auto e1 = eigenvalues_only(Potential::zero(), 1.0, 3);
    CHECK(std::abs(e1[0].lambda - 4.115858) < 1e-6);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(e1[n].lambda - std::pow(tan_root(n), 2)) < 1e-6);
}

TEST_CASE("N must be positive") {
    CHECK(kind_of([] { eigenvalues(Potential::zero(), 0.0, 0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("norming constants") {
    CHECK(std::abs(unperturbed_nu(0) + 0.4515827) < 1e-7);
    const auto e0 = eigenvalues_only(Potential::zero(), 0.0, 20);
    const auto ec = eigenvalues_only(Potential::constant(-2.5), 0.0, 20);
    for (int n = 0; n < 20; ++n) {
        CHECK(std::abs(e0[n].nu - unperturbed_nu(n)) < 1e-9);
        CHECK(std::abs(ec[n].nu - unperturbed_nu(n)) < 1e-9);
    }
    const auto q = cos_pi();
    const auto eig = eigenvalues(q, 0.0, 5);
    for (const auto& r : eig) CHECK(norming_constant(q, 0.0, r) == doctest::Approx(r.nu).epsilon(1e-12));
}

TEST_CASE("mis-indexed eigenvalue gives a sign error") {
    auto eig = eigenvalues(Potential::zero(), 0.0, 2);
    eig[1].n = 0;
    CHECK(kind_of([&] { norming_constant(Potential::zero(), 0.0, eig[1]); }) == ErrorKind::SignError);
}

TEST_CASE("first-order asymptotics of μ_n and ν_n") {
    const auto q = cos_pi();
    const int N = 41;
    const auto eig = eigenvalues_only(q, 0.0, N);
    std::vector<double> rmu(N), rnu(N);
    for (int n = 0; n < N; ++n) {
        const auto [qc, qs] = fourier_mixed(q, n);
        const double k = pi * (n + 0.5);
        rmu[n] = eig[n].mu + qc;
        rnu[n] = 2 * k * (eig[n].nu - unperturbed_nu(n)) - qs;
    }
    // both remainders are O(n⁻¹)
    CHECK(decay_slope(rmu, 10, 40) < -0.9);
    CHECK(decay_slope(rnu, 10, 40) < -0.9);
}

TEST_CASE("structure of computed spectra") {
    const auto q = Potential::from_function([](double x) { return 3 * std::sin(5 * x) - x; });
    for (double b : {-0.7, 0.0, 1.5}) {
        const auto eig = eigenvalues(q, b, 25);
        const auto Q0 = mean(q);
        for (int n = 0; n < 25; ++n) {
            CHECK((eig[n].wdot > 0) == (n % 2 == 1));
            if (n > 0) CHECK(eig[n].lambda > eig[n - 1].lambda);
            CHECK(eig[n].mu == doctest::Approx(eig[n].lambda - unperturbed_eigenvalue(n) - Q0 - 2 * b));
        }
    }
}

TEST_CASE("norm identities of φ, ξ_b and ψ_n²") {
    for (auto [q, b] : {std::pair{cos_pi(), 0.7},
                        {Potential::from_function([](double x) { return 2 * x * x - std::exp(x); }), -1.1}}) {
        const auto eig = eigenvalues(q, b, 21);
        for (const auto& r : eig) {
            const double sgn = r.n % 2 ? 1.0 : -1.0;
            const auto f = solve_forward(q, r.lambda);
            const auto xi = solve_backward(q, b, r.lambda);
            const double nphi = solution_product_integral(q, r.lambda, f.phi, f.phi_prime, f.phi, f.phi_prime);
            const double nxi = solution_product_integral(q, r.lambda, xi.xi, xi.xi_prime, xi.xi, xi.xi_prime);
            CHECK(std::abs(nphi - sgn * std::exp(r.nu) * r.wdot) < 1e-7 * nphi);
            CHECK(std::abs(nxi - sgn * std::exp(-r.nu) * r.wdot) < 1e-7 * nxi);
            double worst = 0;
            for (std::size_t j = 0; j < r.psi.size(); ++j)
                worst = std::max(worst, std::abs(r.psi[j] * r.psi[j] - f.phi[j] * xi.xi[j] / r.wdot));
            CHECK(worst < 1e-7);
        }
    }
}

TEST_CASE("root counting") {
    CHECK(count_roots(Potential::zero(), 0.0, 10) == 10);
    CHECK(count_roots(Potential::constant(1.0), 0.0, 12) == 12);
    const auto q = Potential::from_function([](double x) { return std::cos(2 * pi * x); });
    CHECK(count_roots(q, -1.0, 15) == 15);
    // the enumerated list has the same length below the circle
    const auto eig = eigenvalues_only(q, -1.0, 16);
    CHECK(eig[14].lambda < pi * pi * 15 * 15);
    CHECK(eig[15].lambda > pi * pi * 15 * 15);
}

TEST_CASE("product model of flat data") {
    SpectralData flat;
    flat.c = 0;
    flat.N = 20;
    flat.mu.assign(20, 0.0);
    flat.dnu.assign(20, 0.0);
    CHECK(std::abs(hadamard_w(flat, 0.0).W - 1.0) < 1e-14);
    for (double lambda : {-30.0, 1.0, 50.0, 2000.0, unperturbed_eigenvalue(3)}) {
        const double expect = std::cos(std::sqrt(std::complex<double>(lambda))).real();
        CHECK(std::abs(hadamard_w(flat, lambda).W - expect) < 1e-12 * std::cosh(std::sqrt(std::abs(lambda))));
    }
    SpectralData shifted = flat;
    shifted.c = 5;
    for (double lambda : {-30.0, 1.0, 5.0, 50.0, 2000.0}) {
        const double expect = std::cos(std::sqrt(std::complex<double>(lambda - 5))).real();
        CHECK(std::abs(hadamard_w(shifted, lambda).W - expect) < 1e-12 * std::cosh(std::sqrt(std::abs(lambda))));
    }
    // derivative at a root: d/dλ cos√λ = -sin√λ/(2√λ)
    const double k = pi * 3.5;
    CHECK(std::abs(hadamard_w(flat, k * k).Wdot + std::sin(k) / (2 * k)) < 1e-13);
}

TEST_CASE("product model reproduces the shooting Wronskian") {
    const auto q = cos_pi();
    const auto data = forward_map(q, 0.0, 60);
    double worst = 0;
    for (double lambda = -40; lambda < 3000; lambda += 37.3)
        worst = std::max(worst, std::abs(hadamard_w(data, lambda).W - wronskian(q, 0.0, lambda).w));
    CHECK(worst < 1e-4);
    const auto m = product_model(data);
    const auto eig = eigenvalues_only(q, 0.0, 10);
    for (const auto& r : eig) CHECK(std::abs(m.eval(m.root(r.n)).Wdot - r.wdot) < 1e-4 * std::abs(r.wdot));
}

TEST_CASE("trace identity") {
    const auto flat = identity_residual(Potential::zero(), 0.0, 50);
    CHECK(std::abs(flat.residual) < 1e-10);
    for (double t : flat.terms) CHECK(std::abs(t) < 1e-10);
    // a constant only shifts the spectrum, so the identity holds to roundoff
    for (int N : {20, 80}) CHECK(std::abs(identity_residual(Potential::constant(0.8), 0.0, N).residual) < 1e-10);
    CHECK(std::abs(identity_residual(cos_pi(), 0.7, 200).residual) < 1e-5);
}

TEST_CASE("tail fit of inverse squares") {
    std::vector<double> t(40);
    for (int n = 0; n < 40; ++n) t[n] = 3.0 / ((n + 0.5) * (n + 0.5));
    double C = 0, tail = 0;
    fit_inverse_square_tail(t, 0.5, C, tail);
    CHECK(C == doctest::Approx(3.0));
    double direct = 0;
    for (int n = 40; n < 4000000; ++n) direct += 3.0 / ((n + 0.5) * (n + 0.5));
    CHECK(std::abs(tail - direct) < 1e-6);
}

TEST_CASE("spectral data JSON") {
    const auto d = forward_map(cos_pi(), 0.25, 6);
    const auto r = spectral_data_from_json(to_json(d));
    CHECK(r.c == d.c);
    CHECK(r.mu == d.mu);
    CHECK(r.dnu == d.dnu);
    CHECK(r.N == 6);
    CHECK_FALSE(r.a.has_value());
    CHECK(r.b == 0.25);
    SpectralData g = d;
    g.a = -0.4;
    CHECK(*spectral_data_from_json(to_json(g)).a == -0.4);
    for (const char* bad : {"{", R"({"c":0,"mu":[0],"dnu":[0],"N":2,"bc":{"a":"inf","b":0}})",
                            R"({"c":0,"mu":[0],"dnu":[0],"N":1,"bc":{"a":"oops","b":0}})",
                            R"({"c":0,"mu":[0],"N":1,"bc":{"a":"inf","b":0}})"})
        CHECK(kind_of([&] { spectral_data_from_json(bad); }) == ErrorKind::InvalidInput);
}

TEST_CASE("interlacing check") {
    SpectralData d;
    d.N = 3;
    d.mu = {0.0, 0.0, 0.0};
    d.dnu = {0.0, 0.0, 0.0};
    CHECK_NOTHROW(check_interlacing(d));
    d.mu[1] = -(unperturbed_eigenvalue(1) - unperturbed_eigenvalue(0)) - 0.1;
    CHECK(kind_of([&] { check_interlacing(d); }) == ErrorKind::InterlacingViolation);
}
