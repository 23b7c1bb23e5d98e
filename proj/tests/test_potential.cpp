#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "slspec/errors.hpp"
#include "slspec/potential.hpp"

using namespace slspec;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const SolverError& e) {
        return e.kind();
    }
    FAIL("expected a SolverError");
    return ErrorKind::InvalidInput;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("slspec_" + name)).string();
}

}  // namespace

TEST_CASE("construction rejects small grids and non-finite samples") {
    CHECK(kind_of([] { Potential(std::vector<double>(16, 0.0)); }) == ErrorKind::InvalidInput);
    std::vector<double> s(65, 0.0);
    s[10] = std::nan("");
    CHECK(kind_of([&] { Potential{s}; }) == ErrorKind::InvalidInput);
    s[10] = INFINITY;
    CHECK(kind_of([&] { Potential{s}; }) == ErrorKind::InvalidInput);
    CHECK(Potential(std::vector<double>(17, 1.0)).grid_size() == 16);
}

TEST_CASE("mean") {
    CHECK(mean(Potential::zero()) == 0.0);
    CHECK(mean(Potential::constant(3.0)) == doctest::Approx(3.0).epsilon(1e-15));
    const auto q = Potential::from_function([](double x) { return std::cos(2 * pi * x); }, 256);
    CHECK(std::abs(mean(q)) < 1e-10);
}

TEST_CASE("l2 norm") {
    CHECK(l2_norm(Potential::zero()) == 0.0);
    CHECK(l2_norm(Potential::constant(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
    const auto q = Potential::from_function([](double x) { return std::sin(pi * x); }, 256);
    CHECK(std::abs(l2_norm(q) - std::sqrt(0.5)) < 1e-8);
    CHECK(q.norm() == l2_norm(q));
}

TEST_CASE("fourier coefficients at half-integer frequencies") {
    for (int n : {0, 3, 17}) {
        const auto [c, s] = fourier_mixed(Potential::zero(), n);
        CHECK(c == 0.0);
        CHECK(s == 0.0);
    }
    const auto [c1, s1] = fourier_mixed(Potential::constant(1.0), 0);
    CHECK(std::abs(c1) < 1e-12);
    CHECK(std::abs(s1 - 2 / pi) < 1e-12);
    const auto q = Potential::from_function([](double x) { return std::cos(pi * x); });
    const auto [c2, s2] = fourier_mixed(q, 0);
    CHECK(std::abs(c2 - 0.5) < 1e-8);
    CHECK(std::abs(s2) < 1e-8);
}

TEST_CASE("quadrature is exact for polynomials up to degree five") {
    for (int d = 0; d <= 5; ++d) {
        const auto q = Potential::from_function([d](double x) { return std::pow(x, d); }, 64);
        CHECK(std::abs(mean(q) - 1.0 / (d + 1)) < 1e-14);
    }
}

TEST_CASE("interpolation reproduces quintics between nodes") {
    auto f = [](double x) { return 1 - 2 * x + 3 * x * x * x - x * x * x * x * x; };
    const auto q = Potential::from_function(f, 32);
    for (double x : {0.0, 0.013, 0.31, 0.5, 0.777, 0.9999, 1.0}) CHECK(std::abs(q(x) - f(x)) < 1e-13);
}

TEST_CASE("evaluation is deterministic") {
    const auto q = Potential::from_function([](double x) { return std::exp(-x) * std::sin(7 * x); });
    const auto r = Potential(q.samples());
    for (double x : {0.1234, 0.5, 0.98765}) CHECK(q(x) == r(x));
}

TEST_CASE("grid refinement converges at fourth order or better") {
    auto f = [](double x) { return std::exp(std::sin(3 * x)) * std::cos(5 * x); };
    auto err = [&](int M) {
        const auto q = Potential::from_function(f, M);
        const auto fine = Potential::from_function(f, 8192);
        return std::abs(fourier_mixed(q, 4).first - fourier_mixed(fine, 4).first) +
               std::abs(mean(q) - mean(fine));
    };
    const double e1 = err(32), e2 = err(64);
    CHECK(std::log2(e1 / e2) > 4.0);
}

TEST_CASE("reflection") {
    const auto q = Potential::from_function([](double x) { return x * x; }, 64);
    const auto r = q.reflected();
    for (int j = 0; j <= 64; ++j) CHECK(r[j] == q[64 - j]);
}

TEST_CASE("csv round trip is exact") {
    const auto q = Potential::from_function([](double x) { return std::sin(10 * x) / 3; }, 40);
    const auto path = temp_path("roundtrip.csv");
    write_potential_csv(path, q);
    const auto r = read_potential_csv(path);
    REQUIRE(r.grid_size() == 40);
    for (int j = 0; j <= 40; ++j) CHECK(r[j] == q[j]);
    std::filesystem::remove(path);
}

TEST_CASE("csv validation") {
    CHECK(kind_of([] { read_potential_csv(temp_path("does_not_exist.csv")); }) ==
          ErrorKind::InvalidInput);
    const auto path = temp_path("bad.csv");
    auto write = [&](const std::string& text) {
        std::ofstream(path) << text;
    };
    write("t,q\n0,0\n1,0\n");
    CHECK(kind_of([&] { read_potential_csv(path); }) == ErrorKind::InvalidInput);
    std::string uneven = "x,q\n";
    for (int j = 0; j <= 16; ++j) uneven += std::to_string(j == 5 ? 0.3 : j / 16.0) + ",1\n";
    write(uneven);
    CHECK(kind_of([&] { read_potential_csv(path); }) == ErrorKind::InvalidInput);
    std::string junk = "x,q\n";
    for (int j = 0; j <= 16; ++j) junk += std::to_string(j / 16.0) + (j == 3 ? ",abc\n" : ",1\n");
    write(junk);
    CHECK(kind_of([&] { read_potential_csv(path); }) == ErrorKind::InvalidInput);
    std::filesystem::remove(path);
}
