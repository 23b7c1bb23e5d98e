#include "slspec/spectrum.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "slspec/errors.hpp"
#include "slspec/parallel.hpp"
#include "slspec/shooting.hpp"

namespace slspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Number of roots of w below λ from the Prüfer angle of u:
// u = r sin ω, u' = r cos ω, ω(1) increases with λ and roots sit at
// ω(1) = β + nπ with cot β = -b.
int count_below(const ShotEnd& e, double b) {
    const int sign = (e.zeros % 2 == 0) ? 1 : -1;
    double frac = std::atan2(sign * e.u, sign * e.up);
    if (frac < 0) frac += 2 * kPi;  // only reachable through rounding at u(1)≈0
    const double omega = e.zeros * kPi + frac;
    const double beta = std::atan2(1.0, -b);
    if (omega <= beta) return 0;
    return static_cast<int>(std::ceil((omega - beta) / kPi));
}

}  // namespace

namespace detail {

Root find_root(const Potential& q, double u0, double up0, double b, int n, double seed) {
    const double guard = q.norm() + std::abs(b) + 20.0;
    const double floor = -guard * guard * (1 - 1e-12);
    auto count = [&](double lam) { return count_below(shoot(q, lam, u0, up0, false, b), b); };
    const double rel = 1e-13;

    double delta = kPi * kPi * (n + 1) / 2;
    double lo = std::max(seed - delta, floor), hi = seed + delta;
    int clo = count(lo), chi = count(hi);
    while (clo > n) {
        if (lo == floor) fail(ErrorKind::BracketFailure, "roots below the negative-λ guard");
        delta *= 2;
        hi = lo;
        chi = clo;
        lo = std::max(seed - delta, floor);
        clo = count(lo);
    }
    while (chi < n + 1) {
        delta *= 2;
        lo = hi;
        clo = chi;
        hi = seed + delta;
        chi = count(hi);
    }
    // isolate exactly the n-th root
    while (clo != n || chi != n + 1) {
        if (hi - lo <= rel * std::max(1.0, std::abs(lo))) {
            std::ostringstream msg;
            msg << "cannot separate root " << n << " near " << lo;
            fail(ErrorKind::MultipleRootSuspect, msg.str());
        }
        const double mid = 0.5 * (lo + hi);
        const int cm = count(mid);
        if (cm <= n) {
            lo = mid;
            clo = cm;
        } else {
            hi = mid;
            chi = cm;
        }
    }

    auto eval = [&](double lam) {
        const ShotEnd e = shoot(q, lam, u0, up0, true, b);
        return std::pair<ShotEnd, double>(e, e.up + b * e.u);
    };
    auto [elo, wlo] = eval(lo);
    auto [ehi, whi] = eval(hi);
    if (wlo == 0.0) return {lo, elo.dup + b * elo.du, elo.u};
    if (whi == 0.0) return {hi, ehi.dup + b * ehi.du, ehi.u};
    if ((wlo > 0) == (whi > 0)) {
        std::ostringstream msg;
        msg << "no sign change of w on [" << lo << ", " << hi << "] for index " << n;
        fail(ErrorKind::BracketFailure, msg.str());
    }
    const bool lo_positive = wlo > 0;

    // safeguarded Newton
    double x = std::abs(wlo) < std::abs(whi) ? lo : hi;
    ShotEnd ex = std::abs(wlo) < std::abs(whi) ? elo : ehi;
    double wx = std::abs(wlo) < std::abs(whi) ? wlo : whi;
    for (int it = 0; it < 200; ++it) {
        const double wd = ex.dup + b * ex.du;
        double next = (wd != 0.0) ? x - wx / wd : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        auto [e, w] = eval(x);
        ex = e;
        wx = w;
        if (w == 0.0) break;
        if ((w > 0) == lo_positive)
            lo = x;
        else
            hi = x;
        if (step <= rel * std::max(1.0, std::abs(x)) ||
            hi - lo <= rel * std::max(1.0, std::abs(x)))
            break;
    }
    return {x, ex.dup + b * ex.du, ex.u};
}

}  // namespace detail

WronskianValue wronskian(const Potential& q, double b, double lambda) {
    const ShotEnd e = shoot(q, lambda, 0.0, 1.0, true, b);
    return {e.up + b * e.u, e.dup + b * e.du};
}

double unperturbed_eigenvalue(int n) {
    const double k = kPi * (n + 0.5);
    return k * k;
}

double unperturbed_nu(int n) { return -std::log(kPi * (n + 0.5)); }

namespace {

EigenRecord make_record(const Potential& q, double b, double Q0, int n, bool with_psi) {
    const auto root = detail::find_root(q, 0.0, 1.0, b, n, unperturbed_eigenvalue(n) + Q0 + 2 * b);
    EigenRecord r;
    r.n = n;
    r.lambda = root.lambda;
    r.wdot = root.wdot;
    r.mu = root.lambda - unperturbed_eigenvalue(n) - Q0 - 2 * b;
    const double s = (n % 2 == 0 ? 1.0 : -1.0) * root.u1;
    if (!(s > 0)) {
        std::ostringstream msg;
        msg << "(-1)^n φ(1,λ_n) = " << s << " for index " << n;
        fail(ErrorKind::SignError, msg.str());
    }
    r.nu = std::log(s);
    if (with_psi) {
        Eigenfunction ef = eigenfunction(q, b, r.lambda, n);
        r.psi = std::move(ef.psi);
        r.psi_prime = std::move(ef.psi_prime);
        r.psi_prime0 = ef.psi_prime0;
    }
    return r;
}

std::vector<EigenRecord> compute_records(const Potential& q, double b, int N, bool with_psi) {
    if (N < 1) fail(ErrorKind::InvalidInput, "N must be at least 1");
    const double Q0 = mean(q);
    std::vector<EigenRecord> out(N);
    parallel_for(N, [&](std::size_t n) {
        out[n] = make_record(q, b, Q0, static_cast<int>(n), with_psi);
    });
    for (int n = 1; n < N; ++n)
        if (!(out[n].lambda > out[n - 1].lambda))
            fail(ErrorKind::MultipleRootSuspect, "computed eigenvalues are not increasing");
    return out;
}

}  // namespace

std::vector<EigenRecord> eigenvalues(const Potential& q, double b, int N) {
    return compute_records(q, b, N, true);
}

std::vector<EigenRecord> eigenvalues_only(const Potential& q, double b, int N) {
    return compute_records(q, b, N, false);
}

double norming_constant(const Potential& q, double b, const EigenRecord& eig) {
    const ShotEnd e = shoot(q, eig.lambda, 0.0, 1.0, false, b);
    const double s = (eig.n % 2 == 0 ? 1.0 : -1.0) * e.u;
    if (!(s > 0)) {
        std::ostringstream msg;
        msg << "(-1)^n φ(1,λ_n) = " << s << " for index " << eig.n;
        fail(ErrorKind::SignError, msg.str());
    }
    return std::log(s);
}

int count_roots(const Potential& q, double b, int N) {
    using cd = std::complex<double>;
    const double R = kPi * kPi * N * N;
    auto w_at = [&](double angle) {
        const cd lam = std::polar(R, angle);
        cd u, up;
        shoot_complex(q, lam, 0.0, 1.0, u, up);
        const cd w = up + b * u;
        const double scale = std::cosh(std::sqrt(lam).imag());
        if (std::abs(w) < 1e-9 * scale) {
            std::ostringstream msg;
            msg << "|w| = " << std::abs(w) << " on the contour at angle " << angle;
            fail(ErrorKind::ContourThroughRoot, msg.str());
        }
        return w;
    };
    // w is real on the real axis, so the upper half circle carries half of
    // the total change of argument
    double total = 0.0;
    std::function<void(double, cd, double, cd, int)> segment = [&](double a0, cd w0, double a1,
                                                                   cd w1, int depth) {
        const double d = std::arg(w1 / w0);
        if (std::abs(d) > 0.5 && depth < 40) {
            const double am = 0.5 * (a0 + a1);
            const cd wm = w_at(am);
            segment(a0, w0, am, wm, depth + 1);
            segment(am, wm, a1, w1, depth + 1);
            return;
        }
        total += d;
    };
    const int pieces = 16 * (N + 1);
    double a0 = 0.0;
    cd w0 = w_at(a0);
    for (int i = 1; i <= pieces; ++i) {
        const double a1 = kPi * i / pieces;
        const cd w1 = w_at(a1);
        segment(a0, w0, a1, w1, 0);
        a0 = a1;
        w0 = w1;
    }
    return static_cast<int>(std::lround(2 * total / (2 * kPi)));
}

SpectralData spectral_data(const std::vector<EigenRecord>& eig, double c, double b) {
    SpectralData d;
    d.c = c;
    d.b = b;
    d.N = static_cast<int>(eig.size());
    for (const auto& r : eig) {
        d.mu.push_back(r.mu);
        d.dnu.push_back(r.nu - unperturbed_nu(r.n));
    }
    return d;
}

SpectralData forward_map(const Potential& q, double b, int N) {
    return spectral_data(eigenvalues_only(q, b, N), mean(q) + 2 * b, b);
}

ProductModel product_model(const SpectralData& data) {
    return ProductModel(data.a ? BcKind::General : BcKind::Mixed, data.c, data.mu);
}

void check_interlacing(const SpectralData& data) {
    const auto model = product_model(data);
    for (int n = 1; n < data.N; ++n)
        if (!(model.root(n) > model.root(n - 1))) {
            std::ostringstream msg;
            msg << "eigenvalues " << n - 1 << " and " << n << " are not strictly increasing";
            fail(ErrorKind::InterlacingViolation, msg.str());
        }
}

std::string to_json(const SpectralData& data) {
    nlohmann::json j;
    j["c"] = data.c;
    j["mu"] = data.mu;
    j["dnu"] = data.dnu;
    j["N"] = data.N;
    nlohmann::json bc;
    if (data.a)
        bc["a"] = *data.a;
    else
        bc["a"] = "inf";
    bc["b"] = data.b;
    j["bc"] = bc;
    return j.dump(2);
}

SpectralData spectral_data_from_json(const std::string& text) {
    SpectralData d;
    try {
        const auto j = nlohmann::json::parse(text);
        d.c = j.at("c").get<double>();
        d.mu = j.at("mu").get<std::vector<double>>();
        d.dnu = j.at("dnu").get<std::vector<double>>();
        d.N = j.at("N").get<int>();
        const auto& bc = j.at("bc");
        d.b = bc.at("b").get<double>();
        const auto& a = bc.at("a");
        if (a.is_string()) {
            if (a.get<std::string>() != "inf")
                fail(ErrorKind::InvalidInput, "bc.a must be a number or \"inf\"");
        } else {
            d.a = a.get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed spectral data: ") + e.what());
    }
    if (d.N < 1 || static_cast<int>(d.mu.size()) != d.N || static_cast<int>(d.dnu.size()) != d.N)
        fail(ErrorKind::InvalidInput, "mu and dnu must both have N entries");
    return d;
}

SpectralData read_spectral_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return spectral_data_from_json(ss.str());
}

void write_spectral_data(const std::string& path, const SpectralData& data) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
    out << to_json(data) << '\n';
}

HadamardValue hadamard_w(const SpectralData& data, double lambda) {
    return product_model(data).eval(lambda);
}

void fit_inverse_square_tail(const std::vector<double>& terms, double offset, double& C,
                             double& tail) {
    const int N = static_cast<int>(terms.size());
    const int start = N - std::max(1, N / 4);
    double num = 0.0, den = 0.0;
    for (int n = start; n < N; ++n) {
        if (n + offset <= 0) continue;
        const double basis = 1.0 / ((n + offset) * (n + offset));
        num += terms[n] * basis;
        den += basis * basis;
    }
    C = den > 0 ? num / den : 0.0;
    tail = C * boost::math::trigamma(N + offset);
}

IdentityReport identity_residual(const Potential& q, double b, int N) {
    const auto eig = eigenvalues_only(q, b, N);
    IdentityReport rep;
    double sum = 0.0;
    for (const auto& r : eig) {
        rep.terms.push_back(2.0 - std::exp(r.nu) / std::abs(r.wdot));
        sum += rep.terms.back();
    }
    fit_inverse_square_tail(rep.terms, 0.5, rep.fit_C, rep.tail);
    rep.residual = b - sum - rep.tail;
    return rep;
}

}  // namespace slspec
