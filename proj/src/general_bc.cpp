#include "slspec/general_bc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "slspec/errors.hpp"
#include "slspec/parallel.hpp"

namespace slspec {

double unperturbed_general_eigenvalue(int n) {
    const double k = std::numbers::pi * n;
    return k * k;
}

std::vector<GeneralEigenRecord> general_eigen(const Potential& q, double a, double b, int N) {
    if (N < 1) fail(ErrorKind::InvalidInput, "N must be at least 1");
    if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::InvalidInput, "a and b must be finite");
    const double shift = mean(q) + 2 * a + 2 * b;
    std::vector<GeneralEigenRecord> out(N);
    parallel_for(N, [&](std::size_t i) {
        const int n = static_cast<int>(i);
        // u = θ + aφ
        const auto root =
            detail::find_root(q, 1.0, a, b, n, unperturbed_general_eigenvalue(n) + shift);
        const double s = (n % 2 == 0 ? 1.0 : -1.0) * root.u1;
        if (!(s > 0)) {
            std::ostringstream msg;
            msg << "(-1)^n (θ+aφ)(1,σ_n) = " << s << " for index " << n;
            fail(ErrorKind::SignError, msg.str());
        }
        GeneralEigenRecord& r = out[i];
        r.n = n;
        r.sigma = root.lambda;
        r.kappa = std::log(s);
        r.wdot = root.wdot;
        r.tau = root.lambda - unperturbed_general_eigenvalue(n) - shift;
    });
    for (int n = 1; n < N; ++n)
        if (!(out[n].sigma > out[n - 1].sigma))
            fail(ErrorKind::MultipleRootSuspect, "computed eigenvalues are not increasing");
    return out;
}

SpectralData general_spectral_data(const std::vector<GeneralEigenRecord>& eig, double c, double a,
                                   double b) {
    SpectralData d;
    d.c = c;
    d.N = static_cast<int>(eig.size());
    d.a = a;
    d.b = b;
    for (const auto& r : eig) {
        d.mu.push_back(r.tau);
        d.dnu.push_back(r.kappa);
    }
    return d;
}

SpectralData general_forward_map(const Potential& q, double a, double b, int N) {
    return general_spectral_data(general_eigen(q, a, b, N), mean(q) + 2 * a + 2 * b, a, b);
}

GeneralIdentityReport general_identity_residuals(const Potential& q, double a, double b, int N) {
    const auto eig = general_eigen(q, a, b, N);
    GeneralIdentityReport rep;
    double plus = -1.0, minus = -1.0;
    for (const auto& r : eig) {
        rep.terms_plus.push_back(2.0 - std::exp(r.kappa) / std::abs(r.wdot));
        rep.terms_minus.push_back(2.0 - std::exp(-r.kappa) / std::abs(r.wdot));
        plus += rep.terms_plus.back();
        minus += rep.terms_minus.back();
    }
    double C = 0.0;
    fit_inverse_square_tail(rep.terms_plus, 0.0, C, rep.tail_plus);
    fit_inverse_square_tail(rep.terms_minus, 0.0, C, rep.tail_minus);
    rep.residual_plus = b - plus - rep.tail_plus;
    rep.residual_minus = a - minus - rep.tail_minus;
    return rep;
}

IndexZeroFunctions::IndexZeroFunctions(double c, std::vector<double> tau_rest,
                                       std::vector<double> kappa_rest)
    : c_(c), tau_rest_(std::move(tau_rest)) {
    if (tau_rest_.empty() || tau_rest_.size() != kappa_rest.size())
        fail(ErrorKind::InvalidInput, "need matching τ_n and κ_n for n ≥ 1");
    kappa_.assign(1, 0.0);
    kappa_.insert(kappa_.end(), kappa_rest.begin(), kappa_rest.end());
    for (std::size_t n = 2; n <= tau_rest_.size(); ++n)
        if (!(unperturbed_general_eigenvalue(n) + tau_rest_[n - 1] >
              unperturbed_general_eigenvalue(n - 1) + tau_rest_[n - 2]))
            fail(ErrorKind::InterlacingViolation, "τ_n, n ≥ 1, violate interlacing");
}

ProductModel IndexZeroFunctions::model(double tau0) const {
    std::vector<double> tau(1, tau0);
    tau.insert(tau.end(), tau_rest_.begin(), tau_rest_.end());
    return ProductModel(BcKind::General, c_, std::move(tau));
}

double IndexZeroFunctions::F(double tau0) const {
    const auto m = model(tau0);
    return 1.0 / std::abs(m.eval(m.root(0)).Wdot);
}

double IndexZeroFunctions::G_plus(double tau0) const {
    return -1.0 - model(tau0).trace_sum(kappa_, 0);
}

double IndexZeroFunctions::G_minus(double tau0) const {
    std::vector<double> neg(kappa_.size());
    for (std::size_t n = 0; n < neg.size(); ++n) neg[n] = -kappa_[n];
    return -1.0 - model(tau0).trace_sum(neg, 0);
}

double IndexZeroFunctions::upper() const {
    return unperturbed_general_eigenvalue(1) - unperturbed_general_eigenvalue(0) + tau_rest_[0];
}

std::pair<double, double> recover_tau0_kappa0(double a, double b, double c,
                                              const std::vector<double>& tau_rest,
                                              const std::vector<double>& kappa_rest) {
    const IndexZeroFunctions fn(c, tau_rest, kappa_rest);
    const double upper = fn.upper();
    const double eps = 1e-9 * std::max(1.0, std::abs(upper));
    const double tol = 1e-14;

    // τ* = min(τ₋*, τ₊*): both a + G₋ and b + G₊ are negative below it
    auto worst = [&](double t) { return std::max(a + fn.G_minus(t), b + fn.G_plus(t)); };
    auto grow_down = [&](double start, auto&& below) {
        double width = 10.0 * (1 + std::abs(a) + std::abs(b) + std::abs(c));
        double lo = start - width;
        for (int i = 0; i < 200 && !below(lo); ++i) {
            width *= 2;
            lo = start - width;
        }
        if (!below(lo)) fail(ErrorKind::NoBracket, "no admissible τ₀ below the coalescence point");
        return lo;
    };

    double hi = upper - eps;
    if (!(worst(hi) < 0)) {
        double lo = grow_down(tau_rest[0], [&](double t) { return worst(t) < 0; });
        while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
            const double mid = 0.5 * (lo + hi);
            (worst(mid) < 0 ? lo : hi) = mid;
        }
        hi = lo;
    }

    // H = F² - (a + G₋)(b + G₊) increases from negative values to F² > 0 at τ*
    auto H = [&](double t) {
        const double f = fn.F(t);
        return f * f - (a + fn.G_minus(t)) * (b + fn.G_plus(t));
    };
    if (!(H(hi) > 0)) fail(ErrorKind::NoBracket, "F² does not exceed G at the admissible end");
    double lo = grow_down(std::min(hi, tau_rest[0]), [&](double t) { return H(t) < 0; });
    while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        (H(mid) < 0 ? lo : hi) = mid;
    }
    const double tau0 = 0.5 * (lo + hi);
    const double kappa0 = std::log(std::abs(fn.F(tau0) / (a + fn.G_minus(tau0))));
    return {tau0, kappa0};
}

}  // namespace slspec
