#include "slspec/darboux.hpp"

#include <cmath>
#include <sstream>

#include "slspec/errors.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

namespace {

struct EtaProfile {
    std::vector<double> f, df, eta;  // ψ², (ψ²)', η
};

EtaProfile eta_profile(const Potential& q, const EigenRecord& e, double s) {
    const int M = q.grid_size();
    EtaProfile r;
    r.f.resize(M + 1);
    r.df.resize(M + 1);
    std::vector<double> d2f(M + 1);
    for (int j = 0; j <= M; ++j) {
        const double p = e.psi[j], dp = e.psi_prime[j];
        r.f[j] = p * p;
        r.df[j] = 2 * p * dp;
        d2f[j] = 2 * dp * dp + 2 * (q[j] - e.lambda) * p * p;
    }
    r.eta = integrate_hermite_from_right(r.f, r.df, d2f, q.step());
    for (double& v : r.eta) v = 1.0 + s * v;
    return r;
}

}  // namespace

std::vector<double> darboux_eta(const Potential& q, const EigenRecord& eig, double t) {
    return eta_profile(q, eig, std::expm1(t)).eta;
}

std::pair<Potential, double> darboux_step(const Potential& q, double b, const EigenRecord& e,
                                          double t) {
    if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "Darboux shift must be finite");
    if (t == 0.0) return {q, b};
    const int M = q.grid_size();
    const double s = std::expm1(t);
    const auto p = eta_profile(q, e, s);
    std::vector<double> out(M + 1);
    for (int j = 0; j <= M; ++j) {
        const double eta = p.eta[j];
        if (!(eta > 0)) {
            std::ostringstream msg;
            msg << "η = " << eta << " at x = " << q.node(j);
            fail(ErrorKind::PositivityError, msg.str());
        }
        const double d1 = -s * p.f[j];
        const double d2 = -s * p.df[j];
        out[j] = q[j] - 2 * (d2 * eta - d1 * d1) / (eta * eta);
    }
    return {Potential(std::move(out)), b - s * p.f[M]};
}

std::pair<Potential, double> darboux_transform(const Potential& q, double b, DarbouxStep step) {
    if (!std::isfinite(step.t)) fail(ErrorKind::InvalidInput, "Darboux shift must be finite");
    if (step.n < 0) fail(ErrorKind::InvalidInput, "Darboux index must be non-negative");
    if (step.t == 0.0) return {q, b};
    const int pieces = std::abs(step.t) > 10 ? static_cast<int>(std::ceil(std::abs(step.t) / 2)) : 1;
    std::pair<Potential, double> cur{q, b};
    for (int i = 0; i < pieces; ++i) {
        const auto eig = eigenvalues(cur.first, cur.second, step.n + 1);
        cur = darboux_step(cur.first, cur.second, eig[step.n], step.t / pieces);
    }
    return cur;
}

}  // namespace slspec
