#include "slspec/frechet.hpp"

#include "slspec/parallel.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

namespace {

Jet sized(int M) {
    Jet j;
    j.v.assign(M + 1, 0.0);
    j.d1.assign(M + 1, 0.0);
    j.d2.assign(M + 1, 0.0);
    return j;
}

}  // namespace

double pairing(const Jet& f, double fb, const Jet& g, double gb, double h) {
    const std::size_t n = f.v.size();
    std::vector<double> p(n), dp(n), d2p(n);
    for (std::size_t j = 0; j < n; ++j) {
        p[j] = f.v[j] * g.v[j];
        dp[j] = f.d1[j] * g.v[j] + f.v[j] * g.d1[j];
        d2p[j] = f.d2[j] * g.v[j] + 2 * f.d1[j] * g.d1[j] + f.v[j] * g.d2[j];
    }
    return integrate_hermite(p, dp, d2p, h) + fb * gb;
}

double pairing(const GradientRow& row, const DualVector& dual, double h) {
    return pairing(row.func, row.boundary, dual.func, dual.boundary, h);
}

GradientRow const_row(int M) {
    GradientRow r;
    r.kind = RowKind::Const;
    r.func = sized(M);
    std::fill(r.func.v.begin(), r.func.v.end(), 1.0);
    r.boundary = 2.0;
    return r;
}

GradientRow lambda_row(const Potential& q, const EigenRecord& e) {
    const int M = q.grid_size();
    GradientRow r;
    r.kind = RowKind::Lambda;
    r.n = e.n;
    r.func = sized(M);
    for (int j = 0; j <= M; ++j) {
        const double p = e.psi[j], dp = e.psi_prime[j], qm = q[j] - e.lambda;
        r.func.v[j] = p * p;
        r.func.d1[j] = 2 * p * dp;
        r.func.d2[j] = 2 * dp * dp + 2 * qm * p * p;
    }
    r.boundary = e.psi[M] * e.psi[M];
    return r;
}

GradientRow mu_row(const Potential& q, const EigenRecord& e) {
    GradientRow r = lambda_row(q, e);
    r.kind = RowKind::Mu;
    for (double& v : r.func.v) v -= 1.0;
    r.boundary -= 2.0;
    return r;
}

GradientRow nu_row(const Potential& q, const EigenRecord& e, const Chi& c) {
    const int M = q.grid_size();
    GradientRow r;
    r.kind = RowKind::Nu;
    r.n = e.n;
    r.func = sized(M);
    for (int j = 0; j <= M; ++j) {
        const double p = e.psi[j], dp = e.psi_prime[j], x = c.chi[j], dx = c.chi_prime[j];
        const double qm = q[j] - e.lambda;
        r.func.v[j] = p * x;
        r.func.d1[j] = dp * x + p * dx;
        r.func.d2[j] = 2 * dp * dx + 2 * qm * p * x;
    }
    r.boundary = e.psi[M] * c.chi[M];
    return r;
}

DualVector one_vector(int M) {
    DualVector d;
    d.kind = DualKind::One;
    d.func = sized(M);
    std::fill(d.func.v.begin(), d.func.v.end(), 1.0);
    return d;
}

DualVector z_vector(const Potential& q, const EigenRecord& e, const Chi& c) {
    // (ψχ)'' = 2ψ'χ' + 2(q-λ)ψχ, (ψχ)''' = 4(q-λ)(ψχ)' + 2q'ψχ
    const int M = q.grid_size();
    DualVector d;
    d.kind = DualKind::Z;
    d.m = e.n;
    d.func = sized(M);
    for (int j = 0; j <= M; ++j) {
        const double p = e.psi[j], dp = e.psi_prime[j], x = c.chi[j], dx = c.chi_prime[j];
        const double qm = q[j] - e.lambda;
        const double g1 = dp * x + p * dx;
        d.func.v[j] = -2 * g1;
        d.func.d1[j] = -2 * (2 * dp * dx + 2 * qm * p * x);
        d.func.d2[j] = -2 * (4 * qm * g1 + 2 * q.slope(j) * p * x);
    }
    d.boundary = e.psi[M] * c.chi[M];
    return d;
}

DualVector t_vector(const Potential& q, const EigenRecord& e) {
    // (ψ²)' = 2ψψ', (ψ²)'' = 2ψ'² + 2(q-λ)ψ², (ψ²)''' = 4(q-λ)(ψ²)' + 2q'ψ²
    const int M = q.grid_size();
    DualVector d;
    d.kind = DualKind::T;
    d.m = e.n;
    d.func = sized(M);
    for (int j = 0; j <= M; ++j) {
        const double p = e.psi[j], dp = e.psi_prime[j], qm = q[j] - e.lambda;
        const double g1 = 2 * p * dp;
        d.func.v[j] = 2 * g1;
        d.func.d1[j] = 2 * (2 * dp * dp + 2 * qm * p * p);
        d.func.d2[j] = 2 * (4 * qm * g1 + 2 * q.slope(j) * p * p);
    }
    d.boundary = -e.psi[M] * e.psi[M];
    return d;
}

std::vector<GradientRow> gradient_rows(const Potential& q, double b, int N) {
    const auto eig = eigenvalues(q, b, N);
    std::vector<GradientRow> rows(2 * N + 1);
    rows[0] = const_row(q.grid_size());
    parallel_for(N, [&](std::size_t n) {
        rows[1 + n] = mu_row(q, eig[n]);
        rows[1 + N + n] = nu_row(q, eig[n], chi(q, b, static_cast<int>(n), eig[n]));
    });
    return rows;
}

std::vector<DualVector> dual_basis(const Potential& q, double b, int N) {
    const auto eig = eigenvalues(q, b, N);
    std::vector<DualVector> out(2 * N + 1);
    out[0] = one_vector(q.grid_size());
    parallel_for(N, [&](std::size_t m) {
        out[1 + m] = z_vector(q, eig[m], chi(q, b, static_cast<int>(m), eig[m]));
        out[1 + N + m] = t_vector(q, eig[m]);
    });
    return out;
}

}  // namespace slspec
