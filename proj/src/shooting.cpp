#include "slspec/shooting.hpp"

#include <cmath>
#include <sstream>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

// Fourth-order Magnus step over one cell with the potential sampled at the
// two Gauss points. For y' = A y, A = [[0,1],[q-λ,0]] the step is
// exp(Ω), Ω = [[α, h],[h(q̄-λ), -α]], α = (√3/12) h² (q1 - q2). Ω is
// traceless, so exp(Ω) = C(z) I + S(z) Ω with z = -det Ω and
// C(z) = cosh√z, S(z) = sinh√z/√z. The method is exact for constant q.

constexpr double kMagnusC = 0.14433756729740644113;  // √3/12

template <class T>
struct Prop {
    T e11, e12, e21, e22;
    T d11, d12, d21, d22;  // λ-derivatives
};

void cs_series(double z, double& C, double& S, double& dS) {
    // C = Σ z^k/(2k)!, S = Σ z^k/(2k+1)!, dS = S'(z)
    double c = 1, s = 1, ds = 0;
    double tc = 1, ts = 1;
    for (int k = 1; k < 14; ++k) {
        tc *= z / ((2 * k - 1) * (2 * k));
        ts *= z / ((2 * k) * (2 * k + 1));
        c += tc;
        ds += k * ts / z;
        s += ts;
    }
    C = c;
    S = s;
    dS = ds;
}

void cs(double z, double& C, double& S, double& dS) {
    if (std::abs(z) < 0.5) {
        if (z == 0.0) {
            C = 1;
            S = 1;
            dS = 1.0 / 6;
            return;
        }
        cs_series(z, C, S, dS);
        return;
    }
    if (z > 0) {
        const double s = std::sqrt(z);
        C = std::cosh(s);
        S = std::sinh(s) / s;
    } else {
        const double s = std::sqrt(-z);
        C = std::cos(s);
        S = std::sin(s) / s;
    }
    dS = (C - S) / (2 * z);
}

void cs(std::complex<double> z, std::complex<double>& C, std::complex<double>& S,
        std::complex<double>& dS) {
    if (std::abs(z) < 0.5) {
        std::complex<double> c = 1, s = 1, tc = 1, ts = 1;
        for (int k = 1; k < 14; ++k) {
            tc *= z / double((2 * k - 1) * (2 * k));
            ts *= z / double((2 * k) * (2 * k + 1));
            c += tc;
            s += ts;
        }
        C = c;
        S = s;
        dS = 0;  // derivative unused on the complex path
        return;
    }
    const auto s = std::sqrt(z);
    C = std::cosh(s);
    S = std::sinh(s) / s;
    dS = (C - S) / (2.0 * z);
}

template <class T>
Prop<T> magnus(double h, double q1, double q2, T lambda, bool inverse) {
    const double alpha = kMagnusC * h * h * (q1 - q2) * (inverse ? -1 : 1);
    const double hs = inverse ? -h : h;
    const T beta = 0.5 * (q1 + q2) - lambda;
    const T z = alpha * alpha + h * h * beta;
    T C, S, dS;
    cs(z, C, S, dS);
    const T dC = 0.5 * S;
    Prop<T> p;
    p.e11 = C + S * alpha;
    p.e12 = S * hs;
    p.e21 = S * hs * beta;
    p.e22 = C - S * alpha;
    // dz/dλ = -h², dΩ/dλ = [[0,0],[-hs,0]]
    const double m = -h * h;
    p.d11 = m * (dC + dS * alpha);
    p.d12 = m * dS * hs;
    p.d21 = m * dS * hs * beta - S * hs;
    p.d22 = m * (dC - dS * alpha);
    return p;
}

template <class T>
struct State {
    T u, up, du, dup;
};

template <class T>
void apply(const Prop<T>& p, State<T>& s, bool deriv) {
    const T u = p.e11 * s.u + p.e12 * s.up;
    const T up = p.e21 * s.u + p.e22 * s.up;
    if (deriv) {
        const T du = p.d11 * s.u + p.d12 * s.up + p.e11 * s.du + p.e12 * s.dup;
        const T dup = p.d21 * s.u + p.d22 * s.up + p.e21 * s.du + p.e22 * s.dup;
        s.du = du;
        s.dup = dup;
    }
    s.u = u;
    s.up = up;
}

template <class T>
State<T> combine(const State<T>& fine, const State<T>& coarse) {
    return {(16.0 * fine.u - coarse.u) / 15.0, (16.0 * fine.up - coarse.up) / 15.0,
            (16.0 * fine.du - coarse.du) / 15.0, (16.0 * fine.dup - coarse.dup) / 15.0};
}

// Marches one solution over the grid with step h and with h/2, visiting the
// Richardson combination at every node. Returns |fine - coarse|/15 at the end.
template <class T, class Visit>
double march(const Potential& q, T lambda, State<T> start, bool deriv, bool backward,
             Visit&& visit) {
    const int M = q.grid_size();
    const double h = q.step();
    const auto& gc = q.gauss_coarse();
    const auto& gf = q.gauss_fine();
    State<T> coarse = start, fine = start;
    if (!backward) {
        visit(0, start);
        for (int j = 0; j < M; ++j) {
            apply(magnus(h, gc[2 * j], gc[2 * j + 1], lambda, false), coarse, deriv);
            apply(magnus(h / 2, gf[4 * j], gf[4 * j + 1], lambda, false), fine, deriv);
            apply(magnus(h / 2, gf[4 * j + 2], gf[4 * j + 3], lambda, false), fine, deriv);
            visit(j + 1, combine(fine, coarse));
        }
    } else {
        visit(M, start);
        for (int j = M - 1; j >= 0; --j) {
            apply(magnus(h, gc[2 * j], gc[2 * j + 1], lambda, true), coarse, deriv);
            apply(magnus(h / 2, gf[4 * j + 2], gf[4 * j + 3], lambda, true), fine, deriv);
            apply(magnus(h / 2, gf[4 * j], gf[4 * j + 1], lambda, true), fine, deriv);
            visit(j, combine(fine, coarse));
        }
    }
    const T eu = fine.u - coarse.u, ep = fine.up - coarse.up;
    return std::sqrt(std::norm(eu) + std::norm(ep)) / 15.0;
}

void check_finite(double v) {
    if (!std::isfinite(v)) fail(ErrorKind::OverflowError, "solution left the representable range");
}

}  // namespace

void check_lambda(const Potential& q, double b, double lambda) {
    if (!std::isfinite(lambda)) fail(ErrorKind::OverflowError, "λ is not finite");
    const double floor = q.norm() + std::abs(b) + 20.0;
    if (lambda < -floor * floor) {
        std::ostringstream msg;
        msg << "λ = " << lambda << " is below the guard " << -floor * floor;
        fail(ErrorKind::OverflowError, msg.str());
    }
}

ShotEnd shoot(const Potential& q, double lambda, double u0, double up0, bool with_derivative,
              double guard_b) {
    check_lambda(q, guard_b, lambda);
    ShotEnd end;
    int zeros = 0;
    int last_sign = u0 > 0 ? 1 : (u0 < 0 ? -1 : 0);
    State<double> fin{};
    const double err = march<double>(q, lambda, {u0, up0, 0.0, 0.0}, with_derivative, false,
                                     [&](int, const State<double>& s) {
                                         const int sg = s.u > 0 ? 1 : (s.u < 0 ? -1 : 0);
                                         if (sg != 0) {
                                             if (last_sign != 0 && sg != last_sign) ++zeros;
                                             last_sign = sg;
                                         }
                                         fin = s;
                                     });
    // a sign change in the last cell means a zero inside (x_{M-1}, 1];
    // only count it when u(1) is strictly nonzero (otherwise the zero is at 1)
    end.u = fin.u;
    end.up = fin.up;
    end.du = fin.du;
    end.dup = fin.dup;
    end.zeros = zeros;
    end.error_estimate = err;
    check_finite(end.u);
    check_finite(end.up);
    check_finite(end.du);
    check_finite(end.dup);
    return end;
}

Trajectory trajectory(const Potential& q, double lambda, double u0, double up0,
                      bool with_derivative) {
    check_lambda(q, 0.0, lambda);
    const int M = q.grid_size();
    Trajectory t;
    t.u.resize(M + 1);
    t.up.resize(M + 1);
    if (with_derivative) {
        t.du.resize(M + 1);
        t.dup.resize(M + 1);
    }
    march<double>(q, lambda, {u0, up0, 0.0, 0.0}, with_derivative, false,
                  [&](int j, const State<double>& s) {
                      t.u[j] = s.u;
                      t.up[j] = s.up;
                      if (with_derivative) {
                          t.du[j] = s.du;
                          t.dup[j] = s.dup;
                      }
                  });
    check_finite(t.u[M]);
    check_finite(t.up[M]);
    return t;
}

void shoot_complex(const Potential& q, std::complex<double> lambda, double u0, double up0,
                   std::complex<double>& u1, std::complex<double>& up1) {
    State<std::complex<double>> fin{};
    march<std::complex<double>>(q, lambda, {u0, up0, 0.0, 0.0}, false, false,
                                [&](int, const State<std::complex<double>>& s) { fin = s; });
    u1 = fin.u;
    up1 = fin.up;
    if (!std::isfinite(std::abs(u1)) || !std::isfinite(std::abs(up1)))
        fail(ErrorKind::OverflowError, "complex shot left the representable range");
}

FundamentalSolution solve_forward(const Potential& q, double lambda) {
    FundamentalSolution f;
    f.lambda = lambda;
    check_lambda(q, 0.0, lambda);
    const int M = q.grid_size();
    for (auto* v : {&f.theta, &f.theta_prime, &f.phi, &f.phi_prime, &f.dtheta, &f.dtheta_prime,
                    &f.dphi, &f.dphi_prime})
        v->resize(M + 1);
    const double e1 = march<double>(q, lambda, {1.0, 0.0, 0.0, 0.0}, true, false,
                                    [&](int j, const State<double>& s) {
                                        f.theta[j] = s.u;
                                        f.theta_prime[j] = s.up;
                                        f.dtheta[j] = s.du;
                                        f.dtheta_prime[j] = s.dup;
                                    });
    const double e2 = march<double>(q, lambda, {0.0, 1.0, 0.0, 0.0}, true, false,
                                    [&](int j, const State<double>& s) {
                                        f.phi[j] = s.u;
                                        f.phi_prime[j] = s.up;
                                        f.dphi[j] = s.du;
                                        f.dphi_prime[j] = s.dup;
                                    });
    f.error_estimate = std::max(e1, e2);
    for (double v : {f.theta[M], f.theta_prime[M], f.phi[M], f.phi_prime[M], f.dtheta[M],
                     f.dphi_prime[M]})
        check_finite(v);
    return f;
}

BackwardSolution solve_backward(const Potential& q, double b, double lambda) {
    check_lambda(q, b, lambda);
    BackwardSolution s;
    s.lambda = lambda;
    s.b = b;
    const int M = q.grid_size();
    s.xi.resize(M + 1);
    s.xi_prime.resize(M + 1);
    march<double>(q, lambda, {-1.0, b, 0.0, 0.0}, false, true,
                  [&](int j, const State<double>& st) {
                      s.xi[j] = st.u;
                      s.xi_prime[j] = st.up;
                  });
    check_finite(s.xi[0]);
    check_finite(s.xi_prime[0]);
    return s;
}

double solution_product_integral(const Potential& q, double lambda, const std::vector<double>& u,
                                 const std::vector<double>& up, const std::vector<double>& v,
                                 const std::vector<double>& vp) {
    const std::size_t n = u.size();
    std::vector<double> f(n), df(n), d2f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double qm = q[static_cast<int>(j)] - lambda;
        f[j] = u[j] * v[j];
        df[j] = up[j] * v[j] + u[j] * vp[j];
        d2f[j] = 2 * up[j] * vp[j] + 2 * qm * u[j] * v[j];
    }
    return integrate_hermite(f, df, d2f, q.step());
}

Eigenfunction eigenfunction(const Potential& q, double b, double lambda_n, int n) {
    check_lambda(q, b, lambda_n);
    const Trajectory t = trajectory(q, lambda_n, 0.0, 1.0, true);
    const int M = q.grid_size();
    const double w = t.up[M] + b * t.u[M];
    const double wdot = t.dup[M] + b * t.du[M];
    const double scale = std::max(1.0, std::abs(wdot) * std::max(1.0, std::abs(lambda_n)));
    if (!(std::abs(w) <= 1e-8 * scale)) {
        std::ostringstream msg;
        msg << "w(" << lambda_n << ") = " << w << " for index " << n;
        fail(ErrorKind::NotAnEigenvalue, msg.str());
    }
    Eigenfunction e;
    e.phi_norm_sq = solution_product_integral(q, lambda_n, t.u, t.up, t.u, t.up);
    const double inv = 1.0 / std::sqrt(e.phi_norm_sq);
    e.psi.resize(M + 1);
    e.psi_prime.resize(M + 1);
    for (int j = 0; j <= M; ++j) {
        e.psi[j] = t.u[j] * inv;
        e.psi_prime[j] = t.up[j] * inv;
    }
    e.psi_prime0 = inv;
    return e;
}

Chi chi(const Potential& q, double b, int n, const EigenRecord& eig) {
    const Trajectory th = trajectory(q, eig.lambda, 1.0, 0.0, false);
    const Trajectory ph = trajectory(q, eig.lambda, 0.0, 1.0, false);
    const int M = q.grid_size();
    const double w = ph.up[M] + b * ph.u[M];
    if (!(std::abs(w) <= 1e-8 * std::max(1.0, std::abs(eig.wdot) * std::max(1.0, std::abs(eig.lambda))))) {
        std::ostringstream msg;
        msg << "w(" << eig.lambda << ") = " << w << " for index " << n;
        fail(ErrorKind::NotAnEigenvalue, msg.str());
    }
    const double I = solution_product_integral(q, eig.lambda, ph.u, ph.up, th.u, th.up);
    const double p0 = eig.psi_prime0;
    Chi c;
    c.chi.resize(M + 1);
    c.chi_prime.resize(M + 1);
    for (int j = 0; j <= M; ++j) {
        c.chi[j] = th.u[j] / p0 - eig.psi[j] * I;
        c.chi_prime[j] = th.up[j] / p0 - eig.psi_prime[j] * I;
    }
    return c;
}

}  // namespace slspec
