#include "slspec/hadamard.hpp"

#include <algorithm>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <numbers>

namespace slspec {

namespace {

constexpr double kPi = std::numbers::pi;

// S(w) = sinh√w/√w and S'(w), entire in w.
void sinhc(double w, double& S, double& dS) {
    if (std::abs(w) < 0.5) {
        double s = 1, ds = 0, t = 1;
        for (int k = 1; k < 14; ++k) {
            const double prev = t;  // w^{k-1}/(2k-1)!
            t *= w / ((2 * k) * (2 * k + 1));
            s += t;
            ds += k * prev / ((2 * k) * (2 * k + 1));
        }
        S = s;
        dS = ds;
        return;
    }
    double C;
    if (w > 0) {
        const double r = std::sqrt(w);
        C = std::cosh(r);
        S = std::sinh(r) / r;
    } else {
        const double r = std::sqrt(-w);
        C = std::cos(r);
        S = std::sin(r) / r;
    }
    dS = (C - S) / (2 * w);
}

double sinc(double x) { return std::abs(x) < 1e-4 ? 1 - x * x / 6 : std::sin(x) / x; }

double sinc_prime(double x) {
    return std::abs(x) < 1e-3 ? -x / 3 + x * x * x / 30 : (x * std::cos(x) - std::sin(x)) / (x * x);
}

}  // namespace

double unperturbed_root(BcKind kind, int k) {
    const double s = kind == BcKind::Mixed ? kPi * (k + 0.5) : kPi * k;
    return s * s;
}

double unperturbed_log_scale(BcKind kind, int k) {
    return kind == BcKind::Mixed ? -std::log(kPi * (k + 0.5)) : 0.0;
}

void reference_function(BcKind kind, double z, double& R, double& dR) {
    double S, dS;
    sinhc(-z, S, dS);  // sin√z/√z and its derivative in -z
    if (kind == BcKind::Mixed) {
        // cos√z = C(-z); d/dz cos√z = -S(-z)/2
        if (z >= 0) {
            R = std::cos(std::sqrt(z));
        } else {
            R = std::cosh(std::sqrt(-z));
        }
        dR = -0.5 * S;
    } else {
        // -√z sin√z = -z S(-z)
        R = -z * S;
        dR = -S + z * dS;
    }
}

void reference_ratio(BcKind kind, double z, int k, double& r, double& dr) {
    const double zk = unperturbed_root(kind, k);
    if (kind == BcKind::General && k == 0) {
        // -sin√z/√z
        double S, dS;
        sinhc(-z, S, dS);
        r = -S;
        dr = dS;
        return;
    }
    if (z <= 0.25 * zk) {
        double R, dR;
        reference_function(kind, z, R, dR);
        r = R / (z - zk);
        dr = (dR - r) / (z - zk);
        return;
    }
    const double s = std::sqrt(z), sk = std::sqrt(zk);
    const double u = 0.5 * (s + sk), v = 0.5 * (s - sk);
    const double sv = sinc(v), dsv = sinc_prime(v);
    double drds;
    if (kind == BcKind::Mixed) {
        // cos s = -2 sin u sin v, z - zk = 4uv
        r = -std::sin(u) * sv / (2 * u);
        drds = -(0.5 * std::cos(u) * sv / (2 * u) + std::sin(u) * 0.5 * dsv / (2 * u) -
                 std::sin(u) * sv * 0.5 / (2 * u * u));
    } else {
        // -s sin s = -2 s cos u sin v
        const double cu = std::cos(u), su = std::sin(u);
        r = -s * cu * sv / (2 * u);
        drds = -(cu * sv / (2 * u) - s * 0.5 * su * sv / (2 * u) + s * cu * 0.5 * dsv / (2 * u) -
                 s * cu * sv * 0.5 / (2 * u * u));
    }
    dr = drds / (2 * s);
}

ProductModel::ProductModel(BcKind kind, double c, std::vector<double> shifts)
    : kind_(kind), c_(c), shifts_(std::move(shifts)) {}

double ProductModel::zero(int k) const { return unperturbed_root(kind_, k); }

double ProductModel::root(int k) const {
    return zero(k) + c_ + (k < size() ? shifts_[k] : 0.0);
}

HadamardValue ProductModel::eval(double lambda) const {
    const int N = size();
    const double z = lambda - c_;
    // nearest unperturbed zero among the stored indices
    int j = 0;
    double best = std::abs(z - zero(0));
    for (int k = 1; k < N; ++k) {
        const double d = std::abs(z - zero(k));
        if (d < best) {
            best = d;
            j = k;
        }
    }
    // factors f_i and derivatives g_i; index N holds the merged reference part
    std::vector<double> f(N + 1), g(N + 1);
    for (int k = 0; k < N; ++k) {
        if (k == j) {
            f[k] = lambda - root(k);
            g[k] = 1.0;
        } else {
            const double d = z - zero(k);
            f[k] = 1.0 - shifts_[k] / d;
            g[k] = shifts_[k] / (d * d);
        }
    }
    reference_ratio(kind_, z, j, f[N], g[N]);
    // W = Π f, Ẇ = Σ g_i Π_{l≠i} f_l via prefix/suffix products
    std::vector<double> prefix(N + 2, 1.0);
    for (int i = 0; i <= N; ++i) prefix[i + 1] = prefix[i] * f[i];
    HadamardValue out;
    out.W = prefix[N + 1];
    double suffix = 1.0;
    for (int i = N; i >= 0; --i) {
        out.Wdot += g[i] * prefix[i] * suffix;
        suffix *= f[i];
    }
    return out;
}

double ProductModel::trace_term(int n, double log_weight) const {
    const HadamardValue v = eval(root(n));
    return 2.0 - std::exp(log_weight + unperturbed_log_scale(kind_, n)) / std::abs(v.Wdot);
}

double ProductModel::trace_sum(const std::vector<double>& log_weights, int skip) const {
    const int N = size();
    const int stored = static_cast<int>(log_weights.size());
    const double off = kind_ == BcKind::Mixed ? 0.5 : 0.0;
    const int known = std::min(N, stored);
    if (known >= 8) {
        // Past the data the true terms decay like C/(n+off)², while the
        // model's own tail reflects zero shifts and weights. Close the sum
        // with the decay fitted over the last quarter of the known terms.
        double sum = 0.0, num = 0.0, den = 0.0;
        const int start = known - std::max(2, known / 4);
        for (int n = 0; n < known; ++n) {
            if (n == skip) continue;
            const double t = trace_term(n, log_weights[n]);
            sum += t;
            if (n >= start && n + off > 0) {
                const double basis = 1.0 / ((n + off) * (n + off));
                num += t * basis;
                den += basis * basis;
            }
        }
        return sum + (num / den) * boost::math::trigamma(known + off);
    }
    const int tail_end = std::max({4 * N, N + 400, stored});
    double sum = 0.0;
    for (int n = 0; n < tail_end; ++n) {
        if (n == skip) continue;
        sum += trace_term(n, n < stored ? log_weights[n] : 0.0);
    }
    // beyond tail_end each term is -2 Σ s_k / z_n to leading order
    double s1 = 0.0;
    for (double s : shifts_) s1 += s;
    sum += -2.0 * s1 * boost::math::trigamma(tail_end + off) / (kPi * kPi);
    return sum;
}

}  // namespace slspec
