#include "slspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

constexpr double kGaussLo = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
constexpr double kGaussHi = 0.5 + 0.28867513459481288225;
constexpr int kStencil = 7;

// Finite-difference weights (Fornberg) for d/dx and d²/dx² at offset `at`
// of the stencil 0..6 with unit spacing.
struct StencilWeights {
    double d1[kStencil][kStencil];
    double d2[kStencil][kStencil];
};

const StencilWeights& stencil_weights() {
    static const StencilWeights w = [] {
        StencilWeights out{};
        for (int at = 0; at < kStencil; ++at) {
            double c[kStencil][3] = {};
            double c1 = 1.0, c4 = -at;
            c[0][0] = 1.0;
            for (int i = 1; i < kStencil; ++i) {
                const int mn = std::min(i, 2);
                double c2 = 1.0;
                const double c5 = c4;
                c4 = i - at;
                for (int j = 0; j < i; ++j) {
                    const double c3 = i - j;
                    c2 *= c3;
                    if (j == i - 1) {
                        for (int k = mn; k >= 1; --k)
                            c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
                    }
                    for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
                    c[j][0] = c4 * c[j][0] / c3;
                }
                c1 = c2;
            }
            for (int j = 0; j < kStencil; ++j) {
                out.d1[at][j] = c[j][1];
                out.d2[at][j] = c[j][2];
            }
        }
        return out;
    }();
    return w;
}

double quintic(double f0, double f1, double m0, double m1, double s0, double s1, double h,
               double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return (1 - 10 * t3 + 15 * t4 - 6 * t5) * f0 + (10 * t3 - 15 * t4 + 6 * t5) * f1 +
           h * ((t - 6 * t3 + 8 * t4 - 3 * t5) * m0 + (-4 * t3 + 7 * t4 - 3 * t5) * m1) +
           h * h * 0.5 * ((t2 - 3 * t3 + 3 * t4 - t5) * s0 + (t3 - 2 * t4 + t5) * s1);
}

}  // namespace

void node_derivatives(const std::vector<double>& f, double h, std::vector<double>& d1,
                      std::vector<double>& d2) {
    const int M = static_cast<int>(f.size()) - 1;
    const auto& w = stencil_weights();
    d1.assign(M + 1, 0.0);
    d2.assign(M + 1, 0.0);
    for (int j = 0; j <= M; ++j) {
        const int start = std::clamp(j - kStencil / 2, 0, M - (kStencil - 1));
        const int at = j - start;
        double a = 0, b = 0;
        for (int i = 0; i < kStencil; ++i) {
            a += w.d1[at][i] * f[start + i];
            b += w.d2[at][i] * f[start + i];
        }
        d1[j] = a / h;
        d2[j] = b / (h * h);
    }
}

double integrate(const std::vector<double>& f, double h) {
    std::vector<double> d1, d2;
    node_derivatives(f, h, d1, d2);
    return integrate_hermite(f, d1, d2, h);
}

double integrate_hermite(const std::vector<double>& f, const std::vector<double>& df,
                         const std::vector<double>& d2f, double h) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j)
        s += h / 2 * (f[j] + f[j + 1]) + h * h / 10 * (df[j] - df[j + 1]) +
             h * h * h / 120 * (d2f[j] + d2f[j + 1]);
    return s;
}

std::vector<double> integrate_hermite_from_right(const std::vector<double>& f,
                                                 const std::vector<double>& df,
                                                 const std::vector<double>& d2f, double h) {
    std::vector<double> tail(f.size(), 0.0);
    for (std::size_t j = f.size() - 1; j-- > 0;)
        tail[j] = tail[j + 1] + h / 2 * (f[j] + f[j + 1]) + h * h / 10 * (df[j] - df[j + 1]) +
                  h * h * h / 120 * (d2f[j] + d2f[j + 1]);
    return tail;
}

Potential::Potential(std::vector<double> samples) : q_(std::move(samples)) {
    M_ = static_cast<int>(q_.size()) - 1;
    if (M_ < 16) fail(ErrorKind::InvalidInput, "potential needs at least 17 samples (M >= 16)");
    for (double v : q_)
        if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "potential sample is not finite");
    const double h = step();
    node_derivatives(q_, h, slope_, curv_);
    gauss_coarse_.resize(2 * M_);
    gauss_fine_.resize(4 * M_);
    for (int j = 0; j < M_; ++j) {
        auto at = [&](double t) {
            return quintic(q_[j], q_[j + 1], slope_[j], slope_[j + 1], curv_[j], curv_[j + 1], h, t);
        };
        gauss_coarse_[2 * j] = at(kGaussLo);
        gauss_coarse_[2 * j + 1] = at(kGaussHi);
        gauss_fine_[4 * j] = at(0.5 * kGaussLo);
        gauss_fine_[4 * j + 1] = at(0.5 * kGaussHi);
        gauss_fine_[4 * j + 2] = at(0.5 + 0.5 * kGaussLo);
        gauss_fine_[4 * j + 3] = at(0.5 + 0.5 * kGaussHi);
    }
    std::vector<double> sq(q_.size());
    for (std::size_t j = 0; j < q_.size(); ++j) sq[j] = q_[j] * q_[j];
    norm_ = std::sqrt(std::max(0.0, integrate(sq, h)));
    if (std::all_of(q_.begin(), q_.end(), [](double v) { return v == 0.0; })) norm_ = 0.0;
    min_ = *std::min_element(q_.begin(), q_.end());
}

Potential Potential::zero(int M) { return Potential(std::vector<double>(M + 1, 0.0)); }

Potential Potential::constant(double value, int M) {
    return Potential(std::vector<double>(M + 1, value));
}

Potential Potential::from_function(const std::function<double(double)>& f, int M) {
    std::vector<double> s(M + 1);
    for (int j = 0; j <= M; ++j) s[j] = f(static_cast<double>(j) / M);
    return Potential(std::move(s));
}

double Potential::operator()(double x) const {
    const double h = step();
    int j = static_cast<int>(std::floor(x / h));
    j = std::clamp(j, 0, M_ - 1);
    return quintic(q_[j], q_[j + 1], slope_[j], slope_[j + 1], curv_[j], curv_[j + 1], h,
                   x / h - j);
}

Potential Potential::reflected() const {
    return Potential(std::vector<double>(q_.rbegin(), q_.rend()));
}

double mean(const Potential& q) { return integrate(q.samples(), q.step()); }

double l2_norm(const Potential& q) { return q.norm(); }

std::pair<double, double> fourier_mixed(const Potential& q, int n) {
    const double k2 = 2 * std::numbers::pi * (n + 0.5);
    const int M = q.grid_size();
    std::vector<double> c(M + 1), s(M + 1);
    for (int j = 0; j <= M; ++j) {
        c[j] = q[j] * std::cos(k2 * q.node(j));
        s[j] = q[j] * std::sin(k2 * q.node(j));
    }
    return {integrate(c, q.step()), integrate(s, q.step())};
}

Potential read_potential_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open potential file " + path);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::InvalidInput, "empty potential file " + path);
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line != "x,q") fail(ErrorKind::InvalidInput, "potential file must start with header 'x,q'");
    std::vector<double> xs, qs;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            fail(ErrorKind::InvalidInput, "malformed row: " + line);
        try {
            std::size_t pa = 0, pb = 0;
            double x = std::stod(a, &pa), v = std::stod(b, &pb);
            xs.push_back(x);
            qs.push_back(v);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, "non-numeric row: " + line);
        }
    }
    if (xs.size() < 17) fail(ErrorKind::InvalidInput, "potential file needs at least 17 rows");
    const int M = static_cast<int>(xs.size()) - 1;
    for (int j = 0; j <= M; ++j)
        if (std::abs(xs[j] - static_cast<double>(j) / M) > 1e-9)
            fail(ErrorKind::InvalidInput, "nodes must be equispaced on [0,1] including both ends");
    return Potential(std::move(qs));
}

void write_potential_csv(const std::string& path, const Potential& q) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
    out << "x,q\n" << std::setprecision(17);
    for (int j = 0; j <= q.grid_size(); ++j) out << q.node(j) << ',' << q[j] << '\n';
}

}  // namespace slspec
