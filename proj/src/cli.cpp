#include "slspec/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "slspec/darboux.hpp"
#include "slspec/errors.hpp"
#include "slspec/general_bc.hpp"
#include "slspec/inverse.hpp"
#include "slspec/parallel.hpp"
#include "slspec/spectrum.hpp"

namespace slspec {

namespace {

// "inf" (or absent) selects ψ(0) = 0.
std::optional<double> parse_a(const std::string& text) {
    if (text.empty() || text == "inf" || text == "Inf" || text == "infinity") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v))
        fail(ErrorKind::InvalidInput, "--a expects a number or inf, got '" + text + "'");
    return v;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::InvalidInput, "cannot write " + path);
    f << std::setprecision(17);
    return f;
}

struct Flags {
    std::string potential, out, data, plot, a;
    double b = 0.0, t = 0.0;
    int n = 0, index = 0, max_iter = 40;
    std::optional<double> b_fixed;
};

int cmd_forward(const Flags& f, std::ostream& out) {
    const Potential q = read_potential_csv(f.potential);
    const auto a = parse_a(f.a);
    SpectralData data;
    out << std::setprecision(12);
    if (a) {
        const auto eig = general_eigen(q, *a, f.b, f.n);
        data = general_spectral_data(eig, mean(q) + 2 * *a + 2 * f.b, *a, f.b);
        out << "n,sigma,kappa\n";
        for (const auto& r : eig) out << r.n << ',' << r.sigma << ',' << r.kappa << '\n';
    } else {
        const auto eig = eigenvalues_only(q, f.b, f.n);
        data = spectral_data(eig, mean(q) + 2 * f.b, f.b);
        out << "n,lambda,nu\n";
        for (const auto& r : eig) out << r.n << ',' << r.lambda << ',' << r.nu << '\n';
    }
    if (!f.out.empty()) write_spectral_data(f.out, data);
    return kExitOk;
}

int cmd_identity(const Flags& f, std::ostream& out) {
    const Potential q = read_potential_csv(f.potential);
    const auto a = parse_a(f.a);
    out << std::setprecision(6);
    if (a) {
        const auto rep = general_identity_residuals(q, *a, f.b, f.n);
        out << "residual_plus " << rep.residual_plus << "\nresidual_minus " << rep.residual_minus
            << "\ntail_plus " << rep.tail_plus << "\ntail_minus " << rep.tail_minus << '\n';
        if (!f.plot.empty()) {
            auto csv = open_output(f.plot);
            csv << "n,series,value\n";
            for (std::size_t n = 0; n < rep.terms_plus.size(); ++n) {
                csv << n << ",term_plus," << rep.terms_plus[n] << '\n';
                csv << n << ",term_minus," << rep.terms_minus[n] << '\n';
            }
        }
    } else {
        const auto rep = identity_residual(q, f.b, f.n);
        out << "residual " << rep.residual << "\ntail " << rep.tail << "\nfit_C " << rep.fit_C
            << '\n';
        if (!f.plot.empty()) {
            auto csv = open_output(f.plot);
            csv << "n,series,value\n";
            double partial = 0.0;
            for (std::size_t n = 0; n < rep.terms.size(); ++n) {
                partial += rep.terms[n];
                csv << n << ",term," << rep.terms[n] << '\n';
                csv << n << ",partial_sum," << partial << '\n';
            }
        }
    }
    return kExitOk;
}

int cmd_darboux(const Flags& f, std::ostream& out) {
    const Potential q = read_potential_csv(f.potential);
    const auto [q2, b2] = darboux_transform(q, f.b, {f.index, f.t});
    write_potential_csv(f.out, q2);
    out << std::setprecision(17) << "b " << b2 << '\n';
    return kExitOk;
}

void print_history(const NewtonDiagnostics& d, std::ostream& os) {
    os << "iteration,residual\n" << std::setprecision(6);
    for (std::size_t i = 0; i < d.residual_history.size(); ++i)
        os << i << ',' << d.residual_history[i] << '\n';
}

int cmd_invert(const Flags& f, std::ostream& out, std::ostream& err) {
    SpectralData data = read_spectral_data(f.data);
    if (data.a) fail(ErrorKind::InvalidInput, "inversion needs ψ(0)=0 data (bc.a = inf)");
    check_interlacing(data);
    if (f.b_fixed) {
        const std::vector<double> rest(data.mu.begin() + 1, data.mu.end());
        data.mu[0] = recover_mu0(*f.b_fixed, data.c, rest, data.dnu);
        out << std::setprecision(17) << "mu0 " << data.mu[0] << '\n';
    }
    NewtonOptions opts;
    opts.max_iter = f.max_iter;
    try {
        const InverseResult r = newton_invert(data, opts);
        write_potential_csv(f.out, r.q);
        print_history(r.diagnostics, out);
        if (!f.b_fixed) out << std::setprecision(17) << "b " << r.b << '\n';
        return kExitOk;
    } catch (const NewtonFailure& e) {
        err << e.what() << '\n';
        print_history(e.last().diagnostics, err);
        return kExitNoConvergence;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral solver for -ψ'' + qψ = λψ on [0,1]", "slspec"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: $SLSPEC_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    Flags f;
    auto* forward = app.add_subcommand("forward", "eigenvalues and norming constants");
    forward->add_option("--potential", f.potential, "CSV with header x,q")->required();
    forward->add_option("--b", f.b)->required();
    forward->add_option("--a", f.a, "left boundary constant, or inf for ψ(0)=0");
    forward->add_option("--n", f.n)->required()->check(CLI::PositiveNumber);
    forward->add_option("--out", f.out, "SpectralData JSON");

    auto* identity = app.add_subcommand("identity", "trace identity residuals");
    identity->add_option("--potential", f.potential)->required();
    identity->add_option("--b", f.b)->required();
    identity->add_option("--a", f.a);
    identity->add_option("--n", f.n)->required()->check(CLI::PositiveNumber);
    identity->add_option("--plot", f.plot, "per-term CSV");

    auto* darboux = app.add_subcommand("darboux", "isospectral norming-constant shift");
    darboux->add_option("--potential", f.potential)->required();
    darboux->add_option("--b", f.b)->required();
    darboux->add_option("--index", f.index)->required()->check(CLI::NonNegativeNumber);
    darboux->add_option("--t", f.t)->required();
    darboux->add_option("--out", f.out)->required();

    auto* invert = app.add_subcommand("invert", "recover (q, b) from spectral data");
    invert->add_option("--data", f.data)->required();
    invert->add_option("--out", f.out)->required();
    invert->add_option("--b-fixed", f.b_fixed, "known b; μ₀ is rebuilt from the trace identity");
    invert->add_option("--max-iter", f.max_iter)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (threads > 0) set_thread_count(threads);
        if (*forward) return cmd_forward(f, out);
        if (*identity) return cmd_identity(f, out);
        if (*darboux) return cmd_darboux(f, out);
        return cmd_invert(f, out, err);
    } catch (const SolverError& e) {
        err << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::InvalidInput:
            case ErrorKind::InterlacingViolation:
                return kExitBadInput;
            case ErrorKind::NoConvergence:
                return kExitNoConvergence;
            default:
                return kExitSolver;
        }
    }
}

}  // namespace slspec
