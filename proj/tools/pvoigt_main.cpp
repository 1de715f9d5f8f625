// Command-line front end: evaluation, grid scans, kernel profiles,
// coefficient fitting and max-discrepancy search, with CSV output.

#include "pvoigt/discrepancy.hpp"
#include "pvoigt/fit.hpp"
#include "pvoigt/kernel_expansion.hpp"
#include "pvoigt/pseudo_voigt.hpp"
#include "pvoigt/reference.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr int kExitConvergence = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits, locale-independent: parses back to the same double.
std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Routes CSV to --out (file) or stdout; the human-readable summary goes to
// stdout when the CSV is in a file, to stderr when the CSV occupies stdout.
void write_csv(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
    if (out_path.empty()) {
        writer(std::cout);
        std::cout.flush();
        if (!std::cout)
            throw IoError("write to stdout failed");
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw IoError("cannot open output file: " + out_path);
    writer(file);
    file.flush();
    if (!file)
        throw IoError("write failed: " + out_path);
}

std::ostream& summary_stream(const std::string& out_path) {
    return out_path.empty() ? std::cerr : std::cout;
}

int cmd_eval(double x, double y, double gamma, bool with_ref) {
    const pvoigt::ComplexArgument<double> arg{x, y};
    const pvoigt::PseudoVoigtParams<double> params{gamma};
    const auto approx = pvoigt::faddeeva_approx(arg, params);
    std::cout << "k_approx = " << fmt(approx.re) << "\n";
    std::cout << "l_approx = " << fmt(approx.im) << "\n";
    if (with_ref) {
        const auto ref = pvoigt::w_reference(arg, pvoigt::QuadratureConfig<double>{});
        std::cout << "k_ref = " << fmt(ref.re) << "\n";
        std::cout << "l_ref = " << fmt(ref.im) << "\n";
        std::cout << "delta_re = " << fmt(std::abs(ref.re - approx.re)) << "\n";
        std::cout << "delta_im = " << fmt(std::abs(ref.im - approx.im)) << "\n";
    }
    return 0;
}

int cmd_scan(double x_min, double x_max, int steps, const std::vector<double>& ys, double gamma,
             const std::string& out_path) {
    pvoigt::ScanGrid<double> grid{x_min, x_max, steps, ys};
    const auto report = pvoigt::scan(grid, pvoigt::PseudoVoigtParams<double>{gamma});

    write_csv(out_path, [&](std::ostream& os) {
        os << "x,y,k_approx,l_approx,k_ref,l_ref,delta_re,delta_im\n";
        for (const auto& row : report.rows)
            os << fmt(row.x) << ',' << fmt(row.y) << ',' << fmt(row.k_approx) << ','
               << fmt(row.l_approx) << ',' << fmt(row.k_ref) << ',' << fmt(row.l_ref) << ','
               << fmt(row.delta_re) << ',' << fmt(row.delta_im) << '\n';
    });

    std::ostream& os = summary_stream(out_path);
    for (const auto& ym : pvoigt::per_y_maxima(report))
        os << "y = " << fmt(ym.y) << ": max delta_re = " << fmt(ym.max_re.value)
           << " at x = " << fmt(ym.max_re.x) << "; max delta_im = " << fmt(ym.max_im.value)
           << " at x = " << fmt(ym.max_im.x) << "\n";
    os << "max delta_re = " << fmt(report.max_re.value) << " at x = " << fmt(report.max_re.x)
       << ", y = " << fmt(report.max_re.y) << "\n";
    os << "max delta_im = " << fmt(report.max_im.value) << " at x = " << fmt(report.max_im.x)
       << ", y = " << fmt(report.max_im.y) << "\n";
    return 0;
}

int cmd_kernel(double t_min, double t_max, int steps, const std::string& out_path) {
    const auto rows = pvoigt::kernel_profile(t_min, t_max, steps);
    write_csv(out_path, [&](std::ostream& os) {
        os << "t,f0,f1,sum,exact,epsilon\n";
        for (const auto& row : rows)
            os << fmt(row.t) << ',' << fmt(row.f0) << ',' << fmt(row.f1) << ',' << fmt(row.sum)
               << ',' << fmt(row.exact) << ',' << fmt(row.epsilon) << '\n';
    });
    double max_eps = 0.0;
    double at_t = rows.front().t;
    for (const auto& row : rows)
        if (std::abs(row.epsilon) > max_eps) {
            max_eps = std::abs(row.epsilon);
            at_t = row.t;
        }
    summary_stream(out_path) << "max |epsilon| = " << fmt(max_eps) << " at t = " << fmt(at_t)
                             << "\n";
    return 0;
}

int cmd_fit(int n_terms, double t_max, pvoigt::FitObjective objective,
            const std::string& out_path) {
    pvoigt::FitOptions<double> opt;
    opt.n_terms = n_terms;
    opt.t_max = t_max;
    opt.objective = objective;
    const auto result = pvoigt::fit_expansion(opt);
    const char* name = objective == pvoigt::FitObjective::linf ? "linf" : "l2";

    for (Eigen::Index n = 0; n < result.expansion.terms(); ++n)
        std::cout << "term " << n << ": alpha = " << fmt(result.expansion.alpha()[n])
                  << ", beta = " << fmt(result.expansion.beta()[n]) << "\n";
    std::cout << "objective(" << name << ") = " << fmt(result.objective_value) << "\n";
    std::cout << "iterations = " << result.iterations << "\n";
    if (n_terms == 2) {
        const double fixed = pvoigt::expansion_objective(pvoigt::default_coefficients<double>(),
                                                         t_max, objective, opt.grid_points);
        std::cout << "two-term default objective(" << name << ") = " << fmt(fixed) << "\n";
    }

    if (!out_path.empty())
        write_csv(out_path, [&](std::ostream& os) {
            os << "n,alpha,beta\n";
            for (Eigen::Index n = 0; n < result.expansion.terms(); ++n)
                os << n << ',' << fmt(result.expansion.alpha()[n]) << ','
                   << fmt(result.expansion.beta()[n]) << '\n';
        });

    if (!result.converged) {
        std::cerr << "fit did not converge within the iteration cap; best point reported\n";
        return kExitConvergence;
    }
    return 0;
}

int cmd_maxerr(double y, double gamma, double x_max, int steps) {
    const pvoigt::PseudoVoigtParams<double> params{gamma};
    const pvoigt::QuadratureConfig<double> cfg{};
    const auto re = pvoigt::find_max_discrepancy(params, cfg, pvoigt::Component::real_part, y,
                                                 x_max, steps);
    const auto im = pvoigt::find_max_discrepancy(params, cfg, pvoigt::Component::imag_part, y,
                                                 x_max, steps);
    std::cout << "y = " << fmt(y) << "\n";
    std::cout << "max delta_re = " << fmt(re.value) << " at x = " << fmt(re.x) << "\n";
    std::cout << "max delta_im = " << fmt(im.value) << " at x = " << fmt(im.x) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational pseudo-Voigt / complex error function toolkit"};
    app.require_subcommand(1);

    double x = 0, y = 0, gamma = 2.75;
    bool with_ref = false;
    auto* eval = app.add_subcommand("eval", "Evaluate the approximation at one point");
    eval->add_option("--x", x, "Real part of the argument")->required();
    eval->add_option("--y", y, "Imaginary part of the argument (>= 0)")->required();
    eval->add_option("--gamma", gamma, "Shape parameter")->capture_default_str();
    eval->add_flag("--with-ref", with_ref, "Also print the quadrature reference and deltas");

    double x_min = 0, x_max = 10;
    int steps = 1001;
    std::vector<double> ys{0, 0.1, 0.5, 1};
    std::string out_path;
    auto* scan = app.add_subcommand("scan", "Scan a grid and emit a discrepancy CSV");
    scan->add_option("--x-min", x_min, "Grid start")->capture_default_str();
    scan->add_option("--x-max", x_max, "Grid end")->capture_default_str();
    scan->add_option("--steps", steps, "Grid points (endpoints included)")
        ->check(CLI::Range(2, 1 << 24))
        ->capture_default_str();
    scan->add_option("--y", ys, "y levels, ascending")->delimiter(',')->capture_default_str();
    scan->add_option("--gamma", gamma, "Shape parameter")->capture_default_str();
    scan->add_option("--out", out_path, "CSV path (stdout when omitted)");

    double t_min = -5, t_max = 5;
    int t_steps = 1001;
    auto* kernel = app.add_subcommand("kernel", "Tabulate the two-term kernel vs exp(-t^2)");
    kernel->add_option("--t-min", t_min, "Grid start")->capture_default_str();
    kernel->add_option("--t-max", t_max, "Grid end")->capture_default_str();
    kernel->add_option("--steps", t_steps, "Grid points (endpoints included)")
        ->check(CLI::Range(2, 1 << 24))
        ->capture_default_str();
    kernel->add_option("--out", out_path, "CSV path (stdout when omitted)");

    int n_terms = 2;
    double fit_t_max = 5;
    pvoigt::FitObjective objective = pvoigt::FitObjective::linf;
    const std::map<std::string, pvoigt::FitObjective> objective_names{
        {"l2", pvoigt::FitObjective::l2}, {"linf", pvoigt::FitObjective::linf}};
    auto* fit = app.add_subcommand("fit", "Fit expansion coefficients to exp(-t^2)");
    fit->add_option("--n-terms", n_terms, "Number of expansion terms")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    fit->add_option("--t-max", fit_t_max, "Fit window is [0, t-max]")->capture_default_str();
    fit->add_option("--objective", objective, "Fit objective")
        ->transform(CLI::CheckedTransformer(objective_names, CLI::ignore_case))
        ->default_str("linf");
    fit->add_option("--out", out_path, "Coefficient CSV path");

    double maxerr_y = 0, maxerr_x_max = 10;
    int coarse_steps = 2001;
    auto* maxerr = app.add_subcommand("maxerr", "Locate the largest approximation error");
    maxerr->add_option("--y", maxerr_y, "y level")->capture_default_str();
    maxerr->add_option("--gamma", gamma, "Shape parameter")->capture_default_str();
    maxerr->add_option("--x-max", maxerr_x_max, "Search window is [0, x-max]")
        ->capture_default_str();
    maxerr->add_option("--steps", coarse_steps, "Coarse scan points")
        ->check(CLI::Range(2, 1 << 24))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*eval)
            return cmd_eval(x, y, gamma, with_ref);
        if (*scan)
            return cmd_scan(x_min, x_max, steps, ys, gamma, out_path);
        if (*kernel)
            return cmd_kernel(t_min, t_max, t_steps, out_path);
        if (*fit)
            return cmd_fit(n_terms, fit_t_max, objective, out_path);
        if (*maxerr)
            return cmd_maxerr(maxerr_y, gamma, maxerr_x_max, coarse_steps);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const pvoigt::ScanError& e) {
        std::cerr << e.what() << "\n";
        return kExitConvergence;
    } catch (const pvoigt::QuadratureError& e) {
        std::cerr << e.what() << " (best estimate " << fmt(e.best_estimate())
                  << ", achieved error " << fmt(e.achieved_error()) << ")\n";
        return kExitConvergence;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
