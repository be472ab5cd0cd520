#include "qes/cli.hpp"

#include "internal.hpp"
#include "qes/invisibility.hpp"
#include "qes/oracle.hpp"
#include "qes/support.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace qes::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefaultAlpha = 2.0 * kPi / 0.5;
// SI constants for wave_params output.
constexpr double kEps0 = 8.8541878128e-12;
constexpr double kLightSpeed = 299792458.0;

struct Outcome {
    int exit_code = 0;
    std::vector<std::string> outputs;
};

using Dir = std::filesystem::path;

// Top-level alpha; a permittivity scatterer supplies its own when absent.
double resolve_alpha(Config& c)
{
    if (c.has("alpha"))
        return c.number("alpha");
    if (c.has("scatterer") && c.raw("scatterer").is_object() && c.raw("scatterer").contains("permittivity")) {
        const PermittivityProfile p = parse_profile(c.raw("scatterer").at("permittivity"), nullptr);
        return c.number("alpha", p.alpha);
    }
    return c.number("alpha", kDefaultAlpha);
}

ScattererSpec scatterer(Config& c, double alpha)
{
    ScattererSpec s = parse_scatterer(c.raw("scatterer"), alpha);
    c.record("scatterer", s.resolved);
    return s;
}

double default_theta0(Side side)
{
    return side == Side::Left ? -0.25 * kPi : 1.25 * kPi;
}

std::vector<double> wavenumbers(Config& c, double fallback_lambda)
{
    if (c.has("k") && c.has("lambda_um"))
        throw Error("config: give \"k\" or \"lambda_um\", not both");
    if (c.has("k"))
        return c.numbers("k");
    std::vector<double> lambdas;
    if (c.has("lambda_um")) {
        lambdas = c.numbers("lambda_um");
    } else {
        lambdas = {fallback_lambda};
        c.record("lambda_um", lambdas);
    }
    std::vector<double> ks;
    for (double l : lambdas) {
        if (!(l > 0.0))
            throw Error("config: wavelengths must be positive");
        ks.push_back(2.0 * kPi / l);
    }
    return ks;
}

std::string csv_of(const AmplitudeTable& t)
{
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

Outcome cmd_certify(Config& c, const Dir& out, double tol)
{
    c.allow({"alpha", "scatterer", "samples"});
    const double alpha = resolve_alpha(c);
    const int samples = c.integer("samples", 64);
    const ScattererSpec s = scatterer(c, alpha);
    // Supports do not depend on k; evaluate the dispersive case at alpha.
    const SupportCertificate cert = certify_support(s.scatterer.at(alpha), alpha, samples);
    const InvisibilityVerdict verdict = classify(cert);
    const bool certified = cert.cond_y_halfline && (cert.cond_x_left || cert.cond_x_right) &&
                           cert.numeric_residual <= tol;
    Json j;
    j["certified"] = certified;
    j["tolerance"] = tol;
    j["certificate"] = to_json(cert);
    j["verdict"] = to_json(verdict);
    write_file(out / "certificate.json", dump(j));
    return {certified ? 0 : 1, {"certificate.json"}};
}

Outcome cmd_born(Config& c, const Dir& out, double tol)
{
    c.allow({"alpha", "scatterer", "side", "theta0", "k", "lambda_um", "theta", "method"});
    const double alpha = resolve_alpha(c);
    const Side side = parse_side(c.text("side", "left"));
    const double theta0 = c.number("theta0", default_theta0(side));
    const std::vector<double> ks = wavenumbers(c, 0.55);
    const std::vector<double> thetas = c.numbers("theta");
    const std::string method = c.text("method", "closed");
    if (method != "closed" && method != "quadrature")
        throw Error("config: method must be \"closed\" or \"quadrature\"");
    const ScattererSpec s = scatterer(c, alpha);

    AmplitudeTable t;
    for (double k : ks) {
        const Potential v = s.scatterer.at(k);
        const IncidenceSpec inc{side, theta0, k};
        for (double th : thetas) {
            if (method == "closed")
                t.rows.push_back({k, theta0, th, born_amplitude(v, inc, th), Method::BornClosed});
            else
                t.rows.push_back({k, theta0, th, born_amplitude_numeric(v, inc, th, tol), Method::BornQuad});
        }
    }
    write_file(out / "amplitudes.csv", csv_of(t));
    return {0, {"amplitudes.csv"}};
}

std::vector<double> theta_grid(Config& c, int fallback_n)
{
    if (c.has("theta") && c.has("n_theta"))
        throw Error("config: give \"theta\" or \"n_theta\", not both");
    if (c.has("theta"))
        return c.numbers("theta");
    const int n = c.integer("n_theta", fallback_n);
    if (n < 1)
        throw Error("config: n_theta must be positive");
    std::vector<double> th;
    for (int j = 0; j < n; ++j)
        th.push_back(2.0 * kPi * j / n);
    return th;
}

Outcome cmd_sweep(Config& c, const Dir& out, double)
{
    c.allow({"alpha", "scatterer", "side", "theta0", "k", "lambda_um", "theta", "n_theta"});
    const double alpha = resolve_alpha(c);
    const Side side = parse_side(c.text("side", "left"));
    const double theta0 = c.number("theta0", default_theta0(side));
    const std::vector<double> ks = wavenumbers(c, 0.55);
    const std::vector<double> thetas = theta_grid(c, 360);
    const ScattererSpec s = scatterer(c, alpha);
    write_file(out / "amplitudes.csv", csv_of(sweep(s.scatterer, side, theta0, ks, thetas)));
    return {0, {"amplitudes.csv"}};
}

Outcome cmd_oracle(Config& c, const Dir& out, double tol)
{
    c.allow({"alpha", "scatterer", "k_over_alpha", "N", "Nx", "order", "theta0_right", "n_theta"});
    const double alpha = resolve_alpha(c);
    std::vector<double> ratios{0.8, 1.0, 1.5};
    if (c.has("k_over_alpha"))
        ratios = c.numbers("k_over_alpha");
    else
        c.record("k_over_alpha", ratios);
    OracleOptions opt;
    opt.n = c.integer("N", opt.n);
    opt.nx = c.integer("Nx", opt.nx);
    opt.order = c.integer("order", opt.order);
    opt.theta0_right = c.number("theta0_right", opt.theta0_right);
    opt.n_theta = c.integer("n_theta", opt.n_theta);
    if (opt.order < 2)
        throw Error("config: oracle needs order >= 2 to measure the second-order term");
    const ScattererSpec s = scatterer(c, alpha);

    Json rows = Json::array();
    bool below_ok = true;
    bool above_fails = false;
    for (double r : ratios) {
        const double k = r * alpha;
        const OracleReport rep = run_oracle(s.scatterer.at(k), k, alpha, opt);
        for (const auto& w : rep.warnings)
            std::cerr << "qes-scatter: warning: k=" << k << ": " << w << "\n";
        const bool pass = rep.order2_rel_norm <= tol && rep.thm2_max_product_norm <= tol;
        Json row = to_json(rep);
        row["within_tolerance"] = pass;
        rows.push_back(row);
        if (k <= alpha * (1.0 + 1e-12))
            below_ok = below_ok && pass;
        else
            above_fails = above_fails || !pass;
    }
    const bool ok = below_ok && above_fails;
    Json j;
    j["tolerance"] = tol;
    j["rows"] = rows;
    j["band_edge_sharp"] = ok;
    write_file(out / "oracle.json", dump(j));
    return {ok ? 0 : 1, {"oracle.json"}};
}

Outcome cmd_invisibility(Config& c, const Dir& out, double)
{
    c.allow({"alpha", "scatterer", "n_k", "n_theta0", "n_theta"});
    const double alpha = resolve_alpha(c);
    VerifySampling smp;
    smp.n_k = c.integer("n_k", smp.n_k);
    smp.n_theta0 = c.integer("n_theta0", smp.n_theta0);
    smp.n_theta = c.integer("n_theta", smp.n_theta);
    const ScattererSpec s = scatterer(c, alpha);
    const VerifyReport r = verify(s.scatterer, alpha, smp);
    const bool ok = r.invisible_max_abs_f == 0.0 && r.visible_outside_max_abs_f == 0.0 &&
                    (!r.verdict.unidirectional || r.visible_positive);
    Json j = to_json(r);
    j["consistent"] = ok;
    if (r.verdict.unidirectional) {
        const double k = r.verdict.k_hi;
        const VisibleWindows w =
            visible_windows(r.verdict.side == InvisibleSide::LeftInvisible ? Side::Right : Side::Left, alpha, k);
        j["windows_at_alpha"] = {{"incidence", side_name(w.incidence)},
                                 {"theta0", {w.theta0.lo, w.theta0.hi}},
                                 {"theta", {w.theta.lo, w.theta.hi}},
                                 {"relative", {w.relative.lo, w.relative.hi}}};
    }
    write_file(out / "invisibility.json", dump(j));
    return {ok ? 0 : 1, {"invisibility.json"}};
}

Outcome cmd_fig1(Config& c, const Dir& out, double)
{
    c.allow({"z", "a_um", "b_um", "alpha_rad_per_um", "eps_inf_rel", "theta0", "n_lambda", "n_theta",
             "lambda_min_um", "lambda_max_um"});
    PermittivityProfile p;
    p.z = c.has("z") ? complex_from_json(c.raw("z"), "z") : Complex(1.0, 0.0);
    c.record("z", to_json(p.z));
    p.a = c.number("a_um", 1.0);
    p.b = c.number("b_um", 1.0);
    p.alpha = c.number("alpha_rad_per_um", kDefaultAlpha);
    p.eps_inf_rel = c.number("eps_inf_rel", 1.0);
    const double theta0 = c.number("theta0", -0.25 * kPi);
    const int n_lambda = c.integer("n_lambda", 256);
    const int n_theta = c.integer("n_theta", 256);
    const double l_min = c.number("lambda_min_um", 0.5);
    const double l_max = c.number("lambda_max_um", 0.8);
    if (n_lambda < 1 || n_theta < 1 || !(l_max > l_min) || !(l_min > 0.0))
        throw Error("fig1: bad grid");

    // lambda_i = l_min + (i + 1) dl covers (l_min, l_max]; theta_j = 2 pi j / n.
    std::vector<double> lambdas, ks, thetas;
    for (int i = 0; i < n_lambda; ++i) {
        lambdas.push_back(l_min + (i + 1) * (l_max - l_min) / n_lambda);
        ks.push_back(2.0 * kPi / lambdas.back());
    }
    for (int j = 0; j < n_theta; ++j)
        thetas.push_back(2.0 * kPi * j / n_theta);

    const AmplitudeTable t = sweep(dispersive_scatterer(p), Side::Left, theta0, ks, thetas);
    double peak = 0.0;
    for (const auto& r : t.rows)
        peak = std::max(peak, std::norm(r.f));

    std::vector<unsigned char> img(static_cast<std::size_t>(n_lambda) * n_theta, 0);
    long nonzero = 0;
    double last_nonzero_lambda = 0.0;
    for (int i = 0; i < n_lambda; ++i)
        for (int j = 0; j < n_theta; ++j) {
            const double a2 = std::norm(t.rows[static_cast<std::size_t>(i) * n_theta + j].f);
            if (a2 == 0.0)
                continue;
            ++nonzero;
            last_nonzero_lambda = std::max(last_nonzero_lambda, lambdas[i]);
            const int level = std::max(1, static_cast<int>(std::lround(255.0 * a2 / peak)));
            img[static_cast<std::size_t>(n_theta - 1 - j) * n_lambda + i] = static_cast<unsigned char>(level);
        }

    write_file(out / "fig1.csv", csv_of(t));
    write_file(out / "fig1.pgm", pgm(n_lambda, n_theta, img));
    Json s;
    s["peak_abs2_f"] = peak;
    s["nonzero_cells"] = nonzero;
    s["largest_nonzero_lambda_um"] = last_nonzero_lambda;
    s["band_edge_lambda_um"] = 2.0 * std::sqrt(2.0) * kPi / p.alpha;
    s["image"] = {{"columns", "lambda ascending"}, {"rows", "theta descending from top"}};
    write_file(out / "fig1.json", dump(s));
    return {0, {"fig1.csv", "fig1.pgm", "fig1.json"}};
}

Outcome cmd_permittivity(Config& c, const Dir& out, double)
{
    c.allow({"profile", "grid", "k"});
    Json pr;
    const PermittivityProfile p = parse_profile(c.has("profile") ? c.raw("profile") : Json::object(), &pr);
    c.record("profile", pr);
    ProfileGrid g{-5.0, 5.0, 101, -5.0, 5.0, 101};
    if (c.has("grid")) {
        const Json& gj = c.raw("grid");
        require_keys(gj, {"x_min", "x_max", "nx", "y_min", "y_max", "ny"}, "grid");
        auto num = [&](const char* k, double d) { return gj.contains(k) ? gj.at(k).get<double>() : d; };
        auto cnt = [&](const char* k, int d) { return gj.contains(k) ? gj.at(k).get<int>() : d; };
        g = {num("x_min", g.x_min), num("x_max", g.x_max), cnt("nx", g.nx),
             num("y_min", g.y_min), num("y_max", g.y_max), cnt("ny", g.ny)};
    }
    c.record("grid", {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                      {"y_min", g.y_min}, {"y_max", g.y_max}, {"ny", g.ny}});
    std::ostringstream os;
    export_profile(os, p, g);
    write_file(out / "profile.csv", os.str());
    std::vector<std::string> outputs{"profile.csv"};
    if (c.has("k")) {
        const double k = c.number("k");
        // k in rad/um; omega in rad/s.
        const WaveParams w = wave_params(k * 1e6, kEps0, kEps0 * p.eps_inf_rel, kLightSpeed);
        Json j{{"k_rad_per_um", k}, {"omega_rad_per_s", w.omega}, {"lambda_um", w.lambda * 1e6}};
        write_file(out / "wave.json", dump(j));
        outputs.push_back("wave.json");
    }
    return {0, outputs};
}

} // namespace

int run_command(const std::string& sub, const std::filesystem::path& config, const std::filesystem::path& out,
                int threads)
{
    try {
        if (std::find(kSubcommands.begin(), kSubcommands.end(), sub) == kSubcommands.end())
            throw Error("unknown subcommand \"" + sub + "\"");
        if (threads < 0)
            throw Error("--threads must be >= 0");
        if (threads > 0)
            omp_set_num_threads(threads);
        const double tol = resolve_tolerance();
        Config c(load_json(config));
        std::filesystem::create_directories(out);

        Outcome o;
        if (sub == "certify") o = cmd_certify(c, out, tol);
        else if (sub == "born") o = cmd_born(c, out, tol);
        else if (sub == "sweep") o = cmd_sweep(c, out, tol);
        else if (sub == "oracle") o = cmd_oracle(c, out, tol);
        else if (sub == "invisibility") o = cmd_invisibility(c, out, tol);
        else if (sub == "fig1") o = cmd_fig1(c, out, tol);
        else o = cmd_permittivity(c, out, tol);

        write_manifest(out, {sub, c.resolved(), omp_get_max_threads(), tol, o.outputs, o.exit_code});
        return o.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "qes-scatter: error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace qes::cli
