// One line per criterion; exit status is nonzero if any criterion fails.

#include "qes/born.hpp"
#include "qes/cli.hpp"
#include "qes/fourier.hpp"
#include "qes/invisibility.hpp"
#include "qes/optics.hpp"
#include "qes/oracle.hpp"

#include "../fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace qes;
using fixtures::kAlpha;
using fixtures::kPi;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<fixtures::RandomFamily> fleet()
{
    std::mt19937_64 rng(20240611);
    std::vector<fixtures::RandomFamily> out;
    for (int i = 0; i < 5; ++i)
        out.push_back(fixtures::random_family(rng));
    return out;
}

Verdict ac1()
{
    double worst2 = 0.0, worst_thm2 = 0.0;
    OracleOptions opt;
    opt.n = 96;
    opt.nx = 400;
    int runs = 0;
    for (const auto& f : fleet())
        for (double r : {0.7, 0.9, 1.0}) {
            const OracleReport rep = run_oracle(f.v, r * kAlpha, kAlpha, opt);
            worst2 = std::max(worst2, rep.order2_rel_norm);
            worst_thm2 = std::max(worst_thm2, rep.thm2_max_product_norm);
            ++runs;
        }
    return {worst2 <= 1e-6 && worst_thm2 <= 1e-6,
            std::to_string(runs) + " runs, max order2/order1 " + fmt("%.3g", worst2) + ", max block product " +
                fmt("%.3g", worst_thm2)};
}

// Largest |f_oracle - f_born| over both incidence sides, over max |f_born|.
double amplitude_deviation(const Potential& v, double k, int nx)
{
    const double t0l = -0.25 * kPi, t0r = 1.25 * kPi;
    std::vector<double> thetas;
    std::vector<double> probes{k * std::sin(t0l), k * std::sin(t0r)};
    for (int j = 0; j < 32; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / 32;
        thetas.push_back(th);
        probes.push_back(k * std::sin(th));
    }
    const MomentumGrid g = make_grid(k, 96);
    const TransferMatrixNum m = dyson(v, g, probes, {nx, 0.0}, 2);
    double dev = 0.0, scale = 0.0;
    for (const IncidenceSpec inc : {IncidenceSpec{Side::Left, t0l, k}, IncidenceSpec{Side::Right, t0r, k}}) {
        const TFunctions t = solve_T(m, g.rule, inc);
        for (double th : thetas) {
            const Complex fb = born_amplitude(v, inc, th);
            scale = std::max(scale, std::abs(fb));
            dev = std::max(dev, std::abs(amplitude_from_T(t, th) - fb));
        }
    }
    return scale > 0.0 ? dev / scale : 0.0;
}

Verdict ac2()
{
    double min2 = kInf, min_dev = kInf, min_dev800 = kInf;
    OracleOptions opt;
    const double k = 1.5 * kAlpha;
    for (const auto& f : fleet()) {
        const OracleReport rep = run_oracle(f.v, k, kAlpha, opt);
        min2 = std::min(min2, rep.order2_rel_norm);
        min_dev = std::min(min_dev, amplitude_deviation(f.v, k, 400));
        min_dev800 = std::min(min_dev800, amplitude_deviation(f.v, k, 800));
    }
    return {min2 >= 1e-3 && min_dev >= 1e-3 && min_dev800 >= 1e-3,
            "min order2/order1 " + fmt("%.3g", min2) + ", min amplitude deviation " + fmt("%.3g", min_dev) +
                " (Nx=400), " + fmt("%.3g", min_dev800) + " (Nx=800)"};
}

Verdict ac3()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_pipe = 0.0, worst_quad = 0.0;
    int nonzero = 0;
    const int n = 1000;
    for (int s = 0; s < n; ++s) {
        const ExampleParams p{std::polar(0.5 + unit(rng), 2.0 * kPi * unit(rng)), 0.5 + 1.5 * unit(rng),
                              0.5 + 1.5 * unit(rng), kAlpha};
        // half the draws cover the whole range, half the region where f^l can be nonzero
        const bool wide = s % 2 == 0;
        const double k = wide ? kAlpha * (0.05 + 0.95 * unit(rng)) : kAlpha * (1.0 - unit(rng) * (1.0 - 1.0 / std::sqrt(2.0)));
        const double t0 = wide ? kPi * (unit(rng) - 0.5) * 0.999 : -0.5 * kPi * (0.001 + 0.998 * unit(rng));
        const IncidenceSpec inc{Side::Left, t0, k};
        const double th = wide ? 2.0 * kPi * unit(rng) : kPi * (0.5 + 0.5 * unit(rng));
        const Potential v = potential_from_permittivity(example_permittivity(p.z, p.a, p.b, p.alpha), k);
        const Complex ref = closed_form_example(p, inc, th);
        const Complex pipe = born_amplitude(v, inc, th);
        const Complex quad = born_amplitude_numeric(v, inc, th, 1e-13);
        // Structural zeros must come out as zeros; quadrature noise at a zero is
        // measured against the term's magnitude bound.
        const double bound = std::abs(v.terms()[0].coupling) * l1_norm(*v.terms()[0].x.base()) *
                             l1_norm(*v.terms()[0].y.base()) / (2.0 * std::sqrt(2.0 * kPi));
        if (ref == Complex(0.0)) {
            worst_pipe = std::max(worst_pipe, pipe == Complex(0.0) ? 0.0 : 1.0);
            worst_quad = std::max(worst_quad, std::abs(quad) / bound);
        } else {
            ++nonzero;
            worst_pipe = std::max(worst_pipe, std::abs(pipe - ref) / std::abs(ref));
            worst_quad = std::max(worst_quad, std::abs(quad - ref) / std::abs(ref));
        }
    }
    return {worst_pipe <= 1e-10 && worst_quad <= 1e-6 && nonzero > 0,
            std::to_string(n) + " samples (" + std::to_string(nonzero) + " nonzero), pipeline " +
                fmt("%.3g", worst_pipe) + ", quadrature " + fmt("%.3g", worst_quad)};
}

Verdict ac4()
{
    const PermittivityProfile prof = example_permittivity(1.0, 1.0, 1.0, kAlpha);
    const std::vector<double> t0s{0.55 * kPi, 1.0 * kPi, 1.25 * kPi, 1.45 * kPi};
    double closed_max = 0.0, oracle_rel = 0.0, oracle_abs = 0.0;
    long closed_samples = 0;
    for (double r : {0.75, 0.9, 1.0}) {
        const double k = r * kAlpha;
        const Potential v = potential_from_permittivity(prof, k);
        std::vector<double> thetas, probes;
        for (double t0 : t0s)
            probes.push_back(k * std::sin(t0));
        for (int j = 0; j < 32; ++j) {
            thetas.push_back(2.0 * kPi * (j + 0.5) / 32);
            probes.push_back(k * std::sin(thetas.back()));
        }
        // closed form on a finer grid; the visible side sets the amplitude scale
        double scale = 0.0;
        for (int j = 0; j < 720; ++j) {
            const double th = 2.0 * kPi * j / 720;
            for (double t0 : t0s) {
                closed_max = std::max(closed_max, std::abs(born_amplitude(v, {Side::Right, t0, k}, th)));
                ++closed_samples;
            }
            for (int i = 0; i < 32; ++i) {
                const double t0l = kPi * ((i + 0.5) / 32 - 0.5);
                scale = std::max(scale, std::abs(born_amplitude(v, {Side::Left, t0l, k}, th)));
            }
        }
        const MomentumGrid g = make_grid(k, 96);
        const TransferMatrixNum m = dyson(v, g, probes, {400, 0.0}, 2);
        for (double t0 : t0s) {
            const TFunctions t = solve_T(m, g.rule, {Side::Right, t0, k});
            for (double th : thetas) {
                const double a = std::abs(amplitude_from_T(t, th));
                oracle_abs = std::max(oracle_abs, a);
                oracle_rel = std::max(oracle_rel, a / scale);
            }
        }
    }
    return {closed_max == 0.0 && oracle_rel <= 1e-8,
            std::to_string(closed_samples) + " closed-form samples, max |f^r| " + fmt("%.3g", closed_max) +
                "; oracle max |f^r| " + fmt("%.3g", oracle_abs) + " (" + fmt("%.3g", oracle_rel) +
                " of the left-incidence scale)"};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ','))
            cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Verdict ac5(const fs::path& work)
{
    const fs::path dir = work / "fig1";
    fs::create_directories(dir);
    std::ofstream(dir / "config.json") << "{}";
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = cli::run_command("fig1", dir / "config.json", dir / "out", 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rc != 0)
        return {false, "fig1 exited " + std::to_string(rc)};

    // column = lambda; track which columns hold any nonzero cell
    std::map<double, bool> column_nonzero;
    long nonzero = 0, misplaced = 0;
    for (const auto& r : read_csv(dir / "out" / "fig1.csv")) {
        const double lambda = std::stod(r[1]);
        const double theta = std::stod(r[3]);
        const bool nz = std::stod(r[6]) > 0.0;
        column_nonzero[lambda] = column_nonzero[lambda] || nz;
        if (!nz)
            continue;
        ++nonzero;
        if (!(lambda > 0.5 && lambda < 0.7072 && theta >= 0.5 * kPi && theta < kPi))
            ++misplaced;
    }
    // the last nonzero column and the first zero column beyond it bracket 0.7071
    double last_nz = 0.0, first_zero_after = kInf;
    for (const auto& [lambda, nz] : column_nonzero)
        if (nz)
            last_nz = lambda;
    bool zero_beyond = true;
    for (const auto& [lambda, nz] : column_nonzero)
        if (lambda > last_nz) {
            first_zero_after = std::min(first_zero_after, lambda);
            zero_beyond = zero_beyond && !nz;
        }
    const double edge = 0.7071;
    const bool bracket = last_nz <= edge && first_zero_after >= edge && zero_beyond;
    return {nonzero > 0 && misplaced == 0 && bracket && secs < 60.0,
            std::to_string(nonzero) + " nonzero cells, " + std::to_string(misplaced) +
                " outside the window; boundary between " + fmt("%.5f", last_nz) + " and " +
                fmt("%.5f", first_zero_after) + " um; " + fmt("%.2f", secs) + " s"};
}

Verdict ac6()
{
    const double at_alpha = angular_window(kAlpha, kAlpha);
    const double near_edge = angular_window(kAlpha, kAlpha / std::sqrt(2.0) * (1.0 + 1e-12));
    const bool identities = std::abs(at_alpha - 0.5 * kPi) <= 4e-16 && std::abs(near_edge - kPi) <= 1e-5;

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Potential> vs;
    for (const auto& f : fleet())
        vs.push_back(f.v);
    long violations = 0, nonzero = 0;
    const int n = 10000;
    for (int s = 0; s < n; ++s) {
        const std::size_t which = s % (vs.size() + 1);
        const double k = kAlpha * (0.5 + 0.5 * unit(rng));
        Potential v;
        Side visible = Side::Left;
        if (which == vs.size()) {
            v = potential_from_permittivity(example_permittivity({0.3, 0.9}, 1.0, 1.0, kAlpha), k);
        } else {
            v = vs[which];
            const InvisibleSide side = classify(v, kAlpha).side;
            visible = side == InvisibleSide::LeftInvisible ? Side::Right : Side::Left;
        }
        const double t0 = visible == Side::Left ? kPi * (unit(rng) - 0.5) * 0.9999 : kPi * (0.5 + unit(rng) * 0.9999) + 1e-5;
        const double th = 2.0 * kPi * unit(rng);
        if (born_amplitude(v, {visible, t0, k}, th) == Complex(0.0))
            continue;
        ++nonzero;
        if (!allowed_nonzero(visible, kAlpha, k, t0, th))
            ++violations;
    }
    return {identities && violations == 0 && nonzero > 0,
            "phi_alpha - pi/2 = " + fmt("%.2g", at_alpha - 0.5 * kPi) + ", phi near alpha/sqrt2 - pi = " +
                fmt("%.2g", near_edge - kPi) + "; " + std::to_string(n) + " samples, " + std::to_string(nonzero) +
                " nonzero, " + std::to_string(violations) + " violations"};
}

Verdict ac7()
{
    double worst_zero = 0.0, worst_rel = 0.0;
    int factors = 0;
    for (double scale : {0.5, 1.0, 2.0})
        for (int order : {1, 2, 3})
            for (double phase : {-kAlpha, 0.0, kAlpha})
                for (HalfLine side : {HalfLine::Plus, HalfLine::Minus}) {
                    const Factor1D f = Factor1D::half_line({scale, order, side}, phase);
                    const double peak = transform_peak(*f.base());
                    const double dir = side == HalfLine::Plus ? 1.0 : -1.0;
                    for (int s = 0; s < 50; ++s) {
                        // suppressed: from the edge out to 40/L, the edge itself included
                        const double off = 40.0 / scale * s / 49.0;
                        const double kz = phase - dir * off;
                        worst_zero = std::max(worst_zero, std::abs(ft1d_numeric(f, kz, 1e-12).value) / peak);
                        // supported: KL in [0.05, 10]
                        const double ks = phase + dir * (0.05 + 9.95 * s / 49.0) / scale;
                        const Complex c = ft1d_closed(f, ks);
                        worst_rel = std::max(worst_rel, std::abs(ft1d_numeric(f, ks, 1e-13).value - c) / std::abs(c));
                    }
                    ++factors;
                }
    return {worst_zero <= 1e-6 && worst_rel <= 1e-6,
            std::to_string(factors) + " factors, suppressed side " + fmt("%.3g", worst_zero) +
                " of peak, supported side relative " + fmt("%.3g", worst_rel)};
}

Verdict ac8(const fs::path& work)
{
    const std::string family = R"({"kind": "vr", "gamma": 1,
      "w_minus": {"z": [1, 0.5], "Lx": 1.0, "nx": 1, "Ly": 1.0, "ny": 1},
      "w_plus": {"z": [-0.5, 1], "Lx": 0.7, "nx": 2, "Ly": 1.3, "ny": 1}})";
    const std::map<std::string, std::string> configs{
        {"certify", R"({"scatterer": {"family": )" + family + "}}"},
        {"born", R"({"scatterer": {"family": )" + family + R"(}, "theta": [0.5, 2.0, 2.9], "lambda_um": [0.55, 0.6]})"},
        {"sweep", R"({"scatterer": {"permittivity": {"z": [1, 0]}}, "n_theta": 90, "lambda_um": [0.5, 0.6, 0.7]})"},
        {"oracle", R"({"scatterer": {"family": )" + family + R"(}, "k_over_alpha": [0.9, 1.5], "N": 48, "Nx": 100})"},
        {"invisibility", R"({"scatterer": {"family": )" + family + R"(}, "n_k": 8, "n_theta0": 6, "n_theta": 64})"},
        {"fig1", R"({"n_lambda": 64, "n_theta": 64})"},
        {"permittivity", R"({"grid": {"x_min": -2, "x_max": 2, "nx": 21, "y_min": -2, "y_max": 2, "ny": 21}, "k": 10})"},
    };
    int identical = 0, files = 0;
    std::string bad;
    for (const auto& [sub, text] : configs) {
        const fs::path dir = work / ("det_" + sub);
        fs::create_directories(dir);
        std::ofstream(dir / "config.json") << text;
        const int a = cli::run_command(sub, dir / "config.json", dir / "a", 0);
        const int b = cli::run_command(sub, dir / "config.json", dir / "b", 0);
        if (a == 2 || a != b) {
            bad += sub + "(exit " + std::to_string(a) + "/" + std::to_string(b) + ") ";
            continue;
        }
        bool same = true;
        for (const auto& e : fs::directory_iterator(dir / "a")) {
            ++files;
            same = same && slurp(e.path()) == slurp(dir / "b" / e.path().filename());
        }
        if (same)
            ++identical;
        else
            bad += sub + " ";
    }
    return {identical == static_cast<int>(configs.size()),
            std::to_string(identical) + "/" + std::to_string(configs.size()) + " subcommands byte-identical over " +
                std::to_string(files) + " files" + (bad.empty() ? "" : "; differing: " + bad)};
}

} // namespace

int main()
{
    const fs::path work = fs::temp_directory_path() / "qes_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1 exactness inside the band", ac1},
        {"AC2 breakdown above the band", ac2},
        {"AC3 closed-form consistency", ac3},
        {"AC4 right invisibility of the optical medium", ac4},
        {"AC5 figure reproduction", [&] { return ac5(work); }},
        {"AC6 angular window", ac6},
        {"AC7 Fourier support", ac7},
        {"AC8 determinism", [&] { return ac8(work); }},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
