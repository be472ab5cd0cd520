#include "qes/born.hpp"
#include "qes/fourier.hpp"
#include "qes/optics.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <sstream>

using namespace qes;
using fixtures::kAlpha;
using fixtures::kPi;

TEST_CASE("incidence validation")
{
    CHECK_NOTHROW(validate({Side::Left, -0.25 * kPi, 1.0}));
    CHECK_NOTHROW(validate({Side::Right, 1.25 * kPi, 1.0}));
    CHECK_THROWS_AS(validate({Side::Left, 0.6 * kPi, 1.0}), Error);
    CHECK_THROWS_AS(validate({Side::Right, 0.0, 1.0}), Error);
    CHECK_THROWS_AS(validate({Side::Left, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(born_amplitude(fixtures::v_r(), {Side::Left, kPi, 1.0}, 0.0), Error);
}

TEST_CASE("amplitude is the transform at the momentum transfer")
{
    const Potential v = fixtures::v_l();
    const double k = 0.9 * kAlpha;
    for (double t0 : {-1.2, -0.3, 0.4})
        for (double th : {0.0, 1.7, 2.5, 4.0}) {
            const IncidenceSpec inc{Side::Left, t0, k};
            const Complex ref = -ft2d(v, k * (std::cos(th) - std::cos(t0)), k * (std::sin(th) - std::sin(t0))) /
                                (2.0 * std::sqrt(2.0 * kPi));
            CHECK(std::abs(born_amplitude(v, inc, th) - ref) <= 1e-14 * (1.0 + std::abs(ref)));
            CHECK(std::abs(born_amplitude_numeric(v, inc, th, 1e-12) - ref) <= 1e-8 * (1.0 + std::abs(ref)));
        }
    CHECK(born_amplitude(Potential{}, {Side::Left, 0.0, 1.0}, 1.0) == Complex(0.0));
}

TEST_CASE("profile function")
{
    CHECK(x_profile(2.0, -0.1) == 0.0);
    CHECK(x_profile(2.0, 0.0) == 0.0);
    CHECK(std::abs(x_profile(2.0, 0.5) - 0.5 * std::exp(-1.0)) < 1e-16);
}

TEST_CASE("closed-form example against the pipeline")
{
    const ExampleParams p{{0.6, -0.8}, 1.2, 0.9, kAlpha};
    const PermittivityProfile prof = example_permittivity(p.z, p.a, p.b, p.alpha);
    for (double kr : {0.75, 0.9, 1.0})
        for (double t0 : {-1.4, -0.7837, -0.1})
            for (int m = 0; m < 24; ++m) {
                const double k = kr * kAlpha;
                const double th = 2.0 * kPi * m / 24.0 + 0.01;
                const IncidenceSpec inc{Side::Left, t0, k};
                const Complex ref = closed_form_example(p, inc, th);
                const Complex got = born_amplitude(potential_from_permittivity(prof, k), inc, th);
                CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            }
    CHECK_THROWS_AS(closed_form_example({1.0, 0.0, 1.0, 1.0}, {Side::Left, 0.0, 1.0}, 1.0), Error);
}

TEST_CASE("sweep layout and CSV")
{
    const Scatterer s(fixtures::v_r());
    const AmplitudeTable t = sweep(s, Side::Right, 1.25 * kPi, {10.0, 12.0}, {0.1, 0.2, 0.3});
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[3].k == 10.0 + 2.0);
    CHECK(t.rows[4].theta == 0.2);
    CHECK(t.rows[4].f == born_amplitude(fixtures::v_r(), {Side::Right, 1.25 * kPi, 12.0}, 0.2));
    CHECK_THROWS_AS(sweep(s, Side::Right, 1.25 * kPi, {}, {0.1}), Error);
    CHECK_THROWS_AS(sweep(s, Side::Right, 0.0, {1.0}, {0.1}), Error);

    std::ostringstream os;
    write_csv(os, t);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "k,lambda,theta0,theta,re_f,im_f,abs2_f,method");
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        CHECK(line.substr(line.rfind(',') + 1) == "born_closed");
    }
    CHECK(n == 6);
    CHECK(to_string(Method::Oracle) == "oracle");
}

TEST_CASE("dispersive scatterer follows k")
{
    const Scatterer s([](double k) { return fixtures::v_r().scaled(k); });
    CHECK(s.dispersive());
    CHECK(s.at(2.0).terms()[0].coupling == 2.0 * fixtures::v_r().terms()[0].coupling);
    CHECK_FALSE(Scatterer(fixtures::v_r()).dispersive());
}
