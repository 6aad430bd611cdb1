#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "pauli2d/errors.hpp"
#include "pauli2d/field_profile.hpp"
#include "pauli2d/gauge.hpp"

using namespace pauli2d;

TEST_CASE("flux closed forms")
{
    CHECK(flux(uniform_disk(1.0, 1.0)).f == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(flux(zero_flux_annulus()).f == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    const FluxData fd = flux(uniform_disk(1.0, std::sqrt(5.0)));
    CHECK(fd.f == doctest::Approx(2.5).epsilon(1e-11));
    CHECK(fd.n_zero_modes == 2);
    CHECK(fd.floor_f == 2);
    CHECK(fd.eps_frac == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("flux sign convention flips downward mean fields")
{
    const FieldProfile p = uniform_disk(-2.0, 1.0);
    CHECK(p.sign_flipped);
    CHECK(flux(p).f == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(p.b_radial(0.5) == doctest::Approx(2.0));
}

TEST_CASE("flux additivity under superposition")
{
    const FieldProfile a = uniform_disk(1.0, 1.0);
    const FieldProfile b = truncated_gaussian(0.7, 0.5, 2.0);
    const double fa = flux(a).f, fb = flux(b).f;
    const double fsum = flux(superpose(a, b)).f;
    CHECK(std::abs(fsum - (fa + fb)) < 1e-10);
}

TEST_CASE("non-integrable field raises")
{
    // B = 1/(1+r^2): logarithmically divergent flux
    CHECK_THROWS_AS(flux(radial_powerlaw(1.0, 1.0)), IntegrabilityError);
}

TEST_CASE("vector potential of the uniform disk")
{
    const FieldProfile p = uniform_disk(1.0, 1.0);
    CHECK(vector_potential_radial(p, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(vector_potential_radial(p, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
    const FieldProfile ann = zero_flux_annulus();
    CHECK(std::abs(vector_potential_radial(ann, 2.0)) < 1e-13);
    CHECK(std::abs(vector_potential_radial(ann, 3.5)) < 1e-13);
    CHECK_THROWS_AS(vector_potential_radial(two_bump_asym(), 1.0), KindMismatchError);
}

TEST_CASE("scalar potential: radial closed forms")
{
    // oracle from radial integration: phi = r^2/4 - 1/4 inside, ln(r)/2 outside
    const FieldProfile p = uniform_disk(1.0, 1.0);
    Gauge g(p);
    CHECK(g.phi_radial(0.0) == doctest::Approx(-0.25).epsilon(1e-8));
    CHECK(g.phi_radial(0.6) == doctest::Approx(0.09 - 0.25).epsilon(1e-8));
    for (double r : {1.0, 2.0, 5.0})
        CHECK(g.phi_radial(r) == doctest::Approx(0.5 * std::log(r)).epsilon(1e-9));

    // zero-flux annulus: phi == 0 beyond the support
    Gauge ga(zero_flux_annulus());
    CHECK(std::abs(ga.phi_radial(2.0)) < 1e-9);
    CHECK(std::abs(ga.phi_radial(4.0)) < 1e-12);
    // phi(0) = -int_0^2 A dr = -(1/4 + (4 ln 2 - 3/2)/6), precomputed
    CHECK(ga.phi_radial(0.0) == doctest::Approx(-0.4620981203732969).epsilon(1e-8));
}

TEST_CASE("exterior behavior: phi - F ln r settles for compact profiles")
{
    const FieldProfile p = truncated_gaussian();
    const double f = flux(p).f;
    Gauge g(p);
    const double rs = p.support_radius;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double mult : {2.0, 4.0, 8.0}) {
        const double v = g.phi_radial(mult * rs) - f * std::log(mult * rs);
        if (!std::isnan(prev)) CHECK(std::abs(v - prev) < 1e-6);
        prev = v;
    }
}

TEST_CASE("planar log-kernel path agrees with the radial path")
{
    const FieldProfile p = truncated_gaussian(1.0, 0.5, 1.5);
    Gauge exact(p);
    const QuadratureGrid grid = disk_cells(1.6, 0.04);
    const GaugeGrid gg = scalar_potential_planar_path(p, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); i += 7) {
        const double r = std::hypot(grid.nodes[i][0], grid.nodes[i][1]);
        worst = std::max(worst, std::abs(gg.phi[i] - exact.phi_radial(r)));
    }
    CHECK(worst < 2e-4);
}

TEST_CASE("planar path converges to 1e-6 on a smooth radial profile")
{
    // agreement target of the scalar_potential contract, checked at a few
    // points against a fine source grid
    const FieldProfile p = truncated_gaussian(1.0, 0.5, 1.6);
    Gauge exact(p);
    std::vector<std::array<double, 2>> probes{{0.0, 0.1}, {0.3, 0.1}, {0.8, 0.1}, {1.2, 0.1}};
    const QuadratureGrid source = disk_cells(1.7, 0.0035);
    const std::vector<double> vals = log_kernel_phi(p, source, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double r = std::hypot(probes[i][0], probes[i][1]);
        CHECK(std::abs(vals[i] - exact.phi_radial(r)) < 1e-6);
    }
}

TEST_CASE("gauge consistency: planar gradient of phi matches A_radial at order >= 1.8")
{
    const FieldProfile p = truncated_gaussian(1.0, 0.6, 1.8);
    Gauge exact(p);
    std::vector<double> errs;
    for (double h : {0.04, 0.02, 0.01}) {
        // five-point stencil around a ring of radii
        double worst = 0.0;
        for (double r : {0.4, 0.9, 1.3}) {
            const double x = r, y = 0.0;
            const double a1 = -(exact.phi(x, y + h) - exact.phi(x, y - h)) / (2.0 * h);
            const double a2 = (exact.phi(x + h, y) - exact.phi(x - h, y)) / (2.0 * h);
            const auto av = exact.a(x, y);
            worst = std::max(worst, std::hypot(a1 - av[0], a2 - av[1]));
        }
        errs.push_back(worst);
    }
    const double order = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(order >= 1.8);
}

TEST_CASE("decay_check outcomes")
{
    std::vector<double> probes;
    for (double r = 5.0; r <= 80.0; r *= 1.5) probes.push_back(r);

    const DecayCheckResult compact = decay_check(uniform_disk(), probes);
    CHECK(compact.satisfied);
    CHECK(std::isinf(compact.delta));

    const DecayCheckResult quartic = decay_check(radial_powerlaw(1.0, 2.0), probes);
    CHECK(quartic.satisfied);
    CHECK(quartic.delta == doctest::Approx(2.0).epsilon(0.05));

    const DecayCheckResult borderline = decay_check(radial_powerlaw(1.0, 1.0), probes);
    CHECK_FALSE(borderline.satisfied);
    CHECK(std::abs(borderline.delta) < 0.05);
}

TEST_CASE("a_squared_integral on the annulus matches the piecewise oracle")
{
    // Oracle (independent piecewise-polynomial quadrature, precomputed
    // analytically): int_0^inf A^2 r dr = 1/16 + (16 ln2 - 8.25)/36.
    const double oracle_radial = 1.0 / 16.0 + (16.0 * std::log(2.0) - 8.25) / 36.0;
    const double v = a_squared_integral(zero_flux_annulus());
    CHECK(v == doctest::Approx(2.0 * M_PI * oracle_radial).epsilon(1e-8));

    CHECK_THROWS_AS(a_squared_integral(uniform_disk()), DivergenceError);
}

TEST_CASE("log pair integral equals int A^2 for zero-flux fields")
{
    const FieldProfile ann = zero_flux_annulus();
    const double lhs = a_squared_integral(ann);
    const double rhs = log_pair_integral(ann);
    CHECK(std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-12) < 1e-6);

    const FieldProfile bumps = two_bump_asym();
    const double lhs2 = a_squared_integral(bumps);
    const double rhs2 = log_pair_integral(bumps);
    CHECK(std::abs(lhs2 - rhs2) / std::max(std::abs(lhs2), 1e-12) < 1e-5);
}

TEST_CASE("two-bump field is non-symmetric with exactly zero flux")
{
    const FieldProfile p = two_bump_asym();
    CHECK_FALSE(p.radial());
    CHECK(std::abs(flux(p).f) < 1e-12);
    CHECK(p.b_at(0.9, 0.0) > 0.0);
    CHECK(p.b_at(-1.1, 0.2) < 0.0);
}

TEST_CASE("sampled field round trip and kernel gauge")
{
    const FieldProfile disk = uniform_disk(1.0, 1.0);
    SampledField f = sample_profile(disk, 64, 1.3);
    const char* path = "/tmp/pauli2d_test_field.csv";
    write_sampled_csv(path, f);
    const FieldProfile loaded = sampled_from_csv(path);
    CHECK(loaded.sampled.nx == 64);
    CHECK(flux(loaded).f == doctest::Approx(0.5).epsilon(2e-2));
    Gauge g(loaded);
    // kernel phi close to the analytic disk potential
    CHECK(g.phi(0.0, 0.0) == doctest::Approx(-0.25).epsilon(5e-2));
    std::remove(path);
}

TEST_CASE("profile_from_kv builds and rejects")
{
    std::map<std::string, std::string> kv{{"profile.kind", "uniform-disk"},
                                          {"profile.radius", "2.0"}};
    const FieldProfile p = profile_from_kv(kv);
    CHECK(flux(p).f == doctest::Approx(2.0).epsilon(1e-10));
    kv["profile.kind"] = "no-such-kind";
    CHECK_THROWS_AS(profile_from_kv(kv), UsageError);
}
