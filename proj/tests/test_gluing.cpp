#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "moduli/gluing.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

using namespace moduli;

namespace {

const double pi = 3.14159265358979323846;

const Complex basept(0.2, -0.1);

std::vector<ComponentFn> const_seed(Complex p)
{
    return {[p](Complex) { return p; }};
}

std::vector<ComponentFn> linear_seed(Complex p, Complex slope)
{
    return {[p, slope](Complex z) { return p + slope * z; }};
}

} // namespace

// ------------------------------------------------------------------- grids

TEST_CASE("grid weights reproduce the annulus area exactly")
{
    for (const GridSpacing sp : {GridSpacing::linear, GridSpacing::logarithmic}) {
        const AnnulusGrid grid(0.01, 1.0, 64, 32, sp);
        const double want = pi * (1.0 - 0.01 * 0.01);
        CHECK(grid.weight_sum() == doctest::Approx(want).epsilon(1e-12));
        CHECK(grid.area() == doctest::Approx(want).epsilon(1e-12));
        CHECK(grid.rho.front() == 0.01);
        CHECK(grid.rho.back() == 1.0);
    }
}

TEST_CASE("grid rejects bad parameters")
{
    CHECK_THROWS_AS(AnnulusGrid(0.0, 1.0, 16, 16, GridSpacing::logarithmic), DomainError);
    CHECK_THROWS_AS(AnnulusGrid(1.0, 0.5, 16, 16, GridSpacing::linear), DomainError);
    CHECK_THROWS_AS(AnnulusGrid(0.1, 1.0, 3, 16, GridSpacing::linear), DomainError);
    CHECK_THROWS_AS(AnnulusGrid(0.1, 1.0, 16, 4, GridSpacing::linear), DomainError);
}

TEST_CASE("sampling a map validates shape and finiteness")
{
    const AnnulusGrid grid(0.1, 1.0, 16, 16, GridSpacing::logarithmic);
    const LocalMap u = sample_map(grid, {basept}, linear_seed(basept, Complex(1)));
    CHECK(u.target_dim == 1);
    CHECK(u.values[0].size() == 16 * 16);
    CHECK_NOTHROW(u.validate());

    CHECK_THROWS_AS(
        sample_map(grid, {basept}, {[](Complex) { return Complex(1.0 / 0.0, 0); }}),
        DomainError);
}

// ------------------------------------------------------------------ cutoffs

TEST_CASE("smoothstep endpoints and symmetry")
{
    CHECK(smoothstep(-1) == 0);
    CHECK(smoothstep(0) == 0);
    CHECK(smoothstep(1) == 1);
    CHECK(smoothstep(2) == 1);
    CHECK(smoothstep(0.5) == doctest::Approx(0.5));
    CHECK(smoothstep_deriv(0) == 0);
    CHECK(smoothstep_deriv(1) == 0);
    // C^2 at the ends: second differences vanish
    const double eps = 1e-6;
    CHECK(smoothstep(eps) < eps);          // cubic-order takeoff
    CHECK(smoothstep_deriv(eps) < 1e-10);

    // chi1 is the unit shift: 0 below 1, 1 above 2
    CHECK(chi1(1.0) == 0);
    CHECK(chi1(2.0) == 1);
    CHECK(chi1(1.5) == doctest::Approx(0.5));
}

TEST_CASE("beta profile hits its plateaus")
{
    const double r = 1e-3;
    CHECK(beta_r_value(r, r * std::sqrt(r) * 0.5) == 1.0);
    CHECK(beta_r_value(r, r * std::sqrt(r)) == 1.0);
    CHECK(beta_r_value(r, r) == 0.0);
    CHECK(beta_r_value(r, 2 * r) == 0.0);
    // midpoint of the log transition
    const double mid = std::pow(r, 1.25);
    CHECK(beta_r_value(r, mid) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(beta_r_value(1.5, 0.1), DomainError);
    CHECK_THROWS_AS(beta_r_value(0.0, 0.1), DomainError);
}

TEST_CASE("cutoff energy matches 4pi/|log r| within two percent")
{
    for (const double r : {1e-2, 1e-3, 1e-4}) {
        const BetaReport rep = beta_r(r, 1024, 1024);
        CHECK(rep.expected == doctest::Approx(4 * pi / std::abs(std::log(r))));
        CHECK(rep.rel_error < 0.02);
    }
}

TEST_CASE("halving the mesh shrinks the energy error")
{
    const double r = 1e-3;
    const double coarse = beta_r(r, 256, 256).rel_error;
    const double fine = beta_r(r, 512, 512).rel_error;
    CHECK(coarse / fine >= 1.5);
}

// ----------------------------------------------------------------- pregluing

TEST_CASE("preglue regions are bit-for-bit the seeds")
{
    const double eps1 = 0.5;
    const double r = 1e-2;
    const Complex t(r * r, 0);
    const auto f = [](Complex z) { return Complex(0.2, -0.1) + z + 0.5 * z * z; };
    const auto g = [](Complex w) { return Complex(0.2, -0.1) + 2.0 * w; };
    const std::vector<ComponentFn> fv = {f}, gv = {g};
    const std::vector<Complex> p = {basept};

    const double sr = std::sqrt(r);

    // pure f beyond 2 sqrt r
    for (const double az : {2 * sr * 1.0001, 0.3, 0.4}) {
        const Complex z(az, 0);
        CHECK(preglue_value(fv, gv, p, t, eps1, z)[0] == f(z));
    }
    // plateau exactly p on [r sqrt r, sqrt r]
    for (const double az : {r * sr, 0.5 * (r * sr + sr), sr}) {
        const Complex z(az * 0.7071067811865476, az * 0.7071067811865476);
        CHECK(preglue_value(fv, gv, p, t, eps1, z)[0] == basept);
    }
    // pure g below r sqrt r / 2
    for (const double az : {r * sr * 0.499, r * sr * 0.25}) {
        const Complex z(0, az);
        CHECK(preglue_value(fv, gv, p, t, eps1, z)[0] == g(t / z));
    }
}

TEST_CASE("constant seeds preglue to the constant")
{
    const double r = 1e-2;
    const Complex t(r * r, 0);
    const LocalMap u = preglue(const_seed(basept), const_seed(basept), {basept}, t, 0.5, 64, 32);
    for (const Complex& v : u.values[0]) CHECK(v == basept);
}

TEST_CASE("preglue rejects a neck wider than the cutoff scale")
{
    const double eps1 = 0.5;
    const double bad_r = eps1 * eps1 / 16; // sqrt|t| at the threshold
    const Complex t(bad_r * bad_r, 0);
    CHECK_THROWS_AS(
        preglue_value(const_seed(basept), const_seed(basept), {basept}, t, eps1, Complex(0.1, 0)),
        DomainError);
}

TEST_CASE("preglue rejects seeds that miss the basepoint")
{
    const double r = 1e-2;
    const Complex t(r * r, 0);
    CHECK_THROWS_AS(preglue_value(const_seed(Complex(1, 0)), const_seed(basept), {basept}, t,
                                  0.5, Complex(0.1, 0)),
                    DomainError);
}

// ------------------------------------------------------------------ dbar

TEST_CASE("dbar of a holomorphic sample is numerically zero")
{
    const AnnulusGrid grid(1e-3, 0.5, 512, 512, GridSpacing::logarithmic);
    const LocalMap u = sample_map(grid, {Complex(0, 0)}, {[](Complex z) { return z; }});
    CHECK(dbar_lp_norm(u, 2.0) < 1e-6);
}

TEST_CASE("dbar of conj z has unit density")
{
    // dbar conj(z) = 1, so the L^p norm is area^{1/p}
    const AnnulusGrid grid(1e-2, 1.0, 512, 512, GridSpacing::logarithmic);
    const LocalMap u = sample_map(grid, {Complex(0, 0)}, {[](Complex z) { return std::conj(z); }});
    for (const double p : {2.0, 4.0}) {
        const double want = std::pow(grid.area(), 1.0 / p);
        CHECK(dbar_lp_norm(u, p) == doctest::Approx(want).epsilon(0.01));
    }
}

TEST_CASE("dbar error is second order under mesh refinement")
{
    // dbar(z + z zbar^2) = 2 z zbar, nonzero, so the discretization error of
    // the norm itself is visible and should shrink at second order
    const auto norm_at = [](int res) {
        const AnnulusGrid grid(0.05, 0.5, res, res, GridSpacing::logarithmic);
        const LocalMap u =
            sample_map(grid, {Complex(0, 0)},
                       {[](Complex z) { return z + z * std::conj(z) * std::conj(z); }});
        return dbar_lp_norm(u, 2.0);
    };
    const double at128 = norm_at(128), at256 = norm_at(256), at512 = norm_at(512);
    const double d1 = std::abs(at256 - at128), d2 = std::abs(at512 - at256);
    CHECK(d1 / d2 >= 3.0); // ~4x for a second-order scheme
}

TEST_CASE("dbar_lp_norm validates its exponent")
{
    const AnnulusGrid grid(0.1, 1.0, 16, 16, GridSpacing::linear);
    const LocalMap u = sample_map(grid, {basept}, const_seed(basept));
    CHECK_THROWS_AS(dbar_lp_norm(u, 0.5), DomainError);
    CHECK(dbar_lp_norm(u, 2.0) < 1e-12); // constant map: pure stencil roundoff
}

// ------------------------------------------------------------- neck scaling

TEST_CASE("two-chart neck norm decays like r^{1/p}")
{
    const std::vector<double> r_list = {1e-2, 1e-3, 1e-4, 1e-5};
    const auto f = linear_seed(basept, Complex(1, 0));
    const auto g = linear_seed(basept, Complex(1.3, 0));
    for (const double p : {2.0, 4.0}) {
        const ScalingFit fit = scaling_fit(f, g, {basept}, r_list, 0.5, 256, 256, p);
        REQUIRE_FALSE(fit.degenerate);
        CHECK(fit.slope >= 1.0 / p - 0.15);
        CHECK(fit.points.size() == r_list.size());
        CHECK(fit.residual < 0.1);
    }
}

TEST_CASE("both chart halves contribute")
{
    const double r = 1e-3;
    const GluedNorm gn = glued_dbar_norm(linear_seed(basept, Complex(1, 0)),
                                         linear_seed(basept, Complex(2, 0)), {basept},
                                         Complex(r * r, 0), 0.5, 256, 256, 2.0);
    CHECK(gn.r == doctest::Approx(r));
    CHECK(gn.half_x > 0);
    CHECK(gn.half_y > 0);
    CHECK(gn.norm == doctest::Approx(std::pow(gn.half_x + gn.half_y, 0.5)));
}

TEST_CASE("constant seeds flag the fit as degenerate")
{
    const ScalingFit fit = scaling_fit(const_seed(basept), const_seed(basept), {basept},
                                       {1e-2, 1e-3}, 0.5, 64, 64, 2.0);
    CHECK(fit.degenerate);
}

TEST_CASE("scaling_fit needs at least two radii")
{
    CHECK_THROWS_AS(scaling_fit(const_seed(basept), const_seed(basept), {basept}, {1e-2}, 0.5,
                                64, 64, 2.0),
                    DomainError);
}

// ------------------------------------------------------------ interpolation

TEST_CASE("interpolation keeps the seed sup and respects the gradient bound")
{
    const double r = 1e-2;
    const HoloSeed f{[](Complex z) { return basept + z + 0.5 * z * z; },
                     [](Complex z) { return Complex(1) + z; }};
    const HoloSeed g{[](Complex z) { return basept + 2.0 * z; },
                     [](Complex) { return Complex(2); }};
    const InterpReport rep = interp_check(f, g, Complex(r * r, 0), r);
    CHECK(rep.sup_ok);
    CHECK(rep.grad_ok);
    CHECK(rep.seam_ok);
    CHECK(rep.ok());
    CHECK(rep.seam_grad < 1e-4);
    CHECK(rep.grad_max <= rep.grad_bound);
    CHECK(rep.sup_interp == doctest::Approx(rep.sup_seed).epsilon(1e-6));
}

TEST_CASE("interp_check demands matching scales and basepoints")
{
    const HoloSeed id{[](Complex z) { return z; }, [](Complex) { return Complex(1); }};
    CHECK_THROWS_AS(interp_check(id, id, Complex(1e-4, 0), 1e-3), DomainError); // |t| != r^2
    const HoloSeed off{[](Complex z) { return Complex(1, 0) + z; },
                       [](Complex) { return Complex(1); }};
    CHECK_THROWS_AS(interp_check(id, off, Complex(1e-4, 0), 1e-2), DomainError);
}

// -------------------------------------------------------------- cutsection

TEST_CASE("cylinder norm of the cutoff gradient scales like |log r|^{1/p - 1}")
{
    const std::vector<double> r_list = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    for (const double p : {2.0, 4.0}) {
        const CutsectionScaling cs = cutsection_scaling(p, r_list);
        CHECK(cs.log_log_r.size() == r_list.size());
        CHECK(cs.slope == doctest::Approx(1.0 / p - 1.0).epsilon(0.1));
    }
}

// ------------------------------------------------------------------ threads

TEST_CASE("thread budget reads the environment")
{
    // setenv/unsetenv are process-local; restore state after
    const char* old = std::getenv("MODULI_THREADS");
    const std::string saved = old ? old : "";

    setenv("MODULI_THREADS", "3", 1);
    CHECK(thread_budget() == 3);
    setenv("MODULI_THREADS", "1", 1);
    CHECK(thread_budget() == 1);
    unsetenv("MODULI_THREADS");
    CHECK(thread_budget() >= 1);

    if (old) setenv("MODULI_THREADS", saved.c_str(), 1);
}
