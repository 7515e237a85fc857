#include "moduli/gluing.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace moduli {

namespace {
constexpr double pi = std::numbers::pi;
}

// ------------------------------------------------------------------- grid

AnnulusGrid::AnnulusGrid(double rmin, double rmax, int nradial, int nangular, GridSpacing sp)
    : rho_min(rmin), rho_max(rmax), radial(nradial), angular(nangular), spacing(sp)
{
    if (!(rmin > 0) || !std::isfinite(rmin) || !std::isfinite(rmax))
        throw DomainError("AnnulusGrid: rho_min must be positive and finite");
    if (!(rmin < rmax)) throw DomainError("AnnulusGrid: rho_min must be < rho_max");
    if (radial < 5) throw DomainError("AnnulusGrid: need at least 5 radial samples");
    if (angular < 8) throw DomainError("AnnulusGrid: need at least 8 angular samples");

    rho.resize(static_cast<size_t>(radial));
    for (int k = 0; k < radial; ++k) {
        const double s = static_cast<double>(k) / (radial - 1);
        rho[static_cast<size_t>(k)] = (spacing == GridSpacing::linear)
                                          ? rmin + s * (rmax - rmin)
                                          : rmin * std::pow(rmax / rmin, s);
    }
    rho.front() = rmin;
    rho.back() = rmax;

    // exact rho-moments of the radial hat functions: the mass of the hat at
    // rho_k over [rho_{k-1}, rho_k] is (d)(2 rho_k + rho_{k-1})/6 and
    // symmetrically on the right, so the weights telescope to the area.
    const double dtheta = 2 * pi / angular;
    node_weight.assign(static_cast<size_t>(radial), 0.0);
    for (int k = 0; k < radial; ++k) {
        double m = 0;
        if (k > 0) {
            const double d = rho[static_cast<size_t>(k)] - rho[static_cast<size_t>(k - 1)];
            m += d * (2 * rho[static_cast<size_t>(k)] + rho[static_cast<size_t>(k - 1)]) / 6.0;
        }
        if (k + 1 < radial) {
            const double d = rho[static_cast<size_t>(k + 1)] - rho[static_cast<size_t>(k)];
            m += d * (2 * rho[static_cast<size_t>(k)] + rho[static_cast<size_t>(k + 1)]) / 6.0;
        }
        node_weight[static_cast<size_t>(k)] = m * dtheta;
    }

    const double a = area(), ws = weight_sum();
    if (std::abs(ws - a) > 1e-10 * a)
        throw InternalError("AnnulusGrid: quadrature weights sum to " + std::to_string(ws)
                            + ", annulus area is " + std::to_string(a));
}

double AnnulusGrid::theta(int j) const
{
    return 2 * pi * j / angular;
}

Complex AnnulusGrid::point(int k, int j) const
{
    return std::polar(rho[static_cast<size_t>(k)], theta(j));
}

double AnnulusGrid::area() const
{
    return pi * (rho_max * rho_max - rho_min * rho_min);
}

double AnnulusGrid::weight_sum() const
{
    double s = 0;
    for (double w : node_weight) s += w;
    return s * angular;
}

void LocalMap::validate() const
{
    if (target_dim < 1) throw DomainError("LocalMap: target dimension must be >= 1");
    if (static_cast<int>(basepoint.size()) != target_dim)
        throw DomainError("LocalMap: basepoint dimension mismatch");
    if (static_cast<int>(values.size()) != target_dim)
        throw DomainError("LocalMap: component count mismatch");
    const size_t n = static_cast<size_t>(grid.radial) * static_cast<size_t>(grid.angular);
    for (const auto& plane : values) {
        if (plane.size() != n) throw DomainError("LocalMap: sample count mismatch");
        for (const Complex& v : plane)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("LocalMap: non-finite sample");
    }
}

LocalMap sample_map(const AnnulusGrid& grid, std::vector<Complex> basepoint,
                    const std::vector<ComponentFn>& components)
{
    if (components.empty()) throw DomainError("sample_map: need at least one component");
    if (components.size() != basepoint.size())
        throw DomainError("sample_map: basepoint dimension must match component count");
    LocalMap u{grid, static_cast<int>(components.size()), std::move(basepoint), {}};
    u.values.resize(components.size());
    for (size_t c = 0; c < components.size(); ++c) {
        auto& plane = u.values[c];
        plane.resize(static_cast<size_t>(grid.radial) * static_cast<size_t>(grid.angular));
        for (int k = 0; k < grid.radial; ++k)
            for (int j = 0; j < grid.angular; ++j)
                plane[static_cast<size_t>(k) * grid.angular + j] = components[c](grid.point(k, j));
    }
    u.validate();
    return u;
}

// ---------------------------------------------------------------- cutoffs

double smoothstep(double s)
{
    if (s <= 0) return 0;
    if (s >= 1) return 1;
    return s * s * s * (10 + s * (-15 + 6 * s));
}

double smoothstep_deriv(double s)
{
    if (s <= 0 || s >= 1) return 0;
    const double u = s * (1 - s);
    return 30 * u * u;
}

double chi1(double abs_z)
{
    return smoothstep(abs_z - 1);
}

double chi1_deriv(double abs_z)
{
    return smoothstep_deriv(abs_z - 1);
}

double beta_r_value(double r, double abs_z)
{
    if (!(r > 0) || r >= 1) throw DomainError("beta_r: need 0 < r < 1");
    if (abs_z <= r * std::sqrt(r)) return 1;
    if (abs_z >= r) return 0;
    return 2 * (std::log(abs_z) / std::log(r) - 1);
}

// -------------------------------------------------------- finite differences

namespace {

// derivative weights at xe of the quadratic through x0 < x1 < x2
std::array<double, 3> lagrange3_deriv(double x0, double x1, double x2, double xe)
{
    return {(2 * xe - x1 - x2) / ((x0 - x1) * (x0 - x2)),
            (2 * xe - x0 - x2) / ((x1 - x0) * (x1 - x2)),
            (2 * xe - x0 - x1) / ((x2 - x0) * (x2 - x1))};
}

struct RadialStencil {
    std::array<int, 3> idx;
    std::array<double, 3> w;
};

std::vector<RadialStencil> radial_stencils(const std::vector<double>& rho)
{
    const int n = static_cast<int>(rho.size());
    std::vector<RadialStencil> st(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        int a = std::clamp(k - 1, 0, n - 3);
        st[static_cast<size_t>(k)].idx = {a, a + 1, a + 2};
        st[static_cast<size_t>(k)].w =
            lagrange3_deriv(rho[static_cast<size_t>(a)], rho[static_cast<size_t>(a + 1)],
                            rho[static_cast<size_t>(a + 2)], rho[static_cast<size_t>(k)]);
    }
    return st;
}

struct LineFit {
    double slope = 0, intercept = 0, residual = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const size_t n = x.size();
    if (n < 2) throw DomainError("least_squares: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (std::abs(den) < 1e-300) throw DomainError("least_squares: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double rss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        rss += e * e;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

} // namespace

BetaReport beta_r(double r, int radial, int angular)
{
    if (!(r > 0) || r >= 1) throw DomainError("beta_r: need 0 < r < 1, got r=" + std::to_string(r));
    const double lo = r * std::sqrt(r);
    AnnulusGrid grid(lo, r, radial, angular, GridSpacing::logarithmic);

    BetaReport rep;
    rep.r = r;
    rep.profile.resize(static_cast<size_t>(radial));
    for (int k = 0; k < radial; ++k)
        rep.profile[static_cast<size_t>(k)] = beta_r_value(r, grid.rho[static_cast<size_t>(k)]);

    const auto st = radial_stencils(grid.rho);
    double energy = 0;
    for (int k = 0; k < radial; ++k) {
        double d = 0;
        for (int q = 0; q < 3; ++q)
            d += st[static_cast<size_t>(k)].w[static_cast<size_t>(q)]
                 * rep.profile[static_cast<size_t>(st[static_cast<size_t>(k)].idx[static_cast<size_t>(q)])];
        energy += d * d * grid.node_weight[static_cast<size_t>(k)];
    }
    rep.energy = energy * angular; // beta is angle-independent
    rep.expected = 4 * pi / std::abs(std::log(r));
    rep.rel_error = std::abs(rep.energy - rep.expected) / rep.expected;
    return rep;
}

// ----------------------------------------------------------------- preglue

namespace {

void check_seed_basepoints(const std::vector<ComponentFn>& f, const std::vector<ComponentFn>& g,
                           const std::vector<Complex>& p)
{
    if (f.empty() || f.size() != g.size() || f.size() != p.size())
        throw DomainError("preglue: f, g and p must share one target dimension >= 1");
    for (size_t c = 0; c < p.size(); ++c) {
        const double scale = 1 + std::abs(p[c]);
        if (std::abs(f[c](Complex(0)) - p[c]) > 1e-12 * scale
            || std::abs(g[c](Complex(0)) - p[c]) > 1e-12 * scale)
            throw DomainError("preglue: seeds must take the value p at 0");
    }
}

double neck_radius(Complex t, double eps1)
{
    if (!(eps1 > 0)) throw DomainError("preglue: eps1 must be positive");
    const double r = std::sqrt(std::abs(t));
    if (r == 0) throw DomainError("preglue: t must be nonzero");
    if (r >= eps1 * eps1 / 16)
        throw DomainError("preglue: sqrt|t| = " + std::to_string(r)
                          + " must be < eps1^2/16 = " + std::to_string(eps1 * eps1 / 16));
    return r;
}

// Region dispatch without the basepoint check; preglue() and the norm
// drivers validate the seeds once and then sample through this.
std::vector<Complex> preglue_value_unchecked(const std::vector<ComponentFn>& f,
                                             const std::vector<ComponentFn>& g,
                                             const std::vector<Complex>& p, Complex t,
                                             double eps1, Complex z)
{
    const double r = neck_radius(t, eps1);
    const double sqrt_r = std::sqrt(r);
    const double inner = r * sqrt_r; // r^{3/2}
    const double a = std::abs(z);
    if (a == 0) throw DomainError("preglue: z must be nonzero");

    std::vector<Complex> out(p.size());
    if (a <= inner / 2) { // pure g region, bit-for-bit
        const Complex y = t / z;
        for (size_t c = 0; c < p.size(); ++c) out[c] = g[c](y);
    } else if (a < inner) { // inner transition
        const double cut = chi1(inner / a);
        const Complex y = t / z;
        for (size_t c = 0; c < p.size(); ++c) out[c] = p[c] + cut * (g[c](y) - p[c]);
    } else if (a <= sqrt_r) { // plateau, exactly p
        for (size_t c = 0; c < p.size(); ++c) out[c] = p[c];
    } else if (a < 2 * sqrt_r) { // outer transition
        const double cut = chi1(a / sqrt_r);
        for (size_t c = 0; c < p.size(); ++c) out[c] = p[c] + cut * (f[c](z) - p[c]);
    } else { // pure f region, bit-for-bit
        for (size_t c = 0; c < p.size(); ++c) out[c] = f[c](z);
    }
    return out;
}

} // namespace

std::vector<Complex> preglue_value(const std::vector<ComponentFn>& f,
                                   const std::vector<ComponentFn>& g,
                                   const std::vector<Complex>& p, Complex t, double eps1,
                                   Complex z)
{
    check_seed_basepoints(f, g, p);
    return preglue_value_unchecked(f, g, p, t, eps1, z);
}

LocalMap preglue(const std::vector<ComponentFn>& f, const std::vector<ComponentFn>& g,
                 const std::vector<Complex>& p, Complex t, double eps1, int radial, int angular)
{
    check_seed_basepoints(f, g, p);
    const double r = neck_radius(t, eps1);
    AnnulusGrid grid(r * r / eps1, eps1, radial, angular, GridSpacing::logarithmic);
    std::vector<ComponentFn> comps;
    for (size_t c = 0; c < p.size(); ++c)
        comps.push_back([&f, &g, &p, t, eps1, c](Complex z) {
            return preglue_value_unchecked(f, g, p, t, eps1, z)[c];
        });
    return sample_map(grid, p, comps);
}

// ------------------------------------------------------------------- dbar

double dbar_lp_norm(const LocalMap& u, double p_exp)
{
    u.validate();
    if (!(p_exp >= 1)) throw DomainError("dbar_lp_norm: p_exp must be >= 1");
    const AnnulusGrid& g = u.grid;
    const int K = g.radial, M = g.angular;
    const double dtheta = 2 * pi / M;
    const auto st = radial_stencils(g.rho);

    double sum = 0;
    for (int k = 0; k < K; ++k) {
        const double rho = g.rho[static_cast<size_t>(k)];
        const double w = g.node_weight[static_cast<size_t>(k)];
        for (int j = 0; j < M; ++j) {
            const int jm2 = (j + M - 2) % M, jm1 = (j + M - 1) % M;
            const int jp1 = (j + 1) % M, jp2 = (j + 2) % M;
            double mag2 = 0;
            for (int c = 0; c < u.target_dim; ++c) {
                const auto& v = u.values[static_cast<size_t>(c)];
                Complex dr = 0;
                for (int q = 0; q < 3; ++q)
                    dr += st[static_cast<size_t>(k)].w[static_cast<size_t>(q)]
                          * v[static_cast<size_t>(st[static_cast<size_t>(k)]
                                                       .idx[static_cast<size_t>(q)])
                                  * M
                              + j];
                // fourth-order central difference on the periodic direction
                const size_t row = static_cast<size_t>(k) * M;
                const Complex dt = (-v[row + jp2] + 8.0 * v[row + jp1] - 8.0 * v[row + jm1]
                                    + v[row + jm2])
                                   / (12.0 * dtheta);
                const Complex db = 0.5 * (dr + Complex(0, 1) / rho * dt);
                mag2 += std::norm(db);
            }
            sum += std::pow(mag2, p_exp / 2) * w;
        }
    }
    return std::pow(sum, 1.0 / p_exp);
}

GluedNorm glued_dbar_norm(const std::vector<ComponentFn>& f, const std::vector<ComponentFn>& g,
                          const std::vector<Complex>& p, Complex t, double eps1, int radial,
                          int angular, double p_exp)
{
    check_seed_basepoints(f, g, p);
    const double r = neck_radius(t, eps1);
    AnnulusGrid half(r, eps1, radial, angular, GridSpacing::logarithmic);

    auto half_integral = [&](const std::vector<ComponentFn>& near_out,
                             const std::vector<ComponentFn>& near_in) {
        std::vector<ComponentFn> comps;
        for (size_t c = 0; c < p.size(); ++c)
            comps.push_back([&near_out, &near_in, &p, t, eps1, c](Complex z) {
                return preglue_value_unchecked(near_out, near_in, p, t, eps1, z)[c];
            });
        const double n = dbar_lp_norm(sample_map(half, p, comps), p_exp);
        return std::pow(n, p_exp);
    };

    GluedNorm out;
    out.r = r;
    // the glued map reads u_t(t/y) = p + chi1(y/sqrt r)(g(y)-p)
    //                                  + chi1(r sqrt r/y)(f(t/y)-p),
    // i.e. the same pregluing with the seeds swapped.
    out.half_x = half_integral(f, g);
    out.half_y = half_integral(g, f);
    out.norm = std::pow(out.half_x + out.half_y, 1.0 / p_exp);
    return out;
}

int thread_budget()
{
    if (const char* env = std::getenv("MODULI_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

ScalingFit scaling_fit(const std::vector<ComponentFn>& f, const std::vector<ComponentFn>& g,
                       const std::vector<Complex>& p, const std::vector<double>& r_list,
                       double eps1, int radial, int angular, double p_exp)
{
    if (r_list.size() < 2) throw DomainError("scaling_fit: need at least two r values");
    check_seed_basepoints(f, g, p);

    ScalingFit fit;
    fit.points.resize(r_list.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= r_list.size()) return;
            const double r = r_list[i];
            const GluedNorm gn =
                glued_dbar_norm(f, g, p, Complex(r * r, 0), eps1, radial, angular, p_exp);
            fit.points[i] = ScalingPoint{r, gn.norm};
        }
    };
    const int nt = std::min<int>(thread_budget(), static_cast<int>(r_list.size()));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& pt : fit.points)
        if (pt.norm < 1e-14) fit.degenerate = true;
    if (fit.degenerate) return fit;

    std::vector<double> xs, ys;
    for (const auto& pt : fit.points) {
        xs.push_back(std::log(pt.r));
        ys.push_back(std::log(pt.norm));
    }
    const LineFit lf = least_squares(xs, ys);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual = lf.residual;
    return fit;
}

// ----------------------------------------------------------- interpolation

namespace {

// chi(s) = smoothstep((s-1)/3): 0 at s <= 1, 1 at s >= 4
double interp_cut(double s)
{
    return smoothstep((s - 1) / 3);
}

double interp_cut_deriv(double s)
{
    return smoothstep_deriv((s - 1) / 3) / 3;
}

struct InterpMap {
    const HoloSeed& f;
    const HoloSeed& g;
    Complex t;
    double r;

    Complex value(Complex z) const
    {
        const double a = std::abs(z);
        if (a >= r) {
            const double s = (a / r) * (a / r);
            return f.value(interp_cut(s) * z);
        }
        const double s = std::norm(t / (z * r));
        return g.value(interp_cut(s) * (t / z));
    }

    // Frobenius norm of the real Jacobian via the Wirtinger derivatives
    double grad(Complex z) const
    {
        const double a = std::abs(z);
        if (a >= r) {
            const double s = (a / r) * (a / r);
            const double cut = interp_cut(s), dcut = interp_cut_deriv(s);
            const Complex w = cut * z;
            const Complex fp = f.deriv(w);
            const Complex fz = fp * (cut + dcut * (a * a) / (r * r));
            const Complex fzb = fp * dcut * (z * z) / (r * r);
            return std::sqrt(2 * (std::norm(fz) + std::norm(fzb)));
        }
        const double s = std::norm(t / (z * r));
        const double cut = interp_cut(s), dcut = interp_cut_deriv(s);
        const Complex w = cut * (t / z);
        const Complex gp = g.deriv(w);
        const Complex gz = -(t / (z * z)) * (dcut * s + cut);
        const Complex gzb = dcut * (-s / std::conj(z)) * (t / z);
        return std::sqrt(2 * (std::norm(gp * gz) + std::norm(gp * gzb)));
    }
};

} // namespace

InterpReport interp_check(const HoloSeed& f, const HoloSeed& g, Complex t, double r, int radial,
                          int angular)
{
    if (!(r > 0)) throw DomainError("interp_check: r must be positive");
    if (std::abs(std::abs(t) - r * r) > 1e-12 * r * r)
        throw DomainError("interp_check: |t| must equal r^2");
    if (radial < 5 || angular < 8) throw DomainError("interp_check: resolution too small");
    const double p_scale = 1 + std::abs(f.value(Complex(0)));
    if (std::abs(f.value(Complex(0)) - g.value(Complex(0))) > 1e-12 * p_scale)
        throw DomainError("interp_check: seeds must agree at 0 (common basepoint)");

    InterpMap F{f, g, t, r};
    InterpReport rep;
    rep.r = r;
    rep.abs_t = std::abs(t);

    // sup of |F| and |grad F| over A(r/2, 2r) on a linear grid that contains
    // the two boundary circles exactly
    AnnulusGrid ann(r / 2, 2 * r, radial, angular, GridSpacing::linear);
    for (int k = 0; k < ann.radial; ++k)
        for (int j = 0; j < ann.angular; ++j) {
            const Complex z = ann.point(k, j);
            rep.sup_interp = std::max(rep.sup_interp, std::abs(F.value(z)));
            rep.grad_max = std::max(rep.grad_max, F.grad(z));
        }

    // seed sups over D_2r: concentric circles ending exactly on |z| = 2r,
    // with the same angular samples, plus the center
    double sup_f = std::abs(f.value(Complex(0))), sup_g = std::abs(g.value(Complex(0)));
    double sup_df = std::abs(f.deriv(Complex(0))), sup_dg = std::abs(g.deriv(Complex(0)));
    for (int k = 1; k < ann.radial; ++k) {
        const double rho = 2 * r * k / (ann.radial - 1);
        for (int j = 0; j < ann.angular; ++j) {
            const Complex z = std::polar(rho, ann.theta(j));
            sup_f = std::max(sup_f, std::abs(f.value(z)));
            sup_g = std::max(sup_g, std::abs(g.value(z)));
            sup_df = std::max(sup_df, std::abs(f.deriv(z)));
            sup_dg = std::max(sup_dg, std::abs(g.deriv(z)));
        }
    }
    rep.sup_seed = std::max(sup_f, sup_g);
    rep.grad_bound = 9 * std::sqrt(2.0) * std::max(sup_df, 4 * sup_dg);

    const double sup_scale = std::max(1.0, rep.sup_seed);
    rep.sup_ok = std::abs(rep.sup_interp - rep.sup_seed) <= 1e-6 * sup_scale;
    rep.grad_ok = rep.grad_max <= rep.grad_bound * (1 + 1e-12);

    // seam: finite differences across |z| = r; the interpolation is built so
    // every derivative dies there
    const double delta = 1e-3;
    const int mseam = std::max(angular, 1024);
    for (int j = 0; j < mseam; ++j) {
        const double th = 2 * pi * j / mseam;
        const Complex zm = std::polar(r * (1 - delta), th);
        const Complex z0 = std::polar(r, th);
        const Complex zp = std::polar(r * (1 + delta), th);
        const Complex drad = (F.value(zp) - F.value(zm)) / (2 * r * delta);
        const double dth = 2 * pi / mseam;
        const Complex thp = F.value(std::polar(r, th + dth));
        const Complex thm = F.value(std::polar(r, th - dth));
        const Complex dang = (thp - thm) / (2 * dth * r);
        (void)z0;
        rep.seam_grad = std::max(rep.seam_grad,
                                 std::sqrt(std::norm(drad) + std::norm(dang)));
    }
    rep.seam_ok = rep.seam_grad < 1e-4;
    return rep;
}

// --------------------------------------------------------------- cutsection

CutsectionScaling cutsection_scaling(double p_exp, const std::vector<double>& r_list, int radial)
{
    if (!(p_exp >= 1)) throw DomainError("cutsection_scaling: p_exp must be >= 1");
    if (r_list.size() < 2) throw DomainError("cutsection_scaling: need at least two r values");
    if (radial < 5) throw DomainError("cutsection_scaling: resolution too small");

    CutsectionScaling out;
    for (double r : r_list) {
        if (!(r > 0) || r >= 1) throw DomainError("cutsection_scaling: need 0 < r < 1");
        // cylinder coordinate s = log rho on [ (3/2) log r, log r ]
        const double s0 = 1.5 * std::log(r), s1 = std::log(r);
        const double ds = (s1 - s0) / (radial - 1);
        std::vector<double> beta(static_cast<size_t>(radial));
        for (int k = 0; k < radial; ++k)
            beta[static_cast<size_t>(k)] = beta_r_value(r, std::exp(s0 + k * ds));
        double sum = 0;
        for (int k = 0; k < radial; ++k) {
            double d;
            if (k == 0)
                d = (-3 * beta[0] + 4 * beta[1] - beta[2]) / (2 * ds);
            else if (k == radial - 1)
                d = (3 * beta[static_cast<size_t>(k)] - 4 * beta[static_cast<size_t>(k - 1)]
                     + beta[static_cast<size_t>(k - 2)])
                    / (2 * ds);
            else
                d = (beta[static_cast<size_t>(k + 1)] - beta[static_cast<size_t>(k - 1)])
                    / (2 * ds);
            const double w = (k == 0 || k == radial - 1) ? std::abs(ds) / 2 : std::abs(ds);
            sum += std::pow(std::abs(d), p_exp) * w * 2 * pi;
        }
        out.log_log_r.push_back(std::log(std::abs(std::log(r))));
        out.log_norm.push_back(std::log(std::pow(sum, 1.0 / p_exp)));
    }
    out.slope = least_squares(out.log_log_r, out.log_norm).slope;
    return out;
}

} // namespace moduli
