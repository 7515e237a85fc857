// Acceptance gate: every shipping criterion in one binary, one timed
// pass/fail line each, nonzero exit if anything fails. Budgets are wall
// clock and part of the criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "moduli/gluing.hpp"
#include "moduli/index.hpp"
#include "moduli/invariants.hpp"
#include "moduli/pants.hpp"
#include "moduli/strata.hpp"
#include "moduli/surface_types.hpp"

using namespace moduli;

namespace {

struct Criterion {
    std::string name;
    double budget_s;
    std::function<bool(std::string&)> run;
};

bool check_counts(const MarkedTopType& t, const std::vector<int>& want, std::string& why)
{
    const auto ss = enumerate_strata(t);
    const auto got = ss.counts_by_codim();
    if (got != want) {
        why = "counts mismatch";
        return false;
    }
    return true;
}

// the three holomorphic seed pairs used by the numeric batteries
struct SeedPair {
    std::vector<ComponentFn> f, g;
    std::vector<Complex> p;
    HoloSeed fs, gs;
};

std::vector<SeedPair> seed_battery()
{
    const Complex p(0.2, -0.1);
    std::vector<SeedPair> out;
    out.push_back({{[p](Complex z) { return p + z; }},
                   {[p](Complex z) { return p + 1.3 * z; }},
                   {p},
                   {[p](Complex z) { return p + z; }, [](Complex) { return Complex(1); }},
                   {[p](Complex z) { return p + 1.3 * z; }, [](Complex) { return Complex(1.3); }}});
    out.push_back({{[p](Complex z) { return p + z + 0.5 * z * z; }},
                   {[p](Complex z) { return p + z - 0.25 * z * z; }},
                   {p},
                   {[p](Complex z) { return p + z + 0.5 * z * z; },
                    [](Complex z) { return 1.0 + z; }},
                   {[p](Complex z) { return p + z - 0.25 * z * z; },
                    [](Complex z) { return 1.0 - 0.5 * z; }}});
    out.push_back({{[p](Complex z) { return p + z + 0.5 * z * z - 0.3 * z * z * z; }},
                   {[p](Complex z) { return p + 2.0 * z + 0.1 * z * z * z; }},
                   {p},
                   {[p](Complex z) { return p + z + 0.5 * z * z - 0.3 * z * z * z; },
                    [](Complex z) { return 1.0 + z - 0.9 * z * z; }},
                   {[p](Complex z) { return p + 2.0 * z + 0.1 * z * z * z; },
                    [](Complex z) { return 2.0 + 0.3 * z * z; }}});
    return out;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria;

    criteria.push_back({"pair-of-pants strata: 45 graded 1,9,21,14", 60.0, [](std::string& why) {
        return check_counts(MarkedTopType{TopType{0, 3}, 0, {0, 0, 0}}, {1, 9, 21, 14}, why);
    }});

    criteria.push_back({"annulus strata: 3 / 11 / 4 by marking profile", 15.0,
                        [](std::string& why) {
        bool ok = true;
        ok = ok && check_counts(MarkedTopType{TopType{0, 2}, 0, {1, 0}}, {1, 2}, why);
        ok = ok && check_counts(MarkedTopType{TopType{0, 2}, 0, {2, 0}}, {1, 5, 5}, why);
        ok = ok && check_counts(MarkedTopType{TopType{0, 2}, 0, {1, 1}}, {1, 1, 2}, why);
        return ok;
    }});

    criteria.push_back({"associahedron identifications: K5 and K4, exact", 60.0,
                        [](std::string& why) {
        const auto pants = enumerate_strata(MarkedTopType{TopType{0, 3}, 0, {0, 0, 0}});
        const auto iso5 = check_k5_identification(pants);
        if (!iso5.isomorphic) {
            why = iso5.counterexample;
            return false;
        }
        const auto annulus = enumerate_strata(MarkedTopType{TopType{0, 2}, 0, {2, 0}});
        const auto iso4 = check_k5_identification(annulus);
        if (!iso4.isomorphic) {
            why = iso4.counterexample;
            return false;
        }
        return true;
    }});

    criteria.push_back({"symmetric-type census through double genus 30", 10.0,
                        [](std::string& why) {
        for (int gt = 0; gt <= 30; ++gt)
            if (static_cast<int>(classify_symmetric(gt).size()) != (3 * gt + 4) / 2) {
                why = "census size wrong at g~=" + std::to_string(gt);
                return false;
            }
        return true;
    }});

    criteria.push_back({"index identity sweep + nodal constancy", 30.0, [](std::string& why) {
        // vdim == fredholm + moduli over the whole parameter box; the m
        // profile enters only through its sum, so h <= 3 runs the full
        // product and larger h sweeps the sum
        long long checked = 0;
        for (int g = 0; g <= 8; ++g)
            for (int h = 1; h <= 8; ++h) {
                std::vector<std::vector<int>> profiles;
                if (h <= 3) {
                    std::vector<int> m(static_cast<size_t>(h), 0);
                    for (;;) {
                        profiles.push_back(m);
                        int i = 0;
                        while (i < h && ++m[static_cast<size_t>(i)] > 4)
                            m[static_cast<size_t>(i++)] = 0;
                        if (i == h) break;
                    }
                } else {
                    for (int s = 0; s <= 4 * h; ++s) {
                        std::vector<int> m(static_cast<size_t>(h), 0);
                        int left = s;
                        for (int i = 0; i < h && left > 0; ++i) {
                            m[static_cast<size_t>(i)] = std::min(4, left);
                            left -= m[static_cast<size_t>(i)];
                        }
                        profiles.push_back(std::move(m));
                    }
                }
                for (Int mu = -20; mu <= 20; mu += 2)
                    for (Int N = 1; N <= 5; ++N)
                        for (int n = 0; n <= 4; ++n)
                            for (const auto& m : profiles) {
                                const MarkedTopType t{TopType{g, h}, n, m};
                                const Int v = virtual_dim(mu, N, t);
                                if (v != fredholm_index_smooth(mu, N, g, h) + moduli_dim(t)) {
                                    why = "identity fails at g=" + std::to_string(g)
                                          + " h=" + std::to_string(h);
                                    return false;
                                }
                                ++checked;
                            }
            }
        if (checked < 1000000) {
            why = "sweep too small: " + std::to_string(checked);
            return false;
        }

        // the nodal index is constant across every enumerated stratum
        const std::vector<MarkedTopType> spaces = {
            {TopType{0, 3}, 0, {0, 0, 0}}, {TopType{0, 2}, 0, {2, 0}},
            {TopType{0, 2}, 0, {1, 1}},    {TopType{0, 2}, 0, {1, 0}},
            {TopType{1, 1}, 0, {0}},
        };
        for (const auto& t : spaces) {
            const auto ss = enumerate_strata(t);
            for (Int mu : {Int(-6), Int(0), Int(4)})
                for (Int N : {Int(1), Int(3)}) {
                    const Int smooth = fredholm_index_smooth(mu, N, t.base.g, t.base.h);
                    for (const auto& s : ss.strata)
                        if (fredholm_index_nodal(mu, N, arithmetic_genus(s)) != smooth) {
                            why = "nodal index jumps on a stratum";
                            return false;
                        }
                }
        }
        return true;
    }});

    criteria.push_back({"disc moduli components: (m-1)! for m = 3..6", 60.0,
                        [](std::string& why) {
        for (int m = 3; m <= 6; ++m) {
            const auto ss = enumerate_strata(MarkedTopType{TopType{0, 1}, 0, {m}});
            if (Int(ss.counts_by_codim().front()) != disc_component_count(m)) {
                why = "component count wrong at m=" + std::to_string(m);
                return false;
            }
        }
        return true;
    }});

    criteria.push_back({"genus-0 invariants: 1/d^2 and the sign symmetry", 10.0,
                        [](std::string& why) {
        for (Int d = 1; d <= 8; ++d)
            if (c_genus0({d}, 1) != Rational(1) / (d * d)) {
                why = "1/d^2 fails at d=" + to_string(d);
                return false;
            }
        for (Int d = 1; d <= 6; ++d)
            for (int h = 1; h <= 3 && Int(h) <= d; ++h)
                for (const auto& n : compositions(d, h))
                    for (Int a = -4; a <= 5; ++a)
                        if (!sign_symmetry_check(n, a)) {
                            why = "sign symmetry fails at d=" + to_string(d);
                            return false;
                        }
        return true;
    }});

    criteria.push_back({"genus-1 engine equals the closed form, exact", 30.0,
                        [](std::string& why) {
        const HodgeOracle oracle = builtin_oracle_g1();
        for (Int d = 1; d <= 5; ++d)
            for (Int a = -3; a <= 4; ++a)
                if (c_genus_g(1, {d}, a, oracle) != genus1_closed_form(d, a)) {
                    why = "mismatch at d=" + to_string(d) + " a=" + to_string(a);
                    return false;
                }
        return true;
    }});

    criteria.push_back({"cutoff energy 4pi/|log r| within 2%", 30.0, [](std::string& why) {
        for (const double r : {1e-2, 1e-3, 1e-4}) {
            const BetaReport rep = beta_r(r, 1024, 1024);
            if (!(rep.rel_error < 0.02)) {
                why = "rel error " + std::to_string(rep.rel_error) + " at r="
                      + std::to_string(r);
                return false;
            }
        }
        return true;
    }});

    criteria.push_back({"neck norm decay slope >= 1/p - 0.15", 120.0, [](std::string& why) {
        const std::vector<double> r_list = {1e-2, 1e-3, 1e-4, 1e-5};
        for (const auto& sp : seed_battery())
            for (const double p_exp : {2.0, 4.0}) {
                const ScalingFit fit =
                    scaling_fit(sp.f, sp.g, sp.p, r_list, 0.5, 512, 512, p_exp);
                if (fit.degenerate || fit.slope < 1.0 / p_exp - 0.15) {
                    why = "slope " + std::to_string(fit.slope) + " at p="
                          + std::to_string(p_exp);
                    return false;
                }
            }
        return true;
    }});

    criteria.push_back({"interpolation sup/gradient/seam bounds", 60.0, [](std::string& why) {
        const double r = 1e-2;
        for (const auto& sp : seed_battery()) {
            const InterpReport rep = interp_check(sp.fs, sp.gs, Complex(r * r, 0), r);
            if (!rep.ok()) {
                why = std::string("interp fails: ") + (rep.sup_ok ? "" : "sup ")
                      + (rep.grad_ok ? "" : "grad ") + (rep.seam_ok ? "" : "seam");
                return false;
            }
            if (!(rep.seam_grad < 1e-4)) {
                why = "seam gradient " + std::to_string(rep.seam_grad);
                return false;
            }
        }
        return true;
    }});

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        std::string why;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= c.budget_s;
        const bool pass = ok && in_budget;
        if (!pass) ++failures;
        std::printf("[%s] %02zu %-52s (%.2fs / %.0fs)%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), secs, c.budget_s,
                    ok || why.empty() ? "" : "  -- ", ok ? "" : why.c_str());
        std::fflush(stdout);
    }

    if (failures == 0) {
        std::printf("acceptance: all %zu criteria pass\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return 1;
}
