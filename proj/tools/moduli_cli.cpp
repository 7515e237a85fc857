// Command-line front end. Exit codes: 0 success, 2 domain error (bad input,
// with the offending parameter named), 3 internal-consistency failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "moduli/gluing.hpp"
#include "moduli/index.hpp"
#include "moduli/invariants.hpp"
#include "moduli/pants.hpp"
#include "moduli/strata.hpp"
#include "moduli/surface_types.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace moduli;

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// ----------------------------------------------------------------- classify

int run_classify(int gtilde, const std::string& format)
{
    const auto types = classify_symmetric(gtilde);
    if (format == "json") {
        json out;
        out["gtilde"] = gtilde;
        out["count"] = types.size();
        out["expected"] = (3 * gtilde + 4) / 2;
        out["types"] = json::array();
        for (const auto& s : types) {
            json t;
            t["h"] = s.h;
            t["k"] = s.k;
            t["quotient"] = to_string(quotient_type(s));
            out["types"].push_back(std::move(t));
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "h,k,quotient\n";
        for (const auto& s : types)
            std::cout << s.h << "," << s.k << ",\"" << to_string(quotient_type(s)) << "\"\n";
    } else {
        std::cout << "symmetric types on a closed surface of genus " << gtilde << ": "
                  << types.size() << " (census formula gives " << (3 * gtilde + 4) / 2 << ")\n";
        for (const auto& s : types)
            std::cout << "  " << to_string(s) << " -> " << to_string(quotient_type(s)) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------- strata

int run_strata(int g, int h, int n, std::vector<int> m, bool m_given, bool dot,
               const std::string& format)
{
    if (h > 0 && !m_given) m.assign(static_cast<size_t>(h), 0);
    if (h == 0 && !m.empty())
        throw DomainError("strata: --m must be empty when --h is 0 (closed surface)");
    if (h > 0 && static_cast<int>(m.size()) != h)
        throw DomainError("strata: --m must list exactly one mark count per boundary circle "
                          "(--h entries)");

    StrataSet ss;
    if (h == 0) {
        ss = enumerate_closed_strata(g, n);
    } else {
        ss = enumerate_strata(MarkedTopType{TopType{g, h}, n, m});
    }

    if (dot) {
        std::cout << to_dot(ss);
        return 0;
    }

    const auto counts = ss.counts_by_codim();
    if (format == "json") {
        json out;
        out["g"] = g;
        out["h"] = h;
        out["n"] = n;
        out["m"] = m;
        out["total"] = ss.strata.size();
        out["top_dim"] = ss.top_dim();
        out["counts_by_codim"] = counts;
        out["dims"] = ss.dims;
        out["strata"] = json::array();
        for (const auto& s : ss.strata) out["strata"].push_back(json::parse(to_canonical_json(s)));
        out["covers"] = json::array();
        for (size_t i = 0; i < ss.covers.size(); ++i) {
            json e;
            e["parent"] = ss.covers[i].first;
            e["child"] = ss.covers[i].second;
            e["kind"] = to_string(ss.cover_kinds[i]);
            out["covers"].push_back(std::move(e));
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "codim,count\n";
        for (size_t c = 0; c < counts.size(); ++c) std::cout << c << "," << counts[c] << "\n";
    } else {
        std::cout << ss.strata.size() << " strata, top dimension " << ss.top_dim() << "\n";
        std::cout << "counts by codimension:";
        for (int c : counts) std::cout << " " << c;
        std::cout << "\n";
        for (size_t i = 0; i < ss.strata.size(); ++i)
            std::cout << "[" << i << "] dim " << ss.dims[i] << "  " << to_string(ss.strata[i])
                      << "\n";
        for (size_t i = 0; i < ss.covers.size(); ++i)
            std::cout << "cover " << ss.covers[i].first << " -> " << ss.covers[i].second << "  ("
                      << to_string(ss.cover_kinds[i]) << ")\n";
    }
    return 0;
}

// --------------------------------------------------------- dim / index / vdim

MarkedTopType make_marked(int g, int h, int n, std::vector<int> m, bool m_given)
{
    if (!m_given) m.assign(static_cast<size_t>(h), 0);
    if (static_cast<int>(m.size()) != h)
        throw DomainError("--m must list exactly one mark count per boundary circle");
    return MarkedTopType{TopType{g, h}, n, m};
}

int run_dim(const MarkedTopType& t, const std::string& format)
{
    const Int d = moduli_dim(t);
    if (format == "json") {
        json out;
        out["dim"] = to_string(d);
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "dim\n" << to_string(d) << "\n";
    } else {
        std::cout << to_string(d) << "\n";
    }
    return 0;
}

int run_index(const Int& mu, const Int& N, const MarkedTopType& t, const std::string& format)
{
    const IndexReport rep = index_report(mu, N, t);
    if (format == "json") {
        std::cout << to_json(rep) << "\n";
    } else if (format == "csv") {
        std::cout << "field,value\n"
                  << "maslov," << to_string(rep.maslov) << "\n"
                  << "ambient_half_dim," << to_string(rep.ambient_half_dim) << "\n"
                  << "fredholm_index," << to_string(rep.fredholm_index) << "\n"
                  << "moduli_dimension," << to_string(rep.moduli_dimension) << "\n"
                  << "virtual_dimension," << to_string(rep.virtual_dimension) << "\n";
    } else {
        std::cout << "maslov            " << to_string(rep.maslov) << "\n"
                  << "ambient half-dim  " << to_string(rep.ambient_half_dim) << "\n"
                  << "fredholm index    " << to_string(rep.fredholm_index) << "\n"
                  << "moduli dimension  " << to_string(rep.moduli_dimension) << "\n"
                  << "virtual dimension " << to_string(rep.virtual_dimension) << "\n";
    }
    return 0;
}

int run_vdim(const Int& mu, const Int& N, const MarkedTopType& t, const std::string& format)
{
    const Int v = virtual_dim(mu, N, t);
    if (format == "json") {
        json out;
        out["vdim"] = to_string(v);
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "vdim\n" << to_string(v) << "\n";
    } else {
        std::cout << to_string(v) << "\n";
    }
    return 0;
}

// -------------------------------------------------------------------- pants

json iso_to_json(const PosetIsoResult& r, const FaceLattice& fl)
{
    json out;
    out["isomorphic"] = r.isomorphic;
    out["faces"] = fl.dims.size();
    out["covers"] = fl.covers.size();
    out["f_vector"] = fl.f_vector();
    if (!r.isomorphic) out["counterexample"] = r.counterexample;
    return out;
}

int run_pants(bool check_k5, bool check_k4, bool have_closed, int gtilde, int ntilde,
              bool have_bordered, int g, int h, int n, const std::string& format)
{
    json out;
    bool any = false;
    bool all_iso = true;

    if (check_k5) {
        any = true;
        const auto ss = enumerate_strata(MarkedTopType{TopType{0, 3}, 0, {0, 0, 0}});
        const auto fl = face_lattice_of(ss);
        const auto iso = check_k5_identification(ss);
        all_iso = all_iso && iso.isomorphic;
        if (format == "json") {
            out["k5"] = iso_to_json(iso, fl);
        } else {
            std::cout << "strata poset of the unmarked (0,3) type vs K5: "
                      << (iso.isomorphic ? "isomorphic" : "NOT isomorphic") << " (";
            for (int c : fl.f_vector()) std::cout << c << " ";
            std::cout << "faces by dim)\n";
            if (!iso.isomorphic) std::cout << "  " << iso.counterexample << "\n";
        }
    }
    if (check_k4) {
        any = true;
        const auto ss = enumerate_strata(MarkedTopType{TopType{0, 2}, 0, {2, 0}});
        const auto fl = face_lattice_of(ss);
        const auto iso = check_k5_identification(ss); // compares against K_{top_dim+2}
        all_iso = all_iso && iso.isomorphic;
        if (format == "json") {
            out["k4"] = iso_to_json(iso, fl);
        } else {
            std::cout << "strata poset of the twice-marked annulus vs K4: "
                      << (iso.isomorphic ? "isomorphic" : "NOT isomorphic") << "\n";
            if (!iso.isomorphic) std::cout << "  " << iso.counterexample << "\n";
        }
    }
    if (have_closed) {
        any = true;
        const auto [curves, pants] = pants_counts(gtilde, ntilde);
        if (format == "json") {
            out["closed"] = {{"gtilde", gtilde}, {"ntilde", ntilde}, {"curves", curves},
                             {"pants", pants}};
        } else if (format == "csv") {
            std::cout << "curves,pants\n" << curves << "," << pants << "\n";
        } else {
            std::cout << "closed (" << gtilde << "," << ntilde << "): " << curves
                      << " curves, " << pants << " pairs of pants\n";
        }
    }
    if (have_bordered) {
        any = true;
        const auto [curves, pants] = pants_counts_bordered(g, h, n);
        if (format == "json") {
            out["bordered"] = {{"g", g}, {"h", h}, {"n", n}, {"curves", curves},
                               {"pants", pants}};
        } else if (format == "csv") {
            std::cout << "curves,pants\n" << curves << "," << pants << "\n";
        } else {
            std::cout << "bordered (" << g << "," << h << ") with " << n << " marks: " << curves
                      << " curves, " << pants << " pairs of pants\n";
        }
    }
    if (!any)
        throw DomainError("pants: pass --check-k5/--check-k4, --gtilde with --ntilde, or --g "
                          "with --h");
    if (format == "json") std::cout << out.dump(2) << "\n";
    return all_iso ? 0 : 3;
}

// ---------------------------------------------------------------- invariant

Rational invariant_value(int g, const std::vector<Int>& n, const Int& a)
{
    if (g == 0) return c_genus0(n, a);
    if (g == 1) return c_genus_g(1, n, a, builtin_oracle_g1());
    throw UnsupportedError("invariant: --g >= 2 needs Hodge integrals beyond the built-in "
                           "table");
}

std::string join_windings(const std::vector<Int>& n, char sep)
{
    std::string s;
    for (size_t i = 0; i < n.size(); ++i) {
        if (i) s += sep;
        s += to_string(n[i]);
    }
    return s;
}

int run_invariant(int g, int h, long long d, const std::vector<long long>& n_in, long long a,
                  const std::string& table_range, const std::string& format)
{
    std::vector<Int> n(n_in.begin(), n_in.end());
    if (static_cast<int>(n.size()) != h)
        throw DomainError("invariant: --n must list exactly --h windings");
    Int dsum = 0;
    for (const Int& w : n) dsum += w;
    if (dsum != d) throw DomainError("invariant: --d must equal the sum of --n");

    std::vector<long long> a_values;
    if (table_range.empty()) {
        a_values.push_back(a);
    } else {
        const auto pos = table_range.find("..");
        if (pos == std::string::npos)
            throw DomainError("invariant: --table expects AMIN..AMAX");
        try {
            const long long lo = std::stoll(table_range.substr(0, pos));
            const long long hi = std::stoll(table_range.substr(pos + 2));
            if (lo > hi) throw DomainError("invariant: --table range is empty");
            for (long long v = lo; v <= hi; ++v) a_values.push_back(v);
        } catch (const std::invalid_argument&) {
            throw DomainError("invariant: --table expects integer bounds AMIN..AMAX");
        } catch (const std::out_of_range&) {
            throw DomainError("invariant: --table bounds out of range");
        }
    }

    if (format == "json") {
        json rows = json::array();
        for (long long av : a_values) {
            json row;
            row["g"] = g;
            row["h"] = h;
            row["d"] = d;
            row["n"] = n_in;
            row["a"] = av;
            row["value"] = to_string(invariant_value(g, n, av));
            rows.push_back(std::move(row));
        }
        std::cout << (table_range.empty() ? rows[0] : rows).dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "g,h,d,n,a,value\n";
        for (long long av : a_values)
            std::cout << g << "," << h << "," << d << "," << join_windings(n, ';') << "," << av
                      << "," << to_string(invariant_value(g, n, av)) << "\n";
    } else {
        if (table_range.empty()) {
            std::cout << to_string(invariant_value(g, n, a)) << "\n";
        } else {
            for (long long av : a_values)
                std::cout << "a=" << av << "  " << to_string(invariant_value(g, n, av)) << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------- verify-gluing

struct GluingSeedPair {
    std::string name;
    std::vector<ComponentFn> f, g;
    std::vector<Complex> p;
    HoloSeed fs, gs; // scalar versions with derivatives, for interp_check
};

std::vector<GluingSeedPair> seed_battery()
{
    const Complex p(0.2, -0.1);
    std::vector<GluingSeedPair> out;
    out.push_back({"linear",
                   {[p](Complex z) { return p + z; }},
                   {[p](Complex z) { return p + 1.3 * z; }},
                   {p},
                   {[p](Complex z) { return p + z; }, [](Complex) { return Complex(1); }},
                   {[p](Complex z) { return p + 1.3 * z; }, [](Complex) { return Complex(1.3); }}});
    out.push_back({"quadratic",
                   {[p](Complex z) { return p + z + 0.5 * z * z; }},
                   {[p](Complex z) { return p + z - 0.25 * z * z; }},
                   {p},
                   {[p](Complex z) { return p + z + 0.5 * z * z; },
                    [](Complex z) { return 1.0 + z; }},
                   {[p](Complex z) { return p + z - 0.25 * z * z; },
                    [](Complex z) { return 1.0 - 0.5 * z; }}});
    out.push_back({"cubic",
                   {[p](Complex z) { return p + z + 0.5 * z * z - 0.3 * z * z * z; }},
                   {[p](Complex z) { return p + 2.0 * z + 0.1 * z * z * z; }},
                   {p},
                   {[p](Complex z) { return p + z + 0.5 * z * z - 0.3 * z * z * z; },
                    [](Complex z) { return 1.0 + z - 0.9 * z * z; }},
                   {[p](Complex z) { return p + 2.0 * z + 0.1 * z * z * z; },
                    [](Complex z) { return 2.0 + 0.3 * z * z; }}});
    return out;
}

int run_verify_gluing(std::vector<double> r_list, double p_only, const std::string& format)
{
    const double eps1 = 0.5;
    if (r_list.empty()) r_list = {1e-2, 1e-3, 1e-4, 1e-5};
    for (double r : r_list)
        if (!(r > 0) || r >= eps1 * eps1 / 16)
            throw DomainError("verify-gluing: every --r-list entry needs 0 < r < eps1^2/16 = "
                              + std::to_string(eps1 * eps1 / 16));
    std::vector<double> p_list = {2.0, 4.0};
    if (p_only > 0) p_list = {p_only};

    const auto seeds = seed_battery();
    bool all_pass = true;
    json rep;

    // cutoff energy 4pi/|log r|
    rep["beta"] = json::array();
    for (double r : r_list) {
        const BetaReport b = beta_r(r, 1024, 1024);
        const bool pass = b.rel_error < 0.02;
        all_pass = all_pass && pass;
        json row;
        row["r"] = r;
        row["energy"] = b.energy;
        row["expected"] = b.expected;
        row["rel_error"] = b.rel_error;
        row["pass"] = pass;
        rep["beta"].push_back(std::move(row));
        if (format == "table")
            std::cout << "beta r=" << fmt_double(r) << ": energy " << fmt_double(b.energy)
                      << " expected " << fmt_double(b.expected) << " rel_err "
                      << fmt_double(b.rel_error) << (pass ? "  pass" : "  FAIL") << "\n";
    }

    // dbar decay exponent of the preglued map
    rep["scaling"] = json::array();
    for (const auto& sp : seeds) {
        for (double pe : p_list) {
            const ScalingFit fit = scaling_fit(sp.f, sp.g, sp.p, r_list, eps1, 512, 512, pe);
            const double floor_v = 1.0 / pe - 0.15;
            const bool pass = !fit.degenerate && fit.slope >= floor_v;
            all_pass = all_pass && pass;
            json row;
            row["seed"] = sp.name;
            row["p"] = pe;
            row["slope"] = fit.slope;
            row["floor"] = floor_v;
            row["residual"] = fit.residual;
            row["degenerate"] = fit.degenerate;
            row["pass"] = pass;
            row["points"] = json::array();
            for (const auto& pt : fit.points)
                row["points"].push_back({{"r", pt.r}, {"norm", pt.norm}});
            rep["scaling"].push_back(std::move(row));
            if (format == "table")
                std::cout << "scaling " << sp.name << " p=" << fmt_double(pe) << ": slope "
                          << fmt_double(fit.slope) << " >= " << fmt_double(floor_v)
                          << (pass ? "  pass" : "  FAIL") << "\n";
        }
    }

    // interpolation sup/gradient/seam bounds
    rep["interp"] = json::array();
    for (const auto& sp : seeds) {
        const double r = 1e-2;
        const InterpReport ir = interp_check(sp.fs, sp.gs, Complex(r * r, 0), r);
        all_pass = all_pass && ir.ok();
        json row;
        row["seed"] = sp.name;
        row["r"] = ir.r;
        row["sup_interp"] = ir.sup_interp;
        row["sup_seed"] = ir.sup_seed;
        row["grad_max"] = ir.grad_max;
        row["grad_bound"] = ir.grad_bound;
        row["seam_grad"] = ir.seam_grad;
        row["pass"] = ir.ok();
        rep["interp"].push_back(std::move(row));
        if (format == "table")
            std::cout << "interp " << sp.name << ": sup " << fmt_double(ir.sup_interp) << " vs "
                      << fmt_double(ir.sup_seed) << ", grad " << fmt_double(ir.grad_max)
                      << " <= " << fmt_double(ir.grad_bound) << ", seam "
                      << fmt_double(ir.seam_grad) << (ir.ok() ? "  pass" : "  FAIL") << "\n";
    }

    // cutoff-section norm against |log r|, slope only
    rep["cutsection"] = json::array();
    for (double pe : p_list) {
        const CutsectionScaling cs = cutsection_scaling(pe, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
        const double expect = 1.0 / pe - 1.0;
        const bool pass = std::abs(cs.slope - expect) <= 0.1;
        all_pass = all_pass && pass;
        json row;
        row["p"] = pe;
        row["slope"] = cs.slope;
        row["expected"] = expect;
        row["pass"] = pass;
        rep["cutsection"].push_back(std::move(row));
        if (format == "table")
            std::cout << "cutsection p=" << fmt_double(pe) << ": slope " << fmt_double(cs.slope)
                      << " expected " << fmt_double(expect) << (pass ? "  pass" : "  FAIL")
                      << "\n";
    }

    rep["pass"] = all_pass;
    if (format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "check,seed,p,r,value\n";
        for (const auto& row : rep["beta"])
            std::cout << "beta,,," << fmt_double(row["r"].get<double>()) << ","
                      << fmt_double(row["energy"].get<double>()) << "\n";
        for (const auto& row : rep["scaling"])
            for (const auto& pt : row["points"])
                std::cout << "scaling," << row["seed"].get<std::string>() << ","
                          << fmt_double(row["p"].get<double>()) << ","
                          << fmt_double(pt["r"].get<double>()) << ","
                          << fmt_double(pt["norm"].get<double>()) << "\n";
    } else {
        std::cout << (all_pass ? "all gluing checks pass" : "GLUING CHECKS FAILED") << "\n";
    }
    return all_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bordered-surface moduli: strata posets, index formulas, winding invariants, "
                 "gluing estimates"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // leave -h free: --h is a surface parameter

    const auto add_sub = [&app](const char* name, const char* desc) {
        auto* sc = app.add_subcommand(name, desc);
        sc->set_help_flag("--help", "print help");
        return sc;
    };

    std::string format = "table";
    const auto add_format = [&format](CLI::App* sc) {
        sc->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    };

    // classify
    int cl_gtilde = 0;
    auto* sc_classify = add_sub("classify", "census of symmetric structures on a "
                                                       "closed surface");
    sc_classify->add_option("--gtilde", cl_gtilde, "genus of the closed surface")->required();
    add_format(sc_classify);

    // strata
    int st_g = 0, st_h = 0, st_n = 0;
    std::vector<int> st_m;
    bool st_dot = false;
    auto* sc_strata = add_sub("strata", "enumerate boundary strata and their "
                                                   "degeneration poset");
    sc_strata->add_option("--g", st_g, "genus")->required();
    sc_strata->add_option("--h", st_h, "boundary circles (0 = closed)")->required();
    sc_strata->add_option("--n", st_n, "interior marks");
    auto* st_m_opt = sc_strata->add_option("--m", st_m, "boundary marks per circle")
                         ->delimiter(',');
    sc_strata->add_flag("--dot", st_dot, "emit the Hasse diagram as DOT");
    add_format(sc_strata);

    // dim / index / vdim
    int dx_g = 0, dx_h = 1, dx_n = 0;
    std::vector<int> dx_m;
    long long dx_mu = 0, dx_N = 3;
    auto* sc_dim = add_sub("dim", "dimension of the moduli of marked bordered "
                                             "surfaces");
    sc_dim->add_option("--g", dx_g)->required();
    sc_dim->add_option("--h", dx_h)->required();
    sc_dim->add_option("--n", dx_n);
    auto* dim_m_opt = sc_dim->add_option("--m", dx_m)->delimiter(',');
    add_format(sc_dim);

    auto* sc_index = add_sub("index", "Fredholm index report for a Maslov index and "
                                                 "ambient half-dimension");
    sc_index->add_option("--mu", dx_mu, "total boundary Maslov index")->required();
    sc_index->add_option("--N", dx_N, "ambient complex dimension");
    sc_index->add_option("--g", dx_g)->required();
    sc_index->add_option("--h", dx_h)->required();
    sc_index->add_option("--n", dx_n);
    auto* index_m_opt = sc_index->add_option("--m", dx_m)->delimiter(',');
    add_format(sc_index);

    auto* sc_vdim = add_sub("vdim", "virtual dimension of the moduli of maps");
    sc_vdim->add_option("--mu", dx_mu, "total boundary Maslov index")->required();
    sc_vdim->add_option("--N", dx_N, "ambient complex dimension");
    sc_vdim->add_option("--g", dx_g)->required();
    sc_vdim->add_option("--h", dx_h)->required();
    sc_vdim->add_option("--n", dx_n);
    auto* vdim_m_opt = sc_vdim->add_option("--m", dx_m)->delimiter(',');
    add_format(sc_vdim);

    // pants
    bool pk5 = false, pk4 = false;
    int pa_gtilde = 0, pa_ntilde = 0, pa_g = 0, pa_h = 0, pa_n = 0;
    auto* sc_pants = add_sub("pants", "pants-decomposition counts and associahedron "
                                                 "identifications");
    sc_pants->add_flag("--check-k5", pk5, "compare the (0,3) strata poset with K5");
    sc_pants->add_flag("--check-k4", pk4, "compare the twice-marked annulus poset with K4");
    auto* pa_gt_opt = sc_pants->add_option("--gtilde", pa_gtilde, "closed genus");
    sc_pants->add_option("--ntilde", pa_ntilde, "closed punctures");
    auto* pa_g_opt = sc_pants->add_option("--g", pa_g, "bordered genus");
    sc_pants->add_option("--h", pa_h, "boundary circles");
    sc_pants->add_option("--n", pa_n, "marks");
    add_format(sc_pants);

    // invariant
    int iv_g = 0, iv_h = 1;
    long long iv_d = 1, iv_a = 1;
    std::vector<long long> iv_n;
    std::string iv_table;
    auto* sc_inv = add_sub("invariant", "winding invariant at framing a");
    sc_inv->add_option("--g", iv_g, "genus")->required();
    sc_inv->add_option("--h", iv_h, "boundary circles")->required();
    sc_inv->add_option("--d", iv_d, "total winding")->required();
    sc_inv->add_option("--n", iv_n, "windings per circle")->required()->delimiter(',');
    sc_inv->add_option("--a", iv_a, "framing");
    sc_inv->add_option("--table", iv_table, "tabulate a over AMIN..AMAX");
    add_format(sc_inv);

    // verify-gluing
    std::vector<double> vg_r;
    double vg_p = 0;
    auto* sc_glue = add_sub("verify-gluing", "run the numerical gluing-estimate "
                                                        "battery");
    sc_glue->add_option("--r-list", vg_r, "neck parameters r (t = r^2)")->delimiter(',');
    sc_glue->add_option("--p", vg_p, "single integrability exponent (default: 2 and 4)");
    add_format(sc_glue);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_classify->parsed()) return run_classify(cl_gtilde, format);
        if (sc_strata->parsed())
            return run_strata(st_g, st_h, st_n, st_m, st_m_opt->count() > 0, st_dot, format);
        if (sc_dim->parsed())
            return run_dim(make_marked(dx_g, dx_h, dx_n, dx_m, dim_m_opt->count() > 0), format);
        if (sc_index->parsed())
            return run_index(dx_mu, dx_N,
                             make_marked(dx_g, dx_h, dx_n, dx_m, index_m_opt->count() > 0),
                             format);
        if (sc_vdim->parsed())
            return run_vdim(dx_mu, dx_N,
                            make_marked(dx_g, dx_h, dx_n, dx_m, vdim_m_opt->count() > 0),
                            format);
        if (sc_pants->parsed())
            return run_pants(pk5, pk4, pa_gt_opt->count() > 0, pa_gtilde, pa_ntilde,
                             pa_g_opt->count() > 0, pa_g, pa_h, pa_n, format);
        if (sc_inv->parsed()) return run_invariant(iv_g, iv_h, iv_d, iv_n, iv_a, iv_table, format);
        if (sc_glue->parsed()) return run_verify_gluing(vg_r, vg_p, format);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
