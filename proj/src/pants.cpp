#include "moduli/pants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace moduli {

std::pair<int, int> pants_counts(int g_tilde, int n_tilde)
{
    if (g_tilde < 0)
        throw DomainError("pants_counts: g_tilde must be >= 0, got " + std::to_string(g_tilde));
    if (n_tilde < 0)
        throw DomainError("pants_counts: n_tilde must be >= 0, got " + std::to_string(n_tilde));
    if (2 * g_tilde - 2 + n_tilde <= 0)
        throw DomainError("pants_counts: type (" + std::to_string(g_tilde) + ","
                          + std::to_string(n_tilde) + ") admits no pants decomposition");
    return {3 * g_tilde - 3 + n_tilde, 2 * g_tilde - 2 + n_tilde};
}

std::pair<int, int> pants_counts_bordered(int g, int h, int n)
{
    validate(TopType{g, h});
    if (n < 0) throw DomainError("pants_counts_bordered: n must be >= 0");
    if (2 * g + h - 2 + n <= 0)
        throw DomainError("pants_counts_bordered: type (" + std::to_string(g) + ","
                          + std::to_string(h) + ") with n=" + std::to_string(n)
                          + " admits no pants decomposition");
    const int curves = 3 * g + h - 3 + n;
    const int pants = 2 * g + h - 2 + n;
    // Doubling bookkeeping: the double has 3g~-3+n~ curves, g~ = 2g+h-1,
    // n~ = 2n, and the surplus over the bordered count is pure algebra.
    const int g_tilde = 2 * g + h - 1, n_tilde = 2 * n;
    if ((3 * g_tilde - 3 + n_tilde) - curves != 3 * g + 2 * h - 3 + n)
        throw InternalError("pants_counts_bordered: doubling identity failed");
    return {curves, pants};
}

// ========================================================== associahedron

namespace {

struct Diagonal {
    int a, b; // endpoints on the polygon, a < b
};

bool diagonals_cross(const Diagonal& x, const Diagonal& y)
{
    return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

std::string diagonal_set_label(const std::vector<Diagonal>& all, const std::vector<int>& face)
{
    std::string out = "{";
    for (size_t i = 0; i < face.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(all[face[i]].a) + "-" + std::to_string(all[face[i]].b);
    }
    return out + "}";
}

} // namespace

FaceLattice associahedron(int mdim)
{
    if (mdim < 0) throw DomainError("associahedron: dimension must be >= 0");
    const int q = mdim + 3; // polygon vertices

    std::vector<Diagonal> diags;
    for (int a = 0; a < q; ++a)
        for (int b = a + 2; b < q; ++b)
            if (!(a == 0 && b == q - 1)) diags.push_back({a, b});

    std::vector<std::vector<char>> ok(diags.size(), std::vector<char>(diags.size(), 1));
    for (size_t i = 0; i < diags.size(); ++i)
        for (size_t j = 0; j < diags.size(); ++j)
            if (diagonals_cross(diags[i], diags[j])) ok[i][j] = 0;

    // All noncrossing subsets, indices increasing.
    std::map<std::vector<int>, int> id_of;
    std::vector<std::vector<int>> faces;
    std::vector<int> cur;
    auto record = [&]() {
        id_of.emplace(cur, static_cast<int>(faces.size()));
        faces.push_back(cur);
    };
    std::function<void(size_t)> rec = [&](size_t from) {
        record();
        for (size_t d = from; d < diags.size(); ++d) {
            bool fits = true;
            for (int e : cur)
                if (!ok[static_cast<size_t>(e)][d]) { fits = false; break; }
            if (!fits) continue;
            cur.push_back(static_cast<int>(d));
            rec(d + 1);
            cur.pop_back();
        }
    };
    rec(0);

    FaceLattice fl;
    for (const auto& f : faces) {
        fl.dims.push_back(mdim - static_cast<int>(f.size()));
        fl.labels.push_back(diagonal_set_label(diags, f));
    }
    for (size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        for (size_t d = 0; d < diags.size(); ++d) {
            if (std::binary_search(f.begin(), f.end(), static_cast<int>(d))) continue;
            bool fits = true;
            for (int e : f)
                if (!ok[static_cast<size_t>(e)][d]) { fits = false; break; }
            if (!fits) continue;
            std::vector<int> child = f;
            child.insert(std::lower_bound(child.begin(), child.end(), static_cast<int>(d)),
                         static_cast<int>(d));
            fl.covers.push_back({static_cast<int>(fi), id_of.at(child)});
        }
    }
    std::sort(fl.covers.begin(), fl.covers.end());
    return fl;
}

Int noncrossing_diagonal_sets(int p, int k)
{
    if (p < 3) throw DomainError("noncrossing_diagonal_sets: polygon needs p >= 3 vertices");
    if (k < 0) throw DomainError("noncrossing_diagonal_sets: k must be >= 0");
    const Int num = gen_binom(Int(p - 3), static_cast<unsigned>(k))
                    * gen_binom(Int(p + k - 1), static_cast<unsigned>(k));
    Int q, r;
    boost::multiprecision::divide_qr(num, Int(k + 1), q, r);
    if (r != 0) throw InternalError("noncrossing_diagonal_sets: count formula not integral");
    return q;
}

Int catalan_bracketings(int n)
{
    if (n < 0) throw DomainError("catalan_bracketings: n must be >= 0");
    // T(m) = #complete bracketings of m letters; C_n = T(n+1).
    std::vector<Int> t(static_cast<size_t>(n) + 2, 0);
    t[1] = 1;
    for (int m = 2; m <= n + 1; ++m)
        for (int i = 1; i < m; ++i) t[m] += t[i] * t[m - i];
    return t[static_cast<size_t>(n) + 1];
}

// ==================================================== poset isomorphism

std::vector<int> FaceLattice::f_vector() const
{
    std::vector<int> f(dims.empty() ? 0 : top_dim() + 1, 0);
    for (int d : dims) {
        if (d < 0) throw DomainError("FaceLattice: negative face dimension");
        f[d] += 1;
    }
    return f;
}

int FaceLattice::top_dim() const
{
    if (dims.empty()) throw DomainError("FaceLattice: empty lattice");
    return *std::max_element(dims.begin(), dims.end());
}

namespace {

// One round of neighborhood color refinement over both posets at once, so
// color ids are comparable across them. Returns true when colors split.
bool refine(const std::vector<std::vector<int>>& up, const std::vector<std::vector<int>>& down,
            std::vector<int>& color, size_t offset_b)
{
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::map<Sig, int> palette;
    std::vector<int> next(color.size());
    for (size_t i = 0; i < color.size(); ++i) {
        std::vector<int> uc, dc;
        for (int j : up[i]) uc.push_back(color[j]);
        for (int j : down[i]) dc.push_back(color[j]);
        std::sort(uc.begin(), uc.end());
        std::sort(dc.begin(), dc.end());
        Sig sig{color[i], std::move(uc), std::move(dc)};
        auto it = palette.find(sig);
        if (it == palette.end())
            it = palette.emplace(std::move(sig), static_cast<int>(palette.size())).first;
        next[i] = it->second;
    }
    (void)offset_b;
    const bool changed = next != color;
    color = std::move(next);
    return changed;
}

} // namespace

PosetIsoResult poset_isomorphism(const FaceLattice& a, const FaceLattice& b)
{
    PosetIsoResult res;
    if (a.dims.size() != b.dims.size()) {
        res.counterexample = "element counts differ: " + std::to_string(a.dims.size()) + " vs "
                             + std::to_string(b.dims.size());
        return res;
    }
    if (a.covers.size() != b.covers.size()) {
        res.counterexample = "cover counts differ: " + std::to_string(a.covers.size()) + " vs "
                             + std::to_string(b.covers.size());
        return res;
    }
    const int na = static_cast<int>(a.dims.size());
    if (na == 0) {
        res.isomorphic = true;
        return res;
    }

    // Combined graph: a's elements, then b's shifted by na.
    std::vector<std::vector<int>> up(2 * na), down(2 * na);
    std::set<std::pair<int, int>> cov_a(a.covers.begin(), a.covers.end());
    std::set<std::pair<int, int>> cov_b(b.covers.begin(), b.covers.end());
    for (const auto& [x, y] : a.covers) {
        down[x].push_back(y);
        up[y].push_back(x);
    }
    for (const auto& [x, y] : b.covers) {
        down[na + x].push_back(na + y);
        up[na + y].push_back(na + x);
    }

    std::vector<int> color(2 * static_cast<size_t>(na));
    {
        std::map<int, int> dim_palette;
        for (int i = 0; i < na; ++i) dim_palette.emplace(a.dims[i], 0);
        for (int i = 0; i < na; ++i) dim_palette.emplace(b.dims[i], 0);
        int next = 0;
        for (auto& [d, c] : dim_palette) c = next++;
        for (int i = 0; i < na; ++i) color[i] = dim_palette[a.dims[i]];
        for (int i = 0; i < na; ++i) color[na + i] = dim_palette[b.dims[i]];
    }
    while (refine(up, down, color, static_cast<size_t>(na))) {}

    // Color histograms must agree between the two sides.
    std::map<int, int> hist;
    for (int i = 0; i < na; ++i) {
        hist[color[i]] += 1;
        hist[color[na + i]] -= 1;
    }
    for (const auto& [c, excess] : hist)
        if (excess != 0) {
            int witness = 0;
            for (int i = 0; i < na; ++i)
                if (color[i] == c || color[na + i] == c) { witness = i; break; }
            res.counterexample =
                "refinement signature multiset differs (excess " + std::to_string(excess)
                + " on one side for the class of element " + std::to_string(witness)
                + ", dim " + std::to_string(a.dims[witness]) + ")";
            return res;
        }

    // Backtracking over color classes, most constrained first.
    std::vector<int> order(na);
    std::iota(order.begin(), order.end(), 0);
    std::map<int, int> class_size;
    for (int i = 0; i < na; ++i) class_size[color[i]] += 1;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::make_tuple(class_size[color[x]], color[x], x)
               < std::make_tuple(class_size[color[y]], color[y], y);
    });

    std::vector<int> map_ab(na, -1), used_b(na, 0);
    std::function<bool(int)> place = [&](int k) -> bool {
        if (k == na) return true;
        const int x = order[k];
        for (int y = 0; y < na; ++y) {
            if (used_b[y] || color[na + y] != color[x]) continue;
            bool fits = true;
            for (int q = 0; q < k && fits; ++q) {
                const int x2 = order[q], y2 = map_ab[x2];
                if (cov_a.count({x, x2}) != cov_b.count({y, y2})) fits = false;
                if (cov_a.count({x2, x}) != cov_b.count({y2, y})) fits = false;
            }
            if (!fits) continue;
            map_ab[x] = y;
            used_b[y] = 1;
            if (place(k + 1)) return true;
            map_ab[x] = -1;
            used_b[y] = 0;
        }
        return false;
    };
    if (!place(0)) {
        res.counterexample = "no cover-preserving bijection exists within the refined classes";
        return res;
    }

    // Independent verification of the certificate.
    for (int i = 0; i < na; ++i)
        if (a.dims[i] != b.dims[map_ab[i]])
            throw InternalError("poset_isomorphism: certificate breaks the grading");
    for (const auto& [x, y] : a.covers)
        if (!cov_b.count({map_ab[x], map_ab[y]}))
            throw InternalError("poset_isomorphism: certificate breaks a covering relation");

    res.isomorphic = true;
    res.mapping = std::move(map_ab);
    return res;
}

FaceLattice face_lattice_of(const StrataSet& ss)
{
    FaceLattice fl;
    fl.dims = ss.dims;
    for (const auto& s : ss.strata) fl.labels.push_back(to_string(s));
    for (const auto& [x, y] : ss.covers) {
        if (ss.dims[x] != ss.dims[y] + 1)
            throw DomainError("face_lattice_of: cover " + std::to_string(x) + "->"
                              + std::to_string(y) + " drops dimension by "
                              + std::to_string(ss.dims[x] - ss.dims[y])
                              + "; the poset is not a face lattice");
        fl.covers.push_back({x, y});
    }
    return fl;
}

PosetIsoResult check_k5_identification(const StrataSet& poset)
{
    const FaceLattice fl = face_lattice_of(poset);
    return poset_isomorphism(fl, associahedron(fl.top_dim()));
}

Int disc_component_count(int m)
{
    if (m < 3)
        throw DomainError("disc_component_count: m must be >= 3, got m=" + std::to_string(m));
    return factorial(static_cast<unsigned>(m - 1));
}

// ==================================================================== dot

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string dot_graph(const std::vector<int>& dims, const std::vector<std::string>& labels,
                      const std::vector<std::pair<int, int>>& covers)
{
    std::ostringstream os;
    os << "digraph poset {\n  rankdir=BT;\n  node [shape=box,fontsize=10];\n";
    for (size_t i = 0; i < dims.size(); ++i)
        os << "  n" << i << " [label=\"[" << i << "] dim " << dims[i] << "\\n"
           << dot_escape(labels[i]) << "\"];\n";
    for (const auto& [x, y] : covers) os << "  n" << y << " -> n" << x << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace

std::string to_dot(const FaceLattice& fl)
{
    return dot_graph(fl.dims, fl.labels, fl.covers);
}

std::string to_dot(const StrataSet& ss)
{
    std::vector<std::string> labels;
    for (const auto& s : ss.strata) labels.push_back(to_string(s));
    return dot_graph(ss.dims, labels, ss.covers);
}

} // namespace moduli
