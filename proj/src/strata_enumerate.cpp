#include "moduli/strata.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace moduli {

namespace {

// Cuts a live circle at gap positions gi, gj (indices into gap_labels),
// producing the two arcs as circles that each pick up one node endpoint.
// The arc after gap gi runs up to gap gj and joins endpoint e1; the
// complementary arc joins e2. gi == gj puts every slot on the e2 side.
std::pair<BoundaryCircle, BoundaryCircle> cut_circle(const BoundaryCircle& c, int gi, int gj,
                                                     int e1, int e2)
{
    const int sN = static_cast<int>(c.slots.size());
    int k1 = 0, k2 = 0;
    if (sN > 0) {
        if (gi == gj) {
            k1 = 0;
            k2 = sN;
        } else {
            k1 = ((gj - gi) % sN + sN) % sN;
            k2 = sN - k1;
        }
    }
    BoundaryCircle a, b;
    a.slots.push_back(BoundarySlot::make_end(e1));
    a.gap_labels.push_back(c.gap_labels[sN ? gi : 0]);
    for (int q = 1; q <= k1; ++q) {
        a.slots.push_back(c.slots[(gi + q) % sN]);
        a.gap_labels.push_back(q < k1 ? c.gap_labels[(gi + q) % sN] : c.gap_labels[gj]);
    }
    b.slots.push_back(BoundarySlot::make_end(e2));
    b.gap_labels.push_back(c.gap_labels[sN ? gj : 0]);
    for (int q = 1; q <= k2; ++q) {
        b.slots.push_back(c.slots[(gj + q) % sN]);
        b.gap_labels.push_back(q < k2 ? c.gap_labels[(gj + q) % sN] : c.gap_labels[gi]);
    }
    return {std::move(a), std::move(b)};
}

// Fuses live circles c1, c2 of one piece into a single circle through a new
// node: cut gap gi of c1 and gap gj of c2, route each strand into the other
// circle through the endpoints. Smoothing the node recovers c1 and c2.
BoundaryCircle fuse_circles(const BoundaryCircle& c1, int gi, const BoundaryCircle& c2, int gj,
                            int e1, int e2)
{
    const int s1 = static_cast<int>(c1.slots.size());
    const int s2 = static_cast<int>(c2.slots.size());
    BoundaryCircle z;
    z.slots.push_back(BoundarySlot::make_end(e1));
    z.gap_labels.push_back(c1.gap_labels[s1 ? gi : 0]);
    for (int q = 1; q <= s1; ++q) {
        z.slots.push_back(c1.slots[(gi + q) % s1]);
        z.gap_labels.push_back(q < s1 ? c1.gap_labels[(gi + q) % s1] : c1.gap_labels[gi]);
    }
    z.slots.push_back(BoundarySlot::make_end(e2));
    z.gap_labels.push_back(c2.gap_labels[s2 ? gj : 0]);
    for (int q = 1; q <= s2; ++q) {
        z.slots.push_back(c2.slots[(gj + q) % s2]);
        z.gap_labels.push_back(q < s2 ? c2.gap_labels[(gj + q) % s2] : c2.gap_labels[gj]);
    }
    return z;
}

int gap_count(const BoundaryCircle& c)
{
    return static_cast<int>(c.gap_labels.size()); // == max(1, slots)
}

struct ChildSink {
    const StratumGraph& parent;
    int parent_dim;
    std::vector<std::pair<MoveKind, StratumGraph>> out;
    std::set<std::pair<int, std::vector<int>>> seen;

    void add(MoveKind k, StratumGraph raw)
    {
        StratumGraph child = canonical_form(raw);
        const auto key = std::make_pair(static_cast<int>(k), canonical_encoding(child));
        if (!seen.insert(key).second) return;
        validate(child);
        const int drop =
            (k == MoveKind::pinch_interior || k == MoveKind::split_interior) ? 2 : 1;
        if (stratum_dim(child) != parent_dim - drop)
            throw InternalError(std::string("degenerations: ") + to_string(k)
                                + " changed dimension by "
                                + std::to_string(parent_dim - stratum_dim(child)));
        out.push_back({k, std::move(child)});
    }
};

} // namespace

std::vector<std::pair<MoveKind, StratumGraph>> degenerations(const StratumGraph& s)
{
    ChildSink sink{s, stratum_dim(s), {}, {}};
    const int np = static_cast<int>(s.pieces.size());

    for (int pi = 0; pi < np; ++pi) {
        const Piece& p = s.pieces[pi];
        const int nc = static_cast<int>(p.circles.size());
        std::vector<int> live;
        for (int ci = 0; ci < nc; ++ci)
            if (!p.circles[ci].collapsed) live.push_back(ci);

        // -- collapse_circle: an unmarked circle shrinks to a point.
        for (int ci : live)
            if (p.circles[ci].slots.empty()) {
                StratumGraph child = s;
                BoundaryCircle& c = child.pieces[pi].circles[ci];
                c.collapsed = true;
                c.label = c.gap_labels[0];
                c.slots.clear();
                c.gap_labels.clear();
                sink.add(MoveKind::collapse_circle, std::move(child));
            }

        // -- join_circles: two circles of this piece meet at a point.
        for (size_t x = 0; x < live.size(); ++x)
            for (size_t y = x + 1; y < live.size(); ++y) {
                const BoundaryCircle &c1 = p.circles[live[x]], &c2 = p.circles[live[y]];
                for (int gi = 0; gi < gap_count(c1); ++gi)
                    for (int gj = 0; gj < gap_count(c2); ++gj) {
                        StratumGraph child = s;
                        const int e1 = 2 * s.boundary_node_count;
                        child.pieces[pi].circles[live[x]] =
                            fuse_circles(c1, gi, c2, gj, e1, e1 + 1);
                        child.pieces[pi].circles.erase(child.pieces[pi].circles.begin()
                                                       + live[y]);
                        child.boundary_node_count += 1;
                        sink.add(MoveKind::join_circles, std::move(child));
                    }
            }

        // -- pinch_circle: a handle degenerates onto the boundary; one circle
        //    self-touches and the genus drops.
        if (p.genus >= 1)
            for (int ci : live) {
                const BoundaryCircle& c = p.circles[ci];
                for (int gi = 0; gi < gap_count(c); ++gi)
                    for (int gj = gi; gj < gap_count(c); ++gj) {
                        StratumGraph child = s;
                        const int e1 = 2 * s.boundary_node_count;
                        auto [a, b] = cut_circle(c, gi, gj, e1, e1 + 1);
                        child.pieces[pi].genus -= 1;
                        child.pieces[pi].circles[ci] = std::move(a);
                        child.pieces[pi].circles.push_back(std::move(b));
                        child.boundary_node_count += 1;
                        sink.add(MoveKind::pinch_circle, std::move(child));
                    }
            }

        // -- split_boundary: the piece separates into two pieces joined at a
        //    boundary point; genus, remaining circles and interior specials
        //    distribute over the halves.
        std::vector<int> ints(p.interior.size());
        std::iota(ints.begin(), ints.end(), 0);
        for (int ci : live) {
            const BoundaryCircle& c = p.circles[ci];
            std::vector<int> others;
            for (int cj = 0; cj < nc; ++cj)
                if (cj != ci) others.push_back(cj);
            for (int gi = 0; gi < gap_count(c); ++gi)
                for (int gj = 0; gj < gap_count(c); ++gj)
                    for (int ga = 0; ga <= p.genus; ++ga)
                        for (uint32_t cm = 0; cm < (1u << others.size()); ++cm)
                            for (uint32_t im = 0; im < (1u << ints.size()); ++im) {
                                const int e1 = 2 * s.boundary_node_count;
                                auto [ca, cb] = cut_circle(c, gi, gj, e1, e1 + 1);
                                Piece a, b;
                                a.kind = b.kind = Piece::Kind::bordered;
                                a.genus = ga;
                                b.genus = p.genus - ga;
                                a.circles.push_back(std::move(ca));
                                b.circles.push_back(std::move(cb));
                                for (size_t q = 0; q < others.size(); ++q)
                                    ((cm >> q) & 1u ? b : a)
                                        .circles.push_back(p.circles[others[q]]);
                                for (size_t q = 0; q < ints.size(); ++q)
                                    ((im >> q) & 1u ? b : a)
                                        .interior.push_back(p.interior[ints[q]]);
                                if (!is_piece_stable(a) || !is_piece_stable(b)) continue;
                                StratumGraph child = s;
                                child.pieces[pi] = std::move(a);
                                child.pieces.push_back(std::move(b));
                                child.boundary_node_count += 1;
                                sink.add(MoveKind::split_boundary, std::move(child));
                            }
        }

        // -- pinch_interior: an interior handle degenerates to a node.
        if (p.genus >= 1) {
            StratumGraph child = s;
            const int e1 = 2 * s.interior_node_count;
            child.pieces[pi].genus -= 1;
            child.pieces[pi].interior.push_back(InteriorSlot::make_end(e1));
            child.pieces[pi].interior.push_back(InteriorSlot::make_end(e1 + 1));
            child.interior_node_count += 1;
            sink.add(MoveKind::pinch_interior, std::move(child));
        }

        // -- split_interior: the piece separates into two pieces joined at an
        //    interior point; a half with no circles closes up.
        for (int ga = 0; ga <= p.genus; ++ga)
            for (uint32_t cm = 0; cm < (1u << nc); ++cm)
                for (uint32_t im = 0; im < (1u << ints.size()); ++im) {
                    const int e1 = 2 * s.interior_node_count;
                    Piece a, b;
                    a.genus = ga;
                    b.genus = p.genus - ga;
                    for (int q = 0; q < nc; ++q)
                        ((cm >> q) & 1u ? b : a).circles.push_back(p.circles[q]);
                    for (size_t q = 0; q < ints.size(); ++q)
                        ((im >> q) & 1u ? b : a).interior.push_back(p.interior[ints[q]]);
                    a.interior.push_back(InteriorSlot::make_end(e1));
                    b.interior.push_back(InteriorSlot::make_end(e1 + 1));
                    a.kind = a.circles.empty() ? Piece::Kind::closed : Piece::Kind::bordered;
                    b.kind = b.circles.empty() ? Piece::Kind::closed : Piece::Kind::bordered;
                    if (!is_piece_stable(a) || !is_piece_stable(b)) continue;
                    StratumGraph child = s;
                    child.pieces[pi] = std::move(a);
                    child.pieces.push_back(std::move(b));
                    child.interior_node_count += 1;
                    sink.add(MoveKind::split_interior, std::move(child));
                }
    }

    return std::move(sink.out);
}

// ============================================================ enumeration

namespace {

StrataSet bfs_from_tops(std::vector<StratumGraph> tops)
{
    std::map<std::vector<int>, int> index;
    std::vector<StratumGraph> strata;
    std::vector<int> dims;
    std::deque<int> queue;
    std::set<std::tuple<int, int, int>> cover_set;

    for (auto& t : tops) {
        auto enc = canonical_encoding(t);
        if (index.count(enc)) continue;
        index.emplace(std::move(enc), static_cast<int>(strata.size()));
        dims.push_back(stratum_dim(t));
        queue.push_back(static_cast<int>(strata.size()));
        strata.push_back(std::move(t));
    }

    while (!queue.empty()) {
        const int at = queue.front();
        queue.pop_front();
        const StratumGraph parent = strata[at]; // copy: vector may reallocate
        for (auto& [kind, child] : degenerations(parent)) {
            auto enc = canonical_encoding(child);
            auto it = index.find(enc);
            int ci;
            if (it == index.end()) {
                ci = static_cast<int>(strata.size());
                index.emplace(std::move(enc), ci);
                dims.push_back(stratum_dim(child));
                strata.push_back(std::move(child));
                queue.push_back(ci);
            } else {
                ci = it->second;
            }
            cover_set.insert({at, ci, static_cast<int>(kind)});
        }
    }

    // Order strata by descending dimension, then by encoding.
    const int total = static_cast<int>(strata.size());
    std::vector<std::pair<std::pair<int, std::vector<int>>, int>> order;
    for (const auto& [enc, idx] : index) order.push_back({{-dims[idx], enc}, idx});
    std::sort(order.begin(), order.end());

    std::vector<int> where(total);
    StrataSet out;
    for (int pos = 0; pos < total; ++pos) {
        const int old = order[pos].second;
        where[old] = pos;
        out.strata.push_back(std::move(strata[old]));
        out.dims.push_back(dims[old]);
    }
    for (const auto& [a, b, k] : cover_set) {
        out.covers.push_back({where[a], where[b]});
        out.cover_kinds.push_back(static_cast<MoveKind>(k));
    }
    std::vector<int> perm(out.covers.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        return std::make_tuple(out.covers[x], static_cast<int>(out.cover_kinds[x]))
               < std::make_tuple(out.covers[y], static_cast<int>(out.cover_kinds[y]));
    });
    std::vector<std::pair<int, int>> cv;
    std::vector<MoveKind> ck;
    for (int q : perm) {
        cv.push_back(out.covers[q]);
        ck.push_back(out.cover_kinds[q]);
    }
    out.covers = std::move(cv);
    out.cover_kinds = std::move(ck);
    return out;
}

} // namespace

StrataSet enumerate_strata(const MarkedTopType& t)
{
    validate(t);
    const int g = t.base.g, h = t.base.h;

    // Per-label circle variants: all cyclic orders of that label's marks,
    // with the first mark pinned to kill the rotation.
    std::vector<std::vector<BoundaryCircle>> variants(h);
    for (int i = 1; i <= h; ++i) {
        const int mi = t.m[i - 1];
        if (mi == 0) {
            BoundaryCircle c;
            c.gap_labels = {i};
            variants[i - 1].push_back(std::move(c));
            continue;
        }
        std::vector<int> rest;
        for (int k = 2; k <= mi; ++k) rest.push_back(k);
        do {
            BoundaryCircle c;
            c.slots.push_back(BoundarySlot::make_mark(i, 1));
            c.gap_labels.push_back(i);
            for (int k : rest) {
                c.slots.push_back(BoundarySlot::make_mark(i, k));
                c.gap_labels.push_back(i);
            }
            variants[i - 1].push_back(std::move(c));
        } while (std::next_permutation(rest.begin(), rest.end()));
    }

    std::vector<StratumGraph> tops;
    std::vector<size_t> pick(h, 0);
    for (;;) {
        StratumGraph top;
        top.g = g;
        top.h = h;
        top.n = t.n;
        top.m = t.m;
        Piece p;
        p.kind = Piece::Kind::bordered;
        p.genus = g;
        for (int i = 0; i < h; ++i) p.circles.push_back(variants[i][pick[i]]);
        for (int k = 1; k <= t.n; ++k) p.interior.push_back(InteriorSlot::make_mark(k));
        if (!is_piece_stable(p))
            throw DomainError("enumerate_strata: unstable marked type " + to_string(t.base)
                              + " with n=" + std::to_string(t.n));
        top.pieces.push_back(std::move(p));
        tops.push_back(canonical_form(top));

        int at = h - 1;
        while (at >= 0 && ++pick[at] == variants[at].size()) pick[at--] = 0;
        if (at < 0) break;
    }
    for (const auto& s : tops) validate(s);
    return bfs_from_tops(std::move(tops));
}

StrataSet enumerate_closed_strata(int g, int n)
{
    if (g < 0) throw DomainError("enumerate_closed_strata: g must be >= 0");
    if (n < 0) throw DomainError("enumerate_closed_strata: n must be >= 0");
    if (2 * g - 2 + n <= 0)
        throw DomainError("enumerate_closed_strata: unstable type g=" + std::to_string(g)
                          + ", n=" + std::to_string(n));
    StratumGraph top;
    top.g = g;
    top.h = 0;
    top.n = n;
    Piece p;
    p.kind = Piece::Kind::closed;
    p.genus = g;
    for (int k = 1; k <= n; ++k) p.interior.push_back(InteriorSlot::make_mark(k));
    top.pieces.push_back(std::move(p));
    StratumGraph c = canonical_form(top);
    validate(c);
    return bfs_from_tops({std::move(c)});
}

StrataSet degeneration_poset(const MarkedTopType& t)
{
    return enumerate_strata(t);
}

std::vector<int> StrataSet::counts_by_codim() const
{
    if (dims.empty()) return {};
    const int top = dims.front(), low = dims.back();
    std::vector<int> counts(top - low + 1, 0);
    for (int d : dims) counts[top - d] += 1;
    return counts;
}

int StrataSet::top_dim() const
{
    if (dims.empty()) throw InternalError("StrataSet::top_dim: empty set");
    return dims.front();
}

} // namespace moduli
