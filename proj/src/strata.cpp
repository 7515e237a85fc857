#include "moduli/strata.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>

namespace moduli {

// ================================================================= pieces

int Piece::live_circle_count() const
{
    int out = 0;
    for (const auto& c : circles)
        if (!c.collapsed) ++out;
    return out;
}

int Piece::collapsed_circle_count() const
{
    return static_cast<int>(circles.size()) - live_circle_count();
}

int Piece::interior_special_count() const
{
    // A collapsed circle is one interior special point of its piece.
    return static_cast<int>(interior.size()) + collapsed_circle_count();
}

int Piece::boundary_special_count() const
{
    int out = 0;
    for (const auto& c : circles)
        if (!c.collapsed) out += static_cast<int>(c.slots.size());
    return out;
}

bool is_piece_stable(const Piece& p)
{
    // Doubled Euler-characteristic condition; reduces to 2g - 2 + s > 0 for
    // closed pieces (live == 0, boundary specials == 0).
    return 4 * p.genus + 2 * p.live_circle_count() - 4 + 2 * p.interior_special_count()
               + p.boundary_special_count()
           > 0;
}

int piece_dim(const Piece& p)
{
    // 6g + 3(live) - 6 + 2(interior specials) + (boundary specials); for a
    // closed piece this is 2(3g - 3 + s).
    return 6 * p.genus + 3 * p.live_circle_count() - 6 + 2 * p.interior_special_count()
           + p.boundary_special_count();
}

int collapsed_count(const StratumGraph& s)
{
    int out = 0;
    for (const auto& p : s.pieces) out += p.collapsed_circle_count();
    return out;
}

// ============================================================= resolution

namespace {

struct RItem {
    enum Kind : uint8_t { gap, mark, end };
    Kind kind;
    int a = 0;
    int b = 0;
};

// Live circles flattened to cyclic item lists [slot, gap-after-slot, ...];
// an empty live circle is a single gap.
std::vector<std::vector<RItem>> item_circles(const StratumGraph& s)
{
    std::vector<std::vector<RItem>> out;
    for (const auto& p : s.pieces)
        for (const auto& c : p.circles) {
            if (c.collapsed) continue;
            std::vector<RItem> items;
            if (c.slots.empty()) {
                items.push_back({RItem::gap, c.gap_labels.at(0), 0});
            } else {
                for (size_t q = 0; q < c.slots.size(); ++q) {
                    const auto& sl = c.slots[q];
                    if (sl.kind == BoundarySlot::Kind::mark)
                        items.push_back({RItem::mark, sl.a, sl.b});
                    else
                        items.push_back({RItem::end, sl.a, 0});
                    items.push_back({RItem::gap, c.gap_labels.at(q), 0});
                }
            }
            out.push_back(std::move(items));
        }
    return out;
}

// Cyclic slice of v: indices strictly after `from` and strictly before `to`.
std::vector<RItem> cyclic_between(const std::vector<RItem>& v, size_t from, size_t to)
{
    std::vector<RItem> out;
    const size_t n = v.size();
    for (size_t q = (from + 1) % n; q != to; q = (q + 1) % n) out.push_back(v[q]);
    return out;
}

} // namespace

Resolution smooth_boundary(const StratumGraph& s)
{
    auto circles = item_circles(s);
    Resolution res;

    for (int v = 0; v < s.boundary_node_count; ++v) {
        const int e1 = 2 * v, e2 = 2 * v + 1;
        int c1 = -1, c2 = -1;
        size_t p1 = 0, p2 = 0;
        for (size_t ci = 0; ci < circles.size(); ++ci)
            for (size_t q = 0; q < circles[ci].size(); ++q)
                if (circles[ci][q].kind == RItem::end) {
                    if (circles[ci][q].a == e1) { c1 = static_cast<int>(ci); p1 = q; }
                    if (circles[ci][q].a == e2) { c2 = static_cast<int>(ci); p2 = q; }
                }
        if (c1 < 0 || c2 < 0)
            throw DomainError("smooth_boundary: boundary node " + std::to_string(v)
                              + " is missing an endpoint slot");
        if (c1 == c2) {
            // Both endpoints on one traversal circle: the resplice splits it.
            auto& c = circles[c1];
            std::vector<RItem> a = cyclic_between(c, p1, p2);
            std::vector<RItem> b = cyclic_between(c, p2, p1);
            circles[c1] = std::move(a);
            circles.push_back(std::move(b));
            ++res.splits;
        } else {
            // Endpoints on two circles: the resplice merges them.
            std::vector<RItem> merged = cyclic_between(circles[c1], p1, p1);
            std::vector<RItem> tail = cyclic_between(circles[c2], p2, p2);
            merged.insert(merged.end(), tail.begin(), tail.end());
            const size_t hi = static_cast<size_t>(std::max(c1, c2));
            const size_t lo = static_cast<size_t>(std::min(c1, c2));
            circles[lo] = std::move(merged);
            circles.erase(circles.begin() + static_cast<long>(hi));
            ++res.merges;
        }
    }

    for (const auto& c : circles) {
        ResolvedCircle rc;
        int label = 0;
        for (const auto& it : c) {
            if (it.kind == RItem::end)
                throw InternalError("smooth_boundary: endpoint survived resolution");
            if (it.kind == RItem::gap) {
                if (label == 0) label = it.a;
                else if (label != it.a)
                    throw DomainError("smooth_boundary: one resolved circle carries gap labels "
                                      + std::to_string(label) + " and " + std::to_string(it.a));
            } else {
                rc.marks.push_back(BoundarySlot::make_mark(it.a, it.b));
            }
        }
        if (label == 0)
            throw InternalError("smooth_boundary: resolved circle with no gaps");
        for (const auto& mk : rc.marks)
            if (mk.a != label)
                throw DomainError("smooth_boundary: boundary mark (" + std::to_string(mk.a) + ","
                                  + std::to_string(mk.b) + ") lies on the circle labeled "
                                  + std::to_string(label));
        rc.label = label;
        // Normalize the rotation of the recorded cyclic order.
        if (!rc.marks.empty()) {
            size_t bestq = 0;
            auto less_rot = [&](size_t x, size_t y) {
                const size_t n = rc.marks.size();
                for (size_t q = 0; q < n; ++q) {
                    const auto &mx = rc.marks[(x + q) % n], &my = rc.marks[(y + q) % n];
                    if (mx.a != my.a) return mx.a < my.a;
                    if (mx.b != my.b) return mx.b < my.b;
                }
                return false;
            };
            for (size_t q = 1; q < rc.marks.size(); ++q)
                if (less_rot(q, bestq)) bestq = q;
            std::rotate(rc.marks.begin(), rc.marks.begin() + static_cast<long>(bestq),
                        rc.marks.end());
        }
        res.circles.push_back(std::move(rc));
    }

    for (const auto& p : s.pieces)
        for (const auto& c : p.circles)
            if (c.collapsed) {
                ResolvedCircle rc;
                rc.label = c.label;
                rc.degenerate = true;
                res.circles.push_back(std::move(rc));
            }

    std::sort(res.circles.begin(), res.circles.end(),
              [](const ResolvedCircle& x, const ResolvedCircle& y) { return x.label < y.label; });
    return res;
}

int double_genus(const StratumGraph& s)
{
    int terms = 0;
    for (const auto& p : s.pieces) terms += 2 * p.genus + p.live_circle_count() - 2;
    const int l1 = s.boundary_node_count + collapsed_count(s);
    return terms + 2 * s.interior_node_count + l1 + 1;
}

TopType total_type(const StratumGraph& s)
{
    const Resolution res = smooth_boundary(s);
    const int h_resolved = static_cast<int>(res.circles.size());

    // Route A: explicit resplice count + arithmetic genus of the double.
    const int gt = double_genus(s);
    const int twice_g = gt + 1 - h_resolved;
    if (twice_g < 0 || twice_g % 2 != 0)
        throw InternalError("total_type: double genus " + std::to_string(gt)
                            + " incompatible with " + std::to_string(h_resolved)
                            + " resolved circles");
    const int g_a = twice_g / 2;

    // Route B: component/cycle counting. Each merging resplice contributes a
    // graph cycle; splits cancel against the cycles interior nodes create.
    int sum_genus = 0, sum_live = 0;
    for (const auto& p : s.pieces) {
        sum_genus += p.genus;
        sum_live += p.live_circle_count();
    }
    const int c = static_cast<int>(s.pieces.size());
    const int g_b = sum_genus + s.interior_node_count + res.merges + 1 - c;
    const int h_b = sum_live + collapsed_count(s) + res.splits - res.merges;

    if (g_a != g_b || h_resolved != h_b)
        throw InternalError("total_type: resplice route gives (" + std::to_string(g_a) + ","
                            + std::to_string(h_resolved) + ") but counting route gives ("
                            + std::to_string(g_b) + "," + std::to_string(h_b) + ")");
    return TopType{g_a, h_resolved};
}

int stratum_dim(const StratumGraph& s)
{
    int msum = std::accumulate(s.m.begin(), s.m.end(), 0);
    const int base = 6 * s.g + 3 * s.h - 6 + 2 * s.n + msum;
    const int l1 = s.boundary_node_count + collapsed_count(s);
    const int dim = base - 2 * s.interior_node_count - l1;

    int piece_sum = 0;
    for (const auto& p : s.pieces) piece_sum += piece_dim(p);
    if (piece_sum != dim)
        throw InternalError("stratum_dim: codimension count gives " + std::to_string(dim)
                            + " but per-piece dimensions sum to " + std::to_string(piece_sum));
    return dim;
}

// ============================================================== validation

void validate(const StratumGraph& s)
{
    if (s.g < 0) throw DomainError("StratumGraph: g must be >= 0, got g=" + std::to_string(s.g));
    if (s.h < 0) throw DomainError("StratumGraph: h must be >= 0, got h=" + std::to_string(s.h));
    if (s.n < 0) throw DomainError("StratumGraph: n must be >= 0, got n=" + std::to_string(s.n));
    if (static_cast<int>(s.m.size()) != s.h)
        throw DomainError("StratumGraph: m must have h entries, got " + std::to_string(s.m.size())
                          + " for h=" + std::to_string(s.h));
    for (int mi : s.m)
        if (mi < 0) throw DomainError("StratumGraph: m entries must be >= 0");
    if (s.pieces.empty()) throw DomainError("StratumGraph: needs at least one piece");
    if (s.interior_node_count < 0 || s.boundary_node_count < 0)
        throw DomainError("StratumGraph: node counts must be >= 0");

    std::vector<int> bseen(2 * s.boundary_node_count, 0), iseen(2 * s.interior_node_count, 0);
    std::vector<int> imark_seen(s.n + 1, 0);
    std::vector<std::vector<int>> bmark_seen;
    for (int i = 0; i < s.h; ++i) bmark_seen.push_back(std::vector<int>(s.m[i] + 1, 0));

    for (const auto& p : s.pieces) {
        if (p.genus < 0) throw DomainError("Piece: genus must be >= 0");
        const bool closed = p.kind == Piece::Kind::closed;
        if (closed != p.circles.empty())
            throw DomainError("Piece: circles must be empty exactly for closed pieces");
        for (const auto& c : p.circles) {
            if (c.collapsed) {
                if (!c.slots.empty() || !c.gap_labels.empty())
                    throw DomainError("BoundaryCircle: collapsed circles carry no slots");
                if (c.label < 1 || c.label > s.h)
                    throw DomainError("BoundaryCircle: collapsed label " + std::to_string(c.label)
                                      + " outside 1.." + std::to_string(s.h));
            } else {
                const size_t gaps = c.slots.empty() ? 1 : c.slots.size();
                if (c.gap_labels.size() != gaps)
                    throw DomainError("BoundaryCircle: expected " + std::to_string(gaps)
                                      + " gap labels, got " + std::to_string(c.gap_labels.size()));
                for (int gl : c.gap_labels)
                    if (gl < 1 || gl > s.h)
                        throw DomainError("BoundaryCircle: gap label " + std::to_string(gl)
                                          + " outside 1.." + std::to_string(s.h));
                for (const auto& sl : c.slots) {
                    if (sl.kind == BoundarySlot::Kind::mark) {
                        if (sl.a < 1 || sl.a > s.h || sl.b < 1 || sl.b > s.m[sl.a - 1])
                            throw DomainError("BoundarySlot: mark (" + std::to_string(sl.a) + ","
                                              + std::to_string(sl.b) + ") out of range");
                        bmark_seen[sl.a - 1][sl.b] += 1;
                    } else {
                        if (sl.a < 0 || sl.a >= 2 * s.boundary_node_count)
                            throw DomainError("BoundarySlot: endpoint id " + std::to_string(sl.a)
                                              + " out of range");
                        bseen[sl.a] += 1;
                    }
                }
            }
        }
        for (const auto& is : p.interior) {
            if (is.kind == InteriorSlot::Kind::mark) {
                if (is.id < 1 || is.id > s.n)
                    throw DomainError("InteriorSlot: mark " + std::to_string(is.id)
                                      + " outside 1.." + std::to_string(s.n));
                imark_seen[is.id] += 1;
            } else {
                if (is.id < 0 || is.id >= 2 * s.interior_node_count)
                    throw DomainError("InteriorSlot: endpoint id " + std::to_string(is.id)
                                      + " out of range");
                iseen[is.id] += 1;
            }
        }
        if (!is_piece_stable(p))
            throw DomainError("StratumGraph: unstable piece (genus " + std::to_string(p.genus)
                              + ", " + std::to_string(p.circles.size()) + " circles, "
                              + std::to_string(p.interior_special_count()) + "+"
                              + std::to_string(p.boundary_special_count()) + " specials)");
    }

    for (int e = 0; e < 2 * s.boundary_node_count; ++e)
        if (bseen[e] != 1)
            throw DomainError("StratumGraph: boundary endpoint " + std::to_string(e) + " used "
                              + std::to_string(bseen[e]) + " times");
    for (int e = 0; e < 2 * s.interior_node_count; ++e)
        if (iseen[e] != 1)
            throw DomainError("StratumGraph: interior endpoint " + std::to_string(e) + " used "
                              + std::to_string(iseen[e]) + " times");
    for (int i = 1; i <= s.n; ++i)
        if (imark_seen[i] != 1)
            throw DomainError("StratumGraph: interior mark " + std::to_string(i) + " used "
                              + std::to_string(imark_seen[i]) + " times");
    for (int i = 0; i < s.h; ++i)
        for (int k = 1; k <= s.m[i]; ++k)
            if (bmark_seen[i][k] != 1)
                throw DomainError("StratumGraph: boundary mark (" + std::to_string(i + 1) + ","
                                  + std::to_string(k) + ") used "
                                  + std::to_string(bmark_seen[i][k]) + " times");

    // Connectivity through nodes (collapsed circles never connect pieces).
    {
        const int np = static_cast<int>(s.pieces.size());
        std::vector<int> parent(np);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto piece_of_bend = [&](int e) {
            for (int pi = 0; pi < np; ++pi)
                for (const auto& c : s.pieces[pi].circles)
                    for (const auto& sl : c.slots)
                        if (sl.kind == BoundarySlot::Kind::node_end && sl.a == e) return pi;
            return -1;
        };
        auto piece_of_iend = [&](int e) {
            for (int pi = 0; pi < np; ++pi)
                for (const auto& is : s.pieces[pi].interior)
                    if (is.kind == InteriorSlot::Kind::node_end && is.id == e) return pi;
            return -1;
        };
        for (int v = 0; v < s.boundary_node_count; ++v)
            parent[find(piece_of_bend(2 * v))] = find(piece_of_bend(2 * v + 1));
        for (int v = 0; v < s.interior_node_count; ++v)
            parent[find(piece_of_iend(2 * v))] = find(piece_of_iend(2 * v + 1));
        for (int pi = 1; pi < np; ++pi)
            if (find(pi) != find(0))
                throw DomainError("StratumGraph: pieces are not connected through nodes");
    }

    // Resolution consistency + label bijection.
    const Resolution res = smooth_boundary(s);
    std::vector<int> label_seen(s.h + 1, 0);
    for (const auto& rc : res.circles) {
        if (rc.label < 1 || rc.label > s.h)
            throw DomainError("StratumGraph: resolved circle labeled " + std::to_string(rc.label)
                              + " outside 1.." + std::to_string(s.h));
        label_seen[rc.label] += 1;
    }
    for (int i = 1; i <= s.h; ++i)
        if (label_seen[i] != 1)
            throw DomainError("StratumGraph: boundary label " + std::to_string(i) + " carried by "
                              + std::to_string(label_seen[i]) + " resolved circles");

    const TopType tt = total_type(s);
    if (tt.g != s.g || tt.h != s.h)
        throw DomainError("StratumGraph: declared type (" + std::to_string(s.g) + ","
                          + std::to_string(s.h) + ") but smoothing has type ("
                          + std::to_string(tt.g) + "," + std::to_string(tt.h) + ")");

    stratum_dim(s); // runs the per-piece cross-check
}

// ========================================================== canonical form

namespace {

// Iso-invariant local key of a circle: ignores endpoint ids and rotation.
std::vector<int> circle_key(const BoundaryCircle& c)
{
    std::vector<int> key;
    if (c.collapsed) {
        key = {0, c.label};
        return key;
    }
    key = {1, static_cast<int>(c.slots.size())};
    std::vector<std::array<int, 3>> slot_keys;
    for (const auto& sl : c.slots) {
        if (sl.kind == BoundarySlot::Kind::mark) slot_keys.push_back({1, sl.a, sl.b});
        else slot_keys.push_back({2, 0, 0});
    }
    std::sort(slot_keys.begin(), slot_keys.end());
    for (const auto& sk : slot_keys) key.insert(key.end(), sk.begin(), sk.end());
    std::vector<int> gl = c.gap_labels;
    std::sort(gl.begin(), gl.end());
    key.insert(key.end(), gl.begin(), gl.end());
    return key;
}

std::vector<int> piece_key(const Piece& p)
{
    std::vector<int> key = {p.kind == Piece::Kind::closed ? 0 : 1, p.genus,
                            static_cast<int>(p.circles.size()),
                            static_cast<int>(p.interior.size())};
    std::vector<std::vector<int>> ckeys;
    for (const auto& c : p.circles) ckeys.push_back(circle_key(c));
    std::sort(ckeys.begin(), ckeys.end());
    for (const auto& ck : ckeys) {
        key.push_back(-1);
        key.insert(key.end(), ck.begin(), ck.end());
    }
    std::vector<int> marks;
    int ends = 0;
    for (const auto& is : p.interior) {
        if (is.kind == InteriorSlot::Kind::mark) marks.push_back(is.id);
        else ++ends;
    }
    std::sort(marks.begin(), marks.end());
    key.push_back(-2);
    key.insert(key.end(), marks.begin(), marks.end());
    key.push_back(ends);
    return key;
}

// Orders grouped by an invariant key: permutations only within key blocks.
std::vector<std::vector<int>> grouped_orders(const std::vector<std::vector<int>>& keys)
{
    const int n = static_cast<int>(keys.size());
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::sort(base.begin(), base.end(), [&](int x, int y) { return keys[x] < keys[y]; });

    std::vector<std::pair<int, int>> blocks; // [from, to)
    int from = 0;
    for (int i = 1; i <= n; ++i)
        if (i == n || keys[base[i]] != keys[base[from]]) {
            blocks.push_back({from, i});
            from = i;
        }

    std::vector<std::vector<int>> out;
    std::vector<int> cur = base;
    std::function<void(size_t)> rec = [&](size_t bi) {
        if (bi == blocks.size()) {
            out.push_back(cur);
            return;
        }
        auto [lo, hi] = blocks[bi];
        std::vector<int> blk(base.begin() + lo, base.begin() + hi);
        std::sort(blk.begin(), blk.end());
        do {
            std::copy(blk.begin(), blk.end(), cur.begin() + lo);
            rec(bi + 1);
        } while (std::next_permutation(blk.begin(), blk.end()));
    };
    rec(0);
    return out;
}

struct CanonChoice {
    std::vector<int> piece_order;
    std::vector<std::vector<int>> circle_order; // per output piece position
    std::vector<std::vector<int>> rotation;     // per output piece position, per circle position
    std::vector<std::vector<int>> end_order;    // interior ends, per output piece position
};

struct CanonSearch {
    const StratumGraph& s;
    std::vector<int> best;
    CanonChoice best_choice;
    bool have_best = false;

    std::vector<int> cur;
    int cmp = 0;      // while have_best: -1 cur<best so far, 0 equal so far
    int best_gen = 0; // bumped whenever best is replaced
    std::vector<int> bnum, inum;
    int bctr = 0, ictr = 0;
    std::vector<std::pair<int, int>> undo; // (0 boundary / 1 interior, node id)
    CanonChoice cur_choice;

    explicit CanonSearch(const StratumGraph& graph) : s(graph)
    {
        bnum.assign(std::max(1, s.boundary_node_count), -1);
        inum.assign(std::max(1, s.interior_node_count), -1);
    }

    struct Frame {
        size_t cur_size, undo_size;
        int cmp, gen, bctr, ictr;
    };
    Frame save() const { return {cur.size(), undo.size(), cmp, best_gen, bctr, ictr}; }
    void restore(const Frame& f)
    {
        cur.resize(f.cur_size);
        while (undo.size() > f.undo_size) {
            auto [w, id] = undo.back();
            undo.pop_back();
            (w == 0 ? bnum : inum)[id] = -1;
        }
        // If best changed below this frame, the new best came from the
        // current path, so the frame's prefix matches it exactly.
        cmp = (f.gen == best_gen) ? f.cmp : 0;
        bctr = f.bctr;
        ictr = f.ictr;
    }

    bool push(int t)
    {
        if (have_best && cmp == 0) {
            const int b = best[cur.size()];
            if (t > b) return false;
            if (t < b) cmp = -1;
        }
        cur.push_back(t);
        return true;
    }

    bool push_bend(int end_id)
    {
        const int v = end_id >> 1;
        if (bnum[v] < 0) {
            bnum[v] = bctr++;
            undo.push_back({0, v});
        }
        return push(bnum[v]);
    }

    bool push_iend(int end_id)
    {
        const int v = end_id >> 1;
        if (inum[v] < 0) {
            inum[v] = ictr++;
            undo.push_back({1, v});
        }
        return push(inum[v]);
    }

    bool emit_circle(const BoundaryCircle& c, int rot)
    {
        if (c.collapsed) return push(110) && push(c.label);
        const int sN = static_cast<int>(c.slots.size());
        if (!push(111) || !push(sN)) return false;
        if (sN == 0) return push(c.gap_labels[0]);
        for (int q = 0; q < sN; ++q) {
            const auto& sl = c.slots[(rot + q) % sN];
            if (sl.kind == BoundarySlot::Kind::mark) {
                if (!push(1) || !push(sl.a) || !push(sl.b)) return false;
            } else {
                if (!push(2) || !push_bend(sl.a)) return false;
            }
            if (!push(c.gap_labels[(rot + q) % sN])) return false;
        }
        return true;
    }

    // Emits circles of piece p in the order co, choosing rotations circle by
    // circle, then interior slots, then recurses into the continuation.
    template <typename Cont>
    void rec_circles(const Piece& p, const std::vector<int>& co, size_t ci,
                     std::vector<int>& rots, const Cont& cont)
    {
        if (ci == co.size()) {
            emit_interior(p, rots, cont);
            return;
        }
        const auto& c = p.circles[co[ci]];
        const int nrot = (c.collapsed || c.slots.empty()) ? 1 : static_cast<int>(c.slots.size());
        for (int rot = 0; rot < nrot; ++rot) {
            const Frame f = save();
            rots.push_back(rot);
            if (emit_circle(c, rot)) rec_circles(p, co, ci + 1, rots, cont);
            rots.pop_back();
            restore(f);
        }
    }

    template <typename Cont>
    void emit_interior(const Piece& p, const std::vector<int>& rots, const Cont& cont)
    {
        std::vector<int> marks;
        std::vector<int> ends; // indices into p.interior
        for (size_t q = 0; q < p.interior.size(); ++q) {
            if (p.interior[q].kind == InteriorSlot::Kind::mark) marks.push_back(p.interior[q].id);
            else ends.push_back(static_cast<int>(q));
        }
        std::sort(marks.begin(), marks.end());
        std::sort(ends.begin(), ends.end());

        const Frame f0 = save();
        bool marks_ok = true;
        for (int mk : marks)
            if (!push(3) || !push(mk)) { marks_ok = false; break; }
        if (marks_ok) {
            std::vector<int> perm = ends;
            do {
                const Frame f = save();
                bool ok = true;
                for (int qi : perm)
                    if (!push(4) || !push_iend(p.interior[qi].id)) { ok = false; break; }
                if (ok) cont(rots, perm);
                restore(f);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        restore(f0);
    }

    void rec_piece(const std::vector<int>& piece_order, size_t k,
                   const std::vector<std::vector<std::vector<int>>>& circle_orders)
    {
        if (k == piece_order.size()) {
            if (!have_best || cmp == -1) {
                best = cur;
                best_choice = cur_choice;
                best_choice.piece_order = piece_order;
                have_best = true;
                cmp = 0;
                ++best_gen;
            }
            return;
        }
        const Piece& p = s.pieces[piece_order[k]];
        const Frame f0 = save();
        if (push(100) && push(p.kind == Piece::Kind::closed ? 0 : 1) && push(p.genus)
            && push(static_cast<int>(p.circles.size()))
            && push(static_cast<int>(p.interior.size()))) {
            for (const auto& co : circle_orders[piece_order[k]]) {
                std::vector<int> rots;
                rec_circles(p, co, 0, rots, [&](const std::vector<int>& rv,
                                                const std::vector<int>& ev) {
                    cur_choice.circle_order.push_back(co);
                    cur_choice.rotation.push_back(rv);
                    cur_choice.end_order.push_back(ev);
                    rec_piece(piece_order, k + 1, circle_orders);
                    cur_choice.circle_order.pop_back();
                    cur_choice.rotation.pop_back();
                    cur_choice.end_order.pop_back();
                });
            }
        }
        restore(f0);
    }

    void run()
    {
        std::vector<std::vector<int>> pkeys;
        for (const auto& p : s.pieces) pkeys.push_back(piece_key(p));
        const auto piece_orders = grouped_orders(pkeys);

        std::vector<std::vector<std::vector<int>>> circle_orders(s.pieces.size());
        for (size_t pi = 0; pi < s.pieces.size(); ++pi) {
            std::vector<std::vector<int>> ckeys;
            for (const auto& c : s.pieces[pi].circles) ckeys.push_back(circle_key(c));
            circle_orders[pi] = grouped_orders(ckeys);
        }

        std::vector<int> header = {s.g, s.h, s.n};
        header.insert(header.end(), s.m.begin(), s.m.end());
        header.push_back(static_cast<int>(s.pieces.size()));
        header.push_back(s.interior_node_count);
        header.push_back(s.boundary_node_count);

        for (const auto& po : piece_orders) {
            cur = header;
            cmp = 0; // the header is shared by every candidate
            std::fill(bnum.begin(), bnum.end(), -1);
            std::fill(inum.begin(), inum.end(), -1);
            bctr = ictr = 0;
            undo.clear();
            cur_choice = CanonChoice{};
            rec_piece(po, 0, circle_orders);
        }
    }
};

} // namespace

std::vector<int> canonical_encoding(const StratumGraph& s)
{
    CanonSearch cs(s);
    cs.run();
    if (!cs.have_best) throw InternalError("canonical_encoding: empty search");
    return cs.best;
}

StratumGraph canonical_form(const StratumGraph& s)
{
    CanonSearch cs(s);
    cs.run();
    if (!cs.have_best) throw InternalError("canonical_form: empty search");
    const CanonChoice& ch = cs.best_choice;

    StratumGraph out;
    out.g = s.g;
    out.h = s.h;
    out.n = s.n;
    out.m = s.m;
    out.interior_node_count = s.interior_node_count;
    out.boundary_node_count = s.boundary_node_count;

    std::vector<int> bmap(std::max(1, s.boundary_node_count), -1);
    std::vector<int> imap(std::max(1, s.interior_node_count), -1);
    std::vector<int> bend_seen(std::max(1, s.boundary_node_count), 0);
    std::vector<int> iend_seen(std::max(1, s.interior_node_count), 0);
    int bctr = 0, ictr = 0;

    auto new_bend = [&](int old_end) {
        const int v = old_end >> 1;
        if (bmap[v] < 0) bmap[v] = bctr++;
        return 2 * bmap[v] + bend_seen[v]++;
    };
    auto new_iend = [&](int old_end) {
        const int v = old_end >> 1;
        if (imap[v] < 0) imap[v] = ictr++;
        return 2 * imap[v] + iend_seen[v]++;
    };

    for (size_t k = 0; k < ch.piece_order.size(); ++k) {
        const Piece& p = s.pieces[ch.piece_order[k]];
        Piece np;
        np.kind = p.kind;
        np.genus = p.genus;
        for (size_t cq = 0; cq < ch.circle_order[k].size(); ++cq) {
            const BoundaryCircle& c = p.circles[ch.circle_order[k][cq]];
            BoundaryCircle nc;
            nc.collapsed = c.collapsed;
            nc.label = c.label;
            if (!c.collapsed) {
                const int sN = static_cast<int>(c.slots.size());
                const int rot = ch.rotation[k][cq];
                if (sN == 0) {
                    nc.gap_labels = c.gap_labels;
                } else {
                    for (int q = 0; q < sN; ++q) {
                        BoundarySlot sl = c.slots[(rot + q) % sN];
                        if (sl.kind == BoundarySlot::Kind::node_end) sl.a = new_bend(sl.a);
                        nc.slots.push_back(sl);
                        nc.gap_labels.push_back(c.gap_labels[(rot + q) % sN]);
                    }
                }
            }
            np.circles.push_back(std::move(nc));
        }
        std::vector<int> marks;
        for (const auto& is : p.interior)
            if (is.kind == InteriorSlot::Kind::mark) marks.push_back(is.id);
        std::sort(marks.begin(), marks.end());
        for (int mk : marks) np.interior.push_back(InteriorSlot::make_mark(mk));
        for (int qi : ch.end_order[k])
            np.interior.push_back(InteriorSlot::make_end(new_iend(p.interior[qi].id)));
        out.pieces.push_back(std::move(np));
    }
    return out;
}

const char* to_string(MoveKind k)
{
    switch (k) {
    case MoveKind::collapse_circle: return "collapse_circle";
    case MoveKind::join_circles: return "join_circles";
    case MoveKind::pinch_circle: return "pinch_circle";
    case MoveKind::split_boundary: return "split_boundary";
    case MoveKind::pinch_interior: return "pinch_interior";
    case MoveKind::split_interior: return "split_interior";
    }
    return "?";
}

std::string to_string(const StratumGraph& s)
{
    std::ostringstream os;
    os << "(" << s.g << "," << s.h << ") n=" << s.n << " m=[";
    for (size_t i = 0; i < s.m.size(); ++i) os << (i ? "," : "") << s.m[i];
    os << "] pieces=" << s.pieces.size() << " int_nodes=" << s.interior_node_count
       << " bnd_nodes=" << s.boundary_node_count << " collapsed=" << collapsed_count(s)
       << " dim=" << stratum_dim(s);
    return os.str();
}

} // namespace moduli
