#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moduli/surface_types.hpp"

namespace moduli {

// A stratum of the compactified moduli of stable marked bordered surfaces is
// a decorated graph: pieces (irreducible components of the normalization)
// carrying boundary circles, joined by interior nodes (two interior points
// identified) and boundary nodes (two boundary points identified), plus
// collapsed boundary circles (a whole circle contracted to an interior
// point). Boundary marks live on circles in a fixed cyclic order; smoothing
// all boundary nodes must reproduce the h labeled boundary circles of the
// generic surface.

// ------------------------------------------------------------------ slots

struct BoundarySlot {
    enum class Kind : uint8_t { mark, node_end };
    Kind kind = Kind::mark;
    // mark:     a = boundary-circle label in 1..h, b = index in 1..m[a-1]
    // node_end: a = end id (node id = a >> 1, ends of node v are 2v, 2v+1)
    int a = 0;
    int b = 0;

    static BoundarySlot make_mark(int label, int index) { return {Kind::mark, label, index}; }
    static BoundarySlot make_end(int end_id) { return {Kind::node_end, end_id, 0}; }
    friend bool operator==(const BoundarySlot&, const BoundarySlot&) = default;
};

struct InteriorSlot {
    enum class Kind : uint8_t { mark, node_end };
    Kind kind = Kind::mark;
    int id = 0; // mark label in 1..n, or end id (node id = id >> 1)

    static InteriorSlot make_mark(int label) { return {Kind::mark, label}; }
    static InteriorSlot make_end(int end_id) { return {Kind::node_end, end_id}; }
    friend bool operator==(const InteriorSlot&, const InteriorSlot&) = default;
};

// A boundary circle of one piece. Live circles carry their slots in cyclic
// order (compared up to rotation, never reflection: the boundary orientation
// is part of the data). gap_labels[i] is the label in 1..h of the resolved
// circle passing through the gap that FOLLOWS slots[i]; an empty live circle
// has a single gap, gap_labels = {label}. Collapsed circles carry no slots,
// only the label of the degenerate boundary circle they stand for.
struct BoundaryCircle {
    bool collapsed = false;
    int label = 0; // used iff collapsed
    std::vector<BoundarySlot> slots;
    std::vector<int> gap_labels;

    friend bool operator==(const BoundaryCircle&, const BoundaryCircle&) = default;
};

struct Piece {
    enum class Kind : uint8_t { closed, bordered };
    Kind kind = Kind::bordered;
    int genus = 0;
    std::vector<BoundaryCircle> circles;  // empty iff closed
    std::vector<InteriorSlot> interior;

    int live_circle_count() const;
    int collapsed_circle_count() const;
    int interior_special_count() const;  // interior slots + collapsed circles
    int boundary_special_count() const;  // slots over live circles
    friend bool operator==(const Piece&, const Piece&) = default;
};

// Stability of one piece: the automorphism group fixing every special point
// is finite. Closed: 2g - 2 + s > 0. Bordered: the doubled condition
// 4g + 2*(live circles) - 4 + 2*(interior specials) + (boundary specials) > 0,
// a collapsed circle counting as one interior special.
bool is_piece_stable(const Piece& p);

// Real dimension of the moduli of the piece with its special points.
int piece_dim(const Piece& p);

struct StratumGraph {
    int g = 0;       // total type of the smoothing; h == 0 encodes a closed graph
    int h = 0;
    int n = 0;       // interior marks 1..n
    std::vector<int> m; // boundary marks (i,1..m[i-1]); size h
    std::vector<Piece> pieces;
    int interior_node_count = 0; // ends 0..2*count-1
    int boundary_node_count = 0; // ends 0..2*count-1, disjoint id space

    friend bool operator==(const StratumGraph&, const StratumGraph&) = default;
};

// ------------------------------------------------------------- resolution

// One boundary circle of the smoothed surface: the marks swept out in cyclic
// order, its label, and whether it is a collapsed (degenerate) circle.
struct ResolvedCircle {
    int label = 0;
    bool degenerate = false;
    std::vector<BoundarySlot> marks; // cyclic order; empty for degenerate
};

struct Resolution {
    std::vector<ResolvedCircle> circles; // live resolved circles then degenerate
    int splits = 0;  // boundary-node smoothings that split a traversal circle
    int merges = 0;  // ... that merged two
};

// Smooth every boundary node by the orientation-compatible resplice (the
// strand entering one endpoint continues past the other endpoint) and record
// the resulting circles. Throws DomainError if a resolved circle's gaps
// disagree about their label or a mark sits on a circle with a foreign label.
Resolution smooth_boundary(const StratumGraph& s);

// Number of collapsed circles over all pieces.
int collapsed_count(const StratumGraph& s);

// (g, h) of the smoothed surface, computed two independent ways (explicit
// resplice + arithmetic genus of the double vs. component/cycle counting) and
// cross-checked; mismatch throws InternalError.
TopType total_type(const StratumGraph& s);

// Genus of the double of the nodal surface:
//   g~ = sum_i (2 g_i + live_i - 2) + 2 l0 + l1 + 1
// with l1 = boundary nodes + collapsed circles.
int double_genus(const StratumGraph& s);

// Real dimension: (6g + 3h - 6 + 2n + sum m) - 2 l0 - l1, also asserted to
// equal the sum of per-piece dimensions.
int stratum_dim(const StratumGraph& s);

// Full structural validation: slot/label bijections, pairing, connectivity,
// per-piece stability, resolution consistency, declared type == total type.
// DomainError for malformed input, InternalError for failed cross-checks.
void validate(const StratumGraph& s);

// -------------------------------------------------------- canonical form

// Deterministic integer encoding, minimal over all label-respecting
// symmetries (piece order, circle order, circle rotation, node renumbering,
// interior slot order). Equal encodings == isomorphic decorated graphs.
std::vector<int> canonical_encoding(const StratumGraph& s);

// The canonical representative itself: pieces/circles/slots arranged and
// nodes renumbered as in the minimal encoding.
StratumGraph canonical_form(const StratumGraph& s);

// --------------------------------------------------------- degenerations

enum class MoveKind : uint8_t {
    collapse_circle,   // empty live circle -> collapsed
    join_circles,      // two circles of one piece meet at a boundary node
    pinch_circle,      // one circle self-touches, genus drops (same piece)
    split_boundary,    // piece splits in two at a boundary node
    pinch_interior,    // interior node, genus drops (same piece)
    split_interior,    // piece splits in two at an interior node
};

const char* to_string(MoveKind k);

// All one-step degenerations of s, canonicalized (duplicates removed).
std::vector<std::pair<MoveKind, StratumGraph>> degenerations(const StratumGraph& s);

// ----------------------------------------------------------- enumeration

struct StrataSet {
    std::vector<StratumGraph> strata;           // canonical, grouped by descending dim
    std::vector<int> dims;                      // dims[i] = stratum_dim(strata[i])
    std::vector<std::pair<int, int>> covers;    // (a, b): a degenerates to b in one move
    std::vector<MoveKind> cover_kinds;          // parallel to covers

    // Count of strata per codimension 0..max; sums to strata.size().
    std::vector<int> counts_by_codim() const;
    int top_dim() const;
};

// Every stratum of the compactified moduli of (t.base) with t.n interior and
// t.m boundary marks, found by breadth-first degeneration from the smooth
// top strata with canonical dedup. Requires the smooth marked surface to be
// stable (DomainError otherwise).
StrataSet enumerate_strata(const MarkedTopType& t);

// Closed analogue: stable dual graphs of genus-g curves with n marks.
StrataSet enumerate_closed_strata(int g, int n);

// The covering relation (one move) as an explicit graded poset; identical to
// the covers field of enumerate_strata but kept as its own entry point.
StrataSet degeneration_poset(const MarkedTopType& t);

// ------------------------------------------------------------------ JSON

// Canonical JSON encoding (stable field order); decoding validates and
// re-canonicalizes. Round-trips bit-identically on canonical graphs.
std::string to_canonical_json(const StratumGraph& s);
StratumGraph stratum_from_json(const std::string& text);

std::string to_string(const StratumGraph& s); // compact one-line description

} // namespace moduli
