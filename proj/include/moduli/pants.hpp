#pragma once

// Pants-decomposition counts and the associahedron identification of the
// low-genus strata posets: face lattices built from noncrossing polygon
// diagonals, a graded-poset isomorphism test with certificates, and the
// disc-moduli component count.

#include <string>
#include <utility>
#include <vector>

#include "moduli/rational.hpp"
#include "moduli/strata.hpp"
#include "moduli/surface_types.hpp"

namespace moduli {

// (3g~-3+n~, 2g~-2+n~) for a closed symmetric surface; the type must admit a
// pants decomposition (2g~-2+n~ > 0).
std::pair<int, int> pants_counts(int g_tilde, int n_tilde);

// (3g+h-3+n, 2g+h-2+n) for a bordered type; also asserts the doubling
// bookkeeping identity 3g~-3+n~ - (3g+h-3+n) == 3g+2h-3+n with g~ = 2g+h-1,
// n~ = 2n.
std::pair<int, int> pants_counts_bordered(int g, int h, int n);

// A finite graded poset of faces: dims, covering relations (a covers b with
// dim a == dim b + 1), and printable labels.
struct FaceLattice {
    std::vector<int> dims;
    std::vector<std::pair<int, int>> covers;
    std::vector<std::string> labels;

    // counts by ascending dimension, f[0] = #vertices
    std::vector<int> f_vector() const;
    int top_dim() const;
};

// Face lattice of the associahedron of dimension mdim (classically K_{mdim+2}):
// faces are noncrossing diagonal sets of a convex (mdim+3)-gon, a face of k
// diagonals having dimension mdim - k.
FaceLattice associahedron(int mdim);

// Number of k-subsets of pairwise noncrossing diagonals of a convex p-gon,
//   D(p, k) = C(p-3, k) C(p+k-1, k) / (k+1),
// used as an independent oracle for associahedron face counts.
Int noncrossing_diagonal_sets(int p, int k);

// Catalan number C_n computed by the bracketing recurrence
// T(m) = sum T(i) T(m-i), T(1) = 1, C_n = T(n+1); independent vertex oracle.
Int catalan_bracketings(int n);

struct PosetIsoResult {
    bool isomorphic = false;
    std::vector<int> mapping;   // element i of a -> mapping[i] of b, if isomorphic
    std::string counterexample; // first structural mismatch, if not
};

// Graded-poset isomorphism via iterated neighborhood-color refinement plus
// backtracking; the returned mapping (or counterexample) is re-verified
// against every covering relation before being reported.
PosetIsoResult poset_isomorphism(const FaceLattice& a, const FaceLattice& b);

// The strata poset as a FaceLattice. Requires every cover to drop dimension
// by exactly 1 (no interior-node covers), else DomainError.
FaceLattice face_lattice_of(const StrataSet& ss);

// Compares a strata poset against the associahedron of its top dimension.
PosetIsoResult check_k5_identification(const StrataSet& poset);

// (m-1)!, the number of connected components of the compactified disc moduli
// with m boundary marks; m >= 3.
Int disc_component_count(int m);

std::string to_dot(const FaceLattice& fl);
std::string to_dot(const StrataSet& ss);

} // namespace moduli
