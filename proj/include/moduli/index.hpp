#pragma once

// Dimension and index bookkeeping: Fredholm indices of the linearized
// operator on smooth and nodal domains, moduli/virtual dimensions, the
// deformation-space split at a stratum, Maslov parity tools, and the
// orientability predicate. Everything is exact (arbitrary-precision).

#include <string>
#include <vector>

#include "moduli/rational.hpp"
#include "moduli/strata.hpp"
#include "moduli/surface_types.hpp"

namespace moduli {

// 6g + 3h - 6 + 2n + sum m.
Int moduli_dim(const MarkedTopType& t);

// mu + N(2 - 2g - h) for a smooth bordered domain. mu must be even, N >= 1.
Int fredholm_index_smooth(const Int& mu, const Int& N, int g, int h);

// mu + N(1 - g~) for a nodal domain with doubled arithmetic genus g~.
Int fredholm_index_nodal(const Int& mu, const Int& N, const Int& g_tilde);

// Arithmetic genus of the double of a nodal surface:
//   2 sum_closed (g^ - 1) + sum_bordered (2g + live - 2) + 2 l0 + l1 + 1
// where l1 counts boundary nodes plus collapsed circles.
Int arithmetic_genus(const std::vector<Piece>& pieces, int l0, int l1);
Int arithmetic_genus(const StratumGraph& s);

// mu + (N-3)(2 - 2g - h) + 2n + sum m; cross-checked against
// fredholm_index_smooth + moduli_dim.
Int virtual_dim(const Int& mu, const Int& N, const MarkedTopType& t);

// Splitting of the tangent directions at a stratum: along the stratum,
// interior-node smoothings (2 each), boundary-node/collapsed-circle
// smoothings (1 half-direction each), reparametrizations (0: stable).
struct DeformationDims {
    int h_deform = 0;
    int h_interior = 0;
    int h_boundary = 0;
    int h_aut = 0;
};
DeformationDims deformation_dims(const StratumGraph& s);
// As above, with the marking profile cross-checked against the graph.
DeformationDims deformation_dims(const StratumGraph& s, int n, const std::vector<int>& m);

// mu/2; DomainError on odd mu (the boundary Maslov index is always even).
Int double_degree(const Int& mu);

// Total Maslov index of a nodal configuration: 2 sum(closed piece degrees)
// + sum(bordered piece boundary Maslov indices); each summand even-checked.
Int maslov_total(const std::vector<Int>& closed_degrees,
                 const std::vector<Int>& boundary_maslov);

// Sufficient orientability criterion only; false means "not established",
// never "non-orientable".
bool orientability(bool spin, bool relatively_spin, int h);

struct IndexReport {
    Int maslov;
    Int ambient_half_dim;
    Int fredholm_index;
    Int moduli_dimension;
    Int virtual_dimension;
    DeformationDims deformation;
};

// Report for the smooth top stratum of (t; mu, N).
IndexReport index_report(const Int& mu, const Int& N, const MarkedTopType& t);
// Report at a specific stratum (deformation split from the graph).
IndexReport index_report(const Int& mu, const Int& N, const StratumGraph& s);

std::string to_json(const IndexReport& r);

} // namespace moduli
