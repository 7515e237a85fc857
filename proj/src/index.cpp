#include "moduli/index.hpp"

#include <numeric>

#include "json.hpp"

namespace moduli {

Int moduli_dim(const MarkedTopType& t)
{
    validate(t);
    const int msum = sum_boundary_marks(t);
    return Int(6) * t.base.g + Int(3) * t.base.h - 6 + Int(2) * t.n + msum;
}

Int fredholm_index_smooth(const Int& mu, const Int& N, int g, int h)
{
    if (mu % 2 != 0)
        throw DomainError("fredholm_index_smooth: mu must be even, got mu=" + to_string(mu));
    if (N < 1)
        throw DomainError("fredholm_index_smooth: N must be >= 1, got N=" + to_string(N));
    validate(TopType{g, h});
    return mu + N * (Int(2) - 2 * g - h);
}

Int fredholm_index_nodal(const Int& mu, const Int& N, const Int& g_tilde)
{
    if (mu % 2 != 0)
        throw DomainError("fredholm_index_nodal: mu must be even, got mu=" + to_string(mu));
    if (N < 1)
        throw DomainError("fredholm_index_nodal: N must be >= 1, got N=" + to_string(N));
    return mu + N * (Int(1) - g_tilde);
}

Int arithmetic_genus(const std::vector<Piece>& pieces, int l0, int l1)
{
    if (l0 < 0 || l1 < 0) throw DomainError("arithmetic_genus: node counts must be >= 0");
    Int acc = 0;
    for (const auto& p : pieces) {
        if (p.kind == Piece::Kind::closed) acc += 2 * (Int(p.genus) - 1);
        else acc += Int(2) * p.genus + p.live_circle_count() - 2;
    }
    return acc + Int(2) * l0 + l1 + 1;
}

Int arithmetic_genus(const StratumGraph& s)
{
    const Int via_pieces = arithmetic_genus(
        s.pieces, s.interior_node_count, s.boundary_node_count + collapsed_count(s));
    if (via_pieces != double_genus(s))
        throw InternalError("arithmetic_genus: piece formula disagrees with double_genus");
    return via_pieces;
}

Int virtual_dim(const Int& mu, const Int& N, const MarkedTopType& t)
{
    const Int direct = mu + (N - 3) * (Int(2) - 2 * t.base.g - t.base.h) + Int(2) * t.n
                       + sum_boundary_marks(t);
    const Int split = fredholm_index_smooth(mu, N, t.base.g, t.base.h) + moduli_dim(t);
    if (direct != split)
        throw InternalError("virtual_dim: " + to_string(direct) + " != fredholm + moduli = "
                            + to_string(split));
    return direct;
}

DeformationDims deformation_dims(const StratumGraph& s)
{
    validate(s);
    DeformationDims d;
    d.h_deform = stratum_dim(s);
    d.h_interior = 2 * s.interior_node_count;
    d.h_boundary = s.boundary_node_count + collapsed_count(s);
    d.h_aut = 0; // stable graphs have no infinitesimal automorphisms
    const int msum = std::accumulate(s.m.begin(), s.m.end(), 0);
    const int total = 6 * s.g + 3 * s.h - 6 + 2 * s.n + msum;
    if (d.h_deform + d.h_interior + d.h_boundary + d.h_aut != total)
        throw InternalError("deformation_dims: split sums to "
                            + std::to_string(d.h_deform + d.h_interior + d.h_boundary)
                            + ", moduli dimension is " + std::to_string(total));
    return d;
}

DeformationDims deformation_dims(const StratumGraph& s, int n, const std::vector<int>& m)
{
    if (n != s.n)
        throw DomainError("deformation_dims: n=" + std::to_string(n)
                          + " does not match the graph's n=" + std::to_string(s.n));
    if (m != s.m) throw DomainError("deformation_dims: m does not match the graph's profile");
    return deformation_dims(s);
}

Int double_degree(const Int& mu)
{
    if (mu % 2 != 0)
        throw DomainError("double_degree: mu must be even, got mu=" + to_string(mu));
    return mu / 2;
}

Int maslov_total(const std::vector<Int>& closed_degrees, const std::vector<Int>& boundary_maslov)
{
    Int acc = 0;
    for (const auto& d : closed_degrees) acc += 2 * d;
    for (const auto& mu : boundary_maslov) {
        if (mu % 2 != 0)
            throw DomainError("maslov_total: boundary Maslov indices must be even, got "
                              + to_string(mu));
        acc += mu;
    }
    return acc;
}

bool orientability(bool spin, bool relatively_spin, int h)
{
    if (h < 1) throw DomainError("orientability: h must be >= 1, got h=" + std::to_string(h));
    return spin || (h == 1 && relatively_spin);
}

IndexReport index_report(const Int& mu, const Int& N, const MarkedTopType& t)
{
    IndexReport r;
    r.maslov = mu;
    r.ambient_half_dim = N;
    r.fredholm_index = fredholm_index_smooth(mu, N, t.base.g, t.base.h);
    r.moduli_dimension = moduli_dim(t);
    r.virtual_dimension = virtual_dim(mu, N, t);
    r.deformation.h_deform = static_cast<int>(r.moduli_dimension);
    r.deformation.h_interior = 0;
    r.deformation.h_boundary = 0;
    r.deformation.h_aut = 0;
    return r;
}

IndexReport index_report(const Int& mu, const Int& N, const StratumGraph& s)
{
    MarkedTopType t{TopType{s.g, s.h}, s.n, s.m};
    IndexReport r = index_report(mu, N, t);
    r.deformation = deformation_dims(s);
    return r;
}

std::string to_json(const IndexReport& r)
{
    nlohmann::ordered_json j;
    j["maslov"] = to_string(r.maslov);
    j["ambient_half_dim"] = to_string(r.ambient_half_dim);
    j["fredholm_index"] = to_string(r.fredholm_index);
    j["moduli_dim"] = to_string(r.moduli_dimension);
    j["virtual_dim"] = to_string(r.virtual_dimension);
    j["deformation_dims"] = {{"h_deform", r.deformation.h_deform},
                             {"h_interior", r.deformation.h_interior},
                             {"h_boundary", r.deformation.h_boundary},
                             {"h_aut", r.deformation.h_aut}};
    return j.dump();
}

} // namespace moduli
