#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "moduli/index.hpp"
#include "moduli/strata.hpp"

#include <vector>

using namespace moduli;

namespace {

MarkedTopType marked(int g, int h, int n, std::vector<int> m)
{
    return MarkedTopType{TopType{g, h}, n, std::move(m)};
}

} // namespace

TEST_CASE("moduli dimension formula")
{
    CHECK(moduli_dim(marked(0, 3, 0, {0, 0, 0})) == 3);
    CHECK(moduli_dim(marked(0, 1, 0, {3})) == 0);
    CHECK(moduli_dim(marked(0, 1, 0, {6})) == 3);
    CHECK(moduli_dim(marked(1, 1, 0, {0})) == 3);
    CHECK(moduli_dim(marked(0, 2, 0, {2, 0})) == 2);
    CHECK(moduli_dim(marked(2, 2, 1, {3, 1})) == 18);
}

TEST_CASE("smooth Fredholm index and its nodal form agree on smooth domains")
{
    for (int g = 0; g <= 4; ++g)
        for (int h = 1; h <= 4; ++h)
            for (Int mu = -10; mu <= 10; mu += 2)
                for (Int N = 1; N <= 5; ++N) {
                    const Int smooth = fredholm_index_smooth(mu, N, g, h);
                    // doubled arithmetic genus of a smooth (g,h) domain
                    const Int gt = 2 * g + h - 1;
                    CHECK(smooth == fredholm_index_nodal(mu, N, gt));
                }
}

TEST_CASE("index rejects odd Maslov and bad ambient dimension")
{
    CHECK_THROWS_AS(fredholm_index_smooth(1, 3, 0, 1), DomainError);
    CHECK_THROWS_AS(fredholm_index_smooth(2, 0, 0, 1), DomainError);
    CHECK_THROWS_AS(fredholm_index_smooth(2, -1, 0, 1), DomainError);
    CHECK_THROWS_AS(fredholm_index_smooth(2, 3, -1, 1), DomainError);
    CHECK_THROWS_AS(fredholm_index_smooth(2, 3, 0, 0), DomainError);
    CHECK_THROWS_AS(double_degree(3), DomainError);
    CHECK(double_degree(6) == 3);
    CHECK(double_degree(-4) == -2);
}

TEST_CASE("virtual dimension splits as Fredholm index plus marks")
{
    for (int g = 0; g <= 8; ++g)
        for (int h = 1; h <= 8; ++h)
            for (Int mu = -20; mu <= 20; mu += 2)
                for (Int N = 1; N <= 5; ++N)
                    for (int n = 0; n <= 2; ++n) {
                        const MarkedTopType t = marked(g, h, n, std::vector<int>(h, 1));
                        const Int v = virtual_dim(mu, N, t);
                        CHECK(v == mu + (N - 3) * (2 - 2 * g - h) + 2 * n
                                       + sum_boundary_marks(t));
                    }
}

TEST_CASE("classical check: vanishing virtual dimension")
{
    // mu = 0, N = 3: v = 2n + sum m independent of (g,h)
    CHECK(virtual_dim(0, 3, marked(2, 2, 0, {0, 0})) == 0);
    CHECK(virtual_dim(0, 3, marked(5, 7, 0, std::vector<int>(7, 0))) == 0);
    CHECK(virtual_dim(0, 3, marked(1, 1, 1, {2})) == 4);
}

TEST_CASE("arithmetic genus agrees with the strata double genus")
{
    const auto ss = enumerate_strata(marked(1, 1, 0, {0}));
    for (const auto& s : ss.strata) {
        CHECK(arithmetic_genus(s) == double_genus(s));
        CHECK(arithmetic_genus(s) == 2); // constant across the stratification
    }
}

TEST_CASE("nodal index is constant across every stratum of a moduli")
{
    const std::vector<MarkedTopType> cases = {
        marked(0, 3, 0, {0, 0, 0}),
        marked(0, 2, 0, {2, 0}),
        marked(0, 2, 0, {1, 1}),
        marked(1, 1, 0, {0}),
        marked(1, 2, 1, {1, 0}),
    };
    for (const auto& t : cases) {
        const auto ss = enumerate_strata(t);
        for (Int mu : {Int(-4), Int(0), Int(2), Int(6)})
            for (Int N : {Int(1), Int(3), Int(5)}) {
                const Int smooth = fredholm_index_smooth(mu, N, t.base.g, t.base.h);
                for (const auto& s : ss.strata)
                    CHECK(fredholm_index_nodal(mu, N, arithmetic_genus(s)) == smooth);
            }
    }
}

TEST_CASE("deformation split accounts for the stratum codimension")
{
    const auto ss = enumerate_strata(marked(0, 3, 0, {0, 0, 0}));
    const Int ambient = moduli_dim(marked(0, 3, 0, {0, 0, 0}));
    for (size_t i = 0; i < ss.strata.size(); ++i) {
        const DeformationDims d = deformation_dims(ss.strata[i]);
        CHECK(d.h_deform == ss.dims[i]);
        CHECK(d.h_aut == 0); // stable
        CHECK(Int(d.h_deform + 2 * d.h_interior + d.h_boundary) == ambient);
    }
}

TEST_CASE("deformation split cross-checks the marking profile")
{
    const auto ss = enumerate_strata(marked(0, 2, 0, {2, 0}));
    CHECK_NOTHROW(deformation_dims(ss.strata[1], 0, {2, 0}));
    CHECK_THROWS_AS(deformation_dims(ss.strata[1], 1, {2, 0}), DomainError);
    CHECK_THROWS_AS(deformation_dims(ss.strata[1], 0, {2, 1}), DomainError);
}

TEST_CASE("total Maslov index sums piece contributions")
{
    CHECK(maslov_total({}, {}) == 0);
    CHECK(maslov_total({1, 2}, {}) == 6);
    CHECK(maslov_total({}, {4, -2}) == 2);
    CHECK(maslov_total({3}, {2, 2}) == 10);
    CHECK_THROWS_AS(maslov_total({}, {3}), DomainError); // odd boundary term
}

TEST_CASE("orientability criterion is only ever a sufficient one")
{
    CHECK(orientability(true, false, 2));  // a spin structure always suffices
    CHECK(orientability(false, true, 1));  // relative spin suffices on one circle
    CHECK_FALSE(orientability(false, true, 2)); // ... but is undecided beyond that
    CHECK_FALSE(orientability(false, false, 1));
    CHECK_THROWS_AS(orientability(true, true, 0), DomainError);
}

TEST_CASE("index report is internally consistent")
{
    const MarkedTopType t = marked(2, 2, 0, {0, 0});
    const IndexReport r = index_report(0, 3, t);
    CHECK(r.maslov == 0);
    CHECK(r.ambient_half_dim == 3);
    CHECK(r.moduli_dimension == moduli_dim(t));
    CHECK(r.fredholm_index == fredholm_index_smooth(0, 3, 2, 2));
    CHECK(r.virtual_dimension == 0);
    CHECK(r.virtual_dimension == r.fredholm_index + r.moduli_dimension);
}

TEST_CASE("index report at a stratum keeps the virtual dimension")
{
    const MarkedTopType t = marked(0, 3, 0, {0, 0, 0});
    const auto ss = enumerate_strata(t);
    const IndexReport smooth = index_report(4, 2, t);
    for (const auto& s : ss.strata) {
        const IndexReport r = index_report(4, 2, s);
        CHECK(r.virtual_dimension == smooth.virtual_dimension);
        CHECK(r.maslov == smooth.maslov);
        CHECK(r.deformation.h_deform == stratum_dim(s));
    }
}

TEST_CASE("report serializes to stable JSON")
{
    const IndexReport r = index_report(2, 3, marked(0, 1, 0, {3}));
    const std::string j = to_json(r);
    CHECK(j.find("\"maslov\":\"2\"") != std::string::npos);
    CHECK(j.find("\"virtual_dim\"") != std::string::npos);
    CHECK(to_json(r) == j); // deterministic
}
