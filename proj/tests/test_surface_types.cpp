#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "moduli/errors.hpp"
#include "moduli/surface_types.hpp"

#include <set>
#include <string>

using namespace moduli;

TEST_CASE("genus of the complex double")
{
    CHECK(complex_double(TopType{0, 1}) == 0); // disc doubles to a sphere
    CHECK(complex_double(TopType{0, 2}) == 1); // annulus doubles to a torus
    CHECK(complex_double(TopType{0, 3}) == 2);
    CHECK(complex_double(TopType{1, 1}) == 2);
    CHECK(complex_double(TopType{2, 3}) == 6);
    for (int g = 0; g <= 6; ++g)
        for (int h = 1; h <= 6; ++h) CHECK(complex_double(TopType{g, h}) == 2 * g + h - 1);
}

TEST_CASE("validate rejects out-of-domain types")
{
    CHECK_THROWS_AS(validate(TopType{-1, 1}), DomainError);
    CHECK_THROWS_AS(validate(TopType{0, 0}), DomainError);
    CHECK_NOTHROW(validate(TopType{0, 1}));
    CHECK_THROWS_AS(validate(MarkedTopType{TopType{0, 1}, -1, {0}}), DomainError);
    CHECK_THROWS_AS(validate(MarkedTopType{TopType{0, 1}, 0, {0, 0}}), DomainError);
    CHECK_THROWS_AS(validate(MarkedTopType{TopType{0, 1}, 0, {-2}}), DomainError);
    CHECK_NOTHROW(validate(MarkedTopType{TopType{1, 2}, 3, {1, 4}}));
    CHECK(sum_boundary_marks(MarkedTopType{TopType{1, 2}, 3, {1, 4}}) == 5);
}

TEST_CASE("stability is negative Euler characteristic")
{
    CHECK_FALSE(is_stable(TopType{0, 1}));
    CHECK_FALSE(is_stable(TopType{0, 2}));
    CHECK(is_stable(TopType{0, 3}));
    CHECK(is_stable(TopType{1, 1}));
    CHECK(is_stable(TopType{2, 1}));
}

// Independent recount of the census: the dividing types are the h with
// 1 <= h <= g~+1 and h == g~+1 (mod 2), the nondividing ones are every h in
// 0..g~. Sizes: ceil((g~+1)/2) + (g~+1) = floor((3 g~ + 4)/2).
static int census_size_by_hand(int gt)
{
    int dividing = 0;
    for (int h = 1; h <= gt + 1; ++h)
        if ((h - (gt + 1)) % 2 == 0) ++dividing;
    return dividing + (gt + 1);
}

TEST_CASE("census size matches the closed formula and a hand recount")
{
    for (int gt = 0; gt <= 30; ++gt) {
        const auto types = classify_symmetric(gt);
        CHECK(static_cast<int>(types.size()) == (3 * gt + 4) / 2);
        CHECK(static_cast<int>(types.size()) == census_size_by_hand(gt));

        std::set<std::pair<int, int>> seen;
        for (const auto& s : types) {
            CHECK(s.g_tilde == gt);
            CHECK_NOTHROW(validate(s));
            CHECK(seen.insert({s.h, s.k}).second); // no duplicates
        }
    }
}

TEST_CASE("census is sorted and complete in both k classes")
{
    for (int gt = 0; gt <= 12; ++gt) {
        const auto types = classify_symmetric(gt);
        for (size_t i = 1; i < types.size(); ++i) CHECK(types[i - 1] < types[i]);

        int dividing = 0, nondividing = 0;
        for (const auto& s : types) (s.k == 0 ? dividing : nondividing)++;
        CHECK(nondividing == gt + 1);           // h = 0..g~
        CHECK(dividing == (gt + 2) / 2);        // parity-constrained h
    }
}

TEST_CASE("quotients reassemble to the right double genus")
{
    for (int gt = 0; gt <= 12; ++gt) {
        for (const auto& s : classify_symmetric(gt)) {
            const QuotientType q = quotient_type(s);
            CHECK(q.h == s.h);
            if (s.k == 0) {
                CHECK(q.orientable);
                CHECK(q.cross_caps == 0);
                CHECK(2 * q.genus + q.h - 1 == gt);
                CHECK(q.h >= 1); // dividing involutions have fixed circles
            } else {
                CHECK_FALSE(q.orientable);
                CHECK(q.genus == 0);
                CHECK(q.cross_caps + q.h - 1 == gt);
                CHECK(q.cross_caps >= 1);
            }
        }
    }
}

TEST_CASE("symmetric_double inverts quotient_type on bordered types")
{
    for (int g = 0; g <= 5; ++g)
        for (int h = 1; h <= 5; ++h) {
            const TopType t{g, h};
            const SymType s = symmetric_double(t);
            CHECK(s.g_tilde == complex_double(t));
            CHECK(s.h == h);
            CHECK(s.k == 0);
            const QuotientType q = quotient_type(s);
            CHECK(q.orientable);
            CHECK(q.genus == g);
            CHECK(q.h == h);
        }
}

TEST_CASE("one fixed-point-free type per double genus")
{
    for (int gt = 0; gt <= 12; ++gt) {
        int free_count = 0;
        for (const auto& s : classify_symmetric(gt))
            if (s.h == 0) {
                ++free_count;
                CHECK(s.k == 1); // no fixed circles forces a nondividing type
            }
        CHECK(free_count == 1);
    }
}

TEST_CASE("validate on symmetric types enforces the parity constraint")
{
    CHECK_THROWS_AS(validate(SymType{2, 2, 0}), DomainError); // h parity wrong for k = 0
    CHECK_NOTHROW(validate(SymType{2, 3, 0}));
    CHECK_THROWS_AS(validate(SymType{2, 3, 1}), DomainError); // h > g~ with k = 1
    CHECK_NOTHROW(validate(SymType{2, 2, 1}));
    CHECK_THROWS_AS(validate(SymType{2, 0, 0}), DomainError); // dividing needs h > 0
    CHECK_THROWS_AS(validate(SymType{-1, 0, 1}), DomainError);
    CHECK_THROWS_AS(validate(SymType{2, 1, 2}), DomainError); // k is 0 or 1
}

TEST_CASE("classify_symmetric rejects negative genus")
{
    CHECK_THROWS_AS(classify_symmetric(-1), DomainError);
}

TEST_CASE("quotient descriptions name both families")
{
    const auto types = classify_symmetric(2);
    CHECK(types.size() == 5);
    bool saw_orientable = false, saw_crosscap = false;
    for (const auto& s : types) {
        const std::string txt = to_string(quotient_type(s));
        if (txt.find("orientable genus") == 0) saw_orientable = true;
        if (txt.find("crosscap") != std::string::npos) saw_crosscap = true;
    }
    CHECK(saw_orientable);
    CHECK(saw_crosscap);
}
