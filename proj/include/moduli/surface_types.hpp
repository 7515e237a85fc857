#pragma once

#include <string>
#include <vector>

#include "moduli/errors.hpp"

namespace moduli {

// ============================================================= topological
// Compact bordered surface of genus g with h boundary circles. h >= 1 here;
// closed surfaces are handled by the symmetric-surface types below (k = 0,
// h = 0) and by the closed-graph enumeration, never by TopType.

struct TopType {
    int g = 0;
    int h = 1;

    friend bool operator==(const TopType&, const TopType&) = default;
};

// Throws DomainError unless g >= 0 and h >= 1.
void validate(const TopType& t);

// Genus of the complex double: two copies glued along the h boundary circles.
int complex_double(const TopType& t);

// chi = 2 - 2g - h < 0, i.e. the surface carries no continuous automorphisms.
bool is_stable(const TopType& t);

// With n interior marked points and m[i] marked points on the i-th boundary
// circle (m.size() == h).
struct MarkedTopType {
    TopType base;
    int n = 0;
    std::vector<int> m;

    friend bool operator==(const MarkedTopType&, const MarkedTopType&) = default;
};

void validate(const MarkedTopType& t);

int sum_boundary_marks(const MarkedTopType& t);

// ============================================================== symmetric
// Closed genus-g~ surface with an antiholomorphic involution whose fixed
// locus has h circles; k = 0 when the complement of the fixed locus is
// disconnected (dividing), k = 1 otherwise.

struct SymType {
    int g_tilde = 0;
    int h = 0;
    int k = 0;

    friend bool operator==(const SymType&, const SymType&) = default;
    friend auto operator<=>(const SymType&, const SymType&) = default;
};

// Throws DomainError unless the classical constraints hold:
//   0 <= h <= g_tilde + 1,
//   k = 0  =>  h > 0 and h == g_tilde + 1 (mod 2),
//   k = 1  =>  0 <= h <= g_tilde.
void validate(const SymType& t);

// All symmetric types for a fixed double genus, sorted; the count is
// floor((3*g_tilde + 4) / 2).
std::vector<SymType> classify_symmetric(int g_tilde);

// Quotient by the involution: orientable (genus handles, h boundary circles)
// in the dividing case, nonorientable (cross_caps crosscaps, h boundary
// circles) otherwise.
struct QuotientType {
    bool orientable = true;
    int genus = 0;      // handles when orientable, else 0
    int cross_caps = 0; // crosscaps when nonorientable, else 0
    int h = 0;

    friend bool operator==(const QuotientType&, const QuotientType&) = default;
};

QuotientType quotient_type(const SymType& t);

// The dividing symmetric type whose quotient is t: (2g + h - 1, h, 0).
SymType symmetric_double(const TopType& t);

std::string to_string(const TopType& t);
std::string to_string(const SymType& t);
std::string to_string(const QuotientType& t);

} // namespace moduli
