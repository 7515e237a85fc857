#pragma once

// Exact disc/annulus/higher-genus boundary-winding invariants for the basic
// toric Lagrangian, computed by a truncated fixed-point sum over Hodge and
// descendant classes. Everything is exact rational arithmetic; psi/lambda
// integrals outside the built-in rules must be supplied through a
// HodgeOracle, which fails loudly (UnsupportedError) rather than guessing.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/rational.hpp"

namespace moduli {

// psi exponents per marked point plus lambda_i exponents (lambda[i-1] is the
// exponent of lambda_i); g and h = psi.size() pin down the moduli space.
struct HodgeKey {
    int g = 0;
    std::vector<int> psi;    // sorted descending, one entry per marked point
    std::vector<int> lambda; // size g

    bool operator<(const HodgeKey& o) const;
};

// Table of psi-lambda integrals. Degree bookkeeping is automatic: a class
// whose total degree misses dim = 3g-3+h integrates to 0 with no lookup.
// Genus 0 carries the closed multinomial rule (h-3)!/prod(s_i!) built in.
class HodgeOracle {
public:
    void add(int g, std::vector<int> psi, std::vector<int> lambda, const Rational& value);

    // integral of prod psi_i^{s_i} prod lambda_i^{e_i} over the genus-g,
    // h-marked moduli; psi.size() == h. Throws UnsupportedError on a
    // degree-correct class outside the table (and outside the g=0 rule).
    Rational integrate(int g, std::vector<int> psi, std::vector<int> lambda) const;

    size_t size() const { return table_.size(); }

private:
    std::map<HodgeKey, Rational> table_;
};

// The genus-1 starter table: psi_1 and lambda_1 on the one-pointed torus
// moduli, both 1/24. Genus 0 needs no entries.
HodgeOracle builtin_oracle_g1();

// Closed form of the genus-0 winding invariant at framing a:
//   C_0(n | a) = (a(1-a))^{h-1} prod_i binom(n_i a - 1, n_i - 1) d^{h-3},
// h = n.size(), d = sum n_i. n_i >= 1; a any integer. Exact.
Rational c_genus0(const std::vector<Int>& n, const Int& a);

// Genus-g winding invariant at framing a, evaluated by the truncated
// fixed-point sum: the same boundary prefactor as genus 0, times
//   int_{Mbar_{g,h}} L(1) L(a-1) L(-a) prod_i sum_s (n_i psi_i)^s
// kept in top degree 3g-3+h, where L(x) = sum (-1)^i lambda_i x^{g-i}.
// Requires a stable source (2g-2+h > 0); g=0, h>=3 reproduces c_genus0.
Rational c_genus_g(int g, const std::vector<Int>& n, const Int& a, const HodgeOracle& oracle);

// Closed genus-1 single-winding evaluation used as the independent check:
//   C_1(d | a) = binom(da-1, d-1) ((a^2-a+1) - a(a-1) d) / 24.
Rational genus1_closed_form(const Int& d, const Int& a);

// (-1)^{d-h} C_0(n | a) == C_0(n | 1-a)
bool sign_symmetry_check(const std::vector<Int>& n, const Int& a);

// Maslov index of the degree-d winding boundary condition.
Int maslov_p1(const Int& d);

// All ordered compositions of d into h parts >= 1 (lexicographic).
std::vector<std::vector<Int>> compositions(const Int& d, int h);

} // namespace moduli
