#include "moduli/invariants.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace moduli {

bool HodgeKey::operator<(const HodgeKey& o) const
{
    return std::tie(g, psi, lambda) < std::tie(o.g, o.psi, o.lambda);
}

namespace {

int hodge_degree(const std::vector<int>& psi, const std::vector<int>& lambda)
{
    int d = 0;
    for (int s : psi) d += s;
    for (size_t i = 0; i < lambda.size(); ++i) d += static_cast<int>(i + 1) * lambda[i];
    return d;
}

std::string key_string(int g, const std::vector<int>& psi, const std::vector<int>& lambda)
{
    std::ostringstream os;
    os << "g=" << g << " psi=(";
    for (size_t i = 0; i < psi.size(); ++i) os << (i ? "," : "") << psi[i];
    os << ") lambda=(";
    for (size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
    os << ")";
    return os.str();
}

} // namespace

void HodgeOracle::add(int g, std::vector<int> psi, std::vector<int> lambda, const Rational& value)
{
    if (g < 0) throw DomainError("HodgeOracle::add: genus must be >= 0");
    if (static_cast<int>(lambda.size()) != g)
        throw DomainError("HodgeOracle::add: lambda exponent vector must have size g");
    const int h = static_cast<int>(psi.size());
    if (2 * g - 2 + h <= 0) throw DomainError("HodgeOracle::add: unstable moduli type");
    if (hodge_degree(psi, lambda) != 3 * g - 3 + h)
        throw DomainError("HodgeOracle::add: class degree must equal 3g-3+h");
    std::sort(psi.begin(), psi.end(), std::greater<int>());
    table_[HodgeKey{g, std::move(psi), std::move(lambda)}] = value;
}

Rational HodgeOracle::integrate(int g, std::vector<int> psi, std::vector<int> lambda) const
{
    if (g < 0) throw DomainError("HodgeOracle::integrate: genus must be >= 0");
    if (static_cast<int>(lambda.size()) != g)
        throw DomainError("HodgeOracle::integrate: lambda exponent vector must have size g");
    const int h = static_cast<int>(psi.size());
    if (2 * g - 2 + h <= 0)
        throw DomainError("HodgeOracle::integrate: unstable moduli type g=" + std::to_string(g)
                          + " h=" + std::to_string(h));
    for (int s : psi)
        if (s < 0) throw DomainError("HodgeOracle::integrate: negative psi exponent");
    for (int e : lambda)
        if (e < 0) throw DomainError("HodgeOracle::integrate: negative lambda exponent");

    if (hodge_degree(psi, lambda) != 3 * g - 3 + h) return 0; // off-dimension

    if (g == 0) {
        // int psi_1^{s_1} ... psi_h^{s_h} = (h-3)! / prod s_i!
        Rational v = factorial(static_cast<unsigned>(h - 3));
        for (int s : psi) v /= Rational(factorial(static_cast<unsigned>(s)));
        return v;
    }

    std::sort(psi.begin(), psi.end(), std::greater<int>());
    auto it = table_.find(HodgeKey{g, psi, lambda});
    if (it == table_.end())
        throw UnsupportedError("HodgeOracle: no table entry for " + key_string(g, psi, lambda));
    return it->second;
}

HodgeOracle builtin_oracle_g1()
{
    HodgeOracle o;
    o.add(1, {1}, {0}, Rational(1, 24));
    o.add(1, {0}, {1}, Rational(1, 24));
    return o;
}

// ---------------------------------------------------------------- closed forms

namespace {

void check_windings(const std::vector<Int>& n)
{
    if (n.empty()) throw DomainError("winding invariant: need at least one boundary winding");
    for (const Int& w : n)
        if (w < 1) throw DomainError("winding invariant: windings must be >= 1");
}

Int winding_sum(const std::vector<Int>& n)
{
    Int d = 0;
    for (const Int& w : n) d += w;
    return d;
}

// (a(1-a))^{h-1} prod binom(n_i a - 1, n_i - 1)
Rational boundary_prefactor(const std::vector<Int>& n, const Int& a)
{
    const int h = static_cast<int>(n.size());
    Rational pre = rational_pow(Rational(a * (1 - a)), h - 1);
    for (const Int& w : n)
        pre *= Rational(gen_binom(w * a - 1, static_cast<unsigned>(w - 1)));
    return pre;
}

} // namespace

Rational c_genus0(const std::vector<Int>& n, const Int& a)
{
    check_windings(n);
    const int h = static_cast<int>(n.size());
    const Int d = winding_sum(n);
    return boundary_prefactor(n, a) * rational_pow(Rational(d), h - 3);
}

Rational genus1_closed_form(const Int& d, const Int& a)
{
    if (d < 1) throw DomainError("genus1_closed_form: d must be >= 1");
    const Rational poly = Rational((a * a - a + 1) - a * (a - 1) * d);
    return Rational(gen_binom(d * a - 1, static_cast<unsigned>(d - 1))) * poly / 24;
}

bool sign_symmetry_check(const std::vector<Int>& n, const Int& a)
{
    check_windings(n);
    const int h = static_cast<int>(n.size());
    const Int d = winding_sum(n);
    const Rational lhs = c_genus0(n, a);
    const Rational rhs = c_genus0(n, 1 - a);
    const int sign = ((d - h) % 2 == 0) ? 1 : -1;
    return lhs * sign == rhs;
}

Int maslov_p1(const Int& d)
{
    if (d < 1) throw DomainError("maslov_p1: d must be >= 1");
    return 2 * d;
}

// ------------------------------------------------------ truncated fixed point

namespace {

// sparse polynomial in psi_1..psi_h, lambda_1..lambda_g, truncated by degree
using PolyKey = std::pair<std::vector<int>, std::vector<int>>; // (psi, lambda)
using Poly = std::map<PolyKey, Rational>;

int poly_degree(const PolyKey& k)
{
    return hodge_degree(k.first, k.second);
}

Poly truncated_product(const Poly& p, const Poly& q, int max_deg)
{
    Poly out;
    for (const auto& [ka, ca] : p) {
        const int da = poly_degree(ka);
        for (const auto& [kb, cb] : q) {
            if (da + poly_degree(kb) > max_deg) continue;
            PolyKey k = ka;
            for (size_t i = 0; i < k.first.size(); ++i) k.first[i] += kb.first[i];
            for (size_t i = 0; i < k.second.size(); ++i) k.second[i] += kb.second[i];
            out[std::move(k)] += ca * cb;
        }
    }
    return out;
}

// L(x) = sum_{i=0}^{g} (-1)^i lambda_i x^{g-i}; the t-powers that make this
// homogeneous cancel against the descendant series and the global t^{h-3},
// so only the x-coefficients are kept.
Poly hodge_factor(int g, int h, const Int& x)
{
    Poly p;
    for (int i = 0; i <= g; ++i) {
        PolyKey k{std::vector<int>(static_cast<size_t>(h), 0),
                  std::vector<int>(static_cast<size_t>(g), 0)};
        if (i > 0) k.second[static_cast<size_t>(i - 1)] = 1;
        Rational c = Rational(int_pow(x, static_cast<unsigned>(g - i)));
        if (i % 2) c = -c;
        p[std::move(k)] += c;
    }
    return p;
}

// sum_{s=0}^{max_deg} (n psi_slot)^s
Poly descendant_series(int g, int h, int slot, const Int& n, int max_deg)
{
    Poly p;
    for (int s = 0; s <= max_deg; ++s) {
        PolyKey k{std::vector<int>(static_cast<size_t>(h), 0),
                  std::vector<int>(static_cast<size_t>(g), 0)};
        k.first[static_cast<size_t>(slot)] = s;
        p[std::move(k)] = Rational(int_pow(n, static_cast<unsigned>(s)));
    }
    return p;
}

} // namespace

Rational c_genus_g(int g, const std::vector<Int>& n, const Int& a, const HodgeOracle& oracle)
{
    if (g < 0) throw DomainError("c_genus_g: genus must be >= 0");
    check_windings(n);
    const int h = static_cast<int>(n.size());
    if (2 * g - 2 + h <= 0)
        throw DomainError("c_genus_g: source type g=" + std::to_string(g) + " h="
                          + std::to_string(h) + " is unstable; use the closed genus-0 form");

    const int top = 3 * g - 3 + h;
    Poly p;
    p[PolyKey{std::vector<int>(static_cast<size_t>(h), 0),
              std::vector<int>(static_cast<size_t>(g), 0)}] = 1;
    for (const Int& x : {Int(1), Int(a - 1), Int(-a)})
        p = truncated_product(p, hodge_factor(g, h, x), top);
    for (int i = 0; i < h; ++i)
        p = truncated_product(p, descendant_series(g, h, i, n[static_cast<size_t>(i)], top), top);

    Rational sum = 0;
    for (const auto& [k, c] : p) {
        if (poly_degree(k) != top) continue; // nonzero t-weight, drops out
        sum += c * oracle.integrate(g, k.first, k.second);
    }
    return boundary_prefactor(n, a) * sum;
}

std::vector<std::vector<Int>> compositions(const Int& d, int h)
{
    if (h < 1) throw DomainError("compositions: need h >= 1 parts");
    if (d < h) return {};
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(static_cast<size_t>(h), 1);
    std::function<void(int, Int)> rec = [&](int slot, Int left) {
        if (slot == h - 1) {
            cur[static_cast<size_t>(slot)] = left;
            out.push_back(cur);
            return;
        }
        for (Int v = 1; v <= left - (h - 1 - slot); ++v) {
            cur[static_cast<size_t>(slot)] = v;
            rec(slot + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

} // namespace moduli
