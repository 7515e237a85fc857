#include "moduli/surface_types.hpp"

#include <numeric>

namespace moduli {

void validate(const TopType& t)
{
    if (t.g < 0) throw DomainError("TopType: g must be >= 0, got g=" + std::to_string(t.g));
    if (t.h < 1) throw DomainError("TopType: h must be >= 1, got h=" + std::to_string(t.h));
}

int complex_double(const TopType& t)
{
    validate(t);
    return 2 * t.g + t.h - 1;
}

bool is_stable(const TopType& t)
{
    validate(t);
    return 2 - 2 * t.g - t.h < 0;
}

void validate(const MarkedTopType& t)
{
    validate(t.base);
    if (t.n < 0) throw DomainError("MarkedTopType: n must be >= 0, got n=" + std::to_string(t.n));
    if (static_cast<int>(t.m.size()) != t.base.h)
        throw DomainError("MarkedTopType: m must have one entry per boundary circle, got "
                          + std::to_string(t.m.size()) + " entries for h=" + std::to_string(t.base.h));
    for (int mi : t.m)
        if (mi < 0) throw DomainError("MarkedTopType: m entries must be >= 0, got " + std::to_string(mi));
}

int sum_boundary_marks(const MarkedTopType& t)
{
    return std::accumulate(t.m.begin(), t.m.end(), 0);
}

void validate(const SymType& t)
{
    if (t.g_tilde < 0)
        throw DomainError("SymType: g_tilde must be >= 0, got g_tilde=" + std::to_string(t.g_tilde));
    if (t.k != 0 && t.k != 1)
        throw DomainError("SymType: k must be 0 or 1, got k=" + std::to_string(t.k));
    if (t.h < 0 || t.h > t.g_tilde + 1)
        throw DomainError("SymType: h must satisfy 0 <= h <= g_tilde+1, got h=" + std::to_string(t.h));
    if (t.k == 0) {
        // Dividing: the fixed circles separate, forcing h > 0 and the parity
        // h == g_tilde + 1 (mod 2).
        if (t.h == 0)
            throw DomainError("SymType: k=0 requires h > 0, got h=0");
        if ((t.h - (t.g_tilde + 1)) % 2 != 0)
            throw DomainError("SymType: k=0 requires h == g_tilde+1 (mod 2), got h="
                              + std::to_string(t.h) + ", g_tilde=" + std::to_string(t.g_tilde));
    } else {
        if (t.h > t.g_tilde)
            throw DomainError("SymType: k=1 requires h <= g_tilde, got h=" + std::to_string(t.h));
    }
}

std::vector<SymType> classify_symmetric(int g_tilde)
{
    if (g_tilde < 0)
        throw DomainError("classify_symmetric: g_tilde must be >= 0, got g_tilde="
                          + std::to_string(g_tilde));
    std::vector<SymType> out;
    for (int k = 0; k <= 1; ++k)
        for (int h = 0; h <= g_tilde + 1; ++h) {
            SymType t{g_tilde, h, k};
            try {
                validate(t);
            } catch (const DomainError&) {
                continue;
            }
            out.push_back(t);
        }
    std::sort(out.begin(), out.end());
    return out;
}

QuotientType quotient_type(const SymType& t)
{
    validate(t);
    QuotientType q;
    q.h = t.h;
    if (t.k == 0) {
        // Orientable quotient of genus g with h circles doubles to
        // g_tilde = 2g + h - 1.
        const int twice_g = t.g_tilde - t.h + 1;
        if (twice_g % 2 != 0)
            throw InternalError("quotient_type: dividing type failed parity");
        q.orientable = true;
        q.genus = twice_g / 2;
        q.cross_caps = 0;
    } else {
        // Nonorientable quotient with c crosscaps and h circles doubles to
        // g_tilde = c + h - 1.
        q.orientable = false;
        q.genus = 0;
        q.cross_caps = t.g_tilde - t.h + 1;
        if (q.cross_caps < 1)
            throw InternalError("quotient_type: nonorientable quotient needs >= 1 crosscap");
    }
    return q;
}

SymType symmetric_double(const TopType& t)
{
    validate(t);
    return SymType{complex_double(t), t.h, 0};
}

std::string to_string(const TopType& t)
{
    return "(" + std::to_string(t.g) + "," + std::to_string(t.h) + ")";
}

std::string to_string(const SymType& t)
{
    return "(" + std::to_string(t.g_tilde) + "," + std::to_string(t.h) + ","
           + std::to_string(t.k) + ")";
}

std::string to_string(const QuotientType& t)
{
    if (t.orientable)
        return "orientable genus " + std::to_string(t.genus) + " with " + std::to_string(t.h)
               + " boundary circles";
    return "nonorientable with " + std::to_string(t.cross_caps) + " crosscaps and "
           + std::to_string(t.h) + " boundary circles";
}

} // namespace moduli
