#ifndef NCWARING_TENSOR_HPP
#define NCWARING_TENSOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ncwaring/analysis.hpp"
#include "ncwaring/errors.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/word.hpp"

namespace ncwaring
{

///
/// Order-d symmetric tensor on C^g, stored compressed: one value per
/// multidegree. Dense entries T_alpha are derived through multidegree(alpha),
/// so the tensor is symmetric by construction.
///
class SymmetricTensor
{
public:
    using EntryMap = std::map<Multidegree, Coeff>;

    SymmetricTensor(int g, int d) : g_(g), d_(d)
    {
        if (g < 1 || d < 0)
        {
            throw DomainError("SymmetricTensor requires g >= 1 and d >= 0");
        }
    }

    /// Builds from g^d dense entries in lexicographic word order. Throws
    /// DomainError if entries within a symmetry class differ by more than
    /// 1e-12 (relative to the largest entry, floored at 1).
    static SymmetricTensor from_dense(int g, int d, std::span<const Coeff> dense)
    {
        if (dense.size() != word_count(g, d))
        {
            throw ShapeError("dense tensor has " + std::to_string(dense.size()) + " entries, expected " +
                             std::to_string(word_count(g, d)));
        }
        double scale = 1.0;
        for (const auto& v : dense)
        {
            scale = std::max(scale, std::abs(v));
        }
        SymmetricTensor t(g, d);
        std::size_t idx = 0;
        std::map<Multidegree, Coeff> first;
        for_each_word(g, d, [&](const Word& w) {
            const Coeff v = dense[idx++];
            auto [it, inserted] = first.try_emplace(multidegree(w, g), v);
            if (!inserted && std::abs(it->second - v) > 1e-12 * scale)
            {
                throw DomainError("tensor is not symmetric");
            }
        });
        for (const auto& [m, v] : first)
        {
            t.set(m, v);
        }
        return t;
    }

    /// v^{(x) d}.
    static SymmetricTensor rank_one(std::span<const Coeff> v, int d)
    {
        const int g = static_cast<int>(v.size());
        SymmetricTensor t(g, d);
        for_each_multidegree(g, d, [&](const Multidegree& m) {
            Coeff prod{1.0, 0.0};
            for (int j = 0; j < g; ++j)
            {
                for (int e = 0; e < m[static_cast<std::size_t>(j)]; ++e)
                {
                    prod *= v[static_cast<std::size_t>(j)];
                }
            }
            t.set(m, prod);
        });
        return t;
    }

    int dimension() const noexcept { return g_; }
    int order() const noexcept { return d_; }
    const EntryMap& entries() const noexcept { return entries_; }

    void set(const Multidegree& m, Coeff v)
    {
        if (m.arity() != g_ || m.total() != d_)
        {
            throw ShapeError("multidegree does not match tensor shape");
        }
        if (v == Coeff{})
        {
            entries_.erase(m);
        }
        else
        {
            entries_[m] = v;
        }
    }

    Coeff entry(const Multidegree& m) const
    {
        auto it = entries_.find(m);
        return it == entries_.end() ? Coeff{} : it->second;
    }

    Coeff entry(const Word& w) const
    {
        if (w.size() != static_cast<std::size_t>(d_))
        {
            throw ShapeError("index word has wrong length");
        }
        return entry(multidegree(w, g_));
    }

    /// All g^d entries in lexicographic word order.
    std::vector<Coeff> dense() const
    {
        std::vector<Coeff> out;
        out.reserve(word_count(g_, d_));
        for_each_word(g_, d_, [&](const Word& w) { out.push_back(entry(w)); });
        return out;
    }

    /// Frobenius norm over the dense tensor (each compressed entry weighted
    /// by the size of its symmetry class).
    double norm() const
    {
        double s = 0.0;
        for (const auto& [m, v] : entries_)
        {
            s += static_cast<double>(eta(m)) * std::norm(v);
        }
        return std::sqrt(s);
    }

    SymmetricTensor& operator+=(const SymmetricTensor& o)
    {
        check_shape(o);
        for (const auto& [m, v] : o.entries_)
        {
            set(m, entry(m) + v);
        }
        return *this;
    }

    SymmetricTensor& operator-=(const SymmetricTensor& o)
    {
        check_shape(o);
        for (const auto& [m, v] : o.entries_)
        {
            set(m, entry(m) - v);
        }
        return *this;
    }

    friend SymmetricTensor operator-(SymmetricTensor a, const SymmetricTensor& b) { return a -= b; }

    friend bool operator==(const SymmetricTensor&, const SymmetricTensor&) = default;

private:
    void check_shape(const SymmetricTensor& o) const
    {
        if (o.g_ != g_ || o.d_ != d_)
        {
            throw ShapeError("tensor shape mismatch");
        }
    }

    int g_;
    int d_;
    EntryMap entries_;
};

/// T_alpha = pc[m(alpha)] / eta(alpha), so that sum_alpha T_alpha X^alpha = pc.
inline SymmetricTensor tensor_from_cpoly(const CPolynomial& pc, int d)
{
    if (!pc.is_homogeneous(d))
    {
        throw DomainError("tensor_from_cpoly requires a homogeneous polynomial of degree " +
                          std::to_string(d));
    }
    SymmetricTensor t(pc.arity(), d);
    for (const auto& [m, c] : pc.terms())
    {
        t.set(m, c / static_cast<double>(eta(m)));
    }
    return t;
}

/// For compatible p this is T_alpha = P_alpha.
inline SymmetricTensor tensor_from_ncpoly(const NCPolynomial& p, int d)
{
    return tensor_from_cpoly(collapse(p), d);
}

inline CPolynomial cpoly_from_tensor(const SymmetricTensor& t)
{
    CPolynomial pc(t.dimension());
    for (const auto& [m, v] : t.entries())
    {
        pc.add_term(m, static_cast<double>(eta(m)) * v);
    }
    return pc;
}

///
/// Generic complex Waring rank of a degree-d form in g variables:
/// ceil(C(g+d-1, d) / g), except g for d = 2 and one more term for
/// (d, g) in {(3,5), (4,3), (4,4), (4,5)}.
///
/// This is a statement about general forms; it is a search ceiling hint for
/// any particular polynomial, not a bound on its rank.
///
inline int generic_rank(int g, int d)
{
    if (g < 1 || d < 1)
    {
        throw DomainError("generic_rank requires g >= 1 and d >= 1");
    }
    if (d == 1)
    {
        return 1;
    }
    if (d == 2)
    {
        return g;
    }
    const std::uint64_t dim = detail::binomial(static_cast<std::uint64_t>(g + d - 1),
                                               static_cast<std::uint64_t>(d));
    const auto base = static_cast<int>((dim + static_cast<std::uint64_t>(g) - 1) / static_cast<std::uint64_t>(g));
    const bool exceptional = (d == 3 && g == 5) || (d == 4 && (g == 3 || g == 4 || g == 5));
    return exceptional ? base + 1 : base;
}

/// Dimension of the space of degree-d forms in n variables, C(n+d-1, d).
inline std::uint64_t forms_dimension(int n, int d)
{
    return detail::binomial(static_cast<std::uint64_t>(n + d - 1), static_cast<std::uint64_t>(d));
}

} // namespace ncwaring

#endif // NCWARING_TENSOR_HPP
