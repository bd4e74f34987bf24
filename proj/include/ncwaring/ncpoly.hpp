#ifndef NCWARING_NCPOLY_HPP
#define NCWARING_NCPOLY_HPP

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "ncwaring/errors.hpp"
#include "ncwaring/word.hpp"

namespace ncwaring
{

using Coeff = std::complex<double>;

///
/// Element of the free associative algebra C<x_1, ..., x_g>.
///
/// Terms are kept in canonical order (degree, then lexicographic word). Zero
/// coefficients are never stored; pruning is exact (== 0), no tolerance is
/// applied in the symbolic layer.
///
class NCPolynomial
{
public:
    using TermMap = std::map<Word, Coeff>;

    explicit NCPolynomial(int g) : g_(g)
    {
        if (g < 1)
        {
            throw ArityError("arity g must be positive");
        }
    }

    NCPolynomial(int g, std::initializer_list<std::pair<Word, Coeff>> terms) : NCPolynomial(g)
    {
        for (const auto& [w, c] : terms)
        {
            add_term(w, c);
        }
    }

    static NCPolynomial constant(int g, Coeff c)
    {
        NCPolynomial p(g);
        p.add_term(Word{}, c);
        return p;
    }

    static NCPolynomial variable(int g, int i)
    {
        NCPolynomial p(g);
        p.add_term(Word{i}, 1.0);
        return p;
    }

    /// sum_i a[i] x_{i+1}; a.size() is the arity.
    static NCPolynomial linear_form(std::span<const Coeff> a)
    {
        NCPolynomial p(static_cast<int>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            p.add_term(Word{static_cast<int>(i) + 1}, a[i]);
        }
        return p;
    }

    int arity() const noexcept { return g_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Coeff coeff(const Word& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Coeff{} : it->second;
    }

    /// Adds c to the coefficient of w, dropping the term if it cancels exactly.
    void add_term(const Word& w, Coeff c)
    {
        if (!w.valid_for(g_))
        {
            throw ArityError("variable x" + std::to_string(w.max_index()) +
                             " out of range for g = " + std::to_string(g_));
        }
        if (c == Coeff{})
        {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted)
        {
            it->second += c;
            if (it->second == Coeff{})
            {
                terms_.erase(it);
            }
        }
    }

    /// True iff every stored word has length d (vacuously true for 0).
    bool is_homogeneous(int d) const noexcept
    {
        for (const auto& [w, c] : terms_)
        {
            if (static_cast<int>(w.size()) != d)
            {
                return false;
            }
        }
        return true;
    }

    /// The common degree of all terms; nullopt for 0 or mixed degrees.
    std::optional<int> homogeneous_degree() const noexcept
    {
        if (terms_.empty())
        {
            return std::nullopt;
        }
        const int d = static_cast<int>(terms_.begin()->first.size());
        return is_homogeneous(d) ? std::optional<int>(d) : std::nullopt;
    }

    int max_degree() const noexcept
    {
        return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
    }

    NCPolynomial& operator+=(const NCPolynomial& q)
    {
        check_arity(q);
        for (const auto& [w, c] : q.terms_)
        {
            add_term(w, c);
        }
        return *this;
    }

    NCPolynomial& operator-=(const NCPolynomial& q)
    {
        check_arity(q);
        for (const auto& [w, c] : q.terms_)
        {
            add_term(w, -c);
        }
        return *this;
    }

    NCPolynomial& operator*=(Coeff s)
    {
        if (s == Coeff{})
        {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();)
        {
            it->second *= s;
            it = (it->second == Coeff{}) ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend NCPolynomial operator+(NCPolynomial p, const NCPolynomial& q) { return p += q; }
    friend NCPolynomial operator-(NCPolynomial p, const NCPolynomial& q) { return p -= q; }
    friend NCPolynomial operator*(Coeff s, NCPolynomial p) { return p *= s; }

    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b)
    {
        return a.g_ == b.g_ && a.terms_ == b.terms_;
    }

    void check_arity(const NCPolynomial& q) const
    {
        if (q.g_ != g_)
        {
            throw ArityError("arity mismatch: " + std::to_string(g_) + " vs " + std::to_string(q.g_));
        }
    }

private:
    int g_;
    TermMap terms_;
};

/// Free-algebra product: the coefficient of w is the sum over splittings
/// w = u v of P_u Q_v.
inline NCPolynomial nc_mul(const NCPolynomial& p, const NCPolynomial& q)
{
    p.check_arity(q);
    NCPolynomial r(p.arity());
    for (const auto& [u, a] : p.terms())
    {
        for (const auto& [v, b] : q.terms())
        {
            r.add_term(u + v, a * b);
        }
    }
    return r;
}

inline NCPolynomial operator*(const NCPolynomial& p, const NCPolynomial& q) { return nc_mul(p, q); }

/// p^d by repeated left multiplication, d >= 1.
inline NCPolynomial nc_pow(const NCPolynomial& p, int d)
{
    if (d < 1)
    {
        throw DomainError("nc_pow requires d >= 1");
    }
    NCPolynomial r = p;
    for (int k = 1; k < d; ++k)
    {
        r = nc_mul(r, p);
    }
    return r;
}

///
/// Commutative polynomial in X_1..X_g keyed by exponent vectors.
///
class CPolynomial
{
public:
    using TermMap = std::map<Multidegree, Coeff>;

    explicit CPolynomial(int g) : g_(g)
    {
        if (g < 1)
        {
            throw ArityError("arity g must be positive");
        }
    }

    CPolynomial(int g, std::initializer_list<std::pair<Multidegree, Coeff>> terms) : CPolynomial(g)
    {
        for (const auto& [m, c] : terms)
        {
            add_term(m, c);
        }
    }

    int arity() const noexcept { return g_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Coeff coeff(const Multidegree& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Coeff{} : it->second;
    }

    void add_term(const Multidegree& m, Coeff c)
    {
        if (m.arity() != g_)
        {
            throw ArityError("multidegree length " + std::to_string(m.arity()) +
                             " does not match g = " + std::to_string(g_));
        }
        if (c == Coeff{})
        {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted)
        {
            it->second += c;
            if (it->second == Coeff{})
            {
                terms_.erase(it);
            }
        }
    }

    bool is_homogeneous(int d) const noexcept
    {
        for (const auto& [m, c] : terms_)
        {
            if (m.total() != d)
            {
                return false;
            }
        }
        return true;
    }

    friend CPolynomial operator*(const CPolynomial& p, const CPolynomial& q)
    {
        if (p.g_ != q.g_)
        {
            throw ArityError("arity mismatch");
        }
        CPolynomial r(p.g_);
        for (const auto& [m, a] : p.terms_)
        {
            for (const auto& [n, b] : q.terms_)
            {
                r.add_term(m + n, a * b);
            }
        }
        return r;
    }

    friend bool operator==(const CPolynomial& a, const CPolynomial& b)
    {
        return a.g_ == b.g_ && a.terms_ == b.terms_;
    }

private:
    int g_;
    TermMap terms_;
};

} // namespace ncwaring

#endif // NCWARING_NCPOLY_HPP
