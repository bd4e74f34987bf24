#ifndef NCWARING_WORD_HPP
#define NCWARING_WORD_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "ncwaring/errors.hpp"

namespace ncwaring
{

///
/// An ordered index tuple alpha = (alpha_1, ..., alpha_d) naming the
/// noncommutative monomial x_{alpha_1} x_{alpha_2} ... x_{alpha_d}.
///
/// Indices are 1-based. The word itself does not know its arity; the owning
/// polynomial validates every index against its g. Words are ordered first by
/// length and then lexicographically, which is the canonical term order.
///
class Word
{
public:
    using value_type = int;

    Word() = default;
    Word(std::initializer_list<int> idx) : idx_(idx) {}
    explicit Word(std::vector<int> idx) : idx_(std::move(idx)) {}

    std::size_t size() const noexcept { return idx_.size(); }
    bool empty() const noexcept { return idx_.empty(); }
    int operator[](std::size_t i) const { return idx_[i]; }

    std::span<const int> indices() const noexcept { return idx_; }
    auto begin() const noexcept { return idx_.begin(); }
    auto end() const noexcept { return idx_.end(); }

    /// Largest index in the word, 0 for the empty word.
    int max_index() const noexcept
    {
        return idx_.empty() ? 0 : *std::max_element(idx_.begin(), idx_.end());
    }

    bool valid_for(int g) const noexcept
    {
        return std::all_of(idx_.begin(), idx_.end(),
                           [g](int i) { return i >= 1 && i <= g; });
    }

    /// Sub-word [first, first + count).
    Word slice(std::size_t first, std::size_t count) const
    {
        return Word(std::vector<int>(idx_.begin() + static_cast<std::ptrdiff_t>(first),
                                     idx_.begin() + static_cast<std::ptrdiff_t>(first + count)));
    }

    friend Word operator+(const Word& a, const Word& b)
    {
        std::vector<int> out;
        out.reserve(a.size() + b.size());
        out.insert(out.end(), a.idx_.begin(), a.idx_.end());
        out.insert(out.end(), b.idx_.begin(), b.idx_.end());
        return Word(std::move(out));
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b)
    {
        if (auto c = a.size() <=> b.size(); c != 0)
        {
            return c;
        }
        return std::lexicographical_compare_three_way(a.idx_.begin(), a.idx_.end(),
                                                      b.idx_.begin(), b.idx_.end());
    }

    const std::vector<int>& raw() const noexcept { return idx_; }

private:
    std::vector<int> idx_;
};

///
/// Exponent vector (e_1, ..., e_g) of a commutative monomial X_1^{e_1}...X_g^{e_g}.
///
/// Ordered by total degree, then with larger leading exponents first, so that
/// X_1^3 precedes X_1^2 X_2.
///
class Multidegree
{
public:
    Multidegree() = default;
    explicit Multidegree(std::vector<int> exps) : exps_(std::move(exps))
    {
        total_ = std::accumulate(exps_.begin(), exps_.end(), 0);
    }
    Multidegree(std::initializer_list<int> exps) : Multidegree(std::vector<int>(exps)) {}

    int total() const noexcept { return total_; }
    int arity() const noexcept { return static_cast<int>(exps_.size()); }
    int operator[](std::size_t j) const { return exps_[j]; }
    const std::vector<int>& exponents() const noexcept { return exps_; }

    /// The lexicographically smallest word with this multidegree,
    /// e.g. (2,1,1) -> (1,1,2,3).
    Word sorted_word() const
    {
        std::vector<int> w;
        w.reserve(static_cast<std::size_t>(total_));
        for (std::size_t j = 0; j < exps_.size(); ++j)
        {
            w.insert(w.end(), static_cast<std::size_t>(exps_[j]), static_cast<int>(j) + 1);
        }
        return Word(std::move(w));
    }

    friend Multidegree operator+(const Multidegree& a, const Multidegree& b)
    {
        if (a.arity() != b.arity())
        {
            throw ArityError("multidegree arity mismatch");
        }
        std::vector<int> e(a.exps_);
        for (std::size_t j = 0; j < e.size(); ++j)
        {
            e[j] += b.exps_[j];
        }
        return Multidegree(std::move(e));
    }

    friend bool operator==(const Multidegree& a, const Multidegree& b)
    {
        return a.exps_ == b.exps_;
    }
    friend std::strong_ordering operator<=>(const Multidegree& a, const Multidegree& b)
    {
        if (auto c = a.total_ <=> b.total_; c != 0)
        {
            return c;
        }
        // larger exponents first
        return std::lexicographical_compare_three_way(b.exps_.begin(), b.exps_.end(),
                                                      a.exps_.begin(), a.exps_.end());
    }

private:
    std::vector<int> exps_;
    int total_ = 0;
};

/// Count of each letter 1..g in `w` (the indicator counts).
inline Multidegree multidegree(const Word& w, int g)
{
    if (!w.valid_for(g))
    {
        throw ArityError("word index outside [1, " + std::to_string(g) + "]");
    }
    std::vector<int> e(static_cast<std::size_t>(g), 0);
    for (int i : w)
    {
        ++e[static_cast<std::size_t>(i - 1)];
    }
    return Multidegree(std::move(e));
}

namespace detail
{

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    {
        throw OverflowError("integer overflow in exact combinatorial count");
    }
    return a * b;
}

/// C(n, k) exactly; throws OverflowError if the result does not fit.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
    {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
    {
        // r * (n - k + i) / i is exact at every step; divide by the gcd first
        // so the intermediate product stays as small as possible.
        std::uint64_t num = n - k + i;
        std::uint64_t den = i;
        const std::uint64_t g1 = std::gcd(r, den);
        r /= g1;
        den /= g1;
        const std::uint64_t g2 = std::gcd(num, den);
        num /= g2;
        den /= g2;
        r = checked_mul(r, num) / den;
    }
    return r;
}

} // namespace detail

///
/// Multinomial coefficient (sum k)! / prod(k_j!), computed as a product of
/// binomials so no factorial is ever formed.
///
inline std::uint64_t multinomial(std::span<const int> counts)
{
    std::uint64_t result = 1;
    std::uint64_t running = 0;
    for (int k : counts)
    {
        running += static_cast<std::uint64_t>(k);
        result = detail::checked_mul(result, detail::binomial(running, static_cast<std::uint64_t>(k)));
    }
    return result;
}

/// Number of words of length d over g letters, g^d.
inline std::uint64_t word_count(int g, int d)
{
    std::uint64_t r = 1;
    for (int i = 0; i < d; ++i)
    {
        r = detail::checked_mul(r, static_cast<std::uint64_t>(g));
    }
    return r;
}

///
/// Calls `f(word)` for every word of length d over {1..g} in lexicographic order.
///
template <typename F>
void for_each_word(int g, int d, F&& f)
{
    std::vector<int> w(static_cast<std::size_t>(d), 1);
    while (true)
    {
        f(Word(w));
        int pos = d - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(pos)] == g)
        {
            w[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0)
        {
            return;
        }
        ++w[static_cast<std::size_t>(pos)];
    }
}

///
/// Calls `f(multidegree)` for every exponent vector of length g summing to d,
/// in the Multidegree ordering (X_1^d first).
///
template <typename F>
void for_each_multidegree(int g, int d, F&& f)
{
    std::vector<int> e(static_cast<std::size_t>(g), 0);
    auto rec = [&](auto&& self, int j, int remaining) -> void {
        if (j == g - 1)
        {
            e[static_cast<std::size_t>(j)] = remaining;
            f(Multidegree(e));
            return;
        }
        for (int k = remaining; k >= 0; --k)
        {
            e[static_cast<std::size_t>(j)] = k;
            self(self, j + 1, remaining - k);
        }
    };
    if (g >= 1)
    {
        rec(rec, 0, d);
    }
}

/// Position of `w` in the lexicographic enumeration of words of its length.
inline std::size_t lex_rank(const Word& w, int g)
{
    std::size_t r = 0;
    for (int i : w)
    {
        r = r * static_cast<std::size_t>(g) + static_cast<std::size_t>(i - 1);
    }
    return r;
}

/// Inverse of lex_rank.
inline Word word_from_lex_rank(std::size_t r, int g, int d)
{
    std::vector<int> w(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k)
    {
        w[static_cast<std::size_t>(k)] = static_cast<int>(r % static_cast<std::size_t>(g)) + 1;
        r /= static_cast<std::size_t>(g);
    }
    return Word(std::move(w));
}

} // namespace ncwaring

#endif // NCWARING_WORD_HPP
