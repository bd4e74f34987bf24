#ifndef NCWARING_ANALYSIS_HPP
#define NCWARING_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncwaring/errors.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/word.hpp"

namespace ncwaring
{

//------------------------------------------------------------------------------
// Commutative equivalence and its block generalisation
//------------------------------------------------------------------------------

/// Number of words sharing the multidegree of `w`: d! / prod_j (count_j)!.
/// Exact; throws OverflowError only if the count itself exceeds 64 bits.
inline std::uint64_t eta(const Word& w, int g)
{
    return multinomial(multidegree(w, g).exponents());
}

inline std::uint64_t eta(const Multidegree& m) { return multinomial(m.exponents()); }

///
/// A word of length delta*d viewed as d consecutive blocks of length delta.
///
struct BlockView
{
    Word word;
    int delta = 1;
    std::vector<Word> blocks;

    /// Blocks sorted lexicographically. Two words are delta-equivalent iff
    /// their keys coincide; concatenating the key gives the smallest word of
    /// the class.
    std::vector<Word> class_key() const
    {
        std::vector<Word> key = blocks;
        std::sort(key.begin(), key.end());
        return key;
    }
};

inline BlockView block_view(const Word& w, int delta)
{
    if (delta < 1)
    {
        throw DomainError("block size delta must be positive");
    }
    if (w.size() % static_cast<std::size_t>(delta) != 0)
    {
        throw DomainError("delta = " + std::to_string(delta) + " does not divide word length " +
                          std::to_string(w.size()));
    }
    BlockView v{w, delta, {}};
    for (std::size_t k = 0; k < w.size(); k += static_cast<std::size_t>(delta))
    {
        v.blocks.push_back(w.slice(k, static_cast<std::size_t>(delta)));
    }
    return v;
}

/// a ~_delta b: both words have the same multiset of length-delta blocks.
inline bool delta_equivalent(const Word& a, const Word& b, int delta)
{
    if (a.size() != b.size())
    {
        throw ShapeError("delta_equivalent: words of different length");
    }
    return block_view(a, delta).class_key() == block_view(b, delta).class_key();
}

//------------------------------------------------------------------------------
// Compatibility
//------------------------------------------------------------------------------

struct CompatibilityWitness
{
    Word a;
    Word b;
    Coeff coeff_a;
    Coeff coeff_b;
};

struct CompatibilityReport
{
    bool compatible = true;
    int delta = 1;
    std::optional<CompatibilityWitness> witness;
};

struct CompatibilityOptions
{
    /// Coefficients within this absolute distance count as equal. Zero means
    /// exact comparison, which is the right setting for symbolic input.
    double tolerance = 0.0;
};

namespace detail
{

inline std::uint64_t saturating_multinomial(std::span<const int> counts)
{
    try
    {
        return multinomial(counts);
    }
    catch (const OverflowError&)
    {
        return std::numeric_limits<std::uint64_t>::max();
    }
}

inline Word concat(const std::vector<Word>& blocks)
{
    Word w;
    for (const auto& b : blocks)
    {
        w = w + b;
    }
    return w;
}

} // namespace detail

///
/// Checks P_a == P_b for all delta-equivalent words a, b of p, with absent
/// words carrying coefficient 0.
///
/// Words are grouped by their sorted-block key. Within a class the reference
/// word `a` is the lexicographically smallest member and the witness partner
/// `b` is the smallest member whose coefficient differs from P_a; classes are
/// visited in key order, so the reported witness is deterministic.
///
inline CompatibilityReport check_compatibility(const NCPolynomial& p, int delta,
                                               CompatibilityOptions opt = {})
{
    if (delta < 1)
    {
        throw DomainError("block size delta must be positive");
    }
    CompatibilityReport report;
    report.delta = delta;
    if (p.is_zero())
    {
        return report;
    }
    const auto degree = p.homogeneous_degree();
    if (!degree)
    {
        throw DomainError("compatibility requires a homogeneous polynomial");
    }
    if (*degree % delta != 0)
    {
        throw DomainError("delta = " + std::to_string(delta) + " does not divide degree " +
                          std::to_string(*degree));
    }

    auto same = [&](Coeff x, Coeff y) {
        return opt.tolerance > 0.0 ? std::abs(x - y) <= opt.tolerance : x == y;
    };

    std::map<std::vector<Word>, std::vector<const NCPolynomial::TermMap::value_type*>> classes;
    for (const auto& term : p.terms())
    {
        classes[block_view(term.first, delta).class_key()].push_back(&term);
    }

    for (const auto& [key, members] : classes)
    {
        const Word smallest = detail::concat(key);
        const Coeff ref = p.coeff(smallest);

        std::optional<Word> partner;
        for (const auto* term : members)
        {
            if (!same(term->second, ref))
            {
                partner = term->first;
                break;
            }
        }

        // Absent members have coefficient 0. If the reference is nonzero,
        // look for the smallest absent member; permutations of the sorted
        // blocks come out in lexicographic order of the concatenated word.
        std::vector<int> counts;
        for (std::size_t i = 0; i < key.size();)
        {
            std::size_t j = i;
            while (j < key.size() && key[j] == key[i])
            {
                ++j;
            }
            counts.push_back(static_cast<int>(j - i));
            i = j;
        }
        const bool has_absent = detail::saturating_multinomial(counts) > members.size();
        if (has_absent && !same(Coeff{}, ref))
        {
            std::vector<Word> perm = key;
            do
            {
                Word w = detail::concat(perm);
                if (p.terms().find(w) == p.terms().end())
                {
                    if (!partner || w < *partner)
                    {
                        partner = std::move(w);
                    }
                    break;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }

        if (partner)
        {
            report.compatible = false;
            report.witness = CompatibilityWitness{smallest, *partner, ref, p.coeff(*partner)};
            return report;
        }
    }
    return report;
}

//------------------------------------------------------------------------------
// Symmetric group action
//------------------------------------------------------------------------------

/// Replaces every word alpha by (alpha_{pi(1)}, ..., alpha_{pi(d)}).
/// `pi` lists 1-based positions.
inline NCPolynomial permute(const NCPolynomial& p, std::span<const int> pi)
{
    const std::size_t d = pi.size();
    std::vector<bool> seen(d, false);
    for (int k : pi)
    {
        if (k < 1 || static_cast<std::size_t>(k) > d || seen[static_cast<std::size_t>(k - 1)])
        {
            throw DomainError("not a permutation of {1.." + std::to_string(d) + "}");
        }
        seen[static_cast<std::size_t>(k - 1)] = true;
    }
    NCPolynomial out(p.arity());
    for (const auto& [w, c] : p.terms())
    {
        if (w.size() != d)
        {
            throw DomainError("permutation length does not match polynomial degree");
        }
        std::vector<int> moved(d);
        for (std::size_t i = 0; i < d; ++i)
        {
            moved[i] = w[static_cast<std::size_t>(pi[i] - 1)];
        }
        out.add_term(Word(std::move(moved)), c);
    }
    return out;
}

inline NCPolynomial permute(const NCPolynomial& p, std::initializer_list<int> pi)
{
    return permute(p, std::span<const int>(pi.begin(), pi.size()));
}

//------------------------------------------------------------------------------
// Commutative collapse and its inverse on compatible polynomials
//------------------------------------------------------------------------------

/// p^c: declare the variables commuting and sum coefficients per multidegree.
inline CPolynomial collapse(const NCPolynomial& p)
{
    CPolynomial out(p.arity());
    for (const auto& [w, c] : p.terms())
    {
        out.add_term(multidegree(w, p.arity()), c);
    }
    return out;
}

/// The unique compatible NC polynomial with collapse `pc`:
/// P_alpha = P^c_{m(alpha)} / eta(alpha).
inline NCPolynomial lift(const CPolynomial& pc, int d)
{
    if (!pc.is_homogeneous(d))
    {
        throw DomainError("lift requires a homogeneous polynomial of degree " + std::to_string(d));
    }
    NCPolynomial out(pc.arity());
    for (const auto& [m, c] : pc.terms())
    {
        const Coeff share = c / static_cast<double>(eta(m));
        std::vector<int> w = m.sorted_word().raw();
        do
        {
            out.add_term(Word(w), share);
        } while (std::next_permutation(w.begin(), w.end()));
    }
    return out;
}

//------------------------------------------------------------------------------
// Block substitution x^beta -> z_beta
//------------------------------------------------------------------------------

///
/// Bijection between the blocks beta in {1..g}^delta and the z-variables
/// z_1..z_{g^delta}, in lexicographic block order: (1,..,1) is z_1,
/// (g,..,g) is z_{g^delta}.
///
class IndexBijection
{
public:
    IndexBijection(int g, int delta) : g_(g), delta_(delta)
    {
        if (g < 1 || delta < 1)
        {
            throw DomainError("IndexBijection requires g >= 1 and delta >= 1");
        }
        size_ = static_cast<int>(word_count(g, delta));
    }

    int arity() const noexcept { return g_; }
    int delta() const noexcept { return delta_; }
    /// Number of z-variables, g^delta.
    int size() const noexcept { return size_; }

    /// 1-based z index of a length-delta block.
    int index_of(const Word& block) const
    {
        if (block.size() != static_cast<std::size_t>(delta_) || !block.valid_for(g_))
        {
            throw ShapeError("block does not belong to {1.." + std::to_string(g_) + "}^" +
                             std::to_string(delta_));
        }
        return static_cast<int>(lex_rank(block, g_)) + 1;
    }

    /// Block named by the 1-based z index k.
    Word block(int k) const
    {
        if (k < 1 || k > size_)
        {
            throw ArityError("z index out of range");
        }
        return word_from_lex_rank(static_cast<std::size_t>(k - 1), g_, delta_);
    }

    std::vector<Word> blocks() const
    {
        std::vector<Word> out;
        out.reserve(static_cast<std::size_t>(size_));
        for (int k = 1; k <= size_; ++k)
        {
            out.push_back(block(k));
        }
        return out;
    }

    friend bool operator==(const IndexBijection&, const IndexBijection&) = default;

private:
    int g_;
    int delta_;
    int size_ = 0;
};

struct PhiReduction
{
    NCPolynomial poly;
    IndexBijection bijection;
};

/// Regroups each word into blocks of length delta and renames block beta to
/// z_{index(beta)}. Coefficients carry over unchanged.
inline PhiReduction phi_reduce(const NCPolynomial& p, int delta)
{
    IndexBijection bij(p.arity(), delta);
    NCPolynomial q(bij.size());
    for (const auto& [w, c] : p.terms())
    {
        const BlockView v = block_view(w, delta);
        std::vector<int> z;
        z.reserve(v.blocks.size());
        for (const auto& b : v.blocks)
        {
            z.push_back(bij.index_of(b));
        }
        q.add_term(Word(std::move(z)), c);
    }
    return {std::move(q), bij};
}

inline NCPolynomial phi_inverse(const NCPolynomial& q, const IndexBijection& bij)
{
    if (q.arity() != bij.size())
    {
        throw ArityError("polynomial arity " + std::to_string(q.arity()) +
                         " does not match bijection size " + std::to_string(bij.size()));
    }
    NCPolynomial p(bij.arity());
    for (const auto& [z, c] : q.terms())
    {
        Word w;
        for (int k : z)
        {
            w = w + bij.block(k);
        }
        p.add_term(w, c);
    }
    return p;
}

} // namespace ncwaring

#endif // NCWARING_ANALYSIS_HPP
