#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ncwaring/analysis.hpp"
#include "ncwaring/parse.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ncwaring;

namespace
{

NCPolynomial rank4_cubic() { return parse_ncpoly(fixtures::kRank4Cubic, 3); }

/// Random polynomial that is compatible by construction with probability 1/2.
NCPolynomial random_maybe_compatible(std::mt19937_64& rng, int g, int d)
{
    NCPolynomial p = oracle::random_integer_poly(rng, g, d, 3);
    if (rng() % 2 == 0)
    {
        p = lift(collapse(p), d);
    }
    return p;
}

} // namespace

TEST(Eta, Examples)
{
    EXPECT_EQ(eta(Word{1, 2, 1, 3}, 3), oracle::brute_eta({1, 2, 1, 3}, 3));
    EXPECT_EQ(eta(Word{1, 2, 1, 3}, 3), 12u);
    EXPECT_EQ(eta(Word{2, 2, 2}, 2), 1u);
    EXPECT_EQ(eta(Word{1, 2}, 2), 2u);
}

TEST(Eta, MatchesEnumerationSmall)
{
    for (int g = 1; g <= 3; ++g)
    {
        for (int d = 1; d <= 4; ++d)
        {
            for (const auto& w : oracle::all_words(g, d))
            {
                EXPECT_EQ(eta(Word(w), g), oracle::brute_eta(w, g));
            }
        }
    }
}

TEST(DeltaEquivalence, Examples)
{
    EXPECT_TRUE(delta_equivalent(Word{1, 2, 2, 1}, Word{2, 1, 1, 2}, 2));
    EXPECT_FALSE(delta_equivalent(Word{1, 2, 2, 1}, Word{2, 1, 1, 2}, 4));
    EXPECT_TRUE(delta_equivalent(Word{1, 2, 2, 1}, Word{2, 1, 1, 2}, 1));
    EXPECT_TRUE(delta_equivalent(Word{1, 1, 2, 2}, Word{1, 2, 2, 1}, 1));
    EXPECT_FALSE(delta_equivalent(Word{1, 1, 2, 2}, Word{1, 2, 2, 1}, 2));
}

TEST(DeltaEquivalence, RejectsBadShapes)
{
    EXPECT_THROW(delta_equivalent(Word{1, 2}, Word{1, 2, 1}, 1), ShapeError);
    EXPECT_THROW(delta_equivalent(Word{1, 2, 1}, Word{1, 2, 1}, 2), DomainError);
    EXPECT_THROW(block_view(Word{1, 2}, 0), DomainError);
}

TEST(DeltaEquivalence, BlockViewConcatenates)
{
    const auto v = block_view(Word{1, 2, 3, 1, 2, 3}, 3);
    ASSERT_EQ(v.blocks.size(), 2u);
    Word joined;
    for (const auto& b : v.blocks)
    {
        joined = joined + b;
    }
    EXPECT_EQ(joined, v.word);
}

TEST(DeltaEquivalence, EquivalenceRelationAndMatchesBruteForce)
{
    for (int len = 1; len <= 6; ++len)
    {
        const auto words = oracle::all_words(2, len);
        for (int delta = 1; delta <= len; ++delta)
        {
            if (len % delta != 0)
            {
                continue;
            }
            for (const auto& a : words)
            {
                EXPECT_TRUE(delta_equivalent(Word(a), Word(a), delta));
                for (const auto& b : words)
                {
                    const bool ab = delta_equivalent(Word(a), Word(b), delta);
                    EXPECT_EQ(ab, delta_equivalent(Word(b), Word(a), delta));
                    EXPECT_EQ(ab, oracle::brute_delta_equivalent(a, b, delta));
                }
            }
        }
    }
}

TEST(DeltaEquivalence, TransitiveOnDegreeFour)
{
    const auto words = oracle::all_words(2, 4);
    for (int delta : {1, 2, 4})
    {
        for (const auto& a : words)
        {
            for (const auto& b : words)
            {
                if (!delta_equivalent(Word(a), Word(b), delta))
                {
                    continue;
                }
                for (const auto& c : words)
                {
                    if (delta_equivalent(Word(b), Word(c), delta))
                    {
                        EXPECT_TRUE(delta_equivalent(Word(a), Word(c), delta));
                    }
                }
            }
        }
    }
}

TEST(DeltaEquivalence, CoarserBlocksRefine)
{
    const auto words = oracle::all_words(2, 4);
    for (auto [coarse, fine] : {std::pair{2, 1}, std::pair{4, 1}, std::pair{4, 2}})
    {
        for (const auto& a : words)
        {
            for (const auto& b : words)
            {
                if (delta_equivalent(Word(a), Word(b), coarse))
                {
                    EXPECT_TRUE(delta_equivalent(Word(a), Word(b), fine));
                }
            }
        }
    }
}

TEST(Compatibility, SwapQuarticAcrossBlockSizes)
{
    const auto p = parse_ncpoly(fixtures::kSwapQuartic, 2);
    EXPECT_TRUE(check_compatibility(p, 2).compatible);
    EXPECT_TRUE(check_compatibility(p, 4).compatible);
    const auto r = check_compatibility(p, 1);
    ASSERT_FALSE(r.compatible);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->a, (Word{1, 1, 2, 2}));
    EXPECT_EQ(r.witness->b, (Word{1, 2, 2, 1}));
    EXPECT_EQ(r.witness->coeff_a, Coeff(0.0));
    EXPECT_EQ(r.witness->coeff_b, Coeff(1.0));
    EXPECT_EQ(r.delta, 1);
}

TEST(Compatibility, BlockProductWitness)
{
    const auto p = parse_ncpoly(fixtures::kBlockProduct, 2);
    const auto r = check_compatibility(p, 2);
    ASSERT_FALSE(r.compatible);
    EXPECT_EQ(r.witness->a, (Word{1, 1, 1, 2}));
    EXPECT_EQ(r.witness->b, (Word{1, 2, 1, 1}));
    EXPECT_EQ(r.witness->coeff_a, Coeff(0.0));
    EXPECT_EQ(r.witness->coeff_b, Coeff(1.0));
    EXPECT_TRUE(delta_equivalent(r.witness->a, r.witness->b, 2));
}

TEST(Compatibility, CommutatorWitness)
{
    const auto r = check_compatibility(parse_ncpoly("x1*x2 - x2*x1", 2), 1);
    ASSERT_FALSE(r.compatible);
    EXPECT_EQ(r.witness->a, (Word{1, 2}));
    EXPECT_EQ(r.witness->b, (Word{2, 1}));
    EXPECT_EQ(r.witness->coeff_a, Coeff(1.0));
    EXPECT_EQ(r.witness->coeff_b, Coeff(-1.0));
}

TEST(Compatibility, MissingWordAfterPresentReference)
{
    // reference (1,1,2) present, (1,2,1) present with equal value, (2,1,1) absent
    const auto r = check_compatibility(parse_ncpoly("x1*x1*x2 + x1*x2*x1", 2), 1);
    ASSERT_FALSE(r.compatible);
    EXPECT_EQ(r.witness->a, (Word{1, 1, 2}));
    EXPECT_EQ(r.witness->b, (Word{2, 1, 1}));
    EXPECT_EQ(r.witness->coeff_b, Coeff(0.0));
}

TEST(Compatibility, Rank4CubicAndEdgeCases)
{
    EXPECT_TRUE(check_compatibility(rank4_cubic(), 1).compatible);
    EXPECT_TRUE(check_compatibility(NCPolynomial(3), 1).compatible);
    EXPECT_THROW(check_compatibility(parse_ncpoly("x1 + x1*x2", 2), 1), DomainError);
    EXPECT_THROW(check_compatibility(parse_ncpoly("x1*x2*x1", 2), 2), DomainError);
}

TEST(Compatibility, ToleranceOption)
{
    const auto p = parse_ncpoly("x1*x2 + 1.0000000001*x2*x1", 2);
    EXPECT_FALSE(check_compatibility(p, 1).compatible);
    EXPECT_TRUE(check_compatibility(p, 1, {1e-8}).compatible);
}

TEST(Compatibility, EveryDegreeDeltaPolynomialIsDeltaCompatible)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial)
    {
        const int delta = 1 + static_cast<int>(rng() % 4);
        const auto p = oracle::random_integer_poly(rng, 3, delta, 6);
        EXPECT_TRUE(check_compatibility(p, delta).compatible);
    }
}

TEST(Compatibility, EquivalentToInvarianceUnderAdjacentTranspositions)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 150; ++trial)
    {
        const int d = 2 + static_cast<int>(rng() % 4);
        const int g = 2 + static_cast<int>(rng() % 2);
        const auto p = random_maybe_compatible(rng, g, d);
        bool invariant = true;
        for (int k = 1; k < d; ++k)
        {
            std::vector<int> pi(static_cast<std::size_t>(d));
            std::iota(pi.begin(), pi.end(), 1);
            std::swap(pi[static_cast<std::size_t>(k - 1)], pi[static_cast<std::size_t>(k)]);
            // lift() divides by eta, so compare with a tolerance
            invariant = invariant && oracle::max_coeff_diff(permute(p, pi), p) <= 1e-12;
        }
        EXPECT_EQ(check_compatibility(p, 1, {1e-12}).compatible, invariant) << to_string(p);
    }
}

TEST(Permute, Examples)
{
    EXPECT_EQ(permute(parse_ncpoly("x1*x2", 2), {2, 1}), parse_ncpoly("x2*x1", 2));
    const auto swapq = parse_ncpoly(fixtures::kSwapQuartic, 2);
    const auto moved = permute(swapq, {2, 1, 3, 4});
    EXPECT_EQ(moved, parse_ncpoly("x2*x1*x2*x1 + x1*x2*x1*x2", 2));
    EXPECT_NE(moved, swapq);
    const auto p = rank4_cubic();
    EXPECT_EQ(permute(p, {3, 1, 2}), p);
    EXPECT_EQ(permute(p, {2, 1, 3}), p);
}

TEST(Permute, Errors)
{
    const auto p = parse_ncpoly("x1*x2", 2);
    EXPECT_THROW(permute(p, {1, 1}), DomainError);
    EXPECT_THROW(permute(p, {1, 2, 3}), DomainError);
    EXPECT_THROW(permute(parse_ncpoly("x1*x2 + x1", 2), {2, 1}), DomainError);
}

TEST(Collapse, Examples)
{
    EXPECT_TRUE(collapse(parse_ncpoly("x1*x2 - x2*x1", 2)).is_zero());
    EXPECT_EQ(collapse(parse_ncpoly(fixtures::kSplitQuartic, 2)),
              CPolynomial(2, {{{4, 0}, 1.0}, {{2, 2}, 2.0}, {{0, 4}, 1.0}}));
}

TEST(Collapse, Rank4CubicSumsEachClass)
{
    // oracle: add up the coefficients word by word
    const auto p = rank4_cubic();
    std::map<std::vector<int>, Coeff> sums;
    for (const auto& [w, c] : p.terms())
    {
        sums[oracle::letter_counts(w.raw(), 3)] += c;
    }
    const CPolynomial expected(3, {{{3, 0, 0}, 1.0},
                                   {{0, 3, 0}, -4.0},
                                   {{0, 0, 3}, -4.0},
                                   {{2, 1, 0}, 15.0},
                                   {{2, 0, 1}, -9.0},
                                   {{1, 2, 0}, 21.0},
                                   {{0, 2, 1}, -33.0},
                                   {{1, 0, 2}, 18.0},
                                   {{0, 1, 2}, -18.0},
                                   {{1, 1, 1}, 6.0}});
    ASSERT_EQ(sums.size(), expected.size());
    for (const auto& [counts, c] : sums)
    {
        EXPECT_EQ(expected.coeff(Multidegree(counts)), c);
    }
    EXPECT_EQ(collapse(p), expected);
}

TEST(Collapse, InvariantUnderPermutationAndMultiplicative)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial)
    {
        const int g = 2 + static_cast<int>(rng() % 2);
        const int d = 2 + static_cast<int>(rng() % 3);
        const auto p = oracle::random_integer_poly(rng, g, d, 5);
        std::vector<int> pi(static_cast<std::size_t>(d));
        std::iota(pi.begin(), pi.end(), 1);
        std::shuffle(pi.begin(), pi.end(), rng);
        EXPECT_EQ(collapse(permute(p, pi)), collapse(p));
        const auto q = oracle::random_integer_poly(rng, g, 1 + static_cast<int>(rng() % 3), 4);
        EXPECT_EQ(collapse(nc_mul(p, q)), collapse(p) * collapse(q));
    }
}

TEST(Lift, Examples)
{
    const auto l = lift(CPolynomial(2, {{{2, 2}, 1.0}}), 4);
    EXPECT_EQ(l.size(), 6u);
    EXPECT_EQ(oracle::brute_eta({1, 1, 2, 2}, 2), 6u);
    for (const auto& [w, c] : l.terms())
    {
        EXPECT_EQ(multidegree(w, 2), (Multidegree{2, 2}));
        EXPECT_EQ(c, Coeff(1.0 / 6.0));
    }
    EXPECT_EQ(lift(CPolynomial(2, {{{5, 0}, 1.0}}), 5), parse_ncpoly("x1^5", 2));
    const auto p = rank4_cubic();
    EXPECT_EQ(lift(collapse(p), 3), p);
    EXPECT_THROW(lift(CPolynomial(2, {{{1, 0}, 1.0}, {{2, 0}, 1.0}}), 2), DomainError);
}

TEST(Lift, InverseOfCollapse)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial)
    {
        const int g = 1 + static_cast<int>(rng() % 3);
        const int d = 1 + static_cast<int>(rng() % 4);
        CPolynomial pc(g);
        for_each_multidegree(g, d, [&](const Multidegree& m) {
            if (rng() % 2)
            {
                pc.add_term(m, static_cast<double>(static_cast<int>(rng() % 7) - 3));
            }
        });
        const auto l = lift(pc, d);
        EXPECT_TRUE(check_compatibility(l, 1, {1e-12}).compatible);
        const auto back = collapse(l);
        for (const auto& [m, c] : pc.terms())
        {
            EXPECT_NEAR(std::abs(back.coeff(m) - c), 0.0, 1e-12);
        }
        // left inverse on compatible input
        EXPECT_LE(oracle::max_coeff_diff(lift(collapse(l), d), l), 1e-12);
    }
}

TEST(Phi, SingleWordAndBijectionOrder)
{
    const auto r = phi_reduce(parse_ncpoly("x1*x1*x1*x2", 2), 2);
    EXPECT_EQ(r.poly.arity(), 4);
    EXPECT_EQ(r.poly, parse_ncpoly("x1*x2", 4));
    EXPECT_EQ(r.bijection.block(1), (Word{1, 1}));
    EXPECT_EQ(r.bijection.block(2), (Word{1, 2}));
    EXPECT_EQ(r.bijection.block(3), (Word{2, 1}));
    EXPECT_EQ(r.bijection.block(4), (Word{2, 2}));
    EXPECT_EQ(r.bijection.index_of(Word{2, 1}), 3);
}

TEST(Phi, SplitQuartic)
{
    const auto p = parse_ncpoly(fixtures::kSplitQuartic, 2);
    const auto r = phi_reduce(p, 2);
    // z1 = z_(1,1), z2 = z_(1,2), z3 = z_(2,1), z4 = z_(2,2)
    EXPECT_EQ(r.poly, parse_ncpoly("x1^2 + x2*x3 + x3*x2 + x4^2", 4));
    EXPECT_EQ(phi_inverse(r.poly, r.bijection), p);
}

TEST(Phi, InverseExamplesAndErrors)
{
    const IndexBijection bij(2, 2);
    EXPECT_EQ(phi_inverse(parse_ncpoly("x2", 4), bij), parse_ncpoly("x1*x2", 2));
    EXPECT_EQ(phi_inverse(parse_ncpoly("x1^2", 4), bij), parse_ncpoly("x1^4", 2));
    EXPECT_THROW(phi_inverse(parse_ncpoly("x1", 3), bij), ArityError);
    EXPECT_THROW(phi_reduce(parse_ncpoly("x1*x2*x1", 2), 2), DomainError);
}

TEST(Phi, RoundTripAndMultiplicative)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial)
    {
        const int delta = 1 + static_cast<int>(rng() % 3);
        const int g = 2;
        const int d = 1 + static_cast<int>(rng() % 2);
        const auto p = oracle::random_integer_poly(rng, g, delta * d, 5);
        const auto r = phi_reduce(p, delta);
        EXPECT_EQ(phi_inverse(r.poly, r.bijection), p);
        if (delta <= 2)
        {
            const auto q1 = oracle::random_integer_poly(rng, g, delta, 3);
            const auto q2 = oracle::random_integer_poly(rng, g, delta, 3);
            EXPECT_EQ(phi_reduce(nc_mul(q1, q2), delta).poly,
                      nc_mul(phi_reduce(q1, delta).poly, phi_reduce(q2, delta).poly));
        }
    }
}

TEST(Phi, CompatibilityTransfersExhaustively)
{
    // every g = 2, degree-4 polynomial with coefficients in {0, 1} on a
    // sample of supports: delta = 2 compatibility of p matches 1-compatibility of phi(p)
    const auto words = oracle::all_words(2, 4);
    for (std::uint32_t mask = 0; mask < (1u << 16); mask += 7)
    {
        NCPolynomial p(2);
        for (std::size_t k = 0; k < 16; ++k)
        {
            if (mask & (1u << k))
            {
                p.add_term(Word(words[k]), 1.0);
            }
        }
        EXPECT_EQ(check_compatibility(p, 2).compatible, check_compatibility(phi_reduce(p, 2).poly, 1).compatible);
    }
}
