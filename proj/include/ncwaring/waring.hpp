#ifndef NCWARING_WARING_HPP
#define NCWARING_WARING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncwaring/analysis.hpp"
#include "ncwaring/errors.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/symmetric_cpd.hpp"
#include "ncwaring/tensor.hpp"

namespace ncwaring
{

///
/// p = sum_s (H_s)^d with H_s = sum_beta terms[s][k] x^beta, beta the k-th
/// block of the IndexBijection (g, delta). For delta = 1 the blocks are the
/// single variables and terms[s] holds the linear-form coefficients.
///
struct WaringDecomposition
{
    int g = 1;
    int delta = 1;
    int d = 1;
    std::vector<std::vector<Coeff>> terms;

    IndexBijection bijection() const { return IndexBijection(g, delta); }
    int rank() const noexcept { return static_cast<int>(terms.size()); }

    void validate() const
    {
        const auto len = static_cast<std::size_t>(bijection().size());
        for (const auto& t : terms)
        {
            if (t.size() != len)
            {
                throw ShapeError("term vector has length " + std::to_string(t.size()) + ", expected " +
                                 std::to_string(len));
            }
        }
    }

    /// H_s as a polynomial in x.
    NCPolynomial form(std::size_t s) const
    {
        return phi_inverse(NCPolynomial::linear_form(terms.at(s)), bijection());
    }
};

/// Matrix-rank proof that no decomposition with `requested_rank` terms exists
/// (order 2 only). `kind` is "matrix_rank", or "indefinite" when real mode
/// meets a coefficient matrix with a negative eigenvalue.
struct RankCertificate
{
    std::string kind = "matrix_rank";
    int matrix_rank = 0;
    int requested_rank = 0;
    std::vector<double> singular_values;
    double threshold = 1e-10;
};

namespace outcome
{

struct Success
{
    WaringDecomposition decomposition;
    double residual = 0.0;
};

struct Incompatible
{
    CompatibilityReport report;
};

struct HeuristicFailure
{
    double best_residual = 1.0;
    int ranks_tried = 0;
};

struct CertifiedNonexistence
{
    RankCertificate certificate;
};

} // namespace outcome

enum class DecompositionStatus
{
    Success,
    Incompatible,
    HeuristicFailure,
    CertifiedNonexistence
};

inline const char* to_string(DecompositionStatus s)
{
    switch (s)
    {
    case DecompositionStatus::Success:
        return "success";
    case DecompositionStatus::Incompatible:
        return "incompatible";
    case DecompositionStatus::HeuristicFailure:
        return "heuristic_failure";
    case DecompositionStatus::CertifiedNonexistence:
        return "certified_nonexistence";
    }
    return "unknown";
}

struct DecompositionResult
{
    std::variant<outcome::Success, outcome::Incompatible, outcome::HeuristicFailure,
                 outcome::CertifiedNonexistence>
        outcome;
    std::vector<RestartTrace> log;
    DecompositionConfig config;

    DecompositionStatus status() const noexcept
    {
        return static_cast<DecompositionStatus>(outcome.index());
    }

    const outcome::Success* success() const noexcept { return std::get_if<outcome::Success>(&outcome); }
};

///
/// Full pipeline for a homogeneous p of degree delta*d:
///  1. delta-compatibility (necessary; a witness is returned otherwise);
///  2. q = phi(p) in g^delta variables;
///  3. T = symmetric tensor of the collapse of q;
///  4. ranks t = 1, 2, ... up to the cap through symmetric_cpd;
/// with order 2 settled exactly by the coefficient-matrix rank.
///
/// The vectors found for T are the coefficient vectors of p's decomposition
/// unchanged. The zero polynomial decomposes as the empty sum (t = 0, d = 0).
///
inline DecompositionResult waring_decompose(const NCPolynomial& p, int delta, const DecompositionConfig& cfg = {})
{
    cfg.validate();
    if (delta < 1)
    {
        throw DomainError("block size delta must be positive");
    }
    DecompositionResult result;
    result.config = cfg;
    if (p.is_zero())
    {
        result.outcome = outcome::Success{WaringDecomposition{p.arity(), delta, 0, {}}, 0.0};
        return result;
    }
    const auto degree = p.homogeneous_degree();
    if (!degree)
    {
        throw DomainError("Waring decomposition requires a homogeneous polynomial");
    }
    if (*degree < 1)
    {
        throw DomainError("Waring decomposition requires degree >= 1");
    }
    if (*degree % delta != 0)
    {
        throw DomainError("delta = " + std::to_string(delta) + " does not divide degree " +
                          std::to_string(*degree));
    }
    const int d = *degree / delta;

    CompatibilityReport report = check_compatibility(p, delta, {cfg.compat_tol});
    if (!report.compatible)
    {
        result.outcome = outcome::Incompatible{std::move(report)};
        return result;
    }

    const PhiReduction reduced = phi_reduce(p, delta);
    const int n = reduced.bijection.size();
    const SymmetricTensor t = tensor_from_cpoly(collapse(reduced.poly), d);

    const auto forms_dim = forms_dimension(n, d);
    const int cap = static_cast<int>(std::min<std::uint64_t>(
        forms_dim, static_cast<std::uint64_t>(cfg.max_rank.value_or(std::numeric_limits<int>::max()))));

    auto success = [&](CpdSolution sol) {
        result.outcome = outcome::Success{WaringDecomposition{p.arity(), delta, d, std::move(sol.vectors)},
                                          sol.residual};
    };

    if (d == 2)
    {
        const SymmetricRankInfo info = symmetric_matrix_rank(t);
        RankCertificate cert{"matrix_rank", info.rank, cap, info.singular_values, info.threshold};
        if (info.rank > cap)
        {
            result.outcome = outcome::CertifiedNonexistence{std::move(cert)};
            return result;
        }
        if (auto sol = symmetric_cpd(t, info.rank, cfg, &result.log))
        {
            success(std::move(*sol));
            return result;
        }
        if (cfg.mode == FieldMode::Real && detail::is_real(t))
        {
            cert.kind = "indefinite";
            result.outcome = outcome::CertifiedNonexistence{std::move(cert)};
            return result;
        }
        result.outcome = outcome::HeuristicFailure{1.0, info.rank};
        return result;
    }

    double best = std::numeric_limits<double>::infinity();
    for (int rank = 1; rank <= cap; ++rank)
    {
        const std::size_t before = result.log.size();
        if (auto sol = symmetric_cpd(t, rank, cfg, &result.log))
        {
            success(std::move(*sol));
            return result;
        }
        for (std::size_t k = before; k < result.log.size(); ++k)
        {
            best = std::min(best, result.log[k].residual);
        }
    }
    result.outcome = outcome::HeuristicFailure{best, cap};
    return result;
}

struct VerificationResult
{
    bool ok = false;
    double max_abs_error = 0.0;
};

/// Expands sum_s (H_s)^d symbolically and compares every coefficient with p.
inline VerificationResult verify_decomposition(const NCPolynomial& p, const WaringDecomposition& w, double tol)
{
    w.validate();
    if (p.arity() != w.g)
    {
        throw ArityError("decomposition arity " + std::to_string(w.g) + " does not match polynomial arity " +
                         std::to_string(p.arity()));
    }
    const IndexBijection bij = w.bijection();
    NCPolynomial z_sum(bij.size());
    for (const auto& a : w.terms)
    {
        z_sum += nc_pow(NCPolynomial::linear_form(a), w.d);
    }
    const NCPolynomial expanded = w.terms.empty() ? NCPolynomial(p.arity()) : phi_inverse(z_sum, bij);

    double err = 0.0;
    for (const auto& [word, c] : p.terms())
    {
        err = std::max(err, std::abs(c - expanded.coeff(word)));
    }
    for (const auto& [word, c] : expanded.terms())
    {
        if (p.terms().find(word) == p.terms().end())
        {
            err = std::max(err, std::abs(c));
        }
    }
    return {err <= tol, err};
}

} // namespace ncwaring

#endif // NCWARING_WARING_HPP
