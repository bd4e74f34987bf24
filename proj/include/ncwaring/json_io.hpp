#ifndef NCWARING_JSON_IO_HPP
#define NCWARING_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ncwaring/analysis.hpp"
#include "ncwaring/errors.hpp"
#include "ncwaring/eval.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/symmetric_cpd.hpp"
#include "ncwaring/tensor.hpp"
#include "ncwaring/waring.hpp"

// JSON encodings of the library types. Serialization goes through
// `to_json` overloads (so `nlohmann::json j = value;` works); the reverse
// direction uses named `*_from_json` functions because most types have no
// default constructor.

namespace ncwaring
{

using json = nlohmann::json;

namespace detail
{

inline json complex_pair(Coeff c) { return json::array({c.real(), c.imag()}); }

inline Coeff complex_from_pair(const json& j)
{
    if (!j.is_array() || j.size() != 2)
    {
        throw ShapeError("expected a [re, im] pair");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline Word word_from_json(const json& j) { return Word(j.get<std::vector<int>>()); }

} // namespace detail

//------------------------------------------------------------------------------
// Polynomials
//------------------------------------------------------------------------------

/// {"g": int, "terms": [{"word": [ints], "re": float, "im": float}]}
inline void to_json(json& j, const NCPolynomial& p)
{
    json terms = json::array();
    for (const auto& [w, c] : p.terms())
    {
        terms.push_back({{"word", w.raw()}, {"re", c.real()}, {"im", c.imag()}});
    }
    j = {{"g", p.arity()}, {"terms", std::move(terms)}};
}

inline NCPolynomial ncpoly_from_json(const json& j)
{
    NCPolynomial p(j.at("g").get<int>());
    for (const auto& t : j.at("terms"))
    {
        p.add_term(detail::word_from_json(t.at("word")), {t.at("re").get<double>(), t.value("im", 0.0)});
    }
    return p;
}

/// {"g": int, "terms": [{"exponents": [ints], "re": float, "im": float}]}
inline void to_json(json& j, const CPolynomial& p)
{
    json terms = json::array();
    for (const auto& [m, c] : p.terms())
    {
        terms.push_back({{"exponents", m.exponents()}, {"re", c.real()}, {"im", c.imag()}});
    }
    j = {{"g", p.arity()}, {"terms", std::move(terms)}};
}

//------------------------------------------------------------------------------
// Analysis
//------------------------------------------------------------------------------

/// {"compatible": bool, "delta": int,
///  "witness": {"a": [ints], "b": [ints], "coeff_a": [re,im], "coeff_b": [re,im]} | null}
inline void to_json(json& j, const CompatibilityReport& r)
{
    j = {{"compatible", r.compatible}, {"delta", r.delta}, {"witness", nullptr}};
    if (r.witness)
    {
        j["witness"] = {{"a", r.witness->a.raw()},
                        {"b", r.witness->b.raw()},
                        {"coeff_a", detail::complex_pair(r.witness->coeff_a)},
                        {"coeff_b", detail::complex_pair(r.witness->coeff_b)}};
    }
}

inline CompatibilityReport compatibility_from_json(const json& j)
{
    CompatibilityReport r;
    r.compatible = j.at("compatible").get<bool>();
    r.delta = j.at("delta").get<int>();
    if (!j.at("witness").is_null())
    {
        const auto& w = j.at("witness");
        r.witness = CompatibilityWitness{detail::word_from_json(w.at("a")), detail::word_from_json(w.at("b")),
                                         detail::complex_from_pair(w.at("coeff_a")),
                                         detail::complex_from_pair(w.at("coeff_b"))};
    }
    return r;
}

//------------------------------------------------------------------------------
// Tensors and decompositions
//------------------------------------------------------------------------------

/// {"g": int, "d": int, "entries": [{"word": [ints], "re": f, "im": f}]}, one
/// entry per multidegree, keyed by its sorted representative word.
inline void to_json(json& j, const SymmetricTensor& t)
{
    json entries = json::array();
    for (const auto& [m, v] : t.entries())
    {
        entries.push_back({{"word", m.sorted_word().raw()}, {"re", v.real()}, {"im", v.imag()}});
    }
    j = {{"g", t.dimension()}, {"d", t.order()}, {"entries", std::move(entries)}};
}

inline SymmetricTensor tensor_from_json(const json& j)
{
    const int g = j.at("g").get<int>();
    SymmetricTensor t(g, j.at("d").get<int>());
    for (const auto& e : j.at("entries"))
    {
        t.set(multidegree(detail::word_from_json(e.at("word")), g), {e.at("re").get<double>(), e.value("im", 0.0)});
    }
    return t;
}

/// {"delta": int, "d": int, "bijection": [[ints]], "terms": [[[re,im], ...]]}
inline void to_json(json& j, const WaringDecomposition& w)
{
    json bij = json::array();
    for (const auto& b : w.bijection().blocks())
    {
        bij.push_back(b.raw());
    }
    json terms = json::array();
    for (const auto& v : w.terms)
    {
        json row = json::array();
        for (const auto& c : v)
        {
            row.push_back(detail::complex_pair(c));
        }
        terms.push_back(std::move(row));
    }
    j = {{"delta", w.delta}, {"d", w.d}, {"bijection", std::move(bij)}, {"terms", std::move(terms)}};
}

/// The arity is recovered from the bijection (its largest index); the
/// bijection must be the lexicographic one.
inline WaringDecomposition decomposition_from_json(const json& j)
{
    WaringDecomposition w;
    w.delta = j.at("delta").get<int>();
    w.d = j.at("d").get<int>();
    int g = 0;
    for (const auto& b : j.at("bijection"))
    {
        for (const auto& i : b)
        {
            g = std::max(g, i.get<int>());
        }
    }
    if (g < 1)
    {
        throw ShapeError("decomposition bijection is empty");
    }
    w.g = g;
    const IndexBijection expected(g, w.delta);
    const auto& bij = j.at("bijection");
    if (bij.size() != static_cast<std::size_t>(expected.size()))
    {
        throw ShapeError("bijection has " + std::to_string(bij.size()) + " blocks, expected " +
                         std::to_string(expected.size()));
    }
    for (std::size_t k = 0; k < bij.size(); ++k)
    {
        if (detail::word_from_json(bij[k]) != expected.block(static_cast<int>(k) + 1))
        {
            throw ShapeError("bijection is not in lexicographic block order");
        }
    }
    for (const auto& row : j.at("terms"))
    {
        std::vector<Coeff> v;
        for (const auto& c : row)
        {
            v.push_back(detail::complex_from_pair(c));
        }
        w.terms.push_back(std::move(v));
    }
    w.validate();
    return w;
}

inline void to_json(json& j, const DecompositionConfig& c)
{
    j = {{"max_rank", c.max_rank ? json(*c.max_rank) : json(nullptr)},
         {"restarts", c.restarts},
         {"max_iters", c.max_iters},
         {"conv_tol", c.conv_tol},
         {"success_tol", c.success_tol},
         {"seed", c.seed},
         {"mode", c.mode == FieldMode::Real ? "real" : "complex"},
         {"compat_tol", c.compat_tol}};
}

inline void to_json(json& j, const RestartTrace& t)
{
    j = {{"rank", t.rank}, {"restart", t.restart}, {"residual", t.residual}, {"iterations", t.iterations}};
}

inline void to_json(json& j, const RankCertificate& c)
{
    j = {{"kind", c.kind},
         {"matrix_rank", c.matrix_rank},
         {"requested_rank", c.requested_rank},
         {"singular_values", c.singular_values},
         {"threshold", c.threshold}};
}

/// {"status": ..., <status payload>, "config": {...}, "log": [...]}
inline void to_json(json& j, const DecompositionResult& r)
{
    j = json::object();
    j["status"] = to_string(r.status());
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, outcome::Success>)
            {
                j["rank"] = o.decomposition.rank();
                j["residual"] = o.residual;
                j["decomposition"] = o.decomposition;
            }
            else if constexpr (std::is_same_v<T, outcome::Incompatible>)
            {
                j["compatibility"] = o.report;
            }
            else if constexpr (std::is_same_v<T, outcome::HeuristicFailure>)
            {
                j["best_residual"] = o.best_residual;
                j["ranks_tried"] = o.ranks_tried;
            }
            else
            {
                j["certificate"] = o.certificate;
            }
        },
        r.outcome);
    j["config"] = r.config;
    j["log"] = r.log;
}

//------------------------------------------------------------------------------
// Evaluation
//------------------------------------------------------------------------------

/// Row-major [[[re, im], ...], ...].
inline json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
        {
            row.push_back(detail::complex_pair(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, int n)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
    {
        throw ShapeError("matrix must have " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
    {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        {
            throw ShapeError("matrix row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        }
        for (int k = 0; k < n; ++k)
        {
            m(i, k) = detail::complex_from_pair(row.at(static_cast<std::size_t>(k)));
        }
    }
    return m;
}

/// {"n": int, "g": int, "matrices": [matrix, ...]}
inline void to_json(json& j, const MatrixTuple& x)
{
    json mats = json::array();
    for (const auto& m : x.matrices())
    {
        mats.push_back(matrix_to_json(m));
    }
    j = {{"n", x.dim()}, {"g", x.arity()}, {"matrices", std::move(mats)}};
}

inline MatrixTuple matrix_tuple_from_json(const json& j)
{
    const int n = j.at("n").get<int>();
    const int g = j.at("g").get<int>();
    const auto& mats = j.at("matrices");
    if (mats.size() != static_cast<std::size_t>(g))
    {
        throw ShapeError("matrix tuple declares g = " + std::to_string(g) + " but holds " +
                         std::to_string(mats.size()) + " matrices");
    }
    std::vector<Matrix> out;
    for (const auto& m : mats)
    {
        out.push_back(matrix_from_json(m, n));
    }
    return MatrixTuple(std::move(out));
}

inline void to_json(json& j, const OpCount& c)
{
    j = {{"mults", c.mults}, {"adds", c.adds}, {"scalar_mults", c.scalar_mults}};
}

inline void to_json(json& j, const CostReport& r)
{
    j = {{"g", r.g},
         {"d", r.d},
         {"t", r.t},
         {"naive_mults", r.naive_mults},
         {"naive_adds", r.naive_adds},
         {"waring_powers", r.waring_powers},
         {"waring_adds", r.waring_adds},
         {"waring_mults", r.waring_mults},
         {"exact_ratio", r.exact_ratio},
         {"stirling_bound", r.stirling_bound}};
}

} // namespace ncwaring

#endif // NCWARING_JSON_IO_HPP
