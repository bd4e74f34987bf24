#ifndef NCWARING_EVAL_HPP
#define NCWARING_EVAL_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncwaring/errors.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/tensor.hpp"
#include "ncwaring/waring.hpp"

namespace ncwaring
{

using Matrix = Eigen::MatrixXcd;

/// Matrix operation tally. Scalar-times-matrix products are kept apart from
/// matrix-matrix products.
struct OpCount
{
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
    std::uint64_t scalar_mults = 0;

    OpCount& operator+=(const OpCount& o)
    {
        mults += o.mults;
        adds += o.adds;
        scalar_mults += o.scalar_mults;
        return *this;
    }
    friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
    friend bool operator==(const OpCount&, const OpCount&) = default;
};

///
/// A g-tuple (X_1, ..., X_g) of n x n complex matrices.
///
class MatrixTuple
{
public:
    explicit MatrixTuple(std::vector<Matrix> mats) : mats_(std::move(mats))
    {
        if (mats_.empty())
        {
            throw ShapeError("matrix tuple must hold at least one matrix");
        }
        const Eigen::Index n = mats_.front().rows();
        if (n < 1)
        {
            throw ShapeError("matrices must be at least 1 x 1");
        }
        for (const auto& m : mats_)
        {
            if (m.rows() != n || m.cols() != n)
            {
                throw ShapeError("all matrices in a tuple must be square and of equal size");
            }
        }
    }

    /// Entries i.i.d. standard complex Gaussian.
    static MatrixTuple random(int g, int n, std::mt19937_64& rng)
    {
        std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
        std::vector<Matrix> mats;
        for (int k = 0; k < g; ++k)
        {
            Matrix m(n, n);
            for (int j = 0; j < n; ++j)
            {
                for (int i = 0; i < n; ++i)
                {
                    const double re = dist(rng);
                    const double im = dist(rng);
                    m(i, j) = {re, im};
                }
            }
            mats.push_back(std::move(m));
        }
        return MatrixTuple(std::move(mats));
    }

    int arity() const noexcept { return static_cast<int>(mats_.size()); }
    int dim() const noexcept { return static_cast<int>(mats_.front().rows()); }
    /// X_i for 1-based i.
    const Matrix& operator[](int i) const { return mats_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<Matrix>& matrices() const noexcept { return mats_; }

private:
    std::vector<Matrix> mats_;
};

/// Number of products binary powering spends on exponent d.
inline std::uint64_t binary_power_mults(int d)
{
    if (d < 1)
    {
        return 0;
    }
    std::uint64_t squarings = 0;
    std::uint64_t ones = 0;
    for (unsigned v = static_cast<unsigned>(d); v; v >>= 1)
    {
        ++squarings;
        ones += v & 1U;
    }
    return (squarings - 1) + (ones - 1);
}

/// M^d by binary exponentiation; at most 2 floor(log2 d) products.
inline std::pair<Matrix, OpCount> matrix_power(const Matrix& m, int d)
{
    if (d < 1)
    {
        throw DomainError("matrix_power requires d >= 1");
    }
    if (m.rows() != m.cols())
    {
        throw ShapeError("matrix_power requires a square matrix");
    }
    OpCount ops;
    Matrix base = m;
    Matrix result;
    bool have = false;
    for (unsigned e = static_cast<unsigned>(d);;)
    {
        if (e & 1U)
        {
            if (have)
            {
                result = result * base;
                ++ops.mults;
            }
            else
            {
                result = base;
                have = true;
            }
        }
        e >>= 1;
        if (!e)
        {
            break;
        }
        base = base * base;
        ++ops.mults;
    }
    return {std::move(result), ops};
}

///
/// Term-by-term evaluation: each monomial is multiplied out left to right on
/// its own (|w| - 1 products), scaled by its coefficient, and accumulated.
///
inline std::pair<Matrix, OpCount> evaluate_naive(const NCPolynomial& p, const MatrixTuple& x)
{
    if (p.arity() != x.arity())
    {
        throw ArityError("polynomial has g = " + std::to_string(p.arity()) + " but the tuple holds " +
                         std::to_string(x.arity()) + " matrices");
    }
    const int n = x.dim();
    OpCount ops;
    Matrix sum = Matrix::Zero(n, n);
    bool first = true;
    for (const auto& [w, c] : p.terms())
    {
        Matrix mono = w.empty() ? Matrix::Identity(n, n) : Matrix(x[w[0]]);
        for (std::size_t k = 1; k < w.size(); ++k)
        {
            mono = mono * x[w[k]];
            ++ops.mults;
        }
        ++ops.scalar_mults;
        if (first)
        {
            sum = c * mono;
            first = false;
        }
        else
        {
            sum += c * mono;
            ++ops.adds;
        }
    }
    return {std::move(sum), ops};
}

///
/// Evaluates sum_s (sum_beta A^s_beta X^beta)^d. The block monomials X^beta
/// are formed once (delta - 1 products each, none for delta = 1), then each
/// term costs g^delta scalar products, g^delta - 1 additions and one matrix
/// power. For delta = 1 this is t g - 1 additions and t powers in total.
///
inline std::pair<Matrix, OpCount> evaluate_waring(const WaringDecomposition& w, const MatrixTuple& x)
{
    w.validate();
    if (w.g != x.arity())
    {
        throw ArityError("decomposition has g = " + std::to_string(w.g) + " but the tuple holds " +
                         std::to_string(x.arity()) + " matrices");
    }
    const int n = x.dim();
    const IndexBijection bij = w.bijection();
    OpCount ops;

    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(bij.size()));
    for (int k = 1; k <= bij.size(); ++k)
    {
        const Word b = bij.block(k);
        Matrix m = x[b[0]];
        for (std::size_t i = 1; i < b.size(); ++i)
        {
            m = m * x[b[i]];
            ++ops.mults;
        }
        blocks.push_back(std::move(m));
    }

    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t s = 0; s < w.terms.size(); ++s)
    {
        const auto& a = w.terms[s];
        Matrix h = a[0] * blocks[0];
        ++ops.scalar_mults;
        for (std::size_t k = 1; k < blocks.size(); ++k)
        {
            h += a[k] * blocks[k];
            ++ops.scalar_mults;
            ++ops.adds;
        }
        auto [pw, pops] = matrix_power(h, w.d);
        ops += pops;
        if (s == 0)
        {
            sum = std::move(pw);
        }
        else
        {
            sum += pw;
            ++ops.adds;
        }
    }
    return {std::move(sum), ops};
}

/// ||a - b||_F / ||a||_F (absolute when a = 0).
inline double relative_error(const Matrix& reference, const Matrix& other)
{
    const double ref = reference.norm();
    const double diff = (reference - other).norm();
    return ref > 0.0 ? diff / ref : diff;
}

///
/// Cost of a degree-d form in g variables: naive evaluation versus a t-term
/// decomposition.
///
struct CostReport
{
    int g = 0;
    int d = 0;
    int t = 0;
    std::uint64_t naive_mults = 0; ///< g^d (d - 1)
    std::uint64_t naive_adds = 0;  ///< g^d - 1
    std::uint64_t waring_powers = 0;
    std::uint64_t waring_adds = 0;  ///< t g - 1
    std::uint64_t waring_mults = 0; ///< t powers by binary powering
    /// ceil(C(g+d-1, d) / g) / g^d
    double exact_ratio = 0.0;
    /// (1/g) (e (g + d) / (g d))^d
    double stirling_bound = 0.0;
};

inline CostReport cost_compare(int g, int d, int t)
{
    if (g < 1 || d < 1 || t < 1)
    {
        throw DomainError("cost_compare requires g, d, t >= 1");
    }
    CostReport r;
    r.g = g;
    r.d = d;
    r.t = t;
    const std::uint64_t words = word_count(g, d);
    r.naive_mults = words * static_cast<std::uint64_t>(d - 1);
    r.naive_adds = words - 1;
    r.waring_powers = static_cast<std::uint64_t>(t);
    r.waring_adds = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(g) - 1;
    r.waring_mults = static_cast<std::uint64_t>(t) * binary_power_mults(d);
    const std::uint64_t dim = forms_dimension(g, d);
    const std::uint64_t ceil_ratio = (dim + static_cast<std::uint64_t>(g) - 1) / static_cast<std::uint64_t>(g);
    r.exact_ratio = static_cast<double>(ceil_ratio) / static_cast<double>(words);
    r.stirling_bound = std::pow(std::exp(1.0) * (g + d) / (static_cast<double>(g) * d), d) / g;
    return r;
}

} // namespace ncwaring

#endif // NCWARING_EVAL_HPP
