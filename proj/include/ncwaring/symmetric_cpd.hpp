#ifndef NCWARING_SYMMETRIC_CPD_HPP
#define NCWARING_SYMMETRIC_CPD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "ncwaring/errors.hpp"
#include "ncwaring/tensor.hpp"

namespace ncwaring
{

enum class FieldMode
{
    Complex,
    Real
};

struct DecompositionConfig
{
    /// Largest number of terms tried; unset means the dimension of the space
    /// of forms in the working variables.
    std::optional<int> max_rank;
    int restarts = 20;
    int max_iters = 500;
    /// Stop a restart once the relative decrease of the squared residual
    /// falls below this.
    double conv_tol = 1e-12;
    /// A restart succeeds when ||T - sum v^d||_F / ||T||_F is at most this.
    double success_tol = 1e-8;
    std::uint64_t seed = 0;
    FieldMode mode = FieldMode::Complex;
    /// Coefficients within a block class may differ by this much and still
    /// count as equal. Zero means exact comparison.
    double compat_tol = 0.0;

    void validate() const
    {
        if (restarts < 1)
        {
            throw DomainError("restarts must be >= 1");
        }
        if (max_iters < 1)
        {
            throw DomainError("max_iters must be >= 1");
        }
        if (!(conv_tol > 0.0) || !(success_tol > 0.0))
        {
            throw DomainError("tolerances must be positive");
        }
        if (!(compat_tol >= 0.0))
        {
            throw DomainError("compat_tol must be >= 0");
        }
        if (max_rank && *max_rank < 1)
        {
            throw DomainError("max_rank must be >= 1");
        }
    }
};

/// One optimizer restart: the rank tried, the restart index, the verified
/// relative residual it reached, and the iterations it used.
struct RestartTrace
{
    int rank = 0;
    int restart = 0;
    double residual = 0.0;
    int iterations = 0;

    friend bool operator==(const RestartTrace&, const RestartTrace&) = default;
};

struct CpdSolution
{
    std::vector<std::vector<Coeff>> vectors;
    double residual = 0.0;
};

/// Singular values of a complex symmetric matrix and its numerical rank
/// (values above threshold * largest).
struct SymmetricRankInfo
{
    int rank = 0;
    std::vector<double> singular_values;
    double threshold = 1e-10;
};

namespace detail
{

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// RNG stream for one (seed, rank, restart); independent of scheduling.
inline std::uint64_t restart_seed(std::uint64_t seed, int rank, int restart)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(rank));
    return splitmix64(h ^ (static_cast<std::uint64_t>(restart) << 32));
}

/// Relative Frobenius residual ||T - sum_s v_s^d|| / ||T|| computed from
/// scratch on the compressed tensor; 0/0 is taken as 0.
inline double reconstruction_residual(const SymmetricTensor& t,
                                      const std::vector<std::vector<Coeff>>& vectors)
{
    SymmetricTensor diff = t;
    for (const auto& v : vectors)
    {
        diff -= SymmetricTensor::rank_one(v, t.order());
    }
    const double nt = t.norm();
    const double nd = diff.norm();
    if (nt == 0.0)
    {
        return nd == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return nd / nt;
}

///
/// Canonical representative of v among {omega v : omega^d = 1}: write
/// v = r u with ||u|| = 1 and the largest-magnitude entry of u real positive,
/// then return lambda^{1/d} u for lambda = r^d (principal root).
///
inline std::vector<Coeff> normalize_term(const std::vector<Coeff>& v, int d, FieldMode mode)
{
    double nrm = 0.0;
    for (const auto& x : v)
    {
        nrm += std::norm(x);
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0 || d < 1)
    {
        return v;
    }
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
    {
        if (std::abs(v[i]) > std::abs(v[pivot]))
        {
            pivot = i;
        }
    }
    const Coeff phase = v[pivot] / std::abs(v[pivot]);
    const Coeff scale = nrm * phase;
    Coeff root;
    if (mode == FieldMode::Real)
    {
        const double lam = std::pow(scale.real(), d);
        root = std::copysign(std::pow(std::abs(lam), 1.0 / d), lam);
    }
    else
    {
        root = std::pow(std::pow(scale, d), 1.0 / d);
    }
    std::vector<Coeff> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out[i] = root * (v[i] / scale);
        if (mode == FieldMode::Real)
        {
            out[i] = {out[i].real(), 0.0};
        }
    }
    return out;
}

template <typename Scalar>
Scalar from_coeff(Coeff c)
{
    if constexpr (std::is_same_v<Scalar, double>)
    {
        return c.real();
    }
    else
    {
        return c;
    }
}

template <typename Scalar>
Scalar draw(std::mt19937_64& rng)
{
    if constexpr (std::is_same_v<Scalar, double>)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        return n(rng);
    }
    else
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }
}

///
/// Levenberg-Marquardt on f(A) = sum_m eta_m |sum_s prod_j A_{js}^{m_j} - T_m|^2
/// over the compressed entries m, with A the n x t factor shared by all d
/// modes. The model is holomorphic in A, so the complex Gauss-Newton system
/// J^H J dx = -J^H r is the right normal equation.
///
template <typename Scalar>
class SymmetricLM
{
public:
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    SymmetricLM(const SymmetricTensor& t, int rank) : n_(t.dimension()), d_(t.order()), rank_(rank)
    {
        for_each_multidegree(n_, d_, [&](const Multidegree& m) {
            exps_.push_back(m.exponents());
            weights_.push_back(std::sqrt(static_cast<double>(eta(m))));
            target_.push_back(from_coeff<Scalar>(t.entry(m)));
        });
        target_norm_ = t.norm();
    }

    struct Outcome
    {
        Mat factor;
        double residual;
        int iterations;
    };

    Outcome run(Mat a, int max_iters, double conv_tol, double stop_residual) const
    {
        Vec r;
        Mat jac;
        evaluate(a, r, &jac);
        double cost = r.squaredNorm();
        double lambda = -1.0;
        double nu = 2.0;
        int iter = 0;
        for (; iter < max_iters; ++iter)
        {
            if (std::sqrt(cost) <= stop_residual * target_norm_)
            {
                break;
            }
            const Mat h = jac.adjoint() * jac;
            const Vec grad = jac.adjoint() * r;
            if (lambda < 0.0)
            {
                lambda = 1e-3 * std::max(h.diagonal().real().maxCoeff(), 1e-300);
            }
            Mat sys = h;
            sys.diagonal().array() += Scalar(lambda);
            Eigen::LLT<Mat> llt(sys);
            if (llt.info() != Eigen::Success)
            {
                lambda *= nu;
                nu *= 2.0;
                continue;
            }
            const Vec step = llt.solve(-grad);
            Mat trial = a + Eigen::Map<const Mat>(step.data(), a.rows(), a.cols());
            Vec r_trial;
            evaluate(trial, r_trial, nullptr);
            const double cost_trial = r_trial.squaredNorm();
            const double predicted = std::real(step.dot(lambda * step - grad));
            if (std::isfinite(cost_trial) && cost_trial < cost)
            {
                const double rho = predicted > 0.0 ? (cost - cost_trial) / predicted : 1.0;
                const double rel_change = (cost - cost_trial) / cost;
                a = std::move(trial);
                cost = cost_trial;
                evaluate(a, r, &jac);
                lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
                nu = 2.0;
                if (rel_change < conv_tol)
                {
                    ++iter;
                    break;
                }
            }
            else
            {
                lambda *= nu;
                nu *= 2.0;
                if (lambda > 1e30 || !std::isfinite(lambda))
                {
                    ++iter;
                    break;
                }
            }
        }
        const double res = target_norm_ > 0.0 ? std::sqrt(cost) / target_norm_ : std::sqrt(cost);
        return {std::move(a), res, iter};
    }

    int dimension() const noexcept { return n_; }

private:
    void evaluate(const Mat& a, Vec& r, Mat* jac) const
    {
        const auto m_count = static_cast<Eigen::Index>(exps_.size());
        r.resize(m_count);
        if (jac)
        {
            jac->setZero(m_count, a.size());
        }
        // pw[(s * n + j) * (d + 1) + k] = a(j, s)^k
        std::vector<Scalar> pw(static_cast<std::size_t>(rank_ * n_ * (d_ + 1)));
        for (int s = 0; s < rank_; ++s)
        {
            for (int j = 0; j < n_; ++j)
            {
                Scalar acc(1.0);
                for (int k = 0; k <= d_; ++k)
                {
                    pw[static_cast<std::size_t>((s * n_ + j) * (d_ + 1) + k)] = acc;
                    acc *= a(j, s);
                }
            }
        }
        auto power = [&](int s, int j, int k) {
            return pw[static_cast<std::size_t>((s * n_ + j) * (d_ + 1) + k)];
        };
        for (Eigen::Index m = 0; m < m_count; ++m)
        {
            const auto& e = exps_[static_cast<std::size_t>(m)];
            const double w = weights_[static_cast<std::size_t>(m)];
            Scalar model(0.0);
            for (int s = 0; s < rank_; ++s)
            {
                Scalar prod(1.0);
                for (int j = 0; j < n_; ++j)
                {
                    prod *= power(s, j, e[static_cast<std::size_t>(j)]);
                }
                model += prod;
                if (!jac)
                {
                    continue;
                }
                for (int i = 0; i < n_; ++i)
                {
                    const int ei = e[static_cast<std::size_t>(i)];
                    if (ei == 0)
                    {
                        continue;
                    }
                    Scalar dv = Scalar(static_cast<double>(ei)) * power(s, i, ei - 1);
                    for (int j = 0; j < n_; ++j)
                    {
                        if (j != i)
                        {
                            dv *= power(s, j, e[static_cast<std::size_t>(j)]);
                        }
                    }
                    (*jac)(m, static_cast<Eigen::Index>(s) * n_ + i) = w * dv;
                }
            }
            r(m) = w * (model - target_[static_cast<std::size_t>(m)]);
        }
    }

    int n_;
    int d_;
    int rank_;
    std::vector<std::vector<int>> exps_;
    std::vector<double> weights_;
    std::vector<Scalar> target_;
    double target_norm_ = 0.0;
};

inline Eigen::MatrixXcd quadratic_matrix(const SymmetricTensor& t)
{
    const int n = t.dimension();
    Eigen::MatrixXcd s(n, n);
    for (int i = 0; i < n; ++i)
    {
        for (int j = 0; j < n; ++j)
        {
            s(i, j) = t.entry(Word{i + 1, j + 1});
        }
    }
    return s;
}

inline bool is_real(const SymmetricTensor& t)
{
    return std::all_of(t.entries().begin(), t.entries().end(),
                       [](const auto& kv) { return kv.second.imag() == 0.0; });
}

} // namespace detail

/// Singular values of S with S_ij = T_(i,j) for an order-2 tensor, and the
/// number exceeding threshold * sigma_max.
inline SymmetricRankInfo symmetric_matrix_rank(const SymmetricTensor& t, double threshold = 1e-10)
{
    if (t.order() != 2)
    {
        throw DomainError("symmetric_matrix_rank requires an order-2 tensor");
    }
    const Eigen::MatrixXcd s = detail::quadratic_matrix(t);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
    SymmetricRankInfo info;
    info.threshold = threshold;
    const auto& sv = svd.singularValues();
    info.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double top = sv.size() ? sv(0) : 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
    {
        if (top > 0.0 && sv(k) > threshold * top)
        {
            ++info.rank;
        }
    }
    return info;
}

///
/// Takagi factorization S = sum_k sigma_k u_k u_k^T of a complex symmetric
/// matrix, returned as the vectors sqrt(sigma_k) u_k for the `rank` largest
/// sigma_k.
///
/// Writing S = A + iB, the real symmetric matrix [[A, B], [B, -A]] has
/// eigenpairs (sigma, [x; y]) with S conj(u) = sigma u for u = x + iy, and
/// its positive eigenvectors give orthonormal Takagi vectors.
///
inline std::vector<std::vector<Coeff>> takagi_vectors(const Eigen::MatrixXcd& s, int rank)
{
    const Eigen::Index n = s.rows();
    Eigen::MatrixXd m(2 * n, 2 * n);
    m << s.real(), s.imag(), s.imag(), -s.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::vector<std::vector<Coeff>> out;
    for (int k = 0; k < rank; ++k)
    {
        const Eigen::Index col = 2 * n - 1 - k; // eigenvalues ascend
        const double sigma = std::max(es.eigenvalues()(col), 0.0);
        const double root = std::sqrt(sigma);
        std::vector<Coeff> v(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
        {
            v[static_cast<std::size_t>(i)] = root * Coeff(es.eigenvectors()(i, col), es.eigenvectors()(n + i, col));
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// Real symmetric S = sum_k lambda_k w_k w_k^T as sqrt(lambda_k) w_k; empty if
/// S has a negative eigenvalue (no real sum of squares exists).
inline std::optional<std::vector<std::vector<Coeff>>> real_square_vectors(const Eigen::MatrixXd& s, int rank,
                                                                          double threshold)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::Index n = s.rows();
    const double top = n ? es.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
    if (n && es.eigenvalues()(0) < -threshold * top)
    {
        return std::nullopt;
    }
    std::vector<std::vector<Coeff>> out;
    for (int k = 0; k < rank; ++k)
    {
        const Eigen::Index col = n - 1 - k;
        const double root = std::sqrt(std::max(es.eigenvalues()(col), 0.0));
        std::vector<Coeff> v(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
        {
            v[static_cast<std::size_t>(i)] = root * es.eigenvectors()(i, col);
        }
        out.push_back(std::move(v));
    }
    return out;
}

///
/// Searches for `rank` vectors with ||T - sum_s v_s^{(x)d}||_F <= success_tol ||T||_F.
///
/// Orders d >= 3 run seeded Levenberg-Marquardt restarts in fixed waves of
/// four; restarts inside a wave may run on separate threads, and each draws
/// from its own RNG stream, so the outcome and `log` do not depend on
/// scheduling. The search stops after the first wave containing a success.
/// Order 2 is solved exactly by Takagi factorization and succeeds iff
/// `rank` is at least the numerical rank of the coefficient matrix.
///
/// Returned vectors are normalized (see detail::normalize_term) and the
/// residual is recomputed from scratch; the optimizer's own bookkeeping is
/// never trusted.
///
inline std::optional<CpdSolution> symmetric_cpd(const SymmetricTensor& t, int rank,
                                                const DecompositionConfig& cfg,
                                                std::vector<RestartTrace>* log = nullptr)
{
    cfg.validate();
    if (rank < 1)
    {
        throw DomainError("symmetric_cpd requires rank >= 1");
    }
    const int n = t.dimension();
    const int d = t.order();
    if (d < 1)
    {
        throw DomainError("symmetric_cpd requires order >= 1");
    }
    const bool real = cfg.mode == FieldMode::Real;
    auto zero_vector = [n] { return std::vector<Coeff>(static_cast<std::size_t>(n)); };

    auto finish = [&](std::vector<std::vector<Coeff>> vectors, int restart,
                      int iterations) -> std::optional<CpdSolution> {
        for (auto& v : vectors)
        {
            v = detail::normalize_term(v, d, cfg.mode);
        }
        while (static_cast<int>(vectors.size()) < rank)
        {
            vectors.push_back(zero_vector());
        }
        const double res = detail::reconstruction_residual(t, vectors);
        if (log)
        {
            log->push_back({rank, restart, res, iterations});
        }
        if (res <= cfg.success_tol)
        {
            return CpdSolution{std::move(vectors), res};
        }
        return std::nullopt;
    };

    if (real && !detail::is_real(t))
    {
        if (log)
        {
            log->push_back({rank, 0, 1.0, 0});
        }
        return std::nullopt;
    }
    if (t.norm() == 0.0)
    {
        return finish({}, 0, 0);
    }
    if (d == 1)
    {
        std::vector<Coeff> v = zero_vector();
        for (int j = 0; j < n; ++j)
        {
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(j)] = 1;
            v[static_cast<std::size_t>(j)] = t.entry(Multidegree(e));
        }
        return finish({v}, 0, 0);
    }
    if (d == 2)
    {
        const SymmetricRankInfo info = symmetric_matrix_rank(t);
        const int k = std::min(rank, info.rank);
        if (real)
        {
            auto vs = real_square_vectors(detail::quadratic_matrix(t).real(), k, info.threshold);
            if (!vs)
            {
                if (log)
                {
                    log->push_back({rank, 0, 1.0, 0});
                }
                return std::nullopt;
            }
            return finish(std::move(*vs), 0, 0);
        }
        return finish(takagi_vectors(detail::quadratic_matrix(t), k), 0, 0);
    }

    constexpr int wave = 4;
    const double init_scale = std::pow(t.norm() / (std::sqrt(static_cast<double>(rank)) *
                                                   std::pow(static_cast<double>(n), 0.5 * d)),
                                       1.0 / d);
    // Stop well below the success threshold so accepted solutions are clean.
    const double stop_residual = std::min(cfg.success_tol * 1e-3, 1e-13);

    auto one_restart = [&](int restart) -> std::pair<std::vector<std::vector<Coeff>>, int> {
        std::mt19937_64 rng(detail::restart_seed(cfg.seed, rank, restart));
        auto solve = [&](auto tag) {
            using Scalar = decltype(tag);
            using Mat = typename detail::SymmetricLM<Scalar>::Mat;
            detail::SymmetricLM<Scalar> lm(t, rank);
            Mat a(n, rank);
            for (int s = 0; s < rank; ++s)
            {
                for (int j = 0; j < n; ++j)
                {
                    a(j, s) = Scalar(init_scale) * detail::draw<Scalar>(rng);
                }
            }
            auto out = lm.run(std::move(a), cfg.max_iters, cfg.conv_tol, stop_residual);
            std::vector<std::vector<Coeff>> vs;
            for (int s = 0; s < rank; ++s)
            {
                std::vector<Coeff> v(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                {
                    v[static_cast<std::size_t>(j)] = Coeff(out.factor(j, s));
                }
                vs.push_back(std::move(v));
            }
            return std::pair{std::move(vs), out.iterations};
        };
        return real ? solve(double{}) : solve(Coeff{});
    };

    const bool threaded = std::thread::hardware_concurrency() > 1;
    std::optional<CpdSolution> best;
    for (int first = 0; first < cfg.restarts; first += wave)
    {
        const int last = std::min(cfg.restarts, first + wave);
        std::vector<std::pair<std::vector<std::vector<Coeff>>, int>> results;
        if (threaded)
        {
            std::vector<std::future<std::pair<std::vector<std::vector<Coeff>>, int>>> jobs;
            for (int k = first; k < last; ++k)
            {
                jobs.push_back(std::async(std::launch::async, one_restart, k));
            }
            for (auto& j : jobs)
            {
                results.push_back(j.get());
            }
        }
        else
        {
            for (int k = first; k < last; ++k)
            {
                results.push_back(one_restart(k));
            }
        }
        for (int k = first; k < last; ++k)
        {
            auto& [vs, iters] = results[static_cast<std::size_t>(k - first)];
            auto sol = finish(std::move(vs), k, iters);
            if (sol && (!best || sol->residual < best->residual))
            {
                best = std::move(sol);
            }
        }
        if (best)
        {
            break;
        }
    }
    return best;
}

} // namespace ncwaring

#endif // NCWARING_SYMMETRIC_CPD_HPP
