#ifndef NCWARING_BENCH_HPP
#define NCWARING_BENCH_HPP

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ncwaring/eval.hpp"

namespace ncwaring
{

struct BenchRow
{
    int n = 0;
    int trial = 0;
    std::string method;
    std::int64_t wall_ns = 0;
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
    double max_rel_err = 0.0;
};

///
/// Times naive against decomposition-based evaluation on seeded random n x n
/// tuples. Both rows of a trial carry the relative discrepancy between the
/// two results. Everything but wall_ns is reproducible from `seed`.
///
inline std::vector<BenchRow> bench(const NCPolynomial& p, const WaringDecomposition& w, const std::vector<int>& sizes,
                                   int trials, std::uint64_t seed)
{
    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    std::mt19937_64 rng(seed);
    for (int n : sizes)
    {
        for (int trial = 0; trial < trials; ++trial)
        {
            const MatrixTuple x = MatrixTuple::random(p.arity(), n, rng);

            const auto t0 = clock::now();
            auto [naive, naive_ops] = evaluate_naive(p, x);
            const auto t1 = clock::now();
            auto [fast, fast_ops] = evaluate_waring(w, x);
            const auto t2 = clock::now();

            const double err = relative_error(naive, fast);
            rows.push_back({n, trial, "naive",
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count(),
                            naive_ops.mults, naive_ops.adds, err});
            rows.push_back({n, trial, "waring",
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count(),
                            fast_ops.mults, fast_ops.adds, err});
        }
    }
    return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows)
{
    os << "n,trial,method,wall_ns,mults,adds,max_rel_err\n";
    for (const auto& r : rows)
    {
        char err[32];
        std::snprintf(err, sizeof err, "%.3e", r.max_rel_err);
        os << r.n << ',' << r.trial << ',' << r.method << ',' << r.wall_ns << ',' << r.mults << ',' << r.adds << ','
           << err << '\n';
    }
}

} // namespace ncwaring

#endif // NCWARING_BENCH_HPP
