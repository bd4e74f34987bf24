// Decompose a cubic in three noncommuting variables and evaluate it on a
// random matrix tuple both term by term and through the decomposition.

#include <iostream>
#include <random>

#include "ncwaring/ncwaring.hpp"

int main()
{
    using namespace ncwaring;

    const NCPolynomial p = lift(CPolynomial(3, {{{3, 0, 0}, 1.0},
                                                 {{2, 1, 0}, 15.0},
                                                 {{1, 1, 1}, 6.0},
                                                 {{0, 0, 3}, -4.0}}),
                                3);
    std::cout << "p = " << to_string(p) << "\n";

    const DecompositionResult r = waring_decompose(p, 1);
    const auto* ok = r.success();
    if (!ok)
    {
        std::cerr << "decomposition failed: " << to_string(r.status()) << "\n";
        return 1;
    }
    std::cout << "terms: " << ok->decomposition.rank() << ", residual " << ok->residual << "\n";

    std::mt19937_64 rng(1);
    const MatrixTuple x = MatrixTuple::random(3, 16, rng);
    const auto [naive, naive_ops] = evaluate_naive(p, x);
    const auto [fast, fast_ops] = evaluate_waring(ok->decomposition, x);
    std::cout << "naive:  " << naive_ops.mults << " matrix products\n"
              << "waring: " << fast_ops.mults << " matrix products\n"
              << "relative difference " << relative_error(naive, fast) << "\n";
    return 0;
}
