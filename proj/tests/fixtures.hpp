#ifndef NCWARING_TESTS_FIXTURES_HPP
#define NCWARING_TESTS_FIXTURES_HPP

namespace fixtures
{

/// Cubic in three variables whose symmetric tensor has rank 4.
inline constexpr const char* kRank4Cubic =
    "x1^3 - 4*x2^3 - 4*x3^3 + 5*x1*x1*x2 + 5*x1*x2*x1 + 5*x2*x1*x1 - 3*x1*x1*x3 - 3*x1*x3*x1 - 3*x3*x1*x1"
    " + 7*x2*x2*x1 + 7*x2*x1*x2 + 7*x1*x2*x2 - 11*x2*x2*x3 - 11*x2*x3*x2 - 11*x3*x2*x2"
    " + 6*x3*x3*x1 + 6*x3*x1*x3 + 6*x1*x3*x3 - 6*x3*x3*x2 - 6*x3*x2*x3 - 6*x2*x3*x3"
    " + x1*x2*x3 + x1*x3*x2 + x2*x1*x3 + x2*x3*x1 + x3*x1*x2 + x3*x2*x1";

/// Frontal slices T(:,:,k) of its tensor, [k][i][j] = T_(i+1, j+1, k+1).
inline constexpr int kRank4Slices[3][3][3] = {
    {{1, 5, -3}, {5, 7, 1}, {-3, 1, 6}},
    {{5, 7, 1}, {7, -4, -11}, {1, -11, -6}},
    {{-3, 1, 6}, {1, -11, -6}, {6, -6, -4}},
};

/// 2-compatible but not 1-compatible.
inline constexpr const char* kSwapQuartic = "x1*x2*x2*x1 + x2*x1*x1*x2";

/// (x1 x2 + x1^2)(x2 x1 + x1^2), not 2-compatible.
inline constexpr const char* kBlockProduct = "x1*x2^2*x1 + x1*x2*x1^2 + x1^2*x2*x1 + x1^4";

/// 2-compatible; its collapse is a square but it has no two-term (2,2) decomposition.
inline constexpr const char* kSplitQuartic = "x1^4 + x1*x2*x2*x1 + x2*x1*x1*x2 + x2^4";

} // namespace fixtures

#endif // NCWARING_TESTS_FIXTURES_HPP
