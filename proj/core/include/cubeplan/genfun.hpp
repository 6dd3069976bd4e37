#pragma once

#include <vector>

#include "cubeplan/pip.hpp"

namespace cubeplan {

/// Polynomial in y with exact integer coefficients; index = power of y.
using YPoly = std::vector<BigInt>;

/// Coefficients of x^0..x^max_n of num(x,y)/den(x,y), where num and den are
/// polynomials in x with YPoly coefficients and den has constant term 1.
/// Exact long division via the linear recurrence the denominator defines.
std::vector<YPoly> rational_series(const std::vector<YPoly>& num, const std::vector<YPoly>& den,
                                   std::size_t max_n);

}  // namespace cubeplan
