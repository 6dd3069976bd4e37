#include "cubeplan/genfun.hpp"

#include <stdexcept>

namespace cubeplan {

namespace {

void add_scaled(YPoly& acc, const YPoly& a, const YPoly& b, int sign) {
    // acc += sign * a*b
    if (acc.size() < a.size() + b.size()) acc.resize(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += sign * a[i] * b[j];
}

void trim(YPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

std::vector<YPoly> rational_series(const std::vector<YPoly>& num, const std::vector<YPoly>& den,
                                   std::size_t max_n) {
    if (den.empty() || den[0].size() != 1 || den[0][0] != 1)
        throw std::invalid_argument("rational_series: denominator constant term must be 1");
    std::vector<YPoly> s(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
        YPoly acc = n < num.size() ? num[n] : YPoly{};
        for (std::size_t k = 1; k < den.size() && k <= n; ++k)
            add_scaled(acc, den[k], s[n - k], -1);
        trim(acc);
        s[n] = std::move(acc);
    }
    return s;
}

}  // namespace cubeplan
