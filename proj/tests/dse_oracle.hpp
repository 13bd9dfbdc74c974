#pragma once

// Independent route to DSE coefficients: Picard iteration of the whole
// truncated series X <- 1 + sum_j g^j omega_j B+_j(X^{j+1}), with series
// products expanded term by term. Shares only graft and the forest product
// with the solver.

#include "dysongraph/dse.hpp"

#include <vector>

namespace dysongraph::oracle {

using Series = std::vector<ForestSum>;  // coefficient of g^n at index n

inline Series series_product(const Series& a, const Series& b, std::size_t order) {
    Series c(order + 1);
    for (std::size_t i = 0; i <= order; ++i)
        for (std::size_t k = 0; i + k <= order; ++k) c[i + k] += a[i] * b[k];
    return c;
}

inline Series fixed_point_expansion(const DSESpec& spec) {
    const std::size_t order = spec.order;
    Series x(order + 1);
    x[0] = ForestSum::unit();
    for (std::size_t sweep = 0; sweep <= order; ++sweep) {
        Series next(order + 1);
        next[0] = ForestSum::unit();
        Series power = x;  // X^1
        for (std::size_t j = 1; j <= spec.cocycles.size() && j <= order; ++j) {
            power = series_product(power, x, order);  // X^{j+1}
            for (std::size_t n = j; n <= order; ++n)
                next[n] += graft(spec.cocycles[j - 1].decoration, power[n - j]) * spec.cocycles[j - 1].omega;
        }
        x = std::move(next);
    }
    return x;
}

}  // namespace dysongraph::oracle
