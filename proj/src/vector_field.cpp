#include "holint/vector_field.hpp"

#include <algorithm>

namespace holint {

Series3 contract(const VectorFieldGerm& X, const OneForm3& w) {
    int m = std::min(X.order() + 1, w.order());
    const Series3 comps[3] = {X.component(0), X.component(1), X.component(2)};
    const Series3* ws[3] = {&w.P, &w.Q, &w.R};
    Series3 acc(m);
    for (int j = 0; j < 3; ++j)
        acc = acc + truncated(comps[j], m) * truncated(*ws[j], m);
    return acc;
}

} // namespace holint
