#include "bergman/mode_series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bergman {

int MultiIndex::order() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

MultiIndex MultiIndex::first_variable(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("MultiIndex: bad mode");
    MultiIndex a;
    a.parts.assign(n, 0);
    a.parts[0] = k;
    return a;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
    if (order() != o.order()) return order() < o.order();
    return parts < o.parts;
}

ModeSeries::ModeSeries(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("ModeSeries: dimension must be >= 1");
}

void ModeSeries::set(MultiIndex alpha, LogReal coeff) {
    if (static_cast<int>(alpha.parts.size()) != n_)
        throw std::invalid_argument("ModeSeries: multi-index dimension mismatch");
    for (int a : alpha.parts)
        if (a < 0) throw std::invalid_argument("ModeSeries: negative exponent");
    auto it = std::lower_bound(modes_.begin(), modes_.end(), alpha,
                               [](const auto& m, const MultiIndex& a) { return m.first < a; });
    if (it != modes_.end() && it->first == alpha) {
        if (coeff.is_zero()) modes_.erase(it);
        else it->second = coeff;
    } else if (!coeff.is_zero()) {
        modes_.insert(it, {std::move(alpha), coeff});
    }
}

void ModeSeries::set_first_variable(int k, LogReal coeff) {
    set(MultiIndex::first_variable(n_, k), coeff);
}

LogReal ModeSeries::coeff(const MultiIndex& alpha) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), alpha,
                               [](const auto& m, const MultiIndex& a) { return m.first < a; });
    if (it != modes_.end() && it->first == alpha) return it->second;
    return LogReal::zero();
}

}  // namespace bergman
