#pragma once

#include <optional>
#include <vector>

#include "bergman/log_real.hpp"

namespace bergman {

/// Monomial exponent alpha = (a_1, ..., a_n), all entries >= 0.
struct MultiIndex {
    std::vector<int> parts;

    int order() const;  // |alpha|
    /// (k, 0, ..., 0): the z_1^k modes used throughout.
    static MultiIndex first_variable(int n, int k);

    bool operator==(const MultiIndex& o) const { return parts == o.parts; }
    /// Ordered by |alpha| first, then lexicographically; "smallest divergent
    /// mode" reports follow this order.
    bool operator<(const MultiIndex& o) const;
};

/// Entire function given by its monomial coefficients.  Radial weights make
/// distinct monomials orthogonal, so norms and projections act mode by mode.
class ModeSeries {
public:
    explicit ModeSeries(int n);

    int dimension() const { return n_; }
    void set(MultiIndex alpha, LogReal coeff);
    void set_first_variable(int k, LogReal coeff);
    LogReal coeff(const MultiIndex& alpha) const;

    const std::vector<std::pair<MultiIndex, LogReal>>& modes() const { return modes_; }
    bool empty() const { return modes_.empty(); }

private:
    int n_;
    std::vector<std::pair<MultiIndex, LogReal>> modes_;  // sorted, nonzero coeffs
};

}  // namespace bergman
