#include "mmas/charpoly_bounds.hpp"

#include <algorithm>
#include <numeric>

namespace mmas {

Interval Interval::operator*(const Interval& o) const {
    const double p1 = lo * o.lo;
    const double p2 = lo * o.hi;
    const double p3 = hi * o.lo;
    const double p4 = hi * o.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

bool CoefficientBounds::contains(const Vector& c, double rel_slack) const {
    if (c.size() != lb.size()) return false;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        const double scale = std::max({1.0, std::abs(lb[k]), std::abs(ub[k])});
        if (c[k] < lb[k] - rel_slack * scale || c[k] > ub[k] + rel_slack * scale) return false;
    }
    return true;
}

namespace {

int permutation_sign(const std::vector<int>& p) {
    int inversions = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

// Signed permutation-sum bounds for det(A_S) on the principal submatrix
// indexed by `idx`. Entry sharing between permutations is ignored, so this is
// an outer enclosure, not a tight hull.
Interval det_bounds_sub(const MatrixInterval& mi, const std::vector<int>& idx,
                        const BoundsOptions& opts) {
    const int s = static_cast<int>(idx.size());
    if (s > 8) throw DimensionTooLarge(s);
    if (s == 0) return {1.0, 1.0};

    std::vector<int> perm(static_cast<size_t>(s));
    std::iota(perm.begin(), perm.end(), 0);
    Interval total{0.0, 0.0};
    do {
        const int sgn = permutation_sign(perm);
        Interval prod{1.0, 1.0};
        if (opts.literal_paper_products) {
            // Endpoint products as printed; valid only for nonnegative entries.
            double plo = 1.0;
            double phi = 1.0;
            for (int r = 0; r < s; ++r) {
                plo *= mi.lb(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(perm[r])]);
                phi *= mi.ub(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(perm[r])]);
            }
            prod = {plo, phi};
        } else {
            for (int r = 0; r < s; ++r) {
                const int i = idx[static_cast<size_t>(r)];
                const int j = idx[static_cast<size_t>(perm[r])];
                prod = prod * Interval{mi.lb(i, j), mi.ub(i, j)};
            }
        }
        total = total + (sgn > 0 ? prod : -prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Visit every size-r subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int r, F&& visit) {
    std::vector<int> idx(static_cast<size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(idx);
        int pos = r - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - r + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int q = pos + 1; q < r; ++q)
            idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
    }
}

}  // namespace

Interval trace_coeff_bounds(const MatrixInterval& mi) {
    double sum_lb = 0.0;
    double sum_ub = 0.0;
    for (int i = 0; i < mi.n(); ++i) {
        sum_lb += mi.lb(i, i);
        sum_ub += mi.ub(i, i);
    }
    return {-sum_ub, -sum_lb};
}

Interval det_bounds(const MatrixInterval& mi, const BoundsOptions& opts) {
    if (mi.n() > 8) throw DimensionTooLarge(mi.n());
    std::vector<int> all(static_cast<size_t>(mi.n()));
    std::iota(all.begin(), all.end(), 0);
    return det_bounds_sub(mi, all, opts);
}

Interval constant_term_bounds(const MatrixInterval& mi, const BoundsOptions& opts) {
    const Interval d = det_bounds(mi, opts);
    return (mi.n() % 2 == 0) ? d : -d;
}

Interval intermediate_coeff_bounds(const MatrixInterval& mi, int k, const BoundsOptions& opts) {
    const int n = mi.n();
    if (k < 1 || k > n - 2)
        throw DimensionError("intermediate_coeff_bounds: index must satisfy 1 <= k <= n-2");
    const int minor_size = n - k;
    if (minor_size > 8) throw DimensionTooLarge(minor_size);

    Interval sum{0.0, 0.0};
    for_each_subset(n, minor_size, [&](const std::vector<int>& idx) {
        sum = sum + det_bounds_sub(mi, idx, opts);
    });
    return (minor_size % 2 == 0) ? sum : -sum;
}

CoefficientBounds all_coeff_bounds(const MatrixInterval& mi, const BoundsOptions& opts) {
    const int n = mi.n();
    if (n > 8) throw DimensionTooLarge(n);
    CoefficientBounds cb;
    cb.lb = Vector(n);
    cb.ub = Vector(n);

    const Interval tr = trace_coeff_bounds(mi);
    cb.lb[n - 1] = tr.lo;
    cb.ub[n - 1] = tr.hi;

    if (n >= 2) {
        const Interval c0 = constant_term_bounds(mi, opts);
        cb.lb[0] = c0.lo;
        cb.ub[0] = c0.hi;
    }
    for (int k = 1; k <= n - 2; ++k) {
        const Interval ck = intermediate_coeff_bounds(mi, k, opts);
        cb.lb[k] = ck.lo;
        cb.ub[k] = ck.hi;
    }
    return cb;
}

}  // namespace mmas
