#include "mmas/model.hpp"

#include <limits>

#include "mmas/tying.hpp"

namespace mmas {

ParameterBox::ParameterBox(std::vector<std::string> names_, Vector lower_, Vector upper_)
    : names(std::move(names_)), lower(std::move(lower_)), upper(std::move(upper_)) {
    if (lower.size() != upper.size() || static_cast<size_t>(lower.size()) != names.size())
        throw DimensionError("ParameterBox: names/lower/upper sizes differ");
    if (lower.size() < 1) throw DimensionError("ParameterBox: needs at least one parameter");
    for (Eigen::Index l = 0; l < lower.size(); ++l) {
        if (!(lower[l] < upper[l]))
            throw DimensionError("ParameterBox: lower must be strictly below upper for " +
                                 names[static_cast<size_t>(l)]);
    }
}

bool ParameterBox::contains(const Vector& m, double slack) const {
    if (m.size() != lower.size()) return false;
    for (Eigen::Index l = 0; l < m.size(); ++l) {
        if (m[l] < lower[l] - slack || m[l] > upper[l] + slack) return false;
    }
    return true;
}

Vector Corner::to_vector(const ParameterBox& box) const {
    if (static_cast<int>(bits.size()) != box.dim())
        throw DimensionError("Corner: length does not match box dimension");
    Vector m(box.dim());
    for (int l = 0; l < box.dim(); ++l)
        m[l] = bits[static_cast<size_t>(l)] == Bound::Low ? box.lower[l] : box.upper[l];
    return m;
}

std::string Corner::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (Bound b : bits) s.push_back(b == Bound::Low ? 'L' : 'H');
    return s;
}

Corner Corner::from_index(std::uint64_t idx, int k) {
    Corner c;
    c.bits.resize(static_cast<size_t>(k));
    for (int l = 0; l < k; ++l) {
        const int shift = k - 1 - l;
        c.bits[static_cast<size_t>(l)] = ((idx >> shift) & 1u) ? Bound::High : Bound::Low;
    }
    return c;
}

std::uint64_t Corner::to_index() const {
    std::uint64_t idx = 0;
    for (Bound b : bits) idx = (idx << 1) | (b == Bound::High ? 1u : 0u);
    return idx;
}

LinearSystem eval_at_corner(const ParameterizedSystem& ps, const Corner& c) {
    if (static_cast<int>(c.bits.size()) != ps.box.dim())
        throw DimensionError("eval_at_corner: corner length differs from box dimension");
    return ps.eval(c.to_vector(ps.box));
}

MatrixInterval::MatrixInterval(Matrix lb_, Matrix ub_) : lb(std::move(lb_)), ub(std::move(ub_)) {
    if (lb.rows() != ub.rows() || lb.cols() != ub.cols() || lb.rows() != lb.cols())
        throw DimensionError("MatrixInterval: bounds must be square and of equal shape");
    for (Eigen::Index i = 0; i < lb.rows(); ++i)
        for (Eigen::Index j = 0; j < lb.cols(); ++j)
            if (!(lb(i, j) <= ub(i, j)))
                throw DimensionError("MatrixInterval: lb must not exceed ub");
}

MatrixInterval element_bounds(const ParameterizedSystem& ps, const MonotonicityReport& report,
                              int corner_budget_log2) {
    const int k = ps.box.dim();
    const int n = ps.n;
    if (report.k != k || report.n != n)
        throw DimensionError("element_bounds: report shape does not match the system");
    for (int l = 0; l < k; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (report.at(l, i, j) == Direction::NonMonotone) throw NonMonotoneEntry(l, i, j);

    Matrix lb = Matrix::Constant(n, n, std::numeric_limits<double>::infinity());
    Matrix ub = Matrix::Constant(n, n, -std::numeric_limits<double>::infinity());

    if (k <= corner_budget_log2) {
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const LinearSystem sys = eval_at_corner(ps, Corner::from_index(idx, k));
            lb = lb.cwiseMin(sys.A);
            ub = ub.cwiseMax(sys.A);
        }
        return MatrixInterval(lb, ub);
    }

    // Per-entry extremal corner from the monotone directions; don't-care slots
    // pin to Low for determinism.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Corner cmin = Corner::all_low(k);
            Corner cmax = Corner::all_low(k);
            for (int l = 0; l < k; ++l) {
                switch (report.at(l, i, j)) {
                    case Direction::Increasing:
                        cmax.bits[static_cast<size_t>(l)] = Bound::High;
                        break;
                    case Direction::Decreasing:
                        cmin.bits[static_cast<size_t>(l)] = Bound::High;
                        break;
                    default:
                        break;
                }
            }
            lb(i, j) = eval_at_corner(ps, cmin).A(i, j);
            ub(i, j) = eval_at_corner(ps, cmax).A(i, j);
        }
    }
    return MatrixInterval(lb, ub);
}

}  // namespace mmas
