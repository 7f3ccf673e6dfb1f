#include "mmas/tying.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mmas/rng.hpp"

namespace mmas {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::Increasing: return "INCREASING";
        case Direction::Decreasing: return "DECREASING";
        case Direction::Constant: return "CONSTANT";
        case Direction::NonMonotone: return "NON_MONOTONE";
    }
    return "?";
}

bool MonotonicityReport::all_monotone() const {
    return std::none_of(directions.begin(), directions.end(),
                        [](Direction d) { return d == Direction::NonMonotone; });
}

std::optional<NonMonotoneWitness> MonotonicityReport::first_witness() const {
    if (witnesses.empty()) return std::nullopt;
    return witnesses.front();
}

MonotonicityReport scan_monotonicity(const ParameterizedSystem& ps, int grid, int cross_sections,
                                     double tol, std::uint64_t seed) {
    if (grid < 3) throw DimensionError("scan_monotonicity: grid must be >= 3");
    if (cross_sections < 1) throw DimensionError("scan_monotonicity: cross_sections must be >= 1");
    const int k = ps.box.dim();
    const int n = ps.n;

    MonotonicityReport rep;
    rep.k = k;
    rep.n = n;
    rep.grid = grid;
    rep.cross_sections = cross_sections;
    rep.seed = seed;
    rep.tol = tol;
    rep.directions.assign(static_cast<size_t>(k) * n * n, Direction::Constant);

    Rng rng(seed);

    struct EntryStats {
        bool has_pos = false, has_neg = false;
        double max_pos_within = 0.0, max_neg_within = 0.0;  // magnitudes inside the deadband
        int pos_section = -1, pos_grid = -1;
        int neg_section = -1, neg_grid = -1;
        double pos_step = 0.0, neg_step = 0.0;
    };

    for (int l = 0; l < k; ++l) {
        // Random cross-sections plus the all-low / all-high ones.
        std::vector<Vector> sections;
        sections.reserve(static_cast<size_t>(cross_sections) + 2);
        for (int s = 0; s < cross_sections; ++s)
            sections.push_back(rng.uniform_vector(ps.box.lower, ps.box.upper));
        sections.push_back(ps.box.lower);
        sections.push_back(ps.box.upper);

        const double p_l = ps.box.lower[l];
        const double q_l = ps.box.upper[l];
        std::vector<EntryStats> stats(static_cast<size_t>(n) * n);

        std::vector<Matrix> curve(static_cast<size_t>(grid));
        for (size_t s = 0; s < sections.size(); ++s) {
            Vector m = sections[s];
            for (int g = 0; g < grid; ++g) {
                m[l] = p_l + (q_l - p_l) * static_cast<double>(g) / (grid - 1);
                curve[static_cast<size_t>(g)] = ps.eval(m).A;
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double lo = curve[0](i, j);
                    double hi = lo;
                    for (int g = 1; g < grid; ++g) {
                        lo = std::min(lo, curve[static_cast<size_t>(g)](i, j));
                        hi = std::max(hi, curve[static_cast<size_t>(g)](i, j));
                    }
                    const double deadband = tol * (hi - lo);
                    EntryStats& st = stats[static_cast<size_t>(i) * n + j];
                    for (int g = 0; g + 1 < grid; ++g) {
                        const double diff = curve[static_cast<size_t>(g) + 1](i, j) -
                                            curve[static_cast<size_t>(g)](i, j);
                        if (diff > deadband) {
                            if (!st.has_pos) {
                                st.pos_section = static_cast<int>(s);
                                st.pos_grid = g;
                                st.pos_step = diff;
                            }
                            st.has_pos = true;
                        } else if (diff < -deadband) {
                            if (!st.has_neg) {
                                st.neg_section = static_cast<int>(s);
                                st.neg_grid = g;
                                st.neg_step = diff;
                            }
                            st.has_neg = true;
                        } else {
                            if (diff > 0) st.max_pos_within = std::max(st.max_pos_within, diff);
                            if (diff < 0) st.max_neg_within = std::max(st.max_neg_within, -diff);
                        }
                    }
                }
            }
        }

        auto grid_vector = [&](int section, int g) {
            Vector m = sections[static_cast<size_t>(section)];
            m[l] = p_l + (q_l - p_l) * static_cast<double>(g) / (grid - 1);
            return m;
        };

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const EntryStats& st = stats[static_cast<size_t>(i) * n + j];
                Direction dir;
                if (st.has_pos && st.has_neg) {
                    dir = Direction::NonMonotone;
                    NonMonotoneWitness w;
                    w.param = l;
                    w.row = i;
                    w.col = j;
                    w.rise_at = grid_vector(st.pos_section, st.pos_grid);
                    w.fall_at = grid_vector(st.neg_section, st.neg_grid + 1);
                    w.rise_step = st.pos_step;
                    w.fall_step = st.neg_step;
                    rep.witnesses.push_back(std::move(w));
                } else if (st.has_pos) {
                    dir = Direction::Increasing;
                    rep.slack = std::max(rep.slack, st.max_neg_within);
                } else if (st.has_neg) {
                    dir = Direction::Decreasing;
                    rep.slack = std::max(rep.slack, st.max_pos_within);
                } else {
                    dir = Direction::Constant;
                    rep.slack = std::max({rep.slack, st.max_pos_within, st.max_neg_within});
                }
                rep.directions[(static_cast<size_t>(l) * n + i) * n + j] = dir;
            }
        }
    }
    return rep;
}

bool CornerTemplate::matches(const Corner& c) const {
    if (c.bits.size() != slots.size()) return false;
    for (size_t l = 0; l < slots.size(); ++l) {
        if (slots[l] == Slot::DontCare) continue;
        const Bound want = slots[l] == Slot::Low ? Bound::Low : Bound::High;
        if (c.bits[l] != want) return false;
    }
    return true;
}

int CornerTemplate::dont_care_count() const {
    return static_cast<int>(std::count(slots.begin(), slots.end(), Slot::DontCare));
}

std::string CornerTemplate::to_string() const {
    std::string s;
    s.reserve(slots.size());
    for (Slot sl : slots)
        s.push_back(sl == Slot::Low ? 'L' : (sl == Slot::High ? 'H' : '*'));
    return s;
}

EntryTemplates extremal_corners(const MonotonicityReport& report) {
    const int k = report.k;
    const int n = report.n;
    for (int l = 0; l < k; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (report.at(l, i, j) == Direction::NonMonotone) throw NonMonotoneEntry(l, i, j);

    EntryTemplates et;
    et.n = n;
    et.k = k;
    et.argmin.resize(static_cast<size_t>(n) * n);
    et.argmax.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CornerTemplate tmax, tmin;
            tmax.slots.resize(static_cast<size_t>(k));
            tmin.slots.resize(static_cast<size_t>(k));
            for (int l = 0; l < k; ++l) {
                switch (report.at(l, i, j)) {
                    case Direction::Increasing:
                        tmax.slots[static_cast<size_t>(l)] = Slot::High;
                        tmin.slots[static_cast<size_t>(l)] = Slot::Low;
                        break;
                    case Direction::Decreasing:
                        tmax.slots[static_cast<size_t>(l)] = Slot::Low;
                        tmin.slots[static_cast<size_t>(l)] = Slot::High;
                        break;
                    default:
                        tmax.slots[static_cast<size_t>(l)] = Slot::DontCare;
                        tmin.slots[static_cast<size_t>(l)] = Slot::DontCare;
                        break;
                }
            }
            et.argmax[static_cast<size_t>(i) * n + j] = std::move(tmax);
            et.argmin[static_cast<size_t>(i) * n + j] = std::move(tmin);
        }
    }
    return et;
}

namespace {

// All concrete completions of a template, or just the low/high fill-ins when
// the don't-care count exceeds the budget.
void add_completions(const CornerTemplate& t, int budget_log2, std::set<std::uint64_t>& out) {
    const int k = static_cast<int>(t.slots.size());
    std::vector<int> free_slots;
    for (int l = 0; l < k; ++l)
        if (t.slots[static_cast<size_t>(l)] == Slot::DontCare) free_slots.push_back(l);

    Corner base = Corner::all_low(k);
    for (int l = 0; l < k; ++l)
        if (t.slots[static_cast<size_t>(l)] == Slot::High) base.bits[static_cast<size_t>(l)] = Bound::High;

    if (static_cast<int>(free_slots.size()) > budget_log2) {
        out.insert(base.to_index());
        Corner high_fill = base;
        for (int l : free_slots) high_fill.bits[static_cast<size_t>(l)] = Bound::High;
        out.insert(high_fill.to_index());
        return;
    }
    const std::uint64_t total = std::uint64_t{1} << free_slots.size();
    for (std::uint64_t f = 0; f < total; ++f) {
        Corner c = base;
        for (size_t b = 0; b < free_slots.size(); ++b)
            c.bits[static_cast<size_t>(free_slots[b])] =
                ((f >> b) & 1u) ? Bound::High : Bound::Low;
        out.insert(c.to_index());
    }
}

}  // namespace

VertexModelSet select_vertex_models(const ParameterizedSystem& ps, const EntryTemplates& templates,
                                    const SelectOptions& opts) {
    const int n = templates.n;
    const int k = templates.k;

    struct Req {
        int entry;  // i*n + j
        bool maximum;
        const CornerTemplate* tmpl;
    };
    std::vector<Req> reqs;
    reqs.reserve(static_cast<size_t>(2) * n * n);
    for (int e = 0; e < n * n; ++e) {
        reqs.push_back({e, false, &templates.argmin[static_cast<size_t>(e)]});
        reqs.push_back({e, true, &templates.argmax[static_cast<size_t>(e)]});
    }

    std::set<std::uint64_t> candidate_ids;
    for (const Req& r : reqs) add_completions(*r.tmpl, opts.completion_budget_log2, candidate_ids);
    candidate_ids.insert(Corner::all_low(k).to_index());
    candidate_ids.insert(Corner::all_high(k).to_index());

    std::vector<Corner> candidates;
    candidates.reserve(candidate_ids.size());
    for (std::uint64_t id : candidate_ids) candidates.push_back(Corner::from_index(id, k));

    // Greedy cover; candidate order is ascending corner index, so ties resolve
    // to the lexicographically smallest corner.
    std::vector<bool> covered(reqs.size(), false);
    size_t uncovered = reqs.size();
    VertexModelSet out;
    while (uncovered > 0) {
        int best = -1;
        size_t best_count = 0;
        for (size_t ci = 0; ci < candidates.size(); ++ci) {
            size_t count = 0;
            for (size_t ri = 0; ri < reqs.size(); ++ri)
                if (!covered[ri] && reqs[ri].tmpl->matches(candidates[ci])) ++count;
            if (count > best_count) {
                best_count = count;
                best = static_cast<int>(ci);
            }
        }
        if (best < 0) break;  // unreachable: each template's own completion matches it
        const int corner_idx = static_cast<int>(out.corners.size());
        out.corners.push_back(candidates[static_cast<size_t>(best)]);
        for (size_t ri = 0; ri < reqs.size(); ++ri) {
            if (!covered[ri] && reqs[ri].tmpl->matches(candidates[static_cast<size_t>(best)])) {
                covered[ri] = true;
                --uncovered;
                out.coverage[{reqs[ri].entry, reqs[ri].maximum}] = corner_idx;
            }
        }
    }

    // Redundancy pruning: drop any corner whose requirements are all matched by
    // some other selected corner.
    bool changed = true;
    while (changed && out.corners.size() > 1) {
        changed = false;
        for (size_t drop = 0; drop < out.corners.size(); ++drop) {
            bool redundant = true;
            for (const Req& r : reqs) {
                bool other_matches = false;
                for (size_t c = 0; c < out.corners.size(); ++c) {
                    if (c == drop) continue;
                    if (r.tmpl->matches(out.corners[c])) {
                        other_matches = true;
                        break;
                    }
                }
                if (!other_matches) {
                    redundant = false;
                    break;
                }
            }
            if (redundant) {
                out.corners.erase(out.corners.begin() + static_cast<std::ptrdiff_t>(drop));
                changed = true;
                break;
            }
        }
    }

    // Reassign coverage to the first remaining corner matching each template.
    out.coverage.clear();
    for (const Req& r : reqs) {
        for (size_t c = 0; c < out.corners.size(); ++c) {
            if (r.tmpl->matches(out.corners[c])) {
                out.coverage[{r.entry, r.maximum}] = static_cast<int>(c);
                break;
            }
        }
    }

    for (const Corner& c : out.corners) {
        LinearSystem sys = eval_at_corner(ps, c);
        try {
            out.canonical.push_back(to_canonical(sys, opts.canonical_tol));
        } catch (const Uncontrollable& u) {
            throw Uncontrollable(u.ratio, "corner " + c.to_string());
        }
        out.systems.push_back(std::move(sys));
    }
    return out;
}

namespace {

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
    double range = 0.0;
};

Curve sample_entry(const ParameterizedSystem& ps, int l, int i, int j, int grid) {
    Curve c;
    c.x.resize(static_cast<size_t>(grid));
    c.y.resize(static_cast<size_t>(grid));
    Vector m = ps.box.midpoint();
    const double p_l = ps.box.lower[l];
    const double q_l = ps.box.upper[l];
    double lo = 0.0, hi = 0.0;
    for (int g = 0; g < grid; ++g) {
        const double x = p_l + (q_l - p_l) * static_cast<double>(g) / (grid - 1);
        m[l] = x;
        const double y = ps.eval(m).A(i, j);
        c.x[static_cast<size_t>(g)] = x;
        c.y[static_cast<size_t>(g)] = y;
        if (g == 0) {
            lo = hi = y;
        } else {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    c.range = hi - lo;
    return c;
}

// Interior critical points as (index, is_maximum), from deadbanded step signs.
std::vector<std::pair<int, bool>> critical_points(const Curve& c, double deadband) {
    std::vector<std::pair<int, bool>> pts;
    const int grid = static_cast<int>(c.x.size());
    int last_sign = 0;
    int last_pos = -1;
    for (int g = 0; g + 1 < grid; ++g) {
        const double diff = c.y[static_cast<size_t>(g) + 1] - c.y[static_cast<size_t>(g)];
        const int sign = diff > deadband ? 1 : (diff < -deadband ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            const int at = (last_pos + 1 + g) / 2;  // between the two opposing steps
            pts.emplace_back(at, last_sign > 0);
        }
        last_sign = sign;
        last_pos = g;
    }
    return pts;
}

}  // namespace

CoordinationVerdict check_coordination(const ParameterizedSystem& ps, int l,
                                       std::pair<int, int> entry_a, std::pair<int, int> entry_b,
                                       int grid, double tol) {
    if (grid < 5) throw DimensionError("check_coordination: grid must be >= 5");
    const Curve a = sample_entry(ps, l, entry_a.first, entry_a.second, grid);
    const Curve b = sample_entry(ps, l, entry_b.first, entry_b.second, grid);
    const int N = grid;

    CoordinationVerdict v;

    // Condition 1: affine relationship g_b = alpha g_a + beta.
    {
        double mean_a = 0.0, mean_b = 0.0;
        for (int g = 0; g < N; ++g) {
            mean_a += a.y[static_cast<size_t>(g)];
            mean_b += b.y[static_cast<size_t>(g)];
        }
        mean_a /= N;
        mean_b /= N;
        double var_a = 0.0, cov = 0.0;
        for (int g = 0; g < N; ++g) {
            const double da = a.y[static_cast<size_t>(g)] - mean_a;
            cov += da * (b.y[static_cast<size_t>(g)] - mean_b);
            var_a += da * da;
        }
        if (var_a > 0.0) {
            v.alpha = cov / var_a;
            v.beta = mean_b - v.alpha * mean_a;
        }
        double resid = 0.0;
        for (int g = 0; g < N; ++g)
            resid = std::max(resid, std::abs(b.y[static_cast<size_t>(g)] -
                                             (v.alpha * a.y[static_cast<size_t>(g)] + v.beta)));
        v.affine.residual = resid;
        v.affine.holds = var_a > 0.0 && std::abs(v.alpha) > tol && resid <= tol * std::max(b.range, 1e-300);
    }

    // Condition 2: g_b = h(g_a) with h strictly monotone (rank-order consistency).
    {
        std::vector<int> order(static_cast<size_t>(N));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
            return a.y[static_cast<size_t>(p)] < a.y[static_cast<size_t>(q)];
        });
        const double db_b = tol * std::max(b.range, 1e-300);
        bool has_pos = false, has_neg = false;
        double worst = 0.0;
        for (int g = 0; g + 1 < N; ++g) {
            const double diff = b.y[static_cast<size_t>(order[static_cast<size_t>(g) + 1])] -
                                b.y[static_cast<size_t>(order[static_cast<size_t>(g)])];
            if (diff > db_b) has_pos = true;
            if (diff < -db_b) has_neg = true;
        }
        if (has_pos && has_neg) {
            // Reversal: residual is the largest wrong-way step vs the majority direction.
            double max_pos = 0.0, max_neg = 0.0;
            for (int g = 0; g + 1 < N; ++g) {
                const double diff = b.y[static_cast<size_t>(order[static_cast<size_t>(g) + 1])] -
                                    b.y[static_cast<size_t>(order[static_cast<size_t>(g)])];
                max_pos = std::max(max_pos, diff);
                max_neg = std::max(max_neg, -diff);
            }
            worst = std::min(max_pos, max_neg);
        }
        v.functional.residual = worst;
        v.functional.holds = (has_pos != has_neg);  // one strict direction, no reversal
    }

    // Condition 3: both curves symmetric about a common grid center.
    {
        const double scale = std::max({a.range, b.range, 1e-300});
        double best = std::numeric_limits<double>::infinity();
        int best_c = -1;
        const int min_half = std::max(1, (N - 1) / 4);
        for (int c = min_half; c <= N - 1 - min_half; ++c) {
            const int half = std::min(c, N - 1 - c);
            double resid = 0.0;
            for (int d = 1; d <= half; ++d) {
                resid = std::max(resid, std::abs(a.y[static_cast<size_t>(c + d)] -
                                                 a.y[static_cast<size_t>(c - d)]));
                resid = std::max(resid, std::abs(b.y[static_cast<size_t>(c + d)] -
                                                 b.y[static_cast<size_t>(c - d)]));
            }
            if (resid < best) {
                best = resid;
                best_c = c;
            }
        }
        v.symmetry.residual = best;
        v.symmetry.holds = best_c >= 0 && best <= tol * scale;
        if (best_c >= 0) v.symmetry_center = a.x[static_cast<size_t>(best_c)];
    }

    // Condition 4: shared critical points with matching extremum type.
    {
        const auto pa = critical_points(a, tol * std::max(a.range, 1e-300));
        const auto pb = critical_points(b, tol * std::max(b.range, 1e-300));
        bool ok = pa.size() == pb.size() && !pa.empty();
        double worst = 0.0;
        if (ok) {
            for (size_t q = 0; q < pa.size(); ++q) {
                const double dist = std::abs(pa[q].first - pb[q].first);
                worst = std::max(worst, dist);
                if (dist > 1.0 || pa[q].second != pb[q].second) ok = false;
            }
        }
        v.critical_points.residual = worst;
        v.critical_points.holds = ok;
    }

    v.periodic_checked = false;
    return v;
}

}  // namespace mmas
