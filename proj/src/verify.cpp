#include "mmas/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mmas/analysis.hpp"
#include "mmas/rng.hpp"
#include "mmas/weight_transform.hpp"

namespace mmas {

bool VerifyReport::all_passed() const {
    for (const auto& s : suites)
        if (s.failures > 0) return false;
    return true;
}

int VerifyReport::total_checks() const {
    int sum = 0;
    for (const auto& s : suites) sum += s.checks;
    return sum;
}

int VerifyReport::total_failures() const {
    int sum = 0;
    for (const auto& s : suites) sum += s.failures;
    return sum;
}

std::string VerifyReport::text() const {
    std::ostringstream out;
    out << "verify report (seed=" << seed << ", mode=" << (smoke ? "smoke" : "full") << ")\n";
    for (const auto& s : suites) {
        char line[160];
        std::snprintf(line, sizeof line, "[%s] %-32s checks=%-6d failures=%d\n",
                      s.failures == 0 ? "PASS" : "FAIL", s.name.c_str(), s.checks, s.failures);
        out << line;
        for (const auto& m : s.messages) out << "       " << m << "\n";
    }
    out << "overall: " << (all_passed() ? "PASS" : "FAIL") << " (" << suites.size() << " suites, "
        << total_checks() << " checks, " << total_failures() << " failures)\n";
    return out.str();
}

std::string VerifyReport::json_text() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["mode"] = smoke ? "smoke" : "full";
    j["all_passed"] = all_passed();
    j["total_checks"] = total_checks();
    j["total_failures"] = total_failures();
    j["suites"] = nlohmann::json::array();
    for (const auto& s : suites) {
        nlohmann::json js;
        js["name"] = s.name;
        js["checks"] = s.checks;
        js["failures"] = s.failures;
        js["messages"] = s.messages;
        j["suites"].push_back(js);
    }
    return j.dump(2) + "\n";
}

namespace {

constexpr size_t kMaxMessages = 5;

class Suite {
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& on_fail) {
        ++result_.checks;
        if (!ok) {
            ++result_.failures;
            if (result_.messages.size() < kMaxMessages) result_.messages.push_back(on_fail);
        }
    }

    template <typename... Args>
    void checkf(bool ok, const char* fmt, Args... args) {
        ++result_.checks;
        if (!ok) {
            ++result_.failures;
            if (result_.messages.size() < kMaxMessages) {
                char buf[200];
                std::snprintf(buf, sizeof buf, fmt, args...);
                result_.messages.emplace_back(buf);
            }
        }
    }

    SuiteResult take() { return std::move(result_); }

  private:
    SuiteResult result_;
};

double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

Matrix random_matrix(Rng& rng, int n) { return rng.uniform_matrix(n, n, -1.0, 1.0); }

// Random controllable pair with a reasonable conditioning of the companion
// transformation; resamples deterministically until the filters pass.
LinearSystem random_controllable(Rng& rng, int n) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix A = random_matrix(rng, n);
        Matrix B = rng.uniform_matrix(n, 1, -1.0, 1.0);
        if (singular_value_ratio(controllability_matrix(A, B.col(0))) < 1e-4) continue;
        return {A, B};
    }
    throw std::runtime_error("random_controllable: resampling failed");
}

std::vector<CanonicalForm> random_canonical_models(Rng& rng, int n, int N) {
    std::vector<CanonicalForm> models;
    for (int i = 0; i < N; ++i) {
        for (int attempt = 0;; ++attempt) {
            const LinearSystem sys = random_controllable(rng, n);
            try {
                CanonicalForm cf = to_canonical(sys);
                if (cond_1norm(cf.T_inv, cf.T) < 1e7) {
                    models.push_back(std::move(cf));
                    break;
                }
            } catch (const Uncontrollable&) {
            }
            if (attempt > 200) throw std::runtime_error("model generation failed");
        }
    }
    return models;
}

struct VehicleContext {
    NamedSystem named;
    AnalysisResult analysis;
};

VehicleContext make_vehicle_context(std::uint64_t seed) {
    VehicleContext ctx{make_named_system("vehicle"), {}};
    AnalysisOptions opts;
    opts.seed = seed;
    opts.coverage_samples = 0;  // coverage handled by its own suite/criterion
    ctx.analysis = analyze_system(ctx.named, opts);
    return ctx;
}

VertexModelSet subset_models(const VertexModelSet& all, const std::vector<int>& idx) {
    VertexModelSet out;
    for (int i : idx) {
        out.corners.push_back(all.corners[static_cast<size_t>(i)]);
        out.systems.push_back(all.systems[static_cast<size_t>(i)]);
        out.canonical.push_back(all.canonical[static_cast<size_t>(i)]);
    }
    return out;
}

Scenario base_scenario(double speed_kph, double horizon, std::uint64_t seed) {
    Scenario sc;
    sc.speed_mps = speed_kph / 3.6;
    sc.horizon_s = horizon;
    sc.step_s = 1e-3;
    sc.seed = seed;
    sc.steering.kind = SteeringProfile::Kind::Sine;
    sc.steering.amplitude_rad = 2.0 * std::numbers::pi / 180.0;
    sc.steering.frequency_hz = 0.5;
    return sc;
}

Scenario combo_scenario(const Vector& w, double speed_kph, double horizon, std::uint64_t seed) {
    Scenario sc = base_scenario(speed_kph, horizon, seed);
    sc.plant.kind = PlantSpec::Kind::ConvexCombo;
    sc.plant.combo_weights = w;
    return sc;
}

// Schedule scenario with one stiffness parameter pushed outside the box during
// [t_on, t_off]; returns the scenario and the excursion window.
Scenario excursion_scenario(Rng& rng, const ParameterBox& box, double speed_kph, double horizon,
                            double t_on, double t_off, int param, bool above, double fraction) {
    Scenario sc = base_scenario(speed_kph, horizon, rng.raw());
    sc.plant.kind = PlantSpec::Kind::Schedule;
    sc.plant.schedule.clear();
    const Vector base = rng.uniform_vector(box.lower, box.upper);
    for (int p = 0; p < box.dim(); ++p)
        sc.plant.schedule.push_back(ParamTrajectory::constant(base[p]));

    const double range = box.upper[param] - box.lower[param];
    const double outside = above ? box.upper[param] + fraction * range
                                 : box.lower[param] - fraction * range;
    ParamTrajectory tr;
    tr.kind = ParamTrajectory::Kind::Piecewise;
    tr.times = {0.0, t_on, t_off};
    tr.values = {base[param], outside, base[param]};
    sc.plant.schedule[static_cast<size_t>(param)] = tr;
    return sc;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

SuiteResult suite_model_containment(std::uint64_t seed, bool smoke) {
    Suite s("model-containment");
    const int samples = smoke ? 100 : 1000;
    for (const char* name : {"diag2", "rot2", "vehicle"}) {
        const NamedSystem ns = make_named_system(name);
        const MonotonicityReport rep = scan_monotonicity(ns.system, 17, 4, 1e-7, seed);
        const MatrixInterval mi = element_bounds(ns.system, rep);
        Rng rng(seed ^ 0x1234);
        for (int t = 0; t < samples; ++t) {
            const Vector m = rng.uniform_vector(ns.system.box.lower, ns.system.box.upper);
            const Matrix A = ns.system.eval(m).A;
            bool ok = true;
            for (int i = 0; i < ns.system.n && ok; ++i)
                for (int j = 0; j < ns.system.n && ok; ++j)
                    ok = A(i, j) >= mi.lb(i, j) - 1e-12 && A(i, j) <= mi.ub(i, j) + 1e-12;
            s.checkf(ok, "%s: sampled entry escaped element bounds", name);
        }
    }
    return s.take();
}

SuiteResult suite_model_corner_equality(std::uint64_t seed) {
    Suite s("model-corner-equality");
    for (const char* name : {"diag2", "rot2", "vehicle"}) {
        const NamedSystem ns = make_named_system(name);
        const MonotonicityReport rep = scan_monotonicity(ns.system, 9, 3, 1e-7, seed);
        const MatrixInterval mi = element_bounds(ns.system, rep);
        const int k = ns.system.box.dim();
        const int n = ns.system.n;
        Matrix lb = Matrix::Constant(n, n, std::numeric_limits<double>::infinity());
        Matrix ub = -lb;
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << k); ++idx) {
            const Matrix A = eval_at_corner(ns.system, Corner::from_index(idx, k)).A;
            lb = lb.cwiseMin(A);
            ub = ub.cwiseMax(A);
        }
        s.checkf((lb - mi.lb).cwiseAbs().maxCoeff() == 0.0 &&
                     (ub - mi.ub).cwiseAbs().maxCoeff() == 0.0,
                 "%s: element_bounds differs from brute-force corner extremes", name);
    }
    return s.take();
}

SuiteResult suite_model_determinism(std::uint64_t seed) {
    Suite s("model-eval-determinism");
    for (const char* name : {"diag2", "rot2", "vehicle", "coord"}) {
        const NamedSystem ns = make_named_system(name);
        Rng rng(seed ^ 0x77);
        for (int t = 0; t < 25; ++t) {
            const Vector m = rng.uniform_vector(ns.system.box.lower, ns.system.box.upper);
            const LinearSystem a = ns.system.eval(m);
            const LinearSystem b = ns.system.eval(m);
            s.checkf(a.A == b.A && a.B == b.B, "%s: eval is not bit-deterministic", name);
        }
    }
    return s.take();
}

SuiteResult suite_canonical_roundtrip(std::uint64_t seed, bool smoke) {
    Suite s("canonical-roundtrip");
    Rng rng(seed ^ 0xc0);
    const int total = smoke ? 100 : 1000;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + static_cast<int>(t % 4);
        const LinearSystem sys = random_controllable(rng, n);
        CanonicalForm cf;
        try {
            cf = to_canonical(sys);
        } catch (const Uncontrollable&) {
            continue;
        }
        const double scale = std::max(1.0, sys.A.cwiseAbs().maxCoeff());
        const Matrix ideal = companion_from_coeffs(cf.theta);
        s.checkf((cf.A_bar - ideal).cwiseAbs().maxCoeff() <= 1e-8 * scale,
                 "n=%d: T A T^-1 deviates from the companion pattern", n);
        s.checkf(companion_structure_residual(cf.A_bar) <= 1e-8 * scale,
                 "n=%d: shifted-identity block residual too large", n);
    }
    return s.take();
}

SuiteResult suite_canonical_similarity(std::uint64_t seed, bool smoke) {
    Suite s("canonical-similarity-invariance");
    Rng rng(seed ^ 0xc1);
    const int total = smoke ? 50 : 300;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + static_cast<int>(t % 4);
        const Matrix A = random_matrix(rng, n);
        const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
        const Matrix Q = qr.householderQ();
        const Vector ca = char_coeffs(A);
        const Vector cb = char_coeffs(Q * A * Q.transpose());
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, rel_gap(ca[i], cb[i]));
        s.checkf(worst <= 1e-8, "n=%d: similarity changed coefficients by %.3e", n, worst);
    }
    return s.take();
}

SuiteResult suite_canonical_theta(std::uint64_t seed, bool smoke) {
    Suite s("canonical-theta-consistency");
    Rng rng(seed ^ 0xc2);
    const int total = smoke ? 50 : 300;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + static_cast<int>(t % 4);
        const LinearSystem sys = random_controllable(rng, n);
        CanonicalForm cf;
        try {
            cf = to_canonical(sys);
        } catch (const Uncontrollable&) {
            continue;
        }
        const double scale = std::max(1.0, cf.theta.cwiseAbs().maxCoeff());
        const double gap = (cf.A_bar.row(n - 1).transpose() + cf.theta).cwiseAbs().maxCoeff();
        s.checkf(gap <= 1e-8 * scale, "n=%d: last row vs -theta gap %.3e", n, gap);
        s.check(cf.b_bar[n - 1] == 1.0 && cf.b_bar.head(n - 1).cwiseAbs().sum() == 0.0,
                "b_bar must be exactly e_n");
    }
    return s.take();
}

SuiteResult suite_bounds_soundness(std::uint64_t seed, bool smoke) {
    Suite s("bounds-soundness");
    const int samples = smoke ? 500 : 10000;

    const NamedSystem vehicle = make_named_system("vehicle");
    const MonotonicityReport rep = scan_monotonicity(vehicle.system, 17, 4, 1e-7, seed);
    const MatrixInterval vmi = element_bounds(vehicle.system, rep);
    BoundsResult r = bounds_with_sampling(vmi, samples, seed ^ 0xb0);
    s.checkf(r.violations == 0, "vehicle interval: %d violations", r.violations);

    Rng rng(seed ^ 0xb1);
    for (int fam = 0; fam < 10; ++fam) {
        const int n = 2 + fam % 3;
        Matrix lb(n, n), ub(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = rng.uniform(-2.0, 2.0);
                lb(i, j) = a;
                ub(i, j) = a + rng.uniform(0.0, 2.0);
            }
        r = bounds_with_sampling(MatrixInterval(lb, ub), samples, rng.raw());
        s.checkf(r.violations == 0, "family %d (n=%d): %d violations", fam, n, r.violations);
    }
    return s.take();
}

SuiteResult suite_bounds_enclosure_monotonic(std::uint64_t seed, bool smoke) {
    Suite s("bounds-monotone-enclosure");
    Rng rng(seed ^ 0xb2);
    const int total = smoke ? 20 : 100;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + t % 3;
        Matrix lb(n, n), ub(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = rng.uniform(-1.5, 1.5);
                lb(i, j) = a;
                ub(i, j) = a + rng.uniform(0.0, 1.0);
            }
        const CoefficientBounds before = all_coeff_bounds(MatrixInterval(lb, ub));
        const int i = rng.index(n);
        const int j = rng.index(n);
        lb(i, j) -= rng.uniform(0.0, 1.0);
        ub(i, j) += rng.uniform(0.0, 1.0);
        const CoefficientBounds after = all_coeff_bounds(MatrixInterval(lb, ub));
        bool ok = true;
        for (int c = 0; c < n; ++c) {
            const double scale = std::max({1.0, std::abs(before.lb[c]), std::abs(before.ub[c])});
            if (after.lb[c] > before.lb[c] + 1e-12 * scale ||
                after.ub[c] < before.ub[c] - 1e-12 * scale)
                ok = false;
        }
        s.check(ok, "widening an entry interval shrank a coefficient bound");
    }
    return s.take();
}

SuiteResult suite_bounds_point_exactness(std::uint64_t seed, bool smoke) {
    Suite s("bounds-point-exactness");
    Rng rng(seed ^ 0xb3);
    const int total = smoke ? 100 : 1000;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + t % 3;
        const Matrix A = random_matrix(rng, n);
        const CoefficientBounds cb = all_coeff_bounds(MatrixInterval(A, A));
        const Vector c = char_coeffs(A);
        double worst = 0.0;
        for (int k = 0; k < n; ++k)
            worst = std::max({worst, rel_gap(cb.lb[k], c[k]), rel_gap(cb.ub[k], c[k])});
        s.checkf(worst <= 1e-10, "n=%d: point-interval gap %.3e", n, worst);
    }
    return s.take();
}

SuiteResult suite_tying_corner_extremality(std::uint64_t seed) {
    Suite s("tying-corner-extremality");
    for (const char* name : {"diag2", "rot2", "vehicle"}) {
        const NamedSystem ns = make_named_system(name);
        const MonotonicityReport rep = scan_monotonicity(ns.system, 17, 4, 1e-7, seed);
        if (!rep.all_monotone()) {
            s.checkf(false, "%s: unexpected non-monotone entry", name);
            continue;
        }
        const EntryTemplates et = extremal_corners(rep);
        const int k = ns.system.box.dim();
        const int n = ns.system.n;

        // Coarse 5^k grid search.
        std::vector<int> counter(static_cast<size_t>(k), 0);
        Matrix grid_min = Matrix::Constant(n, n, std::numeric_limits<double>::infinity());
        Matrix grid_max = -grid_min;
        while (true) {
            Vector m(k);
            for (int p = 0; p < k; ++p)
                m[p] = ns.system.box.lower[p] +
                       (ns.system.box.upper[p] - ns.system.box.lower[p]) *
                           counter[static_cast<size_t>(p)] / 4.0;
            const Matrix A = ns.system.eval(m).A;
            grid_min = grid_min.cwiseMin(A);
            grid_max = grid_max.cwiseMax(A);
            int p = 0;
            for (; p < k; ++p) {
                if (++counter[static_cast<size_t>(p)] <= 4) break;
                counter[static_cast<size_t>(p)] = 0;
            }
            if (p == k) break;
        }

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Corner cmax = Corner::all_low(k);
                Corner cmin = Corner::all_low(k);
                for (int l = 0; l < k; ++l) {
                    if (et.argmax[static_cast<size_t>(i) * n + j].slots[static_cast<size_t>(l)] ==
                        Slot::High)
                        cmax.bits[static_cast<size_t>(l)] = Bound::High;
                    if (et.argmin[static_cast<size_t>(i) * n + j].slots[static_cast<size_t>(l)] ==
                        Slot::High)
                        cmin.bits[static_cast<size_t>(l)] = Bound::High;
                }
                const double vmax = eval_at_corner(ns.system, cmax).A(i, j);
                const double vmin = eval_at_corner(ns.system, cmin).A(i, j);
                const double scale = std::max({1.0, std::abs(vmax), std::abs(vmin)});
                s.checkf(grid_max(i, j) <= vmax + 1e-9 * scale,
                         "%s (%d,%d): grid max beats the argmax corner", name, i, j);
                s.checkf(grid_min(i, j) >= vmin - 1e-9 * scale,
                         "%s (%d,%d): grid min beats the argmin corner", name, i, j);
            }
        }
    }
    return s.take();
}

SuiteResult suite_tying_cover_validity(std::uint64_t seed) {
    Suite s("tying-cover-validity");
    for (const char* name : {"diag2", "rot2", "constant", "vehicle"}) {
        const NamedSystem ns = make_named_system(name);
        const MonotonicityReport rep = scan_monotonicity(ns.system, 17, 4, 1e-7, seed);
        const EntryTemplates et = extremal_corners(rep);
        const VertexModelSet vm = select_vertex_models(ns.system, et);
        const int n = ns.system.n;
        for (int e = 0; e < n * n; ++e) {
            for (bool maximum : {false, true}) {
                const auto it = vm.coverage.find({e, maximum});
                if (it == vm.coverage.end()) {
                    s.checkf(false, "%s: requirement (%d,%s) uncovered", name, e,
                             maximum ? "max" : "min");
                    continue;
                }
                const CornerTemplate& tpl = maximum ? et.argmax[static_cast<size_t>(e)]
                                                    : et.argmin[static_cast<size_t>(e)];
                s.checkf(tpl.matches(vm.corners[static_cast<size_t>(it->second)]),
                         "%s: covering corner does not match its template", name);
            }
        }
        s.check(vm.count() == static_cast<int>(vm.canonical.size()),
                "canonical form count mismatch");
    }
    return s.take();
}

SuiteResult suite_tying_determinism(std::uint64_t seed) {
    Suite s("tying-determinism");
    for (const char* name : {"rot2", "vehicle"}) {
        const NamedSystem ns = make_named_system(name);
        const MonotonicityReport a = scan_monotonicity(ns.system, 17, 6, 1e-7, seed);
        const MonotonicityReport b = scan_monotonicity(ns.system, 17, 6, 1e-7, seed);
        s.checkf(a.directions == b.directions && a.witnesses.size() == b.witnesses.size(),
                 "%s: repeated scans disagree", name);
        const VertexModelSet va = select_vertex_models(ns.system, extremal_corners(a));
        const VertexModelSet vb = select_vertex_models(ns.system, extremal_corners(b));
        bool same = va.count() == vb.count();
        for (int i = 0; same && i < va.count(); ++i)
            same = va.corners[static_cast<size_t>(i)] == vb.corners[static_cast<size_t>(i)];
        s.checkf(same, "%s: repeated selections disagree", name);
    }
    return s.take();
}

SuiteResult suite_coordination(std::uint64_t /*seed*/) {
    Suite s("tying-coordination");
    const NamedSystem coord = make_named_system("coord");

    // a11 = m, a12 = 3m + 1: affine with alpha 3, beta 1.
    CoordinationVerdict v = check_coordination(coord.system, 0, {0, 0}, {0, 1});
    s.checkf(v.affine.holds && std::abs(v.alpha - 3.0) < 1e-9 && std::abs(v.beta - 1.0) < 1e-9,
             "affine pair not detected (alpha=%.3f beta=%.3f)", v.alpha, v.beta);
    s.check(!v.periodic_checked, "periodic condition must stay NOT_CHECKED");

    // a11 = m, a21 = m^3: functional but not affine.
    v = check_coordination(coord.system, 0, {0, 0}, {1, 0});
    s.check(v.functional.holds, "cubic pair: functional relationship missed");
    s.check(!v.affine.holds, "cubic pair: affine verdict must fail");

    // a22 = m^2 against itself: symmetric about 0 and shared critical point.
    v = check_coordination(coord.system, 0, {1, 1}, {1, 1});
    s.checkf(v.symmetry.holds && std::abs(v.symmetry_center) < 1e-9,
             "even pair: symmetry missed (center=%.3f)", v.symmetry_center);
    s.check(v.critical_points.holds, "even pair: critical points missed");

    // Affine soundness: alpha > 0 aligns argmax indices; alpha < 0 flips them.
    const NamedSystem coord2{"affine", "", [&] {
                                 ParameterBox box({"m1"}, (Vector(1) << -1.0).finished(),
                                                  (Vector(1) << 1.0).finished());
                                 ParameterizedSystem ps{box, 2, 1, nullptr};
                                 ps.eval = [](const Vector& m) {
                                     const double x = m[0];
                                     Matrix A(2, 2);
                                     A << x * x + x, -2.0 * (x * x + x) + 0.5, 0.0, 0.0;
                                     Matrix B(2, 1);
                                     B << 0.0, 1.0;
                                     return LinearSystem{A, B};
                                 };
                                 return ps;
                             }()};
    v = check_coordination(coord2.system, 0, {0, 0}, {0, 1});
    s.checkf(v.affine.holds && v.alpha < 0.0, "negative-alpha affine pair missed (alpha=%.3f)",
             v.alpha);

    // Non-monotone parabola: a witness pair must straddle the interior extremum.
    const NamedSystem parabola = make_named_system("parabola");
    const MonotonicityReport rep = scan_monotonicity(parabola.system, 17, 4, 1e-7, 0);
    s.check(!rep.all_monotone(), "parabola must be flagged non-monotone");
    if (const auto w = rep.first_witness()) {
        s.check(w->fall_at[0] <= 1e-9 && w->rise_at[0] >= -1e-9,
                "witness pair does not straddle the parabola vertex");
    } else {
        s.check(false, "parabola: missing witness");
    }
    return s.take();
}

SuiteResult suite_weights_inclusion(std::uint64_t /*seed*/) {
    Suite s("weights-inclusion");
    auto row = [](std::initializer_list<double> vals) {
        ErrorMatrix em;
        em.E.resize(1, static_cast<Eigen::Index>(vals.size()));
        int i = 0;
        for (double v : vals) em.E(0, i++) = v;
        return em;
    };
    s.check(inclusion_criterion(row({0.3, -0.2}), 1e-6).status == Inclusion::Inside,
            "[0.3,-0.2] must be INSIDE");
    s.check(inclusion_criterion(row({0.3, 0.2}), 1e-6).status == Inclusion::Outside,
            "[0.3,0.2] must be OUTSIDE");
    s.check(inclusion_criterion(row({0.0, 0.5}), 1e-6).status == Inclusion::Boundary,
            "[0,0.5] must be BOUNDARY");
    s.check(inclusion_criterion(row({0.0, 0.0, 0.0}), 1e-6).status == Inclusion::Inside,
            "all-zero row must be INSIDE");

    ErrorMatrix two;
    two.E.resize(2, 2);
    two.E << 0.5, -0.5, 0.2, 0.1;  // second channel one-signed
    s.check(inclusion_criterion(two, 1e-9).status == Inclusion::Outside,
            "a strictly one-signed channel forces OUTSIDE");
    two.E << 0.5, -0.5, -0.2, 0.1;
    s.check(inclusion_criterion(two, 1e-9).status == Inclusion::Inside,
            "both channels mixed must be INSIDE");
    const InclusionVerdict v = inclusion_criterion(row({-0.25, 0.75}), 1e-9);
    s.check(v.witness_channel == 0 && v.witness_positive == 1 && v.witness_negative == 0,
            "witness indices wrong");
    return s.take();
}

SuiteResult suite_weights_solver(std::uint64_t seed, bool smoke) {
    Suite s("weights-solver");
    auto row = [](std::initializer_list<double> vals) {
        ErrorMatrix em;
        em.E.resize(1, static_cast<Eigen::Index>(vals.size()));
        int i = 0;
        for (double v : vals) em.E(0, i++) = v;
        return em;
    };
    SolveOptions so;
    so.refinements = 4;
    WeightSolution ws = solve_weights(row({1.0, -1.0}), so);
    s.checkf((ws.weights.w - (Vector(2) << 0.5, 0.5).finished()).cwiseAbs().maxCoeff() < 1e-9,
             "E=[1,-1]: w=(%.6f,%.6f)", ws.weights.w[0], ws.weights.w[1]);
    ws = solve_weights(row({2.0, -1.0}), so);
    s.checkf((ws.weights.w - (Vector(2) << 1.0 / 3.0, 2.0 / 3.0).finished()).cwiseAbs().maxCoeff() <
                 1e-9,
             "E=[2,-1]: w=(%.6f,%.6f)", ws.weights.w[0], ws.weights.w[1]);
    ws = solve_weights(row({1.0, 2.0}), so);
    s.checkf((ws.weights.w - (Vector(2) << 1.0, 0.0).finished()).cwiseAbs().maxCoeff() < 1e-9 &&
                 std::abs(ws.residual - 1.0) < 1e-9,
             "E=[1,2]: expected vertex w=[1,0] residual 1, got residual %.6f", ws.residual);

    Rng rng(seed ^ 0x55);
    const int total = smoke ? 100 : 500;
    for (int t = 0; t < total; ++t) {
        const int N = 2 + t % 4;
        const Vector v = rng.uniform_matrix(N, 1, -2.0, 2.0).col(0);
        const Vector p = project_to_simplex(v);
        bool nonneg = true;
        for (int i = 0; i < N; ++i) nonneg = nonneg && p[i] >= 0.0;
        s.check(nonneg && std::abs(p.sum() - 1.0) <= 1e-12, "projection violates the simplex");

        ErrorMatrix em;
        em.E = rng.uniform_matrix(1 + t % 3, N, -3.0, 3.0);
        const WeightSolution sol = solve_weights(em, so);
        s.check(sol.weights.valid(1e-12), "solver output escaped the simplex");
    }
    return s.take();
}

SuiteResult suite_weights_scaling(std::uint64_t seed, bool smoke) {
    Suite s("weights-scaling-invariance");
    Rng rng(seed ^ 0x56);
    const int total = smoke ? 20 : 100;
    SolveOptions so;
    so.refinements = 2;
    for (int t = 0; t < total; ++t) {
        const int N = 2 + t % 4;
        ErrorMatrix em;
        em.E = rng.uniform_matrix(1 + t % 2, N, -2.0, 2.0);
        const double c = std::pow(10.0, rng.uniform(-6.0, 6.0));
        ErrorMatrix scaled{em.E * c, em.t};
        const Vector w1 = solve_weights(em, so).weights.w;
        const Vector w2 = solve_weights(scaled, so).weights.w;
        s.checkf((w1 - w2).cwiseAbs().maxCoeff() <= 1e-9,
                 "scaling by %.2e moved weights by %.2e", c, (w1 - w2).cwiseAbs().maxCoeff());
    }
    return s.take();
}

SuiteResult suite_theorem2_forward(const VehicleContext& ctx, std::uint64_t seed, bool smoke) {
    Suite s("weights-theorem2-forward");
    const VertexModelSet& models = *ctx.analysis.models;
    Rng rng(seed ^ 0x60);
    const int scenarios = smoke ? 2 : 5;
    for (int sc_i = 0; sc_i < scenarios; ++sc_i) {
        const Vector w_star = rng.simplex(models.count());
        Scenario sc = combo_scenario(w_star, sc_i % 2 == 0 ? 50.0 : 100.0, 1.5, rng.raw());
        const SimulationTrace tr = simulate_scenario(sc, models);
        s.check(!tr.diverged, "in-hull scenario diverged");
        bool verdict_ok = true;
        bool residual_ok = true;
        for (int step = 0; step < tr.steps(); ++step) {
            if (tr.inclusion[static_cast<size_t>(step)] == Inclusion::Outside) verdict_ok = false;
            if (tr.weight_residual[static_cast<size_t>(step)] >
                1e-8 * tr.error_scale[static_cast<size_t>(step)])
                residual_ok = false;
        }
        s.checkf(verdict_ok, "scenario %d: OUTSIDE fired for an in-hull plant", sc_i);
        s.checkf(residual_ok, "scenario %d: weight residual exceeded 1e-8 relative", sc_i);
    }
    return s.take();
}

SuiteResult suite_theorem2_backward(const VehicleContext& ctx, std::uint64_t seed, bool smoke) {
    Suite s("weights-theorem2-backward");
    const VertexModelSet& models = *ctx.analysis.models;
    const ParameterBox box = vehicle_parameter_box();
    Rng rng(seed ^ 0x61);
    const int scenarios = smoke ? 2 : 5;
    for (int sc_i = 0; sc_i < scenarios; ++sc_i) {
        const int param = sc_i % 2;  // C_af or C_ar
        const bool above = (sc_i / 2) % 2 == 0;
        Scenario sc = excursion_scenario(rng, box, sc_i % 2 == 0 ? 50.0 : 100.0, 3.0, 0.8, 2.2,
                                         param, above, 0.1 + 0.3 * rng.uniform());
        const SimulationTrace tr = simulate_scenario(sc, models);
        bool fired = false;
        for (int step = 0; step < tr.steps(); ++step) {
            const double t = tr.t[static_cast<size_t>(step)];
            if (t >= 0.8 && t < 2.2 &&
                tr.inclusion[static_cast<size_t>(step)] == Inclusion::Outside)
                fired = true;
        }
        s.checkf(fired, "scenario %d: OUTSIDE did not fire during the excursion", sc_i);
    }
    return s.take();
}

SuiteResult suite_transform_identity(std::uint64_t seed, bool smoke) {
    Suite s("transform-sum-identity");
    Rng rng(seed ^ 0x70);
    const int total = smoke ? 50 : 200;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + t % 3;
        const int N = 2 + (t / 3) % 3;
        const auto models = random_canonical_models(rng, n, N);
        const SimplexWeights w{rng.simplex(N)};
        try {
            const TransformBundle bundle = build_transform_bundle(models, w);
            s.checkf(bundle.sum_to_identity_residual() <= 1e-9,
                     "sum w_i S_i residual %.2e", bundle.sum_to_identity_residual());
            s.checkf(bundle.mixture_residual() <= 1e-9, "T_p^-1 mixture residual %.2e",
                     bundle.mixture_residual());
        } catch (const SingularMixture&) {
            // Surfaced, not hidden; rare for random draws.
        }
    }

    // One-hot weights reproduce the chosen model exactly.
    const auto models = random_canonical_models(rng, 3, 3);
    for (int i = 0; i < 3; ++i) {
        Vector w = Vector::Zero(3);
        w[i] = 1.0;
        const TransformBundle bundle = build_transform_bundle(models, {w});
        const CanonicalReconstruction rec = reconstruct_canonical_plant(bundle, models);
        s.checkf((rec.A_bar - models[static_cast<size_t>(i)].A_bar).cwiseAbs().maxCoeff() <= 1e-10,
                 "one-hot weight %d does not reproduce its model", i);
    }

    // Single model: S_1 = I regardless of anything.
    const auto single = random_canonical_models(rng, 3, 1);
    const TransformBundle b1 = build_transform_bundle(single, {Vector::Ones(1)});
    s.check((b1.S[0] - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10,
            "single-model bundle must have S = I");
    return s.take();
}

SuiteResult suite_transform_oracle(std::uint64_t seed, bool smoke) {
    Suite s("transform-oracle-equivalence");
    Rng rng(seed ^ 0x71);
    const int total = smoke ? 50 : 300;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + t % 3;
        const int N = 2 + (t / 3) % 3;
        const auto models = random_canonical_models(rng, n, N);
        const SimplexWeights w{rng.simplex(N)};
        try {
            const TransformBundle bundle = build_transform_bundle(models, w);
            const CanonicalReconstruction rec = reconstruct_canonical_plant(bundle, models);
            const ConsistencyReport rep = verify_companion_consistency(rec.A_bar, models, w, 1e-8);
            s.checkf(rep.full_residual <= 1e-8, "reconstruction vs oracle gap %.2e",
                     rep.full_residual);
            s.checkf(rec.b_residual <= 1e-9, "b_bar mixture residual %.2e", rec.b_residual);
        } catch (const Uncontrollable&) {
            // Mixture lost controllability: surfaced by design.
        } catch (const SingularMixture&) {
        }
    }

    // Negative control: corrupting one S_i must be flagged.
    const auto models = random_canonical_models(rng, 3, 2);
    const SimplexWeights w{(Vector(2) << 0.4, 0.6).finished()};
    TransformBundle bundle = build_transform_bundle(models, w);
    bundle.S[0](0, 0) += 0.5;
    const CanonicalReconstruction rec = reconstruct_canonical_plant(bundle, models);
    const ConsistencyReport rep = verify_companion_consistency(rec.A_bar, models, w, 1e-8);
    s.check(!rep.last_row_ok || !rep.structure_ok, "corrupted bundle slipped through");
    return s.take();
}

SuiteResult suite_sim_zero_input(const VehicleContext& ctx) {
    Suite s("sim-zero-input");
    Scenario sc = base_scenario(50.0, 1.0, 0);
    sc.steering.amplitude_rad = 0.0;
    sc.plant.kind = PlantSpec::Kind::Schedule;
    sc.plant.schedule.assign(6, ParamTrajectory::constant(0.0));
    const VehicleParams vp;
    sc.plant.schedule[0] = ParamTrajectory::constant(vp.C_af);
    sc.plant.schedule[1] = ParamTrajectory::constant(vp.C_ar);
    sc.plant.schedule[2] = ParamTrajectory::constant(vp.k_phi);
    sc.plant.schedule[3] = ParamTrajectory::constant(vp.c_phi);
    const SimulationTrace tr = simulate_scenario(sc, *ctx.analysis.models);
    s.check(tr.plant_states.cwiseAbs().maxCoeff() == 0.0, "plant moved without input");
    s.check(tr.estimates.cwiseAbs().maxCoeff() == 0.0, "estimate moved without input");
    const Vector uniform = SimplexWeights::uniform(tr.N).w;
    double weight_drift = 0.0;
    for (int step = 0; step < tr.steps(); ++step)
        weight_drift = std::max(weight_drift,
                                (tr.weights.row(step).transpose() - uniform).cwiseAbs().maxCoeff());
    s.check(weight_drift == 0.0, "weights drifted without excitation");
    for (const Inclusion v : tr.inclusion)
        if (v != Inclusion::Inside) {
            s.check(false, "all-zero errors must report INSIDE");
            break;
        }
    return s.take();
}

SuiteResult suite_sim_rk4_order(const VehicleContext& ctx, bool smoke) {
    Suite s("sim-rk4-order");
    for (double kph : {50.0, 100.0}) {
        if (smoke && kph > 50.0) break;
        Scenario sc = base_scenario(kph, 2.0, 0);
        const Matrix ref = integrate_plant(sc, *ctx.analysis.models, 1e-3);
        const Matrix mid = integrate_plant(sc, *ctx.analysis.models, 2e-3);
        const Matrix coarse = integrate_plant(sc, *ctx.analysis.models, 4e-3);
        double err_coarse = 0.0, err_mid = 0.0;
        for (int row = 0; row < coarse.rows(); ++row) {
            err_coarse = std::max(err_coarse, (coarse.row(row) - ref.row(4 * row)).cwiseAbs().maxCoeff());
        }
        for (int row = 0; row < mid.rows(); ++row) {
            err_mid = std::max(err_mid, (mid.row(row) - ref.row(2 * row)).cwiseAbs().maxCoeff());
        }
        const double ratio = err_coarse / std::max(err_mid, 1e-300);
        s.checkf(ratio >= 8.0 && ratio <= 32.0, "%.0f km/h: step-halving ratio %.2f outside [8,32]",
                 kph, ratio);
    }
    return s.take();
}

SuiteResult suite_sim_estimation_exactness(const VehicleContext& ctx) {
    Suite s("sim-estimation-exactness");
    const VertexModelSet two = subset_models(*ctx.analysis.models, {0, 1});
    const Vector w_star = (Vector(2) << 0.3, 0.7).finished();
    Scenario sc = combo_scenario(w_star, 50.0, 3.0, 0);
    const SimulationTrace tr = simulate_scenario(sc, two);
    s.check(!tr.diverged, "combo scenario diverged");

    double w_gap_after_1s = 0.0;
    for (int step = 0; step < tr.steps(); ++step) {
        if (tr.t[static_cast<size_t>(step)] < 1.0) continue;
        w_gap_after_1s = std::max(
            w_gap_after_1s, (tr.weights.row(step).transpose() - w_star).cwiseAbs().maxCoeff());
    }
    s.checkf(w_gap_after_1s <= 1e-3, "weight recovery gap %.2e after 1 s", w_gap_after_1s);

    double worst_rel_rmse = 0.0;
    for (int j = 0; j < tr.n; ++j) {
        const double rms = std::sqrt(tr.plant_states.col(j).squaredNorm() / tr.steps());
        const double rmse = std::sqrt(
            (tr.estimates.col(j) - tr.plant_states.col(j)).squaredNorm() / tr.steps());
        if (rms > 0.0) worst_rel_rmse = std::max(worst_rel_rmse, rmse / rms);
    }
    s.checkf(worst_rel_rmse <= 1e-6, "full-state relative RMSE %.2e", worst_rel_rmse);
    return s.take();
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed, bool smoke) {
    VerifyReport report;
    report.seed = seed;
    report.smoke = smoke;

    const VehicleContext ctx = make_vehicle_context(seed);

    report.suites.push_back(suite_model_containment(seed, smoke));
    report.suites.push_back(suite_model_corner_equality(seed));
    report.suites.push_back(suite_model_determinism(seed));
    report.suites.push_back(suite_canonical_roundtrip(seed, smoke));
    report.suites.push_back(suite_canonical_similarity(seed, smoke));
    report.suites.push_back(suite_canonical_theta(seed, smoke));
    report.suites.push_back(suite_bounds_soundness(seed, smoke));
    report.suites.push_back(suite_bounds_enclosure_monotonic(seed, smoke));
    report.suites.push_back(suite_bounds_point_exactness(seed, smoke));
    report.suites.push_back(suite_tying_corner_extremality(seed));
    report.suites.push_back(suite_tying_cover_validity(seed));
    report.suites.push_back(suite_tying_determinism(seed));
    report.suites.push_back(suite_coordination(seed));
    report.suites.push_back(suite_weights_inclusion(seed));
    report.suites.push_back(suite_weights_solver(seed, smoke));
    report.suites.push_back(suite_weights_scaling(seed, smoke));
    report.suites.push_back(suite_theorem2_forward(ctx, seed, smoke));
    report.suites.push_back(suite_theorem2_backward(ctx, seed, smoke));
    report.suites.push_back(suite_transform_identity(seed, smoke));
    report.suites.push_back(suite_transform_oracle(seed, smoke));
    report.suites.push_back(suite_sim_zero_input(ctx));
    report.suites.push_back(suite_sim_rk4_order(ctx, smoke));
    report.suites.push_back(suite_sim_estimation_exactness(ctx));
    return report;
}

}  // namespace mmas
