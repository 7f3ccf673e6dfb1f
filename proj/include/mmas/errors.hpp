#pragma once

#include <stdexcept>
#include <string>

namespace mmas {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (A, b) failed the relative singular-value test of the controllability matrix.
struct Uncontrollable : std::runtime_error {
    double ratio;
    explicit Uncontrollable(double r, const std::string& context = "")
        : std::runtime_error("uncontrollable pair" + (context.empty() ? "" : " (" + context + ")") +
                             ": singular-value ratio " + std::to_string(r)),
          ratio(r) {}
};

// Permutation/minor enumeration is capped at n = 8.
struct DimensionTooLarge : std::runtime_error {
    int n;
    explicit DimensionTooLarge(int dim)
        : std::runtime_error("matrix dimension " + std::to_string(dim) +
                             " exceeds the permutation enumeration budget (n <= 8)"),
          n(dim) {}
};

// An operation that requires per-parameter monotone entries met a NON_MONOTONE one.
struct NonMonotoneEntry : std::runtime_error {
    int param, row, col;
    NonMonotoneEntry(int l, int i, int j)
        : std::runtime_error("entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") is not monotone in parameter " + std::to_string(l)),
          param(l), row(i), col(j) {}
};

// Weighted sum of inverse transformations is numerically singular.
struct SingularMixture : std::runtime_error {
    double condition;
    explicit SingularMixture(double cond)
        : std::runtime_error("weighted transformation mixture is singular (cond estimate " +
                             std::to_string(cond) + ")"),
          condition(cond) {}
};

struct NonPositiveIc : std::runtime_error {
    double value;
    explicit NonPositiveIc(double ic)
        : std::runtime_error("composite roll inertia I_c must be positive, got " +
                             std::to_string(ic)),
          value(ic) {}
};

struct SimulationDiverged : std::runtime_error {
    double time;
    explicit SimulationDiverged(double t)
        : std::runtime_error("simulation state became non-finite at t = " + std::to_string(t)),
          time(t) {}
};

}  // namespace mmas
