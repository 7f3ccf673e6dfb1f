#pragma once

#include <cstdint>
#include <random>

#include "mmas/linalg.hpp"

namespace mmas {

// Deterministic random draws. Avoids std::*_distribution so that a seed pins the
// byte-exact stream of values independent of the standard library build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vector uniform_vector(const Vector& lo, const Vector& hi) {
        Vector v(lo.size());
        for (Eigen::Index i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
        return v;
    }

    Matrix uniform_matrix(int rows, int cols, double lo, double hi) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
        return m;
    }

    // Uniform draw from the probability simplex (exponential spacings).
    Vector simplex(int n) {
        Vector v(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = -std::log(1.0 - uniform());
            sum += v[i];
        }
        return v / sum;
    }

    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace mmas
