#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gsv/matrix.hpp"
#include "gsv/rational.hpp"

namespace gsv {

// Seeded source of small exact test data.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  int uniformInt(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Rational smallRational(int bound = 5) {
    int num = uniformInt(-bound, bound);
    int den = uniformInt(1, bound);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  RationalMatrix integerMatrix(std::size_t rows, std::size_t cols, int bound = 5) {
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniformInt(-bound, bound);
    return m;
  }

  // Entries in [-5, 5], rejection-sampled until invertible.
  RationalMatrix invertible(std::size_t n, int bound = 5) {
    while (true) {
      RationalMatrix m = integerMatrix(n, n, bound);
      if (det(m) != 0) return m;
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(uniformInt(0, i))]);
    return p;
  }

private:
  std::mt19937_64 gen_;
};

} // namespace gsv
