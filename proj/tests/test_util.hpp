#pragma once

#include <cstdint>
#include <vector>

#include "copent/data.hpp"
#include "copent/synth.hpp"

namespace copent::testing {

inline SampleMatrix uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = rng.uniform();
  return SampleMatrix(rows, cols, std::move(v));
}

inline SampleMatrix normal_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = rng.normal();
  return SampleMatrix(rows, cols, std::move(v));
}

template <typename Fn>
SampleMatrix map_columns(const SampleMatrix& m, std::vector<std::size_t> cols, Fn&& fn) {
  SampleMatrix out = m;
  for (auto c : cols)
    for (std::size_t t = 0; t < m.rows(); ++t) out(t, c) = fn(m(t, c));
  return out;
}

}  // namespace copent::testing
