#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "toric/constructions.hpp"
#include "toric/stacky.hpp"

namespace toric::test {

using Rows = std::initializer_list<std::initializer_list<long>>;

inline Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<Vec> vecs(Rows rows) {
  std::vector<Vec> out;
  for (const auto& r : rows) {
    Vec x;
    for (long e : r) x.emplace_back(e);
    out.push_back(x);
  }
  return out;
}

inline IntMatrix columns(Rows cols, std::size_t rows) { return IntMatrix::from_columns(vecs(cols), rows); }

inline Cone cone(std::size_t n, Rows gens) { return canonicalize_cone(vecs(gens), n); }

inline Fan fan(std::size_t n, std::vector<Cone> maximal) { return Fan(n, std::move(maximal)); }

inline Fan affine_fan(std::size_t n) {
  std::vector<Vec> e;
  for (std::size_t i = 0; i < n; ++i) {
    Vec x(n, 0);
    x[i] = 1;
    e.push_back(x);
  }
  return Fan(n, {canonicalize_cone(e, n)});
}

// A^n minus the origin: all proper coordinate cones.
inline Fan punctured_affine_fan(std::size_t n) {
  std::vector<Cone> cs;
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<Vec> e;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == skip) continue;
      Vec x(n, 0);
      x[i] = 1;
      e.push_back(x);
    }
    cs.push_back(canonicalize_cone(e, n));
  }
  return Fan(n, cs);
}

inline Fan p1_fan() { return Fan(1, {canonicalize_cone({v({1})}, 1), canonicalize_cone({v({-1})}, 1)}); }

inline Fan p2_fan() {
  return Fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{0, 1}, {-1, -1}}), cone(2, {{-1, -1}, {1, 0}})});
}

inline StackyFan stacky(const Fan& f, const FgAbGroup& n, Rows images) { return StackyFan(f, n, vecs(images)); }

inline StackyFan a1_datum() { return stacky(affine_fan(2), FgAbGroup::free(2), {{1, 0}, {1, 2}}); }

inline StackyFan nonseparated_line() { return stacky(punctured_affine_fan(2), FgAbGroup::free(1), {{1}, {1}}); }

inline StackyFan p1_quotient_datum() { return stacky(punctured_affine_fan(2), FgAbGroup::free(1), {{1}, {-1}}); }

inline StackyFan m11_datum() {
  return stacky(punctured_affine_fan(2), FgAbGroup(1, {Integer(2)}), {{2, 1}, {-3, 0}});
}

inline std::vector<long> to_longs(const Vec& x) {
  std::vector<long> out;
  for (const auto& e : x) out.push_back(e.get_si());
  return out;
}

// Columns of the weight matrix as plain integers.
inline std::vector<std::vector<long>> weight_list(const DiagGroupPresentation& g) {
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < g.weights.cols(); ++i) out.push_back(to_longs(g.weight(i)));
  return out;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  Vec x(n);
  for (auto& e : x) e = d(rng);
  return x;
}

}  // namespace toric::test
