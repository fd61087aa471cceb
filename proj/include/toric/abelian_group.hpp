#pragma once

#include <string>
#include <vector>

#include "toric/matrix.hpp"

namespace toric {

// Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_j >= 2.
// Elements are vectors of length free_rank + k; torsion entries live in [0, d_j).
class FgAbGroup {
 public:
  FgAbGroup() = default;
  // Throws std::invalid_argument unless the torsion list is an invariant-factor chain.
  FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion);

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t generator_count() const { return free_rank_ + torsion_.size(); }
  bool is_free() const { return torsion_.empty(); }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  // Order of the torsion part.
  Integer torsion_order() const;

  Vec reduce(const Vec& x) const;
  bool is_zero(const Vec& x) const;
  bool equal(const Vec& a, const Vec& b) const;
  // Columns d_j * e_{free_rank + j}; the group is Z^generator_count / colspan.
  IntMatrix relations() const;
  FgAbGroup torsion_subgroup() const { return FgAbGroup(0, torsion_); }

  std::string to_string() const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

}  // namespace toric
