#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toric/fgab.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

// A fan on L = Z^l together with beta: L -> N, given by the images of e_1..e_l.
struct StackyFan {
  Fan fan;
  FgAbGroup target;
  std::vector<Vec> beta_images;

  StackyFan() = default;
  StackyFan(Fan f, FgAbGroup n, std::vector<Vec> images);
  static StackyFan toric_variety(const Fan& f);

  std::size_t lattice_rank() const { return fan.ambient_rank(); }
  FgAbHom beta() const;
  // Free coordinates of the images, as an r x l matrix.
  IntMatrix free_matrix() const;
  bool cokernel_finite() const;
  bool is_strict() const { return target.is_free() && cokernel_finite(); }

  friend bool operator==(const StackyFan& a, const StackyFan& b) {
    return a.fan == b.fan && a.target == b.target && a.beta_images == b.beta_images;
  }
};

struct Diagnostics {
  bool valid = true;
  std::vector<std::string> problems;
  void fail(std::string msg) {
    valid = false;
    problems.push_back(std::move(msg));
  }
};

struct StackyFanDiagnostics : Diagnostics {
  bool strict = false;
};

StackyFanDiagnostics validate_stacky_fan(const StackyFan& sf);

struct StackyMorphism {
  StackyFan source;
  StackyFan target;
  IntMatrix Phi;  // L -> L'
  FgAbHom phi;    // N -> N'
};

Diagnostics validate_morphism(const StackyMorphism& m);

StackyMorphism compose(const StackyMorphism& second, const StackyMorphism& first);
StackyFan product(const StackyFan& a, const StackyFan& b);
StackyMorphism product(const StackyMorphism& a, const StackyMorphism& b);

MappingConeDual gbeta(const StackyFan& sf);

using IndexSet = std::vector<std::size_t>;  // 1-based, increasing

struct QuotientPresentation {
  std::size_t ambient_dim = 0;
  // Minimal index sets T; the open set is A^n minus the union of the V(x_i : i in T).
  std::vector<IndexSet> removed_locus;
  // Monomial generators of the irrelevant ideal, one per maximal cone.
  std::vector<IndexSet> irrelevant_monomials;
  std::size_t g0_rank = 0;
  DiagGroupPresentation group;
  IndexSet fixed_coordinates;

  std::string group_name() const;
  std::string notation() const;
};

// Throws NotSubfanOfAffineSpace unless every cone is spanned by standard basis vectors.
QuotientPresentation present_quotient(const StackyFan& sf, const IndexSet& fixed_coordinates = {});

// Index sets (as 0-based masks) of the maximal cones of a subfan of the fan of A^n.
std::vector<std::uint64_t> coordinate_cone_masks(const Fan& f);
// Minimal sets meeting every one of the given sets.
std::vector<std::uint64_t> minimal_transversals(const std::vector<std::uint64_t>& sets);
IndexSet mask_to_indices(std::uint64_t mask);

struct ReducedStackyFan {
  StackyFan strict_sf;
  IndexSet substack_coordinates;
};

ReducedStackyFan reduce_nonstrict(const StackyFan& sf);

struct TorusSplit {
  StackyFan sf1;
  std::size_t bg_m_rank = 0;
};

TorusSplit split_torus_factor(const StackyFan& sf);

}  // namespace toric
