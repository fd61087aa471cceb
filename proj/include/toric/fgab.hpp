#pragma once

#include <vector>

#include "toric/abelian_group.hpp"
#include "toric/errors.hpp"
#include "toric/zlinalg.hpp"

namespace toric {

// Homomorphism given by the images of the canonical generators of the source.
struct FgAbHom {
  FgAbGroup source;
  FgAbGroup target;
  IntMatrix matrix;  // target.generator_count() x source.generator_count()

  FgAbHom() = default;
  FgAbHom(FgAbGroup src, FgAbGroup tgt, IntMatrix m);

  static FgAbHom from_images(const FgAbGroup& src, const FgAbGroup& tgt, const std::vector<Vec>& images);
  static FgAbHom identity(const FgAbGroup& g);

  // Throws MalformedHom on shape errors or when a torsion generator's image has the wrong order.
  void check() const;
  Vec apply(const Vec& x) const { return target.reduce(matrix * x); }
  Vec image_of(std::size_t i) const { return target.reduce(matrix.column(i)); }
  FgAbHom compose_after(const FgAbHom& first) const;  // this o first

  friend bool operator==(const FgAbHom& a, const FgAbHom& b) {
    return a.source == b.source && a.target == b.target && a.matrix == b.matrix;
  }
};

struct HomAnalysis {
  FgAbGroup kernel;
  FgAbGroup image;
  FgAbGroup cokernel;
  bool surjective = false;
  bool finite_kernel = false;
  bool injective = false;
  // Generators (as source element vectors) of the kernel.
  std::vector<Vec> kernel_generators;
};

HomAnalysis analyze_hom(const FgAbHom& f);

// The characters of a diagonalizable group and the characters of the ambient torus coordinates.
struct DiagGroupPresentation {
  FgAbGroup character_group;
  IntMatrix weights;  // column i = image of e_i^* in character_group

  Vec weight(std::size_t i) const { return weights.column(i); }
  friend bool operator==(const DiagGroupPresentation& a, const DiagGroupPresentation& b) {
    return a.character_group == b.character_group && a.weights == b.weights;
  }
};

struct MappingConeDual {
  std::size_t g0_rank = 0;
  DiagGroupPresentation g1;
  // H^1 as a quotient of (L + Z^s)^*, with s the number of relations used.
  Cokernel h1;
  // Basis (columns) of H^0 inside (Z^m)^*.
  IntMatrix h0_basis;
};

// beta: a lattice L (free source) to N, computed through the invariant-factor presentation of N.
MappingConeDual mapping_cone_dual(const FgAbHom& beta);

// Same, through an arbitrary presentation Z^s --q--> Z^m -> N and lift b: L -> Z^m.
MappingConeDual mapping_cone_dual(const IntMatrix& lift, const IntMatrix& relations);

FgAbGroup ext1(const FgAbGroup& n);

bool verify_exact(const std::vector<FgAbHom>& seq);

// Homomorphism cok(a) -> cok(b) induced by a matrix t on the ambient lattices.
FgAbHom induced_hom(const Cokernel& from, const Cokernel& to, const IntMatrix& t);

// Z^m / colspan(relations) for an arbitrary relation matrix.
Cokernel presented_group(const IntMatrix& relations);

struct DirectSum {
  FgAbGroup group;
  FgAbHom inject_first;
  FgAbHom inject_second;
  FgAbHom project_first;
  FgAbHom project_second;
};

DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// Subgroup of g generated by the given elements, as a canonical lattice basis of
// preimages in Z^generator_count (relations included).
IntMatrix subgroup_lattice(const FgAbGroup& g, const std::vector<Vec>& gens);

}  // namespace toric
