#pragma once

#include <optional>

#include "toric/abelian_group.hpp"
#include "toric/matrix.hpp"

namespace toric {

struct SnfDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> invariant_factors;  // nonzero diagonal of S
  std::size_t rank() const { return invariant_factors.size(); }
};

// U * M * V = S, diagonal with d_1 | d_2 | ... followed by zeros.
SnfDecomposition snf(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice; zero rows dropped.
// Pivots positive, entries above a pivot reduced into [0, pivot).
IntMatrix row_hermite_form(const IntMatrix& m);

// Canonical basis (as columns) of the lattice spanned by the columns of m.
IntMatrix lattice_basis(const IntMatrix& m);

// Columns form a basis of {x : m x = 0}, in canonical Hermite form.
IntMatrix kernel_basis(const IntMatrix& m);

std::optional<Vec> solve_integer(const IntMatrix& m, const Vec& b);

// Columns form a basis of the saturation of the column lattice.
IntMatrix saturate(const IntMatrix& m);

// For a saturated basis S (columns), columns C with [S | C] unimodular.
IntMatrix complement_basis(const IntMatrix& saturated);

IntMatrix inverse_unimodular(const IntMatrix& u);

Integer determinant(const IntMatrix& m);

struct Cokernel {
  FgAbGroup group;
  IntMatrix projection;  // rows: free generators first, then torsion generators

  Vec apply(const Vec& x) const { return group.reduce(projection * x); }
  // Some x with apply(x) == g.
  Vec lift(const Vec& g) const;
};

// Z^rows / colspan(m) in invariant-factor form. The projection depends only on
// the column lattice of m.
Cokernel cokernel_presentation(const IntMatrix& m);

}  // namespace toric
