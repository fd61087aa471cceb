#include "toric/fgab.hpp"

#include <string>

namespace toric {

namespace {

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec e(n);
  e[i] = 1;
  return e;
}

}  // namespace

FgAbHom::FgAbHom(FgAbGroup src, FgAbGroup tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count())
    throw MalformedHom("homomorphism matrix is " + std::to_string(matrix.rows()) + "x" +
                       std::to_string(matrix.cols()) + ", expected " + std::to_string(target.generator_count()) +
                       "x" + std::to_string(source.generator_count()));
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    Vec c = target.reduce(matrix.column(j));
    for (std::size_t i = 0; i < c.size(); ++i) matrix(i, j) = c[i];
  }
}

FgAbHom FgAbHom::from_images(const FgAbGroup& src, const FgAbGroup& tgt, const std::vector<Vec>& images) {
  if (images.size() != src.generator_count())
    throw MalformedHom("expected " + std::to_string(src.generator_count()) + " generator images, got " +
                       std::to_string(images.size()));
  for (const auto& v : images)
    if (v.size() != tgt.generator_count()) throw MalformedHom("generator image has wrong length");
  return FgAbHom(src, tgt, IntMatrix::from_columns(images, tgt.generator_count()));
}

FgAbHom FgAbHom::identity(const FgAbGroup& g) {
  return FgAbHom(g, g, IntMatrix::identity(g.generator_count()));
}

void FgAbHom::check() const {
  if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count())
    throw MalformedHom("homomorphism matrix has the wrong shape");
  for (std::size_t j = 0; j < source.torsion().size(); ++j) {
    const Integer& d = source.torsion()[j];
    Vec img = matrix.column(source.free_rank() + j);
    for (auto& x : img) x *= d;
    if (!target.is_zero(img))
      throw MalformedHom("generator of order " + d.get_str() + " maps to an element of larger order");
  }
}

FgAbHom FgAbHom::compose_after(const FgAbHom& first) const {
  if (!(first.target == source)) throw MalformedHom("composition of non-composable homomorphisms");
  return FgAbHom(first.source, target, matrix * first.matrix);
}

HomAnalysis analyze_hom(const FgAbHom& f) {
  f.check();
  const std::size_t m = f.source.generator_count();
  HomAnalysis out;
  IntMatrix with_rel = hcat(f.matrix, f.target.relations());
  out.cokernel = cokernel_presentation(with_rel).group;

  IntMatrix k = kernel_basis(with_rel);
  IntMatrix pre = lattice_basis(k.select_rows(iota(0, m)));
  IntMatrix rel = f.source.relations();
  IntMatrix rel_in_pre(pre.cols(), rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto y = solve_integer(pre, rel.column(j));
    if (!y) throw MalformedHom("relation of the source does not map to zero");
    for (std::size_t i = 0; i < y->size(); ++i) rel_in_pre(i, j) = (*y)[i];
  }
  out.kernel = cokernel_presentation(rel_in_pre).group;
  out.image = cokernel_presentation(pre).group;
  for (std::size_t j = 0; j < pre.cols(); ++j) {
    Vec g = f.source.reduce(pre.column(j));
    if (!is_zero(g)) out.kernel_generators.push_back(g);
  }
  out.surjective = out.cokernel.is_trivial();
  out.finite_kernel = out.kernel.is_finite();
  out.injective = out.kernel.is_trivial();
  return out;
}

MappingConeDual mapping_cone_dual(const IntMatrix& lift, const IntMatrix& relations) {
  if (lift.rows() != relations.rows()) throw MalformedHom("lift and relations have different targets");
  const std::size_t l = lift.cols();
  IntMatrix dual = hcat(lift, relations).transpose();
  MappingConeDual out;
  out.h0_basis = kernel_basis(dual);
  out.g0_rank = out.h0_basis.cols();
  out.h1 = cokernel_presentation(dual);
  out.g1.character_group = out.h1.group;
  out.g1.weights = out.h1.projection.select_columns(iota(0, l));
  return out;
}

MappingConeDual mapping_cone_dual(const FgAbHom& beta) {
  beta.check();
  if (!beta.source.is_free()) throw PreconditionViolated("mapping_cone_dual needs a free source lattice");
  return mapping_cone_dual(beta.matrix, beta.target.relations());
}

FgAbGroup ext1(const FgAbGroup& n) { return cokernel_presentation(n.relations().transpose()).group; }

bool verify_exact(const std::vector<FgAbHom>& seq) {
  for (const auto& f : seq) f.check();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!(seq[i].target == seq[i + 1].source))
      throw MalformedHom("maps " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " are not composable");
  if (seq.empty()) return true;
  if (!analyze_hom(seq.front()).injective) return false;
  if (!analyze_hom(seq.back()).surjective) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const FgAbHom& f = seq[i];
    const FgAbHom& g = seq[i + 1];
    for (std::size_t j = 0; j < f.source.generator_count(); ++j)
      if (!g.target.is_zero(g.matrix * f.matrix.column(j))) return false;
    IntMatrix image_lattice = hcat(f.matrix, f.target.relations());
    for (const auto& k : analyze_hom(g).kernel_generators)
      if (!solve_integer(image_lattice, k)) return false;
  }
  return true;
}

FgAbHom induced_hom(const Cokernel& from, const Cokernel& to, const IntMatrix& t) {
  const std::size_t n = from.group.generator_count();
  std::vector<Vec> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(to.apply(t * from.lift(unit(n, j))));
  return FgAbHom::from_images(from.group, to.group, images);
}

Cokernel presented_group(const IntMatrix& relations) { return cokernel_presentation(relations); }

DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  const std::size_t ma = a.generator_count(), mb = b.generator_count();
  Cokernel c = cokernel_presentation(block_diagonal(a.relations(), b.relations()));
  DirectSum out;
  out.group = c.group;
  out.inject_first = FgAbHom(a, c.group, c.projection.select_columns(iota(0, ma)));
  out.inject_second = FgAbHom(b, c.group, c.projection.select_columns(iota(ma, ma + mb)));
  std::vector<Vec> pa, pb;
  for (std::size_t j = 0; j < c.group.generator_count(); ++j) {
    Vec x = c.lift(unit(c.group.generator_count(), j));
    pa.emplace_back(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ma));
    pb.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(ma), x.end());
  }
  out.project_first = FgAbHom::from_images(c.group, a, pa);
  out.project_second = FgAbHom::from_images(c.group, b, pb);
  return out;
}

IntMatrix subgroup_lattice(const FgAbGroup& g, const std::vector<Vec>& gens) {
  return lattice_basis(hcat(IntMatrix::from_columns(gens, g.generator_count()), g.relations()));
}

}  // namespace toric
