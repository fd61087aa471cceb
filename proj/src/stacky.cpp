#include "toric/stacky.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "toric/zlinalg.hpp"

namespace toric {

namespace {

using Mask = std::uint64_t;

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

Vec embed(const Vec& v, std::size_t offset, std::size_t n) {
  Vec out(n);
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
  return out;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec e(n);
  e[i] = 1;
  return e;
}

bool mask_less(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return mask_to_indices(a) < mask_to_indices(b);
}

std::string weight_text(const DiagGroupPresentation& g) {
  const std::size_t k = g.character_group.generator_count();
  if (k == 0) return "";
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.weights.cols(); ++i) {
    if (i) os << ',';
    Vec w = g.weight(i);
    os << (k == 1 ? w[0].get_str() : to_string(w));
  }
  os << ')';
  return os.str();
}

}  // namespace

StackyFan::StackyFan(Fan f, FgAbGroup n, std::vector<Vec> images)
    : fan(std::move(f)), target(std::move(n)), beta_images(std::move(images)) {
  for (auto& v : beta_images)
    if (v.size() == target.generator_count()) v = target.reduce(v);
}

StackyFan StackyFan::toric_variety(const Fan& f) {
  std::vector<Vec> images;
  for (std::size_t i = 0; i < f.ambient_rank(); ++i) images.push_back(unit(f.ambient_rank(), i));
  return StackyFan(f, FgAbGroup::free(f.ambient_rank()), images);
}

FgAbHom StackyFan::beta() const {
  return FgAbHom::from_images(FgAbGroup::free(lattice_rank()), target, beta_images);
}

IntMatrix StackyFan::free_matrix() const {
  IntMatrix b = IntMatrix::from_columns(beta_images, target.generator_count());
  return b.select_rows(iota(0, target.free_rank()));
}

bool StackyFan::cokernel_finite() const { return rank(free_matrix()) == target.free_rank(); }

StackyFanDiagnostics validate_stacky_fan(const StackyFan& sf) {
  StackyFanDiagnostics d;
  auto fd = validate_fan(sf.fan);
  for (auto& p : fd.problems) d.fail("fan: " + p);
  if (sf.beta_images.size() != sf.lattice_rank())
    d.fail("beta_images: expected " + std::to_string(sf.lattice_rank()) + " images, got " +
           std::to_string(sf.beta_images.size()));
  for (std::size_t i = 0; i < sf.beta_images.size(); ++i)
    if (sf.beta_images[i].size() != sf.target.generator_count())
      d.fail("beta_images[" + std::to_string(i) + "]: expected " + std::to_string(sf.target.generator_count()) +
             " coordinates, got " + std::to_string(sf.beta_images[i].size()));
  if (d.valid) d.strict = sf.is_strict();
  return d;
}

Diagnostics validate_morphism(const StackyMorphism& m) {
  Diagnostics d;
  for (const auto* side : {&m.source, &m.target}) {
    auto sd = validate_stacky_fan(*side);
    for (auto& p : sd.problems) d.fail((side == &m.source ? "source " : "target ") + p);
  }
  if (!d.valid) return d;
  const std::size_t l = m.source.lattice_rank(), lp = m.target.lattice_rank();
  if (m.Phi.rows() != lp || m.Phi.cols() != l) {
    d.fail("Phi: expected a " + std::to_string(lp) + "x" + std::to_string(l) + " map");
    return d;
  }
  if (!(m.phi.source == m.source.target) || !(m.phi.target == m.target.target)) {
    d.fail("phi: source or target group does not match the stacky fans");
    return d;
  }
  try {
    m.phi.check();
  } catch (const MalformedHom& e) {
    d.fail(std::string("phi: ") + e.what());
    return d;
  }
  FgAbHom b = m.source.beta(), bp = m.target.beta();
  for (std::size_t i = 0; i < l; ++i) {
    Vec lhs = bp.apply(m.Phi.column(i));
    Vec rhs = m.phi.apply(b.image_of(i));
    if (lhs != rhs)
      d.fail("square does not commute on e_" + std::to_string(i + 1) + ": beta'(Phi e) = " + to_string(lhs) +
             ", phi(beta e) = " + to_string(rhs));
  }
  for (const auto& sigma : m.source.fan.maximal_cones()) {
    bool ok = false;
    for (const auto& tc : m.target.fan.maximal_cones()) {
      bool inside = true;
      for (const auto& r : sigma.rays())
        if (!cone_contains(tc, m.Phi * r)) {
          inside = false;
          break;
        }
      if (inside) {
        ok = true;
        break;
      }
    }
    if (!ok) d.fail("image of " + sigma.to_string() + " lies in no cone of the target fan");
  }
  return d;
}

StackyMorphism compose(const StackyMorphism& second, const StackyMorphism& first) {
  return StackyMorphism{first.source, second.target, second.Phi * first.Phi, second.phi.compose_after(first.phi)};
}

StackyFan product(const StackyFan& a, const StackyFan& b) {
  const std::size_t la = a.lattice_rank(), lb = b.lattice_rank(), l = la + lb;
  std::vector<Cone> cones;
  for (const auto& s : a.fan.maximal_cones())
    for (const auto& t : b.fan.maximal_cones()) {
      std::vector<Vec> rays;
      for (const auto& r : s.rays()) rays.push_back(embed(r, 0, l));
      for (const auto& r : t.rays()) rays.push_back(embed(r, la, l));
      cones.push_back(canonicalize_cone(rays, l));
    }
  DirectSum ds = direct_sum(a.target, b.target);
  std::vector<Vec> images;
  for (const auto& v : a.beta_images) images.push_back(ds.inject_first.apply(v));
  for (const auto& v : b.beta_images) images.push_back(ds.inject_second.apply(v));
  return StackyFan(Fan(l, cones), ds.group, images);
}

StackyMorphism product(const StackyMorphism& a, const StackyMorphism& b) {
  DirectSum src = direct_sum(a.source.target, b.source.target);
  DirectSum tgt = direct_sum(a.target.target, b.target.target);
  IntMatrix m = tgt.inject_first.matrix * a.phi.matrix * src.project_first.matrix;
  IntMatrix m2 = tgt.inject_second.matrix * b.phi.matrix * src.project_second.matrix;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += m2(i, j);
  return StackyMorphism{product(a.source, b.source), product(a.target, b.target), block_diagonal(a.Phi, b.Phi),
                        FgAbHom(src.group, tgt.group, m)};
}

MappingConeDual gbeta(const StackyFan& sf) { return mapping_cone_dual(sf.beta()); }

IndexSet mask_to_indices(Mask mask) {
  IndexSet out;
  for (std::size_t i = 0; i < 64; ++i)
    if (mask >> i & 1) out.push_back(i + 1);
  return out;
}

std::vector<Mask> coordinate_cone_masks(const Fan& f) {
  if (f.ambient_rank() > 63) throw std::invalid_argument("too many coordinates");
  std::vector<Mask> out;
  for (const auto& c : f.maximal_cones()) {
    Mask m = 0;
    for (const auto& r : c.rays()) {
      std::size_t ones = 0, at = 0;
      bool ok = true;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 1) {
          ++ones;
          at = i;
        } else if (r[i] != 0) {
          ok = false;
        }
      }
      if (!ok || ones != 1)
        throw NotSubfanOfAffineSpace("ray " + to_string(r) + " of " + c.to_string() + " is not a coordinate vector");
      m |= Mask{1} << at;
    }
    out.push_back(m);
  }
  return out;
}

std::vector<Mask> minimal_transversals(const std::vector<Mask>& sets) {
  std::vector<Mask> current{0};
  for (Mask e : sets) {
    std::vector<Mask> next;
    for (Mask t : current) {
      if (t & e) {
        next.push_back(t);
        continue;
      }
      for (std::size_t i = 0; i < 64; ++i)
        if (e >> i & 1) next.push_back(t | Mask{1} << i);
    }
    std::sort(next.begin(), next.end(), mask_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.clear();
    for (Mask t : next) {
      bool redundant = false;
      for (Mask s : current)
        if ((s & t) == s) {
          redundant = true;
          break;
        }
      if (!redundant) current.push_back(t);
    }
  }
  std::sort(current.begin(), current.end(), mask_less);
  return current;
}

std::string QuotientPresentation::group_name() const {
  const FgAbGroup& d = group.character_group;
  std::vector<std::string> parts;
  if (d.free_rank() > 0) parts.push_back(d.free_rank() == 1 ? "G_m" : "G_m^" + std::to_string(d.free_rank()));
  for (const auto& t : d.torsion()) parts.push_back("mu_" + t.get_str());
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

std::string QuotientPresentation::notation() const {
  std::ostringstream os;
  if (!fixed_coordinates.empty()) {
    os << "V(";
    for (std::size_t i = 0; i < fixed_coordinates.size(); ++i) os << (i ? "," : "") << 'x' << fixed_coordinates[i];
    os << ") in ";
  }
  std::ostringstream space;
  space << "A^" << ambient_dim;
  if (!removed_locus.empty()) {
    std::ostringstream locus;
    for (std::size_t k = 0; k < removed_locus.size(); ++k) {
      if (k) locus << " u ";
      locus << "V(";
      for (std::size_t i = 0; i < removed_locus[k].size(); ++i) locus << (i ? "," : "") << 'x' << removed_locus[k][i];
      locus << ')';
    }
    const bool several = removed_locus.size() > 1;
    space << '\\' << (several ? "(" : "") << locus.str() << (several ? ")" : "");
  }
  if (group.character_group.is_trivial())
    os << space.str();
  else if (removed_locus.empty())
    os << '[' << space.str() << '/' << weight_text(group) << ' ' << group_name() << ']';
  else
    os << "[(" << space.str() << ")/" << weight_text(group) << ' ' << group_name() << ']';
  if (g0_rank > 0) os << " x BG_m" << (g0_rank > 1 ? "^" + std::to_string(g0_rank) : "");
  return os.str();
}

QuotientPresentation present_quotient(const StackyFan& sf, const IndexSet& fixed_coordinates) {
  auto masks = coordinate_cone_masks(sf.fan);
  const std::size_t n = sf.lattice_rank();
  const Mask full = n == 0 ? 0 : (n == 64 ? ~Mask{0} : (Mask{1} << n) - 1);
  std::vector<Mask> missing;
  for (Mask m : masks) missing.push_back(full & ~m);
  std::sort(missing.begin(), missing.end(), mask_less);
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());

  QuotientPresentation q;
  q.ambient_dim = n;
  for (Mask m : missing) q.irrelevant_monomials.push_back(mask_to_indices(m));
  for (Mask t : minimal_transversals(missing)) q.removed_locus.push_back(mask_to_indices(t));
  auto g = gbeta(sf);
  q.g0_rank = g.g0_rank;
  q.group = g.g1;
  q.fixed_coordinates = fixed_coordinates;
  return q;
}

ReducedStackyFan reduce_nonstrict(const StackyFan& sf) {
  const std::size_t s = sf.target.torsion().size();
  if (s == 0) return {sf, {}};
  const std::size_t l = sf.lattice_rank(), m = sf.target.generator_count(), r = sf.target.free_rank();
  std::vector<Vec> images = sf.beta_images;
  for (std::size_t j = 0; j < s; ++j) {
    Vec q(m);
    q[r + j] = sf.target.torsion()[j];
    images.push_back(q);
  }
  std::vector<Cone> cones;
  for (const auto& c : sf.fan.maximal_cones()) {
    std::vector<Vec> rays;
    for (const auto& ray : c.rays()) rays.push_back(embed(ray, 0, l + s));
    for (std::size_t j = 0; j < s; ++j) rays.push_back(unit(l + s, l + j));
    cones.push_back(canonicalize_cone(rays, l + s));
  }
  ReducedStackyFan out{StackyFan(Fan(l + s, cones), FgAbGroup::free(m), images), {}};
  for (std::size_t j = 0; j < s; ++j) out.substack_coordinates.push_back(l + j + 1);
  return out;
}

TorusSplit split_torus_factor(const StackyFan& sf) {
  const std::size_t r = sf.target.free_rank();
  IntMatrix sat = saturate(sf.free_matrix());
  const std::size_t k = sat.cols();
  if (k == r) return {sf, 0};
  IntMatrix basis = hcat(sat, complement_basis(sat));
  IntMatrix inv = inverse_unimodular(basis);
  std::vector<Vec> images;
  for (const auto& v : sf.beta_images) {
    Vec free_part(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
    Vec coords = inv * free_part;
    Vec w(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(k));
    w.insert(w.end(), v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
    images.push_back(w);
  }
  return {StackyFan(sf.fan, FgAbGroup(k, sf.target.torsion()), images), r - k};
}

}  // namespace toric
