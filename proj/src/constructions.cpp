#include "toric/constructions.hpp"

#include <algorithm>
#include <set>

#include "toric/zlinalg.hpp"

namespace toric {

namespace {

using Mask = std::uint64_t;

Vec unit(std::size_t n, std::size_t i) {
  Vec e(n);
  e[i] = 1;
  return e;
}

std::vector<Vec> map_rays(const IntMatrix& m, const Cone& c) {
  std::vector<Vec> out;
  for (const auto& r : c.rays()) out.push_back(m * r);
  return out;
}

bool maps_into(const IntMatrix& m, const Cone& c, const Cone& target) {
  for (const auto& r : c.rays())
    if (!cone_contains(target, m * r)) return false;
  return true;
}

bool maps_into_fan(const IntMatrix& m, const Cone& c, const Fan& f) {
  for (const auto& t : f.maximal_cones())
    if (maps_into(m, c, t)) return true;
  return false;
}

// {x in |f| : m x in target} equals sigma, checked cone by cone: each maximal cone meets the
// preimage of target in a cone whose rays must lie in sigma.
bool set_preimage_is(const IntMatrix& m, const Fan& f, const Cone& target, const Cone& sigma) {
  auto pulled_back = [&](const Vec& y) {
    Vec out(m.cols(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) out[j] += y[i] * m(i, j);
    return out;
  };
  auto negated = [](Vec v) {
    for (auto& x : v) x = -x;
    return v;
  };
  for (const auto& c : f.maximal_cones()) {
    std::vector<Vec> ineq = c.facet_normals();
    for (const auto& e : c.equations()) {
      ineq.push_back(e);
      ineq.push_back(negated(e));
    }
    for (const auto& y : target.facet_normals()) ineq.push_back(pulled_back(y));
    for (const auto& e : target.equations()) {
      ineq.push_back(pulled_back(e));
      ineq.push_back(negated(pulled_back(e)));
    }
    ConeGenerators meet = double_description(ineq, m.cols());
    for (const auto& r : meet.rays)
      if (!cone_contains(sigma, r)) return false;
  }
  return true;
}

IntMatrix beta_lift(const StackyFan& sf) {
  return IntMatrix::from_columns(sf.beta_images, sf.target.generator_count());
}

void require_smooth_coordinate_fan(const StackyFan& sf) {
  if (!sf.target.is_free() || !sf.cokernel_finite())
    throw PreconditionViolated("moduli description needs a free target and finite cokernel");
  for (const auto& c : sf.fan.maximal_cones())
    if (!is_smooth_cone(c)) throw NotSmooth(c.to_string() + " is not smooth");
  coordinate_cone_masks(sf.fan);
}

IndexSet checked_indices(const IndexSet& idx, std::size_t n) {
  std::set<std::size_t> s;
  for (auto i : idx) {
    if (i < 1 || i > n) throw std::invalid_argument("coordinate index " + std::to_string(i) + " out of range");
    s.insert(i);
  }
  return {s.begin(), s.end()};
}

}  // namespace

Fantastack fantastack(const Fan& sigma, const std::vector<Vec>& beta_images) {
  const std::size_t d = sigma.ambient_rank(), n = beta_images.size();
  auto fd = validate_fan(sigma);
  if (!fd.valid) throw FantastackPreconditionViolated("fan is invalid: " + fd.problems.front());
  for (const auto& b : beta_images)
    if (b.size() != d) throw FantastackPreconditionViolated("image " + to_string(b) + " is not in Z^" + std::to_string(d));
  if (d > 0 && (n == 0 || rank(IntMatrix::from_columns(beta_images, d)) != d))
    throw FantastackPreconditionViolated("cokernel of beta is not finite");
  for (const auto& ray : sigma.rays()) {
    bool covered = false;
    for (const auto& b : beta_images)
      if (!is_zero(b) && primitive(b) == ray) covered = true;
    if (!covered) throw FantastackPreconditionViolated("ray " + to_string(ray) + " contains no image of beta");
  }
  for (const auto& b : beta_images) {
    bool inside = false;
    for (const auto& c : sigma.maximal_cones())
      if (cone_contains(c, b)) inside = true;
    if (!inside) throw FantastackPreconditionViolated("image " + to_string(b) + " is outside the support");
  }
  std::vector<Cone> hats;
  for (const auto& c : sigma.maximal_cones()) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i)
      if (cone_contains(c, beta_images[i])) gens.push_back(unit(n, i));
    hats.push_back(canonicalize_cone(gens, n));
  }
  StackyFan sf(Fan::generated_by(n, hats), FgAbGroup::free(d), beta_images);
  return {sf, present_quotient(sf)};
}

CanonicalStack canonical_stack(const StackyFan& sf) {
  const std::size_t l = sf.lattice_rank();
  std::vector<Vec> rays = sf.fan.rays();
  IntMatrix m = saturate(IntMatrix::from_columns(rays, l));
  IntMatrix comp = complement_basis(m);
  std::vector<Vec> cols;
  for (const auto& r : rays) {
    // First lattice point of M along the ray.
    Vec u = saturate(IntMatrix::from_columns({r}, l)).column(0);
    if (dot(u, r) < 0)
      for (auto& x : u) x = -x;
    cols.push_back(u);
  }
  for (std::size_t j = 0; j < comp.cols(); ++j) cols.push_back(comp.column(j));
  const std::size_t big = cols.size();
  IntMatrix phi = IntMatrix::from_columns(cols, l);

  std::vector<Cone> cones;
  for (const auto& c : sf.fan.maximal_cones()) {
    std::vector<Vec> gens;
    for (const auto& r : c.rays()) {
      auto at = std::lower_bound(rays.begin(), rays.end(), r) - rays.begin();
      gens.push_back(unit(big, static_cast<std::size_t>(at)));
    }
    cones.push_back(canonicalize_cone(gens, big));
  }
  IntMatrix images = beta_lift(sf) * phi;
  StackyFan tilde(Fan(big, cones), sf.target, images.column_list());
  return {tilde, StackyMorphism{tilde, sf, phi, FgAbHom::identity(sf.target)}, rays};
}

CanonicalStack cox_presentation(const Fan& sigma) { return canonical_stack(StackyFan::toric_variety(sigma)); }

IsoResult is_isomorphism(const StackyMorphism& m) {
  if (!m.source.cokernel_finite() || !m.target.cokernel_finite())
    throw PreconditionViolated("isomorphism criterion needs finite cokernels of beta and beta'");
  auto a = analyze_hom(m.phi);
  if (!a.injective || !a.surjective) return {false, 1, std::nullopt};
  std::vector<std::pair<Cone, Cone>> pairs;
  for (const auto& tc : m.target.fan.cones()) {
    auto pre = preimage_fan(m.Phi, m.source.fan, tc);
    if (!pre.single_cone) return {false, 2, tc};
    pairs.emplace_back(*pre.single_cone, tc);
  }
  for (const auto& [s, t] : pairs)
    if (!monoid_iso_on_cone(m.Phi, s, t)) return {false, 3, t};
  return {true, 0, std::nullopt};
}

std::string condition_label(GmsCondition c) {
  switch (c) {
    case GmsCondition::none: return "";
    case GmsCondition::preimage: return "1";
    case GmsCondition::unstable: return "2";
    case GmsCondition::surjective: return "3";
    case GmsCondition::finite_kernel: return "4";
    case GmsCondition::unique_unstable: return "i";
    case GmsCondition::fan_map: return "ii";
  }
  return "";
}

GmsResult gms_check(const StackyMorphism& m) {
  if (!m.source.cokernel_finite()) throw PreconditionViolated("good moduli space criterion needs finite cokernel of beta");
  GmsResult out;
  auto fail = [&](GmsCondition c, std::optional<Cone> w) {
    out.verdict = false;
    out.failing_condition = c;
    out.witness = std::move(w);
    return out;
  };
  for (const auto& tc : m.target.fan.cones()) {
    auto pre = preimage_fan(m.Phi, m.source.fan, tc);
    if (!pre.single_cone) return fail(GmsCondition::preimage, tc);
    auto img = map_rays(m.Phi, *pre.single_cone);
    if (!(canonicalize_cone(img, m.Phi.rows()) == tc)) return fail(GmsCondition::preimage, tc);
    if (tc.is_zero()) out.tau = *pre.single_cone;
  }
  const Cone& tau = *out.tau;
  FgAbHom beta = m.source.beta();
  if (!is_unstable(tau, beta)) return fail(GmsCondition::unstable, tau);
  auto a = analyze_hom(m.phi);
  if (!a.surjective) return fail(GmsCondition::surjective, std::nullopt);
  std::size_t tau_rank = 0;
  if (!tau.is_zero()) {
    IntMatrix gp = saturate(IntMatrix::from_columns(tau.rays(), tau.ambient_rank()));
    tau_rank = rank(m.source.free_matrix() * gp);
  }
  if (a.kernel.free_rank() != tau_rank) return fail(GmsCondition::finite_kernel, std::nullopt);
  out.verdict = true;
  return out;
}

GmsResult gms_construct(const StackyFan& sf) {
  if (!sf.cokernel_finite()) throw PreconditionViolated("good moduli space construction needs finite cokernel of beta");
  GmsResult out;
  FgAbHom beta = sf.beta();
  std::vector<Cone> unstable;
  for (const auto& c : sf.fan.cones())
    if (is_unstable(c, beta)) unstable.push_back(c);
  std::vector<Cone> maximal;
  for (const auto& c : unstable) {
    bool below = false;
    for (const auto& d : unstable)
      if (!(c == d) && c.rays().size() < d.rays().size() && is_face_of(c, d)) below = true;
    if (!below) maximal.push_back(c);
  }
  if (maximal.size() != 1) {
    out.failing_condition = GmsCondition::unique_unstable;
    out.witness = maximal.size() > 1 ? std::optional<Cone>(maximal[1]) : std::nullopt;
    return out;
  }
  const Cone tau = maximal.front();
  out.tau = tau;

  const std::size_t l = sf.lattice_rank(), r = sf.target.free_rank(), m = sf.target.generator_count();
  IntMatrix bfree = sf.free_matrix();
  IntMatrix killed(r, 0);
  if (!tau.is_zero()) killed = saturate(bfree * saturate(IntMatrix::from_columns(tau.rays(), l)));
  Cokernel quotient = cokernel_presentation(killed);
  const std::size_t rp = quotient.group.free_rank();
  IntMatrix phi_matrix(rp, m);
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t j = 0; j < r; ++j) phi_matrix(i, j) = quotient.projection(i, j);
  IntMatrix Phi = quotient.projection * bfree;

  std::set<Cone> candidates;
  for (const auto& c : sf.fan.cones()) {
    try {
      candidates.insert(canonicalize_cone(map_rays(Phi, c), rp));
    } catch (const NotStronglyConvex&) {
    }
  }
  std::vector<Cone> kept;
  for (const auto& cand : candidates) {
    auto pre = preimage_fan(Phi, sf.fan, cand);
    if (!pre.single_cone || !set_preimage_is(Phi, sf.fan, cand, *pre.single_cone)) continue;
    if (canonicalize_cone(map_rays(Phi, *pre.single_cone), rp) == cand) kept.push_back(cand);
  }
  Fan target_fan = Fan::generated_by(rp, kept);
  for (const auto& c : sf.fan.maximal_cones())
    if (!maps_into_fan(Phi, c, target_fan)) {
      out.failing_condition = GmsCondition::fan_map;
      out.witness = c;
      return out;
    }
  out.verdict = true;
  out.gms_fan = target_fan;
  out.morphism = StackyMorphism{sf, StackyFan::toric_variety(target_fan), Phi,
                                FgAbHom(sf.target, FgAbGroup::free(rp), phi_matrix)};
  return out;
}

ModuliDescription moduli_description(const StackyFan& sf, const IndexSet& forced_zero) {
  require_smooth_coordinate_fan(sf);
  const std::size_t n = sf.lattice_rank();
  ModuliDescription out;
  out.n = n;
  out.linear_relations = sf.free_matrix().row_list();
  const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
  std::vector<Mask> missing;
  for (Mask m : coordinate_cone_masks(sf.fan)) missing.push_back(full & ~m);
  for (Mask t : minimal_transversals(missing)) out.intersection_relations.push_back(mask_to_indices(t));
  out.forced_zero_sections = checked_indices(forced_zero, n);
  return out;
}

GerbeData gerbe_decomposition(const StackyFan& sf, const IndexSet& zero_coordinates) {
  require_smooth_coordinate_fan(sf);
  const std::size_t n = sf.lattice_rank();
  IndexSet zs = checked_indices(zero_coordinates, n);
  if (zs.empty()) {
    GerbeData trivial;
    trivial.base = sf;
    for (std::size_t i = 1; i <= n; ++i) trivial.base_coordinates.push_back(i);
    return trivial;
  }
  std::vector<std::size_t> z0, rest0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::binary_search(zs.begin(), zs.end(), i + 1))
      z0.push_back(i);
    else
      rest0.push_back(i);
  }
  IntMatrix b = sf.free_matrix();

  // N'^* = N^* intersected with the surviving coordinates, in Hermite form.
  IntMatrix x = kernel_basis(b.select_columns(z0).transpose());
  IntMatrix w = row_hermite_form((x.transpose() * b).select_columns(rest0));
  const std::size_t k = w.rows();

  GerbeData out;
  std::vector<Cone> base_cones;
  for (Mask m : coordinate_cone_masks(sf.fan)) {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < rest0.size(); ++j)
      if (m >> rest0[j] & 1) gens.push_back(unit(rest0.size(), j));
    base_cones.push_back(canonicalize_cone(gens, rest0.size()));
  }
  out.base = StackyFan(Fan::generated_by(rest0.size(), base_cones), FgAbGroup::free(k), w.column_list());
  for (auto i : rest0) out.base_coordinates.push_back(i + 1);

  for (std::size_t zi : z0) {
    std::vector<std::size_t> others;
    for (auto j : z0)
      if (j != zi) others.push_back(j);
    IntMatrix xi = kernel_basis(b.select_columns(others).transpose());
    IntMatrix v = xi.transpose() * b;
    Vec col = v.column(zi);
    Integer g = content(col);
    if (g == 0) {
      ++out.bg_m_rank;
      continue;
    }
    auto y = solve_integer(IntMatrix::from_rows({col}, col.size()), Vec{g});
    Vec full_vec = v.transpose() * *y;
    Vec a;
    for (auto j : rest0) a.push_back(full_vec[j]);
    for (std::size_t row = 0; row < w.rows(); ++row) {
      std::size_t p = 0;
      while (w(row, p) == 0) ++p;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[p].get_mpz_t(), w(row, p).get_mpz_t());
      for (std::size_t j = 0; j < a.size(); ++j) a[j] -= q * w(row, j);
    }
    for (auto& e : a) e = -e;
    out.roots.push_back({zi + 1, g, a});
  }
  return out;
}

}  // namespace toric
