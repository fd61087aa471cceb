#include "toric/polyhedral.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include "toric/zlinalg.hpp"

namespace toric {

namespace {

Vec negated(const Vec& v) {
  Vec w = v;
  for (auto& x : w) x = -x;
  return w;
}

std::size_t rank_of(const std::vector<Vec>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows, dim));
}

Vec scale_to_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i] * l).get_num();
  return out;
}

bool satisfies(const std::vector<Vec>& facets, const std::vector<Vec>& equations, const Vec& v, bool strict) {
  for (const auto& e : equations)
    if (dot(e, v) != 0) return false;
  for (const auto& y : facets) {
    int s = sgn(dot(y, v));
    if (s < 0 || (strict && s == 0)) return false;
  }
  return true;
}

using Mask = std::uint64_t;

}  // namespace

ConeGenerators double_description(const std::vector<Vec>& inequalities, std::size_t dim) {
  std::vector<Vec> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<Vec> rays;
  std::vector<Vec> done;
  for (const Vec& a : inequalities) {
    if (a.size() != dim) throw std::invalid_argument("inequality has wrong length");
    if (is_zero(a)) continue;
    std::size_t k = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        k = i;
        break;
      }
    std::vector<Vec> next;
    if (k < lin.size()) {
      Vec l = lin[k];
      Integer al = dot(a, l);
      if (al < 0) {
        l = negated(l);
        al = -al;
      }
      auto shift = [&](const Vec& v) {
        Integer av = dot(a, v);
        Vec w(dim);
        for (std::size_t j = 0; j < dim; ++j) w[j] = al * v[j] - av * l[j];
        return primitive(w);
      };
      std::vector<Vec> new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i)
        if (i != k) new_lin.push_back(shift(lin[i]));
      for (const auto& r : rays) next.push_back(shift(r));
      next.push_back(l);
      lin = std::move(new_lin);
    } else {
      std::vector<const Vec*> pos, neg;
      for (const auto& r : rays) {
        int s = sgn(dot(a, r));
        if (s >= 0) next.push_back(r);
        if (s > 0) pos.push_back(&r);
        if (s < 0) neg.push_back(&r);
      }
      for (const Vec* p : pos)
        for (const Vec* n : neg) {
          Integer ap = dot(a, *p), an = dot(a, *n);
          Vec w(dim);
          for (std::size_t j = 0; j < dim; ++j) w[j] = ap * (*n)[j] - an * (*p)[j];
          next.push_back(primitive(w));
        }
    }
    done.push_back(a);
    // Keep one ray per extreme face: tight constraints of rank rank(done) - 1.
    const std::size_t full = rank_of(done, dim);
    std::set<std::vector<bool>> seen;
    rays.clear();
    for (auto& r : next) {
      if (is_zero(r)) continue;
      std::vector<bool> zs(done.size());
      std::vector<Vec> tight;
      for (std::size_t i = 0; i < done.size(); ++i)
        if (dot(done[i], r) == 0) {
          zs[i] = true;
          tight.push_back(done[i]);
        }
      if (rank_of(tight, dim) + 1 != full) continue;
      if (!seen.insert(zs).second) continue;
      rays.push_back(std::move(r));
    }
  }
  return ConeGenerators{rays, lin};
}

Cone::Cone(std::size_t ambient, std::vector<Vec> rays) : ambient_(ambient), rays_(std::move(rays)) {}

Cone Cone::zero(std::size_t ambient_rank) { return Cone(ambient_rank, {}); }

std::size_t Cone::dimension() const { return rank_of(rays_, ambient_); }

void Cone::ensure_dual() const {
  std::call_once(dual_->once, [this] {
    auto g = double_description(rays_, ambient_);
    dual_->facets = std::move(g.rays);
    dual_->equations = std::move(g.lineality);
  });
}

const std::vector<Vec>& Cone::facet_normals() const {
  ensure_dual();
  return dual_->facets;
}

const std::vector<Vec>& Cone::equations() const {
  ensure_dual();
  return dual_->equations;
}

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone{";
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (i) os << ',';
    os << toric::to_string(rays_[i]);
  }
  os << '}';
  return os.str();
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.rays_.size() != b.rays_.size()) return a.rays_.size() < b.rays_.size();
  return a.rays_ < b.rays_;
}

Cone canonicalize_cone(const std::vector<Vec>& generators, std::size_t ambient_rank) {
  std::vector<Vec> gens;
  for (const auto& g : generators) {
    if (g.size() != ambient_rank)
      throw std::invalid_argument("cone generator " + to_string(g) + " is not in Z^" + std::to_string(ambient_rank));
    if (!is_zero(g)) gens.push_back(primitive(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return Cone::zero(ambient_rank);

  auto dual = double_description(gens, ambient_rank);
  std::vector<Vec> all = dual.rays;
  all.insert(all.end(), dual.lineality.begin(), dual.lineality.end());
  if (rank_of(all, ambient_rank) != ambient_rank) {
    std::ostringstream os;
    os << "cone generated by";
    for (const auto& g : gens) os << ' ' << to_string(g);
    os << " contains a line";
    throw NotStronglyConvex(os.str());
  }
  std::vector<Vec> rays;
  for (const auto& g : gens) {
    std::vector<Vec> tight = dual.lineality;
    for (const auto& y : dual.rays)
      if (dot(y, g) == 0) tight.push_back(y);
    if (rank_of(tight, ambient_rank) + 1 == ambient_rank) rays.push_back(g);
  }
  Cone c(ambient_rank, rays);
  std::call_once(c.dual_->once, [&] {
    c.dual_->facets = dual.rays;
    c.dual_->equations = dual.lineality;
  });
  return c;
}

bool cone_contains(const Cone& c, const Vec& v, bool relative_interior) {
  if (v.size() != c.ambient_rank()) throw std::invalid_argument("cone_contains: dimension mismatch");
  return satisfies(c.facet_normals(), c.equations(), v, relative_interior);
}

bool cone_contains(const Cone& c, const std::vector<Rational>& v, bool relative_interior) {
  return cone_contains(c, scale_to_integer(v), relative_interior);
}

bool cone_contains(const ImageCone& c, const Vec& v, bool relative_interior) {
  if (v.size() != c.ambient_rank) throw std::invalid_argument("cone_contains: dimension mismatch");
  auto dual = double_description(c.generators, c.ambient_rank);
  return satisfies(dual.rays, dual.lineality, v, relative_interior);
}

bool cone_contains(const ImageCone& c, const std::vector<Rational>& v, bool relative_interior) {
  return cone_contains(c, scale_to_integer(v), relative_interior);
}

bool is_linear_subspace(const ImageCone& c) {
  for (const auto& g : c.generators)
    if (!cone_contains(c, negated(g))) return false;
  return true;
}

std::vector<Cone> faces(const Cone& c) {
  const auto& rays = c.rays();
  if (rays.size() > 63) throw std::invalid_argument("faces: too many rays");
  const Mask full = (Mask{1} << rays.size()) - 1;
  std::vector<Mask> facets;
  for (const auto& y : c.facet_normals()) {
    Mask m = 0;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(y, rays[i]) == 0) m |= Mask{1} << i;
    facets.push_back(m);
  }
  std::set<Mask> found{full};
  std::vector<Mask> queue{full};
  while (!queue.empty()) {
    Mask f = queue.back();
    queue.pop_back();
    for (Mask g : facets)
      if (found.insert(f & g).second) queue.push_back(f & g);
  }
  std::vector<Cone> out;
  for (Mask m : found) {
    std::vector<Vec> sub;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (m >> i & 1) sub.push_back(rays[i]);
    out.push_back(Cone(c.ambient_rank(), sub));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_rank() != c.ambient_rank()) return false;
  for (const auto& face : faces(c))
    if (face == f) return true;
  return false;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("intersect: dimension mismatch");
  std::vector<Vec> ineq = a.facet_normals();
  ineq.insert(ineq.end(), b.facet_normals().begin(), b.facet_normals().end());
  for (const auto* eqs : {&a.equations(), &b.equations()})
    for (const auto& e : *eqs) {
      ineq.push_back(e);
      ineq.push_back(negated(e));
    }
  auto g = double_description(ineq, a.ambient_rank());
  return canonicalize_cone(g.rays, a.ambient_rank());
}

bool is_smooth_cone(const Cone& c) {
  if (c.is_zero()) return true;
  auto d = snf(IntMatrix::from_columns(c.rays(), c.ambient_rank()));
  if (d.rank() != c.rays().size()) return false;
  for (const auto& f : d.invariant_factors)
    if (f != 1) return false;
  return true;
}

Fan::Fan(std::size_t ambient_rank, std::vector<Cone> maximal_cones)
    : ambient_(ambient_rank), maximal_(std::move(maximal_cones)) {
  if (maximal_.empty()) maximal_.push_back(Cone::zero(ambient_rank));
  std::sort(maximal_.begin(), maximal_.end());
}

Fan Fan::generated_by(std::size_t ambient_rank, std::vector<Cone> cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::vector<Cone> keep;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool below = false;
    for (std::size_t j = 0; j < cones.size() && !below; ++j)
      if (i != j && cones[i].rays().size() < cones[j].rays().size() && is_face_of(cones[i], cones[j])) below = true;
    if (!below) keep.push_back(cones[i]);
  }
  return Fan(ambient_rank, keep);
}

const std::vector<Cone>& Fan::cones() const {
  std::call_once(closure_->once, [this] {
    std::set<Cone> all;
    for (const auto& m : maximal_)
      for (auto& f : faces(m)) all.insert(std::move(f));
    closure_->cones.assign(all.begin(), all.end());
  });
  return closure_->cones;
}

std::vector<Vec> Fan::rays() const {
  std::set<Vec> rs;
  for (const auto& m : maximal_) rs.insert(m.rays().begin(), m.rays().end());
  return {rs.begin(), rs.end()};
}

bool Fan::is_smooth() const {
  for (const auto& m : maximal_)
    if (!is_smooth_cone(m)) return false;
  return true;
}

FanDiagnostics validate_fan(const Fan& f) {
  FanDiagnostics d;
  const auto& ms = f.maximal_cones();
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i].ambient_rank() != f.ambient_rank()) {
      d.valid = false;
      d.problems.push_back("cone " + std::to_string(i + 1) + " does not live in Z^" + std::to_string(f.ambient_rank()));
    }
  if (!d.valid) return d;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const std::string pair = "cones " + std::to_string(i + 1) + " " + ms[i].to_string() + " and " +
                               std::to_string(j + 1) + " " + ms[j].to_string();
      if (is_face_of(ms[i], ms[j]) || is_face_of(ms[j], ms[i])) {
        d.valid = false;
        d.problems.push_back(pair + ": one is a face of the other");
        continue;
      }
      Cone meet = intersect(ms[i], ms[j]);
      if (!is_face_of(meet, ms[i]) || !is_face_of(meet, ms[j])) {
        d.valid = false;
        d.problems.push_back(pair + ": intersection " + meet.to_string() + " is not a common face");
      }
    }
  return d;
}

ImageCone image_cone(const IntMatrix& m, const Cone& c) {
  if (m.cols() != c.ambient_rank()) throw std::invalid_argument("image_cone: dimension mismatch");
  ImageCone out{m.rows(), {}};
  for (const auto& r : c.rays()) out.generators.push_back(m * r);
  return out;
}

PreimageResult preimage_fan(const IntMatrix& m, const Fan& source, const Cone& target_cone) {
  if (m.cols() != source.ambient_rank() || m.rows() != target_cone.ambient_rank())
    throw std::invalid_argument("preimage_fan: dimension mismatch");
  std::vector<Cone> inside;
  for (const auto& c : source.cones()) {
    bool ok = true;
    for (const auto& r : c.rays())
      if (!cone_contains(target_cone, m * r)) {
        ok = false;
        break;
      }
    if (ok) inside.push_back(c);
  }
  PreimageResult out{Fan::generated_by(source.ambient_rank(), inside), std::nullopt};
  if (out.subfan.maximal_cones().size() == 1) out.single_cone = out.subfan.maximal_cones().front();
  return out;
}

bool monoid_iso_on_cone(const IntMatrix& m, const Cone& sigma, const Cone& sigma_prime) {
  if (m.cols() != sigma.ambient_rank() || m.rows() != sigma_prime.ambient_rank())
    throw std::invalid_argument("monoid_iso_on_cone: dimension mismatch");
  std::vector<Vec> imgs;
  for (const auto& r : sigma.rays()) {
    Vec v = m * r;
    if (!cone_contains(sigma_prime, v))
      throw PreconditionViolated("image of " + sigma.to_string() + " is not contained in " + sigma_prime.to_string());
    imgs.push_back(v);
  }
  if (!(canonicalize_cone(imgs, m.rows()) == sigma_prime)) return false;
  if (sigma.is_zero()) return true;
  IntMatrix span = saturate(IntMatrix::from_columns(sigma.rays(), sigma.ambient_rank()));
  auto d = snf(m * span);
  if (d.rank() != span.cols()) return false;
  for (const auto& f : d.invariant_factors)
    if (f != 1) return false;
  return true;
}

ImageCone free_image(const Cone& tau, const FgAbHom& beta) {
  if (beta.source.generator_count() != tau.ambient_rank())
    throw std::invalid_argument("is_unstable: cone and homomorphism have different sources");
  const std::size_t r = beta.target.free_rank();
  ImageCone img{r, {}};
  for (const auto& ray : tau.rays()) {
    Vec v = beta.matrix * ray;
    v.resize(r);
    img.generators.push_back(v);
  }
  return img;
}

bool is_unstable(const Cone& tau, const FgAbHom& beta) { return is_linear_subspace(free_image(tau, beta)); }

}  // namespace toric
