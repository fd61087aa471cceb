#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "toric/errors.hpp"
#include "toric/fgab.hpp"
#include "toric/matrix.hpp"

namespace toric {

// Generators of {y : a.y >= 0 for all a}: the cone is span(lineality) + cone(rays).
struct ConeGenerators {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;
};

// Exact double description. Rays are primitive and extreme modulo the lineality space.
ConeGenerators double_description(const std::vector<Vec>& inequalities, std::size_t dim);

class Cone {
 public:
  Cone() = default;
  static Cone zero(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<Vec>& rays() const { return rays_; }
  std::size_t dimension() const;
  bool is_zero() const { return rays_.empty(); }

  // Normals y with y.x >= 0 on the cone, one per facet.
  const std::vector<Vec>& facet_normals() const;
  // Basis of the orthogonal complement of the span.
  const std::vector<Vec>& equations() const;

  std::string to_string() const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.ambient_ == b.ambient_ && a.rays_ == b.rays_; }
  friend bool operator<(const Cone& a, const Cone& b);

 private:
  struct Dual {
    std::once_flag once;
    std::vector<Vec> facets;
    std::vector<Vec> equations;
  };
  Cone(std::size_t ambient, std::vector<Vec> rays);
  void ensure_dual() const;

  std::size_t ambient_ = 0;
  std::vector<Vec> rays_;
  std::shared_ptr<Dual> dual_ = std::make_shared<Dual>();

  friend Cone canonicalize_cone(const std::vector<Vec>&, std::size_t);
  friend std::vector<Cone> faces(const Cone&);
};

struct ImageCone {
  std::size_t ambient_rank = 0;
  std::vector<Vec> generators;
};

// Throws NotStronglyConvex when the generated cone contains a line.
Cone canonicalize_cone(const std::vector<Vec>& generators, std::size_t ambient_rank);

bool cone_contains(const Cone& c, const Vec& v, bool relative_interior = false);
bool cone_contains(const Cone& c, const std::vector<Rational>& v, bool relative_interior = false);
bool cone_contains(const ImageCone& c, const Vec& v, bool relative_interior = false);
bool cone_contains(const ImageCone& c, const std::vector<Rational>& v, bool relative_interior = false);

// All faces, the zero cone and c itself included; sorted by dimension, then rays.
std::vector<Cone> faces(const Cone& c);
bool is_face_of(const Cone& f, const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
bool is_smooth_cone(const Cone& c);
bool is_linear_subspace(const ImageCone& c);

class Fan {
 public:
  Fan() = default;
  Fan(std::size_t ambient_rank, std::vector<Cone> maximal_cones);
  // Keeps only the cones that are not faces of other cones.
  static Fan generated_by(std::size_t ambient_rank, std::vector<Cone> cones);
  static Fan trivial(std::size_t ambient_rank) { return Fan(ambient_rank, {Cone::zero(ambient_rank)}); }

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<Cone>& maximal_cones() const { return maximal_; }
  // Face closure; computed once per value.
  const std::vector<Cone>& cones() const;
  std::vector<Vec> rays() const;
  bool is_smooth() const;

  friend bool operator==(const Fan& a, const Fan& b) { return a.ambient_ == b.ambient_ && a.maximal_ == b.maximal_; }

 private:
  struct Closure {
    std::once_flag once;
    std::vector<Cone> cones;
  };
  std::size_t ambient_ = 0;
  std::vector<Cone> maximal_;
  std::shared_ptr<Closure> closure_ = std::make_shared<Closure>();
};

struct FanDiagnostics {
  bool valid = true;
  std::vector<std::string> problems;
};

FanDiagnostics validate_fan(const Fan& f);

ImageCone image_cone(const IntMatrix& m, const Cone& c);

struct PreimageResult {
  Fan subfan;
  std::optional<Cone> single_cone;
};

PreimageResult preimage_fan(const IntMatrix& m, const Fan& source, const Cone& target_cone);

// Throws PreconditionViolated if m does not map sigma into sigma_prime.
bool monoid_iso_on_cone(const IntMatrix& m, const Cone& sigma, const Cone& sigma_prime);

bool is_unstable(const Cone& tau, const FgAbHom& beta);

// Images of the rays in N / N_tor.
ImageCone free_image(const Cone& tau, const FgAbHom& beta);

}  // namespace toric
