#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/stacky.hpp"

namespace toric {

struct Fantastack {
  StackyFan sf;
  QuotientPresentation presentation;
};

// Throws FantastackPreconditionViolated naming the failing condition.
Fantastack fantastack(const Fan& sigma, const std::vector<Vec>& beta_images);

struct CanonicalStack {
  StackyFan sf;
  StackyMorphism morphism;
  std::vector<Vec> rays;  // ray of the base fan behind each ray coordinate, in coordinate order
};

CanonicalStack canonical_stack(const StackyFan& sf);
CanonicalStack cox_presentation(const Fan& sigma);

struct IsoResult {
  bool isomorphism = false;
  int failing_condition = 0;  // 1, 2 or 3; 0 when the morphism is an isomorphism
  std::optional<Cone> witness;
};

// Throws PreconditionViolated unless both cokernels are finite.
IsoResult is_isomorphism(const StackyMorphism& m);

enum class GmsCondition { none, preimage, unstable, surjective, finite_kernel, unique_unstable, fan_map };

// "1".."4" for the criterion, "i"/"ii" for the construction; empty for none.
std::string condition_label(GmsCondition c);

struct GmsResult {
  bool verdict = false;
  GmsCondition failing_condition = GmsCondition::none;
  std::optional<Cone> tau;
  std::optional<Cone> witness;
  std::optional<Fan> gms_fan;              // on N'
  std::optional<StackyMorphism> morphism;  // to the toric variety of gms_fan
};

GmsResult gms_check(const StackyMorphism& m);
GmsResult gms_construct(const StackyFan& sf);

struct ModuliDescription {
  std::size_t n = 0;
  std::vector<Vec> linear_relations;
  std::vector<IndexSet> intersection_relations;
  IndexSet forced_zero_sections;
};

ModuliDescription moduli_description(const StackyFan& sf, const IndexSet& forced_zero = {});

struct GerbeRoot {
  std::size_t coordinate = 0;  // 1-based, in the original indexing
  Integer b;
  Vec exponent;  // K = product of L_j^exponent_j over base coordinates
};

struct GerbeData {
  std::size_t bg_m_rank = 0;
  std::vector<GerbeRoot> roots;
  StackyFan base;
  IndexSet base_coordinates;
};

GerbeData gerbe_decomposition(const StackyFan& sf, const IndexSet& zero_coordinates);

}  // namespace toric
