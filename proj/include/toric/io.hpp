#pragma once

#include <string>

#include <json.hpp>

#include "toric/constructions.hpp"
#include "toric/errors.hpp"
#include "toric/stacky.hpp"

namespace toric {

using Json = nlohmann::ordered_json;

// Malformed input: names the offending field and the violated invariant.
class InputError : public Error {
 public:
  InputError(const std::string& field, const std::string& what) : Error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Json load_json_file(const std::string& path);

// Integers are written as JSON numbers when they fit in 64 bits, as decimal strings otherwise.
Json to_json(const Integer& x);
Json to_json(const Vec& v);
Json to_json(const FgAbGroup& g);
Json to_json(const Cone& c);
Json to_json(const Fan& f);
Json to_json(const StackyFan& sf);
Json to_json(const StackyMorphism& m);
Json to_json(const QuotientPresentation& q);
Json to_json(const IndexSet& s);
// One entry per ambient coordinate.
Json weights_json(const DiagGroupPresentation& g);

Integer integer_from_json(const Json& j, const std::string& field);
Vec vec_from_json(const Json& j, const std::string& field, std::size_t length);
Fan fan_from_json(const Json& j, const std::string& field, std::size_t ambient_rank);
FgAbGroup group_from_json(const Json& j, const std::string& field);

// StackyFanFile. "target" and "beta_images" may be omitted (identity map).
// Only structure is checked here; fan invariants are left to validate_stacky_fan.
StackyFan stacky_fan_from_json(const Json& j, const std::string& field = "");
StackyMorphism morphism_from_json(const Json& j);

// {"rank": d, "fan": {...}, "beta_images": [...]}: a fan on N = Z^d and images in N.
struct FantastackInput {
  Fan fan;
  std::vector<Vec> beta_images;
};
FantastackInput fantastack_input_from_json(const Json& j);
Json to_json(const FantastackInput& f);

}  // namespace toric
