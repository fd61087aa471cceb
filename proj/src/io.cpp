#include "toric/io.hpp"

#include <fstream>
#include <sstream>

namespace toric {

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& j, const std::string& prefix, const std::string& key) {
  if (!j.is_object()) throw InputError(prefix.empty() ? "<root>" : prefix, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(join(prefix, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array");
  return j;
}

std::size_t count_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path, std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const FgAbGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion()) t.push_back(to_json(d));
  return Json{{"free_rank", g.free_rank()}, {"torsion", t}};
}

Json to_json(const Cone& c) {
  Json a = Json::array();
  for (const auto& r : c.rays()) a.push_back(to_json(r));
  return a;
}

Json to_json(const Fan& f) {
  Json a = Json::array();
  for (const auto& c : f.maximal_cones()) a.push_back(to_json(c));
  return Json{{"maximal_cones", a}};
}

Json to_json(const StackyFan& sf) {
  Json t = Json::array();
  for (const auto& d : sf.target.torsion()) t.push_back(to_json(d));
  Json images = Json::array();
  for (const auto& v : sf.beta_images) images.push_back(to_json(v));
  return Json{{"lattice_rank", sf.lattice_rank()},
              {"fan", to_json(sf.fan)},
              {"target", Json{{"rank", sf.target.free_rank()}, {"torsion", t}}},
              {"beta_images", images}};
}

Json to_json(const StackyMorphism& m) {
  Json big = Json::array(), small = Json::array();
  for (const auto& c : m.Phi.column_list()) big.push_back(to_json(c));
  for (const auto& c : m.phi.matrix.column_list()) small.push_back(to_json(c));
  return Json{{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"Phi_images", big}, {"phi_images", small}};
}

Json to_json(const IndexSet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

Json weights_json(const DiagGroupPresentation& g) {
  Json a = Json::array();
  for (std::size_t i = 0; i < g.weights.cols(); ++i) a.push_back(to_json(g.weight(i)));
  return a;
}

Json to_json(const QuotientPresentation& q) {
  Json removed = Json::array(), monomials = Json::array();
  for (const auto& s : q.removed_locus) removed.push_back(to_json(s));
  for (const auto& s : q.irrelevant_monomials) monomials.push_back(to_json(s));
  return Json{{"ambient_dim", q.ambient_dim},
              {"removed_locus", removed},
              {"irrelevant_monomials", monomials},
              {"g0_rank", q.g0_rank},
              {"group", to_json(q.group.character_group)},
              {"weights", weights_json(q.group)},
              {"fixed_coordinates", to_json(q.fixed_coordinates)},
              {"notation", q.notation()}};
}

Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw InputError(field, "expected an integer");
}

Vec vec_from_json(const Json& j, const std::string& field, std::size_t length) {
  array(j, field);
  if (j.size() != length)
    throw InputError(field, "expected " + std::to_string(length) + " coordinates, got " + std::to_string(j.size()));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], at(field, i)));
  return v;
}

Fan fan_from_json(const Json& j, const std::string& field, std::size_t ambient_rank) {
  const std::string mf = join(field, "maximal_cones");
  const Json& cones = array(member(j, field, "maximal_cones"), mf);
  std::vector<Cone> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string cf = at(mf, i);
    array(cones[i], cf);
    std::vector<Vec> gens;
    for (std::size_t k = 0; k < cones[i].size(); ++k) gens.push_back(vec_from_json(cones[i][k], at(cf, k), ambient_rank));
    try {
      out.push_back(canonicalize_cone(gens, ambient_rank));
    } catch (const NotStronglyConvex& e) {
      throw InputError(cf, std::string("cone is not strongly convex (") + e.what() + ")");
    }
  }
  return Fan(ambient_rank, out);
}

FgAbGroup group_from_json(const Json& j, const std::string& field) {
  std::size_t r = count_from_json(member(j, field, "rank"), join(field, "rank"));
  std::vector<Integer> torsion;
  if (j.contains("torsion")) {
    const std::string tf = join(field, "torsion");
    array(j["torsion"], tf);
    for (std::size_t i = 0; i < j["torsion"].size(); ++i) torsion.push_back(integer_from_json(j["torsion"][i], at(tf, i)));
  }
  try {
    return FgAbGroup(r, torsion);
  } catch (const std::invalid_argument& e) {
    throw InputError(join(field, "torsion"), e.what());
  }
}

StackyFan stacky_fan_from_json(const Json& j, const std::string& field) {
  std::size_t l = count_from_json(member(j, field, "lattice_rank"), join(field, "lattice_rank"));
  Fan fan = fan_from_json(member(j, field, "fan"), join(field, "fan"), l);
  if (!j.contains("target") && !j.contains("beta_images")) return StackyFan::toric_variety(fan);
  FgAbGroup target = group_from_json(member(j, field, "target"), join(field, "target"));
  const std::string bf = join(field, "beta_images");
  const Json& imgs = array(member(j, field, "beta_images"), bf);
  if (imgs.size() != l)
    throw InputError(bf, "expected " + std::to_string(l) + " images (one per basis vector), got " +
                             std::to_string(imgs.size()));
  std::vector<Vec> images;
  for (std::size_t i = 0; i < imgs.size(); ++i) images.push_back(vec_from_json(imgs[i], at(bf, i), target.generator_count()));
  return StackyFan(fan, target, images);
}

StackyMorphism morphism_from_json(const Json& j) {
  StackyFan src = stacky_fan_from_json(member(j, "", "source"), "source");
  StackyFan tgt = stacky_fan_from_json(member(j, "", "target"), "target");
  const Json& big = array(member(j, "", "Phi_images"), "Phi_images");
  if (big.size() != src.lattice_rank())
    throw InputError("Phi_images", "expected " + std::to_string(src.lattice_rank()) + " images");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < big.size(); ++i) cols.push_back(vec_from_json(big[i], at("Phi_images", i), tgt.lattice_rank()));
  const Json& small = array(member(j, "", "phi_images"), "phi_images");
  if (small.size() != src.target.generator_count())
    throw InputError("phi_images", "expected " + std::to_string(src.target.generator_count()) + " images");
  std::vector<Vec> phi;
  for (std::size_t i = 0; i < small.size(); ++i)
    phi.push_back(vec_from_json(small[i], at("phi_images", i), tgt.target.generator_count()));
  return StackyMorphism{src, tgt, IntMatrix::from_columns(cols, tgt.lattice_rank()),
                        FgAbHom::from_images(src.target, tgt.target, phi)};
}

FantastackInput fantastack_input_from_json(const Json& j) {
  std::size_t d = count_from_json(member(j, "", "rank"), "rank");
  FantastackInput f{fan_from_json(member(j, "", "fan"), "fan", d), {}};
  const Json& imgs = array(member(j, "", "beta_images"), "beta_images");
  for (std::size_t i = 0; i < imgs.size(); ++i) f.beta_images.push_back(vec_from_json(imgs[i], at("beta_images", i), d));
  return f;
}

Json to_json(const FantastackInput& f) {
  Json images = Json::array();
  for (const auto& v : f.beta_images) images.push_back(to_json(v));
  return Json{{"rank", f.fan.ambient_rank()}, {"fan", to_json(f.fan)}, {"beta_images", images}};
}

}  // namespace toric
