#include "toric/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "toric/io.hpp"
#include "toric/svg.hpp"

namespace toric::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string zero;
  bool json = false;
  bool fantastack = false;
};

// Raised for bad command-line values; reported like malformed input.
struct UsageError : Error {
  using Error::Error;
};

IndexSet parse_index_list(const std::string& text, std::size_t n) {
  IndexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 1 || static_cast<std::size_t>(v) > n)
      throw UsageError("--zero: '" + item + "' is not a coordinate index in 1.." + std::to_string(n));
    out.push_back(static_cast<std::size_t>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StackyFan load_stacky_fan(const Json& j) {
  StackyFan sf = stacky_fan_from_json(j);
  auto d = validate_stacky_fan(sf);
  if (!d.valid) throw InputError(d.problems.front().substr(0, d.problems.front().find(':')), d.problems.front());
  return sf;
}

StackyMorphism load_morphism(const Json& j) {
  StackyMorphism m = morphism_from_json(j);
  auto d = validate_morphism(m);
  if (!d.valid) throw InputError("morphism", d.problems.front());
  return m;
}

Json cone_or_null(const std::optional<Cone>& c) { return c ? to_json(*c) : Json(nullptr); }

Json presentation_or_null(const StackyFan& sf, const IndexSet& fixed = {}) {
  try {
    return to_json(present_quotient(sf, fixed));
  } catch (const NotSubfanOfAffineSpace&) {
    return Json(nullptr);
  }
}

Json gbeta_report(const Json& in) {
  auto g = gbeta(load_stacky_fan(in));
  return Json{{"g0_rank", g.g0_rank}, {"group", to_json(g.g1.character_group)}, {"weights", weights_json(g.g1)}};
}

Json validate_report(const Json& in) {
  StackyFan sf = stacky_fan_from_json(in);
  auto d = validate_stacky_fan(sf);
  return Json{{"valid", d.valid}, {"strict", d.valid && d.strict}, {"problems", d.problems}};
}

Json canonical_json(const CanonicalStack& c) {
  Json rays = Json::array(), big = Json::array();
  for (const auto& r : c.rays) rays.push_back(to_json(r));
  for (const auto& col : c.morphism.Phi.column_list()) big.push_back(to_json(col));
  return Json{{"stacky_fan", to_json(c.sf)},
              {"rays", rays},
              {"Phi_images", big},
              {"presentation", presentation_or_null(c.sf)}};
}

Json gms_check_report(const Json& in) {
  auto r = gms_check(load_morphism(in));
  std::string label = condition_label(r.failing_condition);
  return Json{{"verdict", r.verdict ? "yes" : "no"},
              {"failing_condition", label.empty() ? Json(nullptr) : Json(label)},
              {"tau", cone_or_null(r.tau)},
              {"witness_cone", cone_or_null(r.witness)}};
}

Json gms_report(const Json& in) {
  StackyFan sf = load_stacky_fan(in);
  auto r = gms_construct(sf);
  std::string label = condition_label(r.failing_condition);
  Json out{{"verdict", r.verdict ? "yes" : "no"},
           {"failing_condition", label.empty() ? Json(nullptr) : Json(label)},
           {"tau", cone_or_null(r.tau)}};
  if (r.verdict) {
    Json big = Json::array(), small = Json::array();
    for (const auto& c : r.morphism->Phi.column_list()) big.push_back(to_json(c));
    for (const auto& c : r.morphism->phi.matrix.column_list()) small.push_back(to_json(c));
    out["gms_fan"] = to_json(*r.gms_fan);
    out["lattice_rank"] = r.gms_fan->ambient_rank();
    out["Phi_images"] = big;
    out["phi_images"] = small;
  } else {
    out["gms_fan"] = nullptr;
    out["lattice_rank"] = nullptr;
    out["Phi_images"] = nullptr;
    out["phi_images"] = nullptr;
  }
  return out;
}

Json iso_report(const Json& in) {
  auto r = is_isomorphism(load_morphism(in));
  return Json{{"isomorphism", r.isomorphism},
              {"failing_condition", r.failing_condition ? Json(r.failing_condition) : Json(nullptr)},
              {"witness_cone", cone_or_null(r.witness)}};
}

Json unstable_report(const Json& in) {
  StackyFan sf = load_stacky_fan(in);
  FgAbHom b = sf.beta();
  std::vector<Cone> unstable;
  for (const auto& c : sf.fan.cones())
    if (is_unstable(c, b)) unstable.push_back(c);
  Json all = Json::array(), maximal = Json::array();
  for (const auto& c : unstable) {
    all.push_back(to_json(c));
    bool top = std::none_of(unstable.begin(), unstable.end(),
                            [&](const Cone& o) { return !(o == c) && is_face_of(c, o); });
    if (top) maximal.push_back(to_json(c));
  }
  return Json{{"unstable_cones", all}, {"maximal_unstable_cones", maximal}};
}

Json moduli_report(const Json& in, const Options& opt) {
  StackyFan sf = load_stacky_fan(in);
  auto m = moduli_description(sf, parse_index_list(opt.zero, sf.lattice_rank()));
  Json lin = Json::array(), inter = Json::array();
  for (const auto& v : m.linear_relations) lin.push_back(to_json(v));
  for (const auto& s : m.intersection_relations) inter.push_back(to_json(s));
  return Json{{"n", m.n},
              {"linear_relations", lin},
              {"intersection_relations", inter},
              {"forced_zero_sections", to_json(m.forced_zero_sections)}};
}

Json reduce_report(const Json& in) {
  auto r = reduce_nonstrict(load_stacky_fan(in));
  return Json{{"stacky_fan", to_json(r.strict_sf)},
              {"substack_coordinates", to_json(r.substack_coordinates)},
              {"presentation", presentation_or_null(r.strict_sf, r.substack_coordinates)}};
}

Json split_report(const Json& in) {
  auto r = split_torus_factor(load_stacky_fan(in));
  return Json{{"stacky_fan", to_json(r.sf1)}, {"bg_m_rank", r.bg_m_rank}};
}

Json gerbe_report(const Json& in, const Options& opt) {
  StackyFan sf = load_stacky_fan(in);
  auto g = gerbe_decomposition(sf, parse_index_list(opt.zero, sf.lattice_rank()));
  Json roots = Json::array();
  for (const auto& r : g.roots)
    roots.push_back(Json{{"coordinate", r.coordinate}, {"b", to_json(r.b)}, {"K", to_json(r.exponent)}});
  return Json{{"bg_m_rank", g.bg_m_rank},
              {"roots", roots},
              {"base", to_json(g.base)},
              {"base_coordinates", to_json(g.base_coordinates)}};
}

std::string render(const Json& in, const Options& opt) {
  if (opt.fantastack) {
    auto f = fantastack_input_from_json(in);
    return render_fan_svg(f.fan, f.beta_images);
  }
  return render_fan_svg(load_stacky_fan(in).fan);
}

std::string text_report(const Json& report) {
  std::ostringstream os;
  for (const auto& [key, value] : report.items()) {
    os << key << ": ";
    if (value.is_string())
      os << value.get<std::string>();
    else
      os << value.dump();
    os << '\n';
  }
  return os.str();
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"validate", "check a stacky fan file"},
    {"gbeta", "group G_beta and the weights on the coordinates"},
    {"present", "quotient presentation of a stacky fan on a subfan of A^n"},
    {"fantastack", "fantastack of a fan and images in N"},
    {"canonical", "canonical smooth stack over a stacky fan"},
    {"cox", "Cox presentation of a toric variety"},
    {"unstable", "unstable cones of a stacky fan"},
    {"iso", "decide whether a stacky morphism induces an isomorphism"},
    {"gms-check", "decide whether a morphism to a toric variety is a good moduli space"},
    {"gms", "construct the toric-variety good moduli space if it exists"},
    {"moduli", "moduli description of a smooth toric stack"},
    {"reduce", "strict stacky fan presenting a non-strict one as a closed substack"},
    {"split", "split off the BG_m factors"},
    {"gerbe", "root-gerbe description of a closed substack"},
    {"render", "SVG picture of a 2D fan"},
};

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult res;
  CLI::App app{"Toric stacks from stacky fans", "toricstack"};
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : kCommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-i,--input", opt.input, "input JSON file")->required();
    sub->add_option("-o,--output", opt.output, "write the report to this file");
    sub->add_flag("--json", opt.json, "machine-readable output");
    if (name == "moduli" || name == "gerbe") {
      auto* z = sub->add_option("--zero", opt.zero, "comma-separated 1-based coordinates");
      if (name == "gerbe") z->required();
    }
    if (name == "render") sub->add_flag("--fantastack", opt.fantastack, "input is a fantastack file; label the images");
    subs[name] = sub;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = kInputError;
    res.err = "toricstack: " + std::string(e.what()) + "\n";
    return res;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  std::string text;
  try {
    Json in = load_json_file(opt.input);
    if (command == "render") {
      text = render(in, opt);
    } else {
      Json report;
      if (command == "validate") {
        report = validate_report(in);
        if (!report["valid"].get<bool>()) res.exit_code = kInputError;
      } else if (command == "gbeta") {
        report = gbeta_report(in);
      } else if (command == "present") {
        report = to_json(present_quotient(load_stacky_fan(in)));
      } else if (command == "fantastack") {
        auto f = fantastack_input_from_json(in);
        auto fs = fantastack(f.fan, f.beta_images);
        report = Json{{"stacky_fan", to_json(fs.sf)}, {"presentation", to_json(fs.presentation)}};
      } else if (command == "canonical") {
        report = canonical_json(canonical_stack(load_stacky_fan(in)));
      } else if (command == "cox") {
        report = canonical_json(cox_presentation(load_stacky_fan(in).fan));
      } else if (command == "unstable") {
        report = unstable_report(in);
      } else if (command == "iso") {
        report = iso_report(in);
      } else if (command == "gms-check") {
        report = gms_check_report(in);
      } else if (command == "gms") {
        report = gms_report(in);
      } else if (command == "moduli") {
        report = moduli_report(in, opt);
      } else if (command == "reduce") {
        report = reduce_report(in);
      } else if (command == "split") {
        report = split_report(in);
      } else if (command == "gerbe") {
        report = gerbe_report(in, opt);
      }
      text = opt.json ? report.dump() + "\n" : text_report(report);
      if (res.exit_code != kOk) {
        for (const auto& p : report["problems"]) res.err += "toricstack: " + opt.input + ": " + p.get<std::string>() + "\n";
      }
    }
  } catch (const InputError& e) {
    res.exit_code = kInputError;
    res.err = "toricstack: " + opt.input + ": " + e.what() + "\n";
    return res;
  } catch (const UsageError& e) {
    res.exit_code = kInputError;
    res.err = "toricstack: " + std::string(e.what()) + "\n";
    return res;
  } catch (const Error& e) {
    res.exit_code = kDomainError;
    res.err = "toricstack: " + opt.input + ": " + e.what() + "\n";
    return res;
  }

  if (opt.output.empty()) {
    res.out = std::move(text);
  } else {
    std::ofstream f(opt.output, std::ios::binary);
    if (!f) {
      res.exit_code = kInputError;
      res.err = "toricstack: cannot write " + opt.output + "\n";
      return res;
    }
    f << text;
  }
  return res;
}

}  // namespace toric::cli
