#pragma once

#include "sullivan/bigraded_model.hpp"
#include "sullivan/presentations.hpp"
#include "sullivan/selfeq.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace sullivan::io {

using Json = nlohmann::ordered_json;

/// Raised for unreadable or malformed input files.
class FormatError : public Error {
public:
  using Error::Error;
};

// Terms in canonical (lexicographic monomial) order; coefficients as "p/q".
inline Json terms_to_json(const Algebra& alg, const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json mono = Json::array();
    for (const auto& f : m.factors) mono.push_back(Json::array({alg.generator(f.gen).name, f.exp}));
    terms.push_back(Json{{"coef", to_fraction_string(c)}, {"mono", std::move(mono)}});
  }
  return terms;
}

inline Polynomial terms_from_json(const Algebra& alg, const Json& terms) {
  if (!terms.is_array()) throw FormatError("polynomial must be a list of terms");
  Polynomial p;
  for (const auto& t : terms) {
    if (!t.contains("coef") || !t.contains("mono")) throw FormatError("term needs 'coef' and 'mono'");
    if (!t["coef"].is_string()) throw FormatError("coefficients must be strings \"p/q\"");
    const Rational c = parse_fraction(t["coef"].get<std::string>());
    std::vector<Factor> factors;
    for (const auto& f : t["mono"]) {
      if (!f.is_array() || f.size() != 2) throw FormatError("monomial factors are [name, exponent] pairs");
      const auto id = alg.find(f[0].get<std::string>());
      if (!id) throw FormatError("unknown generator '" + f[0].get<std::string>() + "'");
      const long e = f[1].get<long>();
      if (e < 1) throw FormatError("exponents must be positive");
      factors.push_back(Factor{*id, static_cast<std::uint32_t>(e)});
    }
    const auto normal = alg.normalize(factors);
    if (normal) p.add_term(normal->monomial, c * normal->sign);
  }
  return p;
}

inline Json spec_to_json(const CohomologySpec& spec) {
  Json out = Json::array();
  for (const auto& c : spec.classes) out.push_back(Json{{"name", c.name}, {"degree", c.degree}});
  return out;
}

inline CohomologySpec spec_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("spec must be a list of {name, degree}");
  CohomologySpec spec;
  for (const auto& c : j) {
    if (!c.contains("name") || !c.contains("degree")) throw FormatError("spec entries need 'name' and 'degree'");
    spec.classes.push_back({c["name"].get<std::string>(), c["degree"].get<int>()});
  }
  spec.validate();
  return spec;
}

inline Json model_to_json(const BigradedModel& model) {
  const Algebra& alg = model.algebra();
  Json gens = Json::array();
  for (const auto& g : alg.generators()) {
    gens.push_back(Json{{"name", g.name},
                        {"degree", g.degree},
                        {"stage", g.stage},
                        {"diff", terms_to_json(alg, model.cdga().d(g.id))}});
  }
  return Json{{"cap", model.cap()}, {"spec", spec_to_json(model.spec())}, {"generators", std::move(gens)}};
}

inline BigradedModel model_from_json(const Json& j) {
  try {
    const int cap = j.at("cap").get<int>();
    CohomologySpec spec = spec_from_json(j.at("spec"));
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
      gens.push_back(Generator{0, g.at("name").get<std::string>(), g.at("degree").get<int>(),
                               g.at("stage").get<int>(), false});
    }
    Algebra alg(std::move(gens), cap);
    std::vector<Polynomial> d;
    for (const auto& g : j.at("generators")) d.push_back(terms_from_json(alg, g.at("diff")));
    return BigradedModel(CdgaModel(std::move(alg), std::move(d)), std::move(spec));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model JSON: ") + e.what());
  }
}

inline Json morphism_to_json(const CdgaMorphism& f) {
  const Algebra& alg = f.algebra();
  Json images = Json::object();
  for (const auto& g : alg.generators()) images[g.name] = terms_to_json(alg, f.image(g.id));
  Json out{{"cap", alg.cap()}};
  if (auto x = alg.circle()) out["circle"] = alg.generator(*x).name;
  out["images"] = std::move(images);
  return out;
}

inline CdgaMorphism morphism_from_json(const Json& j, std::shared_ptr<const CdgaModel> model) {
  try {
    CdgaMorphism f(model);
    const Algebra& alg = model->algebra();
    for (const auto& [name, terms] : j.at("images").items()) {
      const auto id = alg.find(name);
      if (!id) throw FormatError("morphism image for unknown generator '" + name + "'");
      f.set_image(*id, terms_from_json(alg, terms));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed morphism JSON: ") + e.what());
  }
}

inline Json vector_to_json(const linalg::Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_fraction_string(q));
  return out;
}

inline Json verify_to_json(const BigradedModel& model, const VerifyReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"check", to_string(v.check)}, {"degree", v.degree}, {"message", v.message}});
  }
  return Json{{"pass", r.pass},
              {"cap", model.cap()},
              {"generator_counts", model.generator_counts()},
              {"cohomology_dims", r.cohomology_dims},
              {"expected_dims", r.expected_dims},
              {"d_squared_unverifiable", r.d_squared_unverifiable.size()},
              {"violations", std::move(violations)}};
}

inline Json e_sharp_to_json(const CdgaMorphism& phi, const ESharpReport& r) {
  const Algebra& alg = phi.algebra();
  Json moved = Json::array();
  for (const auto& mc : r.cohomology_moved_classes) {
    moved.push_back(Json{{"degree", mc.degree},
                         {"index", mc.index},
                         {"class", mc.representative},
                         {"image", vector_to_json(mc.image)},
                         {"image_text", mc.image_text}});
  }
  Json unverifiable = Json::array();
  for (GenId g : r.chain.unverifiable) unverifiable.push_back(alg.generator(g).name);
  return Json{{"m", r.m},
              {"is_member", r.is_member},
              {"is_chain_map", r.is_chain_map},
              {"chain_map_first_failure",
               r.chain.first_failure ? Json(alg.generator(*r.chain.first_failure).name) : Json(nullptr)},
              {"chain_map_unverifiable", std::move(unverifiable)},
              {"linear_part_identity_up_to", r.linear_part_identity_up_to},
              {"cohomology_dims", r.cohomology_dims},
              {"cohomology_bases", r.cohomology_bases},
              {"cohomology_moved_classes", std::move(moved)}};
}

inline Json invariants_to_json(const groups::AbelianInvariants& inv) {
  Json torsion = Json::array();
  for (const auto& t : inv.torsion) torsion.push_back(t.get_str());
  return Json{{"free_rank", inv.free_rank}, {"torsion", std::move(torsion)}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

/// Writes to a sibling temporary file, then renames it over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::is_directory(dir)) throw FormatError("output directory '" + dir.string() + "' does not exist");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw FormatError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw FormatError("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

} // namespace sullivan::io
