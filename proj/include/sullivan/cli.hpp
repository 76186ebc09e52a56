#pragma once

#include "sullivan/serialization.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace sullivan::cli {

enum ExitCode : int { kPass = 0, kFault = 1, kCheckFailed = 2 };

struct RunConfig {
  std::string spec = "wedge-s2-s3-s3";  // built-in name or path to a JSON spec file
  int cap = 12;
  std::string out;                      // output file (or directory for reproduce-theorem4)
  std::string format = "text";          // json | text
  std::string model_path;
  std::string report_path;
  std::string emit_inverse;
  std::string presentation;
  std::optional<std::string> expect;
};

/// Flattens a JSON document to "path: value" lines. Arrays of scalars print on
/// one line so the output diffs cleanly.
inline void render_text(const io::Json& j, const std::string& path, std::string& out) {
  const auto scalar = [](const io::Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, path.empty() ? k : path + "." + k, out);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_primitive(); });
    if (flat) {
      std::string line;
      for (std::size_t i = 0; i < j.size(); ++i) line += (i ? ", " : "") + scalar(j[i]);
      out += path + ": [" + line + "]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  out += path + ": " + scalar(j) + "\n";
}

inline std::string render(const io::Json& j, const std::string& format) {
  if (format == "json") return io::dump(j);
  std::string out;
  render_text(j, "", out);
  return out;
}

inline CohomologySpec resolve_spec(const std::string& source) {
  if (source == "wedge-s2-s3-s3") return CohomologySpec::wedge_s2_s3_s3();
  if (!std::filesystem::exists(source)) throw io::FormatError("unknown spec '" + source + "' (not a built-in name or a file)");
  const io::Json j = io::read_json(source);
  return io::spec_from_json(j.is_object() ? j.at("spec") : j);
}

/// Builds from the classes that fit under the cap and verifies against the
/// full spec, so dropped classes surface as cap-too-small violations.
inline BigradedModel build_for_cap(const CohomologySpec& spec, int cap) {
  CohomologySpec fitting;
  for (const auto& c : spec.classes)
    if (c.degree <= cap) fitting.classes.push_back(c);
  BigradedModel built = build(fitting, cap);
  return BigradedModel(built.cdga(), spec);
}

// --- selfeq ---------------------------------------------------------------

struct SelfeqOutcome {
  bool pass = false;
  io::Json report;
  std::optional<CdgaMorphism> phi;
  std::optional<CdgaMorphism> psi;
};

inline SelfeqOutcome run_selfeq(const BigradedModel& model) {
  SelfeqOutcome out;
  io::Json& r = out.report;

  const VerifyReport vr = verify(model);
  r["model_verified"] = vr.pass;
  if (!vr.pass) {
    r["model_violations"] = io::verify_to_json(model, vr)["violations"];
    r["pass"] = false;
    return out;
  }

  auto with_x = std::make_shared<const CdgaModel>(adjoin_circle(model.cdga()));
  const Algebra& alg = with_x->algebra();
  try {
    out.phi = construct_phi(with_x);
  } catch (const Error& e) {
    r["construction_error"] = e.what();
    r["pass"] = false;
    return out;
  }
  const CdgaMorphism& phi = *out.phi;
  r["construction_error"] = nullptr;

  const int cap = with_x->cap();
  const ESharpReport es = e_sharp_report(phi, cap);
  bool member_all = true;
  for (int m = 0; m <= cap; ++m) member_all = member_all && es.linear_part_identity_up_to >= m;
  r["e_sharp"] = io::e_sharp_to_json(phi, es);
  r["member_for_all_m_up_to_cap"] = member_all;

  bool inverse_ok = false;
  try {
    out.psi = invert(phi);
    const auto id = CdgaMorphism::identity(with_x);
    const bool left = compose(*out.psi, phi) == id;
    const bool right = compose(phi, *out.psi) == id;
    r["inverse"] = io::Json{{"psi_after_phi_is_identity", left}, {"phi_after_psi_is_identity", right}};
    inverse_ok = left && right;
  } catch (const Error& e) {
    r["inverse"] = io::Json{{"error", e.what()}};
  }

  const bool mod_x = is_identity_modulo_circle(phi);
  const bool witness = shows_c3_witness(phi, es);
  r["identity_modulo_circle"] = mod_x;
  r["c3_witness_detected"] = witness;
  if (auto c = alg.find("c3")) {
    r["phi_c3"] = alg.to_string(phi.image(*c));
    r["psi_c3"] = out.psi ? io::Json(alg.to_string(out.psi->image(*c))) : io::Json(nullptr);
  }
  out.pass = es.is_chain_map && member_all && inverse_ok && mod_x && witness;
  r["pass"] = out.pass;
  return out;
}

// --- groups ---------------------------------------------------------------

struct Expectation {
  std::optional<std::size_t> rank;
  std::optional<std::vector<Integer>> torsion;
};

/// "rank=R,torsion=a,b,c": a token containing '=' opens a key, bare tokens
/// extend the torsion list.
inline Expectation parse_expectation(const std::string& text) {
  Expectation e;
  std::string key;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(start, comma - start);
    start = comma + 1;
    std::string value = token;
    if (auto eq = token.find('='); eq != std::string::npos) {
      key = token.substr(0, eq);
      value = token.substr(eq + 1);
      if (key == "torsion") e.torsion.emplace();
      else if (key != "rank") throw io::FormatError("unknown expectation key '" + key + "'");
    }
    if (key.empty()) throw io::FormatError("expectation must start with rank= or torsion=");
    if (value.empty()) {
      if (key == "torsion" && e.torsion->empty()) continue;  // "torsion=" means trivial torsion
      throw io::FormatError("empty value in expectation '" + text + "'");
    }
    try {
      if (key == "rank") {
        if (e.rank) throw io::FormatError("rank given twice");
        std::size_t used = 0;
        const long r = std::stol(value, &used);
        if (used != value.size() || r < 0) throw std::invalid_argument(value);
        e.rank = static_cast<std::size_t>(r);
      } else {
        Integer t(value);
        if (t < 2) throw io::FormatError("torsion coefficients must be >= 2");
        e.torsion->push_back(t);
      }
    } catch (const std::logic_error&) {
      throw io::FormatError("'" + value + "' is not a valid number");
    }
  }
  return e;
}

inline bool meets(const groups::AbelianInvariants& inv, const Expectation& e) {
  if (e.rank && *e.rank != inv.free_rank) return false;
  if (e.torsion && *e.torsion != inv.torsion) return false;
  return true;
}

inline io::Json group_report(const groups::GroupPresentation& pres, const std::optional<Expectation>& expect,
                             const std::optional<std::string>& expect_text) {
  const auto inv = groups::abelian_invariants(pres);
  io::Json r{{"generators", pres.generators.size()}, {"relators", pres.relators.size()}};
  r["invariants"] = io::invariants_to_json(inv);
  r["summary"] = inv.to_string();
  if (expect) {
    r["expected"] = *expect_text;
    r["pass"] = meets(inv, *expect);
  }
  return r;
}

// --- commands -------------------------------------------------------------

namespace detail {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kFault;
  } catch (const groups::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kFault;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kFault;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFault;
  }
}

inline void emit(const io::Json& report, const std::string& path, const std::string& format, std::ostream& out) {
  const std::string text = render(report, format);
  if (path.empty()) out << text;
  else io::write_atomic(path, text);
}

inline void check_format(const std::string& format) {
  if (format != "json" && format != "text") throw io::FormatError("format must be json or text");
}

inline void check_cap(int cap) {
  if (cap < 1) throw io::FormatError("cap must be at least 1");
}

inline BigradedModel load_model(const std::string& path) {
  try {
    return io::model_from_json(io::read_json(path));
  } catch (const io::FormatError&) {
    throw;
  } catch (const Error& e) {
    throw io::FormatError("invalid model '" + path + "': " + e.what());
  }
}

} // namespace detail

inline int cmd_model_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::check_format(cfg.format);
    detail::check_cap(cfg.cap);
    const CohomologySpec spec = resolve_spec(cfg.spec);
    const BigradedModel model = build_for_cap(spec, cfg.cap);
    const VerifyReport vr = verify(model);
    if (!cfg.out.empty()) io::write_atomic(cfg.out, io::dump(io::model_to_json(model)));
    out << render(io::verify_to_json(model, vr), cfg.format);
    return vr.pass ? kPass : kCheckFailed;
  });
}

inline int cmd_selfeq(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::check_format(cfg.format);
    const BigradedModel model = detail::load_model(cfg.model_path);
    const SelfeqOutcome res = run_selfeq(model);
    if (!cfg.out.empty() && res.phi) io::write_atomic(cfg.out, io::dump(io::morphism_to_json(*res.phi)));
    if (!cfg.emit_inverse.empty() && res.psi) {
      io::write_atomic(cfg.emit_inverse, io::dump(io::morphism_to_json(*res.psi)));
    }
    detail::emit(res.report, cfg.report_path, cfg.format, out);
    return res.pass ? kPass : kCheckFailed;
  });
}

inline int cmd_group(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::check_format(cfg.format);
    std::optional<Expectation> expect;
    if (cfg.expect) expect = parse_expectation(*cfg.expect);
    const auto pres = groups::parse(io::read_file(cfg.presentation));
    const io::Json r = group_report(pres, expect, cfg.expect);
    detail::emit(r, cfg.report_path, cfg.format, out);
    return !expect || r["pass"].get<bool>() ? kPass : kCheckFailed;
  });
}

/// Chains the model build into the selfeq and group checks. All artifacts
/// land in the directory cfg.out.
inline int cmd_reproduce(const RunConfig& cfg, const std::filesystem::path& f_presentation, std::ostream& out,
                         std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::check_cap(cfg.cap);
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    if (!std::filesystem::is_directory(dir)) throw io::FormatError("output directory '" + dir.string() + "' does not exist");
    const auto f_pres = groups::parse(io::read_file(f_presentation));

    const BigradedModel model = build_for_cap(CohomologySpec::wedge_s2_s3_s3(), cfg.cap);
    const VerifyReport vr = verify(model);
    io::write_atomic(dir / "model.json", io::dump(io::model_to_json(model)));

    const SelfeqOutcome se = run_selfeq(model);
    if (se.phi) io::write_atomic(dir / "phi.json", io::dump(io::morphism_to_json(*se.phi)));
    if (se.psi) io::write_atomic(dir / "psi.json", io::dump(io::morphism_to_json(*se.psi)));

    const auto g_pres = groups::direct_product_with_z(f_pres, "t");
    const Expectation f_expect = parse_expectation("rank=0,torsion=2,4,4");
    const Expectation g_expect = parse_expectation("rank=1");
    io::Json groups_json{{"F", group_report(f_pres, f_expect, std::string("rank=0,torsion=2,4,4"))},
                         {"G", group_report(g_pres, g_expect, std::string("rank=1"))}};
    const bool groups_ok = groups_json["F"]["pass"].get<bool>() && groups_json["G"]["pass"].get<bool>();

    io::Json report{{"cap", cfg.cap},
                    {"model", io::verify_to_json(model, vr)},
                    {"selfeq", se.report},
                    {"groups", std::move(groups_json)}};
    const bool pass = vr.pass && se.pass && groups_ok;
    report["pass"] = pass;
    io::write_atomic(dir / "report.json", io::dump(report));
    io::write_atomic(dir / "report.txt", render(report, "text"));
    out << "model verify: " << (vr.pass ? "pass" : "FAIL") << '\n'
        << "selfeq: " << (se.pass ? "pass" : "FAIL") << '\n'
        << "groups: " << (groups_ok ? "pass" : "FAIL") << '\n'
        << "overall: " << (pass ? "pass" : "FAIL") << '\n';
    return pass ? kPass : kCheckFailed;
  });
}

} // namespace sullivan::cli
