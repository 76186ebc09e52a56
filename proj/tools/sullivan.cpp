#include "sullivan/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

#ifndef SULLIVAN_DATA_DIR
#define SULLIVAN_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  using namespace sullivan::cli;
  CLI::App app{"sullivan: minimal models, self-equivalences and group invariants"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string f_presentation = std::string(SULLIVAN_DATA_DIR) + "/presentations/F.grp";
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* model = app.add_subcommand("model", "bigraded model commands");
  model->require_subcommand(1);
  auto* build = model->add_subcommand("build", "build and verify a bigraded model");
  build->add_option("--spec", cfg.spec, "built-in spec name or JSON spec file")->capture_default_str();
  build->add_option("--cap", cfg.cap, "degree cap")->capture_default_str();
  build->add_option("--out", cfg.out, "model JSON output path");
  add_format(build);

  auto* selfeq = app.add_subcommand("selfeq", "construct and check the self-equivalence phi");
  selfeq->add_option("--model", cfg.model_path, "model JSON")->required();
  selfeq->add_option("--out", cfg.out, "morphism JSON output path");
  selfeq->add_option("--report", cfg.report_path, "report output path (default stdout)");
  selfeq->add_option("--emit-inverse", cfg.emit_inverse, "inverse morphism JSON output path");
  add_format(selfeq);

  auto* group = app.add_subcommand("group", "finitely presented groups");
  group->require_subcommand(1);
  auto* abel = group->add_subcommand("abelianize", "abelian invariants of a presentation");
  abel->add_option("file", cfg.presentation, "presentation file")->required();
  abel->add_option("--expect", cfg.expect, "rank=R,torsion=a,b,c");
  abel->add_option("--report", cfg.report_path, "report output path (default stdout)");
  add_format(abel);

  auto* repro = app.add_subcommand("reproduce-theorem4", "build the model, then run the selfeq and group checks");
  repro->add_option("--cap", cfg.cap, "degree cap")->capture_default_str();
  repro->add_option("--out-dir", cfg.out, "artifact directory")->required();
  repro->add_option("--f-presentation", f_presentation, "presentation of F")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kFault;
  }

  if (*build) return cmd_model_build(cfg, std::cout, std::cerr);
  if (*selfeq) return cmd_selfeq(cfg, std::cout, std::cerr);
  if (*abel) return cmd_group(cfg, std::cout, std::cerr);
  if (*repro) return cmd_reproduce(cfg, f_presentation, std::cout, std::cerr);
  return kFault;
}
