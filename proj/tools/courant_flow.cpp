#include <iostream>

#include <CLI11.hpp>

#include "courant/cli.hpp"

int main(int argc, char** argv) {
  courant::RunConfig cfg;
  CLI::App app{"Generalized Ricci flow and Poisson-Lie duality checks"};
  app.require_subcommand(1);

  double tol = 0.0;
  const auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");  // -h would clash with --h
    sub->add_option("--backend", cfg.backend, "point or chart")->check(CLI::IsMember({"point", "chart"}));
    sub->add_option("--algebra", cfg.algebra, "built-in algebra, catalog entry or JSON file");
    sub->add_option("--preset", cfg.preset, "background or invariant family");
    sub->add_option("--triple", cfg.triple, "Manin triple for dualize");
    sub->add_option("--e0", cfg.e0, "identity, inline JSON matrix or JSON file");
    sub->add_option("--samples", cfg.samples, "sample points (per side for dualize)");
    sub->add_option("--tol", tol, "override every check tolerance");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--t-end", cfg.t_end, "flow end time");
    sub->add_option("--h", cfg.h, "RK4 step");
    sub->add_option("--out", cfg.out, "output directory");
  };
  for (const char* name : {"verify", "gric", "flow", "dualize", "list"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    sub->callback([&cfg, name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (auto* sub : app.get_subcommands())
    if (sub->count("--tol") > 0) cfg.tol = tol;
  try {
    return courant::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
