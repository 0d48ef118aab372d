#include "shapereg/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace shapereg;

  CLI::App app{"Shape-regularity metrics and discrete Pareto optimization on triangle meshes"};
  app.require_subcommand(1);

  cli::GenPlateOptions gen;
  auto* cmd_gen = app.add_subcommand("gen-plate", "Generate a rectangular plate mesh");
  cmd_gen->add_option("--nx", gen.nx, "cells along x")->required();
  cmd_gen->add_option("--ny", gen.ny, "cells along y")->required();
  cmd_gen->add_option("-o,--out", gen.out_path, "output mesh file (stdout when omitted)");

  cli::EvalOptions ev;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate the shape-regularity metrics of a gene");
  cmd_eval->add_option("--mesh", ev.mesh_path, "mesh file")->required();
  cmd_eval->add_option("--gene", ev.gene_path, "gene file (one line of 0/1)")->required();
  cmd_eval->add_option("--kind", ev.kind, "gene encoding: triangle or basis");

  cli::RunOptions op;
  auto* cmd_opt = app.add_subcommand("optimize", "Fixed-weight local-search runs from a JSON config");
  cmd_opt->add_option("--config", op.config_path, "run configuration (JSON)")->required();
  cmd_opt->add_option("--out", op.out_dir, "output directory")->required();

  cli::RunOptions pa;
  auto* cmd_pareto = app.add_subcommand("pareto", "Weight-sweep Pareto run from a JSON config");
  cmd_pareto->add_option("--config", pa.config_path, "run configuration (JSON)")->required();
  cmd_pareto->add_option("--out", pa.out_dir, "output directory")->required();

  cli::RenderOptions re;
  auto* cmd_render = app.add_subcommand("render", "Render a gene or a frontier to SVG");
  cmd_render->add_option("--mesh", re.mesh_path, "mesh file (gene mode)");
  cmd_render->add_option("--gene", re.gene_path, "gene file (gene mode)");
  cmd_render->add_option("--kind", re.kind, "gene encoding: triangle or basis");
  cmd_render->add_option("--frontier", re.frontier_path, "frontier.json (scatter mode)");
  cmd_render->add_option("--axis-x", re.axis_x, "objective column for x (scatter mode)");
  cmd_render->add_option("--axis-y", re.axis_y, "objective column for y (scatter mode)");
  cmd_render->add_option("-o,--out", re.out_path, "output SVG file")->required();
  cmd_render->add_option("--canvas", re.style.canvas, "canvas size in px");
  cmd_render->add_option("--enabled-fill", re.style.enabled_fill, "fill for enabled triangles");
  cmd_render->add_option("--disabled-fill", re.style.disabled_fill, "fill for disabled triangles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUser;
  }

  if (*cmd_gen) return cli::run_gen_plate(gen, std::cout, std::cerr);
  if (*cmd_eval) return cli::run_eval(ev, std::cout, std::cerr);
  if (*cmd_opt) return cli::run_optimize(op, std::cout, std::cerr);
  if (*cmd_pareto) return cli::run_pareto(pa, std::cout, std::cerr);
  if (*cmd_render) return cli::run_render(re, std::cout, std::cerr);
  return cli::kExitUser;
}
