#pragma once

#include "shapereg/optimize.hpp"
#include "shapereg/svg.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace shapereg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 2;  // bad input or configuration
inline constexpr int kExitIo = 3;    // output could not be written

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenPlateOptions {
  int nx = 1;
  int ny = 1;
  std::string out_path;  // empty: stdout
};

struct EvalOptions {
  std::string mesh_path;
  std::string gene_path;
  std::string kind = "triangle";
};

// optimize / pareto read a JSON run config; see parse_run_config in cli.cpp
// and the README for the schema.
struct RunOptions {
  std::string config_path;
  std::string out_dir;
};

struct RenderOptions {
  std::string mesh_path;
  std::string gene_path;
  std::string kind = "triangle";
  std::string frontier_path;  // frontier scatter mode when set
  std::string out_path;
  int axis_x = 0;
  int axis_y = 1;
  RenderStyle style;
};

int run_gen_plate(const GenPlateOptions& opt, std::ostream& out, std::ostream& err);
int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int run_optimize(const RunOptions& opt, std::ostream& out, std::ostream& err);
int run_pareto(const RunOptions& opt, std::ostream& out, std::ostream& err);
int run_render(const RenderOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace shapereg::cli
