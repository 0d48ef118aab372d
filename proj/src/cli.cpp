#include "shapereg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace shapereg::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UserError(path + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw UserError(std::string("config: missing field '") + key + "'");
  return j.at(key);
}

long long require_nonneg_int(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<long long>() < 0))
    throw UserError(std::string("config: '") + key + "' must be a nonnegative integer");
  return v.get<long long>();
}

std::string require_string(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_string()) throw UserError(std::string("config: '") + key + "' must be a string");
  return v.get<std::string>();
}

void check_schema(const json& j) {
  if (j.contains("schema") && j.at("schema") != 1)
    throw UserError("config: unsupported schema version (expected 1)");
}

struct RunConfig {
  Mesh mesh;
  json mesh_echo;
  GeneKind kind = GeneKind::triangle;
  long long budget = 0;
  std::uint64_t seed = 0;
  int runs = 1;
  std::vector<int> pins;
  // fixed-weight mode
  std::vector<std::string> term_names;
  std::vector<double> term_weights;
  // sweep mode
  std::vector<std::string> sweep_terms;
  std::vector<double> sweep_weights;
  int grid_divisions = 0;
};

Mesh mesh_from_config(const json& mesh_cfg) {
  if (mesh_cfg.contains("plate") && mesh_cfg.contains("file"))
    throw UserError("config: mesh must have either 'plate' or 'file', not both");
  if (mesh_cfg.contains("plate")) {
    const json& plate = mesh_cfg.at("plate");
    return generate_plate(static_cast<int>(require_nonneg_int(plate, "nx")),
                          static_cast<int>(require_nonneg_int(plate, "ny")));
  }
  if (mesh_cfg.contains("file")) return load_mesh(require_string(mesh_cfg, "file"));
  throw UserError("config: mesh must have 'plate' or 'file'");
}

RunConfig parse_run_config(const json& j, bool sweep_mode) {
  check_schema(j);
  RunConfig rc;
  rc.mesh_echo = require_field(j, "mesh");
  rc.mesh = mesh_from_config(rc.mesh_echo);
  rc.kind = parse_gene_kind(require_string(j, "encoding"));
  rc.budget = require_nonneg_int(j, "budget");
  rc.seed = static_cast<std::uint64_t>(require_nonneg_int(j, "seed"));
  if (j.contains("runs")) {
    rc.runs = static_cast<int>(require_nonneg_int(j, "runs"));
    if (rc.runs < 1) throw UserError("config: 'runs' must be at least 1");
  }
  if (j.contains("pinned_bits")) {
    const json& pins = j.at("pinned_bits");
    if (!pins.is_array()) throw UserError("config: 'pinned_bits' must be an array of indices");
    for (const json& p : pins) {
      if (!p.is_number_integer()) throw UserError("config: pinned bit indices must be integers");
      rc.pins.push_back(p.get<int>());
    }
  }

  if (sweep_mode) {
    const json& sweep = require_field(j, "sweep");
    const json& terms = require_field(sweep, "terms");
    if (!terms.is_array() || (terms.size() != 2 && terms.size() != 3))
      throw UserError("config: sweep needs 2 or 3 term names");
    for (const json& t : terms) {
      if (!t.is_string()) throw UserError("config: sweep term names must be strings");
      rc.sweep_terms.push_back(t.get<std::string>());
    }
    if (rc.sweep_terms.size() == 2) {
      const json& weights = require_field(sweep, "weights");
      if (!weights.is_array() || weights.empty())
        throw UserError("config: sweep 'weights' must be a nonempty array");
      for (const json& w : weights) {
        if (!w.is_number()) throw UserError("config: sweep weights must be numbers");
        rc.sweep_weights.push_back(w.get<double>());
      }
    } else {
      rc.grid_divisions = static_cast<int>(require_nonneg_int(sweep, "grid"));
      if (rc.grid_divisions < 1) throw UserError("config: sweep 'grid' must be at least 1");
    }
  } else {
    const json& terms = require_field(j, "terms");
    if (!terms.is_array() || terms.empty())
      throw UserError("config: 'terms' must be a nonempty array");
    for (const json& t : terms) {
      rc.term_names.push_back(require_string(t, "name"));
      const json& w = require_field(t, "weight");
      if (!w.is_number() || !std::isfinite(w.get<double>()) || w.get<double>() < 0.0)
        throw UserError("config: term weights must be finite and nonnegative");
      rc.term_weights.push_back(w.get<double>());
    }
  }
  return rc;
}

ObjectiveTerm make_term(const std::string& name, const MeshContext& ctx, GeneKind kind) {
  const bool basis = kind == GeneKind::basis;
  auto induced = [&ctx](const Eigen::VectorXi& g) {
    return gene_to_triangles(BasisGene{g}, ctx.incidence).bits;
  };
  if (name == "surrogate_q") {
    if (basis)
      return {name, [&ctx, induced](const Eigen::VectorXi& g) {
                return surrogate_q(induced(g), ctx.areas);
              }};
    return {name,
            [&ctx](const Eigen::VectorXi& t) { return surrogate_q(t, ctx.areas); }};
  }
  if (name == "r_area" || name == "one_minus_r_area") {
    const double sign = name == "r_area" ? 0.0 : 1.0;
    if (basis)
      return {name, [&ctx, sign](const Eigen::VectorXi& g) {
                const double r = r_area(BasisGene{g}, ctx.areas, ctx.incidence);
                return sign == 0.0 ? r : 1.0 - r;
              }};
    return {name, [&ctx, sign](const Eigen::VectorXi& t) {
              const double r = r_area(TriangleGene{t}, ctx.areas);
              return sign == 0.0 ? r : 1.0 - r;
            }};
  }
  if (name == "r_point") {
    if (basis)
      return {name, [&ctx](const Eigen::VectorXi& g) { return r_point(BasisGene{g}, ctx); }};
    return {name, [&ctx](const Eigen::VectorXi& t) { return r_point(TriangleGene{t}, ctx); }};
  }
  if (name == "r_hom") {
    if (basis)
      return {name,
              [&ctx](const Eigen::VectorXi& g) { return r_hom(BasisGene{g}, ctx.hom_basis); }};
    return {name,
            [&ctx](const Eigen::VectorXi& t) { return r_hom(TriangleGene{t}, ctx.hom_tri); }};
  }
  if (name == "r_slot") {
    if (!basis) throw UserError("term 'r_slot' requires the basis encoding");
    return {name, [&ctx](const Eigen::VectorXi& g) {
              return r_slot(BasisGene{g}, ctx.incidence, ctx.triangle_count());
            }};
  }
  throw UserError("unknown objective term '" + name + "'");
}

Eigen::VectorXi build_pin_mask(const std::vector<int>& pins, int length) {
  if (pins.empty()) return {};
  Eigen::VectorXi mask = Eigen::VectorXi::Zero(length);
  for (int p : pins) {
    if (p < 0 || p >= length)
      throw UserError("config: pinned bit " + std::to_string(p) + " out of range for gene length " +
                      std::to_string(length));
    mask[p] = 1;
  }
  return mask;
}

std::string gene_file_name(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "gene_%03zu.txt", index);
  return buf;
}

void write_run_outputs(const std::string& out_dir, const std::string& command,
                       const RunConfig& rc, const ParetoFrontier& frontier,
                       const MeshContext& ctx, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["mesh"] = rc.mesh_echo;
  doc["encoding"] = to_string(rc.kind);
  doc["terms"] = frontier.term_names;
  doc["budget"] = rc.budget;
  doc["seed"] = rc.seed;
  doc["runs"] = rc.runs;
  if (!rc.pins.empty()) doc["pinned_bits"] = rc.pins;
  doc["records"] = ordered_json::array();
  for (size_t i = 0; i < frontier.records.size(); ++i) {
    const ParetoRecord& r = frontier.records[i];
    ordered_json rec;
    rec["index"] = i;
    rec["weight_index"] = r.weight_index;
    rec["run_index"] = r.run_index;
    rec["weights"] = std::vector<double>(r.weights.data(), r.weights.data() + r.weights.size());
    rec["scalar"] = r.scalar;
    rec["objectives"] =
        std::vector<double>(r.objectives.data(), r.objectives.data() + r.objectives.size());
    rec["nondominated"] = r.nondominated;
    rec["gene_file"] = gene_file_name(i);
    doc["records"].push_back(rec);
  }

  for (size_t i = 0; i < frontier.records.size(); ++i)
    write_file(fs::path(out_dir) / gene_file_name(i), format_gene(frontier.records[i].gene));
  write_file(fs::path(out_dir) / "frontier.json", doc.dump(2) + "\n");

  std::ostringstream log;
  log << "command: " << command << '\n';
  log << "mesh: nodes=" << ctx.mesh.node_count() << " triangles=" << ctx.triangle_count()
      << " basis=" << ctx.basis_count() << '\n';
  log << "encoding: " << to_string(rc.kind) << '\n';
  log << "budget: " << rc.budget << " seed: " << rc.seed << " runs: " << rc.runs << '\n';
  const auto front = frontier.frontier_indices();
  for (size_t i = 0; i < frontier.records.size(); ++i) {
    const ParetoRecord& r = frontier.records[i];
    log << "record " << i << ": weight_index=" << r.weight_index << " run=" << r.run_index
        << " scalar=" << r.scalar << (r.nondominated ? " *" : "") << '\n';
  }
  log << "nondominated: " << front.size() << " of " << frontier.records.size() << '\n';
  write_file(fs::path(out_dir) / "run_log.txt", log.str());

  out << command << ": " << frontier.records.size() << " records, " << front.size()
      << " nondominated -> " << out_dir << '\n';
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  }
}

}  // namespace

int run_gen_plate(const GenPlateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const std::string text = format_mesh(generate_plate(opt.nx, opt.ny));
    if (opt.out_path.empty())
      out << text;
    else
      write_file(opt.out_path, text);
    return kExitOk;
  });
}

int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const GeneKind kind = parse_gene_kind(opt.kind);
    const MeshContext ctx = MeshContext::build(load_mesh(opt.mesh_path));
    const Eigen::VectorXi bits = load_gene(opt.gene_path);
    const MetricsReport report = kind == GeneKind::triangle
                                     ? evaluate_all(ctx, TriangleGene{bits})
                                     : evaluate_all(ctx, BasisGene{bits});
    out << report_to_json(report).dump(2) << '\n';
    return kExitOk;
  });
}

int run_optimize(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig rc = parse_run_config(load_json(opt.config_path), false);
    const MeshContext ctx = MeshContext::build(rc.mesh);
    const int length =
        rc.kind == GeneKind::triangle ? ctx.triangle_count() : ctx.basis_count();
    const Eigen::VectorXi pins = build_pin_mask(rc.pins, length);

    ObjectiveSpec spec;
    spec.weights.resize(static_cast<Eigen::Index>(rc.term_names.size()));
    for (size_t i = 0; i < rc.term_names.size(); ++i) {
      spec.terms.push_back(make_term(rc.term_names[i], ctx, rc.kind));
      spec.weights[static_cast<Eigen::Index>(i)] = rc.term_weights[i];
    }
    spec.validate();

    ParetoFrontier frontier;
    frontier.term_names = rc.term_names;
    std::vector<Eigen::VectorXd> points;
    for (int run = 0; run < rc.runs; ++run) {
      Eigen::VectorXi initial = random_gene(length, 0.5, mix_seed(rc.seed, 0, run, 0));
      const SearchResult result =
          local_search(spec, std::move(initial), rc.budget, mix_seed(rc.seed, 0, run, 1), pins);
      ParetoRecord record;
      record.gene = result.best;
      record.scalar = result.best_value;
      record.weights = spec.weights;
      record.weight_index = 0;
      record.run_index = run;
      record.objectives.resize(static_cast<Eigen::Index>(spec.terms.size()));
      for (size_t k = 0; k < spec.terms.size(); ++k)
        record.objectives[static_cast<Eigen::Index>(k)] = spec.terms[k].fn(record.gene);
      points.push_back(record.objectives);
      frontier.records.push_back(std::move(record));
    }
    for (int idx : nondominated_filter(points)) frontier.records[idx].nondominated = true;

    write_run_outputs(opt.out_dir, "optimize", rc, frontier, ctx, out);
    return kExitOk;
  });
}

int run_pareto(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig rc = parse_run_config(load_json(opt.config_path), true);
    const MeshContext ctx = MeshContext::build(rc.mesh);
    const int length =
        rc.kind == GeneKind::triangle ? ctx.triangle_count() : ctx.basis_count();
    const Eigen::VectorXi pins = build_pin_mask(rc.pins, length);

    ParetoFrontier frontier;
    if (rc.sweep_terms.size() == 2) {
      frontier = pareto_sweep(make_term(rc.sweep_terms[0], ctx, rc.kind),
                              make_term(rc.sweep_terms[1], ctx, rc.kind), rc.sweep_weights,
                              rc.runs, rc.budget, rc.seed, length, pins);
    } else {
      const std::array<ObjectiveTerm, 3> terms = {make_term(rc.sweep_terms[0], ctx, rc.kind),
                                                  make_term(rc.sweep_terms[1], ctx, rc.kind),
                                                  make_term(rc.sweep_terms[2], ctx, rc.kind)};
      frontier = multi_objective_run(terms, rc.grid_divisions, rc.runs, rc.budget, rc.seed,
                                     length, pins);
    }
    write_run_outputs(opt.out_dir, "pareto", rc, frontier, ctx, out);
    return kExitOk;
  });
}

int run_render(const RenderOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    opt.style.validate();
    if (opt.out_path.empty()) throw UserError("render: output path required");
    std::string svg;
    if (!opt.frontier_path.empty()) {
      if (!opt.mesh_path.empty() || !opt.gene_path.empty())
        throw UserError("render: use either --frontier or --mesh/--gene, not both");
      const json doc = load_json(opt.frontier_path);
      check_schema(doc);
      const json& terms = require_field(doc, "terms");
      const json& records = require_field(doc, "records");
      if (!records.is_array()) throw UserError("frontier: 'records' must be an array");
      std::vector<Eigen::VectorXd> points;
      std::vector<bool> flags;
      for (const json& rec : records) {
        const json& obj = require_field(rec, "objectives");
        Eigen::VectorXd v(obj.size());
        for (size_t k = 0; k < obj.size(); ++k) v[static_cast<Eigen::Index>(k)] = obj[k].get<double>();
        points.push_back(std::move(v));
        flags.push_back(require_field(rec, "nondominated").get<bool>());
      }
      const int dims = static_cast<int>(terms.size());
      if (opt.axis_x < 0 || opt.axis_x >= dims || opt.axis_y < 0 || opt.axis_y >= dims)
        throw UserError("render: axis index out of range");
      svg = render_frontier_svg(points, flags, opt.axis_x, opt.axis_y,
                                terms[opt.axis_x].get<std::string>(),
                                terms[opt.axis_y].get<std::string>(), opt.style);
    } else {
      if (opt.mesh_path.empty() || opt.gene_path.empty())
        throw UserError("render: provide --mesh and --gene, or --frontier");
      const GeneKind kind = parse_gene_kind(opt.kind);
      const MeshContext ctx = MeshContext::build(load_mesh(opt.mesh_path));
      svg = render_gene_svg(ctx, load_gene(opt.gene_path), kind, opt.style);
    }
    write_file(opt.out_path, svg);
    out << "render: wrote " << opt.out_path << '\n';
    return kExitOk;
  });
}

}  // namespace shapereg::cli
