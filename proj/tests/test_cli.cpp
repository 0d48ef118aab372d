#include "shapereg/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace shapereg;
namespace fs = std::filesystem;
namespace st = shapereg::testing;

namespace {

struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("shapereg_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void put(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename Opt, typename Fn>
CliRun call(Fn fn, const Opt& opt) {
  std::ostringstream out, err;
  const int code = fn(opt, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gen-plate writes a parsable mesh to stdout or a file") {
  const CliRun r = call(cli::run_gen_plate, cli::GenPlateOptions{3, 2, ""});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.empty());
  const Mesh mesh = parse_mesh(r.out);
  CHECK(mesh.node_count() == 12);
  CHECK(mesh.triangle_count() == 12);

  TempDir tmp("gen_plate");
  const CliRun f = call(cli::run_gen_plate, cli::GenPlateOptions{2, 1, tmp.file("plate.txt")});
  CHECK(f.code == cli::kExitOk);
  CHECK(parse_mesh(slurp(tmp.file("plate.txt"))).triangle_count() == 4);

  const CliRun bad = call(cli::run_gen_plate, cli::GenPlateOptions{0, 2, ""});
  CHECK(bad.code == cli::kExitUser);
  CHECK(bad.err.find("error:") == 0);

  const CliRun io =
      call(cli::run_gen_plate, cli::GenPlateOptions{2, 1, tmp.file("no_such_dir/plate.txt")});
  CHECK(io.code == cli::kExitIo);
}

TEST_CASE("eval reports metrics for both encodings") {
  TempDir tmp("eval");
  call(cli::run_gen_plate, cli::GenPlateOptions{2, 1, tmp.file("plate.txt")});

  put(tmp.file("t.txt"), "1100\n");
  const CliRun rt = call(cli::run_eval, cli::EvalOptions{tmp.file("plate.txt"), tmp.file("t.txt"),
                                                         "triangle"});
  CHECK(rt.code == cli::kExitOk);
  const auto jt = nlohmann::json::parse(rt.out);
  CHECK(jt["schema"] == 1);
  CHECK(jt["encoding"] == "triangle");
  CHECK(jt["r_area"] == 0.5);
  CHECK(jt["r_slot"].is_null());

  put(tmp.file("g.txt"), "101\n");
  const CliRun rg =
      call(cli::run_eval, cli::EvalOptions{tmp.file("plate.txt"), tmp.file("g.txt"), "basis"});
  CHECK(rg.code == cli::kExitOk);
  const auto jg = nlohmann::json::parse(rg.out);
  CHECK(jg["encoding"] == "basis");
  CHECK(jg["r_slot"] == 1.0);
  CHECK(jg["slots"] == 1);

  put(tmp.file("full.txt"), "1111\n");
  const CliRun rf = call(cli::run_eval, cli::EvalOptions{tmp.file("plate.txt"), tmp.file("full.txt"),
                                                         "triangle"});
  CHECK(rf.code == cli::kExitOk);
  const auto jf = nlohmann::json::parse(rf.out);
  CHECK(jf["r_hom"] == 0.0);
  CHECK(jf["r_area"] == 1.0);

  put(tmp.file("bowtie.txt"), format_mesh(st::bowtie_mesh()));
  put(tmp.file("both.txt"), "11\n");
  const CliRun rb = call(cli::run_eval, cli::EvalOptions{tmp.file("bowtie.txt"),
                                                         tmp.file("both.txt"), "triangle"});
  CHECK(rb.code == cli::kExitOk);
  const auto jb = nlohmann::json::parse(rb.out);
  CHECK(jb["problematic_nodes"] == 1);
  CHECK(jb["r_point"] == 0.2);
}

TEST_CASE("eval rejects bad inputs with exit code 2") {
  TempDir tmp("eval_bad");
  call(cli::run_gen_plate, cli::GenPlateOptions{2, 1, tmp.file("plate.txt")});
  put(tmp.file("short.txt"), "11\n");

  const CliRun wrong_len = call(
      cli::run_eval, cli::EvalOptions{tmp.file("plate.txt"), tmp.file("short.txt"), "triangle"});
  CHECK(wrong_len.code == cli::kExitUser);
  CHECK(wrong_len.err.find("error:") == 0);

  const CliRun no_mesh = call(
      cli::run_eval, cli::EvalOptions{tmp.file("missing.txt"), tmp.file("short.txt"), "triangle"});
  CHECK(no_mesh.code == cli::kExitUser);

  const CliRun bad_kind = call(
      cli::run_eval, cli::EvalOptions{tmp.file("plate.txt"), tmp.file("short.txt"), "edgewise"});
  CHECK(bad_kind.code == cli::kExitUser);
}

TEST_CASE("optimize writes a deterministic frontier bundle") {
  TempDir tmp("optimize");
  const std::string cfg = R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 3, "ny": 2}},
    "encoding": "triangle",
    "budget": 300,
    "seed": 5,
    "runs": 2,
    "terms": [{"name": "r_area", "weight": 1.0}]
  })";
  put(tmp.file("cfg.json"), cfg);

  const CliRun a = call(cli::run_optimize, cli::RunOptions{tmp.file("cfg.json"), tmp.file("a")});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out.find("optimize: 2 records") == 0);

  const auto doc = nlohmann::json::parse(slurp(tmp.file("a/frontier.json")));
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "optimize");
  CHECK(doc["encoding"] == "triangle");
  CHECK(doc["terms"] == nlohmann::json::array({"r_area"}));
  REQUIRE(doc["records"].size() == 2);
  for (const auto& rec : doc["records"]) {
    CHECK(rec["objectives"][0] == 0.0);
    const Eigen::VectorXi gene =
        parse_gene(slurp(tmp.file("a/" + rec["gene_file"].get<std::string>())));
    CHECK(gene == Eigen::VectorXi::Zero(12));
  }
  CHECK(fs::exists(tmp.file("a/run_log.txt")));

  const CliRun b = call(cli::run_optimize, cli::RunOptions{tmp.file("cfg.json"), tmp.file("b")});
  CHECK(b.code == cli::kExitOk);
  CHECK(slurp(tmp.file("a/frontier.json")) == slurp(tmp.file("b/frontier.json")));
}

TEST_CASE("optimize honors pinned bits") {
  TempDir tmp("optimize_pins");
  put(tmp.file("cfg.json"), R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 3, "ny": 2}},
    "encoding": "triangle",
    "budget": 300,
    "seed": 5,
    "pinned_bits": [0, 7],
    "terms": [{"name": "r_area", "weight": 1.0}]
  })");
  const CliRun r = call(cli::run_optimize, cli::RunOptions{tmp.file("cfg.json"), tmp.file("out")});
  CHECK(r.code == cli::kExitOk);
  const Eigen::VectorXi gene = parse_gene(slurp(tmp.file("out/gene_000.txt")));
  CHECK(gene[0] == 1);
  CHECK(gene[7] == 1);
  CHECK(gene.sum() == 2);
}

TEST_CASE("optimize rejects broken configs") {
  TempDir tmp("optimize_bad");
  auto expect_user_error = [&](const std::string& body) {
    put(tmp.file("cfg.json"), body);
    const CliRun r =
        call(cli::run_optimize, cli::RunOptions{tmp.file("cfg.json"), tmp.file("out")});
    CHECK(r.code == cli::kExitUser);
    CHECK(r.err.find("error:") == 0);
  };

  expect_user_error(R"({"schema": 1})");  // missing everything
  expect_user_error(R"({"schema": 2, "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_area", "weight": 1.0}]})");
  expect_user_error(R"({"schema": 1, "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_bogus", "weight": 1.0}]})");
  expect_user_error(R"({"schema": 1, "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_slot", "weight": 1.0}]})");
  expect_user_error(R"({"schema": 1, "mesh": {"plate": {"nx": 2, "ny": 2}, "file": "x"},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_area", "weight": 1.0}]})");
  expect_user_error(R"({"schema": 1, "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "pinned_bits": [99],
    "terms": [{"name": "r_area", "weight": 1.0}]})");
  expect_user_error(R"({"schema": 1, "mesh": {"file": "/nonexistent/mesh.txt"},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_area", "weight": 1.0}]})");

  const CliRun missing =
      call(cli::run_optimize, cli::RunOptions{tmp.file("nope.json"), tmp.file("out")});
  CHECK(missing.code == cli::kExitUser);

  put(tmp.file("blocker"), "not a directory\n");
  put(tmp.file("cfg.json"), R"({"schema": 1, "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle", "budget": 10, "seed": 1,
    "terms": [{"name": "r_area", "weight": 1.0}]})");
  const CliRun io = call(cli::run_optimize,
                         cli::RunOptions{tmp.file("cfg.json"), tmp.file("blocker/out")});
  CHECK(io.code == cli::kExitIo);
}

TEST_CASE("pareto sweeps two terms from a config") {
  TempDir tmp("pareto2");
  put(tmp.file("cfg.json"), R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle",
    "budget": 200,
    "seed": 3,
    "runs": 1,
    "sweep": {"terms": ["surrogate_q", "r_area"], "weights": [0.0, 0.5, 1.0]}
  })");
  const CliRun r = call(cli::run_pareto, cli::RunOptions{tmp.file("cfg.json"), tmp.file("out")});
  CHECK(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(slurp(tmp.file("out/frontier.json")));
  CHECK(doc["command"] == "pareto");
  CHECK(doc["terms"] == nlohmann::json::array({"surrogate_q", "r_area"}));
  REQUIRE(doc["records"].size() == 3);
  CHECK(doc["records"][0]["weights"] == nlohmann::json::array({1.0, 0.0}));
  CHECK(doc["records"][2]["weights"] == nlohmann::json::array({0.0, 1.0}));
  CHECK(doc["records"][2]["objectives"][1] == 0.0);
}

TEST_CASE("pareto sweeps three terms over a simplex grid") {
  TempDir tmp("pareto3");
  put(tmp.file("cfg.json"), R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "basis",
    "budget": 150,
    "seed": 4,
    "sweep": {"terms": ["surrogate_q", "r_area", "r_slot"], "grid": 2}
  })");
  const CliRun r = call(cli::run_pareto, cli::RunOptions{tmp.file("cfg.json"), tmp.file("out")});
  CHECK(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(slurp(tmp.file("out/frontier.json")));
  CHECK(doc["records"].size() == 6);
  CHECK(doc["encoding"] == "basis");

  put(tmp.file("bad.json"), R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle",
    "budget": 10,
    "seed": 4,
    "sweep": {"terms": ["surrogate_q"], "weights": [0.5]}
  })");
  const CliRun bad = call(cli::run_pareto, cli::RunOptions{tmp.file("bad.json"), tmp.file("o2")});
  CHECK(bad.code == cli::kExitUser);
}

TEST_CASE("render draws genes and frontiers") {
  TempDir tmp("render");
  call(cli::run_gen_plate, cli::GenPlateOptions{2, 1, tmp.file("plate.txt")});
  put(tmp.file("gene.txt"), "1100\n");

  cli::RenderOptions gene_opts;
  gene_opts.mesh_path = tmp.file("plate.txt");
  gene_opts.gene_path = tmp.file("gene.txt");
  gene_opts.out_path = tmp.file("gene.svg");
  const CliRun g = call(cli::run_render, gene_opts);
  CHECK(g.code == cli::kExitOk);
  const std::string svg = slurp(tmp.file("gene.svg"));
  CHECK(svg.find("<?xml") == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(st::xml_well_formed(svg));

  put(tmp.file("cfg.json"), R"({
    "schema": 1,
    "mesh": {"plate": {"nx": 2, "ny": 2}},
    "encoding": "triangle",
    "budget": 100,
    "seed": 3,
    "sweep": {"terms": ["surrogate_q", "r_area"], "weights": [0.0, 1.0]}
  })");
  call(cli::run_pareto, cli::RunOptions{tmp.file("cfg.json"), tmp.file("run")});

  cli::RenderOptions front_opts;
  front_opts.frontier_path = tmp.file("run/frontier.json");
  front_opts.out_path = tmp.file("front.svg");
  const CliRun f = call(cli::run_render, front_opts);
  CHECK(f.code == cli::kExitOk);
  CHECK(st::xml_well_formed(slurp(tmp.file("front.svg"))));

  front_opts.axis_y = 5;
  CHECK(call(cli::run_render, front_opts).code == cli::kExitUser);
  front_opts.axis_y = 1;
  front_opts.mesh_path = tmp.file("plate.txt");
  CHECK(call(cli::run_render, front_opts).code == cli::kExitUser);

  cli::RenderOptions no_out;
  no_out.mesh_path = tmp.file("plate.txt");
  no_out.gene_path = tmp.file("gene.txt");
  CHECK(call(cli::run_render, no_out).code == cli::kExitUser);
}
