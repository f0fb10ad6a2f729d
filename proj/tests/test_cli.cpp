#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>

#include "commands.hpp"
#include "hyperfact/json_io.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace hyperfact;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hyperfact_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(std::initializer_list<std::string> args) {
  return cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("generate then verify") {
  TempDir dir;
  const std::string fact = dir.file("fact.json");
  CHECK(run({"--quiet", "gen-factorization", "--m", "9", "--r", "1", "--seed",
             "3", "--out", fact}) == 0);
  CHECK(run({"--quiet", "verify", "--kind", "factorization", "--result", fact,
             "--r", "1"}) == 0);
  CHECK(run({"--quiet", "verify", "--kind", "factorization", "--result", fact,
             "--r", "2"}) == 1);
}

TEST_CASE("embed end to end with certificates") {
  TempDir dir;
  const std::string input = dir.file("input.json");
  write_text_file(input, dump_canonical(hypergraph_to_json(
                             hyperfact::testing::rainbow_complete(4))));
  const std::string out = dir.file("emb.json");
  const std::string cert = dir.file("cert.json");
  CHECK(run({"--quiet", "embed", "--input", input, "--n", "12", "--r", "1",
             "--seed", "0", "--out", out, "--certificate", cert}) == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(cert));
  CHECK(run({"--quiet", "verify", "--kind", "embedding-full", "--original",
             input, "--result", out}) == 0);

  // tamper with the embedding and watch verification fail
  auto host = hypergraph_from_json(nlohmann::json::parse(read_text_file(out)));
  auto table = host.table();
  auto node = table.extract(table.begin());
  node.key().second = node.key().second == 1 ? 2 : 1;
  table.insert(std::move(node));
  HypergraphBuilder hb;
  hb.add_vertex_set(host.vertices());
  for (const auto& [kc, cnt] : table) hb.add_edge(kc.first, kc.second, cnt);
  write_text_file(out, dump_canonical(hypergraph_to_json(std::move(hb).build())));
  CHECK(run({"--quiet", "verify", "--kind", "embedding-full", "--original",
             input, "--result", out}) == 1);
}

TEST_CASE("restricted embedding command") {
  TempDir dir;
  const std::string input = dir.file("pieces.json");
  write_text_file(input, dump_canonical(hypergraph_to_json(
                             hyperfact::testing::hand_pieces_valid())));
  const std::string out = dir.file("emb.json");
  CHECK(run({"--quiet", "embed-restricted", "--input", input, "--n", "6",
             "--r", "2", "--seed", "0", "--out", out}) == 0);
  CHECK(run({"--quiet", "verify", "--kind", "embedding-restricted",
             "--original", input, "--result", out}) == 0);
}

TEST_CASE("counterexample command") {
  TempDir dir;
  const std::string out = dir.file("cx.json");
  const std::string report = dir.file("report.json");
  CHECK(run({"--quiet", "counterexample", "--m", "7", "--out", out,
             "--report", report}) == 0);
  auto j = nlohmann::json::parse(read_text_file(report));
  CHECK(j["n"] == 13);
  CHECK(j["r"] == 3);
  CHECK(j["witness"]["infeasible"] == true);
  CHECK(j["witness"]["required_new_edges"] == 30);
  CHECK(j["witness"]["available_new_edges"] == 20);
}

TEST_CASE("scan produces a csv") {
  TempDir dir;
  const std::string out = dir.file("scan.csv");
  CHECK(run({"--quiet", "scan", "--m-min", "4", "--m-max", "4", "--n-min",
             "12", "--n-max", "12", "--r-min", "1", "--r-max", "1", "--seed",
             "0", "--out", out}) == 0);
  std::string csv = read_text_file(out);
  CHECK(csv.find("m,n,r,input") == 0);
  CHECK(csv.find("rainbow") != std::string::npos);
  CHECK(csv.find(",ok,true") != std::string::npos);
}

TEST_CASE("scan respects the size cap and threads do not change output") {
  TempDir dir;
  CHECK(run({"--quiet", "scan", "--m-min", "4", "--m-max", "4", "--n-min",
             "200", "--n-max", "200", "--out", dir.file("x.csv")}) == 2);

  const std::string serial = dir.file("serial.csv");
  const std::string parallel = dir.file("parallel.csv");
  CHECK(run({"--quiet", "scan", "--m-min", "4", "--m-max", "5", "--r-min",
             "1", "--r-max", "3", "--seed", "9", "--out", serial,
             "--threads", "1"}) == 0);
  CHECK(run({"--quiet", "scan", "--m-min", "4", "--m-max", "5", "--r-min",
             "1", "--r-max", "3", "--seed", "9", "--out", parallel,
             "--threads", "4"}) == 0);
  CHECK(read_text_file(serial) == read_text_file(parallel));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"embed", "--input", "x.json", "--r", "1", "--out", "y.json"}) ==
        2);  // missing --n
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({}) == 2);
}

TEST_CASE("missing files exit with 1") {
  CHECK(run({"--quiet", "verify", "--kind", "factorization", "--result",
             "/nonexistent/f.json", "--r", "1"}) == 1);
}
