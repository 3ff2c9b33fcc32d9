#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "clusterlab/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace clusterlab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cluster-lab");
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

nlohmann::json manifest(const std::string& text) {
  const std::string first = lines(text).at(0);
  REQUIRE(first.rfind("#manifest: ", 0) == 0);
  return nlohmann::json::parse(first.substr(11));
}

std::string body(const std::string& text) { return text.substr(text.find('\n') + 1); }

}  // namespace

TEST_CASE("enumerate prints a manifest and counts") {
  Run r = invoke({"enumerate", "--n", "5", "--quiet"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.empty());
  auto m = manifest(r.out);
  CHECK(m["lattice"] == "z2");
  CHECK(m["class"] == "site-animal");
  CHECK(m["lattice_digest"].get<std::string>().size() == 16);
  CHECK(m.contains("wall_time_s"));
  CHECK(m["argv"].size() == 5);
  CHECK(body(r.out) == "n,count\n1,1\n2,2\n3,6\n4,19\n5,63\n");
}

TEST_CASE("identical arguments give identical bodies for any thread count") {
  Run a = invoke({"enumerate", "--class", "bond-animal", "--n", "7", "--threads", "1", "--quiet"});
  Run b = invoke({"enumerate", "--class", "bond-animal", "--n", "7", "--threads", "4", "--quiet"});
  CHECK(body(a.out) == body(b.out));
  Run c = invoke({"enumerate", "--class", "bond-animal", "--n", "7", "--threads", "1", "--quiet"});
  CHECK(body(a.out) == body(c.out));
}

TEST_CASE("oracle mode matches the search") {
  Run a = invoke({"enumerate", "--lattice", "tri", "--class", "directed-bond-tree", "--n", "5", "--quiet"});
  Run b = invoke({"enumerate", "--lattice", "tri", "--class", "directed-bond-tree", "--n", "5", "--oracle", "--quiet"});
  CHECK(a.code == 0);
  CHECK(body(a.out) == body(b.out));
  CHECK(manifest(a.out)["direction"] == "1,1");
}

TEST_CASE("usage errors exit with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"enumerate", "--n", "3", "--bogus"},
           {"enumerate"},
           {"frobnicate"},
           {"enumerate", "--n", "3", "--class", "walk"},
           {"enumerate", "--n", "3", "--lattice", "nowhere"},
           {"enumerate", "--n", "3", "--class", "directed-site-animal", "--direction", "1,0"},
           {"partition", "--n", "3", "--weights", "collapse", "--zm", "2"},
           {"percolation", "exact", "--p", "3/2", "--n", "3"},
           {"pattern", "tail", "--n", "3"},
           {"enumerate", "--n", "3", "--lattice-file", "/nonexistent.json"},
       }) {
    Run r = invoke(args);
    INFO(r.err);
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.rfind("error: kind=", 0) == 0);
    CHECK(lines(r.err).size() == 1);
    CHECK(r.out.empty());
  }
}

TEST_CASE("budget exhaustion exits with 3") {
  Run r = invoke({"enumerate", "--n", "50", "--budget", "5000"});
  CHECK(r.code == cli::kExitBudget);
  CHECK(r.err.find("kind=budget") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("help exits with 0") {
  Run r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("enumerate") != std::string::npos);
}

TEST_CASE("partition in exact and float mode") {
  Run exact = invoke({"partition", "--n", "3", "--weights", "collapse", "--zm", "2", "--zs", "1/2"});
  CHECK(body(exact.out) == "n,G_n_exact,G_n_float\n1,1/16,0.0625\n2,1/32,0.03125\n3,3/128,0.0234375\n");
  CHECK(manifest(exact.out)["weights"] == "collapse(zm=2,zs=1/2)");
  Run fast = invoke({"partition", "--n", "3", "--weights", "collapse", "--zm", "2", "--zs", "1/2", "--float"});
  CHECK(body(fast.out) == "n,G_n_exact,G_n_float\n1,,0.0625\n2,,0.03125\n3,,0.0234375\n");
}

TEST_CASE("pattern commands") {
  Run count = invoke({"pattern", "count", "--class", "bond-animal", "--n", "3", "--quiet"});
  CHECK(body(count.out) == "n,occurrences,count,weighted\n1,1,1,1\n2,1,1,1\n2,2,1,1\n3,1,1,1\n3,2,4,4\n3,3,1,1\n");
  Run tail = invoke({"pattern", "tail", "--class", "bond-animal", "--n", "3", "--m", "1"});
  CHECK(body(tail.out) == "n,m,tail,total,fraction\n1,1,1,1,1\n2,1,1,2,0.5\n3,1,1,6,0.16666666666666666\n");
  Run flip = invoke({"pattern", "flip-identity", "--window", "5", "--n", "25", "--strict", "--quiet"});
  CHECK(flip.code == 0);
  CHECK(body(flip.out) == "n,a,b,lhs,rhs,residual\n17,1,0,1,1,0\n");
  CHECK(manifest(flip.out)["nonzero_residuals"] == 0);
}

TEST_CASE("pattern from a file") {
  const std::string path = (std::filesystem::temp_directory_path() / "clusterlab_cli_pattern.json").string();
  write_file_atomic(path, R"({"P1": [{"site": [1, 0, 0]}], "P2": [{"site": [1, 1, 0]}]})");
  Run r = invoke({"pattern", "count", "--n", "2", "--pattern", path, "--quiet"});
  CHECK(r.code == 0);
  CHECK(body(r.out) == "n,occurrences,count,weighted\n1,1,1,1\n2,1,1,1\n2,2,1,1\n");
  std::filesystem::remove(path);
}

TEST_CASE("pattern insert") {
  Run r = invoke({"pattern", "insert", "--cluster", "site-animal;site(1,0,0)", "--site", "(1,0,0)"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1].rfind("shift,(", 0) == 0);
  CHECK(ls[2].rfind("site-animal;", 0) == 0);
  Run bad = invoke({"pattern", "insert", "--cluster", "site-animal;site(1,0,0)", "--site", "1,3,3"});
  CHECK(bad.code == cli::kExitUsage);
}

TEST_CASE("percolation commands") {
  Run exact = invoke({"percolation", "exact", "--p", "1/2", "--n", "2"});
  CHECK(body(exact.out) == "n,value\n1,1/16\n2,1/32\n");
  Run mc = invoke({"percolation", "mc", "--p", "0.45", "--samples", "2000", "--cap", "3", "--seed", "9", "--threads", "2"});
  CHECK(mc.code == 0);
  auto m = manifest(mc.out);
  CHECK(m["seeds"][0] == 9);
  CHECK(m.contains("truncated_mass"));
  Run mc1 = invoke({"percolation", "mc", "--p", "0.45", "--samples", "2000", "--cap", "3", "--seed", "9", "--threads", "1"});
  CHECK(body(mc.out) == body(mc1.out));
}

TEST_CASE("analyze reads series written by enumerate") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string sa = (dir / "clusterlab_cli_sa.csv").string();
  const std::string bt = (dir / "clusterlab_cli_bt.csv").string();
  REQUIRE(invoke({"enumerate", "--n", "6", "--out", sa, "--quiet"}).code == 0);
  REQUIRE(invoke({"enumerate", "--class", "bond-tree", "--n", "6", "--out", bt, "--quiet"}).code == 0);
  Run report = invoke({"analyze", "report", "--in", sa});
  CHECK(report.code == 0);
  CHECK(manifest(report.out)["class"] == "site-animal");
  CHECK(lines(report.out).size() == 8);
  Run diag = invoke({"analyze", "diagnostic", "--in", sa});
  CHECK(lines(diag.out).size() == 6);
  Run cmp = invoke({"analyze", "compare", "--in", sa, "--in2", bt});
  CHECK(lines(cmp.out).at(5) == "4,19,22,true,19/22,0.86363636363636354");
  std::filesystem::remove(sa);
  std::filesystem::remove(bt);
}

TEST_CASE("selftest passes and detects the injected fault") {
  std::ostringstream ok, bad;
  CHECK(cli::selftest({false, 2}, ok) == 0);
  CHECK(ok.str().find("FAIL") == std::string::npos);
  CHECK(cli::selftest({true, 1}, bad) == 1);
  CHECK(bad.str().find("FAIL percolation-forms") != std::string::npos);
  CHECK(invoke({"selftest", "--inject-fault", "percolation-forms"}).code == cli::kExitFailure);
}
