#include "nodalgen/cli.hpp"
#include "nodalgen/serialize.hpp"

#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nodalgen;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nodalgen_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("severi") {
  const Result r = run({"severi", "--d", "3", "--delta", "1"});
  CHECK(r.status == 0);
  CHECK(r.out == "12\n");
  CHECK(run({"severi", "--d", "4", "--delta", "3"}).out == "675\n");
  CHECK(run({"severi", "--d", "2", "--delta", "0", "--alpha", "0,1", "--beta", ""}).out == "1\n");

  const Result j = run({"--format", "json", "severi", "--d", "4", "--delta", "3"});
  const io::json doc = io::parse(j.out);
  CHECK(doc.at("value") == "675");
  CHECK(io::dump(doc) == j.out);

  const Result table = run({"severi", "--d", "3", "--delta", "1", "--table", "--format", "csv"});
  CHECK(table.status == 0);
  CHECK(table.out.find("d,delta,value\n") == 0);
  CHECK(table.out.find("3,1,12\n") != std::string::npos);
}

TEST_CASE("fit") {
  const Result r = run({"fit", "--max-delta", "8", "--degrees", "5,6,7,8,9", "--format", "json"});
  REQUIRE(r.status == 0);
  const io::json doc = io::parse(r.out);
  CHECK(doc.at("B1").at("coefficients").back() == "-1737670");
  CHECK(doc.at("B2").at("coefficients").back() == "-362700");
  CHECK(doc.at("consistent") == true);
  io::json reemitted = io::to_json(io::fit_from_json(doc));
  reemitted["kind"] = "fit";
  CHECK(io::dump(reemitted) == r.out);

  CHECK(run({"fit", "--max-delta", "6", "--three-degree-check"}).status == 0);
  CHECK(run({"fit", "--max-delta", "8", "--degrees", "4,5"}).status == 2);
  CHECK(run({"fit", "--max-delta", "8", "--degrees", "x"}).status == 2);
}

TEST_CASE("surfaces, node polynomials and Q") {
  CHECK(run({"surface", "--kind", "abelian", "--r", "0", "--order", "7", "--coeff", "6"}).out == "432\n");
  const Result k3 = run({"surface", "--kind", "k3", "--r", "0", "--order", "3", "--format", "json"});
  REQUIRE(k3.status == 0);
  const io::json doc = io::parse(k3.out);
  CHECK(doc.dump().find("\"3200\"") != std::string::npos);
  CHECK(run({"surface", "--kind", "bielliptic"}).status == 2);
  CHECK(run({"surface", "--kind", "p2", "--d", "5", "--max-delta", "3"}).status == 0);
  CHECK(run({"surface", "--kind", "ruled", "--e", "0", "--n", "1", "--m", "1", "--max-delta", "2", "--format", "csv"})
            .out.find("1,2,true") != std::string::npos);

  CHECK(run({"nodepoly", "--delta", "1"}).out.find("3*d^2 - 6*d + 3") != std::string::npos);
  const Result q = run({"qmu", "--mu", "8", "--format", "json"});
  REQUIRE(q.status == 0);
  const Poly1 q8 = io::poly1_from_json(io::parse(q.out).at("polynomial"));
  CHECK(q8.coefficient(0) == -16 * 1141616);
  CHECK(q8.coefficient(4) == -16 * 282855);
}

TEST_CASE("forms and universal polynomials") {
  CHECK(run({"form", "DG2", "--order", "5"}).out == "DG2 = q + 6*q^2 + 12*q^3 + 28*q^4 + O(q^5)\n");
  CHECK(run({"form", "H7"}).status == 2);
  const Result u = run({"universal", "--max-delta", "2", "--format", "json"});
  REQUIRE(u.status == 0);
  CHECK(u.out.find("\"3 * x\"") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 2);
  CHECK(run({"bogus"}).status == 2);
  CHECK(run({"severi", "--d", "3"}).status == 2);
  CHECK(run({"severi", "--d", "3", "--delta", "1", "--format", "yaml"}).status == 2);
  const Result bad = run({"severi", "--d", "3", "--delta", "1", "--alpha", "1", "--beta", "1"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("InvalidProfile") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("output is deterministic and can go to a file") {
  const std::vector<std::string> args = {"universal", "--max-delta", "4", "--format", "json"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.out == b.out);
  const auto path = scratch("out.json");
  std::vector<std::string> to_file = args;
  to_file.push_back("--out");
  to_file.push_back(path.string());
  const Result c = run(to_file);
  CHECK(c.status == 0);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("cache management") {
  const auto path = scratch("cache.txt");
  std::filesystem::remove(path);
  CHECK(run({"cache", "warm", "--d-max", "5", "--delta-max", "6", "--cache", path.string()}).status == 0);
  CHECK(std::filesystem::exists(path));
  const std::string saved = slurp(path);
  CHECK(run({"severi", "--d", "5", "--delta", "4", "--cache", path.string()}).out == "36975\n");

  ::setenv("NODALGEN_CACHE", path.string().c_str(), 1);
  const Result info = run({"cache", "info", "--format", "csv"});
  CHECK(info.status == 0);
  CHECK(info.out.find(path.string()) != std::string::npos);

  // a corrupted cache is a computation error, not a usage error
  std::ofstream(path, std::ios::app) << "garbage\n";
  CHECK(run({"severi", "--d", "3", "--delta", "1"}).status == 1);
  CHECK(run({"cache", "clear"}).status == 0);
  CHECK_FALSE(std::filesystem::exists(path));
  ::unsetenv("NODALGEN_CACHE");
  CHECK(run({"cache", "info"}).status == 2);
}

TEST_CASE("verify") {
  const Result r = run({"verify", "quick", "--format", "json"});
  CHECK(r.status == 0);
  const io::json doc = io::parse(r.out);
  CHECK(doc.at("checks").size() == 10);
}

#ifdef NODALGEN_BIN
TEST_CASE("installed binary") {
  const std::string cmd = std::string(NODALGEN_BIN) + " severi --d 3 --delta 1 > " + scratch("bin.txt").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(scratch("bin.txt")) == "12\n");
  const std::string bad = std::string(NODALGEN_BIN) + " severi --d 3 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  std::filesystem::remove(scratch("bin.txt"));
}
#endif
