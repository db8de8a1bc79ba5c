#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bass/cli.hpp"
#include "support.hpp"

using namespace bass;
using namespace bass::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::main_entry(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "bass_cli_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string free_input_bnet(std::size_t k) {
  std::string text = "targets, factors\n";
  for (std::size_t i = 0; i < k; ++i) text += "x" + std::to_string(i) + ", x" + std::to_string(i) + "\n";
  return text;
}

}  // namespace

TEST_CASE("solve on the small ADF") {
  const std::string path = write_temp("small.adf", kSmallAdf);
  CHECK(invoke({"solve", "--sem", "prf", "--count", path}).out == "2\n");
  CHECK(invoke({"solve", "--sem", "stb", "--enumerate", path}).out == "a:1 b:0 c:0\n");
  CHECK(invoke({"solve", "--sem", "grd", "--enumerate", path}).out == "a:1 b:* c:*\n");
  CHECK(invoke({"solve", "--sem", "adm", "--count", path}).out == "5\n");
  CHECK(invoke({"solve", "--sem", "com", "--enumerate", "--limit", "1", path}).out == "a:1 b:0 c:0\n");
  CHECK(invoke({"solve", "--sem", "stb", "--sample", "3", "--seed", "4", path}).out ==
        "a:1 b:0 c:0\na:1 b:0 c:0\na:1 b:0 c:0\n");
}

TEST_CASE("solve reads standard input") {
  CHECK(invoke({"solve", "--sem", "2v", "--count"}, kSmallAdf).out == "2\n");
  CHECK(invoke({"solve", "--sem", "2v", "--count", "--format", "bnet", "-"},
               "a, 1\nb, !a | c\nc, b\n").out == "2\n");
}

TEST_CASE("count on twenty free inputs") {
  const std::string path = write_temp("free20.bnet", free_input_bnet(20));
  CHECK(invoke({"solve", "--sem", "com", "--count", path}).out == "3486784401\n");
  CHECK(invoke({"solve", "--sem", "stb", "--count", path}).out == "1\n");
}

TEST_CASE("count and enumerate agree") {
  Rng rng(601);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string path = write_temp("agree.adf", write_adf(random_adf(rng, 5, 4)));
    for (const char* sem : {"adm", "com", "grd", "prf", "2v", "stb"}) {
      const auto counted = invoke({"solve", "--sem", sem, "--count", path});
      const auto listed = invoke({"solve", "--sem", sem, "--enumerate", path});
      REQUIRE(counted.status == cli::kExitOk);
      std::size_t lines = 0;
      for (char c : listed.out) lines += c == '\n';
      CHECK(std::to_string(lines) + "\n" == counted.out);
    }
  }
}

TEST_CASE("json output") {
  const std::string path = write_temp("small_json.adf", kSmallAdf);
  const auto r = invoke({"solve", "--sem", "prf", "--enumerate", "--json", path});
  REQUIRE(r.status == cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["semantics"] == "prf");
  CHECK(doc["count"] == "2");
  CHECK(doc["solutions"].size() == 2);
  CHECK(doc["solutions"][0] == nlohmann::json{{"a", "1"}, {"b", "0"}, {"c", "0"}});
  CHECK(doc.contains("elapsed_ms"));

  const auto c = nlohmann::json::parse(invoke({"solve", "--sem", "adm", "--count", "--json", path}).out);
  CHECK_FALSE(c.contains("solutions"));
}

TEST_CASE("timing goes to standard error") {
  const std::string path = write_temp("small_time.adf", kSmallAdf);
  const auto r = invoke({"solve", "--sem", "adm", "--count", "--time", path});
  CHECK(r.out == "5\n");
  CHECK(r.err.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("oracle flag and input restriction flag") {
  Rng rng(607);
  for (int trial = 0; trial < 10; ++trial) {
    const std::string path = write_temp("oracle.adf", write_adf(random_adf_with_free_input(rng, 5, 4)));
    for (const char* sem : {"prf", "stb"}) {
      CHECK(invoke({"solve", "--sem", sem, "--count", "--oracle", path}).status == cli::kExitOk);
      CHECK(invoke({"solve", "--sem", sem, "--count", path}).out ==
            invoke({"solve", "--sem", sem, "--count", "--no-input-restriction", path}).out);
    }
  }
}

TEST_CASE("input errors") {
  const auto missing = invoke({"solve", "--sem", "adm", "--count", "/nonexistent/file.adf"});
  CHECK(missing.status == cli::kExitInputError);

  const std::string bad = write_temp("bad.adf", "s(a).\nac(a, and(a,\n b)).");
  const auto parse = invoke({"solve", "--sem", "adm", "--count", bad});
  CHECK(parse.status == cli::kExitInputError);
  CHECK(parse.err.find("3:2") != std::string::npos);

  CHECK(invoke({"solve", "--sem", "naive", "--count"}, kSmallAdf).status == cli::kExitInputError);
  CHECK(invoke({"solve", "--count", "--enumerate"}, kSmallAdf).status == cli::kExitInputError);
  CHECK(invoke({}).status == cli::kExitInputError);
}

TEST_CASE("convert round-trips") {
  const std::string adf_path = write_temp("small_conv.adf", kSmallAdf);
  const auto to_bnet = invoke({"convert", "--to", "bnet", adf_path});
  REQUIRE(to_bnet.status == cli::kExitOk);
  CHECK(trimmed(to_bnet.out) == "targets, factors\na, 1\nb, !a | c\nc, b");
  const std::string bnet_path = write_temp("small_conv.bnet", to_bnet.out);
  for (const char* sem : {"adm", "com", "grd", "prf", "2v", "stb"}) {
    CHECK(invoke({"solve", "--sem", sem, "--count", adf_path}).out ==
          invoke({"solve", "--sem", sem, "--count", bnet_path}).out);
  }
  const auto back = invoke({"convert", "--to", "adf", bnet_path});
  CHECK(parse_adf(back.out) == parse_adf(kSmallAdf));

  const std::string and_net = "targets, factors\na, b & c\nb, a & c\nc, a & b & c\n";
  const std::string and_path = write_temp("and.bnet", and_net);
  const std::string and_adf = write_temp("and.adf", invoke({"convert", "--to", "adf", and_path}).out);
  CHECK(trimmed(invoke({"convert", "--to", "bnet", and_adf}).out) == trimmed(and_net));
}

TEST_CASE("convert preserves counts on random ADFs") {
  Rng rng(613);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    const std::string adf_path = write_temp("rand.adf", write_adf(random_adf(rng, n, 4, false)));
    const std::string bnet_path = write_temp("rand.bnet", invoke({"convert", adf_path}).out);
    for (const char* sem : {"adm", "com", "prf", "2v", "stb"}) {
      CHECK(invoke({"solve", "--sem", sem, "--count", adf_path}).out ==
            invoke({"solve", "--sem", sem, "--count", bnet_path}).out);
    }
  }
}

TEST_CASE("convert aborts over the node budget") {
  std::string expr = "a";
  for (int i = 0; i < 30; ++i) expr = "xor(" + expr + ",a)";
  const std::string path = write_temp("blowup.adf", "s(a). ac(a," + expr + ").");
  const auto r = invoke({"convert", "--to", "bnet", path});
  CHECK(r.status == cli::kExitResourceLimit);
  CHECK(r.err.find("a") != std::string::npos);
  CHECK(r.out.empty());

  setenv("BASS_NODE_BUDGET", "5", 1);
  CHECK(cli::node_budget_from_env() == 5);
  const std::string small = write_temp("small_xor.adf", "s(a). s(b). ac(a, xor(a,b)). ac(b,b).");
  CHECK(invoke({"convert", "--to", "bnet", small}).status == cli::kExitResourceLimit);
  unsetenv("BASS_NODE_BUDGET");
  CHECK(invoke({"convert", "--to", "bnet", small}).status == cli::kExitOk);
}
