#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "classpoly/dataset.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("classpoly_cli_" + name + "_" + std::to_string(::getpid()));
}

Run run(const std::string& args) {
  const auto err_path = scratch("stderr");
  const std::string cmd = std::string(CLASSPOLY_CLI) + " " + args + " 2>" + err_path.string();
  Run r{};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace

TEST_CASE("ramanujan 107 --json") {
  const Run r = run("ramanujan 107 --json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"] == json({"-1", "4", "-2", "1"}));
  CHECK(j["kind"] == "ramanujan");
  CHECK(j["schema_version"] == 1);
  CHECK(j["discriminant"]["sign"] == -1);
}

TEST_CASE("disc 227 --text") {
  const Run r = run("disc 227 --text");
  CHECK(r.code == 0);
  CHECK(r.out.find("Δ(P_227) = +2^4·227^2") != std::string::npos);
  CHECK(r.out.find("index = 2^156·5^30·13^10·17^10·31^2·37^3·41^2·61^2·83·151·179·191·199") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  Run r = run("verify 9999");
  CHECK(r.code == 1);
  CHECK(r.err.find("n must be ≡ 11 (mod 24)") != std::string::npos);
  CHECK(run("ramanujan 13").code == 1);
  CHECK(run("hilbert -5").code == 1);
  CHECK(run("bogus 11").code == 1);
  CHECK(run("hilbert").code == 1);
  CHECK(run("hilbert 11 --json --csv").code == 1);
  CHECK(run("hilbert 11 --precision-bits 10").code == 1);
}

TEST_CASE("fixed precision too low exits 3") {
  CHECK(run("hilbert 995 --precision-bits 64").code == 3);
}

TEST_CASE("other subcommands") {
  Run r = run("classgroup 1235 --json");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["invariant_factors"] == json({2, 6}));
  r = run("hilbert 11 --text");
  CHECK(r.code == 0);
  CHECK(r.out.find("H_11(z) = z + 32768") != std::string::npos);
  r = run("verify 227 --json");
  CHECK(r.code == 0);
  const json v = json::parse(r.out);
  CHECK(v["square_quotient"]["holds"] == true);
  CHECK(v["field_discriminant"]["value"]["factors"] == json::array({json::array({"227", "2"})}));
  CHECK(run("verify 59").code == 0);
  CHECK(run("verify 59 --strict").code == 2);
}

TEST_CASE("perturbed dataset makes verify exit 2") {
  json j = json::parse(classpoly::embedded_dataset_text());
  for (auto& row : j["table2"]) {
    if (row["n"] == 227) row["discriminant"]["factors"][0][1] = "6";
  }
  const auto path = scratch("dataset.json");
  std::ofstream(path) << j.dump();
  const Run r = run("verify 227 --dataset " + path.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("table.factorization") != std::string::npos);
  CHECK(run("verify 227 --dataset " + path.string() + ".missing").code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("table sweep is stable across runs, widths and the cache") {
  const Run a = run("table --csv --from 11 --to 995");
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("n,h,sign,factorization,invariant_factors,match\n", 0) == 0);
  CHECK(a.out.find("731,12,-,2^52×17^6×19^2×43^5×263^2×479^2,12,yes") != std::string::npos);
  CHECK(a.out.find(",no\n") == std::string::npos);
  CHECK(run("table --csv --from 11 --to 995").out == a.out);
  CHECK(run("table --csv --from 11 --to 995 --jobs 4").out == a.out);
  const auto dir = scratch("cache");
  std::filesystem::remove_all(dir);
  const Run cold = run("table --csv --to 995 --jobs 3 --cache " + dir.string());
  CHECK(cold.out == a.out);
  CHECK(std::filesystem::exists(dir / "ramanujan_227.json"));
  CHECK(std::filesystem::exists(dir / "hilbert_995.json"));
  const Run warm = run("table --csv --to 995 --cache " + dir.string());
  CHECK(warm.code == 0);
  CHECK(warm.out == a.out);
  CHECK(warm.err.find("identical") != std::string::npos);
  const Run cached_poly = run("ramanujan 227 --json --cache " + dir.string());
  CHECK(json::parse(cached_poly.out)["coefficients"] == json({"-1", "9", "-9", "9", "-5", "1"}));
  std::filesystem::remove_all(dir);
}
