// Copyright 2026 The ppsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

const std::string kData = PPSIM_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ppsim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string system_file(const std::string& name) { return kData + "/systems/" + name + ".json"; }

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "ppsim_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_scratch(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path;
}

void check_error_line(const Outcome& o, const std::string& code) {
  CAPTURE(o.err);
  CHECK(o.out.empty());
  REQUIRE(!o.err.empty());
  CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
  const json e = json::parse(o.err);
  CHECK(e.at("code") == code);
  CHECK(e.at("message").is_string());
  CHECK(e.at("context").is_string());
}

}  // namespace

TEST_CASE("presets command") {
  const auto o = invoke({"presets"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.size() == 4);
  CHECK(j["chloroform"]["gamma"] == json::array({1.4048, 5.5857}));
  CHECK(j["homonuclear-2"]["gamma"] == json::array({1.0, 1.0}));
  CHECK(j["homonuclear-3"]["gamma"] == json::array({1.0, 1.0, 1.0}));
  CHECK(j["hetero-3"]["gamma"] == json::array({1.4048, 1.4048, 5.5857}));
}

TEST_CASE("prepare chloroform |00>") {
  const auto o = invoke({"prepare", "--system", system_file("chloroform"), "--target", "00"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  const std::vector<double> expected{6.9905, -2.3303, -2.3303, -2.3303};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(j["diagonal"][i].get<double>() - expected[i]) <= 1e-3);
  CHECK(std::abs(j["pure_part"]["pure"].get<double>() - 9.3208) <= 1e-3);
  CHECK(j["pure_part"]["target"] == "00");
  CHECK(j["population_spread"].get<double>() < 1e-6);
}

TEST_CASE("prepare with explicit angles") {
  const auto o = invoke({"prepare", "--system", "homonuclear-2", "--target", "00", "--angles", "77.40,77.40"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["angles_deg"] == json::array({77.4, 77.4}));
  CHECK(j["pure_part"].is_null());  // rounded angles miss the 1e-6 default
  CHECK(j["population_spread"].get<double>() < 1e-3);
  const auto loose = json::parse(invoke({"prepare", "--system", "homonuclear-2", "--target", "00", "--angles",
                                         "77.40,77.40", "--pure-tol", "1e-3"})
                                     .out);
  CHECK(loose["pure_part"]["target"] == "00");
}

TEST_CASE("solve homonuclear 2-spin") {
  const auto o = invoke({"solve", "--system", system_file("homonuclear2"), "--target", "00"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  const double root = ppsim::oracle::homonuclear_root_deg();
  bool found = false;
  for (const auto& r : j["roots"]) {
    const double a = r["angles_deg"][0], b = r["angles_deg"][1];
    if (std::abs(a - 77.42) <= 0.05 && std::abs(b - 77.42) <= 0.05) {
      found = true;
      CHECK(a == doctest::Approx(root).epsilon(1e-8));
    }
  }
  CHECK(found);
}

TEST_CASE("run programs") {
  const auto o = invoke({"run", "--system", system_file("chloroform"), "--program",
                         kData + "/programs/hogg_v1_and_v2.pp"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["pure_part"]["target"] == "11");
  CHECK(j["statements"] == 5);

  const auto basis = json::parse(
      invoke({"run", "--system", "chloroform", "--program", kData + "/programs/readout_spin1.pp", "--initial", "01"})
          .out);
  CHECK(std::abs(basis["trace"].get<double>()) < 1e-12);
  CHECK(basis["diagonal"] == json::array({-0.25, 0.25, -0.25, 0.25}));
}

TEST_CASE("spectrum CSV") {
  const auto state = scratch() / "pp00.json";
  REQUIRE(invoke({"prepare", "--system", "chloroform", "--target", "00", "-o", state.string()}).code == 0);
  for (const char* spin : {"1", "2"}) {
    const auto o = invoke({"spectrum", "--system", "chloroform", "--state", state.string(), "--spin", spin});
    REQUIRE(o.code == 0);
    std::istringstream lines(o.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "freq_hz,re,im,transition");
    CHECK(first.rfind("107.475,0,-9.32066666", 0) == 0);
    CHECK(second.rfind("-107.475,0,0,", 0) == 0);
  }
  const auto eq = json::parse(
      invoke({"spectrum", "--system", "chloroform", "--state", "thermal", "--spin", "2", "--format", "json"}).out);
  CHECK(eq["lines"][0]["im"] == eq["lines"][1]["im"]);

  const auto svg = invoke({"plot", "--system", "chloroform", "--state", state.string()});
  REQUIRE(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(svg.out.find("id=\"spin1\"") != std::string::npos);
  CHECK(svg.out.find("id=\"spin2\"") != std::string::npos);
}

TEST_CASE("tomo and hogg") {
  const auto clean = json::parse(invoke({"tomo", "--system", "chloroform", "--state", "thermal"}).out);
  CHECK(clean["max_rel_error"].get<double>() < 1e-9);
  CHECK(clean["settings_used"] == 9);

  const auto h = json::parse(invoke({"hogg", "--system", "chloroform", "--formula", "V1&!V2"}).out);
  CHECK(h["solution"] == "10");
  CHECK(std::abs(h["probabilities"]["10"].get<double>() - 1.0) < 1e-9);
}

TEST_CASE("determinism") {
  const std::vector<std::string> args{"tomo", "--system", "chloroform", "--state", "thermal", "--noise", "0.01",
                                      "--seed", "11"};
  const auto a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(std::hash<std::string>{}(a.out) == std::hash<std::string>{}(b.out));
  CHECK(a.out != invoke({"tomo", "--system", "chloroform", "--state", "thermal", "--noise", "0.01", "--seed", "12"}).out);

  ::setenv("PPSIM_SEED", "11", 1);
  const auto env = invoke({"tomo", "--system", "chloroform", "--state", "thermal", "--noise", "0.01"});
  ::unsetenv("PPSIM_SEED");
  CHECK(env.out == a.out);

  SUBCASE("separate processes") {
    const std::string bin = PPSIM_BINARY;
    const auto dir = scratch();
    std::vector<std::size_t> hashes;
    for (int i = 0; i < 2; ++i) {
      const auto file = dir / ("solve" + std::to_string(i) + ".json");
      const std::string cmd = bin + " solve --system " + system_file("homonuclear3") + " --target 000 > " +
                              file.string();
      const int status = std::system(cmd.c_str());
      REQUIRE(WIFEXITED(status));
      CHECK(WEXITSTATUS(status) == 0);
      std::ifstream in(file);
      hashes.push_back(std::hash<std::string>{}(std::string(std::istreambuf_iterator<char>(in), {})));
    }
    CHECK(hashes[0] == hashes[1]);
  }
}

TEST_CASE("exit codes") {
  const auto bad_program = write_scratch("bad.pp", "block { sel 1 1 x 90 }\n");
  const auto bad_system = write_scratch("bad_system.json", R"({"gamma": [1, 1], "j_hz": [[0, 1], [2, 0]]})");

  SUBCASE("input errors") {
    const std::vector<std::vector<std::string>> cases{
        {"run", "--system", "chloroform", "--program", "missing.pp"},
        {"run", "--system", "chloroform", "--program", bad_program.string()},
        {"prepare", "--system", "no/such/system.json", "--target", "00"},
        {"prepare", "--system", bad_system.string(), "--target", "00"},
        {"prepare", "--system", "chloroform", "--target", "0x"},
        {"prepare", "--system", "chloroform", "--target", "000"},
        {"prepare", "--system", "chloroform", "--target", "00", "--angles", "10,abc"},
        {"prepare", "--system", "chloroform"},
        {"hogg", "--system", "chloroform", "--formula", "V1|V2"},
        {"spectrum", "--system", "chloroform", "--state", "missing.json"},
        {"spectrum", "--system", "chloroform", "--state", "thermal", "--pulse", "z45"},
        {"spectrum", "--system", "chloroform", "--state", "thermal", "--spin", "3"},
        {"tomo", "--system", "chloroform", "--state", "thermal", "--noise", "-1"},
        {"frobnicate"},
        {},
    };
    for (const auto& args : cases) {
      std::string joined;
      for (const auto& a : args) joined += a + " ";
      CAPTURE(joined);
      const auto o = invoke(args);
      CHECK(o.code == 1);
      check_error_line(o, "input_error");
    }
  }

  SUBCASE("bad seed in the environment") {
    ::setenv("PPSIM_SEED", "-3", 1);
    const auto o = invoke({"tomo", "--system", "chloroform", "--state", "thermal"});
    ::unsetenv("PPSIM_SEED");
    CHECK(o.code == 1);
  }

  SUBCASE("no solution") {
    const auto o = invoke({"solve", "--system", "chloroform", "--target", "00", "--max-angle", "20"});
    CHECK(o.code == 2);
    check_error_line(o, "no_solution");
  }

  SUBCASE("precondition") {
    const auto o = invoke({"hogg", "--system", "chloroform", "--formula", "V1&V2", "--state", "thermal"});
    CHECK(o.code == 3);
    check_error_line(o, "precondition_failed");
  }

  SUBCASE("help") {
    const auto o = invoke({"--help"});
    CHECK(o.code == 0);
    CHECK(o.out.find("prepare") != std::string::npos);
  }

  SUBCASE("process exit status") {
    const std::string cmd = std::string(PPSIM_BINARY) + " run --system chloroform --program missing.pp 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 1);
  }
}
