#include <doctest.h>

#include "fht/generators.hpp"
#include "fht/io.hpp"
#include "helpers.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <string>

using namespace fht;
using fht::testing::CliResult;
using fht::testing::TempDir;
using fht::testing::canonical2;
using fht::testing::read_file;
using fht::testing::run_cli;

namespace {

nlohmann::json first_record(const std::string& out) {
  const size_t end = out.find('\n');
  return nlohmann::json::parse(out.substr(0, end));
}

std::vector<nlohmann::json> all_records(const std::string& out) {
  std::vector<nlohmann::json> records;
  size_t pos = 0;
  while (pos < out.size()) {
    size_t end = out.find('\n', pos);
    if (end == std::string::npos) end = out.size();
    if (end > pos) records.push_back(nlohmann::json::parse(out.substr(pos, end - pos)));
    pos = end + 1;
  }
  return records;
}

}  // namespace

TEST_CASE("cli: generate ring writes the documented byte count") {
  TempDir tmp;
  const std::string out = tmp.path("ring3.fht");
  const CliResult res = run_cli(
      "generate ring --modes 3 --length 10 --v0 1 --sigma 1 --out " + out, tmp);
  REQUIRE(res.exit_code == 0);
  CHECK(read_file(out).size() == 808);

  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("record") == "generate");
  CHECK(rec.at("model") == "ring");
  CHECK(rec.at("n_modes") == 3);
  CHECK(rec.at("symmetry_ok") == true);
  CHECK(rec.at("symmetry_max_defect").get<double>() <= 1e-13);
}

TEST_CASE("cli: generate random with one mode is the zero tensor") {
  TempDir tmp;
  const std::string out = tmp.path("n1.fht");
  const CliResult res =
      run_cli("generate random --modes 1 --seed 3 --out " + out, tmp);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("tensor_max_abs") == 0.0);
  CHECK(rec.at("symmetry_max_defect") == 0.0);
}

TEST_CASE("cli: generate is deterministic per seed") {
  TempDir tmp;
  const std::string a = tmp.path("a.fht");
  const std::string b = tmp.path("b.fht");
  REQUIRE(run_cli("generate random --modes 4 --seed 11 --out " + a, tmp)
              .exit_code == 0);
  REQUIRE(run_cli("generate random --modes 4 --seed 11 --out " + b, tmp)
              .exit_code == 0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("cli: generate rejects invalid parameters with exit 2") {
  TempDir tmp;
  CHECK(run_cli("generate ring --modes 0 --out " + tmp.path("x.fht"), tmp)
            .exit_code == 2);
  CHECK(run_cli("generate ring --modes 3 --length -4 --out " + tmp.path("y.fht"),
                tmp)
            .exit_code == 2);
}

TEST_CASE("cli: generate reports I/O failures with exit 3") {
  TempDir tmp;
  CHECK(run_cli("generate random --modes 2 --seed 0 --out /nonexistent-dir/x.fht",
                tmp)
            .exit_code == 3);
}

TEST_CASE("cli: factorize the worked 2-mode example") {
  TempDir tmp;
  const std::string tensor = tmp.path("c2.fht");
  save_tensor_file(tensor, canonical2(), false);
  const std::string factors = tmp.path("c2.fhtf");
  const CliResult res =
      run_cli("factorize --in " + tensor + " --out " + factors, tmp);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("record") == "factorize");
  CHECK(rec.at("slices") == 4);
  CHECK(rec.at("l_s") == 3);
  CHECK(rec.at("l_a") == 1);
  CHECK(rec.at("weight_min").get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rec.at("weight_max").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.at("reconstruction_error").get<double>() < 1e-12);
  CHECK(read_file(factors).find("FactorFileV1") != std::string::npos);
}

TEST_CASE("cli: factorize the zero tensor keeps no slices") {
  TempDir tmp;
  const std::string tensor = tmp.path("zero.fht");
  REQUIRE(run_cli("generate random --modes 1 --seed 0 --out " + tensor, tmp)
              .exit_code == 0);
  const CliResult res = run_cli(
      "factorize --in " + tensor + " --out " + tmp.path("zero.fhtf"), tmp);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("slices") == 0);
  CHECK(rec.at("reconstruction_error") == 0.0);
}

TEST_CASE("cli: factorize reports the antisymmetric slice count honestly") {
  // Real-basis instances retain their exchange-induced antisymmetric slices:
  // n (n-1) / 2 of them at 3 modes is 3.
  TempDir tmp;
  const std::string tensor = tmp.path("rb.fht");
  REQUIRE(run_cli("generate real-basis --modes 3 --rank 3 --seed 0 --out " +
                      tensor,
                  tmp)
              .exit_code == 0);
  const CliResult res = run_cli(
      "factorize --in " + tensor + " --out " + tmp.path("rb.fhtf"), tmp);
  REQUIRE(res.exit_code == 0);
  CHECK(first_record(res.out).at("l_a") == 3);
}

TEST_CASE("cli: factorize propagates symmetry failures as exit 4") {
  TempDir tmp;
  const std::string tensor = tmp.path("bad.fht");
  save_tensor_file(tensor, canonical2(), false);
  std::string bytes = read_file(tensor);
  double bad = 0.5;
  std::memcpy(bytes.data() + 16 + 8, &bad, 8);  // h(0,0,0,1) = 0.5
  std::ofstream(tensor, std::ios::binary | std::ios::trunc) << bytes;
  CHECK(run_cli("factorize --in " + tensor + " --out " + tmp.path("o.fhtf"),
                tmp)
            .exit_code == 4);
}

TEST_CASE("cli: missing input file is exit 3") {
  TempDir tmp;
  CHECK(run_cli("factorize --in " + tmp.path("nope.fht") + " --out " +
                    tmp.path("o.fhtf"),
                tmp)
            .exit_code == 3);
}

TEST_CASE("cli: verify accepts an untruncated pipeline output") {
  TempDir tmp;
  const std::string tensor = tmp.path("ring3.fht");
  const std::string factors = tmp.path("ring3.fhtf");
  REQUIRE(run_cli("generate ring --modes 3 --out " + tensor, tmp).exit_code ==
          0);
  REQUIRE(run_cli("factorize --in " + tensor + " --out " + factors, tmp)
              .exit_code == 0);
  const CliResult res =
      run_cli("verify --tensor " + tensor + " --factors " + factors, tmp);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("pass") == true);
  CHECK(rec.at("fock_checked") == true);
  CHECK(rec.at("reconstruction_error").get<double>() < 1e-10);
  CHECK(rec.at("fock_error").get<double>() < 1e-10);
  CHECK(rec.at("spectrum_error").get<double>() < 1e-10);
}

TEST_CASE("cli: verify flags a hand-deleted slice with exit 6") {
  TempDir tmp;
  const std::string tensor = tmp.path("t.fht");
  const std::string factors = tmp.path("t.fhtf");
  REQUIRE(run_cli("generate random --modes 3 --seed 5 --out " + tensor, tmp)
              .exit_code == 0);
  REQUIRE(run_cli("factorize --in " + tensor + " --out " + factors, tmp)
              .exit_code == 0);

  nlohmann::json doc = nlohmann::json::parse(read_file(factors));
  REQUIRE(doc.at("slices").size() > 1);
  doc["slices"].erase(0);
  std::ofstream(factors, std::ios::trunc) << doc.dump();

  const CliResult res =
      run_cli("verify --tensor " + tensor + " --factors " + factors, tmp);
  CHECK(res.exit_code == 6);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("pass") == false);
  CHECK(rec.at("reconstruction_error").get<double>() > 1e-6);
  CHECK(res.err.find("verification failed") != std::string::npos);
}

TEST_CASE("cli: verify rejects mismatched mode counts with exit 2") {
  TempDir tmp;
  const std::string ring = tmp.path("ring3.fht");
  const std::string c2 = tmp.path("c2.fht");
  const std::string factors = tmp.path("c2.fhtf");
  REQUIRE(run_cli("generate ring --modes 3 --out " + ring, tmp).exit_code == 0);
  save_tensor_file(c2, canonical2(), false);
  REQUIRE(run_cli("factorize --in " + c2 + " --out " + factors, tmp)
              .exit_code == 0);
  CHECK(run_cli("verify --tensor " + ring + " --factors " + factors, tmp)
            .exit_code == 2);
}

TEST_CASE("cli: verify --no-validate defers to the downstream checks") {
  TempDir tmp;
  const std::string tensor = tmp.path("t.fht");
  const std::string factors = tmp.path("t.fhtf");
  REQUIRE(run_cli("generate random --modes 3 --seed 9 --out " + tensor, tmp)
              .exit_code == 0);
  REQUIRE(run_cli("factorize --in " + tensor + " --out " + factors, tmp)
              .exit_code == 0);

  // Break one tensor entry: loading now fails validation (exit 4), while
  // --no-validate proceeds to the comparison and reports the mismatch (6).
  std::string bytes = read_file(tensor);
  double bad = 123.0;
  std::memcpy(bytes.data() + 16 + 8, &bad, 8);
  std::ofstream(tensor, std::ios::binary | std::ios::trunc) << bytes;

  CHECK(run_cli("verify --tensor " + tensor + " --factors " + factors, tmp)
            .exit_code == 4);
  CHECK(run_cli("verify --no-validate --tensor " + tensor + " --factors " +
                    factors,
                tmp)
            .exit_code == 6);
}

TEST_CASE("cli: truncation scan emits one row per threshold") {
  TempDir tmp;
  const std::string tensor = tmp.path("ring5.fht");
  REQUIRE(run_cli("generate ring --modes 5 --out " + tensor, tmp).exit_code ==
          0);
  const CliResult res = run_cli(
      "truncation-scan --in " + tensor +
          " --thresholds 0 1e-6 1e-4 1e-3 1e-2 0.1 0.5 10",
      tmp);
  REQUIRE(res.exit_code == 0);
  const auto rows = all_records(res.out);
  REQUIRE(rows.size() == 8);
  double prev = -1.0;
  for (const auto& row : rows) {
    CHECK(row.at("record") == "truncation_row");
    const double err = row.at("reconstruction_error").get<double>();
    CHECK(err >= prev - 1e-15);
    prev = err;
  }
  CHECK(rows.front().at("reconstruction_error").get<double>() <= 1e-12);
  CHECK(rows.back().at("kept_slices") == 0);
}

TEST_CASE("cli: truncation scan rejects descending thresholds") {
  TempDir tmp;
  const std::string tensor = tmp.path("t.fht");
  REQUIRE(run_cli("generate random --modes 2 --seed 1 --out " + tensor, tmp)
              .exit_code == 0);
  CHECK(run_cli("truncation-scan --in " + tensor + " --thresholds 0.1 0.01",
                tmp)
            .exit_code == 2);
}

TEST_CASE("cli: trotter scan reports the nan sentinel when errors vanish") {
  TempDir tmp;
  const std::string tensor = tmp.path("ring3.fht");
  REQUIRE(run_cli("generate ring --modes 3 --out " + tensor, tmp).exit_code ==
          0);
  const CliResult res = run_cli(
      "trotter-scan --in " + tensor + " --dts 0.2 0.1 0.05 0.025", tmp);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json rec = first_record(res.out);
  CHECK(rec.at("record") == "trotter_scan");
  // The 3-mode ring's ordered slice exponentials cancel to rounding noise,
  // so every error sits below the fitting floor and the slope is "nan".
  for (const auto& err : rec.at("errors")) CHECK(err.get<double>() <= 1e-13);
  CHECK(rec.at("slope") == "nan");
}

TEST_CASE("cli: trotter scan fits slope 2 on a generic random instance") {
  TempDir tmp;
  const std::string tensor = tmp.path("r4.fht");
  REQUIRE(run_cli("generate random --modes 4 --seed 0 --out " + tensor, tmp)
              .exit_code == 0);
  const CliResult res = run_cli(
      "trotter-scan --in " + tensor + " --dts 0.2 0.1 0.05 0.025", tmp);
  REQUIRE(res.exit_code == 0);
  const double slope = first_record(res.out).at("slope").get<double>();
  CHECK(slope > 1.9);
  CHECK(slope < 2.1);
}

TEST_CASE("cli: trotter scan usage guards") {
  TempDir tmp;
  const std::string tensor = tmp.path("t.fht");
  REQUIRE(run_cli("generate random --modes 2 --seed 1 --out " + tensor, tmp)
              .exit_code == 0);
  CHECK(run_cli("trotter-scan --in " + tensor + " --dts", tmp).exit_code == 2);
  CHECK(run_cli("trotter-scan --in " + tensor, tmp).exit_code == 2);

  const std::string big = tmp.path("big.fht");
  REQUIRE(run_cli("generate random --modes 9 --seed 1 --out " + big, tmp)
              .exit_code == 0);
  CHECK(run_cli("trotter-scan --in " + big + " --dts 0.1", tmp).exit_code == 2);
}

TEST_CASE("cli: usage errors") {
  TempDir tmp;
  CHECK(run_cli("no-such-command", tmp).exit_code == 2);
  CHECK(run_cli("factorize --in only.fht", tmp).exit_code == 2);  // missing --out
  CHECK(run_cli("", tmp).exit_code == 2);  // a subcommand is required
}

TEST_CASE("cli: --help exits zero") {
  TempDir tmp;
  CHECK(run_cli("--help", tmp).exit_code == 0);
  CHECK(run_cli("generate --help", tmp).exit_code == 0);
}
