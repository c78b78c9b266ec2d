#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" CYCLOTOME_CLI "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cyclotome_cli_" + name);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("search") {
  auto r = run("search B --p1-max 120 --p-max 10 --json");
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["p1"] == 11);
  CHECK(j[0]["h"] == 1);
  CHECK(j[1]["p1"] == 107);
  CHECK(j[1]["h"] == 3);

  r = run("search A --p1 7 --m 1 --p-max 40 --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  bool skew = false, pds = false;
  for (const auto& row : j) {
    skew |= row["p"] == 11 && row["kind"] == "SkewHDS";
    pds |= row["p"] == 37 && row["kind"] == "PaleyPDS";
  }
  CHECK(skew);
  CHECK(pds);

  r = run("search B --p1-max 10 --p-max 10 --json");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out) == json::array());

  CHECK(run("search C --p-max 10").status == 2);
  CHECK(run("search B --p-max 10").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("construct and verify") {
  const auto file = tmp("skew1331.ds");
  auto r = run("construct A --p1 7 --m 1 --p 11 --index-set 0,1,2,3,4,5,6 --out " + file.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("k = 665") != std::string::npos);
  const std::string text = read_file(file);
  const auto header = json::parse(text.substr(0, text.find('\n')));
  CHECK(header["k"] == 665);

  const auto report = tmp("skew1331.json");
  r = run("verify " + file.string() + " --method both --out " + report.string());
  CHECK(r.status == 0);
  auto rep = json::parse(read_file(report));
  CHECK(rep["verdict"] == "SkewHDS");
  CHECK(rep["lambda"] == 332);

  // Thread count only changes the wall time.
  r = run("verify " + file.string() + " --method brute --threads 1 --json");
  auto one = json::parse(r.out);
  r = run("verify " + file.string() + " --method brute --threads 4 --json");
  auto four = json::parse(r.out);
  for (auto* j : {&one, &four}) {
    j->erase("wall_time_s");
    j->erase("threads");
  }
  CHECK(one == four);

  // One flipped bit.
  std::string tampered = text;
  const auto pos = text.find('\n') + 1;
  tampered[pos] = tampered[pos] == '0' ? '1' : '0';
  const auto bad = tmp("tampered.ds");
  std::ofstream(bad) << tampered;
  r = run("verify " + bad.string() + " --method both --json");
  CHECK(r.status == 1);
  CHECK(json::parse(r.out)["verdict"] == "Neither");
  CHECK(run("verify " + bad.string() + " --method brute").status == 1);

  std::ofstream(tmp("garbage.ds")) << "{\"version\":1}\nzz\n";
  CHECK(run("verify " + tmp("garbage.ds").string()).status == 2);
  CHECK(run("verify /nonexistent.ds").status == 2);
  CHECK(run("verify " + file.string() + " --method psychic").status == 2);

  const auto fileB = tmp("skew243.ds");
  r = run("construct B --p1 11 --p 3 --out " + fileB.string());
  CHECK(r.status == 0);
  const std::string textB = read_file(fileB);
  CHECK(json::parse(textB.substr(0, textB.find('\n')))["I"] == json::array({0, 1, 2, 3, 5, 6, 8, 9, 10, 15, 18}));
  r = run("verify " + fileB.string() + " --json");
  CHECK(r.status == 0);
  rep = json::parse(r.out);
  CHECK(rep["verdict"] == "SkewHDS");
  CHECK(rep["v"] == 243);
  CHECK(rep["k"] == 121);
  CHECK(rep["lambda"] == 60);

  r = run("construct A --p1 7 --m 1 --p 11 --random-seed 5 --json");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["k"] == 665);

  for (const auto& p : {file, report, bad, tmp("garbage.ds"), fileB}) std::filesystem::remove(p);
}

TEST_CASE("construct failures") {
  auto r = run("construct B --p1 43 --p 11");
  CHECK(r.status == 2);
  CHECK(r.out.find("index-2 condition failed") != std::string::npos);
  r = run("construct B --p1 19 --p 5");
  CHECK(r.status == 2);
  CHECK(r.out.find("condition (4)") != std::string::npos);
  CHECK(run("construct A --p1 7 --m 1 --p 11 --index-set 0,1,2,3,4,5,12").status == 2);
  CHECK(run("construct A --p1 7 --m 1 --p 11 --s 2 --index-set 0,1,2,3,4,5,6").status == 2);
  CHECK(run("construct A --p1 7 --m 1 --p 11 --index-set 0,x").status == 2);
  CHECK(run("construct A --p1 7 --m 1 --p 11").status == 2);
}

TEST_CASE("budget precedence") {
  const std::string args = "construct B --p1 11 --p 3";
  CHECK(run(args, "CYCLOTOME_BUDGET=100").status == 2);
  CHECK(run(args + " --budget 1000", "CYCLOTOME_BUDGET=100").status == 0);
  CHECK(run(args, "CYCLOTOME_BUDGET=1000").status == 0);
  CHECK(run(args, "CYCLOTOME_BUDGET=abc").status == 2);
  CHECK(run("--budget 100 " + args).status == 2);
}

TEST_CASE("gauss and periods") {
  auto r = run("gauss 11 3 14 --closed-form A --json");
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["all_matched"] == true);
  for (const auto& row : j["rows"]) {
    if (row["j"].get<int>() % 2 == 1) CHECK(row["matched"] == true);
    CHECK(row.contains("prediction_case"));
  }

  r = run("gauss 3 5 22 --closed-form B --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  CHECK(j["all_matched"] == true);
  CHECK((j["c"] == 1 || j["c"] == -1));
  CHECK(j["rows"][2]["matched"] == true);
  CHECK(j["rows"][2]["c"] == j["c"]);

  r = run("gauss 7 1 2 --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  CHECK(j["rows"][1]["abs2"].get<double>() == doctest::Approx(7.0));
  CHECK(j["rows"][0]["re"].get<double>() == doctest::Approx(-1.0));

  CHECK(run("gauss 7 1 4").status == 2);
  CHECK(run("gauss 8 1 7").status == 2);
  CHECK(run("gauss 11 3 14 --closed-form B").status == 2);

  r = run("periods 3 5 22 --json");
  CHECK(r.status == 0);
  j = json::parse(r.out);
  REQUIRE(j["periods"].size() == 22);
  double re = 0, im = 0;
  for (const auto& row : j["periods"]) {
    re += row["re"].get<double>();
    im += row["im"].get<double>();
  }
  CHECK(re == doctest::Approx(-1.0));
  CHECK(std::abs(im) < 1e-9);
  CHECK(run("periods 3 5 7").status == 2);
  CHECK(run("periods 3 5 22").status == 0);
}
