#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("billiard_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args, const std::string& out_name = "out.txt") {
  const std::string cmd = std::string(BILLIARD_CLI) + " " + args + " > " + (scratch() / out_name).string() + " 2> " +
                          (scratch() / "err.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string line;
  while (std::getline(s, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("generate is deterministic") {
  const auto a = scratch() / "a.txt", b = scratch() / "b.txt";
  CHECK(run("generate --theta \"1,sqrt(3),sqrt(2)\" --n 100000 --seed 42 -o " + a.string()) == 0);
  CHECK(run("generate --theta \"1,sqrt(3),sqrt(2)\" --n 100000 --seed 42 -o " + b.string()) == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  auto lines = data_lines(text);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].size() == 100000);
  CHECK_FALSE(fs::exists(scratch() / "a.txt.tmp"));
}

TEST_CASE("generate refuses symbolic directions and bad input") {
  CHECK(run("generate --theta \"1,t1,t2\" --n 10") == 2);
  CHECK(run("generate --theta \"2,sqrt(3)\" --n 10") == 2);
  CHECK(run("generate --bogus") == 2);
  CHECK(run("balance --n 1000 --checkpoints 50,10") == 2);
}

TEST_CASE("Sturmian generation") {
  CHECK(run("generate --theta \"1,sqrt(2)\" --n 1000") == 0);
  auto lines = data_lines(slurp(scratch() / "out.txt"));
  REQUIRE(lines.size() == 1);
  CHECK(std::set<char>(lines[0].begin(), lines[0].end()) == std::set<char>{'1', '2'});
}

TEST_CASE("balance reports") {
  CHECK(run("balance --n 100000 --format json") == 0);
  auto j = nlohmann::json::parse(slurp(scratch() / "out.txt"));
  CHECK(j["direction"] == "1,sqrt(3),sqrt(2)");
  CHECK(j["precision"] == 128);
  CHECK(j.contains("caveat"));
  int certified = 0, growth = 0;
  for (const auto& e : j["entries"]) {
    certified += e["verdict"] == "CertifiedBoundedByC";
    growth += e["verdict"] == "GrowthDetected";
  }
  CHECK(certified == 3);
  CHECK(growth == 7);

  CHECK(run("balance --theta \"1,sqrt(2),sqrt(3),sqrt(5)\" --n 20000 --max-factor-len 1") == 0);
  auto rows = data_lines(slurp(scratch() / "out.txt"));
  CHECK(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find("CertifiedBoundedByC") != std::string::npos);

  CHECK(run("balance --series 22 --n 10000 --stride 100") == 0);
  rows = data_lines(slurp(scratch() / "out.txt"));
  CHECK(rows[0] == "n,count,expected,D_n,running_max");
  CHECK(rows.size() == 102);
}

TEST_CASE("freqs table") {
  CHECK(run("freqs --n 200000") == 0);
  auto rows = data_lines(slurp(scratch() / "out.txt"));
  CHECK(rows[0] == "factor,closed_form,empirical,abs_error,N");
  CHECK(rows.size() == 8);
  CHECK(run("freqs --n 20000 --format json") == 0);
  auto j = nlohmann::json::parse(slurp(scratch() / "out.txt"));
  for (const auto& r : j["rows"]) CHECK(r["closed_form_provenance"] == "closed-form");
}

TEST_CASE("brs verdicts and exit codes") {
  CHECK(run("brs") == 0);
  auto j = nlohmann::json::parse(slurp(scratch() / "out.txt"));
  std::multiset<std::string> reasons;
  for (const auto& c : j["cells"]) reasons.insert(c["reason"].get<std::string>());
  CHECK(reasons.count("NoSymmetryCenter") == 6);
  CHECK(reasons.count("Condition2Fail") == 1);

  CHECK(run("brs --theta \"1,sqrt(2),sqrt(3)\"") == 0);
  auto k = nlohmann::json::parse(slurp(scratch() / "out.txt"));
  CHECK(k["permuted"] == true);
  CHECK(slurp(scratch() / "err.txt").find("note:") != std::string::npos);

  CHECK(run("brs --theta \"1,2,sqrt(2)\"") == 0);
  CHECK(slurp(scratch() / "err.txt").find("rational") != std::string::npos);
  CHECK(run("brs --theta \"1,sqrt(2),sqrt(2)\"") == 4);
  CHECK(run("brs --theta \"1,sqrt(2)\"") == 4);
}

TEST_CASE("complexity and selftest") {
  CHECK(run("complexity --n 50000 --max-factor-len 4") == 0);
  auto rows = data_lines(slurp(scratch() / "out.txt"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == "1,3");
  CHECK(rows[4] == "4,21");
  CHECK(run("selftest") == 0);
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
