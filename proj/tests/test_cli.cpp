#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

const std::string kFixtures = PCONWAY_FIXTURES;

Run run(const std::string& args) {
  const std::string cmd = std::string(PCONWAY_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("conway prints the polynomial and normal form") {
  const auto r = run("conway " + fixture("hopf.pd"));
  CHECK(r.code == 0);
  CHECK(r.out == "∇ = z ; n=2 ; a_0 = 1\n");
  const auto t = run("conway " + fixture("trefoil.pd"));
  CHECK(t.out == "∇ = 1 + z^2 ; n=1 ; a_0 = 1, a_2 = 1\n");
  CHECK(run("--no-cache conway " + fixture("borromean.pd")).out.find("n=3") != std::string::npos);
}

TEST_CASE("conway JSON") {
  const auto r = run("conway " + fixture("hopf.pd") + " --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["conway"] == "z");
  CHECK(j["normal_form"]["a"][0] == "1");
}

TEST_CASE("input errors exit with 2 and name the location") {
  const auto r = run("conway " + fixture("truncated.pd"));
  CHECK(r.code == 2);
  CHECK(r.out.find("truncated.pd:2:") != std::string::npos);
  CHECK(run("conway " + fixture("dangling.pd")).code == 2);
  CHECK(run("conway " + fixture("missing.pd")).code == 2);
  CHECK(run("lift " + fixture("bad_cap.json") + " -p 3").code == 2);
  CHECK(run("--max-crossings 3 conway " + fixture("borromean.pd")).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("conway").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("verify --suite main --p 4").code == 2);
  CHECK(run("conway " + fixture("hopf.pd") + " --bogus").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("lkmatrix cross-checks a0") {
  const auto r = run("lkmatrix " + fixture("hopf.pd"));
  CHECK(r.code == 0);
  CHECK(r.out.find("a_0 (matrix) = 1") != std::string::npos);
  CHECK(r.out.find("agree") != std::string::npos);
  const auto j = nlohmann::json::parse(run("lkmatrix " + fixture("borromean.pd") + " --json").out);
  CHECK(j["agree"] == true);
  CHECK(j["a0_matrix"] == "0");
}

TEST_CASE("lift, classify and gen") {
  const auto l = run("lift " + fixture("hopf_axis.json") + " -p 3 --json");
  REQUIRE(l.code == 0);
  const auto j = nlohmann::json::parse(l.out);
  CHECK(j["p"] == 3);
  CHECK(j["components"] == 6);
  CHECK(j["diagram"]["pd"].is_string());
  CHECK(j["orbit_of"].size() == 6);

  const auto c = run("classify " + fixture("type1.json") + " -p 3");
  CHECK(c.code == 0);
  CHECK(c.out.find("type m = 1") != std::string::npos);

  const auto g1 = run("gen --width 2 --events 6 -p 3 --os --strong --seed 1 --count 3 --json");
  const auto g2 = run("gen --width 2 --events 6 -p 3 --os --strong --seed 1 --count 3 --json");
  REQUIRE(g1.code == 0);
  CHECK(g1.out == g2.out);
  CHECK(nlohmann::json::parse(g1.out)["patterns"].size() == 3);
  CHECK(run("gen --width 1 --events 0 -p 2 --strong --max-rejections 20").code == 2);
}

TEST_CASE("verify exits 0 without failures and writes identical JSON") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path();
  const auto a = (dir / "pconway-cli-a.json").string();
  const auto b = (dir / "pconway-cli-b.json").string();
  CHECK(run("verify --suite hopf").code == 0);
  CHECK(run("verify --suite all --p 3,5 --count 4 --seed 5 --json " + a).code == 0);
  CHECK(run("--no-cache verify --suite all --p 3,5 --count 4 --seed 5 --threads 2 --json " + b).code == 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  auto ja = nlohmann::json::parse(sa.str());
  auto jb = nlohmann::json::parse(sb.str());
  CHECK(ja["reports"] == jb["reports"]);
  CHECK(run("verify --suite all --p 3,5 --count 4 --seed 5 --json " + b).code == 0);
  std::ifstream fc(b);
  std::stringstream sc;
  sc << fc.rdbuf();
  CHECK(sc.str() == sa.str());
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("replay reproduces a stored report") {
  namespace fs = std::filesystem;
  const auto path = (fs::temp_directory_path() / "pconway-cli-report.json").string();
  const auto suite = nlohmann::json::parse(run("verify --suite lemma41 --p 3 --count 1 --json").out);
  {
    std::ofstream out(path);
    out << suite["reports"][0].dump();
  }
  const auto r = run("replay " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("reproduced") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("persistent cache directory") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "pconway-cli-cache";
  fs::remove_all(dir);
  const std::string env = "PCONWAY_CACHE_DIR=" + dir.string() + " ";
  const std::string cmd = std::string(PCONWAY_CLI) + " conway " + fixture("borromean.pd");
  CHECK(std::system((env + cmd + " > /dev/null").c_str()) == 0);
  CHECK(fs::exists(dir / "conway-cache.json"));
  CHECK(std::system((env + cmd + " > /dev/null").c_str()) == 0);
  fs::remove_all(dir);
}
