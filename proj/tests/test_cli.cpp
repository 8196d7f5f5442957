#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string cli_path() {
  const char* p = std::getenv("CLIFFCONE_CLI_PATH");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("cliffcone_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("build and validate round trip through files") {
  TempDir tmp;
  const std::string sys = tmp.file("sys.txt");
  CHECK(run("clifford build --n 4 --m 16 --out " + sys) == 0);
  CHECK(run("clifford validate --in " + sys) == 0);

  SECTION("corrupted entry fails validation with exit one") {
    std::string text = slurp(sys);
    auto pos = text.rfind("-1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 2, "2");
    std::ofstream(sys, std::ios::binary) << text;
    CHECK(run("clifford validate --in " + sys) == 1);
  }

  SECTION("garbage input is a usage error") {
    std::ofstream(sys, std::ios::binary) << "zzz";
    CHECK(run("clifford validate --in " + sys) == 2);
  }
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run("clifford build") == 2);                  // missing --n
  CHECK(run("clifford build --n nope") == 2);         // unparsable value
  CHECK(run("clifford build --n 4 --m 10") == 2);     // not a multiple of 8
  CHECK(run("clifford build --n 2 --twin") == 2);     // twin needs n = 1 mod 4
  CHECK(run("cone pullback --m 16 --n 4 --codim 9") == 2);
}

TEST_CASE("check pipeline emits structured json") {
  TempDir tmp;
  const std::string rep = tmp.file("rep.json");
  CHECK(run("hm check --m 16 --n 4 --samples 25 --format json --out " + rep) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(rep));
  REQUIRE(j.is_array());
  CHECK(j.size() >= 4);
  for (const auto& r : j) {
    CHECK(r.at("schema") == 1);
    CHECK(r.at("pass") == true);
  }
}

TEST_CASE("failed mathematical checks exit with code one") {
  CHECK(run("subcalib coefficients --m 8 --n 2") == 1);
  CHECK(run("subcalib coefficients --m 32 --n 4") == 0);
}

TEST_CASE("fixed seeds give byte-identical reports") {
  TempDir tmp;
  const std::string a = tmp.file("a.json"), b = tmp.file("b.json"), c = tmp.file("c.json");
  const std::string args = "subcalib identities --m 8 --n 2 --samples 20 --format json --seed 7";
  CHECK(run(args + " --out " + a) == 0);
  CHECK(run(args + " --out " + b) == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(nlohmann::json::parse(bytes).at("seed") == 7);

  SECTION("environment seed matches the flag") {
    std::string cmd = "CLIFFCONE_SEED=7 " + cli_path() +
                      " subcalib identities --m 8 --n 2 --samples 20 --format json --out " + c +
                      " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(c) == bytes);
  }

  SECTION("different seed changes the report") {
    const std::string reseeded =
        "subcalib identities --m 8 --n 2 --samples 20 --format json --seed 8";
    CHECK(run(reseeded + " --out " + c) == 0);
    CHECK(slurp(c) != bytes);
  }
}

TEST_CASE("sample dumps land in the csv sink") {
  TempDir tmp;
  const std::string csv = tmp.file("rows.csv");
  CHECK(run("subcalib identities --m 8 --n 2 --samples 10 --csv " + csv) == 0);
  std::string content = slurp(csv);
  CHECK(content.find("x1") != std::string::npos);
  CHECK(content.find("residual") != std::string::npos);
  long rows = 0;
  for (char ch : content)
    if (ch == '\n') ++rows;
  CHECK(rows == 11);  // header plus one per sample
}

TEST_CASE("remaining subcommands run clean at small scale") {
  CHECK(run("cone minimality --m 8 --n 2 --samples 10") == 0);
  CHECK(run("cone spectrum --m 16 --n 4 --directions 5") == 0);
  CHECK(run("cone pullback --m 16 --n 4 --codim 2 --samples 8") == 0);
  CHECK(run("subcalib divergence --m 8 --n 2 --samples 10") == 0);
  CHECK(run("subcalib sign --m 32 --n 4 --samples 15 --eps 0.1") == 0);
  CHECK(run("examples c4 --which 8_2") == 0);
  CHECK(run("examples c4 --which nope") == 2);
}

TEST_CASE("seed flag beats a malformed environment value") {
  // malformed env must be a usage error when it would actually be consulted
  std::string cmd = "CLIFFCONE_SEED=banana " + cli_path() +
                    " subcalib identities --m 8 --n 2 --samples 5 > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 2);
  // with an explicit flag the environment is never read
  std::string cmd2 = "CLIFFCONE_SEED=banana " + cli_path() +
                     " subcalib identities --m 8 --n 2 --samples 5 --seed 3 > /dev/null 2>&1";
  status = std::system(cmd2.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}
