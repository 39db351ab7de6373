#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#ifdef FAIRDIST_CLI

namespace {

const std::string kData = FAIRDIST_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string command = std::string(FAIRDIST_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fairdist_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("cli validate") {
  auto ok = cli("validate " + kData + "/desk_map.json");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("25 parcels") != std::string::npos);
  CHECK(cli("validate " + kData + "/dup_id.json").code == 1);
  CHECK(cli("validate " + kData + "/indivisible.json").code == 1);
  CHECK(cli("validate /nonexistent/map.json").code == 1);
  CHECK(cli("").code == 1);
}

TEST_CASE("cli enumerate") {
  CHECK(cli("enumerate " + kData + "/grid2x2.json --count-only").out == "2\n");
  CHECK(cli("enumerate " + kData + "/grid2x2.json").out == "[0,0,1,1]\n[0,1,0,1]\n");
  CHECK(cli("enumerate " + kData + "/desk_map.json --count-only").out == "4006\n");
}

TEST_CASE("cli target") {
  auto doc = nlohmann::json::parse(cli("target " + kData + "/desk_map.json --party A").out);
  CHECK(doc["report"]["target"] == "5/2");
  auto split = cli("target " + kData + "/grid2x2.json --party B --split 1 --piece1 P1,P3");
  CHECK(split.code == 0);
  CHECK(nlohmann::json::parse(split.out)["k"] == 1);
  CHECK(cli("target " + kData + "/grid2x2.json --party B --split 1 --piece1 P1,P4").code == 1);
  CHECK(cli("target " + kData + "/grid2x2.json --party C").code == 1);
}

TEST_CASE("cli protocol") {
  const std::string base = "protocol " + kData + "/desk_map.json --strategy random_growth --seed 9";
  auto a = cli(base);
  auto b = cli(base);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["seed"] == 9);
  CHECK(doc["sequence_label"] == "random_growth");

  auto summary = cli("protocol " + kData + "/desk_map.json --sequence " + kData + "/desk_worked_sequence.json --seed 1 --summary");
  CHECK(summary.out.find("1-split | 1/1=2 | 1/3=4") != std::string::npos);
  CHECK(summary.out.find("switch-point i0=2") != std::string::npos);

  CHECK(cli("protocol " + kData + "/path1x3.json --seed 1").code == 2);
  CHECK(cli("protocol " + kData + "/desk_map.json --strategy zigzag --seed 1").code == 1);
  CHECK(cli("protocol " + kData + "/desk_map.json --strategy random_growth").code == 1);
}

TEST_CASE("cli render") {
  const auto dir = scratch("render");
  write(dir / "one.json", R"({"assignment": [0, 0, 0]})");
  CHECK(cli("render " + kData + "/path1x3.json " + (dir / "one.json").string() + " --format ascii").out == "000\n");
  auto svg = cli("render " + kData + "/path1x3.json " + (dir / "one.json").string() + " --format svg");
  CHECK(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(cli("render " + kData + "/grid2x2.json " + (dir / "one.json").string()).code == 1);
  CHECK(cli("render " + kData + "/path1x3.json " + (dir / "one.json").string() + " --format png").code == 1);
}

TEST_CASE("cli fairdiv") {
  const auto dir = scratch("fairdiv");
  write(dir / "bids.json", R"({"goods": ["house", "car"], "A": [100, 0], "B": [100, 0]})");
  auto aw = nlohmann::json::parse(cli("fairdiv adjusted-winner " + (dir / "bids.json").string()).out);
  CHECK(aw["goods"][0]["share_A"] == "1/2");
  CHECK(aw["divided_good"] == "house");
  write(dir / "neg.json", R"({"A": [-1, 2], "B": [1, 1]})");
  CHECK(cli("fairdiv adjusted-winner " + (dir / "neg.json").string()).code == 1);
  write(dir / "cake.json", R"({"A": {"breakpoints": [0, 1], "densities": [1]}, "B": {"breakpoints": [0, 1], "densities": [1]}})");
  auto cc = nlohmann::json::parse(cli("fairdiv cut-choose " + (dir / "cake.json").string()).out);
  CHECK(cc["cut"] == "1/2");
  CHECK(cc["chooser_piece"] == "left");
}

TEST_CASE("cli augment writes identical trees on repeat runs") {
  const auto dir = scratch("augment");
  auto one = cli("augment " + kData + "/desk_experiment.json --out " + (dir / "one").string());
  auto two = cli("augment " + kData + "/desk_experiment.json --out " + (dir / "two").string());
  CHECK(one.code == 0);
  CHECK(one.out == two.out);
  CHECK(one.out.find("final: A wins 3") != std::string::npos);
  int files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir / "one")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto rel = std::filesystem::relative(entry.path(), dir / "one");
    CHECK(slurp(entry.path()) == slurp(dir / "two" / rel));
  }
  CHECK(files == 25);

  write(dir / "empty.json", R"({"map": ")" + kData + R"(/desk_map.json", "seed": 1, "strategies": []})");
  CHECK(cli("augment " + (dir / "empty.json").string()).code == 1);
}

#endif
