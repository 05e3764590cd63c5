#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "gbg/classic_game.hpp"
#include "gbg/constructions.hpp"
#include "gbg/game_service.hpp"
#include "gbg/io.hpp"
#include "oracles.hpp"

using namespace gbg;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GBG_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

json run_json(const std::string& args) {
  const Run r = run(args);
  REQUIRE(r.status == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc.contains("meta"));
  doc.erase("meta");
  return doc;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("gbg_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("classic worst") {
  const json doc = run_json("classic worst --shape 4,4");
  CHECK(doc["value"] == 8);
  CHECK(doc["lights_remaining"] == 4);
  const AnyTensor w = tensor_from_json(doc["witness"]);
  CHECK(best_imbalance_exact(LightPattern(std::get<SignTensor>(w))).imbalance == 8);
}

TEST_CASE("bounds") {
  const json t6b = run_json("bounds t6b --shape 2,2,2");
  CHECK(t6b["lower_constant"].get<double>() == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(t6b["source"] == "torus_sandwich");
  const Run csv = run("bounds square --n 10 --format csv");
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("shape,source,lower,upper,normalizer\n10x10,square_sandwich,22.36", 0) == 0);
  const json t3a = run_json("bounds t3a --shape 4,9");
  CHECK(t3a["sum_form"]["upper_constant"].get<double>() == doctest::Approx(16.77035318349128));
}

TEST_CASE("exit codes") {
  CHECK(run("classic worst --shape 0,2").status == 2);
  CHECK(run("classic worst").status == 2);
  CHECK(run("nonsense").status == 2);
  CHECK(run("classic worst --shape 9,9").status == 3);
  CHECK(run("vector norm --in /nonexistent/file.json").status == 2);
  CHECK(run("avg steinhaus --coeffs 1,1 --samples 10").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("solve and norm agree with the library") {
  TempDir dir;
  std::mt19937_64 g(81);
  const SignTensor s = oracle::random_signs(Shape{4, 6}, g);
  write_json_file(dir.file("s.json"), to_json(s));
  const json solved = run_json("classic solve --in " + dir.file("s.json"));
  CHECK(solved["value"] == best_imbalance_exact(LightPattern(s)).imbalance);

  const UnimodularTensor u = oracle::random_unimodular(Shape{3, 3, 2}, g);
  write_json_file(dir.file("u.json"), to_json(u));
  AscentConfig cfg;
  cfg.restarts = 7;
  cfg.seed = 5;
  const json norm = run_json("vector norm --restarts 7 --seed 5 --in " + dir.file("u.json"));
  CHECK(norm["value"].get<double>() == alternating_ascent(u, cfg).value);
}

TEST_CASE("identical arguments give identical output") {
  TempDir dir;
  std::mt19937_64 g(82);
  write_json_file(dir.file("u.json"), to_json(oracle::random_unimodular(Shape{4, 5}, g)));
  for (const std::string& args : std::vector<std::string>{"vector norm --seed 3 --in " + dir.file("u.json"),
                                 "vector certify --shape 2,3,4 --restarts 10",
                                 "classic search --shape 5,5 --budget 300 --seed 9",
                                 "avg steinhaus --coeffs 1,2,3 --samples 5000 --seed 4"}) {
    CHECK(run_json(args).dump() == run_json(args).dump());
  }
}

TEST_CASE("snapshot assist equals the CLI result") {
  TempDir dir;
  GameStore store;
  const GameState v = store.create(GameMode::Vector, Shape{3, 4}, std::nullopt, 11);
  store.move(v.id, Move{MoveKind::Rotate, 0, 1, 0.3});
  store.save_snapshot(v.id, dir.file("v.json"));
  const json cli = run_json("vector norm --in " + dir.file("v.json"));
  CHECK(cli["value"].get<double>() == store.assist(v.id).best_value);

  const GameState c = store.create(GameMode::Classic, Shape{5, 6}, std::nullopt, 12);
  store.move(c.id, Move{MoveKind::Flip, 1, 2, 0.0});
  store.save_snapshot(c.id, dir.file("c.json"));
  const json solved = run_json("classic solve --in " + dir.file("c.json"));
  CHECK(solved["value"].get<double>() == store.assist(c.id).best_value);
}

TEST_CASE("certify and averages") {
  const json cert = run_json("vector certify --shape 2,2,2");
  CHECK(cert["pass"]["all"].get<bool>());
  CHECK(cert["estimate"].get<double>() == doctest::Approx(4.0).epsilon(1e-6));

  const json rad = run_json("avg rademacher --coeffs 1,1,1");
  CHECK(rad["mean"] == 1.5);

  const json st = run_json("avg steinhaus --coeffs 1,1 --samples 100000");
  CHECK(std::abs(st["mean"].get<double>() - 4.0 / std::numbers::pi) < 0.01);
  CHECK(st["inequality"]["holds"].get<bool>());

  TempDir dir;
  write_json_file(dir.file("ones.json"), to_json(SignTensor::ones(Shape{2, 2})));
  const json both = run_json("avg steinhaus --samples 200000 --in " + dir.file("ones.json"));
  CHECK(both["random_axes"] == 2);
  CHECK(both["inequality"]["holds"].get<bool>());
  CHECK_FALSE(both["reduced_exponent_check"]["holds"].get<bool>());

  const json one_axis = run_json("avg steinhaus --samples 20000 --axes 1 --in " + dir.file("ones.json"));
  CHECK(one_axis["l2"].get<double>() == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("construct writes a valid tensor") {
  TempDir dir;
  CHECK(run("vector construct --shape 3,2 --out " + dir.file("e.json")).status == 0);
  const AnyTensor t = read_tensor_file(dir.file("e.json"));
  CHECK(std::get<UnimodularTensor>(t) == extremal_tensor(Shape{3, 2}));
}
