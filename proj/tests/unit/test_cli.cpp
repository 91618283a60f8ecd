#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbisim/cli.hpp"
#include "support/corpus.hpp"

namespace fs = std::filesystem;
using pbisim::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_path(const char* name) { return std::string(PBISIM_CORPUS_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("pbisim_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("validate reports classes and rejects broken files") {
  auto r = call({"validate", corpus_path("visibly_split.ppda")});
  CHECK(r.code == 0);
  CHECK(r.out.find("vpda") != std::string::npos);
  r = call({"validate", temp_file("bad.plts", "plts\nstates: s\nactions: a\ns -a-> 1/2 s\n")});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
  r = call({"validate", "/nonexistent/file.plts"});
  CHECK(r.code == 3);
  CHECK(call({"frobnicate"}).code == 3);
}

TEST_CASE("check on a finite system") {
  auto r = call({"check", corpus_path("four_state.plts"), "s", "u"});
  CHECK(r.code == 1);
  CHECK(r.out.find("verdict: not-bisimilar(n=2)") != std::string::npos);
  r = call({"check", corpus_path("four_state.plts"), "t1", "t1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: bisimilar") != std::string::npos);
  r = call({"check", corpus_path("four_state.plts"), "s", "u", "--method", "bounded", "--n", "1"});
  CHECK(r.code == 2);
  CHECK(r.out.find("verdict: unknown") != std::string::npos);
  CHECK(call({"check", corpus_path("four_state.plts"), "s", "nope"}).code == 3);
}

TEST_CASE("check methods on pushdown machines agree") {
  const std::string split = corpus_path("visibly_split.ppda");
  auto a = call({"check", split, "pX", "p'X"});
  auto v = call({"check", split, "pX", "p'X", "--method", "vpda"});
  CHECK(a.code == v.code);
  CHECK(v.out.find("method: vpda") != std::string::npos);
  auto q = call({"check", split, "qXX", "q'XX", "--method", "vpda"});
  CHECK(q.code == 1);
  auto bpa = call({"check", corpus_path("counter_and_bpa.ppda"), "rX", "rX'", "--method", "bounded", "--n", "4"});
  CHECK(bpa.code == 2);
  CHECK(bpa.out.find("equivalent up to n=4") != std::string::npos);
  auto wrong = call({"check", corpus_path("counter_and_bpa.ppda"), "rX", "rX'", "--method", "vpda"});
  CHECK(wrong.code == 3);
}

TEST_CASE("guards and budgets map to their exit code") {
  auto r = call({"check", corpus_path("counter_and_bpa.ppda"), "pX^100000000000Z", "qX^100000000000Z",
                 "--method", "bounded", "--n", "3"});
  CHECK(r.code == 4);
}

TEST_CASE("generators print instances with a manifest") {
  auto r = call({"gen", "afa", corpus_path("three_state.afa"), "--horizon", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ppda") == 0);
  CHECK(r.out.find("// manifest: ") != std::string::npos);
  r = call({"gen", "game", corpus_path("small.game")});
  CHECK(r.code == 0);
  CHECK(r.out.find("player0") != std::string::npos);
  r = call({"gen", "gadget", "or", "--t1", "equiv", "--t2", "distinct"});
  CHECK(r.code == 0);
  CHECK(r.out.find("plts") == 0);
}

TEST_CASE("generated instances check as their manifest says") {
  fs::path dir = fs::temp_directory_path() / "pbisim_cli_gen";
  fs::create_directories(dir);
  const std::string prefix = (dir / "game").string();
  CHECK(call({"gen", "game", corpus_path("small.game"), "--out", prefix}).code == 0);
  CHECK(fs::exists(prefix + ".ppda"));
  auto r = call({"check", prefix + ".ppda", "pX", "p_primeX"});
  CHECK(r.code == 0);
}

TEST_CASE("norms, classes and reduce") {
  auto r = call({"norms", temp_file("bpa.ppda", "ppda\ncontrols: r\nstack: X Y\nr X -a-> r\nr Y -a-> r X X\n")});
  CHECK(r.code == 0);
  CHECK(r.out.find("Y 3") != std::string::npos);
  r = call({"classes", corpus_path("four_state.plts")});
  CHECK(r.code == 0);
  r = call({"reduce", corpus_path("four_state.plts"), "--mode", "plts"});
  CHECK(r.code == 0);
  CHECK(r.out.find("plts") == 0);
}

TEST_CASE("play reads moves from the input stream") {
  auto r = call({"play", corpus_path("four_state.plts"), "s", "u", "--side", "defender", "--horizon", "2"}, "0\n0\n0\n0\n0\n0\n");
  CHECK(r.code != 3);
  CHECK(r.out.find("attacker") != std::string::npos);
}
