#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "orelco/cli.hpp"
#include "orelco/complex_io.hpp"
#include "orelco/covers.hpp"
#include "orelco/pipeline.hpp"
#include "orelco/text.hpp"

using namespace orelco;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Output without the echoed configuration and report comments.
std::string body(const std::string& text) {
  std::string out;
  for (const std::string& line : split_lines(text))
    if (line.rfind('#', 0) != 0) out += line + '\n';
  return out;
}

struct Workspace {
  std::filesystem::path dir;

  Workspace() {
    dir = std::filesystem::temp_directory_path() / "orelco_cli_test";
    std::filesystem::create_directories(dir);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = dir / name;
    write_file(p, content);
    return p.string();
  }
};

std::string group_file(const Workspace& ws, const std::string& relator, const std::string& branch) {
  const Run r = run({"group", "define", "--generators", "a b", "--relator", relator, "--branch", branch});
  REQUIRE(r.code == exit_ok);
  return ws.file("g_" + std::to_string(std::hash<std::string>{}(relator + branch)) + ".txt", r.out);
}

}  // namespace

TEST_CASE("group define echoes its configuration and re-parses") {
  const Run r = run({"group", "define", "--generators", "a b", "--relator", "a b", "--branch", "2"});
  CHECK(r.code == exit_ok);
  CHECK(r.out.rfind("# command: group define\n", 0) == 0);
  CHECK(r.out.find("# relator: a b") != std::string::npos);
  CHECK(r.out.find("branch 2") != std::string::npos);
}

TEST_CASE("word solve on the relator power") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const Run r = run({"word", "solve", "--group", g, "--word", "a b a b"});
  CHECK(r.code == exit_ok);
  CHECK(body(r.out).rfind("trivial\nsteps 1\n", 0) == 0);
  const Run n = run({"word", "solve", "--group", g, "--word", "a b a"});
  CHECK(n.code == exit_ok);
  CHECK(body(n.out).rfind("nontrivial\n", 0) == 0);
  const Run d = run({"word", "solve", "--group", g, "--word", "a b a b", "--diagram"});
  CHECK(d.out.find("cell ") != std::string::npos);
}

TEST_CASE("cover build emits the worked cover") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const Run r = run({"cover", "build", "--group", g, "--max-degree", "8", "--seed", "7"});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find("# verify pass") != std::string::npos);
  const ParsedCover c = parse_cover(r.out);
  CHECK(c.cover.vertex_count() == 2);
  CHECK(c.cover.edge_count() == 4);
  CHECK(c.cover.cell_count() == 1);
  CHECK(c.families.size() == 1);
}

TEST_CASE("subgroup present: stabilized and budget-limited runs") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const Run ok = run({"subgroup", "present", "--group", g, "--gens", "a"});
  CHECK(ok.code == exit_ok);
  const std::string first = split_lines(body(ok.out)).front();
  CHECK(parse_presentation(first).relators.empty());
  CHECK(body(ok.out).find("status stabilized") != std::string::npos);

  const Run cut = run({"subgroup", "present", "--group", g, "--gens", "a", "--max-steps", "1"});
  CHECK(cut.code == exit_inconclusive);
  CHECK(body(cut.out).find("status inconclusive") != std::string::npos);
  CHECK(body(cut.out).rfind("gens:", 0) == 0);

  const Run all = run({"subgroup", "present", "--group", g, "--gens", "a,b", "--format", "csv"});
  CHECK(all.code == exit_ok);
  CHECK(all.out.find("stage,chi1,chi2,cells,free_edges,core_cells,cursor,stable_for") !=
        std::string::npos);
}

TEST_CASE("usage errors exit 2 with a reason line") {
  const Run a = run({"word", "solve"});
  CHECK(a.code == exit_usage);
  CHECK(a.err.rfind("error: ", 0) == 0);
  const Run b = run({"frobnicate"});
  CHECK(b.code == exit_usage);
  const Run c = run({"word", "solve", "--group", "/nonexistent/g.txt", "--word", "a"});
  CHECK(c.code == exit_usage);
  CHECK(c.err.find("error: ") != std::string::npos);
  const Run d = run({"group", "define", "--generators", "a b", "--relator", "a b a b", "--branch", "2"});
  CHECK(d.code == exit_usage);
  CHECK(d.err.find("error: proper_power") != std::string::npos);
  const Run e = run({"word", "solve", "--bogus-flag"});
  CHECK(e.code == exit_usage);
}

TEST_CASE("stacking check verdicts") {
  const Workspace ws;
  const std::string good = ws.file("good.txt", "vertex o\nedge a : o -> o\ncell c : a\nh c 0 1\n");
  const std::string bad = ws.file(
      "bad.txt", "vertex o\nedge a : o -> o\ncell top : a\ncell bottom : a\nh top 0 1\nh bottom 0 0\n");
  const Run g = run({"stacking", "check", "--complex", good, "--branch", "2"});
  CHECK(g.code == exit_ok);
  CHECK(body(g.out) == "good\nbranched yes\n");
  const Run b = run({"stacking", "check", "--complex", bad});
  CHECK(b.code == exit_violation);
  CHECK(body(b.out).rfind("not_good\n", 0) == 0);
}

TEST_CASE("fold command folds two petals") {
  const Workspace ws;
  const std::string src = ws.file("src.txt", "vertex o\nedge a : o -> o\nedge b : o -> o\n");
  const std::string tgt = ws.file("tgt.txt", "vertex o\nedge x : o -> o\n");
  const std::string map = ws.file("map.txt", "vmap o o\nemap a x\nemap b x\n");
  const Run r = run({"fold", "--source", src, "--target", tgt, "--morphism", map});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find("# steps 1") != std::string::npos);
  CHECK(r.out.find("# map covering") != std::string::npos);
}

TEST_CASE("audit of a single complex and a small campaign") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const Run cover = run({"cover", "build", "--group", g, "--seed", "1"});
  const ParsedCover c = parse_cover(cover.out);
  const std::string x0 = ws.file("x0.txt", format_complex(c.cover));
  const Run strict = run({"audit", "wcycles", "--group", g, "--complex", x0});
  CHECK(strict.code == exit_usage);
  CHECK(strict.err.find("reducible_source") != std::string::npos);
  const Run loose = run({"audit", "wcycles", "--group", g, "--complex", x0, "--permissive"});
  CHECK(loose.code == exit_ok);
  CHECK(body(loose.out).rfind("chi1 -2 deg 2 slack1 0\n", 0) == 0);
  const Run camp = run({"audit", "wcycles", "--group", g, "--campaign", "--trials", "20",
                        "--cover-trials", "2", "--format", "csv"});
  CHECK(camp.code == exit_ok);
  CHECK(split_lines(body(camp.out)).size() == 21);
}

TEST_CASE("export dot") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const Run r = run({"export", "dot", "--what", "cover", "--group", g});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes and the flag beats the environment") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b a b~", "2");
  const std::vector<std::string> args{"audit", "wcycles", "--group", g, "--campaign",
                                      "--trials", "30", "--cover-trials", "3"};
  CHECK(run(args).out == run(args).out);
  setenv("ORELCO_SEED", "5", 1);
  const Run env = run(args);
  auto flagged = args;
  flagged.insert(flagged.end(), {"--seed", "5"});
  CHECK(env.out == run(flagged).out);
  auto other = args;
  other.insert(other.end(), {"--seed", "6"});
  CHECK(run(other).out.find("# seed: 6") != std::string::npos);
  unsetenv("ORELCO_SEED");
}

TEST_CASE("out flag writes the primary artifact to a file") {
  const Workspace ws;
  const std::string g = group_file(ws, "a b", "2");
  const std::string path = (ws.dir / "cover_out.txt").string();
  const Run r = run({"--out", path, "cover", "build", "--group", g});
  CHECK(r.code == exit_ok);
  CHECK(parse_cover(read_file(path)).cover.cell_count() == 1);
}
