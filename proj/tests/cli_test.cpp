// End-to-end checks of the command line binary: exit codes, output
// shapes, JSON mode, and the proof-script surface.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  std::string base = ::testing::TempDir() + "polyfix_cli_" + std::to_string(counter++);
  std::string out_path = base + ".out", err_path = base + ".err";
  std::string cmd =
      std::string(POLYFIX_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, slurp(out_path), slurp(err_path)};
}

std::string proofs_dir() { return POLYFIX_PROOFS_DIR; }

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, ParseReportsKernelAndLength) {
  RunResult r = run("parse '2+2+2+2+2'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("2 + 2 + 2 + 2 + 2"), std::string::npos);
  EXPECT_NE(r.out.find("PolyApp +, length 5"), std::string::npos);

  RunResult atom = run("parse x");
  EXPECT_EQ(atom.exit_code, 0);
  EXPECT_NE(atom.out.find("atom, length 1"), std::string::npos);

  RunResult bad = run("parse '2+*3'");
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.err.find("BadToken"), std::string::npos);
}

TEST(Cli, EquivVerdictsAndExitCodes) {
  EXPECT_EQ(run("equiv 'x1+(x2+x3)+x4+x5' 'x1+x2+x3+x4+x5'").exit_code, 0);
  EXPECT_NE(run("equiv '(a+b)+c' 'a+(b+c)'").out.find("EQUIV"), std::string::npos);
  RunResult distinct = run("equiv 'x+y' 'y+x'");
  EXPECT_EQ(distinct.exit_code, 1);
  EXPECT_NE(distinct.out.find("DISTINCT"), std::string::npos);
  EXPECT_EQ(run("equiv 'x+' 'x'").exit_code, 2);
}

TEST(Cli, CheckShippedScripts) {
  RunResult a = run("check " + proofs_dir() + "/sum223.proof");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_NE(a.out.find("Proved"), std::string::npos);
  EXPECT_EQ(run("check " + proofs_dir() + "/sum22222.proof").exit_code, 0);
  EXPECT_EQ(run("check /nonexistent.proof").exit_code, 2);
}

TEST(Cli, CheckFailureGoesToStderr) {
  std::string tampered = write_temp("tampered.proof",
                                    "theory sum223\n"
                                    "hyp h1 : 2+2 = 4\n"
                                    "goal : 2+2+3 = 4+3\n"
                                    "proof\n"
                                    "  hyp h1 at root span 1 2\n"
                                    "qed\n");
  RunResult r = run("check " + tampered);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("NoMatch"), std::string::npos);
}

TEST(Cli, EvalModels) {
  RunResult add = run("eval '7+7+7'");
  EXPECT_EQ(add.exit_code, 0);
  EXPECT_EQ(add.out, "21\n");
  EXPECT_EQ(run("eval '5*5*5*5' --model mul").out, "625\n");
  EXPECT_EQ(run("eval '1-2-3' --model sub --fold left").out, "-4\n");
  EXPECT_EQ(run("eval '1-2-3' --model sub --fold right").out, "2\n");
  // eval proper refuses the non-associative model.
  RunResult sub = run("eval '1-2-3' --model sub");
  EXPECT_EQ(sub.exit_code, 1);
  RunResult unbound = run("eval 'x+1'");
  EXPECT_EQ(unbound.exit_code, 1);
  EXPECT_EQ(run("eval 'u;v' --model seq --env u=a --env v=b").out, "[a, b]\n");
  EXPECT_EQ(
      run("eval 'a*b' --model matmul --env 'a=[[1,2],[3,4]]' --env 'b=[[0,1],[1,0]]'").out,
      "[[2, 1], [4, 3]]\n");
  EXPECT_EQ(run("eval 'x' --model frame --env 'x={p,q | p-e->q}'").out, "{p, q | p-e->q}\n");
}

TEST(Cli, BracketsEnumerates) {
  RunResult r = run("brackets 'a+b+c+d+e'");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("count 14"), std::string::npos);
  // 14 bracketings plus the count line.
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 15);
  EXPECT_EQ(run("brackets 'x'").exit_code, 1);
}

TEST(Cli, LemmaEmitsCheckableScripts) {
  RunResult r = run("lemma 4");
  EXPECT_EQ(r.exit_code, 0);
  std::string path = write_temp("lemma4.proof", r.out);
  EXPECT_EQ(run("check " + path).exit_code, 0);
  RunResult mirror = run("lemma 4 --mirror");
  EXPECT_NE(mirror.out.find("x1 + (x2 + x3 + x4 + x5)"), std::string::npos);
  EXPECT_EQ(run("lemma 20").exit_code, 2);
}

TEST(Cli, JsonOutputsParse) {
  RunResult r = run("--json parse '2+2+3'");
  EXPECT_EQ(r.exit_code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "parse");
  EXPECT_EQ(j["kind"], "poly");
  EXPECT_EQ(j["kernel"], "+");
  EXPECT_EQ(j["length"], 3);
  EXPECT_TRUE(j.contains("seed"));

  nlohmann::json check =
      nlohmann::json::parse(run("--json check " + proofs_dir() + "/sum223.proof").out);
  EXPECT_EQ(check["verdict"], "Proved");
  EXPECT_EQ(check["steps"].size(), 1u);

  nlohmann::json eval_j = nlohmann::json::parse(run("--json eval '7+7+7'").out);
  EXPECT_EQ(eval_j["value"]["type"], "int");
  EXPECT_EQ(eval_j["value"]["value"], "21");

  nlohmann::json err = nlohmann::json::parse(run("--json parse '2+'").out);
  EXPECT_EQ(err["ok"], false);
  EXPECT_EQ(err["error"]["kind"], "BadToken");

  // Same seed, same bytes.
  EXPECT_EQ(run("--json --seed 7 brackets 'a+b+c'").out,
            run("--json --seed 7 brackets 'a+b+c'").out);
}

TEST(Cli, CustomTableFile) {
  std::string table = write_temp(
      "table.json",
      R"({"sort":"s","kernels":[{"symbol":";"},{"symbol":"+","precedence":1}],
          "fixed_ops":{"neg":1},"constants":["e"]})");
  EXPECT_EQ(run("parse 'a ; b ; c' --table " + table).exit_code, 0);
  EXPECT_EQ(run("parse 'a ; b + c' --table " + table).exit_code, 2);  // no ordering
  EXPECT_EQ(run("parse 'neg(e)' --table " + table).exit_code, 0);
  EXPECT_EQ(run("parse 'x' --table /nonexistent.json").exit_code, 2);
}

TEST(Cli, ReplStepwiseDerivation) {
  std::string input = write_temp("repl_input.txt",
                                 "load 2+2+3\n"
                                 "hyp h1 : 2+2 = 4\n"
                                 "hyp h1 at root span 0 1\n"
                                 "undo\n"
                                 "show\n"
                                 "quit\n");
  RunResult r = run("repl < " + input);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("4 + 3"), std::string::npos);
  // undo restores the loaded term
  EXPECT_NE(r.out.find("2 + 2 + 3"), std::string::npos);
}
