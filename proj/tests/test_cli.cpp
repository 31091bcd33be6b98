#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string g_binary;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

const char* kAstarBstar = R"(alphabet: a b
initial: q0
finals: q0 q1
trans: q0 a q0
trans: q0 b q1
trans: q1 b q1
)";

std::string write_dfa_file() {
  std::string path = "/tmp/numerans_test_astar_bstar.dfa";
  std::ofstream out(path);
  out << kAstarBstar;
  return path;
}

}  // namespace

TEST_CASE("langs lists the builtins") {
  RunResult r = run_cli("langs");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("dyck\n") != std::string::npos);
  CHECK(r.output.find("three-halves") != std::string::npos);
  CHECK(r.output.find("full-binary") != std::string::npos);
}

TEST_CASE("val and rep are inverse") {
  RunResult v = run_cli("val --lang dyck aabaab");
  CHECK(v.exit_code == 0);
  CHECK(v.output == "32\n");
  RunResult r = run_cli("rep --lang dyck 32");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "aabaab\n");
  CHECK(run_cli("val --lang dyck eps").output == "0\n");
}

TEST_CASE("enumerate lists words in genealogical order") {
  RunResult r = run_cli("enumerate --lang balanced -n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "eps\na\nb\nab\nba\n");
}

TEST_CASE("interval and subdivide print exact endpoints") {
  RunResult i = run_cli("interval --lang dyck ab");
  CHECK(i.exit_code == 0);
  CHECK(i.output == "ab: [7/8, 1]\n");
  RunResult s = run_cli("subdivide --lang dyck aaa");
  CHECK(s.exit_code == 0);
  CHECK(s.output == "aaaa: [1/2, 21/32]\naaab: [21/32, 3/4]\n");
}

TEST_CASE("decode evaluates ultimately periodic words") {
  RunResult r = run_cli("decode --lang dyck '(aab)^w'");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "39/49\n");
  CHECK(run_cli("decode --lang dyck '(ab)^w'").output == "1\n");
  CHECK(run_cli("decode --lang int-10 '(3)^w'").output == "1/3\n");
}

TEST_CASE("encode respects depth and policy") {
  CHECK(run_cli("encode --lang dyck 3/4 -d 6 --policy leftmost").output ==
        "aaabbb\n");
  CHECK(run_cli("encode --lang dyck 3/4 -d 6 --policy rightmost").output ==
        "aabaaa\n");
  CHECK(run_cli("encode --lang dyck 1/2 -d 5").output == "aaaaa\n");
}

TEST_CASE("converge prints the CSV table") {
  RunResult r = run_cli("converge --lang dyck '(aab)^w' -n 15 --csv");
  CHECK(r.exit_code == 0);
  std::vector<std::string> lines = lines_of(r.output);
  REQUIRE(lines.size() == 16);
  CHECK(lines[0] == "n,prefix,val,v,ratio_exact,ratio_dec");
  CHECK(lines[1] == "1,a,1,2,1/2,0.50000");
  CHECK(lines[3] == "3,aab,5,7,5/7,0.71429");
  CHECK(lines[15] == "15,aabaabaabaabaab,10591,13495,10591/13495,0.78481");
}

TEST_CASE("kbound prints an enclosure of K") {
  RunResult r = run_cli("kbound -n 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "[10496/6561, 3584/2187]\n");
}

TEST_CASE("minmax prints extremal adherence words") {
  RunResult r = run_cli("minmax --lang dyck aab");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "min: aab(a)^w\nmax: aabb(ab)^w\n");
  RunResult th = run_cli("minmax --lang three-halves --cap 12");
  CHECK(th.exit_code == 0);
  CHECK(th.output.find("min: prefix 210110001101") != std::string::npos);
  CHECK(th.output.find("depth 12") != std::string::npos);
}

TEST_CASE("classify reports growth and adherence cardinality") {
  RunResult fb = run_cli("classify --lang full-binary");
  CHECK(fb.exit_code == 0);
  CHECK(fb.output.find("growth: exponential") != std::string::npos);
  CHECK(fb.output.find("uncountable_adherence: true") != std::string::npos);
  CHECK(fb.output.find("uncountable_linfty: true") != std::string::npos);

  std::string path = write_dfa_file();
  RunResult ab = run_cli("classify --dfa " + path);
  CHECK(ab.exit_code == 0);
  CHECK(ab.output.find("growth: polynomial") != std::string::npos);
  CHECK(ab.output.find("degree_bound: 1") != std::string::npos);
  CHECK(ab.output.find("uncountable_adherence: false") != std::string::npos);
}

TEST_CASE("DFA files work for numeration too") {
  std::string path = write_dfa_file();
  RunResult v = run_cli("val --dfa " + path + " aab");
  CHECK(v.exit_code == 0);
  CHECK(v.output == "7\n");
  RunResult r = run_cli("rep --dfa " + path + " 7");
  CHECK(r.output == "aab\n");
}

TEST_CASE("demo-nonprefix shows both accumulation points") {
  RunResult r = run_cli("demo-nonprefix -n 50");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("limit 3/4") != std::string::npos);
  CHECK(r.output.find("limit 3/5") != std::string::npos);
  CHECK(r.output.find("0.75000") != std::string::npos);
  CHECK(r.output.find("0.60080") != std::string::npos);
}

TEST_CASE("input problems exit with code 1") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("val --lang dyck xz").exit_code == 1);
  CHECK(run_cli("val aab").exit_code == 1);  // no system chosen
  CHECK(run_cli("rep --lang dyck twelve").exit_code == 1);
  CHECK(run_cli("val --lang no-such-lang aab").exit_code == 1);
}

TEST_CASE("value problems exit with code 2") {
  CHECK(run_cli("val --lang dyck ba").exit_code == 2);
  CHECK(run_cli("interval --lang dyck ba").exit_code == 2);
  CHECK(run_cli("rep --lang dyck -- -5").exit_code == 2);
  CHECK(run_cli("encode --lang dyck 1/4").exit_code == 2);
  CHECK(run_cli("classify --lang dyck").exit_code == 2);
}

int main(int argc, char** argv) {
  doctest::Context context;
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_binary = argv[argc - 1];
    --argc;
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest options] <numerans binary>\n");
    return 1;
  }
  context.applyCommandLine(argc, argv);
  return context.run();
}
