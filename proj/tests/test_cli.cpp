#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "skewpbw/cli.hpp"
#include "skewpbw/errors.hpp"

using namespace skewpbw;
using namespace skewpbw::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& name) { return slurp(std::string(SKEWPBW_DATA_DIR) + "/" + name); }

const char* const data_files[] = {"minimal.pbw",      "qserre.pbw",     "truncated_root3.pbw",      "truncated_generic.pbw",
                                  "coideal_pair.pbw", "coideal_x1.pbw", "bracket_not_coideal.pbw", "cube_root3.pbw"};

int parse_error_line(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const std::string header = "generators x1 x2\ngroup g1 g2\ndegree x1 g1\ndegree x2 g2\n";

struct Process {
  int code;
  std::string out;
};

Process invoke(const std::string& args) {
  static int counter = 0;
  const std::string out = "cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = std::string(SKEWPBW_BINARY) + " " + args + " >" + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  Process p{WEXITSTATUS(status), slurp(out)};
  std::remove(out.c_str());
  return p;
}

std::string file_arg(const std::string& name) { return std::string(SKEWPBW_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("minimal file") {
  const PresentationFile f = parse_presentation(data("minimal.pbw"));
  CHECK(f.generators == std::vector<std::string>{"x"});
  CHECK(f.bound == 3);
  CHECK(f.relations.empty());
  CHECK_FALSE(f.coideal);
  CHECK(f.mode.is_generic());
}

TEST_CASE("q-Serre file relation expands to three terms") {
  const PresentationFile f = parse_presentation(data("qserre.pbw"));
  REQUIRE(f.relations.size() == 2);
  const Scalar q = Scalar::q(f.mode);
  // [x1,x2] = x1x2 - q^-1 x2x1 and p(x1, x1x2) = q q^-1 = 1
  AlgebraElement expect;
  expect.add_term(Monomial{{}, {0, 0, 1}}, Scalar(1));
  expect.add_term(Monomial{{}, {0, 1, 0}}, Scalar(-1) - q.inverse());
  expect.add_term(Monomial{{}, {1, 0, 0}}, q.inverse());
  CHECK(f.relations[0] == expect);
  CHECK(f.relations[0].terms().size() == 3);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line(header + "p x1 g3 q\nbound 3\n") == 5);
  CHECK(parse_error_line(header + "p x3 g1 q\nbound 3\n") == 5);
  CHECK(parse_error_line(header + "bound 3\nrelation x1.x3\n") == 6);
  CHECK(parse_error_line(header + "bound 3\nfrobnicate\n") == 6);
  CHECK(parse_error_line(header + "bound 3\nbound 4\n") == 6);
  CHECK(parse_error_line(header + "bound 0\n") == 5);
  CHECK(parse_error_line(header + "bound 3\ncharacter root 1\n") == 6);
  CHECK(parse_error_line(header + "bound 3\np x1 g1 0\n") == 6);
  CHECK(parse_error_line(header + "bound 3\np x1 g1 q\np x1 g1 q^2\n") == 7);
  CHECK(parse_error_line(header + "bound 3\nrelation [x1,x2\n") == 6);
  CHECK(parse_error_line(header + "degree x1 g2\nbound 3\n") == 5);
  CHECK(parse_error_line("generators x1 x2\ngroup g1\ndegree x1 g1\nbound 2\n") == 1);
  CHECK(parse_error_line(header) == 0);
  CHECK_THROWS_AS(parse_presentation("group g\nbound 2\n"), ParseError);
}

TEST_CASE("inhomogeneous relation names both constitutions") {
  try {
    parse_presentation(header + "bound 3\nrelation x1 + x2\n");
    FAIL("accepted");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(1,0)") != std::string::npos);
    CHECK(msg.find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("comments and declaration order") {
  const PresentationFile a = parse_presentation(data("qserre.pbw"));
  const PresentationFile b = parse_presentation(
      "bound 6   # first\nrelation [[x1,x2],x2]\nrelation [x1,[x1,x2]]\np x2 g2 q\np x1 g2 q^-1\np x1 g1 q\n"
      "character generic\ndegree x2 g2\ndegree x1 g1\ngroup g1 g2\ngenerators x1 x2\n");
  CHECK(a.chi == b.chi);
  CHECK(a.relations.size() == b.relations.size());
  CHECK(a.relations[0] == b.relations[1]);
}

TEST_CASE("render and re-parse gives an equal file") {
  for (const char* name : data_files) {
    CAPTURE(name);
    const PresentationFile f = parse_presentation(data(name));
    const std::string text = render_presentation(f);
    const PresentationFile g = parse_presentation(text);
    CHECK(f == g);
    CHECK(render_presentation(g) == text);
  }
  const PresentationFile odd = parse_presentation(
      "generators a b c\ngroup h k\ndegree a h^2.k^-1\ndegree b 1\ndegree c k\ncharacter root 4\n"
      "p a h (q+1)/(q-1)\np c k -q^3\np b h 7/3\nrelation [c,b]\nbound 3\ncoideal a ; 2*c.b - b.c ; h * a\n");
  CHECK(parse_presentation(render_presentation(odd)) == odd);
}

TEST_CASE("pbw report on q-Serre") {
  const Report r = cmd_pbw(parse_presentation(data("qserre.pbw")));
  REQUIRE(r["hard_letters"].size() == 3);
  CHECK(r["hard_letters"][0]["letter"] == "[x2]");
  CHECK(r["hard_letters"][1]["letter"] == "[x1x2]");
  CHECK(r["hard_letters"][2]["letter"] == "[x1]");
  CHECK(r["hard_letters"][1]["bracketing"] == "[x1,x2]");
  for (const auto& l : r["hard_letters"]) CHECK(l["height"] == "inf");
  for (const auto& row : r["dimensions"]) CHECK(row["dimension"] == row["pbw_words"]);
}

TEST_CASE("pbw report heights") {
  const Report r = cmd_pbw(parse_presentation(data("truncated_root3.pbw")));
  CHECK(r["hard_letters"][0]["height"] == "3");
  const Outcome o = run([] { return cmd_pbw(parse_presentation(data("truncated_generic.pbw"))); });
  CHECK(o.code == ValidationFailure);
  CHECK_FALSE(o.report["witness"].get<std::string>().empty());
}

TEST_CASE("member query on U = <x1>") {
  const Outcome o = run([] { return cmd_member(parse_presentation(data("coideal_x1.pbw")), "x2"); });
  CHECK(o.code == Ok);
  CHECK(o.report["member"] == false);
  CHECK(o.report["certificate"] == "[x2]");
  CHECK(o.report["offending"] == "[x2]");
  const Report yes = cmd_member(parse_presentation(data("coideal_x1.pbw")), "3 * g2 * x1^2 + g1");
  CHECK(yes["member"] == true);
  CHECK(yes["offending"].is_null());
}

TEST_CASE("coideal report on the pair file") {
  const Report r = cmd_coideal(parse_presentation(data("coideal_pair.pbw")));
  REQUIRE(r["T"].size() == 2);
  CHECK(r["T"][0]["letter"] == "[x1x2]");
  CHECK(r["T"][1]["letter"] == "[x1]");
  for (const auto& t : r["T"]) CHECK(t["m"] == 1);
  for (const auto& row : r["dimensions"]) CHECK(row["subalgebra"] == row["t_words"]);
}

TEST_CASE("non-coideal file fails validation with a witness") {
  const Outcome o = run([] { return cmd_coideal(parse_presentation(data("bracket_not_coideal.pbw"))); });
  CHECK(o.code == ValidationFailure);
  CHECK(o.report["witness"] == "(q-1)/q * g1 * x2 (x) x1");
}

TEST_CASE("exit codes") {
  CHECK(run([] { return cmd_pbw(parse_presentation("generators x\n")); }).code == ParseFailure);
  CHECK(run([] { return cmd_coideal(parse_presentation(data("qserre.pbw"))); }).code == ParseFailure);
  CHECK(run([] { return cmd_reduce(parse_presentation(data("qserre.pbw")), "x1 +"); }).code == ParseFailure);
  CHECK(run([] { return cmd_reduce(parse_presentation(data("minimal.pbw")), "x^4"); }).code == OutOfBoundCode);
  CHECK(run([]() -> Report { throw EngineFailure("boom"); }).code == EngineFailureCode);
  const Outcome ok = run([] { return cmd_check_hopf(parse_presentation(data("qserre.pbw"))); });
  CHECK(ok.code == Ok);
  CHECK(ok.error.empty());
}

TEST_CASE("reduce and coproduct reports") {
  const PresentationFile f = parse_presentation(data("qserre.pbw"));
  const Report r = cmd_reduce(f, "x1.x1.x2");
  CHECK(r["normal_form"] == "(q+1)/q * x1.x2.x1 + -1/q * x2.x1.x1");
  CHECK(r["pbw_decomposition"] == "(q+1)/q * [x1x2][x1] + 1/q^2 * [x2][x1]^2");
  const Report c = cmd_coproduct(f, "x1");
  CHECK(c["coproduct"] == "x1 (x) 1 + g1 (x) x1");
}

TEST_CASE("human rendering") {
  const std::string h = render(cmd_pbw(parse_presentation(data("qserre.pbw"))), Format::Human);
  CHECK(h.find("command: pbw\n") == 0);
  CHECK(h.find("  - letter: [x1x2], bracketing: [x1,x2], degree: (1,1), height: inf\n") != std::string::npos);
}

TEST_CASE("binary: exit codes and deterministic machine output") {
  CHECK(invoke("pbw " + file_arg("qserre.pbw")).code == 0);
  CHECK(invoke("pbw " + file_arg("truncated_generic.pbw")).code == 3);
  CHECK(invoke("coideal " + file_arg("bracket_not_coideal.pbw")).code == 3);
  CHECK(invoke("coideal " + file_arg("qserre.pbw")).code == 2);
  CHECK(invoke("reduce " + file_arg("minimal.pbw") + " --expr x^4").code == 5);
  CHECK(invoke("pbw /nonexistent/file.pbw").code == 2);
  CHECK(invoke("").code == 2);
  const Process m = invoke("member " + file_arg("coideal_x1.pbw") + " --expr x2");
  CHECK(m.code == 0);
  CHECK(m.out.find("member: false") != std::string::npos);

  for (const char* cmd : {"pbw", "coideal"})
    for (const char* name : {"coideal_pair.pbw", "cube_root3.pbw"}) {
      const std::string args = std::string("--format machine ") + cmd + " " + file_arg(name);
      const Process a = invoke(args), b = invoke(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK_FALSE(a.out.empty());
    }
  const Process late = invoke("pbw " + file_arg("minimal.pbw") + " --format machine");
  CHECK(late.out.front() == '{');
}
