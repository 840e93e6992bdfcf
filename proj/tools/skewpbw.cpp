#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skewpbw/cli.hpp"

using namespace skewpbw;

int main(int argc, char** argv) {
  CLI::App app{"PBW bases of character Hopf algebras and their right coideal subalgebras"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));

  std::string path, expr;
  auto file_command = [&](const char* name, const char* help, bool with_expr) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", path, "Presentation file")->required();
    if (with_expr) sub->add_option("--expr", expr, "Expression in the generators")->required();
    return sub;
  };
  CLI::App* pbw = file_command("pbw", "Hard super-letters, heights and dimensions", false);
  CLI::App* coideal = file_command("coideal", "Validate the coideal section and extract its generators", false);
  CLI::App* reduce = file_command("reduce", "Normal form and PBW decomposition of an expression", true);
  CLI::App* coproduct = file_command("coproduct", "Reduced coproduct of an expression", true);
  CLI::App* member = file_command("member", "Membership of an expression in the coideal subalgebra", true);
  CLI::App* hopf = file_command("check-hopf", "Check that the relations generate a Hopf ideal", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::ParseFailure;
  }

  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return cli::ParseFailure;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const cli::Outcome o = cli::run([&] {
    const cli::PresentationFile f = cli::parse_presentation(text);
    if (pbw->parsed()) return cli::cmd_pbw(f);
    if (coideal->parsed()) return cli::cmd_coideal(f);
    if (reduce->parsed()) return cli::cmd_reduce(f, expr);
    if (coproduct->parsed()) return cli::cmd_coproduct(f, expr);
    if (member->parsed()) return cli::cmd_member(f, expr);
    (void)hopf;
    return cli::cmd_check_hopf(f);
  });
  std::cout << cli::render(o.report, format == "machine" ? cli::Format::Machine : cli::Format::Human);
  if (!o.error.empty()) std::cerr << "error: " << o.error << "\n";
  return o.code;
}
