#ifndef SKEWPBW_CLI_HPP
#define SKEWPBW_CLI_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "skewpbw/coideal.hpp"

namespace skewpbw::cli {

/// Parsed presentation file. Character entries that the file omits are 1.
struct PresentationFile {
  std::vector<std::string> generators;
  std::vector<std::string> group;
  std::vector<GroupElement> degrees;
  CoeffMode mode;
  std::vector<std::vector<Scalar>> chi;  // chi[i][j] = p(x_i, g_j)
  std::vector<AlgebraElement> relations;
  int bound = 0;
  std::optional<std::vector<AlgebraElement>> coideal;
  std::shared_ptr<const Algebra> algebra;

  friend bool operator==(const PresentationFile& a, const PresentationFile& b);
};

/// Line-based format:
///   generators x1 x2 ...        (descending)
///   group g1 g2 ...
///   degree x1 g1^1.g2^0
///   character generic | character root <t>
///   p <generator> <group generator> <scalar>
///   relation <expr>
///   bound <n>
///   coideal <expr> ; <expr> ; ...
/// `#` starts a comment. Throws ParseError (with the line number) on syntax
/// and name errors and ValidationError on inhomogeneous expressions.
PresentationFile parse_presentation(std::string_view text);

/// Canonical text that parses back to an equal PresentationFile.
std::string render_presentation(const PresentationFile& f);

using Report = nlohmann::ordered_json;

Report cmd_pbw(const PresentationFile& f);
Report cmd_coideal(const PresentationFile& f);
Report cmd_reduce(const PresentationFile& f, std::string_view expr);
Report cmd_coproduct(const PresentationFile& f, std::string_view expr);
Report cmd_member(const PresentationFile& f, std::string_view expr);
Report cmd_check_hopf(const PresentationFile& f);

enum class Format { Human, Machine };
std::string render(const Report& r, Format format);

enum ExitCode { Ok = 0, ParseFailure = 2, ValidationFailure = 3, EngineFailureCode = 4, OutOfBoundCode = 5 };

struct Outcome {
  int code;
  Report report;
  std::string error;  // empty on success
};

/// Runs a command, turning the library's exceptions into exit codes and an
/// error report.
Outcome run(const std::function<Report()>& command);

}  // namespace skewpbw::cli

#endif  // SKEWPBW_CLI_HPP
