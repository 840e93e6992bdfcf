#include "skewpbw/cli.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "skewpbw/errors.hpp"

namespace skewpbw::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Line {
  int no;
  std::string keyword;
  std::string rest;
};

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

GroupElement parse_group_word(std::string_view text, const std::vector<std::string>& names, int line) {
  if (text == "1") return {};
  std::vector<int> e(names.size(), 0);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto dot = text.find('.', pos);
    const std::string_view tok = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    const auto caret = tok.find('^');
    const std::string name(tok.substr(0, caret));
    int power = 1;
    if (caret != std::string_view::npos) {
      auto p = to_int(tok.substr(caret + 1));
      if (!p) throw ParseError("bad exponent in group word '" + std::string(text) + "'", line);
      power = *p;
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("undeclared group generator '" + name + "'", line);
    e[static_cast<std::size_t>(it - names.begin())] += power;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return GroupElement(std::move(e));
}

void require_homogeneous(const Algebra& alg, const AlgebraElement& a, const std::string& what, int line) {
  if (a.is_zero()) return;
  const DegreeVector first = alg.degree_of(a.terms().begin()->first.word);
  for (const auto& [m, c] : a.terms()) {
    const DegreeVector d = alg.degree_of(m.word);
    if (d != first)
      throw ValidationError("line " + std::to_string(line) + ": " + what + " is not homogeneous: constitutions " +
                                render_degree(first) + " and " + render_degree(d),
                            alg.render(a));
  }
}

AlgebraElement parse_at(const Algebra& alg, std::string_view text, int line) {
  try {
    return alg.parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

std::shared_ptr<const ReductionSystem> complete(const PresentationFile& f) {
  return std::make_shared<const ReductionSystem>(ReductionSystem::complete(Presentation{f.algebra, f.relations, f.bound}));
}

void require_hopf(const ReductionSystem& r) {
  if (auto w = check_hopf(r)) throw ValidationError("the relations do not generate a Hopf ideal within the bound", *w);
}

std::string letter_name(const PBWData& d, int i) {
  return d.render(SuperWord{d.letters().at(static_cast<std::size_t>(i)).degree, {i}});
}

struct CoidealRun {
  std::shared_ptr<const ReductionSystem> r;
  std::shared_ptr<const PBWData> d;
  CoidealBasis basis;
  ExtractionResult res;
};

CoidealRun run_coideal(const PresentationFile& f) {
  if (!f.coideal) throw ParseError("the file has no coideal section");
  CoidealRun c{complete(f), nullptr, {}, {}};
  require_hopf(*c.r);
  c.d = hard_superletters(c.r);
  c.basis = close_basis(CoidealInput{c.r, *f.coideal});
  if (auto v = validate_coideal(c.basis))
    throw ValidationError("not a right coideal subalgebra: " + v->message, c.r->algebra().render(v->witness));
  c.res = extract_T(c.basis, c.d);
  return c;
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void emit(const nlohmann::ordered_json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_array() && x.empty()) {
        out += pad + k + ": (none)\n";
      } else if (x.is_structured()) {
        out += pad + k + ":\n";
        emit(x, indent + 2, out);
      } else {
        out += pad + k + ": " + scalar_text(x) + "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        std::string line;
        for (const auto& [k, y] : x.items()) line += (line.empty() ? "" : ", ") + k + ": " + scalar_text(y);
        out += pad + "- " + line + "\n";
      } else {
        out += pad + "- " + scalar_text(x) + "\n";
      }
    }
  } else {
    out += pad + scalar_text(v) + "\n";
  }
}

}  // namespace

bool operator==(const PresentationFile& a, const PresentationFile& b) {
  return a.generators == b.generators && a.group == b.group && a.degrees == b.degrees && a.mode == b.mode &&
         a.chi == b.chi && a.relations == b.relations && a.bound == b.bound && a.coideal == b.coideal;
}

PresentationFile parse_presentation(std::string_view text) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    int no = 0;
    for (std::string raw; std::getline(in, raw);) {
      ++no;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      std::string s = trim(raw);
      if (s.empty()) continue;
      const auto sp = s.find_first_of(" \t");
      lines.push_back(Line{no, s.substr(0, sp), sp == std::string::npos ? "" : trim(s.substr(sp))});
    }
  }

  PresentationFile f;
  int generators_line = 0, group_line = 0, bound_line = 0, character_line = 0;
  std::vector<const Line*> degree_lines, p_lines, relation_lines, coideal_lines;
  for (const Line& l : lines) {
    if (l.keyword == "generators") {
      if (generators_line) throw ParseError("generators declared twice", l.no);
      generators_line = l.no;
      f.generators = tokens(l.rest);
      if (f.generators.empty()) throw ParseError("no generators listed", l.no);
    } else if (l.keyword == "group") {
      if (group_line) throw ParseError("group declared twice", l.no);
      group_line = l.no;
      f.group = tokens(l.rest);
    } else if (l.keyword == "character") {
      if (character_line) throw ParseError("character declared twice", l.no);
      character_line = l.no;
      const auto t = tokens(l.rest);
      if (t.size() == 1 && t[0] == "generic") {
        f.mode = CoeffMode::generic();
      } else if (t.size() == 2 && t[0] == "root") {
        auto order = to_int(t[1]);
        if (!order || *order < 2) throw ParseError("root order must be an integer >= 2", l.no);
        f.mode = CoeffMode::root_of_unity(static_cast<unsigned>(*order));
      } else {
        throw ParseError("expected 'character generic' or 'character root <t>'", l.no);
      }
    } else if (l.keyword == "bound") {
      if (bound_line) throw ParseError("bound declared twice", l.no);
      bound_line = l.no;
      auto b = to_int(l.rest);
      if (!b || *b < 1) throw ParseError("bound must be a positive integer", l.no);
      f.bound = *b;
    } else if (l.keyword == "degree") {
      degree_lines.push_back(&l);
    } else if (l.keyword == "p") {
      p_lines.push_back(&l);
    } else if (l.keyword == "relation") {
      relation_lines.push_back(&l);
    } else if (l.keyword == "coideal") {
      coideal_lines.push_back(&l);
    } else {
      throw ParseError("unknown declaration '" + l.keyword + "'", l.no);
    }
  }
  if (!generators_line) throw ParseError("missing 'generators' declaration");
  if (!group_line) throw ParseError("missing 'group' declaration");
  if (!bound_line) throw ParseError("missing 'bound' declaration");

  auto find_generator = [&](const std::string& name, int line) {
    auto it = std::find(f.generators.begin(), f.generators.end(), name);
    if (it == f.generators.end()) throw ParseError("undeclared generator '" + name + "'", line);
    return static_cast<std::size_t>(it - f.generators.begin());
  };
  auto find_group = [&](const std::string& name, int line) {
    auto it = std::find(f.group.begin(), f.group.end(), name);
    if (it == f.group.end()) throw ParseError("undeclared group generator '" + name + "'", line);
    return static_cast<std::size_t>(it - f.group.begin());
  };

  std::vector<std::optional<GroupElement>> degrees(f.generators.size());
  for (const Line* l : degree_lines) {
    const auto t = tokens(l->rest);
    if (t.size() != 2) throw ParseError("expected 'degree <generator> <group word>'", l->no);
    const std::size_t i = find_generator(t[0], l->no);
    if (degrees[i]) throw ParseError("degree of '" + t[0] + "' given twice", l->no);
    degrees[i] = parse_group_word(t[1], f.group, l->no);
  }
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (!degrees[i]) throw ParseError("generator '" + f.generators[i] + "' has no degree", generators_line);
    f.degrees.push_back(*degrees[i]);
  }

  f.chi.assign(f.generators.size(), std::vector<Scalar>(f.group.size(), Scalar(1)));
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (const Line* l : p_lines) {
    const auto t = tokens(l->rest);
    if (t.size() < 3) throw ParseError("expected 'p <generator> <group generator> <scalar>'", l->no);
    const std::size_t i = find_generator(t[0], l->no), j = find_group(t[1], l->no);
    if (!seen.emplace(std::pair{i, j}, l->no).second)
      throw ParseError("p " + t[0] + " " + t[1] + " given twice", l->no);
    const std::string value = trim(std::string_view(l->rest).substr(l->rest.find(t[1]) + t[1].size()));
    Scalar s;
    try {
      s = Scalar::parse(value, f.mode);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), l->no);
    } catch (const SpecializationPole& e) {
      throw ParseError(e.what(), l->no);
    }
    if (s.is_zero()) throw ParseError("character values must be nonzero", l->no);
    f.chi[i][j] = s;
  }

  try {
    f.algebra = std::make_shared<const Algebra>(Alphabet(f.generators), f.group, f.degrees, f.chi, f.mode);
  } catch (const ContractViolation& e) {
    throw ParseError(e.what(), generators_line);
  }
  f.chi.clear();
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    f.chi.emplace_back();
    for (std::size_t j = 0; j < f.group.size(); ++j) f.chi[i].push_back(f.algebra->chi_entry(static_cast<Letter>(i), j));
  }

  for (const Line* l : relation_lines) {
    AlgebraElement r = parse_at(*f.algebra, l->rest, l->no);
    require_homogeneous(*f.algebra, r, "relation", l->no);
    f.relations.push_back(std::move(r));
  }
  if (!coideal_lines.empty()) f.coideal.emplace();
  for (const Line* l : coideal_lines) {
    std::size_t pos = 0;
    const std::string& rest = l->rest;
    while (pos <= rest.size()) {
      const auto semi = rest.find(';', pos);
      const std::string piece = trim(std::string_view(rest).substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
      if (!piece.empty()) f.coideal->push_back(parse_at(*f.algebra, piece, l->no));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
  }
  return f;
}

std::string render_presentation(const PresentationFile& f) {
  const Algebra& alg = *f.algebra;
  std::string s = "generators";
  for (const auto& g : f.generators) s += " " + g;
  s += "\ngroup";
  for (const auto& g : f.group) s += " " + g;
  s += "\n";
  for (std::size_t i = 0; i < f.generators.size(); ++i) s += "degree " + f.generators[i] + " " + alg.render(f.degrees[i]) + "\n";
  s += f.mode.is_generic() ? "character generic\n" : "character root " + std::to_string(f.mode.order) + "\n";
  for (std::size_t i = 0; i < f.generators.size(); ++i)
    for (std::size_t j = 0; j < f.group.size(); ++j)
      if (!f.chi[i][j].is_one()) s += "p " + f.generators[i] + " " + f.group[j] + " " + f.chi[i][j].to_string() + "\n";
  for (const auto& r : f.relations) s += "relation " + alg.render(r) + "\n";
  s += "bound " + std::to_string(f.bound) + "\n";
  if (f.coideal) {
    s += "coideal";
    for (std::size_t i = 0; i < f.coideal->size(); ++i) s += (i ? " ; " : " ") + alg.render((*f.coideal)[i]);
    s += "\n";
  }
  return s;
}

Report cmd_pbw(const PresentationFile& f) {
  auto r = complete(f);
  require_hopf(*r);
  auto d = hard_superletters(r);
  Report rep;
  rep["command"] = "pbw";
  rep["mode"] = f.mode.to_string();
  rep["bound"] = f.bound;
  rep["rules"] = r->rules().size();
  rep["hard_letters"] = Report::array();
  for (std::size_t i = 0; i < d->letters().size(); ++i) {
    const HardLetter& l = d->letters()[i];
    rep["hard_letters"].push_back({{"letter", letter_name(*d, static_cast<int>(i))},
                                   {"bracketing", render_tree(f.algebra->letters(), l.letter.tree)},
                                   {"degree", render_degree(l.degree)},
                                   {"height", l.height.to_string()}});
  }
  rep["dimensions"] = Report::array();
  for (const auto& [gamma, dim] : d->dimensions())
    rep["dimensions"].push_back(
        {{"constitution", render_degree(gamma)}, {"dimension", dim}, {"pbw_words", d->basis_words(gamma).size()}});
  return rep;
}

Report cmd_coideal(const PresentationFile& f) {
  CoidealRun c = run_coideal(f);
  const Algebra& alg = *f.algebra;
  const PTData& pt = *c.res.pt;
  Report rep;
  rep["command"] = "coideal";
  rep["generators"] = Report::array();
  for (const auto& g : c.basis.input().generators) rep["generators"].push_back(alg.render(g));
  rep["right_coideal"] = true;
  rep["T"] = Report::array();
  for (const TGenerator& t : c.res.T)
    rep["T"].push_back({{"letter", letter_name(*c.d, t.letter)},
                        {"m", t.m},
                        {"element", alg.render(t.element)},
                        {"height", pt.letters()[static_cast<std::size_t>(*pt.thin_index(t.letter))].height.to_string()}});
  rep["P_T"] = Report::array();
  for (std::size_t i = 0; i < pt.letters().size(); ++i)
    rep["P_T"].push_back({{"letter", pt.render_letter(static_cast<int>(i))},
                          {"height", pt.letters()[i].height.to_string()},
                          {"in_T", pt.letters()[i].is_thin()}});
  rep["not_represented"] = Report::array();
  for (std::size_t i = 0; i < c.res.minimal_power.size(); ++i)
    if (!c.res.minimal_power[i]) rep["not_represented"].push_back(letter_name(*c.d, static_cast<int>(i)));
  rep["dimensions"] = Report::array();
  for (const DimensionRow& row : coideal_report(c.basis, c.res).dimensions)
    rep["dimensions"].push_back(
        {{"constitution", render_degree(row.gamma)}, {"subalgebra", row.closure}, {"t_words", row.t_words}});
  return rep;
}

Report cmd_reduce(const PresentationFile& f, std::string_view expr) {
  auto r = complete(f);
  const Algebra& alg = *f.algebra;
  const AlgebraElement a = alg.parse(expr);
  Report rep;
  rep["command"] = "reduce";
  rep["input"] = alg.render(a);
  rep["normal_form"] = alg.render(r->nf(a));
  const bool hopf = !check_hopf(*r);
  rep["hopf"] = hopf;
  if (hopf) {
    auto d = hard_superletters(r);
    rep["pbw_decomposition"] = d->render(d->decompose(a));
  } else {
    rep["pbw_decomposition"] = nullptr;
  }
  return rep;
}

Report cmd_coproduct(const PresentationFile& f, std::string_view expr) {
  auto r = complete(f);
  const Algebra& alg = *f.algebra;
  const AlgebraElement a = alg.parse(expr);
  const TensorElement t = r->nf(alg.coproduct(a));
  Report rep;
  rep["command"] = "coproduct";
  rep["input"] = alg.render(a);
  rep["coproduct"] = alg.render(t);
  rep["terms"] = t.size();
  return rep;
}

Report cmd_member(const PresentationFile& f, std::string_view expr) {
  CoidealRun c = run_coideal(f);
  const AlgebraElement a = f.algebra->parse(expr);
  const Membership m = membership(a, c.res);
  Report rep;
  rep["command"] = "member";
  rep["input"] = f.algebra->render(a);
  rep["member"] = m.member;
  rep["certificate"] = c.res.pt->render(m.certificate);
  if (m.offending)
    rep["offending"] = c.res.pt->render_letter(*m.offending);
  else
    rep["offending"] = nullptr;
  return rep;
}

Report cmd_check_hopf(const PresentationFile& f) {
  auto r = complete(f);
  require_hopf(*r);
  Report rep;
  rep["command"] = "check-hopf";
  rep["hopf"] = true;
  rep["relations"] = f.relations.size();
  return rep;
}

std::string render(const Report& r, Format format) {
  if (format == Format::Machine) return r.dump(2) + "\n";
  std::string out;
  emit(r, 0, out);
  return out;
}

Outcome run(const std::function<Report()>& command) {
  auto failure = [](int code, const char* status, const std::string& message, const std::string& witness = {}) {
    Report rep;
    rep["status"] = status;
    rep["message"] = message;
    if (!witness.empty()) rep["witness"] = witness;
    return Outcome{code, rep, message};
  };
  try {
    return Outcome{Ok, command(), {}};
  } catch (const ParseError& e) {
    return failure(ParseFailure, "parse error", e.what());
  } catch (const ValidationError& e) {
    return failure(ValidationFailure, "validation failure", e.what(), e.witness());
  } catch (const SpecializationPole& e) {
    return failure(ValidationFailure, "validation failure", e.what());
  } catch (const OutOfBound& e) {
    return failure(OutOfBoundCode, "out of bound", e.what());
  } catch (const EngineFailure& e) {
    return failure(EngineFailureCode, "engine failure", e.what());
  } catch (const ContractViolation& e) {
    return failure(EngineFailureCode, "engine failure", e.what());
  }
}

}  // namespace skewpbw::cli
