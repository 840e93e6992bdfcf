#include "skewpbw/coideal.hpp"

#include "skewpbw/errors.hpp"

namespace skewpbw {

namespace {

using WordVec = SparseVector<Word, HallLess>;

WordVec to_vec(const AlgebraElement& a) {
  WordVec v;
  for (const auto& [m, c] : a.terms()) {
    if (!m.group.is_identity()) throw EngineFailure("group-like factor in a group-free computation");
    v.emplace(m.word, c);
  }
  return v;
}

AlgebraElement from_vec(const WordVec& v) {
  AlgebraElement a;
  for (const auto& [w, c] : v) a.add_term(Monomial{{}, w}, c);
  return a;
}

}  // namespace

CoidealInput CoidealInput::normalized() const {
  if (!system) throw ContractViolation("coideal input without a reduction system");
  const Algebra& alg = system->algebra();
  CoidealInput out{system, {}};
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const AlgebraElement& u = generators[i];
    const std::string tag = "coideal generator " + std::to_string(i + 1);
    if (u.is_zero()) continue;
    const GroupElement g = u.terms().begin()->first.group;
    for (const auto& [m, c] : u.terms())
      if (m.group != g) throw ValidationError(tag + " mixes different group factors", alg.render(u));
    AlgebraElement v = g.is_identity() ? u : alg.multiply(AlgebraElement::group(g.inverse()), u);
    auto d = alg.homogeneous_degree(v);
    if (!d) {
      const DegreeVector first = alg.degree_of(v.terms().begin()->first.word);
      for (const auto& [m, c] : v.terms())
        if (alg.degree_of(m.word) != first)
          throw ValidationError(tag + " is not homogeneous: constitutions " + render_degree(first) + " and " +
                                    render_degree(alg.degree_of(m.word)),
                                alg.render(u));
    }
    const int deg = total_degree(*d);
    if (deg == 0) continue;
    if (deg > system->bound())
      throw ValidationError(tag + " has degree " + std::to_string(deg) + " above the bound " +
                            std::to_string(system->bound()));
    v = system->nf(v);
    if (!v.is_zero()) out.generators.push_back(std::move(v));
  }
  return out;
}

CoidealBasis CoidealBasis::close(const CoidealInput& input) {
  CoidealBasis b;
  b.input_ = input.normalized();
  const ReductionSystem& r = *b.input_.system;
  const Algebra& alg = r.algebra();
  const std::size_t n = alg.rank();
  std::vector<DegreeVector> gen_degrees;
  for (const auto& g : b.input_.generators) gen_degrees.push_back(*alg.homogeneous_degree(g));

  // Every product of generators is (shorter product)·generator, so right
  // multiplication of the lower components already reaches all of them.
  for (const DegreeVector& gamma : constitutions_up_to(n, r.bound())) {
    Table table;
    for (std::size_t j = 0; j < gen_degrees.size(); ++j) {
      if (!divides(gen_degrees[j], gamma)) continue;
      DegreeVector rest = gamma;
      for (std::size_t k = 0; k < n; ++k) rest[k] -= gen_degrees[j][k];
      for (const AlgebraElement& left : b.basis(rest)) table.insert(to_vec(r.multiply(left, b.input_.generators[j])), {});
    }
    table.fully_reduce();
    b.tables_.emplace(gamma, std::move(table));
  }
  return b;
}

std::size_t CoidealBasis::dimension(const DegreeVector& gamma) const {
  if (total_degree(gamma) == 0) return 1;
  auto it = tables_.find(gamma);
  return it == tables_.end() ? 0 : it->second.rank();
}

std::vector<AlgebraElement> CoidealBasis::basis(const DegreeVector& gamma) const {
  if (total_degree(gamma) == 0) return {AlgebraElement(1)};
  std::vector<AlgebraElement> out;
  if (auto it = tables_.find(gamma); it != tables_.end())
    for (const auto& [pivot, row] : it->second.rows()) out.push_back(from_vec(row.vec));
  return out;
}

bool CoidealBasis::contains(const AlgebraElement& a) const {
  const AlgebraElement n = system().nf(a);
  const std::size_t rank = system().algebra().rank();
  std::map<GroupElement, std::map<DegreeVector, WordVec, GammaLess>> parts;
  for (const auto& [m, c] : n.terms()) parts[m.group][constitution(m.word, rank)].emplace(m.word, c);
  for (const auto& [g, by_degree] : parts)
    for (const auto& [gamma, vec] : by_degree) {
      if (total_degree(gamma) == 0) continue;
      auto it = tables_.find(gamma);
      if (it == tables_.end() || !it->second.in_span(vec)) return false;
    }
  return true;
}

CoidealBasis close_basis(const CoidealInput& input) { return CoidealBasis::close(input); }

std::optional<CoidealViolation> validate_coideal(const CoidealBasis& basis) {
  const ReductionSystem& r = basis.system();
  const Algebra& alg = r.algebra();
  const auto& gens = basis.input().generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const TensorElement d = r.nf(alg.coproduct(gens[i]));
    std::map<Monomial, AlgebraElement, MonomialLess> by_right;
    for (const auto& [key, c] : d.terms()) by_right[key[1]].add_term(key[0], c);
    for (const auto& [right, left] : by_right) {
      if (basis.contains(left)) continue;
      TensorElement witness(2);
      for (const auto& [m, c] : left.terms()) witness.add_term({m, right}, c);
      return CoidealViolation{i, gens[i], witness,
                              "coproduct of " + alg.render(gens[i]) + " has left factor " + alg.render(left) +
                                  " outside the subalgebra against " + alg.render(right)};
    }
  }
  return std::nullopt;
}

ExtractionResult extract_T(const CoidealBasis& basis, std::shared_ptr<const PBWData> data) {
  if (&data->reduction() != &basis.system()) throw ContractViolation("extract_T: PBW data of a different system");
  const Algebra& alg = basis.system().algebra();
  const int bound = basis.system().bound();
  using SuperTable = Echelon<SuperWord, SuperWordLess>;
  std::map<DegreeVector, SuperTable, GammaLess> components;

  auto component = [&](const DegreeVector& gamma) -> const SuperTable& {
    if (auto it = components.find(gamma); it != components.end()) return it->second;
    SuperTable table;
    for (const AlgebraElement& b : basis.basis(gamma)) {
      SuperTable::Vec v;
      for (const auto& [t, c] : data->decompose(b)) {
        if (!t.group.is_identity()) throw EngineFailure("group-like factor in a coideal component");
        v.emplace(t.word, c);
      }
      if (!table.insert(std::move(v), {})) throw EngineFailure("dependent rows in a coideal component");
    }
    table.fully_reduce();
    return components.emplace(gamma, std::move(table)).first->second;
  };

  ExtractionResult res;
  std::vector<ThinElement> thin;
  for (std::size_t i = 0; i < data->letters().size(); ++i) {
    const HardLetter& u = data->letters()[i];
    std::optional<unsigned> found;
    for (unsigned m = 1; static_cast<int>(m) * total_degree(u.degree) <= bound; ++m) {
      const DegreeVector gamma = static_cast<int>(m) * u.degree;
      const SuperTable& table = component(gamma);
      auto row = table.rows().find(SuperWord{gamma, std::vector<int>(m, static_cast<int>(i))});
      if (row == table.rows().end()) continue;
      const auto t = root_order(alg.bicharacter(u.degree, u.degree));
      if (m != 1 && !(t && m == *t))
        throw EngineFailure("minimal power " + std::to_string(m) + " for " + data->render(row->first) +
                            " is neither 1 nor the order of p(u,u)");
      SuperCombination c;
      for (const auto& [w, k] : row->second.vec) add_to(c, SuperTerm{w, {}}, k);
      AlgebraElement element = data->evaluate(c);
      thin.push_back(ThinElement{static_cast<int>(i), element});
      res.T.push_back(TGenerator{static_cast<int>(i), m, std::move(element)});
      found = m;
      break;
    }
    res.minimal_power.push_back(found);
  }
  res.pt = build_PT(std::move(data), thin);
  return res;
}

Membership membership(const AlgebraElement& a, const ExtractionResult& res) {
  Membership out{true, res.pt->decompose(a), std::nullopt};
  for (auto it = out.certificate.rbegin(); it != out.certificate.rend(); ++it)
    for (int l : it->first.word.letters)
      if (!res.pt->letters()[static_cast<std::size_t>(l)].is_thin()) {
        out.member = false;
        out.offending = l;
        return out;
      }
  return out;
}

CoidealReport coideal_report(const CoidealBasis& basis, const ExtractionResult& res) {
  const PTData& pt = *res.pt;
  const std::size_t n = basis.system().algebra().rank();
  std::vector<int> t_letters;
  std::vector<DegreeVector> degrees;
  std::vector<HeightBound> heights;
  for (std::size_t i = 0; i < pt.letters().size(); ++i)
    if (pt.letters()[i].is_thin()) {
      t_letters.push_back(static_cast<int>(i));
      degrees.push_back(pt.letters()[i].degree);
      heights.push_back(pt.letters()[i].height.exponent_bound());
    }

  CoidealReport report;
  for (const DegreeVector& gamma : constitutions_up_to(n, basis.system().bound())) {
    const auto seqs = monotonous_words(degrees, heights, gamma);
    Echelon<Word, HallLess> table;
    for (const ExponentSequence& seq : seqs) {
      SuperWord w{gamma, {}};
      for (auto [i, e] : seq) w.letters.insert(w.letters.end(), e, t_letters[static_cast<std::size_t>(i)]);
      const AlgebraElement v = pt.evaluate(w);
      if (!basis.contains(v)) throw EngineFailure("T-word " + pt.render(w) + " does not lie in the subalgebra");
      if (!table.insert(to_vec(v), {}))
        throw EngineFailure("T-words of constitution " + render_degree(gamma) + " are linearly dependent");
    }
    const std::size_t dim = basis.dimension(gamma);
    if (seqs.size() != dim)
      throw EngineFailure("constitution " + render_degree(gamma) + ": subalgebra dimension " + std::to_string(dim) +
                          " but " + std::to_string(seqs.size()) + " T-words");
    report.dimensions.push_back(DimensionRow{gamma, dim, seqs.size()});
  }
  return report;
}

}  // namespace skewpbw
