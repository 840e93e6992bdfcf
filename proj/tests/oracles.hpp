#ifndef SKEWPBW_TEST_ORACLES_HPP
#define SKEWPBW_TEST_ORACLES_HPP

// Brute-force reference computations. They use the free-algebra arithmetic
// and (for closures) normal forms, but none of the engine's linear algebra.

#include <algorithm>
#include <map>
#include <vector>

#include "skewpbw/pbwengine.hpp"

namespace oracles {

using namespace skewpbw;

using Matrix = std::vector<std::vector<Scalar>>;

// Dense Gaussian elimination; returns the rank and leaves `m` in row echelon form.
inline std::size_t dense_rank(Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Scalar inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return r;
}

// Coordinates of a group-free element of constitution gamma in the basis of
// all words of that constitution.
inline std::vector<Scalar> coordinates(const AlgebraElement& a, const std::vector<Word>& basis) {
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<Scalar> row(basis.size(), Scalar(0));
  for (const auto& [m, c] : a.terms()) {
    if (!m.group.is_identity()) throw std::logic_error("coordinates: group part");
    row.at(index.at(m.word)) += c;
  }
  return row;
}

inline DegreeVector minus(DegreeVector a, const DegreeVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Rows spanning the gamma-component of the two-sided ideal generated by
// homogeneous relations: every u·r·v of constitution gamma.
inline Matrix ideal_rows(const Algebra& alg, const std::vector<AlgebraElement>& relations, const DegreeVector& gamma) {
  const auto basis = words_of_constitution(gamma);
  Matrix rows;
  for (const auto& r : relations) {
    const DegreeVector d = *alg.homogeneous_degree(r);
    const DegreeVector rest = minus(gamma, d);
    if (!std::all_of(rest.begin(), rest.end(), [](int x) { return x >= 0; })) continue;
    for (const Word& w : words_of_constitution(rest))
      for (std::size_t k = 0; k <= w.size(); ++k) {
        AlgebraElement u = AlgebraElement::word(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)));
        AlgebraElement v = AlgebraElement::word(Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end()));
        rows.push_back(coordinates(alg.multiply(alg.multiply(u, r), v), basis));
      }
  }
  return rows;
}

// dim of the gamma-component of k<X>/(relations).
inline std::size_t quotient_dimension(const Algebra& alg, const std::vector<AlgebraElement>& relations,
                                      const DegreeVector& gamma) {
  Matrix rows = ideal_rows(alg, relations, gamma);
  return words_of_constitution(gamma).size() - dense_rank(rows);
}

inline unsigned long multinomial(const DegreeVector& gamma) {
  unsigned long num = 1, n = 0;
  for (int k : gamma)
    for (int i = 1; i <= k; ++i) {
      ++n;
      num = num * n / static_cast<unsigned long>(i);
    }
  return num;
}

// Subalgebra generated by k[G] and homogeneous group-free generators: spans
// of the normal forms of every generator sequence, one matrix per
// constitution.
class ClosureOracle {
 public:
  ClosureOracle(const ReductionSystem& r, const std::vector<AlgebraElement>& gens) : r_(r) {
    const Algebra& alg = r.algebra();
    std::vector<int> degs;
    for (const auto& g : gens) degs.push_back(total_degree(*alg.homogeneous_degree(g)));
    auto walk = [&](auto&& self, const AlgebraElement& prod, int deg) -> void {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (deg + degs[j] > r.bound()) continue;
        AlgebraElement next = r.nf(alg.multiply(prod, gens[j]));
        if (!next.is_zero()) {
          const DegreeVector gamma = *alg.homogeneous_degree(next);
          rows_[gamma].push_back(coordinates(next, words_of_constitution(gamma)));
        }
        self(self, next, deg + degs[j]);
      }
    };
    walk(walk, AlgebraElement(1), 0);
    for (auto& [gamma, m] : rows_) dense_rank(m);
  }

  std::size_t dimension(const DegreeVector& gamma) const {
    if (total_degree(gamma) == 0) return 1;
    auto it = rows_.find(gamma);
    return it == rows_.end() ? 0 : it->second.size();
  }

  bool contains(const AlgebraElement& a) const {
    const AlgebraElement n = r_.nf(a);
    const std::size_t rank = r_.algebra().rank();
    std::map<std::pair<GroupElement, DegreeVector>, AlgebraElement> parts;
    for (const auto& [m, c] : n.terms())
      parts[{m.group, constitution(m.word, rank)}].add_term(Monomial{{}, m.word}, c);
    for (const auto& [key, part] : parts) {
      const DegreeVector& gamma = key.second;
      if (total_degree(gamma) == 0) continue;
      Matrix m;
      if (auto it = rows_.find(gamma); it != rows_.end()) m = it->second;
      const std::size_t before = m.size();
      m.push_back(coordinates(part, words_of_constitution(gamma)));
      if (dense_rank(m) != before) return false;
    }
    return true;
  }

 private:
  const ReductionSystem& r_;
  std::map<DegreeVector, Matrix> rows_;
};

}  // namespace oracles

#endif  // SKEWPBW_TEST_ORACLES_HPP
