#ifndef SKEWPBW_TEST_FIXTURES_HPP
#define SKEWPBW_TEST_FIXTURES_HPP

#include <random>
#include <string>

#include "skewpbw/skewalg.hpp"

namespace fixtures {

using namespace skewpbw;

// x1 > ... > xn with x_i -> g_i, p_ii = q, p_ij = q^-1 (i < j), p_ji = 1.
inline Algebra free_algebra(int n, CoeffMode mode = CoeffMode::generic()) {
  std::vector<std::string> xs, gs;
  std::vector<GroupElement> deg;
  std::vector<std::vector<Scalar>> chi(static_cast<std::size_t>(n));
  const Scalar q = Scalar::q(mode);
  for (int i = 0; i < n; ++i) {
    xs.push_back("x" + std::to_string(i + 1));
    gs.push_back("g" + std::to_string(i + 1));
    deg.push_back(GroupElement::generator(static_cast<std::size_t>(i)));
    for (int j = 0; j < n; ++j) chi[static_cast<std::size_t>(i)].push_back(i == j ? q : i < j ? q.inverse() : Scalar(1));
  }
  return Algebra(Alphabet(xs), gs, deg, chi, mode);
}

// Two letters with p11 = -1, p22 = q and p12 = p21 = 1. Here [x1,[x1,x2]]
// is skew-primitive, so it can serve as a Hopf relation.
inline Algebra coideal_pair(CoeffMode mode = CoeffMode::generic()) {
  const Scalar q = Scalar::q(mode);
  return Algebra(Alphabet({"x1", "x2"}), {"g1", "g2"}, {GroupElement::generator(0), GroupElement::generator(1)},
                 {{Scalar(-1), Scalar(1)}, {Scalar(1), q}}, mode);
}

// One letter x with p(x, x) = q.
inline Algebra one_letter(CoeffMode mode = CoeffMode::generic()) {
  return Algebra(Alphabet({"x"}), {"g"}, {GroupElement::generator(0)}, {{Scalar::q(mode)}}, mode);
}

inline Scalar random_coeff(std::mt19937& rng, const Algebra& alg) {
  const Scalar q = alg.q();
  const Scalar pool[] = {Scalar(1), Scalar(-1), Scalar(2), q, q.inverse(), Scalar(1) + q, Scalar(3) / (q + Scalar(2)),
                         q * q - Scalar(1)};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  return pool[pick(rng)];
}

inline Word random_word(std::mt19937& rng, const Algebra& alg, int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len), letter(0, static_cast<int>(alg.rank()) - 1);
  Word w(static_cast<std::size_t>(len(rng)));
  for (auto& x : w) x = letter(rng);
  return w;
}

inline AlgebraElement random_element(std::mt19937& rng, const Algebra& alg, int max_len, int terms = 3,
                                     bool with_group = true) {
  std::uniform_int_distribution<int> exp(-1, 1);
  AlgebraElement a;
  for (int i = 0; i < terms; ++i) {
    std::vector<int> g(alg.group_names().size());
    if (with_group)
      for (auto& e : g) e = exp(rng);
    a.add_term(Monomial{GroupElement(g), random_word(rng, alg, 0, max_len)}, random_coeff(rng, alg));
  }
  return a;
}

// Random homogeneous group-free element of the given constitution.
inline AlgebraElement random_homogeneous(std::mt19937& rng, const Algebra& alg, const DegreeVector& d, int terms = 3) {
  auto ws = words_of_constitution(d);
  std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
  AlgebraElement a;
  for (int i = 0; i < terms; ++i) a.add_term(Monomial{{}, ws[pick(rng)]}, random_coeff(rng, alg));
  return a;
}

}  // namespace fixtures

#endif  // SKEWPBW_TEST_FIXTURES_HPP
