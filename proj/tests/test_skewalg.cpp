#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "skewpbw/errors.hpp"

using namespace skewpbw;
using fixtures::free_algebra;

namespace {

const Scalar q = Scalar::q();

AlgebraElement w(const Algebra& alg, const char* s) { return AlgebraElement::word(alg.letters().parse(s)); }

Monomial mono(const Algebra& alg, std::vector<int> g, const char* word) {
  return Monomial{GroupElement(std::move(g)), alg.letters().parse(word)};
}

}  // namespace

TEST_CASE("group elements") {
  GroupElement a({1, 0, 0}), b({0, -1});
  CHECK(a == GroupElement::generator(0));
  CHECK((a * b).exponents() == std::vector<int>{1, -1});
  CHECK((b * b.inverse()).is_identity());
  CHECK(GroupElement({0, 0}).is_identity());
}

TEST_CASE("bicharacter") {
  Algebra alg = free_algebra(2);
  auto d = [&](const char* s) { return alg.degree_of(alg.letters().parse(s)); };
  CHECK(alg.bicharacter(d("x1"), d("x2")) == q.inverse());
  CHECK(alg.bicharacter(d("x2"), d("x1")) == Scalar(1));
  CHECK(alg.bicharacter(d("x1.x2"), d("x1")) == q);
  CHECK(alg.bicharacter({0, 0}, d("x2")) == Scalar(1));

  std::mt19937 rng(5);
  Algebra alg3 = free_algebra(3);
  for (int i = 0; i < 300; ++i) {
    Word u = fixtures::random_word(rng, alg3, 0, 4), v = fixtures::random_word(rng, alg3, 0, 4),
         x = fixtures::random_word(rng, alg3, 0, 4);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto D = [&](const Word& y) { return alg3.degree_of(y); };
    CHECK(alg3.bicharacter(D(uv), D(x)) == alg3.bicharacter(D(u), D(x)) * alg3.bicharacter(D(v), D(x)));
    CHECK(alg3.bicharacter(D(x), D(uv)) == alg3.bicharacter(D(x), D(u)) * alg3.bicharacter(D(x), D(v)));
  }
}

TEST_CASE("normal form moves group elements left") {
  Algebra alg = free_algebra(2);
  const GroupElement g1 = GroupElement::generator(0), g2 = GroupElement::generator(1);
  CHECK(alg.normal_form({Letter{0}, g1}) == AlgebraElement::term(q, g1, {0}));
  CHECK(alg.normal_form({g1, Letter{0}}) == AlgebraElement::term(Scalar(1), g1, {0}));
  CHECK(alg.normal_form({Letter{0}, g2}) == AlgebraElement::term(q.inverse(), g2, {0}));

  AlgebraElement a = AlgebraElement::term(1, g1, {0}), b = AlgebraElement::term(1, g2, {1});
  CHECK(alg.multiply(a, b) == AlgebraElement::term(q.inverse(), g1 * g2, {0, 1}));
  CHECK(alg.multiply(a, AlgebraElement(1)) == a);
  CHECK(alg.multiply(w(alg, "x1"), w(alg, "x2")) == w(alg, "x1.x2"));
}

TEST_CASE("multiplication is associative") {
  std::mt19937 rng(9);
  Algebra alg = free_algebra(2);
  for (int i = 0; i < 100; ++i) {
    auto a = fixtures::random_element(rng, alg, 2), b = fixtures::random_element(rng, alg, 2),
         c = fixtures::random_element(rng, alg, 2);
    CHECK(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)));
  }
}

TEST_CASE("skew brackets and super-letters") {
  Algebra alg = free_algebra(2);
  const AlgebraElement x1 = w(alg, "x1"), x2 = w(alg, "x2");
  CHECK(alg.skew_bracket(x1, x2) == w(alg, "x1.x2") - w(alg, "x2.x1") * q.inverse());
  CHECK(alg.skew_bracket(x1, x1) == w(alg, "x1.x1") * (Scalar(1) - q));

  const AlgebraElement expected =
      w(alg, "x1.x1.x2") - w(alg, "x1.x2.x1") * (q.inverse() * (Scalar(1) + q)) + w(alg, "x2.x1.x1") * q.inverse();
  CHECK(alg.skew_bracket(x1, alg.skew_bracket(x1, x2)) == expected);
  CHECK(alg.superletter({0, 0, 1}).value == expected);
  CHECK(alg.superletter({0}).value == x1);
  CHECK(alg.superletter({0, 1}).value == alg.skew_bracket(x1, x2));

  CHECK_THROWS_AS(alg.skew_bracket(x1 + w(alg, "x1.x2"), x2), ContractViolation);
  CHECK_THROWS_AS(alg.skew_bracket(AlgebraElement::term(1, GroupElement::generator(0), {0}), x2), ContractViolation);

  // every super-letter up to length 6 keeps its word as leading term
  for (int n : {2, 3})
    for (CoeffMode mode : {CoeffMode::generic(), CoeffMode::root_of_unity(3)}) {
      Algebra a = free_algebra(n, mode);
      for (const auto& u : standard_words(static_cast<std::size_t>(n), n == 2 ? 6 : 5)) {
        SuperLetter s = a.superletter(u);
        CHECK(s.value.leading().first == Monomial{{}, u});
        CHECK(s.value.leading().second.is_one());
        CHECK(a.homogeneous_degree(s.value) == a.degree_of(u));
      }
    }
}

TEST_CASE("coproduct examples") {
  Algebra alg = free_algebra(2);
  const GroupElement g1 = GroupElement::generator(0), g2 = GroupElement::generator(1);
  TensorElement d1 = alg.coproduct(w(alg, "x1"));
  TensorElement e1(2);
  e1.add_term({mono(alg, {}, "x1"), mono(alg, {}, "1")}, 1);
  e1.add_term({mono(alg, {1}, "1"), mono(alg, {}, "x1")}, 1);
  CHECK(d1 == e1);

  CHECK(alg.coproduct(AlgebraElement::group(g1 * g2)) ==
        TensorElement::tensor(AlgebraElement::group(g1 * g2), AlgebraElement::group(g1 * g2)));

  TensorElement e(2);
  e.add_term({mono(alg, {}, "x1.x2"), mono(alg, {}, "1")}, 1);
  e.add_term({mono(alg, {0, 1}, "x1"), mono(alg, {}, "x2")}, q.inverse());
  e.add_term({mono(alg, {1}, "x2"), mono(alg, {}, "x1")}, 1);
  e.add_term({mono(alg, {1, 1}, "1"), mono(alg, {}, "x1.x2")}, 1);
  CHECK(alg.coproduct(w(alg, "x1.x2")) == e);

  // group part of the input translates both sides
  const AlgebraElement gx = AlgebraElement::term(1, g2, {0});
  CHECK(alg.coproduct(gx) == alg.multiply(alg.coproduct(AlgebraElement::group(g2)), alg.coproduct(w(alg, "x1"))));
}

TEST_CASE("coproduct is coassociative and multiplicative") {
  std::mt19937 rng(21);
  for (CoeffMode mode : {CoeffMode::generic(), CoeffMode::root_of_unity(3)}) {
    Algebra alg = free_algebra(3, mode);
    for (int i = 0; i < 40; ++i) {
      auto a = fixtures::random_element(rng, alg, 4);
      TensorElement d = alg.coproduct(a);
      CHECK(alg.coproduct_at(d, 0) == alg.coproduct_at(d, 1));
    }
    for (int i = 0; i < 40; ++i) {
      auto a = fixtures::random_element(rng, alg, 3), b = fixtures::random_element(rng, alg, 3);
      CHECK(alg.coproduct(alg.multiply(a, b)) == alg.multiply(alg.coproduct(a), alg.coproduct(b)));
    }
  }
}

TEST_CASE("coproduct of powers of one letter") {
  for (CoeffMode mode : {CoeffMode::generic(), CoeffMode::root_of_unity(3)}) {
    Algebra alg = fixtures::one_letter(mode);
    const Scalar qq = alg.q();
    for (unsigned m = 1; m <= 5; ++m) {
      TensorElement expected(2);
      for (unsigned j = 0; j <= m; ++j)
        expected.add_term({Monomial{GroupElement::generator(0, static_cast<int>(m - j)), Word(j, 0)},
                           Monomial{{}, Word(m - j, 0)}},
                          q_binomial(m, j, qq));
      CHECK(alg.coproduct(AlgebraElement::word(Word(m, 0))) == expected);
    }
    if (!mode.is_generic()) {
      // x^3 is skew-primitive at a primitive cube root
      CHECK(alg.coproduct(AlgebraElement::word({0, 0, 0})).size() == 2);
    }
  }
}

TEST_CASE("strip_group") {
  Algebra alg = free_algebra(2);
  const GroupElement g1 = GroupElement::generator(0), g2 = GroupElement::generator(1);
  CHECK(strip_group(AlgebraElement::term(1, g1, {0}) + w(alg, "x2")) == w(alg, "x2"));
  CHECK(strip_group(w(alg, "x1.x2")) == w(alg, "x1.x2"));
  AlgebraElement a = w(alg, "x1.x2") + AlgebraElement::term(3, g1 * g2, {0, 1});
  CHECK(strip_group(a) == w(alg, "x1.x2"));

  // (id ⊗ counit) read off the right factor 1 of the coproduct, restricted to
  // identity group parts on the left
  std::mt19937 rng(2);
  for (int i = 0; i < 30; ++i) {
    auto b = fixtures::random_element(rng, alg, 3);
    AlgebraElement via_delta;
    const TensorElement d = alg.coproduct(b);
    for (const auto& [k, c] : d.terms())
      if (k[1].word.empty() && k[1].group == k[0].group) via_delta.add_term(k[0], c);
    CHECK(strip_group(via_delta) == strip_group(b));
  }
}

TEST_CASE("rendering and parsing") {
  Algebra alg = free_algebra(2);
  const GroupElement g1 = GroupElement::generator(0), g2 = GroupElement::generator(1);
  CHECK(alg.render(AlgebraElement::term(q, g1 * g1 * g2, {0, 1})) == "q * g1^2.g2 * x1.x2");
  CHECK(alg.render(AlgebraElement()) == "0");
  CHECK(alg.render(AlgebraElement(1)) == "1");
  CHECK(alg.render(w(alg, "x2") - w(alg, "x1")) == "-x1 + x2");
  CHECK(alg.render(alg.coproduct(w(alg, "x1"))) == "x1 (x) 1 + g1 (x) x1");

  CHECK(alg.parse("[x1, [x1, x2]]") == alg.superletter({0, 0, 1}).value);
  CHECK(alg.parse("x1^3") == w(alg, "x1.x1.x1"));
  CHECK(alg.parse("2 x1 x2 - q^-1*x2.x1") == w(alg, "x1.x2") * Scalar(2) - w(alg, "x2.x1") * q.inverse());
  CHECK(alg.parse("g1^-1 * g1") == AlgebraElement(1));
  CHECK(alg.parse("(x1 + x2)^2") == alg.multiply(alg.parse("x1+x2"), alg.parse("x1+x2")));
  CHECK(alg.parse("x1 * g2") == AlgebraElement::term(q.inverse(), g2, {0}));
  CHECK(alg.parse("x1/(1+q)") == w(alg, "x1") * (Scalar(1) + q).inverse());
  CHECK_THROWS_AS(alg.parse("x3"), ParseError);
  CHECK_THROWS_AS(alg.parse("x1 +"), ParseError);
  CHECK_THROWS_AS(alg.parse("[x1 + x1.x2, x2]"), ParseError);
  CHECK_THROWS_AS(alg.parse("x1/x2"), ParseError);
  CHECK_THROWS_AS(alg.parse("x1^-1"), ParseError);

  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto a = fixtures::random_element(rng, alg, 3, 4);
    CHECK(alg.parse(alg.render(a)) == a);
  }
}

TEST_CASE("algebra construction is validated") {
  CHECK_THROWS_AS(Algebra(Alphabet({"x"}), {"x"}, {GroupElement()}, {{Scalar(1)}}), ContractViolation);
  CHECK_THROWS_AS(Algebra(Alphabet({"q"}), {"g"}, {GroupElement()}, {{Scalar(1)}}), ContractViolation);
  CHECK_THROWS_AS(Algebra(Alphabet({"x"}), {"g"}, {GroupElement()}, {{Scalar(0)}}), ContractViolation);
  CHECK_THROWS_AS(Algebra(Alphabet({"x"}), {"g"}, {GroupElement::generator(1)}, {{Scalar(1)}}), ContractViolation);
}
