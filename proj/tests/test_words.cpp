#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "skewpbw/errors.hpp"
#include "skewpbw/words.hpp"

using namespace skewpbw;

namespace {

// Classical Lyndon test in index order: strictly smaller than every proper
// suffix under std::lexicographical_compare. Index order is the reverse of our
// letter order, which is why the two notions coincide.
bool lyndon_oracle(const Word& w) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end()))
      return false;
  return !w.empty();
}

std::vector<Word> all_words(int letters, int len) {
  std::vector<Word> out{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int x = 0; x < letters; ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

long mobius(long n) {
  long r = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  return n > 1 ? -r : r;
}

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long multinomial(const DegreeVector& g) {
  long r = factorial(total_degree(g));
  for (int x : g) r /= factorial(x);
  return r;
}

// Witt: standard words of constitution g.
long witt(const DegreeVector& g) {
  long d0 = 0;
  for (int x : g) d0 = std::gcd(d0, static_cast<long>(x));
  long n = total_degree(g), s = 0;
  for (long d = 1; d <= d0; ++d)
    if (d0 % d == 0) {
      DegreeVector h = g;
      for (auto& x : h) x /= static_cast<int>(d);
      s += mobius(d) * multinomial(h);
    }
  return s / n;
}

bool lex_less(const Word& a, const Word& b) { return lex_compare(a, b) < 0; }

}  // namespace

TEST_CASE("orders on small examples") {
  const Word x{0}, xx{0, 0}, xy{0, 1}, xxy{0, 0, 1};
  // lex: a proper prefix is greater, and the order is not monoidal
  CHECK(lex_compare(x, xx) > 0);
  CHECK(lex_compare(xy, xxy) < 0);
  // Hall fixes both
  CHECK(hall_compare(x, xx) < 0);
  CHECK(hall_compare(xy, xxy) < 0);
  CHECK(lex_compare(Word{0}, Word{1}) > 0);

  // the Gamma-order is not graded by total degree
  CHECK(gamma_compare({1, 0}, {0, 5}) > 0);
  CHECK(gamma_compare({1, 2}, {1, 1}) > 0);
  CHECK(gamma_compare({2, 0}, {2, 0}) == 0);
  CHECK_THROWS_AS((void)gamma_compare({1}, {1, 0}), ContractViolation);
}

TEST_CASE("standard words agree with the Lyndon oracle") {
  for (int k : {2, 3})
    for (int len = 1; len <= (k == 2 ? 10 : 6); ++len)
      for (const auto& w : all_words(k, len)) CHECK(is_standard(w) == lyndon_oracle(w));
}

TEST_CASE("standard word counts by length over two letters") {
  auto sw = standard_words(2, 8);
  std::map<std::size_t, int> by_len;
  for (const auto& w : sw) ++by_len[w.size()];
  const int expected[] = {2, 1, 2, 3, 6, 9, 18, 30};
  for (int n = 1; n <= 8; ++n) CHECK(by_len[static_cast<std::size_t>(n)] == expected[n - 1]);
  CHECK(std::is_sorted(sw.begin(), sw.end(), HallLess{}));
  for (const auto& w : sw) CHECK(lyndon_oracle(w));
}

TEST_CASE("Witt formula per constitution") {
  for (int k : {2, 3}) {
    const int bound = k == 2 ? 8 : 7;
    auto sw = standard_words(static_cast<std::size_t>(k), bound);
    std::map<DegreeVector, long> count;
    for (const auto& w : sw) ++count[constitution(w, static_cast<std::size_t>(k))];
    for (const auto& g : constitutions_up_to(static_cast<std::size_t>(k), bound)) CHECK(count[g] == witt(g));
  }
}

TEST_CASE("Hall order is a monoidal total order") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(0, 5), letter(0, 2);
  auto rw = [&](int min_len) {
    Word w(static_cast<std::size_t>(std::max(min_len, len(rng))));
    for (auto& x : w) x = letter(rng);
    return w;
  };
  int strict = 0;
  for (int i = 0; i < 20000; ++i) {
    Word u = rw(1), v = rw(1), a = rw(0), b = rw(0);
    auto c = hall_compare(u, v);
    if (c == 0) continue;
    ++strict;
    Word au = a, av = a;
    au.insert(au.end(), u.begin(), u.end());
    au.insert(au.end(), b.begin(), b.end());
    av.insert(av.end(), v.begin(), v.end());
    av.insert(av.end(), b.begin(), b.end());
    CHECK(hall_compare(au, av) == c);
    CHECK(hall_compare(v, u) == (0 <=> c));
  }
  CHECK(strict > 10000);
}

TEST_CASE("Shirshov factorization and bracketing up to length 8") {
  auto sw = standard_words(2, 8);
  auto sw3 = standard_words(3, 6);
  sw.insert(sw.end(), sw3.begin(), sw3.end());
  for (const auto& u : sw) {
    if (u.size() < 2) {
      CHECK_THROWS_AS(shirshov_factorize(u), ContractViolation);
      continue;
    }
    auto [v, w] = shirshov_factorize(u);
    Word vw = v;
    vw.insert(vw.end(), w.begin(), w.end());
    CHECK(vw == u);
    CHECK(lyndon_oracle(v));
    CHECK(lyndon_oracle(w));
    CHECK(lex_less(w, v));
    // no shorter standard split
    for (std::size_t k = 1; k < v.size(); ++k)
      CHECK_FALSE((lyndon_oracle(Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k))) &&
                   lyndon_oracle(Word(u.begin() + static_cast<std::ptrdiff_t>(k), u.end()))));
    // standard nonassociative word: [[v1][v2]][w] needs v2 <= w
    auto check_tree = [](auto&& self, const BracketingTree& t) -> void {
      if (t.is_leaf()) return;
      CHECK(lex_less(t.right->word, t.left->word));
      if (!t.left->is_leaf()) CHECK_FALSE(lex_less(t.right->word, t.left->right->word));
      self(self, *t.left);
      self(self, *t.right);
    };
    check_tree(check_tree, bracketing(u));
  }
  CHECK_THROWS_AS(shirshov_factorize(Word{1, 0}), ContractViolation);
}

TEST_CASE("rendering") {
  Alphabet a({"x1", "x2"});
  CHECK(render_tree(a, bracketing({0, 0, 1})) == "[x1,[x1,x2]]");
  CHECK(render_tree(a, bracketing({0, 1, 1})) == "[[x1,x2],x2]");
  CHECK(a.render({0, 1}) == "x1.x2");
  CHECK(a.parse("x1.x2.x2") == Word{0, 1, 1});
  CHECK(a.parse("1").empty());
  CHECK_THROWS_AS(a.parse("x1.y"), ParseError);
  CHECK_THROWS_AS(Alphabet({"x", "x"}), ContractViolation);
}

TEST_CASE("words of a constitution") {
  for (const DegreeVector& g : {DegreeVector{2, 2}, DegreeVector{1, 2, 1}, DegreeVector{3, 0, 2}}) {
    auto ws = words_of_constitution(g);
    CHECK(static_cast<long>(ws.size()) == multinomial(g));
    CHECK(std::is_sorted(ws.begin(), ws.end(), [](const Word& a, const Word& b) { return hall_compare(a, b) < 0; }));
    CHECK(std::set<Word>(ws.begin(), ws.end()).size() == ws.size());
    for (const auto& w : ws) CHECK(constitution(w, g.size()) == g);
  }
}

TEST_CASE("monotonous words in standard letters count all words") {
  for (int k : {2, 3}) {
    auto sw = standard_words(static_cast<std::size_t>(k), 6);
    std::sort(sw.begin(), sw.end(), LexLess{});
    std::vector<HeightBound> h(sw.size());
    for (const auto& g : constitutions_up_to(static_cast<std::size_t>(k), 6)) {
      auto mw = enumerate_basis_words(sw, h, g);
      CHECK(static_cast<long>(mw.size()) == multinomial(g));
      // distinct flattened words, sorted by Hall
      std::set<Word> flat;
      for (const auto& s : mw) flat.insert(flatten(sw, s));
      CHECK(flat.size() == mw.size());
    }
  }
}

TEST_CASE("heights restrict exponents") {
  // a single letter of degree (1) with height 3: only exponents 1 and 2
  std::vector<DegreeVector> d{{1}};
  CHECK(monotonous_words(d, {3u}, {2}).size() == 1);
  CHECK(monotonous_words(d, {3u}, {3}).empty());
  CHECK(monotonous_words(d, {std::nullopt}, {3}).size() == 1);
  CHECK_THROWS_AS(enumerate_basis_words({{0}, {1}}, {std::nullopt, std::nullopt}, {1, 1}), ContractViolation);
}
