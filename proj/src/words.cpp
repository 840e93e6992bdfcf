#include "skewpbw/words.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "skewpbw/errors.hpp"

namespace skewpbw {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ContractViolation("Alphabet: empty generator name");
    if (!seen.insert(n).second) throw ContractViolation("Alphabet: duplicate generator name '" + n + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Letter>(i);
  return std::nullopt;
}

std::string Alphabet::render(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (text == "1") return w;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    auto tok = text.substr(start, dot - start);
    auto x = find(tok);
    if (!x) throw ParseError("unknown generator '" + std::string(tok) + "'");
    w.push_back(*x);
    start = dot + 1;
  }
  return w;
}

DegreeVector constitution(const Word& w, std::size_t alphabet_size) {
  DegreeVector d(alphabet_size, 0);
  for (Letter x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= alphabet_size)
      throw ContractViolation("constitution: letter outside the alphabet");
    ++d[static_cast<std::size_t>(x)];
  }
  return d;
}

int total_degree(const DegreeVector& d) {
  int s = 0;
  for (int x : d) s += x;
  return s;
}

std::string render_degree(const DegreeVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

DegreeVector operator+(DegreeVector a, const DegreeVector& b) {
  if (a.size() != b.size()) throw ContractViolation("degree vectors over different alphabets");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

DegreeVector operator*(int k, DegreeVector a) {
  for (auto& x : a) x *= k;
  return a;
}

bool divides(const DegreeVector& a, const DegreeVector& b) {
  if (a.size() != b.size()) throw ContractViolation("degree vectors over different alphabets");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::strong_ordering gamma_compare(const DegreeVector& a, const DegreeVector& b) {
  if (a.size() != b.size()) throw ContractViolation("gamma_compare: mismatched alphabets");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i)
    if (u[i] != v[i]) return v[i] <=> u[i];  // smaller index = greater letter
  // proper prefix is greater
  return v.size() <=> u.size();
}

std::strong_ordering hall_compare(const Word& u, const Word& v) {
  Letter top = 0;
  for (Letter x : u) top = std::max(top, x);
  for (Letter x : v) top = std::max(top, x);
  const auto n = static_cast<std::size_t>(top) + 1;
  if (n <= 32) {
    // hot path: difference of constitutions on the stack
    std::array<int, 32> diff{};
    for (Letter x : u) ++diff[static_cast<std::size_t>(x)];
    for (Letter x : v) --diff[static_cast<std::size_t>(x)];
    for (std::size_t i = 0; i < n; ++i)
      if (diff[i] != 0) return diff[i] <=> 0;
  } else if (auto c = gamma_compare(constitution(u, n), constitution(v, n)); c != 0) {
    return c;
  }
  return lex_compare(u, v);
}

bool is_standard(const Word& u) {
  if (u.empty()) throw ContractViolation("is_standard: empty word");
  for (std::size_t k = 1; k < u.size(); ++k) {
    Word vw = u;
    Word wv(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
    wv.insert(wv.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
    if (lex_compare(vw, wv) <= 0) return false;
  }
  return true;
}

std::pair<Word, Word> shirshov_factorize(const Word& u) {
  if (u.size() < 2) throw ContractViolation("shirshov_factorize: word of length < 2");
  if (!is_standard(u)) throw ContractViolation("shirshov_factorize: word is not standard");
  for (std::size_t k = 1; k < u.size(); ++k) {
    Word v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
    Word w(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
    if (is_standard(v) && is_standard(w)) return {std::move(v), std::move(w)};
  }
  throw EngineFailure("shirshov_factorize: standard word without a standard split");
}

BracketingTree bracketing(const Word& u) {
  if (u.size() == 1) return BracketingTree{u, nullptr, nullptr};
  auto [v, w] = shirshov_factorize(u);
  return BracketingTree{u, std::make_shared<const BracketingTree>(bracketing(v)),
                        std::make_shared<const BracketingTree>(bracketing(w))};
}

std::string render_tree(const Alphabet& a, const BracketingTree& t) {
  if (t.is_leaf()) return a.name(t.word.front());
  return "[" + render_tree(a, *t.left) + "," + render_tree(a, *t.right) + "]";
}

std::vector<Word> standard_words(std::size_t alphabet_size, int bound) {
  std::vector<Word> out;
  if (alphabet_size == 0 || bound < 1) return out;
  // Duval's generation of Lyndon words. With index 0 the greatest letter and
  // equal-length comparisons, "greater than every rotation" in our order is
  // "smaller than every rotation" in index order.
  const int k = static_cast<int>(alphabet_size);
  Word w{-1};
  while (!w.empty()) {
    ++w.back();
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(bound)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  std::sort(out.begin(), out.end(), HallLess{});
  return out;
}

std::vector<Word> words_of_constitution(const DegreeVector& gamma) {
  // Ascending Hall order within one constitution is ascending lex, i.e.
  // descending index order; std::prev_permutation walks exactly that.
  Word w;
  for (std::size_t i = gamma.size(); i-- > 0;)
    for (int c = 0; c < gamma[i]; ++c) w.push_back(static_cast<Letter>(i));
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (std::prev_permutation(w.begin(), w.end()));
  return out;
}

std::vector<DegreeVector> constitutions_up_to(std::size_t alphabet_size, int bound) {
  std::vector<DegreeVector> out;
  DegreeVector d(alphabet_size, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == alphabet_size) {
      if (total_degree(d) > 0) out.push_back(d);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      d[i] = c;
      self(self, i + 1, left - c);
    }
    d[i] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(),
            [](const DegreeVector& a, const DegreeVector& b) { return gamma_compare(a, b) < 0; });
  return out;
}

std::vector<ExponentSequence> monotonous_words(const std::vector<DegreeVector>& degrees,
                                               const std::vector<HeightBound>& heights,
                                               const DegreeVector& gamma) {
  if (degrees.size() != heights.size()) throw ContractViolation("monotonous_words: size mismatch");
  std::vector<ExponentSequence> out;
  ExponentSequence cur;
  DegreeVector left = gamma;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) {
      out.push_back(cur);
      return;
    }
    if (i == degrees.size()) return;
    self(self, i + 1);
    const DegreeVector& d = degrees[i];
    if (total_degree(d) == 0) throw ContractViolation("monotonous_words: letter of degree zero");
    unsigned applied = 0;
    for (unsigned n = 1; divides(d, left); ++n) {
      if (heights[i] && n >= *heights[i]) break;
      for (std::size_t j = 0; j < left.size(); ++j) left[j] -= d[j];
      applied = n;
      cur.emplace_back(static_cast<int>(i), n);
      self(self, i + 1);
      cur.pop_back();
    }
    for (std::size_t j = 0; j < left.size(); ++j) left[j] += static_cast<int>(applied) * d[j];
  };
  rec(rec, 0);
  return out;
}

Word flatten(const std::vector<Word>& letters, const ExponentSequence& seq) {
  Word w;
  for (auto [i, n] : seq)
    for (unsigned k = 0; k < n; ++k) {
      const Word& l = letters.at(static_cast<std::size_t>(i));
      w.insert(w.end(), l.begin(), l.end());
    }
  return w;
}

std::vector<ExponentSequence> enumerate_basis_words(const std::vector<Word>& letters,
                                                    const std::vector<HeightBound>& heights,
                                                    const DegreeVector& gamma) {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (lex_compare(letters[i - 1], letters[i]) >= 0)
      throw ContractViolation("enumerate_basis_words: letters must be strictly increasing");
  std::vector<DegreeVector> degrees;
  degrees.reserve(letters.size());
  for (const auto& l : letters) degrees.push_back(constitution(l, gamma.size()));
  auto out = monotonous_words(degrees, heights, gamma);
  std::sort(out.begin(), out.end(), [&](const ExponentSequence& a, const ExponentSequence& b) {
    return hall_compare(flatten(letters, a), flatten(letters, b)) < 0;
  });
  return out;
}

}  // namespace skewpbw
