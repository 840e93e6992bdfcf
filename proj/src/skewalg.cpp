#include "skewpbw/skewalg.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "skewpbw/errors.hpp"

namespace skewpbw {

// ---------------------------------------------------------------- groups

GroupElement::GroupElement(std::vector<int> exponents) : e_(std::move(exponents)) { trim(); }

GroupElement GroupElement::generator(std::size_t j, int e) {
  std::vector<int> v(j + 1, 0);
  v[j] = e;
  return GroupElement(std::move(v));
}

void GroupElement::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  std::vector<int> v(std::max(e_.size(), o.e_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = exponent(i) + o.exponent(i);
  return GroupElement(std::move(v));
}

GroupElement GroupElement::inverse() const { return pow(-1); }

GroupElement GroupElement::pow(int k) const {
  std::vector<int> v = e_;
  for (auto& x : v) x *= k;
  return GroupElement(std::move(v));
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

AlgebraElement AlgebraElement::term(const Scalar& c, GroupElement g, Word w) {
  AlgebraElement a;
  a.add_term(Monomial{std::move(g), std::move(w)}, c);
  return a;
}

Scalar AlgebraElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

const AlgebraElement::Terms::value_type& AlgebraElement::leading() const {
  if (terms_.empty()) throw ContractViolation("leading term of zero");
  return *terms_.rbegin();
}

void AlgebraElement::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool AlgebraElement::is_group_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.group.is_identity(); });
}

std::optional<Scalar> AlgebraElement::as_scalar() const {
  if (terms_.empty()) return Scalar(0);
  if (terms_.size() == 1 && terms_.begin()->first == Monomial{}) return terms_.begin()->second;
  return std::nullopt;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

AlgebraElement strip_group(const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& [m, c] : a.terms())
    if (m.group.is_identity()) r.add_term(m, c);
  return r;
}

bool MonomialTupleLess::operator()(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), MonomialLess{});
}

TensorElement TensorElement::tensor(const AlgebraElement& a, const AlgebraElement& b) {
  TensorElement t(2);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) t.add_term({ma, mb}, ca * cb);
  return t;
}

Scalar TensorElement::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void TensorElement::add_term(const Key& k, const Scalar& c) {
  if (k.size() != arity_) throw ContractViolation("TensorElement: key arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorElement TensorElement::operator-() const {
  TensorElement r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  if (o.arity_ != arity_) throw ContractViolation("TensorElement: arity mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  if (o.arity_ != arity_) throw ContractViolation("TensorElement: arity mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x *= c;
  return *this;
}

// ---------------------------------------------------------------- algebra

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Algebra::Algebra(Alphabet letters, std::vector<std::string> group_names, std::vector<GroupElement> degrees,
                 std::vector<std::vector<Scalar>> chi, CoeffMode mode)
    : letters_(std::move(letters)),
      group_names_(std::move(group_names)),
      degrees_(std::move(degrees)),
      chi_(std::move(chi)),
      mode_(mode) {
  std::set<std::string> names;
  for (const auto& n : letters_.names())
    if (!valid_identifier(n) || n == "q" || !names.insert(n).second)
      throw ContractViolation("Algebra: bad or duplicate generator name '" + n + "'");
  for (const auto& n : group_names_)
    if (!valid_identifier(n) || n == "q" || !names.insert(n).second)
      throw ContractViolation("Algebra: bad or duplicate group name '" + n + "'");
  if (degrees_.size() != letters_.size()) throw ContractViolation("Algebra: one degree per generator required");
  for (const auto& g : degrees_)
    if (g.exponents().size() > group_names_.size())
      throw ContractViolation("Algebra: degree uses an undeclared group generator");
  if (chi_.size() != letters_.size()) throw ContractViolation("Algebra: character table needs one row per generator");
  for (auto& row : chi_) {
    if (row.size() != group_names_.size())
      throw ContractViolation("Algebra: character table needs one column per group generator");
    for (auto& e : row) {
      if (e.is_zero()) throw ContractViolation("Algebra: character values must be nonzero");
      if (!mode_.is_generic()) e = specialize(e, mode_.order);
      else if (!e.mode().is_generic() && !e.is_constant())
        throw ContractViolation("Algebra: root-of-unity character value in a generic algebra");
    }
  }
}

Algebra::Algebra(const Algebra& o)
    : letters_(o.letters_), group_names_(o.group_names_), degrees_(o.degrees_), chi_(o.chi_), mode_(o.mode_) {}

GroupElement Algebra::group_of(const DegreeVector& d) const {
  GroupElement g;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) g = g * degrees_.at(i).pow(d[i]);
  return g;
}

Scalar Algebra::chi(const DegreeVector& d, const GroupElement& g) const {
  if (g.is_identity()) return Scalar(1);
  auto key = std::make_pair(d, g);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = chi_cache_.find(key); it != chi_cache_.end()) return it->second;
  }
  Scalar r(1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i]) continue;
    for (std::size_t j = 0; j < g.exponents().size(); ++j) {
      const long e = static_cast<long>(d[i]) * g.exponent(j);
      if (e) r *= chi_.at(i).at(j).pow(e);
    }
  }
  std::lock_guard lock(cache_mutex_);
  chi_cache_.emplace(std::move(key), r);
  return r;
}

Scalar Algebra::bicharacter(const DegreeVector& u, const DegreeVector& v) const { return chi(u, group_of(v)); }

std::optional<DegreeVector> Algebra::homogeneous_degree(const AlgebraElement& a) const {
  std::optional<DegreeVector> d;
  for (const auto& [m, c] : a.terms()) {
    auto e = degree_of(m.word);
    if (!d) d = e;
    else if (*d != e) return std::nullopt;
  }
  return d;
}

namespace {

// (g1 w1)(g2 w2) = chi^{w1}(g2) (g1 g2)(w1 w2)
Monomial mono_product(const Monomial& a, const Monomial& b) {
  Word w = a.word;
  w.insert(w.end(), b.word.begin(), b.word.end());
  return Monomial{a.group * b.group, std::move(w)};
}

}  // namespace

AlgebraElement Algebra::normal_form(const std::vector<Factor>& factors) const {
  AlgebraElement r(1);
  for (const auto& f : factors) {
    if (std::holds_alternative<Letter>(f)) {
      const Letter x = std::get<Letter>(f);
      if (x < 0 || static_cast<std::size_t>(x) >= rank()) throw ContractViolation("normal_form: letter outside alphabet");
      r = multiply(r, AlgebraElement::word({x}));
    } else {
      r = multiply(r, AlgebraElement::group(std::get<GroupElement>(f)));
    }
  }
  return r;
}

AlgebraElement Algebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r;
  for (const auto& [ma, ca] : a.terms()) {
    const DegreeVector da = degree_of(ma.word);
    for (const auto& [mb, cb] : b.terms()) r.add_term(mono_product(ma, mb), ca * cb * chi(da, mb.group));
  }
  return r;
}

AlgebraElement Algebra::power(const AlgebraElement& a, unsigned n) const {
  AlgebraElement r(1);
  for (unsigned i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

AlgebraElement Algebra::skew_bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  if (!a.is_group_free() || !b.is_group_free())
    throw ContractViolation("skew_bracket: operands must be free of group elements");
  for (const AlgebraElement* e : {&a, &b}) {
    if (!homogeneous_degree(*e)) {
      std::set<DegreeVector> ds;
      for (const auto& [m, c] : e->terms()) ds.insert(degree_of(m.word));
      std::string msg = "skew_bracket: inhomogeneous operand " + render(*e) + " with constitutions";
      for (const auto& d : ds) msg += " " + render_degree(d);
      throw ContractViolation(msg);
    }
  }
  const Scalar p = bicharacter(*homogeneous_degree(a), *homogeneous_degree(b));
  return multiply(a, b) - multiply(b, a) * p;
}

SuperLetter Algebra::eval_superletter(const BracketingTree& t) const {
  if (t.is_leaf()) {
    if (t.word.size() != 1) throw ContractViolation("eval_superletter: leaf must be a single letter");
    return SuperLetter{t.word, t, AlgebraElement::word(t.word)};
  }
  AlgebraElement v = skew_bracket(eval_superletter(*t.left).value, eval_superletter(*t.right).value);
  if (v.is_zero() || v.leading().first != Monomial{{}, t.word} || !v.leading().second.is_one())
    throw EngineFailure("eval_superletter: leading word of [" + letters_.render(t.word) +
                        "] is not the word itself with coefficient 1");
  return SuperLetter{t.word, t, std::move(v)};
}

TensorElement Algebra::coproduct(const AlgebraElement& a) const {
  TensorElement out(2);
  const std::size_t k = rank();
  for (const auto& [m, c] : a.terms()) {
    const Word& w = m.word;
    const std::size_t n = w.size();
    if (n >= 31) throw OutOfBound("coproduct: word too long");
    // counts[a*k + b]: pairs i < j with letter a at i on the left and letter b
    // at j on the right; the coefficient is the product of p(a, b) over them.
    std::vector<int> counts(k * k);
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
      std::fill(counts.begin(), counts.end(), 0);
      std::vector<int> left_seen(k, 0);
      Word left, right;
      GroupElement lg = m.group;
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = static_cast<std::size_t>(w[i]);
        if (mask >> i & 1) {
          right.push_back(w[i]);
          lg = lg * degrees_[x];
          for (std::size_t y = 0; y < k; ++y) counts[y * k + x] += left_seen[y];
        } else {
          left.push_back(w[i]);
          ++left_seen[x];
        }
      }
      Scalar coef = c;
      for (std::size_t x = 0; x < k; ++x) {
        DegreeVector col(k);
        bool any = false;
        for (std::size_t y = 0; y < k; ++y) any |= (col[y] = counts[y * k + x]) != 0;
        if (any) coef *= chi(col, degrees_[x]);
      }
      out.add_term({Monomial{std::move(lg), std::move(left)}, Monomial{m.group, std::move(right)}}, coef);
    }
  }
  return out;
}

TensorElement Algebra::coproduct_at(const TensorElement& t, std::size_t slot) const {
  if (slot >= t.arity()) throw ContractViolation("coproduct_at: slot out of range");
  TensorElement out(t.arity() + 1);
  for (const auto& [key, c] : t.terms()) {
    TensorElement d = coproduct(AlgebraElement::term(c, key[slot].group, key[slot].word));
    for (const auto& [dk, dc] : d.terms()) {
      TensorElement::Key nk;
      nk.reserve(out.arity());
      nk.insert(nk.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(slot));
      nk.push_back(dk[0]);
      nk.push_back(dk[1]);
      nk.insert(nk.end(), key.begin() + static_cast<std::ptrdiff_t>(slot) + 1, key.end());
      out.add_term(nk, dc);
    }
  }
  return out;
}

TensorElement Algebra::multiply(const TensorElement& a, const TensorElement& b) const {
  if (a.arity() != b.arity()) throw ContractViolation("tensor multiply: arity mismatch");
  TensorElement out(a.arity());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      TensorElement::Key k(a.arity());
      Scalar c = ca * cb;
      for (std::size_t i = 0; i < k.size(); ++i) {
        c *= chi(degree_of(ka[i].word), kb[i].group);
        k[i] = mono_product(ka[i], kb[i]);
      }
      out.add_term(k, c);
    }
  return out;
}

// ---------------------------------------------------------------- rendering

std::string Algebra::render(const GroupElement& g) const {
  if (g.is_identity()) return "1";
  std::string s;
  for (std::size_t j = 0; j < g.exponents().size(); ++j) {
    const int e = g.exponent(j);
    if (!e) continue;
    if (!s.empty()) s += '.';
    s += group_names_.at(j);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string Algebra::render(const Monomial& m) const {
  if (m.group.is_identity()) return letters_.render(m.word);
  if (m.word.empty()) return render(m.group);
  return render(m.group) + " * " + letters_.render(m.word);
}

namespace {

std::string with_coefficient(const Scalar& c, const std::string& body, bool body_is_one) {
  if (body_is_one) return c.to_string();
  if (c.is_one()) return body;
  if (c == Scalar(-1)) return "-" + body;
  return c.to_term_string() + " * " + body;
}

}  // namespace

std::string Algebra::render(const AlgebraElement& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += with_coefficient(it->second, render(it->first), it->first == Monomial{});
  }
  return s;
}

std::string Algebra::render(const TensorElement& t) const {
  if (t.is_zero()) return "0";
  std::string s;
  for (auto it = t.terms().rbegin(); it != t.terms().rend(); ++it) {
    std::string body;
    for (std::size_t i = 0; i < it->first.size(); ++i) body += (i ? " (x) " : "") + render(it->first[i]);
    if (!s.empty()) s += " + ";
    s += with_coefficient(it->second, body, false);
  }
  return s;
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
 public:
  ExprParser(const Algebra& alg, std::string_view text) : alg_(alg), s_(text) {}

  AlgebraElement parse() {
    AlgebraElement e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  static bool starts_atom(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '[';
  }

  AlgebraElement expr() {
    AlgebraElement r = term();
    for (;;) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else return r;
    }
  }

  // A term may carry its own sign, so rendered sums like `a + -b` parse.
  AlgebraElement term() {
    if (accept('-')) return -term();
    if (accept('+')) return term();
    AlgebraElement r = power();
    for (;;) {
      char c = peek();
      if (c == '*' || c == '.') {
        ++pos_;
        r = alg_.multiply(r, power());
      } else if (c == '/') {
        ++pos_;
        auto d = power().as_scalar();
        if (!d) fail("division by a non-scalar");
        if (d->is_zero()) fail("division by zero");
        r *= d->inverse();
      } else if (starts_atom(c)) {
        r = alg_.multiply(r, power());
      } else {
        return r;
      }
    }
  }

  AlgebraElement power() {
    AlgebraElement base = atom();
    while (accept('^')) {
      bool neg = accept('-');
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      const unsigned long n = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (n > 1000) fail("exponent too large");
      if (neg) {
        if (base.size() != 1 || !base.leading().first.word.empty())
          fail("negative power of an element that is not a scalar or group element");
        const auto& [m, c] = base.leading();
        base = AlgebraElement::term(c.inverse(), m.group.inverse(), {});
      }
      base = alg_.power(base, static_cast<unsigned>(n));
    }
    return base;
  }

  AlgebraElement atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      AlgebraElement e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      AlgebraElement a = expr();
      expect(',');
      AlgebraElement b = expr();
      expect(']');
      try {
        return alg_.skew_bracket(a, b);
      } catch (const ContractViolation& e) {
        fail(e.what());
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return AlgebraElement(Scalar::fraction(Poly(mpz_class(std::string(s_.substr(start, pos_ - start)))), Poly(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "q") return AlgebraElement(alg_.q());
      if (auto x = alg_.letters().find(name)) return AlgebraElement::word({*x});
      const auto& gn = alg_.group_names();
      if (auto it = std::find(gn.begin(), gn.end(), name); it != gn.end())
        return AlgebraElement::group(GroupElement::generator(static_cast<std::size_t>(it - gn.begin())));
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Algebra& alg_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement Algebra::parse(std::string_view text) const { return ExprParser(*this, text).parse(); }

}  // namespace skewpbw
