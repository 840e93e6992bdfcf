#include "skewpbw/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace skewpbw {

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long c) {
  if (c != 0) c_.emplace_back(c);
}

Poly::Poly(mpz_class c) {
  if (c != 0) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(mpz_class c, int degree) {
  if (degree < 0) throw ContractViolation("Poly::monomial: negative degree");
  Poly p;
  if (c == 0) return p;
  p.c_.assign(static_cast<std::size_t>(degree) + 1, mpz_class(0));
  p.c_.back() = std::move(c);
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool Poly::is_monomial() const { return !is_zero() && term_count() == 1; }

int Poly::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

std::size_t Poly::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(c_.begin(), c_.end(), [](const mpz_class& x) { return x != 0; }));
}

mpz_class Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(k)];
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return *this;
  mpz_class g = content();
  if (lead() < 0) g = -g;
  return divexact(g);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const mpz_class& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r;
  if (k > 0) {
    r.c_.assign(static_cast<std::size_t>(k), mpz_class(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  if (low_degree() < -k) throw EngineFailure("Poly::shifted: division by q^k is not exact");
  r.c_.assign(c_.begin() + (-k), c_.end());
  return r;
}

Poly Poly::divexact(const mpz_class& c) const {
  Poly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ContractViolation("Poly::divexact: division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw EngineFailure("Poly::divexact: inexact division");
  Poly r = a;
  std::vector<mpz_class> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, mpz_class(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    if (!mpz_divisible_p(r.lead().get_mpz_t(), b.lead().get_mpz_t()))
      throw EngineFailure("Poly::divexact: inexact division");
    mpz_class c = r.lead() / b.lead();
    r -= (b * c).shifted(shift);
    quot[static_cast<std::size_t>(shift)] = c;
  }
  if (!r.is_zero()) throw EngineFailure("Poly::divexact: inexact division");
  return Poly(std::move(quot));
}

Poly Poly::mod_monic(const Poly& m) const {
  if (m.is_zero() || m.lead() != 1) throw ContractViolation("Poly::mod_monic: modulus must be monic");
  Poly r = *this;
  while (!r.is_zero() && r.degree() >= m.degree()) {
    const int shift = r.degree() - m.degree();
    mpz_class c = r.lead();
    r -= (m * c).shifted(shift);
  }
  return r;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpz_class& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? '-' : '+';
    }
    first = false;
    mpz_class a = abs(c);
    if (k == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str() + "*";
    out += 'q';
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

Poly pseudo_remainder(Poly a, const Poly& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const int shift = a.degree() - b.degree();
    mpz_class la = a.lead();
    a *= b.lead();
    a -= (b * la).shifted(shift);
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? Poly{} : b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  mpz_class c;
  mpz_class ca = a.content(), cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  const int k = std::min(a.low_degree(), b.low_degree());
  Poly x = a.primitive_part().shifted(-a.low_degree());
  Poly y = b.primitive_part().shifted(-b.low_degree());
  if (x.is_constant() || y.is_constant()) return Poly::monomial(c, k);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? Poly{} : r.primitive_part();
  }
  return (x.primitive_part() * c).shifted(k);
}

const Poly& cyclotomic(unsigned t) {
  static std::mutex mu;
  static std::map<unsigned, Poly> cache;
  if (t == 0) throw ContractViolation("cyclotomic: order must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(t); it != cache.end()) return it->second;
  }
  Poly p = Poly::monomial(1, static_cast<int>(t)) - Poly(1);
  for (unsigned d = 1; d < t; ++d)
    if (t % d == 0) p = Poly::divexact(p, cyclotomic(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(t, std::move(p)).first->second;
}

// ---------------------------------------------------------------------------
// Rational polynomials, only needed for inverses modulo a cyclotomic.

namespace {

using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const Poly& p) {
  RatPoly r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

int deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
  rem = a;
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (!rem.empty() && deg(rem) >= deg(b)) {
    const auto shift = static_cast<std::size_t>(deg(rem) - deg(b));
    mpq_class c = rem.back() / b.back();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[i + shift] -= c * b[i];
    trim(rem);
  }
  trim(quot);
}

// Inverse of a modulo the irreducible polynomial m.
RatPoly inverse_mod(const RatPoly& a, const RatPoly& m) {
  RatPoly r0 = m, r1 = a, s0, s1{mpq_class(1)};
  while (deg(r1) > 0) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw SpecializationPole("inverse_mod: element is not invertible");
  mpq_class inv = 1 / r1[0];
  for (auto& c : s1) c *= inv;
  return s1;
}

// num_out / den_out = p, with integer num_out and positive integer den_out.
void clear_denominators(const RatPoly& p, Poly& num_out, mpz_class& den_out) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c.get_num() * (l / c.get_den()));
  num_out = Poly(std::move(out));
  den_out = l;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoeffMode

CoeffMode CoeffMode::root_of_unity(unsigned t) {
  if (t < 2) throw ContractViolation("root-of-unity mode needs order t >= 2");
  return CoeffMode{t};
}

std::string CoeffMode::to_string() const {
  return is_generic() ? "generic" : "root " + std::to_string(order);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(long c) : num_(c), den_(1) {}

Scalar::Scalar(long num, long den) : num_(num), den_(den) {
  if (den == 0) throw ContractViolation("Scalar: zero denominator");
  canonicalize();
}

Scalar Scalar::q(CoeffMode mode) {
  Scalar s(Poly::q(), Poly(1), mode, 0);
  s.canonicalize();
  return s;
}

Scalar Scalar::fraction(Poly num, Poly den, CoeffMode mode) {
  if (den.is_zero()) throw ContractViolation("Scalar: zero denominator");
  if (mode.is_generic()) {
    Scalar s(std::move(num), std::move(den), mode, 0);
    s.canonicalize();
    return s;
  }
  Scalar generic(std::move(num), std::move(den), CoeffMode::generic(), 0);
  generic.canonicalize();
  return specialize(generic, mode.order);
}

void Scalar::canonicalize() {
  if (den_.is_zero()) throw ContractViolation("Scalar: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!mode_.is_generic()) {
    // den_ is a positive integer by construction; num_ is reduced mod Phi_t.
    num_ = num_.mod_monic(cyclotomic(mode_.order));
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    mpz_class d = den_.lead();
    mpz_class g = num_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (d < 0) g = -g;
    if (g != 1) {
      num_ = num_.divexact(g);
      den_ = Poly(d / g);
    }
    return;
  }
  const int k = std::min(num_.low_degree(), den_.low_degree());
  if (k > 0) {
    num_ = num_.shifted(-k);
    den_ = den_.shifted(-k);
  }
  if (!den_.is_monomial() && !num_.is_monomial()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = Poly::divexact(num_, g);
      den_ = Poly::divexact(den_, g);
    }
  }
  mpz_class g = num_.content();
  mpz_class cd = den_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cd.get_mpz_t());
  if (den_.lead() < 0) g = -g;
  if (g != 1) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
}

Scalar Scalar::in_mode(CoeffMode m) const {
  if (m == mode_) return *this;
  if (is_constant()) return Scalar(num_, den_, m, 0);
  if (mode_.is_generic()) return specialize(*this, m.order);
  throw ContractViolation("Scalar: cannot mix " + mode_.to_string() + " and " + m.to_string() +
                          " coefficients");
}

namespace {

CoeffMode common_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() == b.mode()) return a.mode();
  if (a.mode().is_generic()) return b.mode();
  if (b.mode().is_generic()) return a.mode();
  if (a.is_constant()) return b.mode();
  if (b.is_constant()) return a.mode();
  throw ContractViolation("Scalar: cannot mix " + a.mode().to_string() + " and " +
                          b.mode().to_string() + " coefficients");
}

}  // namespace

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const CoeffMode m = common_mode(*this, o);
  if (mode_ != m) *this = in_mode(m);
  const Scalar& b = o.mode_ == m ? o : o.in_mode(m);
  mode_ = m;
  if (den_ == b.den_) {
    num_ += b.num_;
  } else {
    num_ = num_ * b.den_ + b.num_ * den_;
    den_ *= b.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  const CoeffMode m = common_mode(*this, o);
  if (mode_ != m) *this = in_mode(m);
  const Scalar& b = o.mode_ == m ? o : o.in_mode(m);
  mode_ = m;
  num_ *= b.num_;
  den_ *= b.den_;
  canonicalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ContractViolation("Scalar: inverse of zero");
  if (mode_.is_generic()) {
    Scalar r(den_, num_, mode_, 0);
    r.canonicalize();
    return r;
  }
  RatPoly inv = inverse_mod(to_rat(num_), to_rat(cyclotomic(mode_.order)));
  Poly n;
  mpz_class d;
  clear_denominators(inv, n, d);
  Scalar r(n * den_.lead(), Poly(d), mode_, 0);
  r.canonicalize();
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1), base = *this;
  result.mode_ = mode_;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode_ == b.mode_ || (a.is_constant() && b.is_constant()))
    return a.num_ == b.num_ && a.den_ == b.den_;
  try {
    const CoeffMode m = common_mode(a, b);
    Scalar x = a.in_mode(m), y = b.in_mode(m);
    return x.num_ == y.num_ && x.den_ == y.den_;
  } catch (const std::exception&) {
    return false;
  }
}

std::string Scalar::to_string() const {
  if (den_ == Poly(1)) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.term_count() > 1 || (!den_.is_constant() && den_.lead() != 1)) d = "(" + d + ")";
  return n + "/" + d;
}

std::string Scalar::to_term_string() const {
  if (den_ == Poly(1) && num_.term_count() > 1) return "(" + num_.to_string() + ")";
  return to_string();
}

// ---------------------------------------------------------------------------
// Parsing: expr := [+-] term ([+-] term)* ; term := factor ([*/] factor)* ;
// factor := atom ['^' [-] uint] ; atom := uint | q | '(' expr ')'

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("scalar '" + std::string(s_) + "': " + msg + " at column " +
                     std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Scalar v = term();
    if (neg) v = -v;
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        Scalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Scalar factor() {
    Scalar base = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = static_cast<long>(uint());
      if (neg) {
        if (base.is_zero()) fail("negative power of zero");
        e = -e;
      }
      return base.pow(e);
    }
    return base;
  }
  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++pos_;
      return Scalar::q();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar::fraction(Poly(mpz_class(std::string(s_.substr(start, pos_ - start)))), Poly(1));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  unsigned long uint() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, CoeffMode mode) {
  Scalar v = ScalarParser(text).parse();
  return mode.is_generic() ? v : specialize(v, mode.order);
}

// ---------------------------------------------------------------------------

Scalar q_binomial(unsigned m, unsigned j, const Scalar& q) {
  if (j > m) throw ContractViolation("q_binomial: j > m");
  // row[k] holds [n choose k]_q for the current n.
  std::vector<Scalar> row(j + 1, Scalar());
  row[0] = Scalar(1);
  std::vector<Scalar> qpow(j + 1, Scalar(1));
  for (unsigned k = 1; k <= j; ++k) qpow[k] = qpow[k - 1] * q;
  for (unsigned n = 1; n <= m; ++n) {
    for (unsigned k = std::min(n, j); k >= 1; --k) row[k] = row[k - 1] + qpow[k] * row[k];
  }
  return row[j];
}

std::optional<unsigned> root_order(const Scalar& s) {
  if (s.is_zero()) throw ContractViolation("root_order: zero has no multiplicative order");
  if (s.mode().is_generic()) {
    if (!s.is_constant()) return std::nullopt;
    if (s == Scalar(1)) return 1u;
    if (s == Scalar(-1)) return 2u;
    return std::nullopt;
  }
  const unsigned t = s.mode().order;
  const unsigned limit = std::lcm(2u, t);
  Scalar p = s;
  for (unsigned n = 1; n <= limit; ++n) {
    if (p.is_one()) return n;
    p *= s;
  }
  return std::nullopt;
}

Scalar specialize(const Scalar& s, unsigned t) {
  const CoeffMode mode = CoeffMode::root_of_unity(t);
  if (s.mode() == mode) return s;
  if (!s.mode().is_generic()) {
    if (s.is_constant()) return Scalar(s.num_, s.den_, mode, 0);
    throw ContractViolation("specialize: input is already specialized to " + s.mode().to_string());
  }
  const Poly& phi = cyclotomic(t);
  Poly num = s.numerator().mod_monic(phi);
  Poly den = s.denominator().mod_monic(phi);
  if (den.is_zero())
    throw SpecializationPole("specialize: denominator " + s.denominator().to_string() +
                             " vanishes at a primitive " + std::to_string(t) +
                             "-th root of unity (divisible by " + phi.to_string() + ")");
  RatPoly prod = mul(to_rat(num), inverse_mod(to_rat(den), to_rat(phi)));
  RatPoly quot, rem;
  divmod(prod, to_rat(phi), quot, rem);
  Poly n;
  mpz_class d;
  clear_denominators(rem, n, d);
  Scalar r(std::move(n), Poly(d), mode, 0);
  r.canonicalize();
  return r;
}

}  // namespace skewpbw
