#ifndef SKEWPBW_COEFF_HPP
#define SKEWPBW_COEFF_HPP

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewpbw/errors.hpp"

namespace skewpbw {

/// Dense polynomial in q with arbitrary-precision integer coefficients.
/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT: integers embed implicitly
  explicit Poly(mpz_class c);
  explicit Poly(std::vector<mpz_class> coeffs);

  static Poly monomial(mpz_class c, int degree);
  static Poly q() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monomial() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
  int low_degree() const;
  std::size_t term_count() const;
  const mpz_class& lead() const { return c_.back(); }
  mpz_class coeff(int k) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }

  mpz_class content() const;
  Poly primitive_part() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const mpz_class& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const mpz_class& c) { return a *= c; }

  /// Multiply by q^k (k >= 0) or divide by q^{-k} (requires low_degree() >= -k).
  Poly shifted(int k) const;
  /// Exact quotient by an integer dividing every coefficient.
  Poly divexact(const mpz_class& c) const;
  /// Exact quotient a / b; throws EngineFailure when b does not divide a in Z[q].
  static Poly divexact(const Poly& a, const Poly& b);
  /// Remainder modulo a monic polynomial.
  Poly mod_monic(const Poly& m) const;

  std::string to_string() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

Poly gcd(const Poly& a, const Poly& b);

/// The t-th cyclotomic polynomial (monic, integer coefficients).
const Poly& cyclotomic(unsigned t);

/// Coefficient field selector: symbolic q, or q fixed as a primitive t-th
/// root of unity.
struct CoeffMode {
  unsigned order = 0;  // 0 = generic

  static CoeffMode generic() { return {}; }
  static CoeffMode root_of_unity(unsigned t);
  bool is_generic() const { return order == 0; }
  std::string to_string() const;
  friend bool operator==(CoeffMode, CoeffMode) = default;
};

/// An element of Q(q), or of Q(zeta_t) when the mode is RootOfUnity(t).
///
/// Generic values are reduced fractions num/den with coprime integer
/// polynomials, joint content 1 and positive leading denominator coefficient.
/// Root-of-unity values keep num of degree < phi(t) over a positive integer
/// den. Both forms are canonical, so equality is structural.
///
/// Binary operations between a generic value and a RootOfUnity(t) value
/// specialize the generic one first.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c);  // NOLINT
  Scalar(long num, long den);

  static Scalar q(CoeffMode mode = CoeffMode::generic());
  static Scalar fraction(Poly num, Poly den, CoeffMode mode = CoeffMode::generic());

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  CoeffMode mode() const { return mode_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == Poly(1) && den_ == Poly(1); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// `(q^2+1)/(q-1)` style rendering; parse() accepts the same grammar.
  std::string to_string() const;
  /// Rendering safe to juxtapose with `*` inside a larger term.
  std::string to_term_string() const;

  static Scalar parse(std::string_view text, CoeffMode mode = CoeffMode::generic());

 private:
  friend Scalar specialize(const Scalar& s, unsigned t);
  Scalar(Poly num, Poly den, CoeffMode mode, int /*raw*/)
      : num_(std::move(num)), den_(std::move(den)), mode_(mode) {}
  void canonicalize();
  Scalar in_mode(CoeffMode m) const;

  Poly num_{};
  Poly den_{1};
  CoeffMode mode_{};
};

/// Gaussian binomial [m choose j]_q via the q-Pascal recurrence.
Scalar q_binomial(unsigned m, unsigned j, const Scalar& q);

/// Multiplicative order of s when finite.
std::optional<unsigned> root_order(const Scalar& s);

/// Image of a generic value under q -> zeta_t.
Scalar specialize(const Scalar& s, unsigned t);

}  // namespace skewpbw

#endif  // SKEWPBW_COEFF_HPP
