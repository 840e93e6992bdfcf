#ifndef SKEWPBW_SKEWALG_HPP
#define SKEWPBW_SKEWALG_HPP

#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skewpbw/coeff.hpp"
#include "skewpbw/words.hpp"

namespace skewpbw {

/// Element of the free abelian group on the declared group generators,
/// stored as an exponent vector without trailing zeros (so the identity is
/// the empty vector regardless of the group's rank).
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<int> exponents);
  static GroupElement generator(std::size_t j, int e = 1);

  int exponent(std::size_t j) const { return j < e_.size() ? e_[j] : 0; }
  const std::vector<int>& exponents() const { return e_; }
  bool is_identity() const { return e_.empty(); }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  GroupElement pow(int k) const;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  void trim();
  std::vector<int> e_;
};

/// g·w with the group part on the left.
struct Monomial {
  GroupElement group;
  Word word;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Hall order on the word, then the group exponent vector.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (auto c = hall_compare(a.word, b.word); c != 0) return c < 0;
    return a.group < b.group;
  }
};

/// Finite sum of scalar·g·w in normal form. Terms are kept sorted by
/// MonomialLess, so the last term is the leading one.
class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  AlgebraElement() = default;
  AlgebraElement(const Scalar& c);  // NOLINT: scalars embed as multiples of 1
  AlgebraElement(long c) : AlgebraElement(Scalar(c)) {}  // NOLINT
  static AlgebraElement term(const Scalar& c, GroupElement g, Word w);
  static AlgebraElement word(Word w) { return term(Scalar(1), {}, std::move(w)); }
  static AlgebraElement group(GroupElement g) { return term(Scalar(1), std::move(g), {}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial& m) const;
  const Terms::value_type& leading() const;

  /// Adds c·m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Scalar& c);

  bool is_group_free() const;
  /// The single coefficient of a scalar multiple of 1.
  std::optional<Scalar> as_scalar() const;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Scalar& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Scalar& c) { return a *= c; }
  friend AlgebraElement operator*(const Scalar& c, AlgebraElement a) { return a *= c; }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  Terms terms_;
};

/// Terms with group part the identity; (id ⊗ counit-on-k[G]) of the coproduct.
AlgebraElement strip_group(const AlgebraElement& a);

struct MonomialTupleLess {
  bool operator()(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const;
};

/// Element of the k-fold tensor power (k = arity).
class TensorElement {
 public:
  using Key = std::vector<Monomial>;
  using Terms = std::map<Key, Scalar, MonomialTupleLess>;

  explicit TensorElement(std::size_t arity = 2) : arity_(arity) {}
  /// a ⊗ b
  static TensorElement tensor(const AlgebraElement& a, const AlgebraElement& b);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Key& k) const;
  void add_term(const Key& k, const Scalar& c);

  TensorElement operator-() const;
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(const Scalar& c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

  friend bool operator==(const TensorElement&, const TensorElement&) = default;

 private:
  std::size_t arity_;
  Terms terms_;
};

/// Standard word with its bracketing and skew-bracket value.
struct SuperLetter {
  Word word;
  BracketingTree tree;
  AlgebraElement value;
};

/// Input to normal_form: a letter or a group element.
using Factor = std::variant<Letter, GroupElement>;

/// The algebra context: generators, group generators, degree map and
/// character table, together with every operation that needs them.
/// Immutable after construction; the character cache is internally locked.
class Algebra {
 public:
  /// chi[i][j] = chi^{x_i}(h_j); degrees[i] = g_{x_i}.
  Algebra(Alphabet letters, std::vector<std::string> group_names, std::vector<GroupElement> degrees,
          std::vector<std::vector<Scalar>> chi, CoeffMode mode = CoeffMode::generic());

  Algebra(const Algebra& o);
  Algebra& operator=(const Algebra&) = delete;

  const Alphabet& letters() const { return letters_; }
  std::size_t rank() const { return letters_.size(); }
  const std::vector<std::string>& group_names() const { return group_names_; }
  const GroupElement& degree(Letter x) const { return degrees_.at(static_cast<std::size_t>(x)); }
  const Scalar& chi_entry(Letter x, std::size_t j) const { return chi_.at(static_cast<std::size_t>(x)).at(j); }
  CoeffMode mode() const { return mode_; }
  Scalar q() const { return Scalar::q(mode_); }

  /// g_u for u of constitution d: product of the letter degrees.
  GroupElement group_of(const DegreeVector& d) const;
  /// chi^u(g) for u of constitution d.
  Scalar chi(const DegreeVector& d, const GroupElement& g) const;
  /// p(u, v) = chi^u(g_v), for u, v of constitutions `u`, `v`.
  Scalar bicharacter(const DegreeVector& u, const DegreeVector& v) const;

  /// The common constitution of all terms, or nullopt for an inhomogeneous
  /// element. The zero element has no degree.
  std::optional<DegreeVector> homogeneous_degree(const AlgebraElement& a) const;
  DegreeVector degree_of(const Word& w) const { return constitution(w, rank()); }

  AlgebraElement normal_form(const std::vector<Factor>& factors) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement power(const AlgebraElement& a, unsigned n) const;
  /// ab - p(D(a), D(b)) ba for homogeneous group-free a, b.
  AlgebraElement skew_bracket(const AlgebraElement& a, const AlgebraElement& b) const;
  SuperLetter eval_superletter(const BracketingTree& t) const;
  SuperLetter superletter(const Word& standard_word) const { return eval_superletter(bracketing(standard_word)); }

  TensorElement coproduct(const AlgebraElement& a) const;
  /// Applies the coproduct to tensor slot `slot`, raising the arity by one.
  TensorElement coproduct_at(const TensorElement& t, std::size_t slot) const;
  /// Slotwise product (no braiding).
  TensorElement multiply(const TensorElement& a, const TensorElement& b) const;

  std::string render(const GroupElement& g) const;
  std::string render(const Monomial& m) const;
  std::string render(const AlgebraElement& a) const;
  std::string render(const TensorElement& t) const;

  /// Expression grammar shared with render(): sums, differences, products
  /// (`*`, `.` or juxtaposition), scalar division, integer powers (negative
  /// only for scalars and group elements), `[a, b]` skew brackets and
  /// parentheses. Atoms are integers, `q`, generator and group names.
  AlgebraElement parse(std::string_view text) const;

 private:
  Alphabet letters_;
  std::vector<std::string> group_names_;
  std::vector<GroupElement> degrees_;
  std::vector<std::vector<Scalar>> chi_;
  CoeffMode mode_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<DegreeVector, GroupElement>, Scalar> chi_cache_;
};

}  // namespace skewpbw

#endif  // SKEWPBW_SKEWALG_HPP
