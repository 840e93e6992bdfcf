#ifndef SKEWPBW_WORDS_HPP
#define SKEWPBW_WORDS_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewpbw {

/// Index into an Alphabet. Index 0 is the GREATEST letter.
using Letter = int;
using Word = std::vector<Letter>;
/// Multiplicity of each letter, indexed like the alphabet.
using DegreeVector = std::vector<int>;

/// Generator names in strictly descending order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter x) const { return names_.at(static_cast<std::size_t>(x)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Letter> find(std::string_view name) const;

  /// `x1.x1.x2`; the empty word renders as `1`.
  std::string render(const Word& w) const;
  /// Inverse of render(); throws ParseError on unknown names.
  Word parse(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

DegreeVector constitution(const Word& w, std::size_t alphabet_size);
int total_degree(const DegreeVector& d);
/// `(2,1,0)`
std::string render_degree(const DegreeVector& d);
DegreeVector operator+(DegreeVector a, const DegreeVector& b);
DegreeVector operator*(int k, DegreeVector a);
/// Componentwise a <= b.
bool divides(const DegreeVector& a, const DegreeVector& b);

/// Order on constitutions: the first letter (greatest first) with unequal
/// multiplicity decides, larger multiplicity is greater.
std::strong_ordering gamma_compare(const DegreeVector& a, const DegreeVector& b);

/// Letter-by-letter comparison in which a proper prefix is GREATER than the
/// longer word (so x > xx). Everything order-sensitive goes through here.
std::strong_ordering lex_compare(const Word& u, const Word& v);

/// Deg-lex: constitution by gamma_compare, ties by lex_compare. Monoidal.
std::strong_ordering hall_compare(const Word& u, const Word& v);

struct HallLess {
  bool operator()(const Word& a, const Word& b) const { return hall_compare(a, b) < 0; }
};
struct LexLess {
  bool operator()(const Word& a, const Word& b) const { return lex_compare(a, b) < 0; }
};

/// vw > wv for every split into non-empty v, w.
bool is_standard(const Word& u);

/// u = vw with v, w standard and v as short as possible.
std::pair<Word, Word> shirshov_factorize(const Word& u);

/// Standard nonassociative word: a leaf letter or a pair of subtrees.
struct BracketingTree {
  Word word;
  std::shared_ptr<const BracketingTree> left, right;

  bool is_leaf() const { return !left; }
};

/// The unique standard bracketing of a standard word.
BracketingTree bracketing(const Word& u);
/// `[x1,[x1,x2]]`
std::string render_tree(const Alphabet& a, const BracketingTree& t);

/// All standard words of length <= bound over `alphabet_size` letters,
/// ascending in the Hall order.
std::vector<Word> standard_words(std::size_t alphabet_size, int bound);

/// All words with constitution `gamma`, ascending in the Hall order.
std::vector<Word> words_of_constitution(const DegreeVector& gamma);

/// All constitutions of total degree 1..bound over `alphabet_size` letters,
/// ascending by gamma_compare.
std::vector<DegreeVector> constitutions_up_to(std::size_t alphabet_size, int bound);

/// Height of a PBW letter: exponents must stay strictly below it. nullopt
/// stands for infinity.
using HeightBound = std::optional<unsigned>;

/// (letter index, exponent) runs of a monotonous word v1^n1 ... vk^nk.
using ExponentSequence = std::vector<std::pair<int, unsigned>>;

/// Monotonous restricted exponent sequences over letters with the given
/// degrees (letters listed in ascending order) whose total degree is gamma.
/// Generation order, unsorted.
std::vector<ExponentSequence> monotonous_words(const std::vector<DegreeVector>& degrees,
                                               const std::vector<HeightBound>& heights,
                                               const DegreeVector& gamma);

/// As monotonous_words, for letters that are words; sorted by hall_compare of
/// the flattened word.
std::vector<ExponentSequence> enumerate_basis_words(const std::vector<Word>& letters,
                                                    const std::vector<HeightBound>& heights,
                                                    const DegreeVector& gamma);

Word flatten(const std::vector<Word>& letters, const ExponentSequence& seq);

}  // namespace skewpbw

#endif  // SKEWPBW_WORDS_HPP
