#ifndef SKEWPBW_PBWENGINE_HPP
#define SKEWPBW_PBWENGINE_HPP

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skewpbw/linalg.hpp"
#include "skewpbw/skewalg.hpp"

namespace skewpbw {

struct GammaLess {
  bool operator()(const DegreeVector& a, const DegreeVector& b) const { return gamma_compare(a, b) < 0; }
};

/// An algebra together with Γ-homogeneous, group-free defining relations
/// and the total-degree bound for every computation.
struct Presentation {
  std::shared_ptr<const Algebra> algebra;
  std::vector<AlgebraElement> relations;
  int bound = 0;

  /// Throws ValidationError on inhomogeneous, group-carrying, zero or
  /// over-bound relations and on a nonpositive bound.
  void validate() const;
};

/// Rewriting rules lead -> rhs under the Hall order, completed up to the
/// bound. After complete() the system is frozen; queries are thread safe.
class ReductionSystem {
 public:
  using Rules = std::map<Word, AlgebraElement, HallLess>;

  /// Bounded completion. Overlaps are resolved in ascending Hall order of the
  /// overlap word; the result is inter-reduced.
  static ReductionSystem complete(const Presentation& p);

  ReductionSystem(const ReductionSystem& o);
  ReductionSystem& operator=(const ReductionSystem&) = delete;

  const Algebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
  int bound() const { return bound_; }
  const Rules& rules() const { return rules_; }
  const std::vector<AlgebraElement>& relations() const { return relations_; }

  bool is_reducible(const Word& w) const;
  /// Unique normal form. Throws OutOfBound for words longer than the bound.
  AlgebraElement nf(const AlgebraElement& a) const;
  /// Normal form reached by rewriting at randomly chosen places.
  AlgebraElement nf_random(const AlgebraElement& a, std::mt19937& rng) const;
  /// Slotwise normal form.
  TensorElement nf(const TensorElement& t) const;
  /// nf(ab)
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;

  /// Irreducible words of constitution gamma, ascending.
  std::vector<Word> irreducible_words(const DegreeVector& gamma) const;

  /// Description of the first overlap within the bound that does not
  /// resolve to zero, if any.
  std::optional<std::string> unresolved_overlap() const;

 private:
  ReductionSystem(std::shared_ptr<const Algebra> alg, int bound) : algebra_(std::move(alg)), bound_(bound) {}

  std::optional<std::pair<std::size_t, Word>> find_rule(const Word& w) const;
  AlgebraElement reduce_uncached(const AlgebraElement& a) const;
  const AlgebraElement& nf_word(const Word& w) const;
  void check_bound(const Word& w) const;

  std::shared_ptr<const Algebra> algebra_;
  int bound_;
  std::vector<AlgebraElement> relations_;
  Rules rules_;
  std::vector<std::size_t> lead_lengths_;
  bool frozen_ = false;

  mutable std::mutex cache_mutex_;
  mutable std::map<Word, AlgebraElement, HallLess> nf_cache_;
};

/// Checks that every relation r has nf⊗nf(Δ(r)) = 0, i.e. that the ideal is
/// a Hopf ideal up to the bound. Returns a rendered offending tensor term.
std::optional<std::string> check_hopf(const ReductionSystem& r);

struct Height {
  enum class Kind { Finite, InfiniteWithinBound, Untested };
  Kind kind = Kind::InfiniteWithinBound;
  unsigned value = 0;

  static Height finite(unsigned t) { return {Kind::Finite, t}; }
  static Height infinite() { return {Kind::InfiniteWithinBound, 0}; }
  static Height untested() { return {Kind::Untested, 0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  /// Exponent bound for enumeration (nullopt = unrestricted).
  HeightBound exponent_bound() const { return is_finite() ? HeightBound(value) : std::nullopt; }
  /// `3`, `inf` (within the bound) or `untested`.
  std::string to_string() const;

  friend bool operator==(const Height&, const Height&) = default;
};

struct HardLetter {
  SuperLetter letter;
  DegreeVector degree;
  Height height;
};

/// Monotonous word in hard letters: letter indices (into PBWData::letters(),
/// or into PTData::letters() for P_T words) in non-decreasing order.
struct SuperWord {
  DegreeVector degree;
  std::vector<int> letters;

  friend bool operator==(const SuperWord&, const SuperWord&) = default;
};

/// Γ-order on the degree, then lexicographic on the letter sequence.
std::strong_ordering compare(const SuperWord& a, const SuperWord& b);
struct SuperWordLess {
  bool operator()(const SuperWord& a, const SuperWord& b) const { return compare(a, b) < 0; }
};

ExponentSequence runs(const SuperWord& w);
SuperWord from_runs(const ExponentSequence& seq, const std::vector<DegreeVector>& letter_degrees,
                    std::size_t alphabet_size);

/// g · W
struct SuperTerm {
  SuperWord word;
  GroupElement group;

  friend bool operator==(const SuperTerm&, const SuperTerm&) = default;
};
struct SuperTermLess {
  bool operator()(const SuperTerm& a, const SuperTerm& b) const {
    if (auto c = compare(a.word, b.word); c != 0) return c < 0;
    return a.group < b.group;
  }
};
using SuperCombination = std::map<SuperTerm, Scalar, SuperTermLess>;

void add_to(SuperCombination& acc, const SuperTerm& t, const Scalar& c);

/// Hard super-letters with heights and the per-constitution decomposition
/// tables behind decompose_super.
class PBWData {
 public:
  /// Runs the hard super-letter search on a completed system.
  static std::shared_ptr<const PBWData> compute(std::shared_ptr<const ReductionSystem> r);

  const ReductionSystem& reduction() const { return *reduction_; }
  const std::shared_ptr<const ReductionSystem>& reduction_ptr() const { return reduction_; }
  const Algebra& algebra() const { return reduction_->algebra(); }
  int bound() const { return reduction_->bound(); }

  /// Ascending in the lexicographic order of their words.
  const std::vector<HardLetter>& letters() const { return letters_; }
  std::optional<int> find_letter(const Word& w) const;
  /// Normal form of the value of letter i.
  const AlgebraElement& letter_value(int i) const { return letter_values_.at(static_cast<std::size_t>(i)); }
  std::vector<DegreeVector> letter_degrees() const;
  std::vector<HeightBound> exponent_bounds() const;

  /// Dimension of the group-free γ-component of H (count of irreducible
  /// words) for every constitution within the bound.
  const std::map<DegreeVector, std::size_t, GammaLess>& dimensions() const { return dimensions_; }

  /// Restricted monotonous words of constitution gamma, ascending.
  std::vector<SuperWord> basis_words(const DegreeVector& gamma) const;

  /// Normal form of the value of a super-word.
  AlgebraElement evaluate(const SuperWord& w) const;
  AlgebraElement evaluate(const SuperCombination& c) const;

  /// Unique expansion of nf(a) in basis super-words over k[G].
  SuperCombination decompose(const AlgebraElement& a) const;

  std::string render(const SuperWord& w) const;
  std::string render(const SuperCombination& c) const;

 private:
  using Table = Echelon<Word, HallLess, SuperWord, SuperWordLess>;
  explicit PBWData(std::shared_ptr<const ReductionSystem> r) : reduction_(std::move(r)) {}

  std::shared_ptr<const ReductionSystem> reduction_;
  std::vector<HardLetter> letters_;
  std::vector<AlgebraElement> letter_values_;
  std::map<DegreeVector, std::size_t, GammaLess> dimensions_;
  // Table labels use discovery order; remap_ takes them to letters_ indices.
  std::map<DegreeVector, Table, GammaLess> tables_;
  std::vector<int> remap_;

  mutable std::mutex cache_mutex_;
  mutable std::map<SuperWord, AlgebraElement, SuperWordLess> value_cache_;
};

/// Free-function forms of the engine steps.
std::shared_ptr<const PBWData> hard_superletters(std::shared_ptr<const ReductionSystem> r);
SuperCombination decompose_super(const AlgebraElement& a, const PBWData& data);

/// A thin element: leading basis super-word [v]^m with coefficient 1.
struct ThinElement {
  int letter;  // index into PBWData::letters()
  AlgebraElement element;
};

struct PTLetter {
  int base;        // hard letter v
  unsigned m = 0;  // 0: v itself; otherwise the thin element c_v with leading [v]^m
  AlgebraElement value;
  DegreeVector degree;  // degree of the leading term
  Height height;

  bool is_thin() const { return m > 0; }
};

/// P_T: hard letters with thin elements inserted immediately before their
/// base letter (or replacing it when m = 1).
class PTData {
 public:
  /// Throws ValidationError when an element of T is not thin.
  static std::shared_ptr<const PTData> build(std::shared_ptr<const PBWData> data, const std::vector<ThinElement>& T);

  const PBWData& pbw() const { return *data_; }
  const std::vector<PTLetter>& letters() const { return letters_; }
  /// P_T index of c_v for base letter v, if T has one.
  std::optional<int> thin_index(int base) const;

  AlgebraElement evaluate(const SuperWord& w) const;
  AlgebraElement evaluate(const SuperCombination& c) const;
  /// The P_T word whose leading basis super-word is w: each run [u]^s with
  /// a thin c_u of power m becomes c_u^{s/m} [u]^{s mod m}.
  SuperWord convert_leading(const SuperWord& w) const;
  /// Unique expansion of nf(a) in restricted monotonous P_T words over k[G].
  SuperCombination decompose(const AlgebraElement& a) const;

  std::string render_letter(int i) const;
  std::string render(const SuperWord& w) const;
  std::string render(const SuperCombination& c) const;

 private:
  explicit PTData(std::shared_ptr<const PBWData> d) : data_(std::move(d)) {}

  std::shared_ptr<const PBWData> data_;
  std::vector<PTLetter> letters_;
  std::map<int, int> thin_of_base_;
  std::map<int, int> plain_of_base_;

  mutable std::mutex cache_mutex_;
  mutable std::map<SuperWord, SuperCombination, SuperWordLess> expansion_cache_;

  const SuperCombination& expansion(const SuperWord& w) const;
};

std::shared_ptr<const PTData> build_PT(std::shared_ptr<const PBWData> data, const std::vector<ThinElement>& T);
SuperCombination decompose_PT(const AlgebraElement& a, const PTData& pt);

struct SuperTermPairLess {
  bool operator()(const std::pair<SuperTerm, SuperTerm>& a, const std::pair<SuperTerm, SuperTerm>& b) const {
    SuperTermLess l;
    if (l(a.first, b.first)) return true;
    if (l(b.first, a.first)) return false;
    return l(a.second, b.second);
  }
};
/// Super-word expansion of both tensor factors.
using SuperTensor = std::map<std::pair<SuperTerm, SuperTerm>, Scalar, SuperTermPairLess>;
SuperTensor decompose_tensor(const TensorElement& t, const PBWData& data);

}  // namespace skewpbw

#endif  // SKEWPBW_PBWENGINE_HPP
