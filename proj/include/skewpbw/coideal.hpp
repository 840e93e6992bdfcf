#ifndef SKEWPBW_COIDEAL_HPP
#define SKEWPBW_COIDEAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewpbw/pbwengine.hpp"

namespace skewpbw {

/// Generators of a right coideal subalgebra U ⊇ k[G] of the quotient
/// described by `system`. k[G] itself is always included.
struct CoidealInput {
  std::shared_ptr<const ReductionSystem> system;
  std::vector<AlgebraElement> generators;

  /// Generators with a single common group factor g are replaced by g⁻¹·u
  /// (same U); zero and scalar generators are dropped. Throws ValidationError
  /// on inhomogeneous or mixed-group generators and on degrees above the bound.
  CoidealInput normalized() const;
};

/// Group-free slice of U, one fully reduced row space of normal forms per
/// constitution within the bound.
class CoidealBasis {
 public:
  static CoidealBasis close(const CoidealInput& input);

  const ReductionSystem& system() const { return *input_.system; }
  const CoidealInput& input() const { return input_; }
  std::size_t dimension(const DegreeVector& gamma) const;
  /// Monic basis of the gamma-component, ascending by leading word.
  std::vector<AlgebraElement> basis(const DegreeVector& gamma) const;
  /// a ∈ k[G]·(group-free slice), i.e. a ∈ U.
  bool contains(const AlgebraElement& a) const;

 private:
  using Table = Echelon<Word, HallLess>;
  CoidealInput input_;
  std::map<DegreeVector, Table, GammaLess> tables_;
};

CoidealBasis close_basis(const CoidealInput& input);

struct CoidealViolation {
  std::size_t generator;  // index into the normalized generators
  AlgebraElement element;
  /// Δ(u) restricted to the right-hand basis monomials whose left
  /// coefficient lies outside U.
  TensorElement witness;
  std::string message;
};

/// First generator u with a component of Δ(u) outside U ⊗ H, if any.
std::optional<CoidealViolation> validate_coideal(const CoidealBasis& basis);

struct TGenerator {
  int letter;  // hard letter index
  unsigned m;
  AlgebraElement element;  // c_u, leading super-word [u]^m with coefficient 1
};

struct ExtractionResult {
  std::vector<TGenerator> T;
  std::shared_ptr<const PTData> pt;
  /// Minimal power found for every hard letter; nullopt means not
  /// represented within the bound.
  std::vector<std::optional<unsigned>> minimal_power;
};

/// Throws EngineFailure when a minimal power is neither 1 nor the order of
/// p(u, u).
ExtractionResult extract_T(const CoidealBasis& basis, std::shared_ptr<const PBWData> data);

struct Membership {
  bool member;
  SuperCombination certificate;  // P_T decomposition
  std::optional<int> offending;  // P_T letter outside T
};

Membership membership(const AlgebraElement& a, const ExtractionResult& res);

struct DimensionRow {
  DegreeVector gamma;
  std::size_t closure;
  std::size_t t_words;
};

struct CoidealReport {
  std::vector<DimensionRow> dimensions;
};

/// Compares each component of U with the restricted monotonous words in T,
/// checking that their values lie in U and are independent. Throws
/// EngineFailure on any mismatch.
CoidealReport coideal_report(const CoidealBasis& basis, const ExtractionResult& res);

}  // namespace skewpbw

#endif  // SKEWPBW_COIDEAL_HPP
