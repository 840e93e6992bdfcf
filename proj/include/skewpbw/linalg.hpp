#ifndef SKEWPBW_LINALG_HPP
#define SKEWPBW_LINALG_HPP

#include <functional>
#include <map>

#include "skewpbw/coeff.hpp"
#include "skewpbw/errors.hpp"

namespace skewpbw {

template <class Key, class Less = std::less<Key>>
using SparseVector = std::map<Key, Scalar, Less>;

/// y += a * x
template <class Key, class Less>
void axpy(SparseVector<Key, Less>& y, const Scalar& a, const SparseVector<Key, Less>& x) {
  if (a.is_zero()) return;
  for (const auto& [k, c] : x) {
    auto [it, inserted] = y.try_emplace(k, a * c);
    if (inserted) continue;
    it->second += a * c;
    if (it->second.is_zero()) y.erase(it);
  }
}

/// Row echelon form over exact scalars on sparse vectors. Every row is
/// normalized so that its pivot (greatest key) has coefficient 1, and pivots
/// are distinct. Each row carries a label vector recording which inputs it
/// was built from, so reduce() can express a vector in terms of the inputs.
template <class Key, class Less = std::less<Key>, class Label = int, class LabelLess = std::less<Label>>
class Echelon {
 public:
  using Vec = SparseVector<Key, Less>;
  using LabelVec = SparseVector<Label, LabelLess>;
  struct Row {
    Vec vec;
    LabelVec label;
  };

  /// Subtracts rows from v until no key of v is a pivot. Returns the label
  /// combination of what was subtracted.
  LabelVec reduce(Vec& v) const {
    LabelVec acc;
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      auto r = rows_.find(it->first);
      if (r == rows_.end()) continue;
      const Key k = it->first;
      const Scalar c = it->second;
      axpy(v, -c, r->second.vec);
      axpy(acc, c, r->second.label);
      it = v.lower_bound(k);
    }
    return acc;
  }

  bool in_span(Vec v) const {
    reduce(v);
    return v.empty();
  }

  /// Adds v (with its label); false when v is already in the span.
  bool insert(Vec v, LabelVec label) {
    LabelVec sub = reduce(v);
    if (v.empty()) return false;
    axpy(label, Scalar(-1), sub);
    const Scalar inv = v.rbegin()->second.inverse();
    for (auto& [k, c] : v) c *= inv;
    for (auto& [k, c] : label) c *= inv;
    const Key pivot = v.rbegin()->first;
    rows_.emplace(pivot, Row{std::move(v), std::move(label)});
    return true;
  }

  /// Clears every non-pivot entry that sits on another row's pivot.
  void fully_reduce() {
    for (auto& [pivot, row] : rows_) {
      Vec rest = row.vec;
      rest.erase(pivot);
      LabelVec sub = reduce(rest);
      rest.emplace(pivot, Scalar(1));
      row.vec = std::move(rest);
      axpy(row.label, Scalar(-1), sub);
    }
  }

  std::size_t rank() const { return rows_.size(); }
  const std::map<Key, Row, Less>& rows() const { return rows_; }

 private:
  std::map<Key, Row, Less> rows_;
};

}  // namespace skewpbw

#endif  // SKEWPBW_LINALG_HPP
