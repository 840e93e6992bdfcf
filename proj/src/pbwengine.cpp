#include "skewpbw/pbwengine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "skewpbw/errors.hpp"

namespace skewpbw {

namespace {

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

// pre · a · post for group-free pre, post
AlgebraElement wrap(const Word& pre, const AlgebraElement& a, const Word& post) {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms()) {
    Word w = pre;
    w.insert(w.end(), m.word.begin(), m.word.end());
    w.insert(w.end(), post.begin(), post.end());
    out.add_term(Monomial{m.group, std::move(w)}, c);
  }
  return out;
}

bool occurs_at(const Word& w, std::size_t i, const Word& sub) {
  return i + sub.size() <= w.size() && std::equal(sub.begin(), sub.end(), w.begin() + static_cast<std::ptrdiff_t>(i));
}

bool contains(const Word& w, const Word& sub) {
  for (std::size_t i = 0; i + sub.size() <= w.size(); ++i)
    if (occurs_at(w, i, sub)) return true;
  return false;
}

std::string with_coefficient(const Scalar& c, const std::string& body, bool body_is_one) {
  if (body_is_one) return c.to_string();
  if (c.is_one()) return body;
  if (c == Scalar(-1)) return "-" + body;
  return c.to_term_string() + " * " + body;
}

using WordVec = SparseVector<Word, HallLess>;

WordVec to_vec(const AlgebraElement& a) {
  WordVec v;
  for (const auto& [m, c] : a.terms()) {
    if (!m.group.is_identity()) throw EngineFailure("group-like factor in a group-free computation");
    v.emplace(m.word, c);
  }
  return v;
}

std::string render_superletter(const Alphabet& a, const Word& w) {
  std::string s = "[";
  for (Letter x : w) s += a.name(x);
  return s + "]";
}

template <class LetterName>
std::string render_runs(const SuperWord& w, LetterName name) {
  if (w.letters.empty()) return "1";
  std::string s;
  for (auto [i, n] : runs(w)) {
    s += name(i);
    if (n > 1) s += "^" + std::to_string(n);
  }
  return s;
}

template <class WordName>
std::string render_combination(const Algebra& alg, const SuperCombination& c, WordName name) {
  if (c.empty()) return "0";
  std::string s;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const auto& [t, k] = *it;
    std::string body;
    if (!t.group.is_identity()) body = alg.render(t.group);
    if (!t.word.letters.empty()) body += (body.empty() ? "" : " * ") + name(t.word);
    if (!s.empty()) s += " + ";
    s += with_coefficient(k, body, body.empty());
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- presentation

void Presentation::validate() const {
  if (!algebra) throw ContractViolation("presentation without an algebra");
  if (bound < 1) throw ValidationError("bound must be at least 1");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const AlgebraElement& r = relations[i];
    const std::string tag = "relation " + std::to_string(i + 1);
    if (r.is_zero()) throw ValidationError(tag + " is zero");
    if (!r.is_group_free()) throw ValidationError(tag + " has group-like factors", algebra->render(r));
    auto d = algebra->homogeneous_degree(r);
    if (!d) {
      const DegreeVector first = algebra->degree_of(r.terms().begin()->first.word);
      for (const auto& [m, c] : r.terms()) {
        DegreeVector other = algebra->degree_of(m.word);
        if (other != first)
          throw ValidationError(tag + " is not homogeneous: constitutions " + render_degree(first) + " and " +
                                    render_degree(other),
                                algebra->render(r));
      }
    }
    const int deg = total_degree(*d);
    if (deg == 0) throw ValidationError(tag + " is a nonzero scalar: the quotient is degenerate");
    if (deg > bound)
      throw ValidationError(tag + " has degree " + std::to_string(deg) + " above the bound " + std::to_string(bound));
  }
}

// ---------------------------------------------------------------- rewriting

ReductionSystem::ReductionSystem(const ReductionSystem& o)
    : algebra_(o.algebra_),
      bound_(o.bound_),
      relations_(o.relations_),
      rules_(o.rules_),
      lead_lengths_(o.lead_lengths_),
      frozen_(o.frozen_) {
  std::lock_guard lock(o.cache_mutex_);
  nf_cache_ = o.nf_cache_;
}

void ReductionSystem::check_bound(const Word& w) const {
  if (static_cast<int>(w.size()) > bound_)
    throw OutOfBound("word " + algebra_->letters().render(w) + " of degree " + std::to_string(w.size()) +
                     " exceeds the bound " + std::to_string(bound_));
}

std::optional<std::pair<std::size_t, Word>> ReductionSystem::find_rule(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t len : lead_lengths_) {
      if (i + len > w.size()) break;
      Word sub = slice(w, i, i + len);
      if (rules_.count(sub)) return std::pair{i, std::move(sub)};
    }
  return std::nullopt;
}

bool ReductionSystem::is_reducible(const Word& w) const { return find_rule(w).has_value(); }

AlgebraElement ReductionSystem::reduce_uncached(const AlgebraElement& a) const {
  AlgebraElement work = a, out;
  while (!work.is_zero()) {
    const auto [m, c] = work.leading();
    work.add_term(m, -c);
    auto hit = find_rule(m.word);
    if (!hit) {
      out.add_term(m, c);
      continue;
    }
    const auto& [i, lead] = *hit;
    AlgebraElement rhs = wrap(slice(m.word, 0, i), rules_.at(lead), slice(m.word, i + lead.size(), m.word.size()));
    for (const auto& [m2, c2] : rhs.terms()) work.add_term(Monomial{m.group * m2.group, m2.word}, c * c2);
  }
  return out;
}

const AlgebraElement& ReductionSystem::nf_word(const Word& w) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = nf_cache_.find(w); it != nf_cache_.end()) return it->second;
  }
  AlgebraElement res;
  if (auto hit = find_rule(w)) {
    const auto& [i, lead] = *hit;
    AlgebraElement step = wrap(slice(w, 0, i), rules_.at(lead), slice(w, i + lead.size(), w.size()));
    for (const auto& [m, c] : step.terms()) res += c * nf_word(m.word);
  } else {
    res = AlgebraElement::word(w);
  }
  std::lock_guard lock(cache_mutex_);
  return nf_cache_.emplace(w, std::move(res)).first->second;
}

AlgebraElement ReductionSystem::nf(const AlgebraElement& a) const {
  for (const auto& [m, c] : a.terms()) check_bound(m.word);
  if (!frozen_) return reduce_uncached(a);
  AlgebraElement out;
  for (const auto& [m, c] : a.terms())
    for (const auto& [m2, c2] : nf_word(m.word).terms()) out.add_term(Monomial{m.group * m2.group, m2.word}, c * c2);
  return out;
}

AlgebraElement ReductionSystem::nf_random(const AlgebraElement& a, std::mt19937& rng) const {
  for (const auto& [m, c] : a.terms()) check_bound(m.word);
  AlgebraElement work = a;
  for (;;) {
    std::vector<std::tuple<Monomial, std::size_t, Word>> sites;
    for (const auto& [m, c] : work.terms())
      for (std::size_t i = 0; i < m.word.size(); ++i)
        for (std::size_t len : lead_lengths_) {
          if (i + len > m.word.size()) break;
          Word sub = slice(m.word, i, i + len);
          if (rules_.count(sub)) sites.emplace_back(m, i, std::move(sub));
        }
    if (sites.empty()) return work;
    std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
    const auto& [m, i, lead] = sites[pick(rng)];
    const Scalar c = work.coeff(m);
    work.add_term(m, -c);
    AlgebraElement rhs = wrap(slice(m.word, 0, i), rules_.at(lead), slice(m.word, i + lead.size(), m.word.size()));
    for (const auto& [m2, c2] : rhs.terms()) work.add_term(Monomial{m.group * m2.group, m2.word}, c * c2);
  }
}

TensorElement ReductionSystem::nf(const TensorElement& t) const {
  TensorElement out(t.arity());
  for (const auto& [key, c] : t.terms()) {
    std::vector<std::pair<TensorElement::Key, Scalar>> partial{{{}, c}};
    for (const Monomial& m : key) {
      const AlgebraElement slot = nf(AlgebraElement::term(Scalar(1), m.group, m.word));
      std::vector<std::pair<TensorElement::Key, Scalar>> next;
      for (const auto& [k, c0] : partial)
        for (const auto& [m2, c2] : slot.terms()) {
          auto k2 = k;
          k2.push_back(m2);
          next.emplace_back(std::move(k2), c0 * c2);
        }
      partial = std::move(next);
    }
    for (const auto& [k, c0] : partial) out.add_term(k, c0);
  }
  return out;
}

AlgebraElement ReductionSystem::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  return nf(algebra_->multiply(a, b));
}

std::vector<Word> ReductionSystem::irreducible_words(const DegreeVector& gamma) const {
  std::vector<Word> out;
  for (auto& w : words_of_constitution(gamma))
    if (!is_reducible(w)) out.push_back(std::move(w));
  return out;
}

namespace {

struct Overlap {
  Word word, first, second;
  std::size_t k;
};

struct OverlapLess {
  bool operator()(const Overlap& a, const Overlap& b) const {
    if (auto c = hall_compare(a.word, b.word); c != 0) return c < 0;
    if (auto c = hall_compare(a.first, b.first); c != 0) return c < 0;
    if (auto c = hall_compare(a.second, b.second); c != 0) return c < 0;
    return a.k < b.k;
  }
};

// Suffixes of `a` of length k equal to prefixes of `b`, with a·b[k:] within the bound.
void overlaps(const Word& a, const Word& b, int bound, std::vector<Overlap>& out) {
  const std::size_t lim = std::min(a.size(), b.size());
  for (std::size_t k = 1; k < lim; ++k) {
    if (static_cast<int>(a.size() + b.size() - k) > bound) continue;
    if (!std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) continue;
    Word w = a;
    w.insert(w.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
    out.push_back(Overlap{std::move(w), a, b, k});
  }
}

}  // namespace

ReductionSystem ReductionSystem::complete(const Presentation& p) {
  p.validate();
  ReductionSystem r(p.algebra, p.bound);
  r.relations_ = p.relations;

  std::set<Overlap, OverlapLess> pairs;
  std::vector<AlgebraElement> pending(p.relations.rbegin(), p.relations.rend());

  auto refresh_lengths = [&r] {
    std::set<std::size_t> lens;
    for (const auto& [lead, rhs] : r.rules_) lens.insert(lead.size());
    r.lead_lengths_.assign(lens.begin(), lens.end());
  };

  auto add = [&](const AlgebraElement& f0) {
    AlgebraElement f = r.reduce_uncached(f0);
    if (f.is_zero()) return;
    const auto [m, c] = f.leading();
    if (m.word.empty()) throw ValidationError("the relations generate the whole algebra (1 reduces to 0)");
    f *= c.inverse();
    const Word lead = m.word;
    AlgebraElement rhs = AlgebraElement::word(lead) - f;
    for (auto it = r.rules_.begin(); it != r.rules_.end();) {
      if (contains(it->first, lead)) {
        pending.push_back(AlgebraElement::word(it->first) - it->second);
        it = r.rules_.erase(it);
      } else {
        ++it;
      }
    }
    r.rules_.emplace(lead, std::move(rhs));
    refresh_lengths();
    std::vector<Overlap> found;
    for (const auto& [other, rhs2] : r.rules_) {
      overlaps(lead, other, r.bound_, found);
      if (other != lead) overlaps(other, lead, r.bound_, found);
    }
    pairs.insert(found.begin(), found.end());
  };

  for (;;) {
    while (!pending.empty()) {
      AlgebraElement f = std::move(pending.back());
      pending.pop_back();
      add(f);
    }
    if (pairs.empty()) break;
    const Overlap o = *pairs.begin();
    pairs.erase(pairs.begin());
    auto i1 = r.rules_.find(o.first), i2 = r.rules_.find(o.second);
    if (i1 == r.rules_.end() || i2 == r.rules_.end()) continue;
    const Word pre = slice(o.first, 0, o.first.size() - o.k);
    const Word post = slice(o.second, o.k, o.second.size());
    add(wrap({}, i1->second, post) - wrap(pre, i2->second, {}));
  }

  for (auto& [lead, rhs] : r.rules_) rhs = r.reduce_uncached(rhs);
  r.frozen_ = true;
  return r;
}

std::optional<std::string> ReductionSystem::unresolved_overlap() const {
  const Alphabet& abc = algebra_->letters();
  for (const auto& [lead, rhs] : rules_) {
    for (std::size_t i = 0; i < lead.size(); ++i)
      for (std::size_t len : lead_lengths_) {
        if (i + len > lead.size()) break;
        if (i == 0 && len == lead.size()) continue;
        if (rules_.count(slice(lead, i, i + len))) return "rule " + abc.render(lead) + " contains another leading word";
      }
    for (const auto& [m, c] : rhs.terms())
      if (is_reducible(m.word)) return "rule " + abc.render(lead) + " has a reducible right-hand side";
  }
  for (const auto& [a, ra] : rules_)
    for (const auto& [b, rb] : rules_) {
      std::vector<Overlap> found;
      overlaps(a, b, bound_, found);
      for (const Overlap& o : found) {
        const Word pre = slice(a, 0, a.size() - o.k);
        const Word post = slice(b, o.k, b.size());
        AlgebraElement s = nf(wrap({}, ra, post) - wrap(pre, rb, {}));
        if (!s.is_zero()) return "overlap " + abc.render(o.word) + " leaves " + algebra_->render(s);
      }
    }
  return std::nullopt;
}

std::optional<std::string> check_hopf(const ReductionSystem& r) {
  const Algebra& alg = r.algebra();
  for (const AlgebraElement& rel : r.relations()) {
    TensorElement rest = r.nf(alg.coproduct(rel));
    if (!rest.is_zero()) return "coproduct of " + alg.render(rel) + " leaves " + alg.render(rest);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- super-words

std::string Height::to_string() const {
  switch (kind) {
    case Kind::Finite:
      return std::to_string(value);
    case Kind::InfiniteWithinBound:
      return "inf";
    case Kind::Untested:
      return "untested";
  }
  return "?";
}

std::strong_ordering compare(const SuperWord& a, const SuperWord& b) {
  if (auto c = gamma_compare(a.degree, b.degree); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(), b.letters.begin(),
                                                b.letters.end());
}

ExponentSequence runs(const SuperWord& w) {
  ExponentSequence out;
  for (int i : w.letters) {
    if (!out.empty() && out.back().first == i)
      ++out.back().second;
    else
      out.emplace_back(i, 1u);
  }
  return out;
}

SuperWord from_runs(const ExponentSequence& seq, const std::vector<DegreeVector>& letter_degrees,
                    std::size_t alphabet_size) {
  SuperWord w{DegreeVector(alphabet_size, 0), {}};
  for (auto [i, n] : seq)
    for (unsigned k = 0; k < n; ++k) {
      w.letters.push_back(i);
      w.degree = w.degree + letter_degrees.at(static_cast<std::size_t>(i));
    }
  return w;
}

void add_to(SuperCombination& acc, const SuperTerm& t, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

// ---------------------------------------------------------------- hard letters

std::shared_ptr<const PBWData> PBWData::compute(std::shared_ptr<const ReductionSystem> r) {
  std::shared_ptr<PBWData> d(new PBWData(r));
  const Algebra& alg = r->algebra();
  const std::size_t n = alg.rank();
  const int bound = r->bound();

  std::map<DegreeVector, std::vector<Word>, GammaLess> standard_by_gamma;
  for (auto& w : standard_words(n, bound)) standard_by_gamma[constitution(w, n)].push_back(std::move(w));

  // Discovery order; sorted lexicographically at the end.
  std::vector<HardLetter> found;
  std::vector<AlgebraElement> values;
  std::vector<bool> pending;
  std::map<DegreeVector, std::vector<int>, GammaLess> height_items;
  std::map<std::vector<int>, AlgebraElement> products;

  auto value_of = [&](const std::vector<int>& ids) -> const AlgebraElement& {
    if (auto it = products.find(ids); it != products.end()) return it->second;
    std::size_t k = ids.size();
    while (k > 0 && !products.count(std::vector<int>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k))))
      --k;
    AlgebraElement acc = k ? products.at(std::vector<int>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k)))
                           : AlgebraElement(1);
    for (std::size_t i = k; i < ids.size(); ++i) {
      acc = r->multiply(acc, values[static_cast<std::size_t>(ids[i])]);
      products.emplace(std::vector<int>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(i + 1)), acc);
    }
    return products.at(ids);
  };

  for (const DegreeVector& gamma : constitutions_up_to(n, bound)) {
    struct Item {
      Word key;
      int height_of;  // -1 for a standard word
    };
    std::vector<Item> items;
    if (auto it = standard_by_gamma.find(gamma); it != standard_by_gamma.end())
      for (const Word& w : it->second) items.push_back(Item{w, -1});
    if (auto it = height_items.find(gamma); it != height_items.end())
      for (int id : it->second) items.push_back(Item{found[static_cast<std::size_t>(id)].letter.word, id});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return lex_compare(a.key, b.key) < 0; });

    Table table;
    std::set<std::vector<int>> admitted;

    // Admits every basis word of gamma whose greatest letter is below `key`.
    auto admit = [&](const Word* key) {
      std::vector<int> order(found.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return lex_compare(found[static_cast<std::size_t>(a)].letter.word,
                           found[static_cast<std::size_t>(b)].letter.word) < 0;
      });
      std::vector<DegreeVector> degrees;
      std::vector<HeightBound> heights;
      for (int id : order) {
        const HardLetter& h = found[static_cast<std::size_t>(id)];
        degrees.push_back(h.degree);
        heights.push_back(pending[static_cast<std::size_t>(id)] ? std::nullopt : h.height.exponent_bound());
      }
      for (const ExponentSequence& seq : monotonous_words(degrees, heights, gamma)) {
        const int last = order[static_cast<std::size_t>(seq.back().first)];
        if (key && lex_compare(found[static_cast<std::size_t>(last)].letter.word, *key) >= 0) continue;
        std::vector<int> ids;
        for (auto [i, e] : seq) ids.insert(ids.end(), e, order[static_cast<std::size_t>(i)]);
        if (!admitted.insert(ids).second) continue;
        if (!table.insert(to_vec(value_of(ids)), {{SuperWord{gamma, ids}, Scalar(1)}}))
          throw EngineFailure("PBW words of constitution " + render_degree(gamma) +
                              " are linearly dependent in the quotient (is the ideal a Hopf ideal?)");
      }
    };

    for (const Item& item : items) {
      admit(&item.key);
      if (item.height_of < 0) {
        SuperLetter sl = alg.superletter(item.key);
        AlgebraElement v = r->nf(sl.value);
        if (table.in_span(to_vec(v))) continue;
        const int id = static_cast<int>(found.size());
        Height h = Height::infinite();
        bool wait = false;
        const auto t = root_order(alg.bicharacter(gamma, gamma));
        if (t && *t > 1) {
          if (static_cast<int>(*t) * total_degree(gamma) <= bound) {
            height_items[static_cast<int>(*t) * gamma].push_back(id);
            wait = true;
          } else {
            h = Height::untested();
          }
        }
        found.push_back(HardLetter{std::move(sl), gamma, h});
        values.push_back(std::move(v));
        pending.push_back(wait);
      } else {
        const auto id = static_cast<std::size_t>(item.height_of);
        const auto t = static_cast<unsigned>(total_degree(gamma) / total_degree(found[id].degree));
        const std::vector<int> power(t, item.height_of);
        found[id].height = table.in_span(to_vec(value_of(power))) ? Height::finite(t) : Height::infinite();
        pending[id] = false;
      }
    }
    admit(nullptr);

    const std::size_t dim = r->irreducible_words(gamma).size();
    if (admitted.size() != dim || table.rank() != dim)
      throw EngineFailure("constitution " + render_degree(gamma) + ": " + std::to_string(admitted.size()) +
                          " PBW words but " + std::to_string(dim) + " normal words");
    d->dimensions_.emplace(gamma, dim);
    d->tables_.emplace(gamma, std::move(table));
  }

  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_compare(found[static_cast<std::size_t>(a)].letter.word,
                       found[static_cast<std::size_t>(b)].letter.word) < 0;
  });
  d->remap_.assign(found.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto id = static_cast<std::size_t>(order[i]);
    d->remap_[id] = static_cast<int>(i);
    d->letters_.push_back(std::move(found[id]));
    d->letter_values_.push_back(std::move(values[id]));
  }
  return d;
}

std::optional<int> PBWData::find_letter(const Word& w) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i].letter.word == w) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<DegreeVector> PBWData::letter_degrees() const {
  std::vector<DegreeVector> out;
  for (const auto& l : letters_) out.push_back(l.degree);
  return out;
}

std::vector<HeightBound> PBWData::exponent_bounds() const {
  std::vector<HeightBound> out;
  for (const auto& l : letters_) out.push_back(l.height.exponent_bound());
  return out;
}

std::vector<SuperWord> PBWData::basis_words(const DegreeVector& gamma) const {
  std::vector<SuperWord> out;
  const auto degrees = letter_degrees();
  for (const auto& seq : monotonous_words(degrees, exponent_bounds(), gamma))
    out.push_back(from_runs(seq, degrees, algebra().rank()));
  std::sort(out.begin(), out.end(), SuperWordLess{});
  return out;
}

AlgebraElement PBWData::evaluate(const SuperWord& w) const {
  if (w.letters.empty()) return AlgebraElement(1);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = value_cache_.find(w); it != value_cache_.end()) return it->second;
  }
  const int last = w.letters.back();
  AlgebraElement v;
  if (w.letters.size() == 1) {
    v = letter_value(last);
  } else {
    SuperWord prefix{w.degree, std::vector<int>(w.letters.begin(), w.letters.end() - 1)};
    for (std::size_t j = 0; j < prefix.degree.size(); ++j)
      prefix.degree[j] -= letters_.at(static_cast<std::size_t>(last)).degree[j];
    v = reduction_->multiply(evaluate(prefix), letter_value(last));
  }
  std::lock_guard lock(cache_mutex_);
  return value_cache_.emplace(w, std::move(v)).first->second;
}

AlgebraElement PBWData::evaluate(const SuperCombination& c) const {
  AlgebraElement out;
  for (const auto& [t, k] : c) out += k * algebra().multiply(AlgebraElement::group(t.group), evaluate(t.word));
  return out;
}

SuperCombination PBWData::decompose(const AlgebraElement& a) const {
  const AlgebraElement n = reduction_->nf(a);
  const std::size_t rank = algebra().rank();
  std::map<GroupElement, std::map<DegreeVector, Table::Vec, GammaLess>> parts;
  for (const auto& [m, c] : n.terms()) parts[m.group][constitution(m.word, rank)].emplace(m.word, c);
  SuperCombination out;
  for (auto& [g, by_degree] : parts)
    for (auto& [gamma, vec] : by_degree) {
      if (total_degree(gamma) == 0) {
        add_to(out, SuperTerm{SuperWord{gamma, {}}, g}, vec.begin()->second);
        continue;
      }
      auto it = tables_.find(gamma);
      if (it == tables_.end()) throw EngineFailure("no decomposition table for constitution " + render_degree(gamma));
      const auto coeffs = it->second.reduce(vec);
      if (!vec.empty())
        throw EngineFailure("decomposition in constitution " + render_degree(gamma) + " left a remainder");
      for (const auto& [label, c] : coeffs) {
        SuperWord w{gamma, {}};
        for (int id : label.letters) w.letters.push_back(remap_.at(static_cast<std::size_t>(id)));
        add_to(out, SuperTerm{std::move(w), g}, c);
      }
    }
  return out;
}

std::string PBWData::render(const SuperWord& w) const {
  return render_runs(w, [&](int i) {
    return render_superletter(algebra().letters(), letters_.at(static_cast<std::size_t>(i)).letter.word);
  });
}

std::string PBWData::render(const SuperCombination& c) const {
  return render_combination(algebra(), c, [&](const SuperWord& w) { return render(w); });
}

std::shared_ptr<const PBWData> hard_superletters(std::shared_ptr<const ReductionSystem> r) {
  return PBWData::compute(std::move(r));
}

SuperCombination decompose_super(const AlgebraElement& a, const PBWData& data) { return data.decompose(a); }

SuperTensor decompose_tensor(const TensorElement& t, const PBWData& data) {
  if (t.arity() != 2) throw ContractViolation("decompose_tensor: arity must be 2");
  SuperTensor out;
  for (const auto& [key, c] : t.terms()) {
    const auto left = data.decompose(AlgebraElement::term(Scalar(1), key[0].group, key[0].word));
    const auto right = data.decompose(AlgebraElement::term(Scalar(1), key[1].group, key[1].word));
    for (const auto& [l, cl] : left)
      for (const auto& [rt, cr] : right) {
        const Scalar k = c * cl * cr;
        auto [it, inserted] = out.try_emplace({l, rt}, k);
        if (inserted) continue;
        it->second += k;
        if (it->second.is_zero()) out.erase(it);
      }
  }
  return out;
}

// ---------------------------------------------------------------- P_T

std::shared_ptr<const PTData> PTData::build(std::shared_ptr<const PBWData> data, const std::vector<ThinElement>& T) {
  std::shared_ptr<PTData> pt(new PTData(data));
  const auto& hard = data->letters();
  std::map<int, std::pair<unsigned, AlgebraElement>> thin;
  for (const ThinElement& t : T) {
    if (t.letter < 0 || static_cast<std::size_t>(t.letter) >= hard.size())
      throw ContractViolation("thin element keyed by an unknown hard letter");
    const std::string name = render_superletter(data->algebra().letters(), hard[static_cast<std::size_t>(t.letter)].letter.word);
    if (thin.count(t.letter)) throw ValidationError("two thin elements for " + name);
    AlgebraElement v = data->reduction().nf(t.element);
    const SuperCombination dec = data->decompose(v);
    if (dec.empty()) throw ValidationError("thin element for " + name + " is zero");
    const auto& [lead, c] = *dec.rbegin();
    const bool pure = std::all_of(lead.word.letters.begin(), lead.word.letters.end(), [&](int i) { return i == t.letter; });
    if (!lead.group.is_identity() || !pure || lead.word.letters.empty() || !c.is_one())
      throw ValidationError("not a thin element for " + name + ": leading term is " +
                                data->render(SuperCombination{{lead, c}}),
                            data->algebra().render(v));
    const auto m = static_cast<unsigned>(lead.word.letters.size());
    const Height& h = hard[static_cast<std::size_t>(t.letter)].height;
    if (h.is_finite() && h.value % m != 0)
      throw ValidationError("not a thin element for " + name + ": power " + std::to_string(m) +
                            " does not divide the height " + h.to_string());
    thin.emplace(t.letter, std::pair{m, std::move(v)});
  }

  for (std::size_t i = 0; i < hard.size(); ++i) {
    const int base = static_cast<int>(i);
    const HardLetter& l = hard[i];
    auto it = thin.find(base);
    if (it == thin.end()) {
      pt->plain_of_base_[base] = static_cast<int>(pt->letters_.size());
      pt->letters_.push_back(PTLetter{base, 0, data->letter_value(base), l.degree, l.height});
      continue;
    }
    const auto& [m, value] = it->second;
    Height hc = l.height;
    if (m > 1 && hc.is_finite()) hc.value /= m;
    pt->thin_of_base_[base] = static_cast<int>(pt->letters_.size());
    pt->letters_.push_back(PTLetter{base, m, value, static_cast<int>(m) * l.degree, hc});
    if (m > 1) {
      pt->plain_of_base_[base] = static_cast<int>(pt->letters_.size());
      pt->letters_.push_back(PTLetter{base, 0, data->letter_value(base), l.degree, Height::finite(m)});
    }
  }
  return pt;
}

std::optional<int> PTData::thin_index(int base) const {
  if (auto it = thin_of_base_.find(base); it != thin_of_base_.end()) return it->second;
  return std::nullopt;
}

AlgebraElement PTData::evaluate(const SuperWord& w) const {
  AlgebraElement v(1);
  for (int i : w.letters) v = data_->reduction().multiply(v, letters_.at(static_cast<std::size_t>(i)).value);
  return v;
}

AlgebraElement PTData::evaluate(const SuperCombination& c) const {
  const Algebra& alg = data_->algebra();
  AlgebraElement out;
  for (const auto& [t, k] : c) out += k * alg.multiply(AlgebraElement::group(t.group), evaluate(t.word));
  return out;
}

SuperWord PTData::convert_leading(const SuperWord& w) const {
  SuperWord out{w.degree, {}};
  for (auto [u, s] : runs(w)) {
    auto t = thin_of_base_.find(u);
    if (t == thin_of_base_.end()) {
      out.letters.insert(out.letters.end(), s, plain_of_base_.at(u));
      continue;
    }
    const unsigned m = letters_[static_cast<std::size_t>(t->second)].m;
    out.letters.insert(out.letters.end(), s / m, t->second);
    if (s % m) out.letters.insert(out.letters.end(), s % m, plain_of_base_.at(u));
  }
  return out;
}

const SuperCombination& PTData::expansion(const SuperWord& w) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = expansion_cache_.find(w); it != expansion_cache_.end()) return it->second;
  }
  SuperCombination e = data_->decompose(evaluate(w));
  std::lock_guard lock(cache_mutex_);
  return expansion_cache_.emplace(w, std::move(e)).first->second;
}

SuperCombination PTData::decompose(const AlgebraElement& a) const {
  SuperCombination rest = data_->decompose(a), out;
  while (!rest.empty()) {
    const auto [lead, c] = *rest.rbegin();
    const SuperWord p = convert_leading(lead.word);
    const SuperCombination& e = expansion(p);
    for (const auto& [t, k] : e) {
      const auto cmp = compare(t.word, lead.word);
      if (cmp > 0 || (cmp == 0 && !(t.group.is_identity() && k.is_one())))
        throw EngineFailure("leading term of P_T word " + render(p) + " is not " + data_->render(lead.word));
    }
    if (e.empty() || compare(e.rbegin()->first.word, lead.word) != 0)
      throw EngineFailure("leading term of P_T word " + render(p) + " is not " + data_->render(lead.word));
    for (const auto& [t, k] : e) add_to(rest, SuperTerm{t.word, lead.group * t.group}, -c * k);
    add_to(out, SuperTerm{p, lead.group}, c);
  }
  return out;
}

std::string PTData::render_letter(int i) const {
  const PTLetter& l = letters_.at(static_cast<std::size_t>(i));
  const std::string base =
      render_superletter(data_->algebra().letters(), data_->letters().at(static_cast<std::size_t>(l.base)).letter.word);
  if (!l.is_thin()) return base;
  return "c(" + base + (l.m > 1 ? "^" + std::to_string(l.m) : "") + ")";
}

std::string PTData::render(const SuperWord& w) const {
  return render_runs(w, [&](int i) { return render_letter(i); });
}

std::string PTData::render(const SuperCombination& c) const {
  return render_combination(data_->algebra(), c, [&](const SuperWord& w) { return render(w); });
}

std::shared_ptr<const PTData> build_PT(std::shared_ptr<const PBWData> data, const std::vector<ThinElement>& T) {
  return PTData::build(std::move(data), T);
}

SuperCombination decompose_PT(const AlgebraElement& a, const PTData& pt) { return pt.decompose(a); }

}  // namespace skewpbw
