#pragma once

// Finite groups as full multiplication tables, together with the
// subgroup-level combinatorics the equivariant Lefschetz formula is indexed
// by: subgroups, their conjugacy classes, normalizers and element classes.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "equilef/error.hpp"

namespace equilef {

using Element = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultMaxGroupOrder = 10000;

// Order bound for group closure; EQUILEF_MAX_GROUP_ORDER overrides it.
inline std::size_t max_group_order() {
  if (const char* env = std::getenv("EQUILEF_MAX_GROUP_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxGroupOrder;
}

inline bool is_permutation(std::span<const std::uint32_t> p) {
  std::vector<char> seen(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// (a ∘ b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

struct ElementClass {
  Element representative;
  std::vector<Element> members;  // sorted; representative is the least
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
 public:
  // Word data attached to groups that were generated: element i > 0 equals
  // generator[word_letter(i)] * word_parent(i), with word_parent(i) < i.
  struct Words {
    std::vector<Element> generators;
    std::vector<Element> parent;
    std::vector<std::size_t> letter;
  };

  // Validates associativity, identity 0 and inverses.
  static GroupPtr from_table(std::size_t order, std::vector<Element> table,
                             std::optional<Words> words = std::nullopt,
                             std::size_t degree = 0,
                             std::vector<Permutation> permutations = {},
                             bool check_associativity = true) {
    if (order == 0) throw InputError("group", "order must be positive");
    if (table.size() != order * order)
      throw InputError("group", "multiplication table has the wrong size");
    for (auto x : table)
      if (x >= order) throw InputError("group", "table entry out of range");
    auto g = std::shared_ptr<Group>(new Group());
    g->order_ = order;
    g->mul_ = std::move(table);
    for (Element a = 0; a < order; ++a)
      if (g->mul(0, a) != a || g->mul(a, 0) != a)
        throw InputError("group", "element 0 is not the identity");
    if (check_associativity)
      for (Element a = 0; a < order; ++a)
        for (Element b = 0; b < order; ++b)
          for (Element c = 0; c < order; ++c)
            if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
              throw InputError("group", "multiplication is not associative");
    g->inv_.assign(order, 0);
    for (Element a = 0; a < order; ++a) {
      bool found = false;
      for (Element b = 0; b < order && !found; ++b)
        if (g->mul(a, b) == 0 && g->mul(b, a) == 0) {
          g->inv_[a] = b;
          found = true;
        }
      if (!found) throw InputError("group", "element without inverse");
    }
    g->words_ = std::move(words);
    g->degree_ = degree;
    g->permutations_ = std::move(permutations);
    g->finish();
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return 0; }
  Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
  Element inverse(Element a) const { return inv_[a]; }
  Element conjugate(Element g, Element x) const {  // x g x^{-1}
    return mul(mul(x, g), inv_[x]);
  }
  Element power(Element a, long long k) const {
    const long long o = static_cast<long long>(element_order_[a]);
    long long e = ((k % o) + o) % o;
    Element r = 0;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::size_t element_order(Element a) const { return element_order_[a]; }
  std::size_t exponent() const noexcept { return exponent_; }
  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::vector<ElementClass>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  std::size_t class_of(Element a) const { return class_of_[a]; }
  std::size_t class_size(std::size_t c) const { return classes_[c].members.size(); }

  // Class of g^k for the representative of class c.
  std::size_t power_class(std::size_t c, long long k) const {
    return class_of(power(classes_[c].representative, k));
  }

  bool has_words() const noexcept { return words_.has_value(); }
  const Words& words() const {
    if (!words_) throw InputError("group", "group carries no generator words");
    return *words_;
  }
  std::size_t generator_count() const { return words_ ? words_->generators.size() : 0; }

  std::size_t degree() const noexcept { return degree_; }
  // Defining permutation of each element, when the group came from
  // permutations.
  const std::vector<Permutation>& permutations() const noexcept { return permutations_; }

  // Extends values on generators to all elements along the generator words:
  // value(s * x) = combine(value(s), value(x)).
  template <class T, class Combine>
  std::vector<T> extend_from_generators(std::span<const T> generator_values,
                                        const T& identity_value,
                                        Combine combine) const {
    const auto& w = words();
    if (generator_values.size() != w.generators.size())
      throw InputError("group", "one value per generator required");
    std::vector<T> values(order_, identity_value);
    for (Element i = 1; i < order_; ++i)
      values[i] = combine(generator_values[w.letter[i]], values[w.parent[i]]);
    return values;
  }

  // First pair (a, b) with value(ab) != combine(value(a), value(b)).
  template <class T, class Combine>
  std::optional<std::pair<Element, Element>> find_relation_violation(
      const std::vector<T>& values, Combine combine) const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b)
        if (!(values[mul(a, b)] == combine(values[a], values[b])))
          return std::make_pair(a, b);
    return std::nullopt;
  }

 private:
  Group() = default;

  void finish() {
    element_order_.assign(order_, 1);
    exponent_ = 1;
    for (Element a = 0; a < order_; ++a) {
      Element x = a;
      std::size_t o = 1;
      while (x != 0) {
        x = mul(x, a);
        ++o;
      }
      element_order_[a] = o;
      exponent_ = std::lcm(exponent_, o);
    }
    class_of_.assign(order_, static_cast<std::size_t>(-1));
    for (Element a = 0; a < order_; ++a) {
      if (class_of_[a] != static_cast<std::size_t>(-1)) continue;
      std::set<Element> members;
      for (Element x = 0; x < order_; ++x) members.insert(conjugate(a, x));
      const std::size_t idx = classes_.size();
      for (auto m : members) class_of_[m] = idx;
      classes_.push_back({a, std::vector<Element>(members.begin(), members.end())});
    }
  }

  std::size_t order_ = 0;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::vector<std::size_t> element_order_;
  std::size_t exponent_ = 1;
  std::vector<ElementClass> classes_;
  std::vector<std::size_t> class_of_;
  std::optional<Words> words_;
  std::size_t degree_ = 0;
  std::vector<Permutation> permutations_;
};

// Closure of the generators under composition. Elements are numbered in
// breadth-first order over generator words (generators tried in input
// order), so the identity is element 0.
inline GroupPtr group_from_permutations(std::size_t degree,
                                        const std::vector<Permutation>& generators,
                                        std::size_t order_bound = max_group_order()) {
  if (degree == 0) throw InputError("group/degree", "degree must be positive");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != degree || !is_permutation(generators[i]))
      throw InputError("group/generators/" + std::to_string(i),
                       "not a bijection on {0.." + std::to_string(degree - 1) + "}");
  }
  std::vector<Permutation> elements{identity_permutation(degree)};
  std::map<Permutation, Element> index{{elements[0], 0}};
  Group::Words words;
  words.parent.push_back(0);
  words.letter.push_back(0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Permutation y = compose(generators[s], elements[head]);
      if (index.count(y)) continue;
      if (elements.size() >= order_bound)
        throw InputError("group", "closure exceeds the order bound " + std::to_string(order_bound));
      index.emplace(y, static_cast<Element>(elements.size()));
      elements.push_back(std::move(y));
      words.parent.push_back(static_cast<Element>(head));
      words.letter.push_back(s);
    }
  }
  for (const auto& g : generators) words.generators.push_back(index.at(g));
  const std::size_t n = elements.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = index.at(compose(elements[a], elements[b]));
  return Group::from_table(n, std::move(table), std::move(words), degree, std::move(elements),
                           /*check_associativity=*/false);
}

inline GroupPtr trivial_group() { return group_from_permutations(1, {}); }

inline GroupPtr cyclic_group(std::size_t n) {
  Permutation r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>((i + 1) % n);
  return group_from_permutations(n, n > 1 ? std::vector<Permutation>{r} : std::vector<Permutation>{});
}

inline GroupPtr symmetric_group(std::size_t n) {
  if (n < 2) return trivial_group();
  Permutation t = identity_permutation(n);
  std::swap(t[0], t[1]);
  Permutation c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>((i + 1) % n);
  return group_from_permutations(n, {t, c});
}

// Symmetries of the n-gon on vertices 0..n-1 (order 2n).
inline GroupPtr dihedral_group(std::size_t n) {
  Permutation r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint32_t>((i + 1) % n);
    s[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  return group_from_permutations(n, {r, s});
}

inline const std::vector<ElementClass>& element_classes(const Group& g) { return g.classes(); }

// ---------------------------------------------------------------------------

class Subgroup {
 public:
  // `members` must be closed under the group law; checked.
  Subgroup(GroupPtr parent, std::vector<Element> members) : parent_(std::move(parent)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
    if (members_.empty() || members_[0] != 0)
      throw InputError("subgroup", "must contain the identity");
    local_.assign(parent_->order(), -1);
    for (std::size_t i = 0; i < members_.size(); ++i) local_[members_[i]] = static_cast<std::int32_t>(i);
    const std::size_t n = members_.size();
    std::vector<Element> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto prod = local_[parent_->mul(members_[a], members_[b])];
        if (prod < 0) throw InputError("subgroup", "member set is not closed");
        table[a * n + b] = static_cast<Element>(prod);
      }
    as_group_ = Group::from_table(n, std::move(table), std::nullopt, 0, {},
                                  /*check_associativity=*/false);
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Element g) const { return local_[g] >= 0; }
  std::optional<Element> to_local(Element g) const {
    if (local_[g] < 0) return std::nullopt;
    return static_cast<Element>(local_[g]);
  }
  Element to_parent(Element local) const { return members_[local]; }

  // The subgroup as a group in its own right; local element i is
  // members()[i].
  const GroupPtr& as_group() const noexcept { return as_group_; }

  bool is_subgroup_of(const Subgroup& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }
  // Canonical order: by order, then member list lexicographically.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members_ < b.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<Element> members_;
  std::vector<std::int32_t> local_;
  GroupPtr as_group_;
};

inline std::vector<Element> closure_members(const Group& g, std::span<const Element> generators) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> list{0};
  in[0] = 1;
  for (std::size_t head = 0; head < list.size(); ++head)
    for (auto s : generators) {
      const Element y = g.mul(list[head], s);
      if (!in[y]) {
        in[y] = 1;
        list.push_back(y);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

inline Subgroup generated_subgroup(const GroupPtr& g, std::span<const Element> generators) {
  return Subgroup(g, closure_members(*g, generators));
}

inline Subgroup cyclic_subgroup(const GroupPtr& g, Element x) {
  const Element gens[] = {x};
  return generated_subgroup(g, gens);
}

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Element> all(g->order());
  std::iota(all.begin(), all.end(), 0u);
  return Subgroup(g, std::move(all));
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

// x H x^{-1}
inline Subgroup conjugate(const Subgroup& h, Element x) {
  std::vector<Element> m;
  m.reserve(h.order());
  for (auto e : h.members()) m.push_back(h.parent()->conjugate(e, x));
  return Subgroup(h.parent(), std::move(m));
}

inline Subgroup normalizer(const GroupPtr& g, const Subgroup& h) {
  std::vector<Element> n;
  for (Element x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (auto e : h.members())
      if (!h.contains(g->conjugate(e, x))) {
        ok = false;
        break;
      }
    if (ok) n.push_back(x);
  }
  return Subgroup(g, std::move(n));
}

// Every subgroup exactly once, in canonical order. Built bottom-up: the
// cyclic subgroups, then repeated joins with cyclic subgroups until no new
// subgroup appears.
inline std::vector<Subgroup> subgroups(const GroupPtr& g) {
  std::set<std::vector<Element>> cyclic;
  for (Element x = 0; x < g->order(); ++x) {
    const Element gens[] = {x};
    cyclic.insert(closure_members(*g, gens));
  }
  std::set<std::vector<Element>> found(cyclic.begin(), cyclic.end());
  std::vector<std::vector<Element>> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& h : frontier)
      for (const auto& c : cyclic) {
        if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
        std::vector<Element> gens = h;
        gens.insert(gens.end(), c.begin(), c.end());
        auto j = closure_members(*g, gens);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& m : found) out.emplace_back(g, m);
  std::sort(out.begin(), out.end());
  return out;
}

struct SubgroupClass {
  Subgroup representative;        // lexicographically least member
  std::vector<Subgroup> members;  // canonical order
  std::size_t order() const { return representative.order(); }
};

inline std::vector<SubgroupClass> conjugacy_classes_of_subgroups(const GroupPtr& g) {
  const auto all = subgroups(g);
  std::vector<char> used(all.size(), 0);
  std::vector<SubgroupClass> classes;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (used[i]) continue;
    std::set<std::vector<Element>> orbit;
    for (Element x = 0; x < g->order(); ++x) orbit.insert(conjugate(all[i], x).members());
    std::vector<Subgroup> members;
    for (std::size_t j = i; j < all.size(); ++j)
      if (!used[j] && orbit.count(all[j].members())) {
        used[j] = 1;
        members.push_back(all[j]);
      }
    classes.push_back({members.front(), std::move(members)});
  }
  return classes;
}

inline std::string element_string(const Group& g, Element e) {
  if (g.permutations().empty()) return std::to_string(e);
  std::string s = "[";
  const auto& p = g.permutations()[e];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace equilef
