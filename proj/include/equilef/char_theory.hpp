#pragma once

// Character theory over Q: complex irreducible characters with exact
// cyclotomic values, their Galois orbits (the Q-irreducible characters up
// to Schur index), class-function algebra, induction and restriction.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "equilef/cyclotomic.hpp"
#include "equilef/error.hpp"
#include "equilef/finite_group.hpp"
#include "equilef/matrix.hpp"
#include "equilef/rational.hpp"

namespace equilef {

// Rational-valued class function; the carrier of classes in G0(Q[G]).
class VirtualCharacter {
 public:
  VirtualCharacter() = default;
  explicit VirtualCharacter(GroupPtr group)
      : group_(std::move(group)), values_(group_->class_count()) {}
  VirtualCharacter(GroupPtr group, std::vector<Rational> values)
      : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_->class_count())
      throw std::invalid_argument("virtual character: one value per class required");
  }

  static VirtualCharacter trivial(const GroupPtr& g) {
    return VirtualCharacter(g, std::vector<Rational>(g->class_count(), Rational(1)));
  }
  static VirtualCharacter regular(const GroupPtr& g) {
    VirtualCharacter v(g);
    v.values_[0] = Rational(Integer(static_cast<unsigned long>(g->order())));
    return v;
  }

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& at_class(std::size_t c) const { return values_.at(c); }
  Rational& at_class(std::size_t c) { return values_.at(c); }
  const Rational& at(Element g) const {
    if (g >= group_->order()) throw std::out_of_range("trace_at: element out of range");
    return values_[group_->class_of(g)];
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  VirtualCharacter& operator+=(const VirtualCharacter& o) {
    same_group(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  VirtualCharacter& operator-=(const VirtualCharacter& o) {
    same_group(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  VirtualCharacter& operator*=(const Rational& q) {
    for (auto& v : values_) v *= q;
    return *this;
  }
  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  friend VirtualCharacter operator*(const Rational& q, VirtualCharacter a) { return a *= q; }
  friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) {
    return a.group_ == b.group_ && a.values_ == b.values_;
  }

 private:
  void same_group(const VirtualCharacter& o) const {
    if (o.group_ != group_) throw std::invalid_argument("virtual character: group mismatch");
  }

  GroupPtr group_;
  std::vector<Rational> values_;
};

inline Rational trace_at(const VirtualCharacter& v, Element g) { return v.at(g); }

// Cyclotomic-valued class function.
struct ClassFunction {
  GroupPtr group;
  std::vector<Cyclotomic> values;  // one per element class

  static ClassFunction from(const VirtualCharacter& v) {
    ClassFunction f{v.group(), {}};
    for (const auto& q : v.values()) f.values.emplace_back(1, q);
    return f;
  }
};

inline Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw std::invalid_argument("inner product: group mismatch");
  const auto& g = *a.group;
  Cyclotomic sum;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    Cyclotomic term = a.values[c] * b.values[c].conj();
    term *= Rational(Integer(static_cast<unsigned long>(g.class_size(c))));
    sum += term;
  }
  sum *= Rational(Integer(1), Integer(static_cast<unsigned long>(g.order())));
  return sum;
}

inline Rational inner_product(const VirtualCharacter& a, const VirtualCharacter& b) {
  if (a.group() != b.group()) throw std::invalid_argument("inner product: group mismatch");
  const auto& g = *a.group();
  Rational sum;
  for (std::size_t c = 0; c < g.class_count(); ++c)
    sum += Rational(Integer(static_cast<unsigned long>(g.class_size(c)))) * a.at_class(c) * b.at_class(c);
  return sum / Rational(Integer(static_cast<unsigned long>(g.order())));
}

inline Cyclotomic inner_product(const VirtualCharacter& a, const ClassFunction& b) {
  return inner_product(ClassFunction::from(a), b);
}

// (ind f)(g) = (1/|H|) Σ_{x ∈ G, x⁻¹gx ∈ H} f(x⁻¹gx)
inline VirtualCharacter induce(const Subgroup& h, const VirtualCharacter& f) {
  if (f.group() != h.as_group()) throw std::invalid_argument("induce: character does not live on the subgroup");
  const auto& g = *h.parent();
  const auto& local = *h.as_group();
  VirtualCharacter out(h.parent());
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const Element rep = g.classes()[c].representative;
    Rational sum;
    for (Element x = 0; x < g.order(); ++x) {
      const Element y = g.mul(g.mul(g.inverse(x), rep), x);
      if (auto l = h.to_local(y)) sum += f.at_class(local.class_of(*l));
    }
    out.at_class(c) = sum / Rational(Integer(static_cast<unsigned long>(h.order())));
  }
  return out;
}

inline VirtualCharacter restrict(const VirtualCharacter& f, const Subgroup& h) {
  if (f.group() != h.parent()) throw std::invalid_argument("restrict: group mismatch");
  const auto& local = *h.as_group();
  VirtualCharacter out(h.as_group());
  for (std::size_t c = 0; c < local.class_count(); ++c)
    out.at_class(c) = f.at(h.to_parent(local.classes()[c].representative));
  return out;
}

// Character of the permutation action given by one permutation per
// element: number of fixed points.
inline VirtualCharacter permutation_character(const GroupPtr& g, const std::vector<Permutation>& action) {
  VirtualCharacter v(g);
  for (std::size_t c = 0; c < g->class_count(); ++c) {
    const auto& p = action.at(g->classes()[c].representative);
    long fixed = 0;
    for (std::size_t i = 0; i < p.size(); ++i) fixed += p[i] == i;
    v.at_class(c) = Rational(Integer(fixed));
  }
  return v;
}

// ---------------------------------------------------------------------------

struct CharacterTable {
  GroupPtr group;
  std::vector<ClassFunction> irreducibles;  // degrees ascending, trivial first
  std::vector<std::size_t> degrees;
  std::uint64_t prime = 0;  // modulus used for the eigenvector computation
};

namespace detail {

inline std::uint64_t primitive_root(std::uint64_t p) {
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t a = 2; a < p; ++a) {
    bool ok = true;
    for (auto f : factors)
      if (powmod(a, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return a;
  }
  return 1;  // p == 2
}

inline std::uint64_t dixon_prime(std::size_t order, std::size_t exponent) {
  constexpr std::uint64_t kBound = 1ull << 31;
  for (std::uint64_t p = exponent + 1; p < kBound; p += exponent)
    if (p * p > 4 * order && is_prime(p)) return p;
  throw InputError("character_table", "no prime p = 1 mod exponent below the search bound");
}

}  // namespace detail

// Complex irreducible characters by simultaneous diagonalisation of the
// class-multiplication matrices over F_p, p = 1 mod exp(G), followed by an
// exact lift of the eigenvalue multiplicities to cyclotomic values.
inline CharacterTable character_table(const GroupPtr& gp) {
  const Group& g = *gp;
  const std::size_t n = g.order();
  const std::size_t r = g.class_count();
  const std::size_t e = g.exponent();
  const std::uint64_t p = detail::dixon_prime(n, e);

  std::vector<std::size_t> inverse_class(r);
  for (std::size_t c = 0; c < r; ++c) inverse_class[c] = g.class_of(g.inverse(g.classes()[c].representative));

  // coeff[j](i, k) = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}, z_k the representative of C_k.
  std::vector<ModMatrix> coeff(r, ModMatrix(r, r));
  for (Element x = 0; x < n; ++x) {
    const std::size_t i = g.class_of(x);
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t j = g.class_of(g.mul(g.inverse(x), g.classes()[k].representative));
      coeff[j](i, k) += 1;
    }
  }
  for (auto& m : coeff)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) m(i, k) %= p;

  using Vec = std::vector<std::uint64_t>;
  std::vector<std::vector<Vec>> spaces(1);
  for (std::size_t i = 0; i < r; ++i) {
    Vec v(r, 0);
    v[i] = 1;
    spaces[0].push_back(std::move(v));
  }
  for (std::size_t j = 1; j < r; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
    std::vector<std::vector<Vec>> next;
    for (auto& w : spaces) {
      if (w.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      const std::size_t k = w.size();
      std::vector<Vec> image(k, Vec(r, 0));  // A_j w
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < r; ++i) {
          std::uint64_t s = 0;
          for (std::size_t t = 0; t < r; ++t) s = (s + mulmod(coeff[j](i, t), w[b][t], p)) % p;
          image[b][i] = s;
        }
      std::size_t found = 0;
      for (std::uint64_t lambda = 0; lambda < p && found < k; ++lambda) {
        ModMatrix m(r, k);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t b = 0; b < k; ++b) m(i, b) = (image[b][i] + p - mulmod(lambda, w[b][i], p)) % p;
        const auto ker = kernel_basis_mod(m, p);
        if (ker.empty()) continue;
        std::vector<Vec> eig;
        for (const auto& c : ker) {
          Vec v(r, 0);
          for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < r; ++i) v[i] = (v[i] + mulmod(c[b], w[b][i], p)) % p;
          eig.push_back(std::move(v));
        }
        found += eig.size();
        next.push_back(std::move(eig));
      }
      if (found != k) throw InvariantViolation("character_table: class algebra did not split");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw InvariantViolation("character_table: eigenspaces not one-dimensional");

  const std::uint64_t root = powmod(detail::primitive_root(p), (p - 1) / e, p);
  const std::uint64_t n_mod = n % p;
  CharacterTable table{gp, {}, {}, p};
  for (auto& s : spaces) {
    Vec omega = s[0];
    if (omega[0] == 0) throw InvariantViolation("character_table: eigenvector vanishes at identity");
    const std::uint64_t scale = invmod(omega[0], p);
    for (auto& x : omega) x = mulmod(x, scale, p);
    std::uint64_t norm = 0;
    for (std::size_t k = 0; k < r; ++k)
      norm = (norm + mulmod(mulmod(omega[k], omega[inverse_class[k]], p), invmod(g.class_size(k) % p, p), p)) % p;
    const std::uint64_t d2 = mulmod(n_mod, invmod(norm, p), p);
    std::size_t degree = 0;
    for (std::size_t d = 1; d * d <= n; ++d)
      if (mulmod(d, d, p) == d2) degree = d;
    if (degree == 0) throw InvariantViolation("character_table: no admissible degree");
    Vec chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = mulmod(mulmod(omega[k], degree % p, p), invmod(g.class_size(k) % p, p), p);

    ClassFunction f{gp, {}};
    for (std::size_t k = 0; k < r; ++k) {
      const Element x = g.classes()[k].representative;
      const std::size_t o = g.element_order(x);
      const std::uint64_t zo = powmod(root, e / o, p);
      const std::uint64_t o_inv = invmod(o % p, p);
      std::vector<Rational> exps(e);
      std::uint64_t total = 0;
      for (std::size_t l = 0; l < o; ++l) {
        std::uint64_t mu = 0;
        for (std::size_t m = 0; m < o; ++m) {
          const std::uint64_t z = powmod(zo, (o - (l * m) % o) % o, p);
          mu = (mu + mulmod(chi[g.class_of(g.power(x, static_cast<long long>(m)))], z, p)) % p;
        }
        mu = mulmod(mu, o_inv, p);
        total += mu;
        exps[l * (e / o)] = Rational(Integer(static_cast<unsigned long>(mu)));
      }
      if (total != degree) throw InvariantViolation("character_table: eigenvalue multiplicities do not lift");
      f.values.push_back(Cyclotomic::from_exponents(e, exps));
    }
    table.irreducibles.push_back(std::move(f));
    table.degrees.push_back(degree);
  }

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  auto is_trivial = [&](std::size_t i) {
    return std::all_of(table.irreducibles[i].values.begin(), table.irreducibles[i].values.end(),
                       [](const Cyclotomic& z) { return z == Cyclotomic(1, Rational(1)); });
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.degrees[a] != table.degrees[b]) return table.degrees[a] < table.degrees[b];
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    const auto& va = table.irreducibles[a].values;
    const auto& vb = table.irreducibles[b].values;
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end(), lex_less);
  });
  CharacterTable sorted{gp, {}, {}, p};
  for (auto i : order) {
    sorted.irreducibles.push_back(std::move(table.irreducibles[i]));
    sorted.degrees.push_back(table.degrees[i]);
  }
  return sorted;
}

// One Q-irreducible character up to Schur index: a Galois orbit of complex
// irreducibles and its (integer-valued) orbit sum.
struct RationalIrreducible {
  GroupPtr group;
  std::vector<std::size_t> orbit;  // indices into CharacterTable::irreducibles
  VirtualCharacter orbit_sum;
  std::size_t orbit_size() const { return orbit.size(); }
};

inline std::vector<std::size_t> galois_units(std::size_t exponent) {
  std::vector<std::size_t> units;
  for (std::size_t k = 1; k <= exponent; ++k)
    if (std::gcd(k, exponent) == 1) units.push_back(k);
  return units;
}

// Partition of the irreducibles into orbits of χ ↦ (g ↦ χ(g^k)).
inline std::vector<RationalIrreducible> rational_irreducibles(const CharacterTable& t) {
  const Group& g = *t.group;
  const std::size_t r = g.class_count();
  const auto units = galois_units(g.exponent());
  std::vector<char> used(t.irreducibles.size(), 0);
  std::vector<RationalIrreducible> out;
  for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
    if (used[i]) continue;
    std::set<std::size_t> orbit;
    for (auto k : units) {
      std::vector<Cyclotomic> twisted(r);
      for (std::size_t c = 0; c < r; ++c)
        twisted[c] = t.irreducibles[i].values[g.power_class(c, static_cast<long long>(k))];
      bool matched = false;
      for (std::size_t j = 0; j < t.irreducibles.size() && !matched; ++j)
        if (t.irreducibles[j].values == twisted) {
          orbit.insert(j);
          matched = true;
        }
      if (!matched) throw InvariantViolation("rational_irreducibles: Galois conjugate is not irreducible");
    }
    VirtualCharacter sum(t.group);
    for (std::size_t c = 0; c < r; ++c) {
      Cyclotomic s;
      for (auto j : orbit) s += t.irreducibles[j].values[c];
      if (!s.is_rational() || !is_integer(s.rational_value()))
        throw InvariantViolation("rational_irreducibles: orbit sum is not integral");
      sum.at_class(c) = s.rational_value();
    }
    for (auto j : orbit) used[j] = 1;
    out.push_back({t.group, std::vector<std::size_t>(orbit.begin(), orbit.end()), std::move(sum)});
  }
  return out;
}

// Number of classes of cyclic subgroups up to conjugacy (g ~ g^k, k a unit).
inline std::size_t rational_class_count(const Group& g) {
  const auto units = galois_units(g.exponent());
  std::vector<char> seen(g.class_count(), 0);
  std::size_t count = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    if (seen[c]) continue;
    ++count;
    for (auto k : units) seen[g.power_class(c, static_cast<long long>(k))] = 1;
  }
  return count;
}

// True iff every ⟨v, χ⟩ over the complex irreducibles is a rational integer.
inline bool is_integral(const VirtualCharacter& v, const CharacterTable& t) {
  if (v.group() != t.group) throw std::invalid_argument("is_integral: group mismatch");
  for (const auto& chi : t.irreducibles) {
    const Cyclotomic ip = inner_product(v, chi);
    if (!ip.is_rational() || !is_integer(ip.rational_value())) return false;
  }
  return true;
}

}  // namespace equilef
