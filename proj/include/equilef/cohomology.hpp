#pragma once

// Cohomology of simplicial G-complexes and their locally closed strata with
// coefficients in a G-lattice (constant sheaf, diagonal action). A stratum
// S = A \ B with A, B subcomplexes is modelled by the relative cochains
// C^*(A, B), i.e. cochains supported on the open simplices of S; on a
// finite complex this is compactly supported cohomology of S.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "equilef/char_theory.hpp"
#include "equilef/error.hpp"
#include "equilef/finite_group.hpp"
#include "equilef/gcomplex.hpp"
#include "equilef/matrix.hpp"

namespace equilef {

// Free Z-module of finite rank with a G-action by integer matrices.
class GLattice {
 public:
  // Validates that every generator matrix is invertible over Z and that the
  // extension along generator words respects every group relation.
  static GLattice from_generators(const GroupPtr& group, std::size_t rank, std::vector<IntMatrix> generators) {
    if (generators.size() != group->generator_count())
      throw InputError("lattice/action", "expected matrices for " + std::to_string(group->generator_count()) +
                                             " generators, got " + std::to_string(generators.size()));
    for (std::size_t s = 0; s < generators.size(); ++s) {
      const auto& m = generators[s];
      if (m.rows() != rank || m.cols() != rank)
        throw InputError("lattice/action/" + std::to_string(s), "matrix must be " + std::to_string(rank) + "x" +
                                                                    std::to_string(rank));
      const Rational det = determinant(to_rational(m));
      if (det != 1 && det != -1)
        throw InputError("lattice/action/" + std::to_string(s), "lattice generator not invertible over integers");
    }
    GLattice l;
    l.group_ = group;
    l.rank_ = rank;
    l.elements_ = group->extend_from_generators<IntMatrix>(generators, IntMatrix::identity(rank),
                                                           [](const IntMatrix& a, const IntMatrix& b) { return a * b; });
    if (auto bad = group->find_relation_violation(l.elements_, [](const IntMatrix& a, const IntMatrix& b) { return a * b; }))
      throw InputError("lattice/action", "lattice action violates the group relation g" + std::to_string(bad->first) +
                                             " * g" + std::to_string(bad->second) + " = g" +
                                             std::to_string(group->mul(bad->first, bad->second)));
    l.generators_ = std::move(generators);
    return l;
  }

  // Trivial action on Z^rank. Does not need generator words.
  static GLattice trivial(const GroupPtr& group, std::size_t rank = 1) {
    GLattice l;
    l.group_ = group;
    l.rank_ = rank;
    l.elements_.assign(group->order(), IntMatrix::identity(rank));
    l.generators_.assign(group->generator_count(), IntMatrix::identity(rank));
    return l;
  }

  // Rank one, generator s acting by signs[s] ∈ {±1}.
  static GLattice sign(const GroupPtr& group, const std::vector<int>& signs) {
    std::vector<IntMatrix> gens;
    for (int s : signs) {
      IntMatrix m(1, 1);
      m(0, 0) = s;
      gens.push_back(std::move(m));
    }
    return from_generators(group, 1, std::move(gens));
  }

  // Z[G] with left multiplication.
  static GLattice regular(const GroupPtr& group) {
    const std::size_t n = group->order();
    GLattice l;
    l.group_ = group;
    l.rank_ = n;
    l.elements_.assign(n, IntMatrix(n, n));
    for (Element g = 0; g < n; ++g)
      for (Element x = 0; x < n; ++x) l.elements_[g](group->mul(g, x), x) = 1;
    if (group->has_words())
      for (auto s : group->words().generators) l.generators_.push_back(l.elements_[s]);
    return l;
  }

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const IntMatrix& matrix(Element g) const { return elements_.at(g); }
  const std::vector<IntMatrix>& generator_matrices() const noexcept { return generators_; }

  long long trace(Element g) const {
    long long t = 0;
    for (std::size_t i = 0; i < rank_; ++i) t += elements_[g](i, i);
    return t;
  }

  VirtualCharacter character() const {
    VirtualCharacter v(group_);
    for (std::size_t c = 0; c < group_->class_count(); ++c)
      v.at_class(c) = Rational(Integer(static_cast<long>(trace(group_->classes()[c].representative))));
    return v;
  }

  bool is_trivial() const {
    for (const auto& m : elements_)
      if (!(m == IntMatrix::identity(rank_))) return false;
    return true;
  }

 private:
  GroupPtr group_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> generators_;
  std::vector<IntMatrix> elements_;
};

// ---------------------------------------------------------------------------

struct Coefficients {
  enum class Kind { rationals, integers, prime };
  Kind kind = Kind::rationals;
  std::uint64_t prime = 0;

  static Coefficients rationals() { return {Kind::rationals, 0}; }
  static Coefficients integers() { return {Kind::integers, 0}; }
  static Coefficients modulo(std::uint64_t p) {
    if (!is_prime(p)) throw InputError("coefficients", std::to_string(p) + " is not prime");
    return {Kind::prime, p};
  }
  std::string name() const {
    switch (kind) {
      case Kind::rationals: return "Q";
      case Kind::integers: return "Z";
      case Kind::prime: return "F" + std::to_string(prime);
    }
    return "?";
  }
};

class CochainComplex {
 public:
  CochainComplex(Stratum stratum, GLattice lattice, Coefficients coefficients)
      : stratum_(std::move(stratum)), lattice_(std::move(lattice)), coefficients_(coefficients) {
    if (stratum_.complex->group() != lattice_.group())
      throw InputError("cochain_complex", "lattice and complex live on different groups");
    if (coefficients_.kind == Coefficients::Kind::prime && !is_prime(coefficients_.prime))
      throw InputError("cochain_complex", "characteristic " + std::to_string(coefficients_.prime) + " is not prime");
    const auto& x = *stratum_.complex;
    const std::size_t r = lattice_.rank();
    position_.resize(x.levels());
    for (std::size_t d = 0; d < x.levels(); ++d) {
      position_[d].assign(x.simplex_count(d), -1);
      for (std::size_t k = 0; k < stratum_.count(d); ++k) position_[d][stratum_.open_simplices[d][k]] = static_cast<long>(k);
    }
    differential_.resize(x.levels());
    for (std::size_t q = 0; q < x.levels(); ++q) {
      IntMatrix d(dimension(q + 1), dimension(q));
      if (q + 1 < x.levels())
        for (std::size_t k = 0; k < stratum_.count(q + 1); ++k) {
          const auto tau = stratum_.open_simplices[q + 1][k];
          const auto& faces = x.faces(q + 1, tau);
          for (std::size_t j = 0; j < faces.size(); ++j) {
            const long pos = position_[q][faces[j]];
            if (pos < 0) continue;
            const long long sign = (j % 2) ? -1 : 1;
            for (std::size_t a = 0; a < r; ++a) d(k * r + a, static_cast<std::size_t>(pos) * r + a) += sign;
          }
        }
      differential_[q] = std::move(d);
    }
  }

  const Stratum& stratum() const noexcept { return stratum_; }
  const GLattice& lattice() const noexcept { return lattice_; }
  Coefficients coefficients() const noexcept { return coefficients_; }
  std::size_t degrees() const noexcept { return differential_.size(); }

  std::size_t dimension(std::size_t q) const { return stratum_.count(q) * lattice_.rank(); }

  // d_q : C^q → C^{q+1} (rows index C^{q+1}).
  const IntMatrix& differential(std::size_t q) const { return differential_.at(q); }
  // d_{q-1} : C^{q-1} → C^q, the zero map out of C^{-1} = 0 for q = 0.
  IntMatrix incoming(std::size_t q) const { return q == 0 ? IntMatrix(dimension(0), 0) : differential_[q - 1]; }

  // Matrix of g on C^q: σ* ⊗ e_a ↦ ε(g, σ) (gσ)* ⊗ ρ(g) e_a.
  IntMatrix automorphism(std::size_t q, Element g) const {
    if (!stratum_.invariant_under(g))
      throw InputError("cohomology", "stratum is not invariant under element " + std::to_string(g));
    const auto& x = *stratum_.complex;
    const std::size_t r = lattice_.rank();
    const auto& rho = lattice_.matrix(g);
    IntMatrix m(dimension(q), dimension(q));
    for (std::size_t k = 0; k < stratum_.count(q); ++k) {
      const auto img = x.image(g, q, stratum_.open_simplices[q][k]);
      const auto to = static_cast<std::size_t>(position_[q][img.index]);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          if (rho(b, a) != 0) m(to * r + b, k * r + a) = img.sign * rho(b, a);
    }
    return m;
  }

 private:
  Stratum stratum_;
  GLattice lattice_;
  Coefficients coefficients_;
  std::vector<std::vector<long>> position_;
  std::vector<IntMatrix> differential_;
};

inline CochainComplex cochain_complex(const Stratum& s, const GLattice& l, Coefficients c = Coefficients::rationals()) {
  return CochainComplex(s, l, c);
}

// Rational cohomology with a chosen complement of B^q in Z^q in each
// degree, so traces of many automorphisms can be read off cheaply.
class RationalCohomology {
 public:
  // Keeps a pointer to `c`, which must outlive this object.
  explicit RationalCohomology(CochainComplex&&) = delete;
  explicit RationalCohomology(const CochainComplex& c) : complex_(&c) {
    degrees_.resize(c.degrees());
    for (std::size_t q = 0; q < c.degrees(); ++q) {
      auto& deg = degrees_[q];
      const std::size_t n = c.dimension(q);
      const auto kernel = kernel_basis(to_rational(c.differential(q)));
      const QMatrix in = to_rational(c.incoming(q));
      std::vector<std::vector<Rational>> basis;
      for (auto j : independent_columns(in)) basis.push_back(column(in, j));
      deg.boundary_rank = basis.size();
      std::vector<std::vector<Rational>> stacked = basis;
      stacked.insert(stacked.end(), kernel.begin(), kernel.end());
      for (auto j : independent_columns(from_columns(n, stacked)))
        if (j >= deg.boundary_rank) deg.complement.push_back(stacked[j]);
      if (deg.complement.empty()) continue;
      basis.insert(basis.end(), deg.complement.begin(), deg.complement.end());
      deg.left_inverse = left_inverse(from_columns(n, basis));
    }
  }

  std::vector<std::size_t> dimensions() const {
    std::vector<std::size_t> dims;
    for (const auto& d : degrees_) dims.push_back(d.complement.size());
    return dims;
  }

  // tr(g | H^q) for every q.
  std::vector<Rational> traces(Element g) const {
    std::vector<Rational> out;
    for (std::size_t q = 0; q < degrees_.size(); ++q) {
      const auto& deg = degrees_[q];
      Rational tr;
      if (!deg.complement.empty()) {
        const IntMatrix a = complex_->automorphism(q, g);
        const std::size_t n = a.rows();
        for (std::size_t i = 0; i < deg.complement.size(); ++i) {
          const auto& z = deg.complement[i];
          std::vector<Rational> y(n);
          for (std::size_t row = 0; row < n; ++row)
            for (std::size_t col = 0; col < n; ++col)
              if (a(row, col) != 0 && sgn(z[col]) != 0) y[row] += Rational(Integer(static_cast<long>(a(row, col)))) * z[col];
          const std::size_t coord = deg.boundary_rank + i;
          for (std::size_t j = 0; j < n; ++j)
            if (sgn(y[j]) != 0) tr += deg.left_inverse(coord, j) * y[j];
        }
      }
      out.push_back(tr);
    }
    return out;
  }

  Rational lefschetz(Element g) const {
    Rational sum;
    const auto t = traces(g);
    for (std::size_t q = 0; q < t.size(); ++q) sum += (q % 2 ? -1 : 1) * t[q];
    return sum;
  }

 private:
  struct Degree {
    std::size_t boundary_rank = 0;
    std::vector<std::vector<Rational>> complement;  // lifts of a basis of H^q
    QMatrix left_inverse;                           // of [B | complement]
  };
  const CochainComplex* complex_;
  std::vector<Degree> degrees_;
};

struct CohomologySummary {
  Coefficients coefficients;
  std::vector<std::size_t> cochain_dimensions;
  std::vector<std::size_t> dimensions;  // over the field; Betti numbers b_i for Z
  std::optional<Element> automorphism;
  std::vector<Rational> traces;              // tr(g | H^q ⊗ Q) when requested
  std::vector<std::vector<Integer>> torsion;  // Z only: elementary divisors > 1 of H^q

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t q = 0; q < dimensions.size(); ++q) chi += (q % 2 ? -1L : 1L) * static_cast<long>(dimensions[q]);
    return chi;
  }
  long chain_euler_characteristic() const {
    long chi = 0;
    for (std::size_t q = 0; q < cochain_dimensions.size(); ++q)
      chi += (q % 2 ? -1L : 1L) * static_cast<long>(cochain_dimensions[q]);
    return chi;
  }
  // r_q: dimension over F_p of the elements of order p in the torsion of H^q.
  std::size_t p_torsion_rank(std::size_t q, std::uint64_t p) const {
    if (q >= torsion.size()) return 0;
    std::size_t r = 0;
    for (const auto& d : torsion[q])
      if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++r;
    return r;
  }
};

// Over Q, F_p: dimensions (and traces of `aut` over Q). Over Z: Betti
// numbers and torsion via Smith normal form.
inline CohomologySummary cohomology(const CochainComplex& c, std::optional<Element> aut = std::nullopt) {
  CohomologySummary s;
  s.coefficients = c.coefficients();
  s.automorphism = aut;
  for (std::size_t q = 0; q < c.degrees(); ++q) s.cochain_dimensions.push_back(c.dimension(q));
  switch (c.coefficients().kind) {
    case Coefficients::Kind::rationals: {
      RationalCohomology h(c);
      s.dimensions = h.dimensions();
      if (aut) s.traces = h.traces(*aut);
      break;
    }
    case Coefficients::Kind::prime: {
      if (aut) throw InputError("cohomology", "traces are computed over the rationals only");
      std::vector<std::size_t> ranks;
      for (std::size_t q = 0; q < c.degrees(); ++q) ranks.push_back(rank_mod(c.differential(q), c.coefficients().prime));
      for (std::size_t q = 0; q < c.degrees(); ++q)
        s.dimensions.push_back(c.dimension(q) - ranks[q] - (q ? ranks[q - 1] : 0));
      break;
    }
    case Coefficients::Kind::integers: {
      if (aut) throw InputError("cohomology", "traces are computed over the rationals only");
      std::vector<std::vector<Integer>> divisors;
      for (std::size_t q = 0; q < c.degrees(); ++q) divisors.push_back(elementary_divisors(to_integer(c.differential(q))));
      for (std::size_t q = 0; q < c.degrees(); ++q) {
        const std::size_t in = q ? divisors[q - 1].size() : 0;
        s.dimensions.push_back(c.dimension(q) - divisors[q].size() - in);
        std::vector<Integer> tors;
        if (q)
          for (const auto& d : divisors[q - 1])
            if (d > 1) tors.push_back(d);
        s.torsion.push_back(std::move(tors));
      }
      break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

inline Rational checked_integer(Rational v, const char* what) {
  if (!is_integer(v)) throw InvariantViolation(std::string(what) + " is not an integer: " + v.get_str());
  return v;
}

// Σ_j (-1)^j tr(g | H^j(S; L) ⊗ Q).
inline Rational lefschetz_number(const Stratum& s, Element g, const GLattice& l) {
  const auto c = cochain_complex(s, l);
  return checked_integer(RationalCohomology(c).lefschetz(g), "Lefschetz number");
}

inline Rational lefschetz_number(const ComplexPtr& x, Element g, const GLattice& l) {
  return lefschetz_number(whole_complex(x), g, l);
}

// Alternating sum of traces of g on the cochain groups themselves, read off
// the simplex action directly.
inline Rational hopf_trace(const Stratum& s, Element g, const GLattice& l) {
  if (!s.invariant_under(g)) throw InputError("hopf_trace", "stratum is not invariant under element " + std::to_string(g));
  const auto& x = *s.complex;
  long long sum = 0;
  for (std::size_t d = 0; d < s.open_simplices.size(); ++d)
    for (auto i : s.open_simplices[d]) {
      const auto img = x.image(g, d, i);
      if (img.index == i) sum += (d % 2 ? -1 : 1) * img.sign;
    }
  return Rational(Integer(static_cast<long>(sum * l.trace(g))));
}

inline Rational hopf_trace(const ComplexPtr& x, Element g, const GLattice& l) { return hopf_trace(whole_complex(x), g, l); }

namespace detail {

inline VirtualCharacter lefschetz_character(const Stratum& y, const GroupPtr& local, const std::vector<Element>& to_parent,
                                            const GLattice& l, const CharacterTable* table) {
  for (auto g : to_parent)
    if (!y.invariant_under(g))
      throw InputError("equivariant_euler_characteristic", "acting group does not preserve the stratum");
  const auto c = cochain_complex(y, l);
  RationalCohomology h(c);
  VirtualCharacter v(local);
  for (std::size_t k = 0; k < local->class_count(); ++k)
    v.at_class(k) = checked_integer(h.lefschetz(to_parent[local->classes()[k].representative]), "Lefschetz number");
  std::optional<CharacterTable> own;
  if (!table) {
    own = character_table(local);
    table = &*own;
  }
  if (!is_integral(v, *table)) throw InvariantViolation("equivariant Euler characteristic is not a virtual character");
  return v;
}

}  // namespace detail

// h ↦ L(h, Y; L) as a virtual character of the acting subgroup; checked to
// be an integral combination of irreducible characters.
inline VirtualCharacter equivariant_euler_characteristic(const Stratum& y, const Subgroup& acting, const GLattice& l,
                                                         const CharacterTable* table = nullptr) {
  return detail::lefschetz_character(y, acting.as_group(), acting.members(), l, table);
}

// The same with the whole group acting, as a character of G itself.
inline VirtualCharacter equivariant_euler_characteristic(const Stratum& y, const GLattice& l,
                                                         const CharacterTable* table = nullptr) {
  const auto& g = y.complex->group();
  std::vector<Element> all(g->order());
  std::iota(all.begin(), all.end(), 0u);
  return detail::lefschetz_character(y, g, all, l, table);
}

// Dimensions of the cohomology of the G-invariant rational cochains of X
// (invariants taken degreewise through the averaging idempotent).
inline std::vector<std::size_t> invariant_cohomology(const ComplexPtr& x, const GLattice& l) {
  const auto c = cochain_complex(whole_complex(x), l);
  const auto& g = *x->group();
  const Rational scale(Integer(1), Integer(static_cast<unsigned long>(g.order())));
  std::vector<QMatrix> invariants;
  for (std::size_t q = 0; q < c.degrees(); ++q) {
    const std::size_t n = c.dimension(q);
    QMatrix avg(n, n);
    for (Element e = 0; e < g.order(); ++e) {
      const auto a = c.automorphism(q, e);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (a(i, j) != 0) avg(i, j) += Rational(Integer(static_cast<long>(a(i, j))));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(avg(i, j)) != 0) avg(i, j) *= scale;
    std::vector<std::vector<Rational>> cols;
    for (auto j : independent_columns(avg)) cols.push_back(column(avg, j));
    invariants.push_back(from_columns(n, cols));
  }
  std::vector<std::size_t> ranks;
  for (std::size_t q = 0; q < c.degrees(); ++q) {
    if (invariants[q].cols() == 0 || c.differential(q).rows() == 0) {
      ranks.push_back(0);
      continue;
    }
    ranks.push_back(rank(to_rational(c.differential(q)) * invariants[q]));
  }
  std::vector<std::size_t> dims;
  for (std::size_t q = 0; q < c.degrees(); ++q) dims.push_back(invariants[q].cols() - ranks[q] - (q ? ranks[q - 1] : 0));
  return dims;
}

inline long alternating_sum(const std::vector<std::size_t>& dims) {
  long chi = 0;
  for (std::size_t q = 0; q < dims.size(); ++q) chi += (q % 2 ? -1L : 1L) * static_cast<long>(dims[q]);
  return chi;
}

struct ModpEuler {
  std::uint64_t prime;
  std::vector<std::size_t> dimensions;
  long euler_characteristic;
};

inline ModpEuler modp_euler_characteristic(const ComplexPtr& x, const GLattice& l, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("modp_euler_characteristic", std::to_string(p) + " is not prime");
  const auto s = cohomology(cochain_complex(whole_complex(x), l, Coefficients::modulo(p)));
  return {p, s.dimensions, s.euler_characteristic()};
}

}  // namespace equilef
