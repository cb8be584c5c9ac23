#pragma once

// Exact arithmetic in the cyclotomic field Q(ζ_e), elements stored in the
// power basis 1, ζ, ..., ζ^{φ(e)-1} reduced modulo the e-th cyclotomic
// polynomial. That normal form is unique, so equality is coefficientwise.

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "equilef/rational.hpp"

namespace equilef {

inline std::size_t euler_phi(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

inline std::vector<Integer> compute_cyclotomic_polynomial(std::size_t n) {
  // x^n - 1 divided by Φ_d for every proper divisor d of n.
  std::vector<Integer> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    std::vector<Integer> den = compute_cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<Integer> quot(num.size() - dd);
    for (std::size_t i = num.size(); i-- > dd;) {
      const Integer c = num[i];  // den is monic
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

}  // namespace detail

// Coefficients (constant term first) of Φ_n; cached, thread-safe.
inline const std::vector<Integer>& cyclotomic_polynomial(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Integer>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_cyclotomic_polynomial(n)).first;
  return it->second;
}

class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1) {}
  explicit Cyclotomic(std::size_t conductor)
      : conductor_(check(conductor)), coeffs_(euler_phi(conductor)) {}
  Cyclotomic(std::size_t conductor, const Rational& q) : Cyclotomic(conductor) { coeffs_[0] = q; }

  // Σ_i exponents[i] ζ_e^i for an arbitrary-length coefficient list.
  static Cyclotomic from_exponents(std::size_t conductor, const std::vector<Rational>& exponents) {
    Cyclotomic z(conductor);
    std::vector<Rational> full(conductor);
    for (std::size_t i = 0; i < exponents.size(); ++i) full[i % conductor] += exponents[i];
    z.reduce_into(full);
    return z;
  }

  static Cyclotomic root_of_unity(std::size_t conductor, std::size_t k) {
    std::vector<Rational> e(conductor);
    e[k % conductor] = 1;
    return from_exponents(conductor, e);
  }

  std::size_t conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (sgn(c) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (sgn(coeffs_[i]) != 0) return false;
    return true;
  }
  const Rational& rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return coeffs_[0];
  }

  // Same element viewed in Q(ζ_m) for a multiple m of the conductor.
  Cyclotomic to_conductor(std::size_t m) const {
    if (m % conductor_) throw std::invalid_argument("conductor must divide target");
    if (m == conductor_) return *this;
    const std::size_t step = m / conductor_;
    std::vector<Rational> e(m);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) e[i * step] = coeffs_[i];
    return from_exponents(m, e);
  }

  // ζ ↦ ζ^k, k coprime to the conductor.
  Cyclotomic galois(std::size_t k) const {
    if (std::gcd(k, conductor_) != 1) throw std::invalid_argument("galois: k not a unit");
    std::vector<Rational> e(conductor_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) e[(i * k) % conductor_] += coeffs_[i];
    return from_exponents(conductor_, e);
  }

  Cyclotomic conj() const { return galois(conductor_ - 1 == 0 ? 1 : conductor_ - 1); }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    align(o, [](Cyclotomic& a, const Cyclotomic& b) {
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    });
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    align(o, [](Cyclotomic& a, const Cyclotomic& b) {
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
    });
    return *this;
  }
  Cyclotomic& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    align(o, [](Cyclotomic& a, const Cyclotomic& b) {
      const std::size_t e = a.conductor_;
      std::vector<Rational> full(e);
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
          if (sgn(b.coeffs_[j]) != 0) full[(i + j) % e] += a.coeffs_[i] * b.coeffs_[j];
      }
      a.reduce_into(full);
    });
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
  friend Cyclotomic operator-(Cyclotomic a) { return a *= Rational(-1); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const std::size_t m = std::lcm(a.conductor_, b.conductor_);
    return a.to_conductor(m).coeffs_ == b.to_conductor(m).coeffs_;
  }

 private:
  static std::size_t check(std::size_t e) {
    if (e == 0) throw std::invalid_argument("cyclotomic conductor must be positive");
    return e;
  }

  // `full` has length conductor; reduce modulo Φ_e into coeffs_.
  void reduce_into(std::vector<Rational>& full) {
    const auto& phi = cyclotomic_polynomial(conductor_);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = full.size(); i-- > d;) {
      if (sgn(full[i]) == 0) continue;
      const Rational c = full[i];
      for (std::size_t j = 0; j < d; ++j)
        if (phi[j] != 0) full[i - d + j] -= c * Rational(phi[j]);
      full[i] = 0;
    }
    coeffs_.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d));
  }

  template <class Op>
  void align(const Cyclotomic& o, Op op) {
    if (o.conductor_ == conductor_) {
      op(*this, o);
      return;
    }
    const std::size_t m = std::lcm(conductor_, o.conductor_);
    *this = to_conductor(m);
    op(*this, o.to_conductor(m));
  }

  std::size_t conductor_;
  std::vector<Rational> coeffs_;
};

// Lexicographic on (conductor, coefficients); used only for tie-breaking.
inline bool lex_less(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  return a.coeffs() < b.coeffs();
}

}  // namespace equilef
