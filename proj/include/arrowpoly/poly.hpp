#pragma once

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arrowpoly {

using Coeff = boost::multiprecision::cpp_int;

// Monomial A^a * K_{i1} K_{i2} ... ; k_indices is sorted ascending and keeps
// repeated entries for powers (K1^2*K3 is stored as {1, 1, 3}).
struct Monomial {
  int a_power = 0;
  std::vector<int> k_indices;

  // Sum of index * multiplicity over the K part; 0 for K-free monomials.
  int k_degree() const;

  bool operator==(const Monomial& other) const = default;
};

// Canonical term order: k-degree ascending, then K index vector
// lexicographic, then A power ascending. Rendering and iteration both use
// this order, so output is deterministic.
struct MonomialOrder {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

// Element of Z[A^{±1}, K1, K2, ...] with exact integer coefficients.
// Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coeff, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(long long constant);
  Polynomial(Monomial m, Coeff c);

  static Polynomial a_power(int exponent, Coeff c = 1);
  static Polynomial k_var(int index, Coeff c = 1);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Monomial& m, const Coeff& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

 private:
  TermMap terms_;
};

// (-A^2 - A^-2)^k expanded; k must be nonnegative.
Polynomial d_power(int k);

// (-A^3)^{-w} * p, the writhe normalization.
Polynomial normalize(const Polynomial& p, int writhe);

// Sets A = 1, leaving an integer polynomial in the K variables (the flat
// specialization; d collapses to -2).
Polynomial substitute_flat(const Polynomial& p);

}  // namespace arrowpoly
