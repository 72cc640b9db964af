#pragma once

// Quadratic Dirichlet characters, identified with fundamental discriminants.
// Gauss sums, functional equation signs for quadratic twists, genus pairs,
// and the constrained searches used to pick auxiliary characters.

#include <complex>
#include <vector>

#include "lsq/util.hpp"

namespace lsq {

// D = 1 names the trivial character.
bool is_fundamental(const mpz_class& d);

struct QuadChar {
  mpz_class d;  // fundamental discriminant

  explicit QuadChar(mpz_class disc);

  int value(const mpz_class& n) const { return kronecker(d, n); }
  mpz_class conductor() const { return abs(d); }
  int parity() const { return d > 0 ? 1 : -1; }  // chi(-1)
  bool is_trivial() const { return d == 1; }
};

// Numeric Gauss sum sum_a chi(a) e(a/c) and its closed form
// tau = sqrt(c) (chi even) or i sqrt(c) (chi odd).
std::complex<double> gauss_sum_numeric(const QuadChar& chi);
std::complex<double> gauss_sum_closed(const QuadChar& chi);

// Largest absolute deviation in tau^2 = chi(-1) * c for this character.
double gauss_sum_identity_error(const QuadChar& chi);

// Sign of the functional equation of L(s, E x chi) for chi of conductor
// coprime to N: -chi(-N) * w where w is the sign for E itself.
int fe_sign_twist(int w_of_e, const mpz_class& n_of_e, const QuadChar& chi);

// A genus pair (chi1, chi2): coprime fundamental discriminants with
// d1 * d2 > 0, cutting out the real quadratic field of discriminant d1*d2.
struct GenusPair {
  QuadChar chi1, chi2;
  mpz_class disc_f() const { return chi1.d * chi2.d; }
};

GenusPair genus_pair(const mpz_class& d1, const mpz_class& d2);

// Constraint set for character searches. Every yielded discriminant D
// satisfies: sign(D) = parity, kronecker(D, p) = v for each (p, v) in
// value_at, and gcd(D, m) = 1 for each m in coprime_to.
struct CharSearch {
  int parity = 1;  // required chi(-1)
  std::vector<std::pair<mpz_class, int>> value_at;
  std::vector<mpz_class> coprime_to;
  mpz_class bound = 500;  // |D| <= bound
};

// Nontrivial fundamental discriminants matching the constraints, ordered by
// (|D|, D). Deterministic; D = 1 is never yielded.
std::vector<mpz_class> search_auxiliary_char(const CharSearch& c);

}  // namespace lsq
