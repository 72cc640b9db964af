#pragma once

// Square classes in Q^x / (Q^x)^2. A class is named by its unique signed
// squarefree integer representative; recognition of numeric values as
// rational squares goes through continued fractions.

#include <optional>

#include "lsq/util.hpp"

namespace lsq {

// Signed squarefree integer representative of r mod squares (r != 0).
mpz_class squarefree_part(const mpq_class& r);

bool square_class_eq(const mpq_class& a, const mpq_class& b);

// Exact test: r is the square of a rational.
bool is_rational_square(const mpq_class& r);

// Product of square classes, again as a signed squarefree integer.
mpz_class square_class_mul(const mpq_class& a, const mpq_class& b);

// Find p/q in lowest terms with max(|p|, q) <= height_bound and
// |(p/q)^2 - x| <= tol * x, via the continued fraction of sqrt(x).
// x must be positive. Returns nullopt if no convergent qualifies.
std::optional<mpq_class> recognize_rational_square(double x,
                                                   uint64_t height_bound,
                                                   double tol);

// Same continued fraction machinery for recognizing x itself as a rational
// of bounded height (|p|, q <= height_bound, |p/q - x| <= tol * max(1,|x|)).
std::optional<mpq_class> recognize_rational(double x, uint64_t height_bound,
                                            double tol);

}  // namespace lsq
