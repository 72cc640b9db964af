#pragma once

// Real quadratic fields F = Q(sqrt(D)) for fundamental D > 1, with
// O_F = Z[omega], omega = (D + sqrt(D))/2. Prime splitting, ideal counts,
// and the quadratic Hecke characters delta attached to square classes
// beta = x + y*omega: exact local values, archimedean signs, and the norm
// of the relative conductor. Everything is exact integer arithmetic; the
// only transcendental object (sqrt(D)) is handled by sign comparisons.

#include <cstdint>
#include <vector>

#include "lsq/characters.hpp"
#include "lsq/util.hpp"

namespace lsq {

struct RealQuadField {
  int64_t disc;  // fundamental discriminant, > 1

  explicit RealQuadField(int64_t d);

  // omega = (disc + sqrt(disc))/2 satisfies x^2 - disc*x + norm_omega().
  int64_t trace_omega() const { return disc; }
  int64_t norm_omega() const { return disc * (disc - 1) / 4; }
};

// N(x + y*omega) = x^2 + x*y*Tr(omega) + y^2*N(omega).
mpz_class field_norm(const RealQuadField& f, const mpz_class& x,
                     const mpz_class& y);
mpz_class field_trace(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y);

// Sign of x + y*omega under the embedding omega -> (D + s*sqrt(D))/2,
// s = +1 or -1. Zero only for the zero element.
int sign_at_embedding(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y, int s);
bool totally_positive(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y);

enum class SplitType { split, inert, ramified };

struct PrimeOfF {
  int64_t p = 0;  // rational prime below
  SplitType type = SplitType::inert;
  int residue_degree = 2;
  // Split primes only: this prime is (p, omega - root); the conjugate
  // prime carries the other root of x^2 - D x + (D^2-D)/4 mod p.
  int64_t root = 0;

  mpz_class norm() const;
};

SplitType splitting_type(const RealQuadField& f, int64_t p);

// The primes over p: two entries (split), one with residue degree 2
// (inert), or one with residue degree 1 (ramified).
std::vector<PrimeOfF> primes_over(const RealQuadField& f, int64_t p);

// Number of integral ideals of norm n for n = 1..bound (index 0 unused).
std::vector<int64_t> ideals_up_to(const RealQuadField& f, int64_t bound);

// The quadratic Hecke character of F(sqrt(beta))/F, beta = bx + by*omega.
// sign_plus / sign_minus are the signs of the two real embeddings of beta;
// the local character at a real place v is trivial iff the sign there is
// positive, so delta_v(-1) equals that sign. conductor_norm is
// N_{F/Q}(c_delta); a rational prime divides c_delta iff it divides this.
struct HeckeQuadChar {
  RealQuadField field;
  mpz_class bx, by;
  int sign_plus = 1;
  int sign_minus = 1;
  mpz_class conductor_norm = 1;
};

// Validates beta != 0 and beta not divisible by the square of a rational
// prime (throws not_squarefree; rescaling beta by rational squares never
// changes the character, so such representatives are refused rather than
// normalized). Fields of even discriminant are rejected (unsupported): the
// dyadic local theory below assumes 2 is unramified in F.
HeckeQuadChar make_hecke_char(const RealQuadField& f, const mpz_class& x,
                              const mpz_class& y);

// Value at an unramified prime (+1 split in F(sqrt(beta)), -1 inert),
// 0 at primes dividing the conductor.
int hecke_char_value(const HeckeQuadChar& chi, const PrimeOfF& prime);

// The unramified character cut out by a genus pair with d1*d2 = disc(F):
// beta = squarefree_part(d1). Trivial pair (1, D) gives the trivial
// character.
HeckeQuadChar genus_hecke_char(const RealQuadField& f, const GenusPair& pair);

// Search constraints for delta. value_at entries (p, v) require the value
// v at EVERY prime of F over p; arch_sign is required at both real places;
// the conductor norm must be coprime to coprime_to.
struct DeltaConstraints {
  int arch_sign = 1;
  std::vector<std::pair<int64_t, int>> value_at;
  int64_t coprime_to = 1;
  int64_t height_bound = 50;  // |x|, |y| <= height_bound
};

// All beta = x + y*omega within the height bound matching the constraints,
// ordered by (conductor norm, |x|+|y|, x, y). Distinct beta may define the
// same character; no merging is attempted.
std::vector<HeckeQuadChar> search_delta(const RealQuadField& f,
                                        const DeltaConstraints& c);

}  // namespace lsq
