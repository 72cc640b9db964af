#include "lsq/squareclass.hpp"

#include <cmath>

#include <mpfr.h>

namespace lsq {

mpz_class squarefree_part(const mpq_class& r) {
  if (r == 0) fail(ErrorCode::bad_input, "squarefree_part(0)");
  // p/q and p*q differ by q^2, so the integral squarefree part of p*q
  // represents the class of the rational.
  mpz_class n = num(r) * den(r);
  Factorization f = factor(n);
  mpz_class out = (n < 0) ? -1 : 1;
  for (const auto& [p, e] : f)
    if (e & 1) out *= p;
  return out;
}

bool square_class_eq(const mpq_class& a, const mpq_class& b) {
  return squarefree_part(a) == squarefree_part(b);
}

bool is_rational_square(const mpq_class& r) {
  if (r < 0) return false;
  if (r == 0) return true;
  return mpz_perfect_square_p(num(r).get_mpz_t()) &&
         mpz_perfect_square_p(den(r).get_mpz_t());
}

mpz_class square_class_mul(const mpq_class& a, const mpq_class& b) {
  return squarefree_part(a * b);
}

namespace {

// Continued fraction convergents of a high precision value, stopping at the
// height bound. Gives the best rational approximations in order.
std::vector<mpq_class> convergents_of(mpfr_t v, uint64_t height_bound) {
  std::vector<mpq_class> out;
  mpz_class p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p0/q0 = 1/0, p1/q1 = 0/1
  mpfr_t x, fl, rem;
  mpfr_init2(x, mpfr_get_prec(v));
  mpfr_init2(fl, mpfr_get_prec(v));
  mpfr_init2(rem, mpfr_get_prec(v));
  mpfr_set(x, v, MPFR_RNDN);
  for (int step = 0; step < 200; ++step) {
    mpfr_floor(fl, x);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl, MPFR_RNDN);
    mpz_class p2 = a * p0 + p1, q2 = a * q0 + q1;
    if (abs(p2) > height_bound || q2 > height_bound) break;
    out.emplace_back(p2, q2);
    out.back().canonicalize();
    p1 = p0; q1 = q0; p0 = p2; q0 = q2;
    mpfr_sub(rem, x, fl, MPFR_RNDN);
    if (mpfr_zero_p(rem)) break;
    // Guard: once the remainder is below the working precision the partial
    // quotients are noise.
    if (mpfr_get_exp(rem) < -int(mpfr_get_prec(v)) + 16) break;
    mpfr_ui_div(x, 1, rem, MPFR_RNDN);
  }
  mpfr_clear(x);
  mpfr_clear(fl);
  mpfr_clear(rem);
  return out;
}

}  // namespace

std::optional<mpq_class> recognize_rational_square(double x,
                                                   uint64_t height_bound,
                                                   double tol) {
  if (!(x > 0) || !std::isfinite(x)) return std::nullopt;
  mpfr_t v;
  mpfr_init2(v, 160);
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_sqrt(v, v, MPFR_RNDN);
  auto cs = convergents_of(v, height_bound);
  mpfr_clear(v);
  std::optional<mpq_class> best;
  double best_err = tol;
  for (const auto& c : cs) {
    if (c < 0) continue;
    mpq_class sq = c * c;
    double err = std::fabs(sq.get_d() - x) / x;
    if (err <= best_err) {
      best_err = err;
      best = c;
    }
  }
  return best;
}

std::optional<mpq_class> recognize_rational(double x, uint64_t height_bound,
                                            double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  mpfr_t v;
  mpfr_init2(v, 160);
  mpfr_set_d(v, x, MPFR_RNDN);
  auto cs = convergents_of(v, height_bound);
  mpfr_clear(v);
  double scale = std::max(1.0, std::fabs(x));
  std::optional<mpq_class> best;
  double best_err = tol;
  for (const auto& c : cs) {
    double err = std::fabs(c.get_d() - x) / scale;
    if (err <= best_err) {
      best_err = err;
      best = c;
    }
  }
  return best;
}

}  // namespace lsq
