#include "lsq/util.hpp"

#include <algorithm>
#include <numeric>

namespace lsq {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  // 50 rounds of BPSW-backed Miller-Rabin; deterministic for anything with
  // the heights seen here.
  return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

std::vector<uint32_t> primes_up_to(uint32_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<uint32_t> out;
  for (uint32_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (uint64_t q = uint64_t(p) * p; q <= bound; q += p) composite[q] = true;
  }
  return out;
}

namespace {

mpz_class rho_brent(const mpz_class& n, unsigned long seed, uint64_t budget) {
  // Brent's cycle variant of Pollard rho with batched gcds.
  mpz_class y = seed % n, c = (seed / 7 + 1) % n, m = 128;
  if (c == 0) c = 1;
  mpz_class g = 1, r = 1, q = 1, x, ys;
  uint64_t steps = 0;
  while (g == 1) {
    x = y;
    for (mpz_class i = 0; i < r; ++i) {
      y = (y * y + c) % n;
      if (++steps > budget) return 0;
    }
    mpz_class k = 0;
    while (k < r && g == 1) {
      ys = y;
      mpz_class lim = std::min(m, mpz_class(r - k));
      for (mpz_class i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
        if (++steps > budget) return 0;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
      if (++steps > budget) return 0;
    } while (g == 1);
  }
  return (g == n) ? mpz_class(0) : g;
}

void factor_into(mpz_class n, Factorization& out, uint64_t budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    if (seed > 40) fail(ErrorCode::factorization_failed, "rho budget exhausted");
    mpz_class d = rho_brent(n, seed, budget);
    if (d != 0 && d != 1 && d != n) {
      factor_into(d, out, budget);
      factor_into(n / d, out, budget);
      return;
    }
  }
}

}  // namespace

Factorization factor(const mpz_class& n) {
  if (n == 0) fail(ErrorCode::bad_input, "factor(0)");
  Factorization out;
  mpz_class m = abs(n);
  if (m == 1) return out;
  static const std::vector<uint32_t> small = primes_up_to(kTrialDivisionBound);
  for (uint32_t p : small) {
    if (mpz_class(p) * p > m) break;
    while (m % p == 0) {
      out[p] += 1;
      m /= p;
    }
    if (m == 1) return out;
  }
  if (m == 1) return out;
  if (is_prime(m)) {
    out[m] += 1;
    return out;
  }
  factor_into(m, out, kRhoIterationBudget);
  return out;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker_ll(int64_t a, int64_t n) {
  // Hand-rolled so the unit tests can cross-check GMP against an
  // independent implementation built from the standard rules.
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // (a|2) part of n.
  int tz = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++tz;
  }
  if (tz > 0 && (a & 1) == 0) return 0;
  if (tz & 1) {
    int64_t am8 = ((a % 8) + 8) % 8;
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  // Standard binary Jacobi loop on odd n > 0.
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      int64_t nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    a %= n;
  }
  return (n == 1) ? result : 0;
}

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += abs(m);
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorCode::bad_input, "inv_mod: not invertible");
  return r;
}

mpz_class pow_mod(mpz_class base, mpz_class exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a0, const mpz_class& p) {
  mpz_class a = mod_pos(a0, p);
  if (a == 0) return mpz_class(0);
  if (p == 2) return a;
  if (kronecker(a, p) != 1) return std::nullopt;
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (kronecker(z, p) != -1) ++z;
  mpz_class m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p),
            r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    mpz_class t2 = t;
    unsigned i = 0;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    mpz_class b = c;
    for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

unsigned ord_p(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail(ErrorCode::bad_input, "ord_p(0)");
  unsigned v = 0;
  mpz_class m = n;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::string q_to_string(const mpq_class& q) {
  return q.get_str();
}

mpq_class q_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(ErrorCode::bad_input, "bad rational: " + s);
  q.canonicalize();
  return q;
}

}  // namespace lsq
