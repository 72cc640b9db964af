#include "lsq/quadfield.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "lsq/squareclass.hpp"

namespace lsq {

namespace {

int legendre(const mpz_class& a, int64_t p) { return kronecker(a, mpz_class(p)); }

mpz_class zpow(int64_t base, unsigned e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), mpz_class(base).get_mpz_t(), e);
  return out;
}

// Sign of a + b*sqrt(d) for nonsquare d > 0; zero only when a = b = 0.
int sign_a_plus_b_sqrt(const mpz_class& a, const mpz_class& b, int64_t d) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  mpz_class lhs = a * a, rhs = b * b * d;
  return (lhs > rhs) ? sa : sb;
}

// Root of t^2 - d*t + d(d-1)/4 modulo p^k, lifted from the simple root r0
// mod p. The derivative 2*r0 - d is a unit both for split odd p (p does not
// divide d = disc of the polynomial) and for p = 2 with d odd.
mpz_class hensel_root(int64_t d, int64_t p, int64_t r0, unsigned k) {
  mpz_class c = mpz_class(d) * (d - 1) / 4;
  mpz_class r = r0;
  mpz_class mod = p;
  for (unsigned j = 2; j <= k; ++j) {
    mod *= p;
    mpz_class fr = r * r - d * r + c;
    mpz_class fpr = mod_pos(2 * r - d, mod);
    r = mod_pos(r - fr * inv_mod(fpr, mod), mod);
  }
  return r;
}

// Value of delta at one prime together with the conductor exponent there.
struct LocalInfo {
  int value = 0;
  unsigned cond_exp = 0;
};

// Split prime: embed into the completion through the Hensel-lifted root of
// the minimal polynomial of omega, read off the valuation and unit part.
LocalInfo local_split(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y, const PrimeOfF& prime) {
  int64_t p = prime.p;
  mpz_class nb = field_norm(f, x, y);
  unsigned k = ord_p(nb, p) + (p == 2 ? 4 : 3);
  mpz_class pk = zpow(p, k);
  mpz_class r = hensel_root(f.disc, p, prime.root, k);
  mpz_class z = mod_pos(x + y * r, pk);
  if (z == 0) fail(ErrorCode::internal, "valuation exceeded working precision");
  unsigned v = ord_p(z, p);
  mpz_class u = z / zpow(p, v);
  if (p == 2) {
    if (v & 1) return {0, 3};
    switch (mpz_class(u % 8).get_ui()) {
      case 1: return {1, 0};
      case 5: return {-1, 0};
      default: return {0, 2};
    }
  }
  if (v & 1) return {0, 1};
  return {legendre(u, p), 0};
}

// Inert odd prime: q itself is the uniformizer; a unit of the quadratic
// residue ring is a square exactly when its norm is a square mod q.
LocalInfo local_inert_odd(const RealQuadField& f, const mpz_class& x,
                          const mpz_class& y, int64_t q) {
  mpz_class x0 = x, y0 = y;
  unsigned v = 0;
  while (x0 % q == 0 && y0 % q == 0) {
    x0 /= q;
    y0 /= q;
    ++v;
  }
  if (v & 1) return {0, 1};
  return {legendre(field_norm(f, x0, y0), q), 0};
}

// Ramified odd l | d: write 2*beta = A + B*s with s = 2*omega - d, s^2 = d,
// so ord(A) is even and ord(B*s) odd and the valuation of beta is their
// minimum. For even valuation 2m the unit part is beta / d^m, whose residue
// is A / (2 * d^m) read modulo l.
LocalInfo local_ram_odd(const RealQuadField& f, const mpz_class& x,
                        const mpz_class& y, int64_t l) {
  mpz_class a2 = 2 * x + y * f.disc;
  const mpz_class& b2 = y;
  constexpr unsigned kInf = 0xffffffffu;
  unsigned va = (a2 == 0) ? kInf : 2 * ord_p(a2, l);
  unsigned vb = (b2 == 0) ? kInf : 2 * ord_p(b2, l) + 1;
  unsigned v = std::min(va, vb);
  if (v & 1) return {0, 1};
  unsigned m = v / 2;
  mpz_class a3 = a2 / zpow(l, m);
  mpz_class dprime = mod_pos(f.disc / l, l);
  mpz_class denom = mod_pos(2 * pow_mod(dprime, m, l), l);
  mpz_class wbar = mod_pos(a3 * inv_mod(denom, l), l);
  return {legendre(wbar, l), 0};
}

// Inert prime over 2 (d = 5 mod 8). Units of O/2^j are handled by direct
// enumeration of squares in (Z/2^j)[t]/(t^2 - d*t + c): a unit is a square
// iff it is a square mod 8; it generates the unramified quadratic extension
// iff it is a square mod 4 but not mod 8.
LocalInfo local_inert_two(const RealQuadField& f, const mpz_class& x,
                          const mpz_class& y) {
  mpz_class x0 = x, y0 = y;
  unsigned v = 0;
  while (x0 % 2 == 0 && y0 % 2 == 0) {
    x0 /= 2;
    y0 /= 2;
    ++v;
  }
  if (v & 1) return {0, 3};
  int64_t d = f.disc, c = f.norm_omega();
  auto squares_mod = [&](int64_t m) {
    // (a + b t)^2 = a^2 - b^2 c + (2ab + b^2 d) t; classes mod m depend on
    // a, b mod m only (and in fact mod m/2), so a full sweep is exact.
    std::set<std::pair<int64_t, int64_t>> s;
    for (int64_t a = 0; a < m; ++a)
      for (int64_t b = 0; b < m; ++b) {
        if (a % 2 == 0 && b % 2 == 0) continue;  // not a unit
        int64_t re = ((a * a - b * b % m * c) % m + m * c) % m;
        int64_t im = ((2 * a * b + b * b % m * d) % m) % m;
        s.insert({re, im});
      }
    return s;
  };
  auto cls = [&](int64_t m) {
    return std::make_pair(mod_pos(x0, m).get_si() % m,
                          mod_pos(y0, m).get_si() % m);
  };
  if (squares_mod(8).count(cls(8))) return {1, 0};
  if (squares_mod(4).count(cls(4))) return {-1, 0};
  return {0, 2};
}

LocalInfo local_info(const HeckeQuadChar& chi, const PrimeOfF& prime) {
  const RealQuadField& f = chi.field;
  if (prime.type == SplitType::split)
    return local_split(f, chi.bx, chi.by, prime);
  if (prime.p == 2) return local_inert_two(f, chi.bx, chi.by);
  if (prime.type == SplitType::inert)
    return local_inert_odd(f, chi.bx, chi.by, prime.p);
  return local_ram_odd(f, chi.bx, chi.by, prime.p);
}

}  // namespace

RealQuadField::RealQuadField(int64_t d) : disc(d) {
  if (d <= 1 || !is_fundamental(mpz_class(d)))
    fail(ErrorCode::not_fundamental,
         "real quadratic field needs a fundamental discriminant > 1");
}

mpz_class field_norm(const RealQuadField& f, const mpz_class& x,
                     const mpz_class& y) {
  return x * x + x * y * f.disc + y * y * f.norm_omega();
}

mpz_class field_trace(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y) {
  return 2 * x + y * f.disc;
}

int sign_at_embedding(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y, int s) {
  // 2*(x + y*omega) = (2x + y d) + (s y) sqrt(d) under the embedding.
  return sign_a_plus_b_sqrt(2 * x + y * f.disc, s > 0 ? y : mpz_class(-y),
                            f.disc);
}

bool totally_positive(const RealQuadField& f, const mpz_class& x,
                      const mpz_class& y) {
  return sign_at_embedding(f, x, y, 1) > 0 &&
         sign_at_embedding(f, x, y, -1) > 0;
}

mpz_class PrimeOfF::norm() const { return zpow(p, residue_degree); }

SplitType splitting_type(const RealQuadField& f, int64_t p) {
  if (p < 2 || !is_prime(mpz_class(p)))
    fail(ErrorCode::bad_input, "splitting_type needs a prime");
  int k = kronecker(mpz_class(f.disc), mpz_class(p));
  if (k > 0) return SplitType::split;
  if (k < 0) return SplitType::inert;
  return SplitType::ramified;
}

std::vector<PrimeOfF> primes_over(const RealQuadField& f, int64_t p) {
  SplitType t = splitting_type(f, p);
  if (t == SplitType::inert) return {PrimeOfF{p, t, 2, 0}};
  if (t == SplitType::ramified) return {PrimeOfF{p, t, 1, 0}};
  int64_t r1, r2;
  if (p == 2) {
    r1 = 0;
    r2 = 1;
  } else {
    mpz_class s = *sqrt_mod(mod_pos(f.disc, p), p);
    mpz_class half = inv_mod(2, p);
    r1 = mod_pos((f.disc + s) * half, p).get_si();
    r2 = mod_pos((f.disc - s) * half, p).get_si();
    if (r1 > r2) std::swap(r1, r2);
  }
  return {PrimeOfF{p, t, 1, r1}, PrimeOfF{p, t, 1, r2}};
}

std::vector<int64_t> ideals_up_to(const RealQuadField& f, int64_t bound) {
  if (bound < 1) fail(ErrorCode::bad_input, "bound must be positive");
  std::vector<int32_t> spf(bound + 1, 0);
  for (int64_t i = 2; i <= bound; ++i)
    if (spf[i] == 0)
      for (int64_t j = i; j <= bound; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
  std::vector<int64_t> count(bound + 1, 0);
  count[1] = 1;
  for (int64_t n = 2; n <= bound; ++n) {
    int64_t p = spf[n], m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    int64_t local;
    switch (splitting_type(f, p)) {
      case SplitType::split: local = e + 1; break;
      case SplitType::inert: local = (e % 2 == 0) ? 1 : 0; break;
      default: local = 1; break;
    }
    count[n] = count[m] * local;
  }
  return count;
}

HeckeQuadChar make_hecke_char(const RealQuadField& f, const mpz_class& x,
                              const mpz_class& y) {
  if (x == 0 && y == 0) fail(ErrorCode::bad_input, "beta must be nonzero");
  if (f.disc % 2 == 0)
    fail(ErrorCode::unsupported,
         "even field discriminant: 2 must be unramified in F");
  mpz_class g = gcd(x, y);
  if (g > 1)
    for (const auto& [p, e] : factor(g))
      if (e >= 2)
        fail(ErrorCode::not_squarefree,
             "beta is divisible by the rational square " +
                 mpz_class(p * p).get_str());

  HeckeQuadChar chi{f, x, y, sign_at_embedding(f, x, y, 1),
                    sign_at_embedding(f, x, y, -1), 1};

  // Ramification happens only over 2 or over primes dividing N(beta).
  std::set<int64_t> support{2};
  for (const auto& [p, e] : factor(field_norm(f, x, y))) {
    if (!p.fits_slong_p())
      fail(ErrorCode::prime_too_large, "norm factor does not fit a word");
    support.insert(p.get_si());
  }
  for (int64_t p : support)
    for (const PrimeOfF& prime : primes_over(f, p)) {
      LocalInfo li = local_info(chi, prime);
      for (unsigned i = 0; i < li.cond_exp; ++i)
        chi.conductor_norm *= prime.norm();
    }
  return chi;
}

int hecke_char_value(const HeckeQuadChar& chi, const PrimeOfF& prime) {
  return local_info(chi, prime).value;
}

HeckeQuadChar genus_hecke_char(const RealQuadField& f, const GenusPair& pair) {
  if (pair.disc_f() != f.disc)
    fail(ErrorCode::bad_input, "genus pair does not factor disc(F)");
  mpz_class beta = squarefree_part(mpq_class(pair.chi1.d));
  return make_hecke_char(f, beta, 0);
}

std::vector<HeckeQuadChar> search_delta(const RealQuadField& f,
                                        const DeltaConstraints& c) {
  if (c.height_bound < 1) fail(ErrorCode::bad_input, "empty height range");
  std::vector<HeckeQuadChar> out;
  std::vector<std::pair<int64_t, std::vector<PrimeOfF>>> constrained;
  for (const auto& [p, want] : c.value_at)
    constrained.push_back({want, primes_over(f, p)});
  for (int64_t x = -c.height_bound; x <= c.height_bound; ++x)
    for (int64_t y = -c.height_bound; y <= c.height_bound; ++y) {
      if (x == 0 && y == 0) continue;
      if (sign_a_plus_b_sqrt(2 * x + y * f.disc, y, f.disc) != c.arch_sign)
        continue;
      if (sign_a_plus_b_sqrt(2 * x + y * f.disc, -y, f.disc) != c.arch_sign)
        continue;
      int64_t g = std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
      bool square_divisible = false;
      if (g > 1)
        for (const auto& [p, e] : factor(mpz_class(g)))
          if (e >= 2) {
            square_divisible = true;
            break;
          }
      if (square_divisible) continue;
      HeckeQuadChar chi = make_hecke_char(f, x, y);
      if (gcd(chi.conductor_norm, mpz_class(c.coprime_to)) != 1) continue;
      bool ok = true;
      for (const auto& [want, primes] : constrained) {
        for (const PrimeOfF& prime : primes)
          if (hecke_char_value(chi, prime) != want) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) out.push_back(chi);
    }
  std::sort(out.begin(), out.end(),
            [](const HeckeQuadChar& a, const HeckeQuadChar& b) {
              if (a.conductor_norm != b.conductor_norm)
                return a.conductor_norm < b.conductor_norm;
              mpz_class ha = abs(a.bx) + abs(a.by);
              mpz_class hb = abs(b.bx) + abs(b.by);
              if (ha != hb) return ha < hb;
              if (a.bx != b.bx) return a.bx < b.bx;
              return a.by < b.by;
            });
  return out;
}

}  // namespace lsq
