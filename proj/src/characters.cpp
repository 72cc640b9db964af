#include "lsq/characters.hpp"

#include <cmath>
#include <numbers>

namespace lsq {

bool is_fundamental(const mpz_class& d) {
  if (d == 1) return true;
  if (d == 0) return false;
  mpz_class m = mod_pos(d, 4);
  auto squarefree = [](const mpz_class& n) {
    if (n == 1 || n == -1) return true;
    for (const auto& [p, e] : factor(n))
      if (e > 1) return false;
    return true;
  };
  if (m == 1) return squarefree(d);
  if (m == 0) {
    mpz_class q = d / 4;
    mpz_class qm = mod_pos(q, 4);
    return (qm == 2 || qm == 3) && squarefree(q);
  }
  return false;
}

QuadChar::QuadChar(mpz_class disc) : d(std::move(disc)) {
  if (!is_fundamental(d))
    fail(ErrorCode::not_fundamental, "not a fundamental discriminant: " + d.get_str());
}

std::complex<double> gauss_sum_numeric(const QuadChar& chi) {
  if (chi.is_trivial()) return 1.0;  // empty product normalization
  const double c = chi.conductor().get_d();
  std::complex<double> tau = 0;
  for (mpz_class a = 1; a < chi.conductor(); ++a) {
    int v = chi.value(a);
    if (v == 0) continue;
    double t = 2.0 * std::numbers::pi * a.get_d() / c;
    tau += double(v) * std::complex<double>(std::cos(t), std::sin(t));
  }
  return tau;
}

std::complex<double> gauss_sum_closed(const QuadChar& chi) {
  double rc = std::sqrt(chi.conductor().get_d());
  return chi.parity() > 0 ? std::complex<double>(rc, 0)
                          : std::complex<double>(0, rc);
}

double gauss_sum_identity_error(const QuadChar& chi) {
  std::complex<double> tau = gauss_sum_numeric(chi);
  std::complex<double> want(double(chi.parity()) * chi.conductor().get_d(), 0);
  double e1 = std::abs(tau * tau - want);
  double e2 = std::abs(tau - gauss_sum_closed(chi));
  return std::max(e1 / std::abs(want), e2 / std::abs(gauss_sum_closed(chi)));
}

int fe_sign_twist(int w_of_e, const mpz_class& n_of_e, const QuadChar& chi) {
  if (gcd(chi.conductor(), n_of_e) != 1)
    fail(ErrorCode::bad_input, "twist conductor shares a prime with N");
  return -chi.value(-n_of_e) * w_of_e;
}

GenusPair genus_pair(const mpz_class& d1, const mpz_class& d2) {
  if (gcd(d1, d2) != 1)
    fail(ErrorCode::bad_input, "genus pair needs coprime discriminants");
  GenusPair g{QuadChar(d1), QuadChar(d2)};
  if (g.disc_f() <= 1)
    fail(ErrorCode::bad_input, "genus pair must cut out a real field");
  return g;
}

std::vector<mpz_class> search_auxiliary_char(const CharSearch& c) {
  std::vector<mpz_class> out;
  for (mpz_class a = 2; a <= c.bound; ++a) {
    mpz_class d = (c.parity > 0) ? a : -a;
    if (!is_fundamental(d)) continue;
    bool ok = true;
    for (const auto& m : c.coprime_to)
      if (gcd(d, m) != 1) { ok = false; break; }
    for (const auto& [p, v] : c.value_at) {
      if (!ok) break;
      if (kronecker(d, p) != v) ok = false;
    }
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace lsq
