#pragma once

// Shared integer utilities: deterministic primality, factorization with an
// explicit work budget, Kronecker symbols, and small prime sieves. All exact
// arithmetic sits on GMP (mpz_class / mpq_class).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lsq {

enum class ErrorCode {
  ok = 0,
  factorization_failed,
  not_fundamental,
  not_squarefree,
  prime_too_large,
  hypothesis_violated,
  search_exhausted,
  inconclusive,
  unsupported,
  bad_input,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

using Factorization = std::map<mpz_class, unsigned>;

// Trial division bound and Pollard rho iteration budget. Inputs here have
// small height, so these defaults are generous.
inline constexpr uint64_t kTrialDivisionBound = 1'000'000;
inline constexpr uint64_t kRhoIterationBudget = 10'000'000;

bool is_prime(const mpz_class& n);

// Complete factorization of |n| (n != 0). Throws factorization_failed if the
// rho budget is exhausted before the cofactor splits.
Factorization factor(const mpz_class& n);

std::vector<uint32_t> primes_up_to(uint32_t bound);

// Kronecker symbol (a|n), full domain including n <= 0.
int kronecker(const mpz_class& a, const mpz_class& n);
int kronecker_ll(int64_t a, int64_t n);

// x mod m normalized to [0, m).
mpz_class mod_pos(const mpz_class& x, const mpz_class& m);

// Inverse of a mod m; throws bad_input if not coprime.
mpz_class inv_mod(const mpz_class& a, const mpz_class& m);

mpz_class pow_mod(mpz_class base, mpz_class exp, const mpz_class& mod);

// Sqrt of a mod odd prime p (Tonelli-Shanks); nullopt if a is a nonresidue.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p);

unsigned ord_p(const mpz_class& n, const mpz_class& p);

inline mpz_class num(const mpq_class& q) { return q.get_num(); }
inline mpz_class den(const mpq_class& q) { return q.get_den(); }

std::string q_to_string(const mpq_class& q);
mpq_class q_from_string(const std::string& s);

}  // namespace lsq
