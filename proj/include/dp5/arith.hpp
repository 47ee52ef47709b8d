#pragma once

// Exact integer and multiplicative-function kernel.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dp5 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(i64 numerator);  // NOLINT(google-explicit-constructor)
  Rational(i64 numerator, i64 denominator);
  explicit Rational(mpq_class value);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  double to_double() const { return q_.get_d(); }
  /// "n" for integers, otherwise "n/d".
  std::string str() const;
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct PrimePower {
  u64 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing; empty for n = 1.
using Factorization = std::vector<PrimePower>;

/// Trial division. Throws std::invalid_argument for n = 0.
Factorization factorize(u64 n);

/// Distinct prime divisors of n, ascending.
std::vector<u64> prime_divisors(u64 n);

int moebius(u64 n);

/// prod_{p | n} (1 - 1/p)
Rational phi_star(u64 n);

/// prod_{p | n} (1 + 1/p)
Rational phi_dagger(u64 n);

/// prod_{p | n} (1 - 1/p^2)^{-1}
Rational inverse_square_factor(u64 n);

/// All squarefree divisors of n in ascending order; 2^omega(n) of them.
std::vector<u64> squarefree_divisors(u64 n);

/// gcd(|a|, |b|) = 1, with gcd(0, n) = |n|.
bool coprime(i64 a, i64 b);

bool is_prime(u64 n);

/// Sieve of Eratosthenes; all primes <= limit.
std::vector<u64> primes_up_to(u64 limit);

}  // namespace dp5
