#include "dp5/arith.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dp5 {

Rational::Rational(i64 numerator) : q_(mpz_class(static_cast<long>(numerator))) {}

Rational::Rational(i64 numerator, i64 denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  auto take = [&](u64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (u64 p = 5; p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> ps;
  for (const auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

int moebius(u64 n) {
  const auto f = factorize(n);
  for (const auto& pe : f) {
    if (pe.exponent >= 2) return 0;
  }
  return (f.size() % 2 == 0) ? 1 : -1;
}

Rational phi_star(u64 n) {
  i64 num = 1;
  i64 den = 1;
  for (u64 p : prime_divisors(n)) {
    num *= static_cast<i64>(p - 1);
    den *= static_cast<i64>(p);
  }
  return {num, den};
}

Rational phi_dagger(u64 n) {
  i64 num = 1;
  i64 den = 1;
  for (u64 p : prime_divisors(n)) {
    num *= static_cast<i64>(p + 1);
    den *= static_cast<i64>(p);
  }
  return {num, den};
}

Rational inverse_square_factor(u64 n) {
  Rational r(1);
  for (u64 p : prime_divisors(n)) {
    const auto pp = static_cast<i64>(p * p);
    r *= Rational(pp, pp - 1);
  }
  return r;
}

std::vector<u64> squarefree_divisors(u64 n) {
  std::vector<u64> divs{1};
  for (u64 p : prime_divisors(n)) {
    const std::size_t m = divs.size();
    for (std::size_t i = 0; i < m; ++i) divs.push_back(divs[i] * p);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool coprime(i64 a, i64 b) { return std::gcd(a, b) == 1; }

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace dp5
