#pragma once

// Exact rational arithmetic, square classes of Q*, and the local symbols
// (Legendre, Hilbert) that every invariant is built from.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfm {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "n" or "n/d" (optional sign, decimal digits). The result is
// canonical; a zero denominator is a DomainError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

struct FactorBudget {
  // Maximum number of trial divisions spent on one integer.
  std::uint64_t max_trial_divisions = std::uint64_t{1} << 26;
};

bool is_prime(const Integer& n);

// Distinct prime divisors of |n|, ascending. n != 0.
std::vector<Integer> prime_divisors(const Integer& n, const FactorBudget& budget = {});

// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, const Integer& p);

// Element of Q*/Q*^2, represented by its signed square-free integer.
// The odd and even prime divisors of the representative are kept alongside so
// no further factoring is needed when the class is used at a place.
class SquareClass {
 public:
  SquareClass() : rep_(1) {}

  static SquareClass of(const Rational& x, const FactorBudget& budget = {});
  static SquareClass of(const Integer& x, const FactorBudget& budget = {});
  static SquareClass of(long x) { return of(Integer(x)); }

  const Integer& rep() const { return rep_; }
  const std::vector<Integer>& primes() const { return primes_; }
  int sign() const { return sgn(rep_); }
  bool is_trivial() const { return rep_ == 1; }
  bool divisible_by(const Integer& p) const;

  SquareClass operator*(const SquareClass& other) const;
  SquareClass operator-() const;

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const SquareClass& a, const SquareClass& b) {
    int c = cmp(a.rep_, b.rep_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  SquareClass(Integer rep, std::vector<Integer> primes)
      : rep_(std::move(rep)), primes_(std::move(primes)) {}

  Integer rep_;
  std::vector<Integer> primes_;
};

SquareClass squarefree_part(const Rational& x, const FactorBudget& budget = {});

// A place of Q: the real embedding or a finite prime.
class Place {
 public:
  static Place real() { return Place(); }
  static Place prime(const Integer& p);
  static Place prime(long p) { return prime(Integer(p)); }

  bool is_real() const { return p_ == 0; }
  const Integer& p() const { return p_; }
  std::string name() const;

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    int c = cmp(a.p_, b.p_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Place() : p_(0) {}
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_;  // 0 encodes the real place
};

// Parses "inf" / "real" or a prime.
Place parse_place(std::string_view text);

// Legendre symbol (a/p) for an odd prime p.
int legendre(const Integer& a, const Integer& p);

bool is_local_square(const SquareClass& a, const Place& v);

int hilbert(const SquareClass& a, const SquareClass& b, const Place& v);
int hilbert(const Rational& a, const Rational& b, const Place& v);

// Places where (a,b)_v can be -1: the real place, 2, and odd primes dividing
// the square-free parts of a or b. Sorted.
std::vector<Place> hilbert_bad_places(const SquareClass& a, const SquareClass& b);
std::vector<Place> hilbert_bad_places(const Rational& a, const Rational& b);

}  // namespace qfm
