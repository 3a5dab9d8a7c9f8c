#include "qfm/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "qfm/errors.hpp"

namespace qfm {

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto to_integer = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (slash != std::string_view::npos && den.front() == '-'))
    throw DomainError("malformed rational: '" + std::string(text) + "'");
  Integer d = to_integer(den);
  if (d == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
  Rational r(to_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

namespace {

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, unsigned long base) {
  Integer a(base);
  if (a % n == 0) return true;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

std::uint64_t isqrt_floor(std::uint64_t n) {
  Integer r = sqrt(Integer(static_cast<unsigned long>(n)));
  return r.get_ui();
}

}  // namespace

// Deterministic for n < 3.3 * 10^24 with the first thirteen prime bases; the
// extra bases only tighten the (already negligible) error bound above that.
bool is_prime(const Integer& n) {
  static constexpr std::array<unsigned long, 16> kBases = {2, 3, 5, 7, 11, 13, 17, 19,
                                                           23, 29, 31, 37, 41, 43, 47, 53};
  if (n < 2) return false;
  for (unsigned long b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  return std::all_of(kBases.begin(), kBases.end(),
                     [&](unsigned long b) { return miller_rabin_round(n, d, s, b); });
}

std::vector<Integer> prime_divisors(const Integer& n_in, const FactorBudget& budget) {
  if (n_in == 0) throw DomainError("prime_divisors of zero");
  Integer n = abs(n_in);
  std::vector<Integer> out;
  auto strip = [&](unsigned long p) {
    if (n % p == 0) {
      out.emplace_back(p);
      while (n % p == 0) n /= p;
    }
  };
  strip(2);
  std::uint64_t spent = 0;
  unsigned long d = 3;
  while (n > 1) {
    if (is_prime(n)) {
      out.push_back(n);
      break;
    }
    // n is composite here, so it has a factor no larger than its square root.
    if (n.fits_ulong_p()) {
      std::uint64_t m = n.get_ui();
      std::uint64_t limit = isqrt_floor(m);
      for (; d <= limit; d += 2) {
        if (++spent > budget.max_trial_divisions)
          throw FactorizationBudgetExceeded("factorization exceeded budget for " + n_in.get_str());
        if (m % d == 0) break;
      }
      strip(d);
      d += 2;
      continue;
    }
    for (;; d += 2) {
      if (++spent > budget.max_trial_divisions)
        throw FactorizationBudgetExceeded("factorization exceeded budget for " + n_in.get_str());
      if (n % d == 0) break;
    }
    strip(d);
    d += 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = n;
  unsigned v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

SquareClass SquareClass::of(const Integer& x, const FactorBudget& budget) {
  if (x == 0) throw DomainError("square class of zero");
  std::vector<Integer> odd_exponent;
  Integer rep = sgn(x) < 0 ? Integer(-1) : Integer(1);
  for (const Integer& p : prime_divisors(x, budget)) {
    if (valuation(x, p) % 2 == 1) {
      rep *= p;
      odd_exponent.push_back(p);
    }
  }
  return SquareClass(std::move(rep), std::move(odd_exponent));
}

SquareClass SquareClass::of(const Rational& x, const FactorBudget& budget) {
  if (x == 0) throw DomainError("square class of zero");
  // n/d = n*d / d^2
  return of(Integer(x.get_num() * x.get_den()), budget);
}

bool SquareClass::divisible_by(const Integer& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
  std::vector<Integer> primes;
  std::set_symmetric_difference(primes_.begin(), primes_.end(), other.primes_.begin(),
                                other.primes_.end(), std::back_inserter(primes));
  Integer rep = sign() * other.sign();
  for (const Integer& p : primes) rep *= p;
  return SquareClass(std::move(rep), std::move(primes));
}

SquareClass SquareClass::operator-() const { return SquareClass(-rep_, primes_); }

SquareClass squarefree_part(const Rational& x, const FactorBudget& budget) {
  return SquareClass::of(x, budget);
}

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
  return Place(p);
}

std::string Place::name() const { return is_real() ? "inf" : p_.get_str(); }

Place parse_place(std::string_view text) {
  if (text == "inf" || text == "real" || text == "oo") return Place::real();
  Integer p;
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw DomainError("malformed place: '" + std::string(text) + "'");
  p.set_str(std::string(text), 10);
  return Place::prime(p);
}

int legendre(const Integer& a_in, const Integer& p) {
  if (p == 2 || !is_prime(p)) throw DomainError("legendre: " + p.get_str() + " is not an odd prime");
  // Binary Jacobi algorithm; for prime p this is the Legendre symbol.
  Integer a = a_in % p;
  if (a < 0) a += p;
  Integer n = p;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

// Unit part of a square-free representative at p, and whether p divides it.
struct LocalSplit {
  bool p_divides;
  Integer unit;
};

LocalSplit split_at(const SquareClass& a, const Integer& p) {
  bool divides = a.divisible_by(p);
  return {divides, divides ? Integer(a.rep() / p) : a.rep()};
}

unsigned mod8(const Integer& u) { return static_cast<unsigned>(mpz_fdiv_ui(u.get_mpz_t(), 8)); }

}  // namespace

bool is_local_square(const SquareClass& a, const Place& v) {
  if (v.is_real()) return a.sign() > 0;
  auto [divides, unit] = split_at(a, v.p());
  if (divides) return false;  // square-free: valuation exactly one
  if (v.p() == 2) return mod8(unit) == 1;
  return legendre(unit, v.p()) == 1;
}

int hilbert(const SquareClass& a, const SquareClass& b, const Place& v) {
  if (v.is_real()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const Integer& p = v.p();
  auto [alpha, u] = split_at(a, p);
  auto [beta, w] = split_at(b, p);
  int exponent = 0;
  if (p == 2) {
    auto eps = [](unsigned r) { return ((r - 1) / 2) & 1U; };
    auto omega = [](unsigned r) { return ((r * r - 1) / 8) & 1U; };
    unsigned ur = mod8(u), wr = mod8(w);
    exponent = static_cast<int>(eps(ur) * eps(wr) + (alpha ? omega(wr) : 0) + (beta ? omega(ur) : 0));
    return exponent % 2 ? -1 : 1;
  }
  int sym = 1;
  if (alpha && beta && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) sym = -sym;
  if (beta) sym *= legendre(u, p);
  if (alpha) sym *= legendre(w, p);
  return sym;
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw DomainError("hilbert symbol of zero");
  return hilbert(SquareClass::of(a), SquareClass::of(b), v);
}

std::vector<Place> hilbert_bad_places(const SquareClass& a, const SquareClass& b) {
  std::vector<Place> out{Place::real(), Place::prime(2)};
  std::vector<Integer> primes;
  std::set_union(a.primes().begin(), a.primes().end(), b.primes().begin(), b.primes().end(),
                 std::back_inserter(primes));
  for (const Integer& p : primes)
    if (p != 2) out.push_back(Place::prime(p));
  return out;
}

std::vector<Place> hilbert_bad_places(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw DomainError("hilbert_bad_places of zero");
  return hilbert_bad_places(SquareClass::of(a), SquareClass::of(b));
}

}  // namespace qfm
