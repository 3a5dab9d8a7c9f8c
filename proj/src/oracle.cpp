#include "qfm/oracle.hpp"

#include <algorithm>

#include "qfm/errors.hpp"

namespace qfm::oracle {

namespace {

// Coefficient reduced at p: p-adic valuation (0 or 1, squares removed) and
// its residue modulo the search modulus.
struct LocalCoefficient {
  unsigned valuation;
  std::uint64_t residue;
};

LocalCoefficient reduce_at(const Rational& c, const Integer& p, std::uint64_t modulus) {
  Integer n = c.get_num() * c.get_den();  // same square class as c
  Integer p2 = p * p;
  while (n % p2 == 0) n /= p2;
  unsigned v = (n % p == 0) ? 1 : 0;
  Integer r = n % Integer(static_cast<unsigned long>(modulus));
  if (r < 0) r += static_cast<unsigned long>(modulus);
  return {v, r.get_ui()};
}

class Bits {
 public:
  explicit Bits(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}
  void set(std::uint64_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::uint64_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

  // this |= { (a + u) mod size : a in src, u in shifts }
  void or_sumset(const Bits& src, const std::vector<std::uint64_t>& shifts) {
    if (!src.any()) return;
    // Doubled copy so that a rotation is a plain bit-range read.
    Bits doubled(2 * size_);
    for (std::uint64_t i = 0; i < size_; ++i)
      if (src.test(i)) {
        doubled.set(i);
        doubled.set(i + size_);
      }
    for (std::uint64_t u : shifts) {
      const std::uint64_t offset = size_ - u;  // rotated[i] = src[i - u] = doubled[i + offset]
      for (std::size_t k = 0; k < words_.size(); ++k) {
        const std::uint64_t bit = offset + 64 * k;
        const std::size_t w = bit / 64;
        const unsigned s = bit % 64;
        std::uint64_t value = doubled.words_[w] >> s;
        if (s && w + 1 < doubled.words_.size()) value |= doubled.words_[w + 1] << (64 - s);
        words_[k] |= value;
      }
    }
    if (size_ % 64) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

 private:
  std::uint64_t size_;
  std::vector<std::uint64_t> words_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= std::uint64_t{1} << 32) return (a % m) * (b % m) % m;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Distinct values c*x^2 mod M over units x, resp. non-units x.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> scaled_squares(std::uint64_t c, std::uint64_t modulus,
                                                                                 std::uint64_t p) {
  Bits unit_seen(modulus), nonunit_seen(modulus);
  std::vector<std::uint64_t> units, nonunits;
  for (std::uint64_t x = 0; x < modulus; ++x) {
    std::uint64_t value = mulmod(c, mulmod(x, x, modulus), modulus);
    bool is_unit = x % p != 0;
    Bits& seen = is_unit ? unit_seen : nonunit_seen;
    if (!seen.test(value)) {
      seen.set(value);
      (is_unit ? units : nonunits).push_back(value);
    }
  }
  return {units, nonunits};
}

std::uint64_t checked_modulus(const Integer& p, unsigned e, const OracleBudget& budget) {
  std::uint64_t m = search_modulus(p, e);
  if (m == 0 || m > budget.max_modulus) throw OracleBudgetExceeded("oracle modulus exceeds budget at p = " + p.get_str());
  return m;
}

}  // namespace

std::uint64_t search_modulus(const Integer& p, unsigned e) {
  const unsigned exponent = p == 2 ? 2 * e + 5 : 3;
  Integer m;
  mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), exponent);
  return m.fits_ulong_p() ? m.get_ui() : 0;
}

int conic_oracle(const Rational& a, const Rational& b, const Place& v, const OracleBudget& budget) {
  if (a == 0 || b == 0) throw DomainError("conic_oracle of zero");
  if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const Integer& p = v.p();
  if (!p.fits_ulong_p()) throw OracleBudgetExceeded("oracle prime too large");
  // Valuations first (modulus independent), then residues.
  unsigned e = std::max(reduce_at(a, p, 1).valuation, reduce_at(b, p, 1).valuation);
  const std::uint64_t m = checked_modulus(p, e, budget);
  const std::uint64_t coeff[3] = {1, (m - reduce_at(a, p, m).residue) % m, (m - reduce_at(b, p, m).residue) % m};

  // A primitive zero has some unit coordinate; scaling by its inverse makes it 1.
  // Chart i fixes x_i = 1, runs x_j over Z/m and looks -(c_i + c_j x_j^2) up
  // in the set of values c_k x_k^2.
  // x and -x have the same square, so half the residues suffice.
  std::vector<std::uint64_t> squares(m / 2 + 1);
  for (std::uint64_t x = 0; x < squares.size(); ++x) squares[x] = mulmod(x, x, m);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    Bits targets(m);
    for (std::uint64_t sq : squares) targets.set(mulmod(coeff[k], sq, m));
    for (std::uint64_t sq : squares) {
      std::uint64_t partial = (coeff[i] + mulmod(coeff[j], sq, m)) % m;
      if (targets.test((m - partial) % m)) return 1;
    }
  }
  return -1;
}

bool padic_isotropy_oracle(const QuadraticForm& q, const Integer& p, const OracleBudget& budget) {
  if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
  if (q.dim() > budget.max_dim) throw OracleBudgetExceeded("oracle dimension exceeds budget");
  if (!p.fits_ulong_p()) throw OracleBudgetExceeded("oracle prime too large");
  unsigned e = 0;
  for (const Rational& c : q.diagonal()) e = std::max(e, reduce_at(c, p, 1).valuation);
  const std::uint64_t m = checked_modulus(p, e, budget);
  const std::uint64_t pu = p.get_ui();

  // without_unit: partial sums over coordinates all divisible by p;
  // with_unit: partial sums where some coordinate is a unit.
  Bits without_unit(m), with_unit(m);
  without_unit.set(0);
  for (const Rational& c : q.diagonal()) {
    auto [units, nonunits] = scaled_squares(reduce_at(c, p, m).residue, m, pu);
    Bits next_without(m), next_with(m);
    next_without.or_sumset(without_unit, nonunits);
    next_with.or_sumset(without_unit, units);
    next_with.or_sumset(with_unit, units);
    next_with.or_sumset(with_unit, nonunits);
    without_unit = std::move(next_without);
    with_unit = std::move(next_with);
    // Remaining coordinates can be 0, so a primitive zero so far is final.
    if (with_unit.test(0)) return true;
  }
  return false;
}

std::optional<std::vector<Integer>> rational_zero_search(const QuadraticForm& q, unsigned height_bound) {
  // Integral coefficients with the same zero set.
  Integer common = 1;
  for (const Rational& c : q.diagonal()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> coeff;
  for (const Rational& c : q.diagonal()) coeff.push_back(Integer(c * common));

  const std::size_t n = coeff.size();
  // 0, 1, -1, 2, -2, ...
  std::vector<long> order{0};
  for (long h = 1; h <= static_cast<long>(height_bound); ++h) {
    order.push_back(h);
    order.push_back(-h);
  }
  std::vector<std::size_t> idx(n - 1, 0);
  std::vector<Integer> x(n);
  while (true) {
    Integer partial = 0;
    bool all_zero = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      x[i] = order[idx[i]];
      partial += coeff[i] * x[i] * x[i];
      all_zero = all_zero && x[i] == 0;
    }
    // coeff[n-1] * y^2 = -partial
    Integer rhs = -partial;
    if (rhs % coeff[n - 1] == 0) {
      Integer y2 = rhs / coeff[n - 1];
      if (y2 >= 0 && mpz_perfect_square_p(y2.get_mpz_t())) {
        Integer y = sqrt(y2);
        if (y <= height_bound && !(all_zero && y == 0)) {
          x[n - 1] = y;
          return x;
        }
      }
    }
    std::size_t k = 0;
    while (k + 1 < n && ++idx[k] == order.size()) idx[k++] = 0;
    if (k + 1 >= n) break;
  }
  return std::nullopt;
}

QuadraticForm random_form(std::mt19937_64& rng, int dim_lo, int dim_hi, int coeff_bound) {
  if (dim_lo < 1 || dim_hi < dim_lo || coeff_bound < 1) throw DomainError("random_form: bad ranges");
  const auto dim = dim_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(dim_hi - dim_lo + 1));
  std::vector<Rational> coeff;
  for (int i = 0; i < dim; ++i) {
    auto c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * coeff_bound)) - coeff_bound;
    coeff.emplace_back(c >= 0 ? c + 1 : c);  // skips 0
  }
  return QuadraticForm(std::move(coeff));
}

}  // namespace qfm::oracle
