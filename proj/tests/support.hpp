#pragma once

#include <random>
#include <string>
#include <vector>

#include "qfm/form.hpp"
#include "qfm/summand.hpp"

namespace qfm::test {

inline QuadraticForm form(const std::string& csv) { return parse_form(csv); }

inline QuadraticForm ones(std::size_t n) { return repeated(Rational(1), n); }

inline Place at(long p) { return p == 0 ? Place::real() : Place::prime(p); }

// Summand multiset in normal order, for exact comparisons.
inline Decomposition normalized(int dim, std::vector<MotiveSummand> summands) {
  Decomposition d{dim, std::move(summands)};
  d.normalize();
  return d;
}

inline Rational random_nonzero(std::mt19937_64& rng, long bound) {
  long c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound)) - bound;
  return Rational(c >= 0 ? c + 1 : c);
}

}  // namespace qfm::test
