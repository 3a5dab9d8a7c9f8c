#pragma once

// Brute-force oracles for differential testing. Nothing on the main
// computation path calls into this module.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qfm/form.hpp"

namespace qfm::oracle {

struct OracleBudget {
  std::uint64_t max_modulus = std::uint64_t{1} << 22;
  std::size_t max_dim = 6;
};

// Search modulus for primitive zeros of a diagonal form at p whose
// coefficients have p-adic valuation at most `e` after removing squares.
//
// Odd p: p^3 for e <= 1. If a primitive zero mod p^3 has a unit coordinate on
// a unit coefficient, the derivative there is a unit and Hensel lifts it from
// mod p. Otherwise write q = q0(x) + p q1(y) with unit-coefficient parts q0,
// q1; every x coordinate is divisible by p, so x = p x' and
// q1(y) + p q0(x') = 0 mod p^2 with y primitive, which lifts on a unit
// coordinate of y.
// p = 2: the derivative 2 c x has valuation one, so lifting needs the zero
// mod 2^3, and the same rescaling argument adds two more factors of 2 when
// e = 1. 2^(2e+5) leaves margin above that.
std::uint64_t search_modulus(const Integer& p, unsigned e);

// (a,b)_v by exhaustive search for a primitive zero of z^2 - a x^2 - b y^2
// modulo the search modulus.
int conic_oracle(const Rational& a, const Rational& b, const Place& v, const OracleBudget& budget = {});

// Isotropy over Q_p by exhaustive primitive-zero search modulo the search
// modulus. The search is a set-valued dynamic program over the attainable
// partial sums, so it is exhaustive without enumerating every vector.
bool padic_isotropy_oracle(const QuadraticForm& q, const Integer& p, const OracleBudget& budget = {});

// Nonzero integer vector x with q(x) = 0 and max |x_i| <= height_bound.
std::optional<std::vector<Integer>> rational_zero_search(const QuadraticForm& q, unsigned height_bound);

// Diagonal form with dim in [dim_lo, dim_hi] and nonzero integer coefficients
// in [-coeff_bound, coeff_bound]. Uses plain modulo reduction so the stream is
// identical across standard libraries.
QuadraticForm random_form(std::mt19937_64& rng, int dim_lo, int dim_hi, int coeff_bound);

}  // namespace qfm::oracle
