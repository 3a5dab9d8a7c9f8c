#pragma once

// Witt decomposition at a single completion and the motivic decomposition of
// the local quadric. Every anisotropic form over R or Q_p is excellent, so the
// decomposition is a function of (dim, Witt index, anisotropic dimension).

#include <cstdint>
#include <optional>
#include <vector>

#include "qfm/form.hpp"
#include "qfm/summand.hpp"

namespace qfm {

struct LocalProfile {
  PlaceClass place = PlaceClass::of(Place::real());
  int dim = 0;
  SquareClass det;
  int hasse = 1;
  std::optional<Signature> signature;  // real place only
  int witt_index = 0;
  int an_dim = 0;

  SquareClass disc() const;
  bool split() const { return witt_index == dim / 2; }
  // Profile of the form with `planes` hyperbolic planes removed.
  LocalProfile without_planes(int planes) const;
};

LocalProfile local_profile(const QuadraticForm& q, const PlaceClass& v);

// Rank-indexed isotropy test over Q_p from (dim, det, hasse).
bool locally_isotropic(int dim, const SquareClass& det, int hasse, const Place& v);

// Alternating power-of-two expansion D = 2^n_0 - 2^n_1 + ... +- 2^n_r of an
// anisotropic excellent form's dimension, with the Rost multiplicities m_j.
struct ExcellentProfile {
  std::vector<int> exponents;            // n_0 > n_1 > ... > n_r >= 0
  std::vector<std::int64_t> multiplicities;  // m_0 .. m_rtilde
  int r_tilde = -1;                      // r for even D, r - 1 for odd D

  int r() const { return static_cast<int>(exponents.size()) - 1; }
  std::int64_t dimension() const;
};

ExcellentProfile alternating_expansion(std::int64_t d);

// dim [q]_k = sum_{i<=k} (-1)^i 2^n_i, for 0 <= k <= r.
std::int64_t partial_dim(const ExcellentProfile& profile, int k);

Decomposition local_decomposition(const LocalProfile& profile);

}  // namespace qfm
