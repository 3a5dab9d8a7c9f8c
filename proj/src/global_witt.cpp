#include "qfm/global_witt.hpp"

#include <algorithm>

namespace qfm {

std::vector<LocalProfile> local_profiles(const QuadraticForm& q) {
  std::vector<LocalProfile> out;
  for (const PlaceClass& v : relevant_place_classes(q)) out.push_back(local_profile(q, v));
  return out;
}

// Hasse-Minkowski gives dim q_an = max_v dim (q_v)_an over all places. Outside
// the explicit relevant places every coefficient is a p-adic unit, so hasse = 1
// and det is a unit: for odd dim the form is split (an_dim 1); for even dim it
// is split when disc is a local square and has an_dim 2 otherwise. The second
// case occurs at infinitely many primes exactly when disc != 1, and the
// GenericNonsquareDisc class evaluates it at one concrete such prime. The
// parity floor covers odd dimension, where an_dim >= 1 everywhere.
int global_anisotropic_dimension(const QuadraticForm& q) {
  int an = static_cast<int>(q.dim() % 2);
  for (const LocalProfile& p : local_profiles(q)) an = std::max(an, p.an_dim);
  return an;
}

int global_witt_index(const QuadraticForm& q) {
  return (static_cast<int>(q.dim()) - global_anisotropic_dimension(q)) / 2;
}

bool is_isotropic(const QuadraticForm& q) { return global_witt_index(q) > 0; }

}  // namespace qfm
