#pragma once

// Binary direct summands of M(q) over Q, decided place by place: a binary
// split motive F(a) + F(b) lifts to a global summand iff every completion has
// a local summand with that geometric realization.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qfm/form.hpp"
#include "qfm/local.hpp"

namespace qfm {

// Local summands at one place, indexed for pair lookups.
class LocalPool {
 public:
  explicit LocalPool(const LocalProfile& profile);

  const PlaceClass& place() const { return place_; }
  // Number of disjoint local summands geometrically F(a) + F(b).
  int multiplicity(int a, int b) const;
  bool has_indecomposable(int a, int b) const;
  // Removes one realization of (a, b), preferring an indecomposable summand.
  void take(int a, int b);
  std::vector<int> remaining_twists() const;

 private:
  PlaceClass place_;
  std::map<int, int> tates_;
  std::map<std::pair<int, int>, int> binaries_;
};

std::vector<LocalPool> local_pools(const QuadraticForm& q);

struct BinaryPair {
  int a = 0;
  int b = 0;
  int multiplicity = 0;
  friend bool operator==(const BinaryPair&, const BinaryPair&) = default;
};

bool binary_summand_exists(const QuadraticForm& q, int a, int b);
std::vector<BinaryPair> list_global_binary_summands(const QuadraticForm& q);

// Two Tate motives when both twists are global Tate summands, otherwise the
// indecomposable binary summand: a discriminant motive for a = b, a Rost twist
// for b - a = 2^(n-1) - 1.
std::vector<MotiveSummand> classify_binary(const QuadraticForm& q, int a, int b);

struct WitnessOptions {
  // Square-free candidates tried per Pfister slot.
  std::size_t search_bound = 10000;
};

// The 2-fold Pfister form <1,a> (x) <1,b>.
struct PfisterPair {
  Integer a;
  Integer b;
  QuadraticForm form() const;
  friend bool operator==(const PfisterPair&, const PfisterPair&) = default;
};

// Square-free (a, b), first in the order |a| then |b| (positive first), with
// <1,a> (x) <1,b> anisotropic exactly at `anisotropic`. `also_check` lists
// further places where it must be split.
PfisterPair find_pfister_pair(const std::vector<Place>& anisotropic, const std::vector<Place>& also_check,
                              const WitnessOptions& options = {});

// For q whose completions all carry a summand F(d-1) + F(d)
// (d = floor((dim q - 1) / 2)): a 2-fold Pfister form split exactly where q
// splits. The construction targets anisotropic q; isotropic input is accepted
// and gives the split form (1, -1) when q is split everywhere.
PfisterPair construct_pfister_witness(const QuadraticForm& q, const WitnessOptions& options = {});

struct WitnessPlanEntry {
  PlaceClass place = PlaceClass::of(Place::real());
  bool indecomposable = false;  // local summand with the pair is not split
  int k = -1;                   // n_k == fold; only for indecomposable places
  std::int64_t partial = 0;     // dim [(q_v)_an]_k
  std::int64_t remainder = 0;   // |dim (q_v)_an - partial|
};

struct WitnessForm {
  int fold = 0;
  int twist = 0;
  QuadraticForm pfister;
  QuadraticForm factor;  // odd-dimensional f
  QuadraticForm product; // p = f (x) pfister
  int s = 0;             // (dim p - 2^fold) / 2
  std::optional<PfisterPair> pfister_pair;
  std::vector<WitnessPlanEntry> plan;
};

WitnessForm construct_witness_form(const QuadraticForm& q, int a, int b, const WitnessOptions& options = {});

// (dim q - dim (q - p)_an) / 2 > t and dim (p - q)_an + dim q - 2t - 2 < 2^n at
// every place, with 2^n = dim p - 2s.
bool verify_witness_inequalities(const QuadraticForm& q, const QuadraticForm& p, int t, int s);

struct WitnessReport {
  bool splitting_locus = false;   // pfister split exactly where the local summand is split
  bool product_dimension = false; // dim (p_v)_an matches the plan's partial sum
  bool difference_dimension = false;  // dim (q_v - p_v)_an matches the plan's remainder
  bool inequalities = false;
  bool all() const { return splitting_locus && product_dimension && difference_dimension && inequalities; }
};

WitnessReport check_witness(const QuadraticForm& q, const WitnessForm& w);

}  // namespace qfm
