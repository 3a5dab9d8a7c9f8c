#include "qfm/motive.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "qfm/errors.hpp"
#include "qfm/global_witt.hpp"

namespace qfm {

LocalPool::LocalPool(const LocalProfile& profile) : place_(profile.place) {
  for (const MotiveSummand& s : local_decomposition(profile).summands) {
    if (const auto* t = std::get_if<Tate>(&s)) {
      ++tates_[t->twist];
    } else {
      auto g = geometric(s);
      ++binaries_[{g[0], g[1]}];
    }
  }
}

int LocalPool::multiplicity(int a, int b) const {
  auto count = [](const auto& map, const auto& key) {
    auto it = map.find(key);
    return it == map.end() ? 0 : it->second;
  };
  int split = a == b ? count(tates_, a) / 2 : std::min(count(tates_, a), count(tates_, b));
  return count(binaries_, std::pair{a, b}) + split;
}

bool LocalPool::has_indecomposable(int a, int b) const {
  auto it = binaries_.find({a, b});
  return it != binaries_.end() && it->second > 0;
}

void LocalPool::take(int a, int b) {
  if (multiplicity(a, b) == 0) throw InternalError("take: pair not available at " + place_.name());
  auto erase_one = [](auto& map, const auto& key) {
    if (--map[key] == 0) map.erase(key);
  };
  if (has_indecomposable(a, b)) {
    erase_one(binaries_, std::pair{a, b});
  } else {
    erase_one(tates_, a);
    erase_one(tates_, b);
  }
}

std::vector<int> LocalPool::remaining_twists() const {
  std::vector<int> out;
  for (auto [t, c] : tates_) out.insert(out.end(), c, t);
  for (auto [pair, c] : binaries_)
    for (int i = 0; i < c; ++i) {
      out.push_back(pair.first);
      out.push_back(pair.second);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalPool> local_pools(const QuadraticForm& q) {
  std::vector<LocalPool> out;
  for (const LocalProfile& p : local_profiles(q)) out.emplace_back(p);
  return out;
}

namespace {

void check_pair_range(const QuadraticForm& q, int a, int b) {
  const int top = static_cast<int>(q.dim()) - 2;
  if (top < 0) throw DomainError("binary summands need dim >= 2");
  if (a < 0 || a > b || b > top)
    throw DomainError("twist pair (" + std::to_string(a) + "," + std::to_string(b) + ") outside 0 <= a <= b <= " +
                      std::to_string(top));
}

int global_tate_count(int twist, int dim, int witt) {
  return (twist < witt ? 1 : 0) + (twist > dim - 2 - witt ? 1 : 0);
}

}  // namespace

bool binary_summand_exists(const QuadraticForm& q, int a, int b) {
  check_pair_range(q, a, b);
  const auto pools = local_pools(q);
  return std::all_of(pools.begin(), pools.end(), [&](const LocalPool& p) { return p.multiplicity(a, b) > 0; });
}

std::vector<BinaryPair> list_global_binary_summands(const QuadraticForm& q) {
  std::vector<BinaryPair> out;
  const int top = static_cast<int>(q.dim()) - 2;
  if (top < 0) return out;
  const auto pools = local_pools(q);
  for (int a = 0; a <= top; ++a)
    for (int b = a; b <= top; ++b) {
      int mult = std::numeric_limits<int>::max();
      for (const LocalPool& p : pools) mult = std::min(mult, p.multiplicity(a, b));
      if (mult > 0) out.push_back({a, b, mult});
    }
  return out;
}

std::vector<MotiveSummand> classify_binary(const QuadraticForm& q, int a, int b) {
  if (!binary_summand_exists(q, a, b)) throw PreconditionError("no global binary summand at the given twists");
  const int n = static_cast<int>(q.dim());
  const int witt = global_witt_index(q);
  const int ca = global_tate_count(a, n, witt), cb = global_tate_count(b, n, witt);
  if (a == b ? ca >= 2 : (ca >= 1 && cb >= 1)) return {Tate{a}, Tate{b}};
  if (a == b) {
    SquareClass d = disc(q);
    if (d.is_trivial()) throw InternalError("middle binary summand with trivial discriminant");
    return {DiscMotive{a, d}};
  }
  auto fold = fold_for_gap(b - a);
  if (!fold) throw InternalError("binary summand gap " + std::to_string(b - a) + " is not 2^(n-1) - 1");
  return {RostTwist{*fold, a, std::nullopt}};
}

QuadraticForm PfisterPair::form() const {
  QuadraticForm first({Rational(1), Rational(a)});
  QuadraticForm second({Rational(1), Rational(b)});
  return tensor(first, second);
}

namespace {

// Square-free integers ordered by absolute value, positive first. Cached
// because factoring the list dominates short searches.
std::vector<SquareClass> squarefree_candidates(std::size_t count) {
  static std::mutex mutex;
  static std::vector<SquareClass> cache;
  static long next = 1;
  std::lock_guard lock(mutex);
  while (cache.size() < count) {
    SquareClass c = SquareClass::of(next);
    if (c.rep() == next) {
      cache.push_back(c);
      cache.push_back(-c);
    }
    ++next;
  }
  return cache;
}

}  // namespace

PfisterPair find_pfister_pair(const std::vector<Place>& anisotropic, const std::vector<Place>& also_check,
                              const WitnessOptions& options) {
  std::set<Place> target(anisotropic.begin(), anisotropic.end());
  if (target.size() % 2) throw PreconditionError("a quaternion algebra ramifies at an even number of places");
  const bool real_target = target.count(Place::real()) > 0;
  std::vector<Integer> odd_target;
  for (const Place& v : target)
    if (!v.is_real() && v.p() != 2) odd_target.push_back(v.p());

  // Copied: the cache may grow concurrently.
  std::vector<SquareClass> candidates = squarefree_candidates(options.search_bound);
  candidates.resize(options.search_bound);
  for (const SquareClass& a : candidates) {
    Integer needed = 1;  // odd target primes that must divide b
    for (const Integer& p : odd_target)
      if (!a.divisible_by(p)) needed *= p;
    const SquareClass required = SquareClass::of(needed);
    // b = needed * k runs through the square-free multiples of `needed` by |b|.
    for (const SquareClass& k : candidates) {
      if (std::any_of(k.primes().begin(), k.primes().end(), [&](const Integer& p) { return required.divisible_by(p); }))
        continue;
      const SquareClass b = k * required;
      // (-a,-b)_inf = -1 iff a, b > 0
      if ((a.sign() > 0 && b.sign() > 0) != real_target) continue;
      const SquareClass na = -a, nb = -b;
      // Target places first: most candidates fail there.
      if (!std::all_of(target.begin(), target.end(), [&](const Place& v) { return hilbert(na, nb, v) == -1; }))
        continue;
      auto split_at = [&](const Place& v) { return target.count(v) || hilbert(na, nb, v) == 1; };
      const auto bad = hilbert_bad_places(na, nb);
      bool ok = std::all_of(also_check.begin(), also_check.end(), split_at) && std::all_of(bad.begin(), bad.end(), split_at);
      if (ok) return {a.rep(), b.rep()};
    }
  }
  throw WitnessNotFound("witness not found within bound " + std::to_string(options.search_bound));
}

namespace {

// d with dim q = 2d + 1 or 2d + 2.
int middle_index(const QuadraticForm& q) { return (static_cast<int>(q.dim()) - 1) / 2; }

std::vector<Place> explicit_places(const std::vector<PlaceClass>& classes) {
  std::vector<Place> out;
  for (const PlaceClass& v : classes)
    if (!v.is_generic()) out.push_back(v.place());
  return out;
}

}  // namespace

PfisterPair construct_pfister_witness(const QuadraticForm& q, const WitnessOptions& options) {
  if (q.dim() < 3) throw PreconditionError("pfister witness needs dim >= 3");
  const int d = middle_index(q);
  bool hypothesis = binary_summand_exists(q, d - 1, d);
  if (!hypothesis && q.dim() % 2 == 0) hypothesis = binary_summand_exists(q, d, d + 1);
  if (!hypothesis) throw PreconditionError("some completion has no summand F(d-1) + F(d)");

  std::vector<Place> target;
  for (const LocalProfile& p : local_profiles(q)) {
    if (p.split()) continue;
    if (p.place.is_generic()) throw PreconditionError("form is non-split at infinitely many places");
    target.push_back(p.place.place());
  }
  return find_pfister_pair(target, explicit_places(relevant_place_classes(q)), options);
}

WitnessForm construct_witness_form(const QuadraticForm& q, int a, int b, const WitnessOptions& options) {
  if (!binary_summand_exists(q, a, b)) throw PreconditionError("no global binary summand at the given twists");
  auto fold_opt = fold_for_gap(b - a);
  if (!fold_opt || *fold_opt < 2) throw PreconditionError("witness form needs a Rost pair of fold >= 2");
  const int n = *fold_opt;
  const std::int64_t pfister_dim = std::int64_t{1} << n;

  std::vector<WitnessPlanEntry> plan;
  const WitnessPlanEntry* real_entry = nullptr;
  std::optional<LocalProfile> real_profile;
  for (const LocalProfile& profile : local_profiles(q)) {
    WitnessPlanEntry e;
    e.place = profile.place;
    e.indecomposable = LocalPool(profile).has_indecomposable(a, b);
    if (e.indecomposable) {
      ExcellentProfile ex = alternating_expansion(profile.an_dim);
      auto it = std::find(ex.exponents.begin(), ex.exponents.end(), n);
      if (it == ex.exponents.end()) throw InternalError("Rost fold missing from the local expansion");
      e.k = static_cast<int>(it - ex.exponents.begin());
      e.partial = partial_dim(ex, e.k);
      e.remainder = std::abs(profile.an_dim - e.partial);
    }
    if (profile.place.is_real()) real_profile = profile;
    plan.push_back(e);
  }
  for (const auto& e : plan)
    if (e.place.is_real()) real_entry = &e;

  // Pfister factor with the prescribed splitting locus.
  std::optional<PfisterPair> pair;
  std::optional<QuadraticForm> pfister;
  if (n == 2) {
    std::vector<Place> target;
    for (const auto& e : plan) {
      if (!e.indecomposable) continue;
      if (e.place.is_generic()) throw InternalError("indecomposable fold-2 summand at infinitely many places");
      target.push_back(e.place.place());
    }
    pair = find_pfister_pair(target, explicit_places(relevant_place_classes(q)), options);
    pfister = pair->form();
  } else {
    // Finite places only carry folds <= 2, so only the real sign matters.
    const Rational sign = real_entry->indecomposable ? 1 : -1;
    QuadraticForm form({Rational(1), sign});
    for (int i = 1; i < n; ++i) form = tensor(form, QuadraticForm({Rational(1), Rational(1)}));
    pfister = form;
  }

  // Odd-dimensional factor f = alpha * (f_1 + <b>)_an.
  std::vector<Rational> f_entries{Rational(1)};
  if (real_entry->indecomposable) {
    const int k = real_entry->k;
    const std::int64_t f1_dim = real_entry->partial / pfister_dim - (k % 2 ? -1 : 1);
    std::vector<Rational> sum(static_cast<std::size_t>(f1_dim), Rational(1));  // <1,1> (x) <1,...,1>
    const Rational b_sign = k % 2 ? -1 : 1;
    // cancel hyperbolic planes <1,-1>
    if (b_sign < 0 && !sum.empty())
      sum.pop_back();
    else
      sum.push_back(b_sign);
    const bool positive_kernel = real_profile->signature->positives > real_profile->signature->negatives;
    const Rational alpha = positive_kernel ? 1 : -1;
    f_entries.clear();
    for (const Rational& x : sum) f_entries.push_back(alpha * x);
  }
  QuadraticForm f(std::move(f_entries));
  QuadraticForm p = tensor(f, *pfister);
  const int s = static_cast<int>((static_cast<std::int64_t>(p.dim()) - pfister_dim) / 2);
  return WitnessForm{n, a, *pfister, f, p, s, pair, std::move(plan)};
}

namespace {

// Anisotropic dimensions of g at every place class that can matter, plus the
// value dim g mod 2 taken at the remaining split places.
std::vector<int> anisotropic_dims_everywhere(const QuadraticForm& g) {
  std::vector<int> out;
  for (const LocalProfile& p : local_profiles(g)) out.push_back(p.an_dim);
  out.push_back(static_cast<int>(g.dim() % 2));
  return out;
}

}  // namespace

bool verify_witness_inequalities(const QuadraticForm& q, const QuadraticForm& p, int t, int s) {
  const std::int64_t pfister_dim = static_cast<std::int64_t>(p.dim()) - 2 * std::int64_t{s};
  if (pfister_dim <= 0 || (pfister_dim & (pfister_dim - 1)) != 0)
    throw PreconditionError("dim p - 2s must be a power of two");
  const std::int64_t dim_q = static_cast<std::int64_t>(q.dim());
  const QuadraticForm difference = direct_sum(q, scale(p, -1));
  for (int an : anisotropic_dims_everywhere(difference)) {
    if (!(dim_q - an > 2 * std::int64_t{t})) return false;
    if (!(an + dim_q - 2 * std::int64_t{t} - 2 < pfister_dim)) return false;
  }
  return true;
}

WitnessReport check_witness(const QuadraticForm& q, const WitnessForm& w) {
  WitnessReport report{true, true, true, false};
  const QuadraticForm difference = direct_sum(q, scale(w.product, -1));
  for (const WitnessPlanEntry& e : w.plan) {
    const bool pfister_split = local_profile(w.pfister, e.place).split();
    if (pfister_split == e.indecomposable) report.splitting_locus = false;
    if (!e.indecomposable) continue;
    if (local_profile(w.product, e.place).an_dim != e.partial) report.product_dimension = false;
    if (local_profile(difference, e.place).an_dim != e.remainder) report.difference_dimension = false;
  }
  // Places where the Pfister form has bad reduction but q does not: q is split
  // there, so the Pfister form must be too.
  std::set<Place> known;
  for (const auto& e : w.plan) known.insert(e.place.place());
  for (const PlaceClass& v : relevant_place_classes(w.pfister)) {
    if (v.is_generic() || known.count(v.place())) continue;
    const bool q_split = local_profile(q, v).split();
    const bool pfister_split = local_profile(w.pfister, v).split();
    if (q_split != pfister_split) report.splitting_locus = false;
  }
  report.inequalities = verify_witness_inequalities(q, w.product, w.twist, w.s);
  return report;
}

}  // namespace qfm
