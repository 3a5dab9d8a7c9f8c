#include "qfm/decomposer.hpp"

#include <algorithm>
#include <sstream>

#include "qfm/errors.hpp"
#include "qfm/global_witt.hpp"
#include "qfm/motive.hpp"

namespace qfm {

namespace {

bool is_power_of_two_minus(int value, int minus, int min_r) {
  for (int r = min_r; r < 31; ++r)
    if ((1 << r) - minus == value) return true;
  return false;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::vector<MotiveSummand> classify_remainder(std::vector<int> twists, bool odd, const SquareClass& disc) {
  if (twists.empty()) return {};
  std::sort(twists.begin(), twists.end());
  const int s = twists.front(), total = twists.front() + twists.back();
  auto fail = [&](const std::string& why) -> std::vector<MotiveSummand> {
    throw InternalError("remainder {" + join(twists) + "} (" + (odd ? "odd" : "even") + " dim): " + why);
  };

  std::vector<std::vector<MotiveSummand>> matches;
  if (odd) {
    if (total % 2 == 0) return fail("odd shape needs s + (2d-s-1) odd");
    const int d = (total + 1) / 2;
    if (twists == std::vector<int>{s, d - 1, d, 2 * d - s - 1}) {
      if (!is_power_of_two_minus(d - s, 1, 2)) return fail("d - s is not 2^r - 1 with r >= 2");
      matches.push_back({UpperMotive{4, twists, false}});
    }
  } else {
    if (total % 2) return fail("even shapes are symmetric about d");
    const int d = total / 2;
    if (twists == std::vector<int>{s, d, d, 2 * d - s}) {
      if (!is_power_of_two_minus(d - s, 1, 1)) return fail("d - s is not 2^r - 1 with r >= 1");
      matches.push_back({UpperMotive{4, twists, false}});
    }
    if (twists == std::vector<int>{s, d - 1, d, d, d + 1, 2 * d - s}) {
      if (!is_power_of_two_minus(d - s, 2, 2)) return fail("d - s is not 2^r - 2 with r >= 2");
      matches.push_back({UpperMotive{6, twists, false}});
    }
    if (twists == std::vector<int>{s, s + 1, d - 1, d, d, d + 1, 2 * d - s - 1, 2 * d - s}) {
      if (!is_power_of_two_minus(d - s, 1, 2)) return fail("d - s is not 2^r - 1 with r >= 2");
      if (disc.is_trivial()) {
        matches.push_back({UpperMotive{4, {s, d - 1, d, 2 * d - s - 1}, false},
                           UpperMotive{4, {s + 1, d, d + 1, 2 * d - s}, false}});
      } else {
        matches.push_back({UpperMotive{8, twists, false}});
      }
    }
  }
  if (matches.empty()) return fail("no allowed shape");
  if (matches.size() > 1) return fail("ambiguous shape");
  return matches.front();
}

Decomposition decompose(const QuadraticForm& q) {
  const int n = static_cast<int>(q.dim());
  if (n < 2) throw DomainError("decompose needs dim >= 2");
  const int m = global_witt_index(q);
  Decomposition out{n, {}};
  for (int i = 0; i < m; ++i) {
    out.summands.push_back(Tate{i});
    out.summands.push_back(Tate{n - 2 - i});
  }

  // Anisotropic core: twists 0..n-2-2m, shifted by m at the end.
  const int core_dim = n - 2 * m;
  if (core_dim >= 2) {
    std::vector<LocalPool> pools;
    for (const LocalProfile& p : local_profiles(q)) pools.emplace_back(p.without_planes(m));
    const SquareClass d = disc(q);
    const int top = core_dim - 2;
    for (int a = 0; a <= top; ++a)
      for (int b = a; b <= top; ++b)
        while (std::all_of(pools.begin(), pools.end(), [&](const LocalPool& p) { return p.multiplicity(a, b) > 0; })) {
          for (LocalPool& p : pools) p.take(a, b);
          if (a == b) {
            if (d.is_trivial()) throw InternalError("middle binary summand with trivial discriminant");
            out.summands.push_back(DiscMotive{a + m, d});
          } else {
            auto fold = fold_for_gap(b - a);
            if (!fold) throw InternalError("global pair (" + std::to_string(a) + "," + std::to_string(b) +
                                           ") has gap outside 2^(n-1) - 1");
            out.summands.push_back(RostTwist{*fold, a + m, std::nullopt});
          }
        }

    const std::vector<int> rest = pools.front().remaining_twists();
    for (const LocalPool& p : pools)
      if (p.remaining_twists() != rest)
        throw InternalError("remainder differs at " + p.place().name() + ": {" + join(p.remaining_twists()) +
                            "} vs {" + join(rest) + "}");
    std::vector<int> shifted = rest;
    for (int& t : shifted) t += m;
    for (MotiveSummand& s : classify_remainder(shifted, n % 2 == 1, d)) out.summands.push_back(std::move(s));
  }
  out.normalize();
  return out;
}

}  // namespace qfm
