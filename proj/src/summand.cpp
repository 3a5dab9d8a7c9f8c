#include "qfm/summand.hpp"

#include <algorithm>
#include <sstream>

namespace qfm {

std::vector<int> geometric(const MotiveSummand& s) {
  struct Visitor {
    std::vector<int> operator()(const Tate& t) const { return {t.twist}; }
    std::vector<int> operator()(const RostTwist& r) const { return {r.twist, r.twist + rost_gap(r.fold)}; }
    std::vector<int> operator()(const DiscMotive& d) const { return {d.twist, d.twist}; }
    std::vector<int> operator()(const UpperMotive& u) const { return u.geometric; }
  };
  return std::visit(Visitor{}, s);
}

int lowest_twist(const MotiveSummand& s) { return geometric(s).front(); }

bool summand_less(const MotiveSummand& a, const MotiveSummand& b) {
  int ta = lowest_twist(a), tb = lowest_twist(b);
  if (ta != tb) return ta < tb;
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* ra = std::get_if<RostTwist>(&a)) return ra->fold < std::get<RostTwist>(b).fold;
  if (const auto* ua = std::get_if<UpperMotive>(&a)) return ua->geometric < std::get<UpperMotive>(b).geometric;
  if (const auto* da = std::get_if<DiscMotive>(&a)) return da->disc < std::get<DiscMotive>(b).disc;
  return false;
}

std::string describe(const MotiveSummand& s) {
  std::ostringstream out;
  if (const auto* t = std::get_if<Tate>(&s)) {
    out << "F(" << t->twist << ")";
  } else if (const auto* r = std::get_if<RostTwist>(&s)) {
    out << "R_" << r->fold << "(" << r->twist << ")";
  } else if (const auto* d = std::get_if<DiscMotive>(&s)) {
    out << "D[" << d->disc.rep().get_str() << "](" << d->twist << ")";
  } else {
    const auto& u = std::get<UpperMotive>(s);
    out << "U" << u.rank << "{";
    for (std::size_t i = 0; i < u.geometric.size(); ++i) out << (i ? "," : "") << u.geometric[i];
    out << "}";
  }
  return out.str();
}

void Decomposition::normalize() { std::stable_sort(summands.begin(), summands.end(), summand_less); }

std::vector<int> Decomposition::geometric_twists() const {
  std::vector<int> out;
  for (const auto& s : summands) {
    auto g = geometric(s);
    out.insert(out.end(), g.begin(), g.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Decomposition::describe() const {
  if (summands.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < summands.size(); ++i) out += (i ? " + " : "") + qfm::describe(summands[i]);
  return out;
}

std::optional<int> fold_for_gap(int gap) {
  for (int fold = 1; fold < 31; ++fold)
    if (rost_gap(fold) == gap) return fold;
  return std::nullopt;
}

}  // namespace qfm
