#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qfm/arith.hpp"

namespace qfm {

// Tate motive F(twist).
struct Tate {
  int twist = 0;
  friend bool operator==(const Tate&, const Tate&) = default;
};

// Twist of the Rost motive of an anisotropic `fold`-fold Pfister form.
// Geometrically F(twist) + F(twist + 2^(fold-1) - 1).
struct RostTwist {
  int fold = 1;
  int twist = 0;
  // Pfister slots (a, b) of <1,a> (x) <1,b> when a concrete form is known.
  std::optional<std::pair<Rational, Rational>> pfister_tag;
  friend bool operator==(const RostTwist& a, const RostTwist& b) {
    return a.fold == b.fold && a.twist == b.twist && a.pfister_tag == b.pfister_tag;
  }
};

// M(Spec Q(sqrt(disc)))(twist); geometrically F(twist) + F(twist).
struct DiscMotive {
  int twist = 0;
  SquareClass disc;
  friend bool operator==(const DiscMotive&, const DiscMotive&) = default;
};

// Non-binary remainder summand, rank 4, 6 or 8.
struct UpperMotive {
  int rank = 0;
  std::vector<int> geometric;  // sorted twist multiset
  bool decomposable = false;
  friend bool operator==(const UpperMotive&, const UpperMotive&) = default;
};

using MotiveSummand = std::variant<Tate, RostTwist, DiscMotive, UpperMotive>;

// Sorted Tate twists of the summand over an algebraic closure.
std::vector<int> geometric(const MotiveSummand& s);
int lowest_twist(const MotiveSummand& s);
// Total order: lowest twist, then kind (tate < rost < disc < upper), then payload.
bool summand_less(const MotiveSummand& a, const MotiveSummand& b);
std::string describe(const MotiveSummand& s);

struct Decomposition {
  int dim = 0;  // dimension of the quadratic form
  std::vector<MotiveSummand> summands;

  void normalize();
  std::vector<int> geometric_twists() const;  // sorted multiset
  std::size_t rank() const { return geometric_twists().size(); }
  std::string describe() const;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// 2^(fold-1) - 1, the gap between the two Tate twists of a Rost motive.
constexpr int rost_gap(int fold) { return (1 << (fold - 1)) - 1; }

// fold with rost_gap(fold) == gap, or nullopt.
std::optional<int> fold_for_gap(int gap);

}  // namespace qfm
