#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "qfm/arith.hpp"

namespace qfm {

// Non-degenerate diagonal quadratic form <a_1, ..., a_n> over Q.
class QuadraticForm {
 public:
  explicit QuadraticForm(std::vector<Rational> diagonal);

  std::size_t dim() const { return diagonal_.size(); }
  const std::vector<Rational>& diagonal() const { return diagonal_; }
  const std::vector<SquareClass>& classes() const { return classes_; }
  const Rational& operator[](std::size_t i) const { return diagonal_[i]; }

  std::string to_string() const;

 private:
  std::vector<Rational> diagonal_;
  std::vector<SquareClass> classes_;
};

// Comma-separated rationals, e.g. "1,-2,3/5".
QuadraticForm parse_form(std::string_view csv);

// {"gram": [["1","0"],["0","-1"]]} (entries may also be JSON integers).
QuadraticForm parse_gram_json(std::string_view json_text);

using GramMatrix = std::vector<std::vector<Rational>>;

// Symmetric congruence reduction. Throws DomainError("degenerate form") for
// singular input and for non-symmetric input.
QuadraticForm diagonalize(const GramMatrix& gram);

struct Signature {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

SquareClass det_class(const QuadraticForm& q);
SquareClass disc(const QuadraticForm& q);
int hasse(const QuadraticForm& q, const Place& v);
Signature signature(const QuadraticForm& q);

QuadraticForm scale(const QuadraticForm& q, const Rational& c);
QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b);
// <value, ..., value> of dimension n.
QuadraticForm repeated(const Rational& value, std::size_t n);

// A place, or the representative of the infinite family of primes not
// dividing any coefficient at which an even-dimensional form has non-square
// discriminant. The witness is a concrete such prime.
class PlaceClass {
 public:
  enum class Kind { Real, Prime, GenericNonsquareDisc };

  static PlaceClass of(const Place& v) { return PlaceClass(v.is_real() ? Kind::Real : Kind::Prime, v); }
  static PlaceClass generic(const Place& witness) { return PlaceClass(Kind::GenericNonsquareDisc, witness); }

  Kind kind() const { return kind_; }
  bool is_real() const { return kind_ == Kind::Real; }
  bool is_generic() const { return kind_ == Kind::GenericNonsquareDisc; }
  // The concrete completion that computations run on.
  const Place& place() const { return place_; }
  std::string name() const;

  friend bool operator==(const PlaceClass&, const PlaceClass&) = default;
  friend auto operator<=>(const PlaceClass& a, const PlaceClass& b) {
    if (a.kind_ != b.kind_ && (a.is_generic() || b.is_generic()))
      return a.is_generic() ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.place_ <=> b.place_;
  }

 private:
  PlaceClass(Kind kind, Place place) : kind_(kind), place_(std::move(place)) {}
  Kind kind_;
  Place place_;
};

// Real, 2, every odd prime dividing a coefficient's square-free part, and
// for even dimension with disc != 1 the generic non-square class. Sorted.
std::vector<PlaceClass> relevant_place_classes(const QuadraticForm& q);

// Smallest odd prime outside `excluded` at which d is a local non-square.
Place nonsquare_witness(const SquareClass& d, const std::vector<Integer>& excluded);

struct GlobalInvariants {
  std::size_t dim = 0;
  SquareClass det;
  SquareClass disc;
  Signature signature;
  std::vector<std::pair<PlaceClass, int>> hasse;  // over relevant place classes
};

GlobalInvariants global_invariants(const QuadraticForm& q);

}  // namespace qfm
