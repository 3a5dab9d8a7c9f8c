#include "qfm/form.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qfm/errors.hpp"

namespace qfm {

QuadraticForm::QuadraticForm(std::vector<Rational> diagonal) : diagonal_(std::move(diagonal)) {
  if (diagonal_.empty()) throw DomainError("quadratic form must have dimension >= 1");
  classes_.reserve(diagonal_.size());
  for (Rational& a : diagonal_) {
    if (a == 0) throw DomainError("degenerate form: zero diagonal entry");
    a.canonicalize();
    classes_.push_back(SquareClass::of(a));
  }
}

std::string QuadraticForm::to_string() const {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < diagonal_.size(); ++i) out << (i ? "," : "") << qfm::to_string(diagonal_[i]);
  out << '>';
  return out.str();
}

QuadraticForm parse_form(std::string_view csv) {
  std::vector<Rational> entries;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    entries.push_back(parse_rational(csv.substr(start, comma - start)));
    start = comma + 1;
  }
  return QuadraticForm(std::move(entries));
}

QuadraticForm parse_gram_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed gram JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("gram") || !doc["gram"].is_array())
    throw DomainError("gram JSON must be an object with a \"gram\" array");
  GramMatrix gram;
  for (const auto& row : doc["gram"]) {
    if (!row.is_array()) throw DomainError("gram rows must be arrays");
    auto& out = gram.emplace_back();
    for (const auto& entry : row) {
      if (entry.is_string()) {
        out.push_back(parse_rational(entry.get<std::string>()));
      } else if (entry.is_number_integer()) {
        out.emplace_back(Integer(std::to_string(entry.get<long long>())));
      } else {
        throw DomainError("gram entries must be rational strings or integers");
      }
    }
  }
  return diagonalize(gram);
}

QuadraticForm diagonalize(const GramMatrix& gram) {
  const std::size_t n = gram.size();
  if (n == 0) throw DomainError("empty Gram matrix");
  for (const auto& row : gram)
    if (row.size() != n) throw DomainError("Gram matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) throw DomainError("Gram matrix must be symmetric");

  GramMatrix a = gram;
  auto add_to = [&](std::size_t dst, std::size_t src, const Rational& factor) {
    // basis change e_dst += factor * e_src, applied as a congruence
    for (std::size_t c = 0; c < n; ++c) a[dst][c] += factor * a[src][c];
    for (std::size_t r = 0; r < n; ++r) a[r][dst] += factor * a[r][src];
  };
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };

  std::vector<Rational> diagonal;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][pivot] == 0) ++pivot;
    if (pivot == n) {
      // No diagonal pivot: use an off-diagonal entry, e_i + e_j has q = 2 a_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw DomainError("degenerate form");
      add_to(pi, pj, Rational(1));
      pivot = pi;
    }
    if (pivot != k) swap_basis(pivot, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[j][k] == 0) continue;
      Rational factor = -a[j][k] / a[k][k];
      add_to(j, k, factor);
    }
    diagonal.push_back(a[k][k]);
  }
  return QuadraticForm(std::move(diagonal));
}

SquareClass det_class(const QuadraticForm& q) {
  SquareClass d;
  for (const SquareClass& c : q.classes()) d = d * c;
  return d;
}

SquareClass disc(const QuadraticForm& q) {
  const std::size_t n = q.dim();
  SquareClass d = det_class(q);
  return (n * (n - 1) / 2) % 2 ? -d : d;
}

int hasse(const QuadraticForm& q, const Place& v) {
  if (v.is_real()) {
    const std::size_t m = signature(q).negatives;
    return (m * (m - 1) / 2) % 2 ? -1 : 1;
  }
  // prod_{i<j} (a_i, a_j) = prod_j (a_j, a_1 ... a_{j-1}) by bimultiplicativity
  int h = 1;
  SquareClass prefix;
  for (const SquareClass& c : q.classes()) {
    h *= hilbert(prefix, c, v);
    prefix = prefix * c;
  }
  return h;
}

Signature signature(const QuadraticForm& q) {
  Signature s;
  for (const Rational& a : q.diagonal()) (sgn(a) > 0 ? s.positives : s.negatives)++;
  return s;
}

QuadraticForm scale(const QuadraticForm& q, const Rational& c) {
  if (c == 0) throw DomainError("scale by zero");
  std::vector<Rational> out;
  for (const Rational& a : q.diagonal()) out.push_back(a * c);
  return QuadraticForm(std::move(out));
}

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
  std::vector<Rational> out = a.diagonal();
  out.insert(out.end(), b.diagonal().begin(), b.diagonal().end());
  return QuadraticForm(std::move(out));
}

QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b) {
  std::vector<Rational> out;
  for (const Rational& x : a.diagonal())
    for (const Rational& y : b.diagonal()) out.push_back(x * y);
  return QuadraticForm(std::move(out));
}

QuadraticForm repeated(const Rational& value, std::size_t n) {
  return QuadraticForm(std::vector<Rational>(n, value));
}

std::string PlaceClass::name() const {
  return is_generic() ? "generic(" + place_.name() + ")" : place_.name();
}

Place nonsquare_witness(const SquareClass& d, const std::vector<Integer>& excluded) {
  if (d.is_trivial()) throw DomainError("trivial class is a square everywhere");
  for (Integer p = 3;; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (std::find(excluded.begin(), excluded.end(), p) != excluded.end() || d.divisible_by(p)) continue;
    Place v = Place::prime(p);
    if (!is_local_square(d, v)) return v;
  }
}

std::vector<PlaceClass> relevant_place_classes(const QuadraticForm& q) {
  std::set<Integer> primes;
  for (const SquareClass& c : q.classes())
    for (const Integer& p : c.primes())
      if (p != 2) primes.insert(p);
  std::vector<PlaceClass> out{PlaceClass::of(Place::real()), PlaceClass::of(Place::prime(2))};
  for (const Integer& p : primes) out.push_back(PlaceClass::of(Place::prime(p)));
  SquareClass d = disc(q);
  if (q.dim() % 2 == 0 && !d.is_trivial())
    out.push_back(PlaceClass::generic(nonsquare_witness(d, {primes.begin(), primes.end()})));
  return out;
}

GlobalInvariants global_invariants(const QuadraticForm& q) {
  GlobalInvariants g;
  g.dim = q.dim();
  g.det = det_class(q);
  g.disc = disc(q);
  g.signature = signature(q);
  for (const PlaceClass& v : relevant_place_classes(q)) g.hasse.emplace_back(v, hasse(q, v.place()));
  return g;
}

}  // namespace qfm
