#include "qfm/local.hpp"

#include <cstdlib>

#include "qfm/errors.hpp"

namespace qfm {

namespace {
const SquareClass kMinusOne = SquareClass::of(-1L);
}

SquareClass LocalProfile::disc() const {
  const long n = dim;
  return (n * (n - 1) / 2) % 2 ? -det : det;
}

LocalProfile LocalProfile::without_planes(int planes) const {
  if (planes < 0 || planes > witt_index) throw PreconditionError("cannot remove more planes than the Witt index");
  LocalProfile out = *this;
  out.dim -= 2 * planes;
  out.witt_index -= planes;
  if (planes % 2) out.det = -det;
  if (signature) {
    out.signature = Signature{signature->positives - planes, signature->negatives - planes};
    const std::size_t m = out.signature->negatives;
    out.hasse = (m * (m - 1) / 2) % 2 ? -1 : 1;
  } else {
    SquareClass d = det;
    int h = hasse;
    for (int i = 0; i < planes; ++i) {
      h *= hilbert(kMinusOne, -d, place.place());
      d = -d;
    }
    out.hasse = h;
  }
  return out;
}

bool locally_isotropic(int dim, const SquareClass& det, int hasse, const Place& v) {
  if (v.is_real()) throw PreconditionError("locally_isotropic is for finite places");
  switch (dim) {
    case 0:
    case 1:
      return false;
    case 2:
      return is_local_square(-det, v);
    case 3:
      return hilbert(kMinusOne, -det, v) == hasse;
    case 4:
      return !(is_local_square(det, v) && hasse == -hilbert(kMinusOne, kMinusOne, v));
    default:
      return true;
  }
}

LocalProfile local_profile(const QuadraticForm& q, const PlaceClass& v) {
  LocalProfile out;
  out.place = v;
  out.dim = static_cast<int>(q.dim());
  out.det = det_class(q);
  out.hasse = hasse(q, v.place());
  if (v.is_real()) {
    Signature s = signature(q);
    out.signature = s;
    out.witt_index = static_cast<int>(std::min(s.positives, s.negatives));
    out.an_dim = std::abs(static_cast<int>(s.positives) - static_cast<int>(s.negatives));
    return out;
  }
  // Strip hyperbolic planes: q = H + q' gives det q' = -det q and
  // hasse q' = hasse q * (-1, -det q).
  const Place& p = v.place();
  int n = out.dim;
  SquareClass d = out.det;
  int h = out.hasse;
  while (locally_isotropic(n, d, h, p)) {
    h *= hilbert(kMinusOne, -d, p);
    d = -d;
    n -= 2;
  }
  out.an_dim = n;
  out.witt_index = (out.dim - n) / 2;
  return out;
}

std::int64_t ExcellentProfile::dimension() const {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    d += (i % 2 ? -1 : 1) * (std::int64_t{1} << exponents[i]);
  return d;
}

ExcellentProfile alternating_expansion(std::int64_t d) {
  if (d <= 0) throw DomainError("alternating_expansion needs a positive dimension");
  ExcellentProfile out;
  for (std::int64_t rest = d; rest > 0;) {
    int n = 0;
    while ((std::int64_t{1} << n) < rest) ++n;
    out.exponents.push_back(n);
    rest = (std::int64_t{1} << n) - rest;
  }
  const int r = out.r();
  out.r_tilde = d % 2 == 0 ? r : r - 1;
  for (int j = 0; j <= out.r_tilde; ++j) {
    // m_j = 2^(n_j - 1) - 2^n_(j+1) + ... + (-1)^(j+r) 2^n_r
    std::int64_t m = std::int64_t{1} << (out.exponents[j] - 1);
    for (int i = j + 1; i <= r; ++i) m += ((i - j) % 2 ? -1 : 1) * (std::int64_t{1} << out.exponents[i]);
    out.multiplicities.push_back(m);
  }
  return out;
}

std::int64_t partial_dim(const ExcellentProfile& profile, int k) {
  if (k < 0 || k > profile.r()) throw DomainError("partial_dim: index out of range");
  std::int64_t d = 0;
  for (int i = 0; i <= k; ++i) d += (i % 2 ? -1 : 1) * (std::int64_t{1} << profile.exponents[i]);
  return d;
}

Decomposition local_decomposition(const LocalProfile& profile) {
  Decomposition out;
  out.dim = profile.dim;
  const int top = profile.dim - 2;
  for (int i = 0; i < profile.witt_index; ++i) {
    out.summands.push_back(Tate{i});
    out.summands.push_back(Tate{top - i});
  }
  if (profile.an_dim > 0) {
    const ExcellentProfile ex = alternating_expansion(profile.an_dim);
    int shift = profile.witt_index;
    for (int j = 0; j <= ex.r_tilde; ++j) {
      for (std::int64_t c = 0; c < ex.multiplicities[j]; ++c, ++shift) {
        if (ex.exponents[j] == 1)
          out.summands.push_back(DiscMotive{shift, profile.disc()});
        else
          out.summands.push_back(RostTwist{ex.exponents[j], shift, std::nullopt});
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace qfm
