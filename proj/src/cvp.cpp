#include "latticode/cvp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace latticode {

namespace {

__int128 sq(__int128 v) { return v * v; }

DyadicVector to_dyadic(IntVector v) { return DyadicVector(std::move(v)); }

Quantizer wrap(IntVector (*q)(const DyadicVector&)) {
  return [q](const DyadicVector& t) { return to_dyadic(q(t)); };
}

const std::vector<IntVector>& rm14_codewords() {
  static const std::vector<IntVector> words = [] {
    std::vector<IntVector> out;
    for (auto w : codewords(reed_muller(1, 4))) {
      IntVector v(16);
      for (int i = 0; i < 16; ++i) v[static_cast<std::size_t>(i)] = (w >> i) & 1;
      out.push_back(std::move(v));
    }
    return out;
  }();
  return words;
}

}  // namespace

DyadicVector query_from_doubles(std::span<const double> coords) {
  IntVector v;
  v.reserve(coords.size());
  for (double c : coords) {
    const double scaled = std::ldexp(c, kQueryResolutionBits);
    if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18) throw std::invalid_argument("query coordinate out of range");
    v.push_back(std::llround(scaled));
  }
  return DyadicVector(std::move(v), kQueryResolutionBits);
}

bool precedes(const DyadicVector& t, const DyadicVector& a, const DyadicVector& b) {
  const auto da = squared_distance(t, a), db = squared_distance(t, b);
  if (da != db) return da < db;
  const auto na = squared_norm(a), nb = squared_norm(b);
  if (na != nb) return na < nb;
  return a < b;
}

IntVector q_zn(const DyadicVector& t) {
  const int s = t.log2_den();
  if (s == 0) return t.numerators();
  const std::int64_t half = std::int64_t{1} << (s - 1);
  IntVector out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::int64_t a = t.numerators()[i];
    const std::int64_t mag = a < 0 ? -a : a;
    const std::int64_t r = (mag + half - 1) >> s;
    out[i] = a < 0 ? -r : r;
  }
  return out;
}

IntVector q_dn(const DyadicVector& t) {
  if (t.size() < 2) throw std::invalid_argument("D_n needs n >= 2");
  IntVector f = q_zn(t);
  std::int64_t parity = 0;
  for (auto v : f) parity ^= v & 1;
  if (!parity) return f;

  const int s = t.log2_den();
  std::vector<std::int64_t> err(t.size());
  std::int64_t worst = -1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    err[i] = checked::sub(t.numerators()[i], checked::shl(f[i], s));
    worst = std::max(worst, err[i] < 0 ? -err[i] : err[i]);
  }
  // Among the worst coordinates, pick the flip with the smallest resulting
  // norm, then the lexicographically smallest result.
  std::size_t best_i = t.size();
  std::int64_t best_g = 0;
  __int128 best_gain = 0;
  auto consider = [&](std::size_t i, std::int64_t g) {
    const __int128 gain = sq(g) - sq(f[i]);
    bool take = best_i == t.size() || gain < best_gain;
    if (!take && gain == best_gain) {
      if (i == best_i) take = g < best_g;
      else if (i < best_i) take = g < f[i];
      else take = f[best_i] < best_g;
    }
    if (take) {
      best_i = i;
      best_g = g;
      best_gain = gain;
    }
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::int64_t e = err[i];
    if ((e < 0 ? -e : e) != worst) continue;
    if (e > 0) consider(i, f[i] + 1);
    else if (e < 0) consider(i, f[i] - 1);
    else {
      consider(i, f[i] - 1);
      consider(i, f[i] + 1);
    }
  }
  f[best_i] = best_g;
  return f;
}

DyadicVector q_e8(const DyadicVector& t) {
  if (t.size() != 8) throw std::invalid_argument("E8 quantizer needs dimension 8");
  static const DyadicVector h(IntVector(8, 1), 1);
  DyadicVector a = to_dyadic(q_dn(t));
  DyadicVector b = to_dyadic(q_dn(t - h)) + h;
  return precedes(t, b, a) ? b : a;
}

IntVector q_bw16(const DyadicVector& t) {
  if (t.size() != 16) throw std::invalid_argument("BW16 quantizer needs dimension 16");
  DyadicVector best;
  bool have = false;
  for (const auto& d : rm14_codewords()) {
    const DyadicVector dv(d);
    DyadicVector cand = to_dyadic(q_dn((t - dv).scaled_pow2(-1))).scaled_pow2(1) + dv;
    if (!have || precedes(t, cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return best.to_integers();
}

DyadicVector coset_decode(const Quantizer& sub, std::span<const DyadicVector> reps, const DyadicVector& t) {
  if (reps.empty()) throw std::invalid_argument("coset_decode needs at least one representative");
  DyadicVector best;
  bool have = false;
  for (const auto& g : reps) {
    DyadicVector cand = sub(t - g) + g;
    if (!have || precedes(t, cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

DyadicVector q_scaled(const Quantizer& base, const Dyadic& c, const DyadicVector& t) {
  if (!c.is_positive()) throw std::invalid_argument("scale must be positive");
  const std::int64_t num = c.num();
  if (!is_power_of_two(num)) throw std::invalid_argument("scale must be a power of two");
  const int k = exact_log2(num) - c.log2_den();
  if (k == 0) return base(t);
  return base(t.scaled_pow2(-k)).scaled_pow2(k);
}

DyadicVector q_product(const Quantizer& block, std::size_t block_dim, const DyadicVector& t) {
  if (block_dim == 0 || t.size() % block_dim != 0) throw std::invalid_argument("dimension is not a multiple of the block size");
  const std::size_t blocks = t.size() / block_dim;
  if (blocks == 1) return block(t);
  std::vector<DyadicVector> parts;
  parts.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    DyadicVector part = block(t.slice(b * block_dim, block_dim));
    if (part.size() != block_dim) throw std::invalid_argument("block quantizer changed the dimension");
    parts.push_back(std::move(part));
  }
  return concat(parts);
}

DyadicVector mod_lattice(const DyadicVector& t, const Quantizer& q) { return t - q(t); }

Quantizer quantizer_for(const LatticeSpec& spec) {
  const std::string& name = spec.block_name.empty() ? spec.name : spec.block_name;
  Quantizer block;
  std::size_t block_dim = static_cast<std::size_t>(spec.dim / std::max(spec.blocks, 1));
  if (name == "Z") {
    block = wrap(q_zn);
  } else if (name == "D4") {
    block = wrap(q_dn);
  } else if (name == "E8") {
    block = q_e8;
  } else if (name == "BW16") {
    block = wrap(q_bw16);
  } else if (name == "BW8") {
    std::vector<DyadicVector> reps;
    for (auto w : codewords(reed_muller(1, 3))) {
      IntVector v(8);
      for (int i = 0; i < 8; ++i) v[static_cast<std::size_t>(i)] = (w >> i) & 1;
      reps.emplace_back(std::move(v));
    }
    const Quantizer two_z = [](const DyadicVector& t) { return q_scaled(wrap(q_zn), Dyadic(2), t); };
    block = [reps = std::move(reps), two_z](const DyadicVector& t) { return coset_decode(two_z, reps, t); };
  } else if (name == "BW32") {
    throw std::runtime_error("BW32: decoder not implemented (2^32 cosets)");
  } else if (name == "BW64") {
    throw std::runtime_error("BW64: decoder not implemented (2^49 cosets)");
  } else if (!spec.basis) {
    throw std::runtime_error(name + ": decoder not implemented (no basis)");
  } else {
    RectangularBasis basis = *spec.basis;
    if (spec.blocks > 1) {
      // the stored basis is block diagonal; decode one block at a time
      const std::size_t t = block_dim;
      IntVector u(t * t);
      for (std::size_t r = 0; r < t; ++r)
        for (std::size_t c = 0; c < t; ++c) u[r * t + c] = basis.u.numerator(r, c);
      basis = RectangularBasis{DyadicMatrix(t, t, std::move(u), basis.u.log2_den()),
                               std::vector<Dyadic>(basis.pi.begin(), basis.pi.begin() + static_cast<std::ptrdiff_t>(t))};
    }
    auto oracle = std::make_shared<BruteForceCvp>(basis);
    block = [oracle](const DyadicVector& t) { return (*oracle)(t); };
  }
  if (spec.blocks <= 1) return block;
  return [block, block_dim](const DyadicVector& t) { return q_product(block, block_dim, t); };
}

// ---------------------------------------------------------------- brute force

BruteForceCvp::BruteForceCvp(const RectangularBasis& basis, std::size_t max_cosets) {
  if (!validate_rectangular(basis)) throw std::invalid_argument("basis is not in rectangular form");
  n_ = basis.dim();
  const DyadicMatrix b = basis.full();
  scale_ = b.log2_den();
  const std::int64_t period = basis.shaping_period();
  modulus_ = checked::shl(period, scale_);
  if (modulus_ > 65535) throw std::runtime_error("enumeration budget exceeded (modulus too large)");

  IntVector radix(n_);
  long double total = 1;
  for (std::size_t j = 0; j < n_; ++j) {
    const Dyadic& p = basis.pi[j];
    radix[j] = checked::shl(period, p.log2_den()) / p.num();
    total *= static_cast<long double>(radix[j]);
  }
  if (total > static_cast<long double>(max_cosets))
    throw std::runtime_error("enumeration budget exceeded (" + std::to_string(static_cast<double>(total)) + " cosets)");
  count_ = static_cast<std::size_t>(total);
  reps_.resize(count_ * n_);

  // Odometer over z in the mixed radix; x = B z mod M is kept incrementally.
  IntVector z(n_, 0), x(n_, 0);
  for (std::size_t r = 0; r < count_; ++r) {
    for (std::size_t i = 0; i < n_; ++i) reps_[r * n_ + i] = static_cast<std::uint16_t>(floor_mod(x[i], modulus_));
    for (std::size_t j = 0; j < n_; ++j) {
      ++z[j];
      for (std::size_t i = 0; i < n_; ++i) x[i] = floor_mod(x[i] + b.numerator(i, j), modulus_);
      if (z[j] < radix[j]) break;
      z[j] = 0;
      for (std::size_t i = 0; i < n_; ++i)
        x[i] = floor_mod(x[i] - checked::mul(radix[j], b.numerator(i, j)), modulus_);
    }
  }
}

DyadicVector BruteForceCvp::operator()(const DyadicVector& t) const {
  if (t.size() != n_) throw std::invalid_argument("query dimension mismatch");
  const int s = std::max(scale_, t.log2_den());
  const IntVector tn = t.at_scale(s);
  const std::int64_t lift = std::int64_t{1} << (s - scale_);
  const std::int64_t mod = checked::mul(modulus_, lift);
  const auto m = static_cast<std::size_t>(modulus_);

  // Best value in each residue class, per coordinate.
  std::vector<__int128> dist(n_ * m), norm(n_ * m);
  IntVector value(n_ * m);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t v = 0; v < m; ++v) {
      const std::int64_t base = checked::mul(static_cast<std::int64_t>(v), lift);
      const std::int64_t k = (tn[i] - base) >= 0 ? (tn[i] - base) / mod : -((base - tn[i] + mod - 1) / mod);
      const std::int64_t lo = checked::add(base, checked::mul(k, mod));
      const std::int64_t hi = checked::add(lo, mod);
      const __int128 dlo = sq(static_cast<__int128>(tn[i]) - lo), dhi = sq(static_cast<__int128>(hi) - tn[i]);
      std::int64_t pick = lo;
      if (dhi < dlo || (dhi == dlo && (sq(hi) < sq(lo) || (sq(hi) == sq(lo) && hi < lo)))) pick = hi;
      dist[i * m + v] = sq(static_cast<__int128>(tn[i]) - pick);
      norm[i * m + v] = sq(pick);
      value[i * m + v] = pick;
    }

  auto point = [&](std::size_t r) {
    IntVector out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = value[i * m + reps_[r * n_ + i]];
    return out;
  };
  std::size_t best = 0;
  __int128 best_d = -1, best_n = 0;
  for (std::size_t r = 0; r < count_; ++r) {
    const std::uint16_t* rep = &reps_[r * n_];
    __int128 d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += dist[i * m + rep[i]];
    if (best_d >= 0 && d > best_d) continue;
    __int128 nn = 0;
    for (std::size_t i = 0; i < n_; ++i) nn += norm[i * m + rep[i]];
    if (best_d < 0 || d < best_d || nn < best_n || (nn == best_n && point(r) < point(best))) {
      best = r;
      best_d = d;
      best_n = nn;
    }
  }
  return DyadicVector(point(best), s);
}

DyadicVector brute_force_cvp(const RectangularBasis& basis, const DyadicVector& t, std::size_t max_cosets) {
  return BruteForceCvp(basis, max_cosets)(t);
}

}  // namespace latticode
