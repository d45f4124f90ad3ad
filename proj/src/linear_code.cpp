#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "latticode/lattice_catalog.hpp"

namespace latticode {

namespace {

std::uint64_t full_mask(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

DyadicVector phi(std::uint64_t column, int n) {
  IntVector v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (column >> i) & 1;
  return DyadicVector(std::move(v));
}

void check_code(const LinearCodeSpec& code) {
  if (code.n < 1 || code.n > 64) throw std::invalid_argument("code length must be in [1, 64]");
  if (code.k != static_cast<int>(code.generator.size()))
    throw std::invalid_argument("generator column count differs from k");
  for (auto c : code.generator)
    if (c & ~full_mask(code.n)) throw std::invalid_argument("generator column wider than n");
  if (gf2_rank(code.generator) != code.k) throw std::invalid_argument("generator is rank deficient");
}

}  // namespace

LinearCodeSpec reed_muller(int r, int m) {
  if (m < 0 || m > 6 || r < 0 || r > m) throw std::invalid_argument("reed_muller needs 0 <= r <= m <= 6");
  const int n = 1 << m;
  std::vector<int> rows;
  for (int row = 0; row < n; ++row)
    if (std::popcount(static_cast<unsigned>(row)) <= r) rows.push_back(row);
  std::sort(rows.begin(), rows.end(), [](int a, int b) {
    int pa = std::popcount(static_cast<unsigned>(a)), pb = std::popcount(static_cast<unsigned>(b));
    return pa != pb ? pa < pb : a > b;
  });
  LinearCodeSpec code;
  code.n = n;
  code.k = static_cast<int>(rows.size());
  code.d = 1 << (m - r);
  for (int row : rows) {
    std::uint64_t col = 0;
    for (int c = 0; c < n; ++c)
      if ((c & row) == 0) col |= std::uint64_t{1} << c;
    code.generator.push_back(col);
  }
  return code;
}

int gf2_rank(std::span<const std::uint64_t> columns) {
  std::vector<std::uint64_t> basis;  // reduced vectors with distinct leading bits
  for (auto v : columns) {
    for (auto b : basis)
      if (v & (std::uint64_t{1} << (63 - std::countl_zero(b)))) v ^= b;
    if (v) {
      basis.push_back(v);
      // keep sorted by leading bit, descending, so the reduction above is complete
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  return static_cast<int>(basis.size());
}

std::vector<std::uint64_t> codewords(const LinearCodeSpec& code) {
  if (code.k > 24) throw std::invalid_argument("code too large to enumerate");
  std::vector<std::uint64_t> words(std::size_t{1} << code.k, 0);
  for (std::size_t u = 1; u < words.size(); ++u) {
    int j = std::countr_zero(u);
    words[u] = words[u & (u - 1)] ^ code.generator[static_cast<std::size_t>(j)];
  }
  return words;
}

int minimum_distance(const LinearCodeSpec& code) {
  int best = code.n + 1;
  for (auto w : codewords(code))
    if (w) best = std::min(best, std::popcount(w));
  return best == code.n + 1 ? 0 : best;
}

RectangularBasis construction_a(const LinearCodeSpec& code) {
  check_code(code);
  const int n = code.n;
  // Column-reduce to systematic form: generator j gets a pivot coordinate where
  // it is the only generator with a one.
  std::vector<std::uint64_t> cols = code.generator;
  std::vector<int> pivot;
  std::uint64_t used = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const std::uint64_t free_bits = cols[j] & ~used;
    if (!free_bits) throw std::invalid_argument("generator is rank deficient");
    const int p = std::countr_zero(free_bits);
    pivot.push_back(p);
    used |= std::uint64_t{1} << p;
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (i != j && ((cols[i] >> p) & 1)) cols[i] ^= cols[j];
  }
  std::vector<DyadicVector> u_cols;
  std::vector<Dyadic> pi;
  for (auto c : cols) {
    u_cols.push_back(phi(c, n));
    pi.emplace_back(1);
  }
  for (int i = 0; i < n; ++i) {
    if ((used >> i) & 1) continue;
    u_cols.push_back(phi(std::uint64_t{1} << i, n));
    pi.emplace_back(2);
  }
  RectangularBasis basis{DyadicMatrix::from_columns(u_cols), std::move(pi)};
  if (!is_unimodular(basis.u)) throw std::logic_error("construction A produced a non-unimodular factor");
  return basis;
}

RectangularBasis construction_d(std::span<const LinearCodeSpec> codes) {
  if (codes.empty()) throw std::invalid_argument("construction D needs at least one code");
  const int n = codes.front().n;
  for (const auto& c : codes) {
    check_code(c);
    if (c.n != n) throw std::invalid_argument("codes of different lengths");
  }
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    const auto& g = codes[i].generator;
    const auto& h = codes[i + 1].generator;
    if (g.size() > h.size() || !std::equal(g.begin(), g.end(), h.begin()))
      throw std::invalid_argument("generators are not nested (each must prefix the next)");
  }
  std::vector<int> ks;
  for (const auto& c : codes) ks.push_back(c.k);
  std::vector<std::uint64_t> ga = codes.back().generator;
  int a;
  if (codes.back().k == n) {
    a = static_cast<int>(codes.size()) - 1;
    ks.pop_back();
  } else {
    a = static_cast<int>(codes.size());
    for (int i = 0; i < n && static_cast<int>(ga.size()) < n; ++i) {
      ga.push_back(std::uint64_t{1} << i);
      if (gf2_rank(ga) != static_cast<int>(ga.size())) ga.pop_back();
    }
  }
  if (a == 0) throw std::invalid_argument("construction D needs a proper subcode");
  std::vector<DyadicVector> u_cols;
  std::vector<Dyadic> pi;
  for (std::size_t j = 0; j < ga.size(); ++j) {
    int level = a;
    for (int i = 0; i < a; ++i)
      if (static_cast<int>(j) < ks[static_cast<std::size_t>(i)]) {
        level = i;
        break;
      }
    u_cols.push_back(phi(ga[j], n));
    pi.push_back(Dyadic::pow2(level));
  }
  RectangularBasis basis{DyadicMatrix::from_columns(u_cols), std::move(pi)};
  if (!is_unimodular(basis.u)) throw std::invalid_argument("phi(G_a) is not unimodular");
  return basis;
}

RectangularBasis dn_basis(int n) {
  if (n < 2) throw std::invalid_argument("D_n needs n >= 2");
  const auto un = static_cast<std::size_t>(n);
  IntVector u(un * un, 0);
  for (std::size_t i = 0; i < un; ++i) {
    u[i * un + i] = 1;
    u[(un - 1) * un + i] = 1;
  }
  std::vector<Dyadic> pi(un, Dyadic(1));
  pi.back() = Dyadic(2);
  return {DyadicMatrix(un, un, std::move(u)), std::move(pi)};
}

std::int64_t RectangularBasis::shaping_period() const {
  std::int64_t p = 1;
  for (const auto& v : pi) p = std::lcm(p, v.num());
  return p;
}

bool validate_rectangular(const RectangularBasis& basis) {
  if (!basis.u.is_square() || basis.u.rows() != basis.pi.size()) return false;
  for (const auto& v : basis.pi)
    if (!v.is_positive()) return false;
  return is_unimodular(basis.u);
}

}  // namespace latticode
