#include "latticode/lattice_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace latticode {

namespace {

RectangularBasis e8_basis() {
  std::vector<DyadicVector> cols;
  IntVector first(8, 0);
  first[0] = 1;
  cols.emplace_back(first);
  for (std::size_t j = 1; j < 7; ++j) {
    IntVector c(8, 0);
    c[j - 1] = -1;
    c[j] = 1;
    cols.emplace_back(c);
  }
  cols.emplace_back(IntVector(8, 1));
  std::vector<Dyadic> pi(8, Dyadic(1));
  pi.front() = Dyadic(2);
  pi.back() = Dyadic(1, 1);
  return {DyadicMatrix::from_columns(cols), std::move(pi)};
}

RectangularBasis bw_basis(int m) {
  // RM(1, m) c RM(3, m) c ... ; for even m construction_d adds the last unit vector.
  std::vector<LinearCodeSpec> chain;
  for (int r = 1; r <= m; r += 2) chain.push_back(reed_muller(r, m));
  return construction_d(chain);
}

LatticeSpec make(std::string name, int dim, std::optional<RectangularBasis> basis, int gamma_sq_log2,
                 std::int64_t tau, int vol_log2, int lambda1_sq_log2, std::int64_t shaping_period) {
  LatticeSpec s;
  s.name = name;
  s.block_name = std::move(name);
  s.dim = dim;
  if (basis) s.shaping_period = basis->shaping_period();
  else s.shaping_period = shaping_period;
  s.basis = std::move(basis);
  s.gamma_sq_log2 = gamma_sq_log2;
  s.tau = tau;
  s.vol_log2 = vol_log2;
  s.lambda1_sq_log2 = lambda1_sq_log2;
  return s;
}

std::vector<LatticeSpec> build_catalog() {
  std::vector<LatticeSpec> c;
  c.push_back(make("Z", 1, RectangularBasis{DyadicMatrix::identity(1), {Dyadic(1)}}, 0, 2, 0, 0, 1));
  c.push_back(make("D4", 4, dn_basis(4), 1, 24, 1, 1, 2));
  c.push_back(make("E8", 8, e8_basis(), 2, 240, 0, 1, 2));
  c.push_back(make("BW8", 8, bw_basis(3), 2, 240, 4, 2, 2));
  c.push_back(make("BW16", 16, bw_basis(4), 3, 4320, 12, 3, 4));
  c.push_back(make("BW32", 32, bw_basis(5), 4, 146880, 32, 4, 4));
  c.push_back(make("BW64", 64, std::nullopt, 5, 9694080, 80, 5, 8));
  c.push_back(make("Leech24", 24, std::nullopt, 4, 196560, 0, 2, 1));
  return c;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::toupper(ch); });
  return out;
}

}  // namespace

double LatticeSpec::gamma_sq() const { return std::ldexp(1.0, gamma_sq_log2); }
double LatticeSpec::gamma() const { return std::exp2(gamma_sq_log2 / 2.0); }
double LatticeSpec::lambda1_sq() const { return std::ldexp(1.0, lambda1_sq_log2); }

std::span<const LatticeSpec> catalog_all() {
  static const std::vector<LatticeSpec> catalog = build_catalog();
  return catalog;
}

const LatticeSpec& catalog_get(std::string_view name) {
  const std::string key = upper(name);
  for (const auto& s : catalog_all())
    if (upper(s.name) == key) return s;
  throw std::invalid_argument("unknown lattice: " + std::string(name));
}

bool hermite_relation_holds(const LatticeSpec& spec) {
  return 2 * spec.dim * spec.lambda1_sq_log2 == spec.dim * spec.gamma_sq_log2 + 4 * spec.vol_log2;
}

LatticeSpec cartesian_product(const LatticeSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("product needs k >= 1");
  LatticeSpec out = spec;
  out.name = k == 1 ? spec.name : spec.name + "^" + std::to_string(k);
  out.dim = spec.dim * k;
  out.tau = checked::mul(spec.tau, k);
  out.vol_log2 = spec.vol_log2 * k;
  out.blocks = spec.blocks * k;
  if (spec.basis) {
    std::vector<Dyadic> pi;
    for (int b = 0; b < k; ++b) pi.insert(pi.end(), spec.basis->pi.begin(), spec.basis->pi.end());
    out.basis = RectangularBasis{DyadicMatrix::block_diagonal(spec.basis->u, static_cast<std::size_t>(k)),
                                 std::move(pi)};
  }
  return out;
}

BwParameters bw_parameters(int r) {
  if (r < 1 || r > 10) throw std::invalid_argument("bw_parameters needs 1 <= r <= 10");
  BwParameters p;
  p.tau = 1;
  for (int i = 1; i <= r; ++i) p.tau = checked::mul(p.tau, 2 + (std::int64_t{1} << i));
  p.gamma_sq_log2 = r - 1;
  return p;
}

nlohmann::json lattice_to_json(const LatticeSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["dim"] = spec.dim;
  j["gamma_sq"] = spec.gamma_sq();
  j["gamma_sq_log2"] = spec.gamma_sq_log2;
  j["tau"] = spec.tau;
  j["vol_log2"] = spec.vol_log2;
  j["lambda1_sq"] = spec.lambda1_sq();
  j["shaping_period"] = spec.shaping_period;
  if (spec.basis) {
    const auto& b = *spec.basis;
    nlohmann::json u = nlohmann::json::array();
    for (std::size_t r = 0; r < b.u.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < b.u.cols(); ++c) row.push_back(b.u.numerator(r, c));
      u.push_back(std::move(row));
    }
    j["u"] = std::move(u);
    nlohmann::json pi = nlohmann::json::array();
    for (const auto& v : b.pi) pi.push_back(v.to_string());
    j["pi"] = std::move(pi);
  } else {
    j["u"] = nullptr;
    j["pi"] = nullptr;
  }
  return j;
}

nlohmann::json catalog_to_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : catalog_all()) arr.push_back(lattice_to_json(s));
  return arr;
}

}  // namespace latticode
