#include <gtest/gtest.h>

#include <functional>
#include <stdexcept>

#include "latticode/exact_linalg.hpp"
#include "latticode/lattice_catalog.hpp"

namespace latticode {
namespace {

// Reference BW16 basis (columns are basis vectors).
DyadicMatrix reference_bw16() {
  return DyadicMatrix{
      {1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4}, {1, 1, 1, 1, 0, 2, 2, 0, 2, 0, 0, 2, 0, 0, 0, 0},
      {1, 1, 1, 0, 1, 2, 0, 2, 0, 2, 0, 0, 2, 0, 0, 0}, {1, 1, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 1, 0, 1, 1, 0, 2, 2, 0, 0, 2, 0, 0, 2, 0, 0}, {1, 1, 0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 1, 0, 0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 1, 1, 1, 0, 0, 0, 2, 2, 2, 0, 0, 0, 2, 0}, {1, 0, 1, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 1, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};
}

DyadicMatrix reference_e8() {
  return DyadicMatrix({{4, -2, 0, 0, 0, 0, 0, 1},
                       {0, 2, -2, 0, 0, 0, 0, 1},
                       {0, 0, 2, -2, 0, 0, 0, 1},
                       {0, 0, 0, 2, -2, 0, 0, 1},
                       {0, 0, 0, 0, 2, -2, 0, 1},
                       {0, 0, 0, 0, 0, 2, -2, 1},
                       {0, 0, 0, 0, 0, 0, 2, 1},
                       {0, 0, 0, 0, 0, 0, 0, 1}},
                      1);
}

Dyadic volume(const RectangularBasis& b) {
  const Dyadic det = det_exact(b.full());
  return det.num() < 0 ? -det : det;
}

bool same_lattice(const DyadicMatrix& a, const DyadicMatrix& b) { return is_unimodular(inverse_exact(a) * b); }

// Number of lattice vectors of squared norm `target` (in units of 4^-half_steps)
// found by walking every vector of Z^n / 2^half_steps with that norm.
std::int64_t count_norm(const DyadicMatrix& basis, std::int64_t target_scaled, int half_steps) {
  const std::size_t n = basis.rows();
  const DyadicMatrix inv = inverse_exact(basis);
  const int shift = inv.log2_den() + half_steps;
  std::int64_t count = 0;
  IntVector x(n, 0);
  std::int64_t bound = 0;
  while (bound * bound <= target_scaled) ++bound;
  std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      if (left != 0) return;
      for (std::size_t r = 0; r < n; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < n; ++c) acc += inv.numerator(r, c) * x[c];
        if (acc % (std::int64_t{1} << shift) != 0) return;
      }
      ++count;
      return;
    }
    for (std::int64_t v = -bound; v <= bound; ++v) {
      if (v * v > left) continue;
      x[i] = v;
      walk(i + 1, left - v * v);
    }
  };
  walk(0, target_scaled);
  return count;
}

TEST(ReedMuller, Parameters) {
  struct Case {
    int r, m, n, k, d;
  };
  for (const Case c : {Case{1, 3, 8, 4, 4}, Case{1, 4, 16, 5, 8}, Case{3, 4, 16, 15, 2}, Case{2, 4, 16, 11, 4},
                       Case{1, 5, 32, 6, 16}, Case{3, 5, 32, 26, 4}, Case{0, 3, 8, 1, 8}}) {
    const LinearCodeSpec code = reed_muller(c.r, c.m);
    EXPECT_EQ(code.n, c.n);
    EXPECT_EQ(code.k, c.k);
    EXPECT_EQ(code.d, c.d);
    EXPECT_EQ(gf2_rank(code.generator), c.k);
    if (c.k <= 16) EXPECT_EQ(minimum_distance(code), c.d) << "RM(" << c.r << "," << c.m << ")";
  }
}

TEST(ReedMuller, NestedPrefixes) {
  const auto small = reed_muller(1, 4);
  const auto big = reed_muller(3, 4);
  for (std::size_t i = 0; i < small.generator.size(); ++i) EXPECT_EQ(small.generator[i], big.generator[i]);
  EXPECT_THROW(reed_muller(2, 1), std::invalid_argument);
}

TEST(Construction, AVolumeIsTwoToTheRedundancy) {
  for (const auto& code : {reed_muller(1, 3), reed_muller(1, 4), reed_muller(2, 4), reed_muller(3, 4)}) {
    const RectangularBasis b = construction_a(code);
    EXPECT_TRUE(validate_rectangular(b));
    EXPECT_EQ(volume(b), Dyadic(std::int64_t{1} << (code.n - code.k)));
  }
}

TEST(Construction, DVolumeMatchesLevels) {
  // Vol = 2^(a n - sum k_i) with a the number of levels including the full space.
  const std::vector<LinearCodeSpec> bw16{reed_muller(1, 4), reed_muller(3, 4)};
  EXPECT_EQ(volume(construction_d(bw16)), Dyadic(std::int64_t{1} << (3 * 16 - 5 - 15 - 16)));
  const std::vector<LinearCodeSpec> bw8{reed_muller(1, 3)};
  EXPECT_EQ(volume(construction_d(bw8)), Dyadic(std::int64_t{1} << (2 * 8 - 4 - 8)));
  const std::vector<LinearCodeSpec> bw32{reed_muller(1, 5), reed_muller(3, 5)};
  EXPECT_EQ(volume(construction_d(bw32)), Dyadic(std::int64_t{1} << 32));
}

TEST(Construction, DRejectsUnnestedCodes) {
  const std::vector<LinearCodeSpec> codes{reed_muller(3, 4), reed_muller(1, 4)};
  EXPECT_THROW(construction_d(codes), std::invalid_argument);
}

TEST(Construction, DMatchesReferenceBw16) {
  const std::vector<LinearCodeSpec> codes{reed_muller(1, 4), reed_muller(3, 4)};
  const DyadicMatrix built = construction_d(codes).full();
  EXPECT_TRUE(same_lattice(built, reference_bw16()));
  EXPECT_EQ(catalog_get("BW16").basis->full(), reference_bw16());
}

TEST(Catalog, E8BasisMatchesReference) {
  const auto& e8 = catalog_get("e8");
  EXPECT_EQ(e8.basis->full(), reference_e8());
  EXPECT_EQ(det_exact(reference_e8()), Dyadic(1));
}

TEST(Catalog, DeterminantsMatchVolumes) {
  for (const auto& spec : catalog_all()) {
    if (!spec.basis) continue;
    EXPECT_TRUE(validate_rectangular(*spec.basis)) << spec.name;
    EXPECT_EQ(volume(*spec.basis), Dyadic::pow2(spec.vol_log2)) << spec.name;
  }
}

TEST(Catalog, HermiteRelationHolds) {
  for (const auto& spec : catalog_all()) EXPECT_TRUE(hermite_relation_holds(spec)) << spec.name;
}

TEST(Catalog, KissingNumbersByEnumeration) {
  EXPECT_EQ(count_norm(catalog_get("D4").basis->full(), 2, 0), catalog_get("D4").tau);
  EXPECT_EQ(count_norm(catalog_get("E8").basis->full(), 2 * 4, 1), catalog_get("E8").tau);
  EXPECT_EQ(count_norm(catalog_get("BW8").basis->full(), 4, 0), catalog_get("BW8").tau);
  EXPECT_EQ(count_norm(catalog_get("BW16").basis->full(), 8, 0), catalog_get("BW16").tau);
  EXPECT_EQ(count_norm(catalog_get("BW16").basis->full(), 4, 0), 0);
}

TEST(Catalog, BarnesWallFormula) {
  EXPECT_EQ(bw_parameters(3).tau, 240);
  EXPECT_EQ(bw_parameters(4).tau, 4320);
  EXPECT_EQ(bw_parameters(5).tau, 146880);
  EXPECT_EQ(bw_parameters(6).tau, 9694080);
  EXPECT_EQ(bw_parameters(4).gamma_sq_log2, 3);
  for (const char* name : {"BW16", "BW32", "BW64"}) {
    const auto& s = catalog_get(name);
    EXPECT_EQ(bw_parameters(__builtin_ctz(static_cast<unsigned>(s.dim))).tau, s.tau) << name;
  }
}

TEST(Catalog, LookupAndProducts) {
  EXPECT_EQ(catalog_get("leech24").tau, 196560);
  EXPECT_FALSE(catalog_get("Leech24").basis.has_value());
  EXPECT_THROW(catalog_get("A2"), std::invalid_argument);
  const LatticeSpec e8x8 = cartesian_product(catalog_get("E8"), 8);
  EXPECT_EQ(e8x8.dim, 64);
  EXPECT_EQ(e8x8.tau, 1920);
  EXPECT_EQ(e8x8.gamma_sq_log2, catalog_get("E8").gamma_sq_log2);
  EXPECT_EQ(e8x8.blocks, 8);
}

TEST(Catalog, ShapingPeriods) {
  EXPECT_EQ(catalog_get("Z").shaping_period, 1);
  EXPECT_EQ(catalog_get("D4").shaping_period, 2);
  EXPECT_EQ(catalog_get("E8").shaping_period, 2);
  EXPECT_EQ(catalog_get("BW16").shaping_period, 4);
  const RectangularBasis planar{DyadicMatrix{{1, 0}, {5, 1}}, {Dyadic(1), Dyadic(7)}};
  EXPECT_TRUE(validate_rectangular(planar));
  EXPECT_EQ(planar.shaping_period(), 7);
  EXPECT_EQ(planar.full(), (DyadicMatrix{{1, 0}, {5, 7}}));
}

TEST(Catalog, JsonExport) {
  const auto j = catalog_to_json();
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), catalog_all().size());
  const auto e8 = lattice_to_json(catalog_get("E8"));
  EXPECT_EQ(e8["tau"], 240);
  EXPECT_EQ(e8["name"], "E8");
}

}  // namespace
}  // namespace latticode
