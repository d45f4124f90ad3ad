#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "latticode/cvp.hpp"
#include "latticode/exact_linalg.hpp"

namespace latticode {
namespace {

DyadicVector q(std::initializer_list<double> v) { return query_from_doubles(std::vector<double>(v)); }

DyadicVector random_query(std::mt19937_64& rng, std::size_t n, double range) {
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return query_from_doubles(v);
}

// The planar lattice spanned by (1, 5) and (0, 7).
bool in_planar_lattice(const DyadicVector& x) {
  if (!x.is_integral()) return false;
  const IntVector v = x.to_integers();
  return floor_mod(v[1] - 5 * v[0], 7) == 0;
}

TEST(Query, ResolutionRounding) {
  const DyadicVector v = q({0.25, -1.5, 3.0});
  EXPECT_EQ(v, DyadicVector({1, -6, 12}, 2));
  EXPECT_THROW(query_from_doubles(std::vector<double>{std::nan("")}), std::invalid_argument);
}

TEST(Zn, RoundsAndBreaksTiesTowardZero) {
  EXPECT_EQ(q_zn(q({0.4, -2.6, 7.0})), (IntVector{0, -3, 7}));
  EXPECT_EQ(q_zn(q({0.5, -0.5})), (IntVector{0, 0}));
  EXPECT_EQ(q_zn(q({2.5, -3.5})), (IntVector{2, -3}));
}

TEST(Dn, FlipsWorstCoordinateOnOddParity) {
  EXPECT_EQ(q_dn(q({0.6, 0.1, 0.0, 0.0})), (IntVector{0, 0, 0, 0}));
  EXPECT_EQ(q_dn(q({0.9, 0.2, 0.0, 0.0})), (IntVector{1, 1, 0, 0}));
  EXPECT_EQ(q_dn(q({1.0, 1.0, 1.0, 0.2})), (IntVector{1, 1, 1, 1}));
  EXPECT_EQ(q_dn(q({2.0, 0.0})), (IntVector{2, 0}));
  EXPECT_THROW(q_dn(q({0.3})), std::invalid_argument);
}

TEST(E8, PicksHalfIntegerCosetWhenCloser) {
  EXPECT_EQ(q_e8(q({0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5})), DyadicVector(IntVector(8, 1), 1));
  EXPECT_EQ(q_e8(q({0.9, 1.1, 0, 0, 0, 0, 0, 0})), DyadicVector(IntVector{1, 1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(q_e8(q({0.4, 0.6, 0.5, 0.5, 0.5, 0.5, 0.5, 0.4})), DyadicVector(IntVector(8, 1), 1));
}

TEST(Precedes, OrdersByDistanceThenNormThenLex) {
  const DyadicVector t = q({0.5, 0.0});
  const DyadicVector a(IntVector{0, 0}), b(IntVector{1, 0});
  EXPECT_TRUE(precedes(t, a, b));   // equal distance, smaller norm
  EXPECT_FALSE(precedes(t, b, a));
  const DyadicVector c(IntVector{1, 1}), d(IntVector{1, -1});
  const DyadicVector t2 = q({1.0, 0.0});
  EXPECT_TRUE(precedes(t2, d, c));  // equal distance and norm, lexicographic
}

TEST(BruteForce, MatchesStructuredDecodersOnDn) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 8; ++n) {
    const BruteForceCvp oracle(dn_basis(n));
    for (int k = 0; k < 200; ++k) {
      const DyadicVector t = random_query(rng, static_cast<std::size_t>(n), 4.0);
      EXPECT_EQ(DyadicVector(q_dn(t)), oracle(t)) << "n=" << n << " t=" << t.to_string();
    }
  }
}

TEST(BruteForce, MatchesE8AndBw8) {
  std::mt19937_64 rng(12);
  const BruteForceCvp e8(*catalog_get("E8").basis);
  const BruteForceCvp bw8(*catalog_get("BW8").basis);
  const Quantizer bw8_fast = quantizer_for(catalog_get("BW8"));
  for (int k = 0; k < 300; ++k) {
    const DyadicVector t = random_query(rng, 8, 3.0);
    EXPECT_EQ(q_e8(t), e8(t)) << t.to_string();
    EXPECT_EQ(bw8_fast(t), bw8(t)) << t.to_string();
  }
}

TEST(BruteForce, MatchesBw16) {
  std::mt19937_64 rng(13);
  const BruteForceCvp oracle(*catalog_get("BW16").basis);
  for (int k = 0; k < 40; ++k) {
    const DyadicVector t = random_query(rng, 16, 4.0);
    EXPECT_EQ(DyadicVector(q_bw16(t)), oracle(t)) << t.to_string();
  }
}

TEST(BruteForce, OutputsAreLatticePoints) {
  std::mt19937_64 rng(14);
  const RectangularBasis planar{DyadicMatrix{{1, 0}, {5, 1}}, {Dyadic(1), Dyadic(7)}};
  const BruteForceCvp oracle(planar);
  EXPECT_EQ(oracle.coset_count(), 7u);
  for (int k = 0; k < 100; ++k) {
    const DyadicVector t = random_query(rng, 2, 20.0);
    const DyadicVector x = oracle(t);
    EXPECT_TRUE(in_planar_lattice(x));
    // No lattice point among nearby translates by the coarse lattice is closer.
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const DyadicVector y = x + DyadicVector(IntVector{dx, 5 * dx + 7 * dy});
        EXPECT_FALSE(precedes(t, y, x));
      }
  }
}

TEST(BruteForce, RejectsTooManyCosets) {
  EXPECT_THROW(BruteForceCvp(*catalog_get("BW32").basis), std::runtime_error);
}

TEST(Quantizers, ScaledAndProduct) {
  const Quantizer z = [](const DyadicVector& t) { return DyadicVector(q_zn(t)); };
  EXPECT_EQ(q_scaled(z, Dyadic(4), q({5.0, -7.0})), DyadicVector(IntVector{4, -8}));
  EXPECT_THROW(q_scaled(z, Dyadic(3), q({1.0})), std::invalid_argument);
  const Quantizer d2 = [](const DyadicVector& t) { return DyadicVector(q_dn(t)); };
  EXPECT_EQ(q_product(d2, 2, q({0.9, 0.2, 0.6, 0.0})), DyadicVector(IntVector{1, 1, 0, 0}));
  EXPECT_EQ(mod_lattice(q({2.25, -0.75}), z), DyadicVector({1, 1}, 2));
}

TEST(Quantizers, CatalogDispatch) {
  EXPECT_NO_THROW(quantizer_for(catalog_get("D4")));
  EXPECT_THROW(quantizer_for(catalog_get("BW32")), std::runtime_error);
  EXPECT_THROW(quantizer_for(catalog_get("Leech24")), std::runtime_error);
  const Quantizer d4 = quantizer_for(catalog_get("D4"));
  EXPECT_EQ(d4(q({1.1, 2.2, 2.9, -0.4})), DyadicVector(IntVector{1, 2, 3, 0}));
}

}  // namespace
}  // namespace latticode
