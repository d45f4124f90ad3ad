#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "latticode/exact_linalg.hpp"

namespace latticode {

/// Basis factored as B = U * diag(pi) with U unimodular and every pi_i a
/// positive dyadic rational.
struct RectangularBasis {
  DyadicMatrix u;
  std::vector<Dyadic> pi;

  std::size_t dim() const { return pi.size(); }
  DyadicMatrix full() const { return u.scale_columns(pi); }
  // Smallest positive integer p with p / pi_i integral for every i.
  std::int64_t shaping_period() const;
};

bool validate_rectangular(const RectangularBasis& basis);

/// Binary linear (n, k, d) code given by k generator columns. Each column is
/// a bit mask over the n <= 64 coordinates (bit i is coordinate i).
struct LinearCodeSpec {
  int n = 0;
  int k = 0;
  int d = 0;
  std::vector<std::uint64_t> generator;
};

/// Reed-Muller code RM(r, m) from the rows of [[1,1],[1,0]]^{(x)m}: the row
/// with index R has ones exactly at the coordinates c with (c & R) == 0.
/// Columns are ordered by decreasing weight, then decreasing R, so RM(r, m)
/// is a prefix of RM(r + 1, m).
LinearCodeSpec reed_muller(int r, int m);

int gf2_rank(std::span<const std::uint64_t> columns);
std::vector<std::uint64_t> codewords(const LinearCodeSpec& code);
// Minimum nonzero Hamming weight by enumeration (k <= 24).
int minimum_distance(const LinearCodeSpec& code);

/// Construction A: lattice of vectors congruent mod 2 to a codeword.
RectangularBasis construction_a(const LinearCodeSpec& code);

/// Construction D over nested codes C_0 c C_1 c ... given coarsest first.
/// When the last code is not the full space F_2^n it is completed with unit
/// vectors. The generator of each code must be a prefix of the next one.
RectangularBasis construction_d(std::span<const LinearCodeSpec> codes);

/// D_n = { x in Z^n : sum x even } in rectangular form.
RectangularBasis dn_basis(int n);

/// A named lattice with the exact constants used by the analysis.
/// Hermite parameter, volume and minimum norm are powers of two for every
/// lattice handled here, so they are stored as base-2 exponents.
struct LatticeSpec {
  std::string name;
  int dim = 0;
  std::optional<RectangularBasis> basis;
  int gamma_sq_log2 = 0;      // log2(gamma^2)
  std::int64_t tau = 0;       // kissing number
  int vol_log2 = 0;           // log2(Vol)
  int lambda1_sq_log2 = 0;    // log2(lambda_1^2)
  std::int64_t shaping_period = 1;
  std::string block_name;     // equals name unless built by cartesian_product
  int blocks = 1;

  double gamma_sq() const;
  double gamma() const;
  double lambda1_sq() const;
};

/// Names: Z, D4, E8, BW8, BW16, BW32, BW64, Leech24 (case-insensitive).
const LatticeSpec& catalog_get(std::string_view name);
std::span<const LatticeSpec> catalog_all();

/// Checks lambda1^2 = gamma * Vol^(2/n), as (lambda1^2)^(2n) = (gamma^2)^n * Vol^4.
bool hermite_relation_holds(const LatticeSpec& spec);

LatticeSpec cartesian_product(const LatticeSpec& spec, int k);

struct BwParameters {
  std::int64_t tau = 0;
  int gamma_sq_log2 = 0;
};

/// Barnes-Wall lattice in dimension 2^r: tau = (2+2)(2+2^2)...(2+2^r), gamma^2 = 2^(r-1).
BwParameters bw_parameters(int r);

nlohmann::json catalog_to_json();
nlohmann::json lattice_to_json(const LatticeSpec& spec);

}  // namespace latticode
