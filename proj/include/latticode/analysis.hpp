#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticode/codec.hpp"
#include "latticode/frodo_pke.hpp"
#include "latticode/lattice_catalog.hpp"
#include "latticode/prng.hpp"

namespace latticode {

/// sigma * sqrt(2 n' sigma^2 + 1): width of one entry of S'E + E'' - E'S.
double effective_sigma(double sigma, int n_prime);

/// log2 of (tau/2) erfc(sqrt(gamma) q / (2^(B + 3/2) sigma_bar)), evaluated in
/// log space. tau is the kissing number of the whole product lattice.
double dfr_bound_log2(double gamma_sq, double tau, double q, double b_rate, double sigma_bar);

/// log2(erfc(x)) for x >= 0 without underflow.
double log2_erfc(double x);

struct DfrReport {
  std::string lattice;  // e.g. "E8^8"
  double gamma_sq = 0;
  double tau = 0;
  double q = 0;
  double b_rate = 0;
  double sigma_bar = 0;
  double erfc_argument = 0;
  double bound_log2 = 0;
};

DfrReport dfr_report(const ParamSet& params);
DfrReport dfr_report(const LatticeSpec& block, int blocks, double q, double b_rate, double sigma_bar);

/// B = log2(p) - log2(Vol)/t as an exact rational; p must be a power of two
/// and a multiple of the shaping period.
Rational rate_for(std::int64_t p, const LatticeSpec& lattice);

/// Totals 64 B for successive admissible p, keeping those with B >= 1 and 64 B <= max_bits.
std::vector<std::int64_t> feasible_rates(const LatticeSpec& lattice, std::int64_t max_bits);

struct TableRow {
  std::string name;
  int n_prime = 0;
  std::uint32_t q = 0;
  double sigma = 0;
  std::string lattice;
  double b_rate = 0;
  double b_rate_published = 0;
  std::size_t ct_bytes = 0;
  std::size_t ct_bytes_published = 0;
  int dfr_log2_claimed = 0;
  double dfr_log2_computed = 0;
  bool b_match = false;
  bool ct_match = false;
  bool dfr_match = false;
  bool match = false;
};

/// Rows of the published table (2 or 3): the three original sets followed by
/// the lattice-coded variants. Exponent tolerance is +-1 bit; B and sizes exact.
std::vector<TableRow> reproduce_table(int which);
std::string table_to_csv(const std::vector<TableRow>& rows);
nlohmann::json table_to_json(const std::vector<TableRow>& rows);

struct McResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0;
  double wilson_low = 0;
  double wilson_high = 0;
};

/// Wilson score interval; z = 2.5758 gives 99% two-sided coverage.
inline constexpr double kWilson99 = 2.5758293035489004;
McResult make_mc_result(std::uint64_t trials, std::uint64_t failures, double z = kWilson99);

/// Random codewords plus i.i.d. N(0, sigma_bar^2) noise, decoded and compared
/// at the message-index level. Work is split into fixed chunks with their own
/// substreams, so the result does not depend on the thread count.
McResult mc_awgn_dfr(const CodeConfig& cfg, double sigma_bar, std::uint64_t trials, const Seed& seed, unsigned threads = 1);

/// Full PKE round trips (fresh keys every keys_every trials).
McResult mc_pke_dfr(const ParamSet& params, std::uint64_t trials, const Seed& seed, std::uint64_t keys_every = 100);

struct VarianceEstimate {
  std::uint64_t samples = 0;
  double mean = 0;
  double variance = 0;
  double predicted = 0;  // effective_sigma^2
};

/// Empirical per-entry statistics of Y - Encode(mu) = S'E + E'' - E'S over
/// fresh key pairs and encryptions.
VarianceEstimate pke_noise_variance(const ParamSet& params, std::uint64_t trials, const Seed& seed);

}  // namespace latticode
