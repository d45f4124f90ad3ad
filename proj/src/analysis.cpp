#include "latticode/analysis.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace latticode {

namespace {

constexpr std::uint64_t kChunkTrials = 1 << 14;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

IntVector random_index(const CodeConfig& cfg, Prng& rng) {
  IntVector z(cfg.n());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(cfg.radices[i])));
  return z;
}

Bits random_bits(std::size_t n, Prng& rng) {
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return b;
}

}  // namespace

double effective_sigma(double sigma, int n_prime) {
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be non-negative and finite");
  if (n_prime < 0) throw std::invalid_argument("n' must be non-negative");
  const long double s = sigma;
  return static_cast<double>(s * std::sqrt(2.0L * n_prime * s * s + 1.0L));
}

double log2_erfc(double x) {
  if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("log2_erfc needs a finite x >= 0");
  if (x <= 8.0) return static_cast<double>(std::log2(std::erfc(static_cast<long double>(x))));
  // erfc(x) = e^{-x^2} / (x sqrt(pi)) * (1 - 1/(2x^2) + 3/(2x^2)^2 - 15/(2x^2)^3 + ...)
  const long double lx = x;
  const long double u = 1.0L / (2.0L * lx * lx);
  const long double series = 1.0L - u + 3.0L * u * u - 15.0L * u * u * u + 105.0L * u * u * u * u;
  const long double ln = -lx * lx - std::log(lx) - 0.5L * std::log(std::numbers::pi_v<long double>) + std::log(series);
  return static_cast<double>(ln / std::numbers::ln2_v<long double>);
}

double dfr_bound_log2(double gamma_sq, double tau, double q, double b_rate, double sigma_bar) {
  require_positive(gamma_sq, "gamma^2");
  require_positive(tau, "tau");
  require_positive(q, "q");
  require_positive(b_rate, "B");
  require_positive(sigma_bar, "sigma_bar");
  const double x = std::pow(gamma_sq, 0.25) * q / (std::exp2(b_rate + 1.5) * sigma_bar);
  return std::log2(tau / 2.0) + log2_erfc(x);
}

DfrReport dfr_report(const LatticeSpec& block, int blocks, double q, double b_rate, double sigma_bar) {
  DfrReport r;
  r.lattice = blocks == 1 ? block.name : block.name + "^" + std::to_string(blocks);
  r.gamma_sq = block.gamma_sq();
  r.tau = static_cast<double>(block.tau) * blocks;
  r.q = q;
  r.b_rate = b_rate;
  r.sigma_bar = sigma_bar;
  r.erfc_argument = std::pow(r.gamma_sq, 0.25) * q / (std::exp2(b_rate + 1.5) * sigma_bar);
  r.bound_log2 = dfr_bound_log2(r.gamma_sq, r.tau, q, b_rate, sigma_bar);
  return r;
}

DfrReport dfr_report(const ParamSet& params) {
  return dfr_report(catalog_get(params.lattice), params.blocks(), params.q(), params.rate_b,
                    effective_sigma(params.sigma, params.n_prime));
}

Rational rate_for(std::int64_t p, const LatticeSpec& lattice) {
  if (!is_power_of_two(p)) throw std::invalid_argument("p must be a power of two");
  if (p % lattice.shaping_period != 0)
    throw std::invalid_argument("p = " + std::to_string(p) + " is not a multiple of the shaping period " +
                                std::to_string(lattice.shaping_period));
  return Rational(static_cast<std::int64_t>(lattice.dim) * exact_log2(p) - lattice.vol_log2, lattice.dim);
}

std::vector<std::int64_t> feasible_rates(const LatticeSpec& lattice, std::int64_t max_bits) {
  if (64 % lattice.dim != 0) throw std::invalid_argument(lattice.name + ": dimension does not divide 64");
  if (!is_power_of_two(lattice.shaping_period)) throw std::invalid_argument("shaping period is not a power of two");
  std::vector<std::int64_t> out;
  for (std::int64_t p = lattice.shaping_period; p <= (std::int64_t{1} << 40); p *= 2) {
    const Rational b = rate_for(p, lattice);
    const std::int64_t total = 64 * b.num() / b.den();
    if (total > max_bits) break;
    if (total >= 64) out.push_back(total);
  }
  return out;
}

std::vector<TableRow> reproduce_table(int which) {
  if (which != 2 && which != 3) throw std::invalid_argument("table must be 2 or 3");
  std::vector<TableRow> rows;
  for (const auto& ps : params_registry()) {
    if (ps.lattice != "Z" && ps.table != which) continue;
    TableRow r;
    r.name = ps.name;
    r.n_prime = ps.n_prime;
    r.q = ps.q();
    r.sigma = ps.sigma;
    r.lattice = ps.code_label();
    r.b_rate = ps.rate_b;
    r.b_rate_published = ps.rate_b_published;
    r.ct_bytes = ps.ct_bytes;
    r.ct_bytes_published = ps.ct_bytes_published;
    r.dfr_log2_claimed = ps.dfr_log2_claimed;
    r.dfr_log2_computed = dfr_report(ps).bound_log2;
    r.b_match = r.b_rate == r.b_rate_published;
    r.ct_match = r.ct_bytes == r.ct_bytes_published;
    r.dfr_match = std::fabs(r.dfr_log2_computed - r.dfr_log2_claimed) <= 1.0;
    r.match = r.b_match && r.ct_match && r.dfr_match;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::string out = "name,n_prime,q,sigma,lattice,B,ct_bytes,dfr_log2_claimed,dfr_log2_computed,match\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{:.2f},{},{:.2f},{},{},{:.2f},{}\n", r.name, r.n_prime, r.q, r.sigma, r.lattice, r.b_rate,
                       r.ct_bytes, r.dfr_log2_claimed, r.dfr_log2_computed, r.match ? "true" : "false");
  return out;
}

nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"name", r.name},
                   {"n_prime", r.n_prime},
                   {"q", r.q},
                   {"sigma", r.sigma},
                   {"lattice", r.lattice},
                   {"B", r.b_rate},
                   {"ct_bytes", r.ct_bytes},
                   {"dfr_log2_claimed", r.dfr_log2_claimed},
                   {"dfr_log2_computed", std::round(r.dfr_log2_computed * 100.0) / 100.0},
                   {"match", r.match}});
  }
  return arr;
}

McResult make_mc_result(std::uint64_t trials, std::uint64_t failures, double z) {
  McResult r;
  r.trials = trials;
  r.failures = failures;
  if (trials == 0) return r;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  r.rate = phat;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  r.wilson_low = std::max(0.0, centre - half);
  r.wilson_high = std::min(1.0, centre + half);
  return r;
}

McResult mc_awgn_dfr(const CodeConfig& cfg, double sigma_bar, std::uint64_t trials, const Seed& seed, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (!(sigma_bar >= 0) || !std::isfinite(sigma_bar)) throw std::invalid_argument("sigma_bar must be non-negative");
  const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::atomic<std::uint64_t> next{0}, failures{0};
  const double scale = std::ldexp(sigma_bar, kQueryResolutionBits);

  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Prng rng(derive_seed(seed, "awgn", c), "awgn");
      const std::uint64_t begin = c * kChunkTrials;
      const std::uint64_t end = std::min(trials, begin + kChunkTrials);
      std::uint64_t local = 0;
      for (std::uint64_t t = begin; t < end; ++t) {
        const IntVector z = random_index(cfg, rng);
        const DyadicVector x = label(cfg, z).scaled_pow2(cfg.delta);
        IntVector y = x.at_scale(kQueryResolutionBits);
        for (auto& v : y) v += std::llround(scale * rng.normal());
        if (decode_index(cfg, DyadicVector(std::move(y), kQueryResolutionBits)) != z) ++local;
      }
      failures += local;
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return make_mc_result(trials, failures.load());
}

McResult mc_pke_dfr(const ParamSet& params, std::uint64_t trials, const Seed& seed, std::uint64_t keys_every) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (keys_every == 0) throw std::invalid_argument("keys_every must be at least 1");
  std::uint64_t failures = 0;
  KeyPair keys;
  ZqMatrix a;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (t % keys_every == 0) {
      keys = keygen(params, derive_seed(seed, "keys", t / keys_every));
      a = expand_a(params, keys.pk.seed_a);
    }
    Prng msg_rng(derive_seed(seed, "message", t), "message");
    const Bits msg = random_bits(params.message_bits(), msg_rng);
    const Ciphertext ct = encrypt(params, keys.pk, a, msg, derive_seed(seed, "encrypt", t));
    if (decrypt(params, keys.sk, ct) != msg) ++failures;
  }
  return make_mc_result(trials, failures);
}

VarianceEstimate pke_noise_variance(const ParamSet& params, std::uint64_t trials, const Seed& seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  long double sum = 0, sum_sq = 0;
  std::uint64_t count = 0;
  const std::uint32_t q = params.q();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const KeygenTrace kt = keygen_detailed(params, derive_seed(seed, "keys", t));
    Prng msg_rng(derive_seed(seed, "message", t), "message");
    const Bits msg = random_bits(params.message_bits(), msg_rng);
    const EncryptTrace et = encrypt_detailed(params, kt.keys.pk, kt.a, msg, derive_seed(seed, "encrypt", t));
    const IntVector y = decrypt_residue(params, kt.keys.sk, et.ct);
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::int64_t d = floor_mod(y[i] - et.encoded[i], q);
      if (d >= q / 2) d -= q;
      sum += d;
      sum_sq += static_cast<long double>(d) * d;
      ++count;
    }
  }
  VarianceEstimate v;
  v.samples = count;
  v.mean = static_cast<double>(sum / count);
  v.variance = static_cast<double>((sum_sq - sum * sum / count) / (count - 1));
  const double sb = effective_sigma(params.sigma, params.n_prime);
  v.predicted = sb * sb;
  return v;
}

}  // namespace latticode
