#include "latticode/frodo_pke.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace latticode {

namespace {

void require_shape(const ZqMatrix& a, const ZqMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix shape mismatch");
}

ZqMatrix sample_noise(Prng& rng, std::size_t rows, std::size_t cols, double sigma, std::uint32_t q, bool zero) {
  ZqMatrix m(rows, cols);
  if (zero) return m;
  for (auto& v : m.data) v = static_cast<std::uint16_t>(floor_mod(sample_gaussian(sigma, rng), q));
  return m;
}

void require_decoder(const ParamSet& params) {
  if (!params.has_decoder())
    throw std::runtime_error(params.name + ": " + params.lattice + " decoder not implemented (2^32 cosets)");
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Row {
  int n_prime;
  const char* lattice;
  int log2_q;
  double sigma;
  int delta;
  int dfr;
  double b;
  std::size_t ct;
  SecurityLevels security;
};

std::vector<ParamSet> build_registry() {
  // log2(p) follows from q = 2^delta p.
  const std::vector<std::pair<int, Row>> rows = {
      {0, {640, "Z", 15, 2.75, 13, -164, 2, 9720, {149, 136, 109}}},
      {2, {640, "E8", 15, 3.25, 13, -164, 2, 9720, {156, 142, 113}}},
      {2, {640, "BW16", 15, 3.23, 12, -164, 2.25, 9720, {155, 142, 113}}},
      {2, {640, "BW32", 15, 3.83, 12, -164, 2, 9720, {162, 148, 118}}},
      {0, {976, "Z", 16, 2.3, 13, -220, 3, 15744, {216, 196, 156}}},
      {2, {976, "E8", 16, 2.72, 13, -220, 3, 15744, {224, 204, 162}}},
      {2, {976, "BW16", 16, 2.71, 12, -220, 3.25, 15744, {224, 204, 161}}},
      {2, {976, "BW32", 16, 3.21, 12, -220, 3, 15744, {232, 211, 167}}},
      {0, {1344, "Z", 16, 1.4, 12, -290, 4, 21632, {282, 256, 203}}},
      {2, {1344, "E8", 16, 1.66, 12, -290, 4, 21632, {292, 265, 210}}},
      {2, {1344, "BW16", 16, 1.66, 11, -290, 4.25, 21632, {292, 265, 210}}},
      {2, {1344, "BW32", 16, 1.97, 11, -290, 4, 21632, {302, 275, 217}}},
      {3, {640, "E8", 14, 2.30, 12, -164, 2, 9072, {156, 143, 114}}},
      {3, {640, "BW16", 14, 2.29, 11, -164, 2.25, 9072, {156, 143, 114}}},
      {3, {640, "BW32", 14, 2.71, 11, -164, 2, 9072, {163, 149, 118}}},
      {3, {976, "E8", 15, 1.93, 12, -220, 3, 14760, {225, 205, 162}}},
      {3, {976, "BW16", 15, 1.92, 11, -220, 3.25, 14760, {224, 204, 162}}},
      {3, {976, "BW32", 15, 2.27, 11, -220, 3, 14760, {233, 212, 168}}},
      {3, {1344, "E8", 15, 1.18, 11, -290, 4, 20280, {291, 265, 210}}},
      {3, {1344, "BW16", 15, 1.17, 10, -290, 4.25, 20280, {291, 265, 209}}},
      {3, {1344, "BW32", 15, 1.39, 10, -290, 4, 20280, {302, 275, 217}}},
  };
  std::vector<ParamSet> out;
  std::uint32_t id = 1;
  for (const auto& [table, r] : rows) {
    std::string name = "frodo-" + std::to_string(r.n_prime);
    if (std::string_view(r.lattice) != "Z") name += "-" + lower(r.lattice);
    if (table == 3) name += "-compact";
    ParamSet ps = make_param_set(name, r.lattice, r.n_prime, std::int64_t{1} << (r.log2_q - r.delta), r.delta, r.sigma);
    ps.id = id++;
    ps.table = table == 0 ? 2 : table;
    ps.dfr_log2_claimed = r.dfr;
    ps.rate_b_published = r.b;
    ps.ct_bytes_published = r.ct;
    ps.security = r.security;
    out.push_back(std::move(ps));
  }
  return out;
}

}  // namespace

ZqMatrix mul_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product dimension mismatch");
  ZqMatrix out(a.rows, b.cols);
  const std::uint32_t mask = q - 1;
  std::vector<std::uint32_t> acc(b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const std::uint32_t aik = a.data[i * a.cols + k];
      if (aik == 0) continue;
      const std::uint16_t* brow = &b.data[k * b.cols];
      for (std::size_t j = 0; j < b.cols; ++j) acc[j] += aik * brow[j];
    }
    for (std::size_t j = 0; j < b.cols; ++j) out.data[i * b.cols + j] = static_cast<std::uint16_t>(acc[j] & mask);
  }
  return out;
}

ZqMatrix add_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q) {
  require_shape(a, b);
  ZqMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out.data[i] = static_cast<std::uint16_t>((std::uint32_t{a.data[i]} + b.data[i]) & (q - 1));
  return out;
}

ZqMatrix sub_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q) {
  require_shape(a, b);
  ZqMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out.data[i] = static_cast<std::uint16_t>((std::uint32_t{a.data[i]} + q - b.data[i]) & (q - 1));
  return out;
}

IntVector centered_entries(const ZqMatrix& m, std::uint32_t q) {
  IntVector out(m.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::int64_t v = m.data[i];
    out[i] = v >= q / 2 ? v - q : v;
  }
  return out;
}

int ParamSet::blocks() const { return 64 / catalog_get(lattice).dim; }

std::size_t ParamSet::message_bits() const { return code().bit_count(); }

std::string ParamSet::code_label() const {
  const int b = n_bar * m_bar / catalog_get(lattice).dim;
  return b == 1 ? lattice : lattice + "^" + std::to_string(b);
}

bool ParamSet::has_decoder() const { return lattice != "BW32" && lattice != "BW64" && lattice != "Leech24"; }

std::size_t ciphertext_bytes(int n_prime, int n_bar, int m_bar, int log2_q) {
  const std::size_t bits = static_cast<std::size_t>(m_bar * n_prime + m_bar * n_bar) * static_cast<std::size_t>(log2_q);
  return bits / 8;
}

ParamSet make_param_set(std::string name, std::string lattice, int n_prime, std::int64_t p, int delta, double sigma) {
  const LatticeSpec& spec = catalog_get(lattice);
  if (n_prime < 1) throw std::invalid_argument("n' must be positive");
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite and non-negative");
  if (64 % spec.dim != 0) throw std::invalid_argument(spec.name + " blocks do not tile the 8 x 8 message matrix");
  if (!is_power_of_two(p)) throw std::invalid_argument("p must be a power of two");
  ParamSet ps;
  ps.name = std::move(name);
  ps.lattice = spec.name;
  ps.n_prime = n_prime;
  ps.sigma = sigma;
  ps.p = p;
  ps.delta = delta;
  ps.log2_q = exact_log2(p) + delta;
  if (ps.log2_q > 16) throw std::invalid_argument("q must be at most 2^16");
  auto code = std::make_shared<CodeConfig>(CodeConfig::make(spec, p, delta, 64 / spec.dim));
  ps.rate_b = code->rate;
  ps.code_ = std::move(code);
  ps.ct_bytes = ciphertext_bytes(n_prime, ps.n_bar, ps.m_bar, ps.log2_q);
  return ps;
}

std::span<const ParamSet> params_registry() {
  static const std::vector<ParamSet> registry = build_registry();
  return registry;
}

const ParamSet& params_get(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& ps : params_registry())
    if (ps.name == key) return ps;
  throw std::invalid_argument("unknown parameter set: " + std::string(name));
}

const ParamSet& params_get(std::uint32_t id) {
  for (const auto& ps : params_registry())
    if (ps.id == id) return ps;
  throw std::invalid_argument("unknown parameter set id: " + std::to_string(id));
}

ZqMatrix expand_a(const ParamSet& params, std::span<const std::uint8_t> seed_a) {
  const auto n = static_cast<std::size_t>(params.n_prime);
  ZqMatrix a(n, n);
  Prng rng(seed_a, "matrix-a");
  std::vector<std::uint8_t> bytes(2 * n * n);
  rng.fill(bytes);
  const std::uint32_t mask = params.q() - 1;
  for (std::size_t i = 0; i < n * n; ++i)
    a.data[i] = static_cast<std::uint16_t>((bytes[2 * i] | (std::uint32_t{bytes[2 * i + 1]} << 8)) & mask);
  return a;
}

KeygenTrace keygen_detailed(const ParamSet& params, const Seed& seed, NoiseOptions noise) {
  KeygenTrace tr;
  Prng seed_rng(seed, "seed-a");
  seed_rng.fill(tr.keys.pk.seed_a);
  tr.a = expand_a(params, tr.keys.pk.seed_a);
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  Prng rng(seed, "keygen");
  tr.keys.sk.s = sample_noise(rng, n, nb, params.sigma, params.q(), false);
  tr.e = sample_noise(rng, n, nb, params.sigma, params.q(), noise.zero_errors);
  tr.keys.pk.b = add_mod(mul_mod(tr.a, tr.keys.sk.s, params.q()), tr.e, params.q());
  return tr;
}

KeyPair keygen(const ParamSet& params, const Seed& seed, NoiseOptions noise) {
  return keygen_detailed(params, seed, noise).keys;
}

EncryptTrace encrypt_detailed(const ParamSet& params, const PublicKey& pk, const ZqMatrix& a,
                              std::span<const std::uint8_t> msg_bits, const Seed& seed, NoiseOptions noise) {
  require_decoder(params);
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  const auto mb = static_cast<std::size_t>(params.m_bar);
  if (a.rows != n || a.cols != n) throw std::invalid_argument("matrix A has the wrong shape");
  if (pk.b.rows != n || pk.b.cols != nb) throw std::invalid_argument("public key has the wrong shape");
  if (msg_bits.size() != params.message_bits())
    throw std::invalid_argument("message must have " + std::to_string(params.message_bits()) + " bits, got " +
                                std::to_string(msg_bits.size()));
  EncryptTrace tr;
  tr.encoded = encode(params.code(), msg_bits);
  Prng rng(seed, "encrypt");
  const std::uint32_t q = params.q();
  tr.s_prime = sample_noise(rng, mb, n, params.sigma, q, false);
  tr.e_prime = sample_noise(rng, mb, n, params.sigma, q, noise.zero_errors);
  tr.e_double_prime = sample_noise(rng, mb, nb, params.sigma, q, noise.zero_errors);
  tr.ct.c1 = add_mod(mul_mod(tr.s_prime, a, q), tr.e_prime, q);
  tr.v = add_mod(mul_mod(tr.s_prime, pk.b, q), tr.e_double_prime, q);
  ZqMatrix m(mb, nb);
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = static_cast<std::uint16_t>(tr.encoded[i]);
  tr.ct.c2 = add_mod(tr.v, m, q);
  return tr;
}

Ciphertext encrypt(const ParamSet& params, const PublicKey& pk, const ZqMatrix& a, std::span<const std::uint8_t> msg_bits,
                   const Seed& seed, NoiseOptions noise) {
  return encrypt_detailed(params, pk, a, msg_bits, seed, noise).ct;
}

Ciphertext encrypt(const ParamSet& params, const PublicKey& pk, std::span<const std::uint8_t> msg_bits, const Seed& seed,
                   NoiseOptions noise) {
  require_decoder(params);
  return encrypt(params, pk, expand_a(params, pk.seed_a), msg_bits, seed, noise);
}

IntVector decrypt_residue(const ParamSet& params, const SecretKey& sk, const Ciphertext& ct) {
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  const auto mb = static_cast<std::size_t>(params.m_bar);
  if (sk.s.rows != n || sk.s.cols != nb) throw std::invalid_argument("secret key has the wrong shape");
  if (ct.c1.rows != mb || ct.c1.cols != n || ct.c2.rows != mb || ct.c2.cols != nb)
    throw std::invalid_argument("ciphertext has the wrong shape");
  const ZqMatrix y = sub_mod(ct.c2, mul_mod(ct.c1, sk.s, params.q()), params.q());
  return IntVector(y.data.begin(), y.data.end());
}

Bits decrypt(const ParamSet& params, const SecretKey& sk, const Ciphertext& ct) {
  require_decoder(params);
  return decode(params.code(), decrypt_residue(params, sk, ct));
}

}  // namespace latticode
