#include "latticode/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "latticode/analysis.hpp"
#include "latticode/codec.hpp"
#include "latticode/frodo_pke.hpp"
#include "latticode/lattice_catalog.hpp"
#include "latticode/serialization.hpp"

namespace latticode::cli {

namespace {

using json = nlohmann::ordered_json;

struct Cell {
  std::string text;
  json value;
};

Cell cell(const std::string& s) { return {s, s}; }
Cell cell(bool b) { return {b ? "true" : "false", b}; }
Cell cell(std::int64_t v) { return {std::to_string(v), v}; }
Cell cell(std::uint64_t v) { return {std::to_string(v), v}; }
Cell cell(int v) { return cell(static_cast<std::int64_t>(v)); }
Cell cell(std::uint32_t v) { return cell(static_cast<std::uint64_t>(v)); }
Cell fixed(double v, int digits) { return {fmt::format("{:.{}f}", v, digits), json::parse(fmt::format("{:.{}f}", v, digits))}; }
Cell sci(double v) { return {fmt::format("{:.6e}", v), v}; }

using Record = std::vector<std::pair<std::string, Cell>>;

struct Output {
  std::string format = "csv";
  bool pretty = false;
  std::string path;
};

std::string render(const std::vector<Record>& records, const Output& o) {
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : records) {
      json obj = json::object();
      for (const auto& [k, c] : r) obj[k] = c.value;
      arr.push_back(std::move(obj));
    }
    const json& doc = arr.size() == 1 ? arr[0] : arr;
    return doc.dump(o.pretty ? 2 : -1) + "\n";
  }
  if (records.empty()) return "";
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back();
  for (const auto& [k, c] : records[0]) grid.back().push_back(k);
  for (const auto& r : records) {
    grid.emplace_back();
    for (const auto& [k, c] : r) grid.back().push_back(c.text);
  }
  std::string out;
  if (!o.pretty) {
    for (const auto& row : grid) out += fmt::format("{}\n", fmt::join(row, ","));
    return out;
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& row : grid)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += fmt::format("{:<{}}  ", row[i], width[i]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

void emit(std::ostream& out, const std::string& text, const Output& o) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + o.path + " failed");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("LATTICODE_SEED")) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(env, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0') throw std::invalid_argument(std::string("LATTICODE_SEED is not an integer: ") + env);
    return v;
  }
  return 0;
}

std::string format_entry(const Dyadic& d) { return d.log2_den() == 0 ? std::to_string(d.num()) : fmt::format("{}", d.to_double()); }

std::string format_vector(const DyadicVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_entry(v[i]);
  return s;
}

Record params_record(const ParamSet& ps) {
  return {{"name", cell(ps.name)},
          {"id", cell(ps.id)},
          {"n_prime", cell(ps.n_prime)},
          {"q", cell(ps.q())},
          {"sigma", fixed(ps.sigma, 2)},
          {"lattice", cell(ps.code_label())},
          {"p", cell(ps.p)},
          {"delta", cell(ps.delta)},
          {"B", fixed(ps.rate_b, 2)},
          {"message_bits", cell(ps.message_bits())},
          {"ct_bytes", cell(ps.ct_bytes)},
          {"dfr_log2_claimed", cell(ps.dfr_log2_claimed)},
          {"security_classical", cell(ps.security.classical)},
          {"security_quantum", cell(ps.security.quantum)},
          {"security_paranoid", cell(ps.security.paranoid)}};
}

Record dfr_record(const DfrReport& r) {
  return {{"lattice", cell(r.lattice)},
          {"gamma_sq", fixed(r.gamma_sq, 6)},
          {"tau", cell(static_cast<std::int64_t>(r.tau))},
          {"q", cell(static_cast<std::int64_t>(r.q))},
          {"B", fixed(r.b_rate, 4)},
          {"sigma_bar", fixed(r.sigma_bar, 6)},
          {"erfc_argument", fixed(r.erfc_argument, 6)},
          {"bound_log2", fixed(r.bound_log2, 4)}};
}

Record mc_record(const McResult& m) {
  return {{"trials", cell(m.trials)},
          {"failures", cell(m.failures)},
          {"rate", sci(m.rate)},
          {"wilson_low", sci(m.wilson_low)},
          {"wilson_high", sci(m.wilson_high)}};
}

struct Flags {
  Output out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--pretty", f.out.pretty, "Human-readable layout");
  cmd->add_option("-o,--output", f.out.path, "Write output to a file");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice-coded modulation for LWE encryption"};
  app.require_subcommand(1);
  Flags f;
  std::function<void()> action;

  // params
  auto* params = app.add_subcommand("params", "Registered parameter sets");
  params->require_subcommand(1);
  auto* params_list = params->add_subcommand("list", "List all parameter sets");
  add_common(params_list, f);
  params_list->callback([&] {
    action = [&] {
      std::vector<Record> rows;
      for (const auto& ps : params_registry()) rows.push_back(params_record(ps));
      emit(out, render(rows, f.out), f.out);
    };
  });
  std::string show_name;
  auto* params_show = params->add_subcommand("show", "Show one parameter set");
  params_show->add_option("name", show_name, "Parameter set name or id")->required();
  add_common(params_show, f);
  params_show->callback([&] {
    action = [&] {
      const bool numeric = !show_name.empty() && show_name.find_first_not_of("0123456789") == std::string::npos;
      const ParamSet& ps = numeric ? params_get(static_cast<std::uint32_t>(std::stoul(show_name))) : params_get(show_name);
      emit(out, render({params_record(ps)}, f.out), f.out);
    };
  });

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Lattice catalog as JSON");
  bool catalog_pretty = false;
  catalog->add_flag("--pretty", catalog_pretty, "Indent the JSON");
  catalog->callback([&] { action = [&] { out << catalog_to_json().dump(catalog_pretty ? 2 : -1) << "\n"; }; });

  // encode / decode
  std::string lattice_name = "E8";
  std::int64_t p = 0;
  int delta = 0;
  int blocks = 1;
  std::string hex;
  std::vector<double> coords;
  auto code_options = [&](CLI::App* cmd) {
    cmd->add_option("--lattice", lattice_name, "Block lattice")->required();
    cmd->add_option("--p", p, "Shaping modulus")->required();
    cmd->add_option("--delta", delta, "Scaling exponent")->check(CLI::Range(0, 30));
    cmd->add_option("--blocks", blocks, "Number of blocks")->check(CLI::Range(1, 64));
  };
  auto* encode_cmd = app.add_subcommand("encode", "Map hex message bits to a codeword");
  code_options(encode_cmd);
  encode_cmd->add_option("bits", hex, "Message bits as hex, most significant bit first")->required();
  encode_cmd->callback([&] {
    action = [&] {
      const CodeConfig cfg = CodeConfig::make(catalog_get(lattice_name), p, delta, blocks);
      const Bits bits = bits_from_hex(hex, cfg.bit_count());
      const DyadicVector x = label(cfg, bits_to_index(cfg, bits)).scaled_pow2(cfg.delta);
      out << format_vector(x) << "\n";
    };
  });
  auto* decode_cmd = app.add_subcommand("decode", "Decode a noisy vector to hex message bits");
  code_options(decode_cmd);
  decode_cmd->add_option("coords", coords, "Received coordinates")->required()->allow_extra_args();
  decode_cmd->callback([&] {
    action = [&] {
      const CodeConfig cfg = CodeConfig::make(catalog_get(lattice_name), p, delta, blocks);
      if (coords.size() != cfg.n())
        throw std::invalid_argument(fmt::format("expected {} coordinates, got {}", cfg.n(), coords.size()));
      const IntVector z = decode_index(cfg, query_from_doubles(coords));
      out << "0x" << bits_to_hex(index_to_bits(cfg, z)) << "\n";
    };
  });

  // pke
  auto* pke = app.add_subcommand("pke", "Public-key encryption");
  pke->require_subcommand(1);
  std::string param_name, pk_path, sk_path, ct_path, msg_hex;
  std::uint64_t trials = 1000;
  auto pke_seed = [&](CLI::App* cmd) {
    cmd->add_option("--params", param_name, "Parameter set")->required();
    cmd->add_option("--seed", f.seed, "64-bit seed (falls back to LATTICODE_SEED)");
  };
  auto* keygen_cmd = pke->add_subcommand("keygen", "Generate a key pair");
  pke_seed(keygen_cmd);
  keygen_cmd->add_option("--pk", pk_path, "Public key output file")->required();
  keygen_cmd->add_option("--sk", sk_path, "Secret key output file")->required();
  keygen_cmd->callback([&] {
    action = [&] {
      const ParamSet& ps = params_get(param_name);
      const KeyPair kp = keygen(ps, seed_from_u64(resolve_seed(f.seed)));
      write_file(pk_path, serialize(ps, kp.pk));
      write_file(sk_path, serialize(ps, kp.sk));
    };
  });
  auto* encrypt_cmd = pke->add_subcommand("encrypt", "Encrypt a message");
  pke_seed(encrypt_cmd);
  encrypt_cmd->add_option("--pk", pk_path, "Public key file")->required();
  encrypt_cmd->add_option("--msg", msg_hex, "Message bits as hex")->required();
  encrypt_cmd->add_option("--ct", ct_path, "Ciphertext output file")->required();
  encrypt_cmd->callback([&] {
    action = [&] {
      const ParamSet& ps = params_get(param_name);
      const PublicKey pk = parse_public_key(ps, read_file(pk_path));
      const Bits msg = bits_from_hex(msg_hex, ps.message_bits());
      write_file(ct_path, serialize(ps, encrypt(ps, pk, msg, seed_from_u64(resolve_seed(f.seed)))));
    };
  });
  auto* decrypt_cmd = pke->add_subcommand("decrypt", "Decrypt a ciphertext");
  decrypt_cmd->add_option("--params", param_name, "Parameter set")->required();
  decrypt_cmd->add_option("--sk", sk_path, "Secret key file")->required();
  decrypt_cmd->add_option("--ct", ct_path, "Ciphertext file")->required();
  decrypt_cmd->callback([&] {
    action = [&] {
      const ParamSet& ps = params_get(param_name);
      const SecretKey sk = parse_secret_key(ps, read_file(sk_path));
      const Ciphertext ct = parse_ciphertext(ps, read_file(ct_path));
      out << "0x" << bits_to_hex(decrypt(ps, sk, ct)) << "\n";
    };
  });
  std::uint64_t keys_every = 100;
  auto* roundtrip_cmd = pke->add_subcommand("roundtrip", "Count decryption failures over random round trips");
  pke_seed(roundtrip_cmd);
  roundtrip_cmd->add_option("--trials", trials, "Number of round trips")->check(CLI::PositiveNumber);
  roundtrip_cmd->add_option("--keys-every", keys_every, "Fresh key pair every N trials")->check(CLI::PositiveNumber);
  add_common(roundtrip_cmd, f);
  roundtrip_cmd->callback([&] {
    action = [&] {
      const ParamSet& ps = params_get(param_name);
      Record r{{"params", cell(ps.name)}};
      for (auto& kv : mc_record(mc_pke_dfr(ps, trials, seed_from_u64(resolve_seed(f.seed)), keys_every))) r.push_back(kv);
      emit(out, render({r}, f.out), f.out);
    };
  });

  // dfr
  auto* dfr = app.add_subcommand("dfr", "Decryption failure analysis");
  dfr->require_subcommand(1);
  std::string dfr_params;
  double q_value = 0, sigma = 0, sigma_bar = 0, b_rate = 0;
  int n_prime = 0;
  auto* bound_cmd = dfr->add_subcommand("bound", "Union bound on the failure probability");
  bound_cmd->add_option("--params", dfr_params, "Parameter set (overrides the explicit values)");
  bound_cmd->add_option("--lattice", lattice_name, "Block lattice");
  bound_cmd->add_option("--q", q_value, "Modulus");
  bound_cmd->add_option("--sigma", sigma, "Per-entry Gaussian width");
  bound_cmd->add_option("--nprime", n_prime, "LWE dimension n'");
  bound_cmd->add_option("--sigma-bar", sigma_bar, "Effective width (instead of --sigma/--nprime)");
  bound_cmd->add_option("--b", b_rate, "Bits per dimension");
  add_common(bound_cmd, f);
  bound_cmd->callback([&] {
    action = [&] {
      DfrReport r;
      if (!dfr_params.empty()) {
        r = dfr_report(params_get(dfr_params));
      } else {
        const LatticeSpec& block = catalog_get(lattice_name);
        if (64 % block.dim != 0) throw std::invalid_argument(block.name + ": dimension does not divide 64");
        const double sb = sigma_bar > 0 ? sigma_bar : effective_sigma(sigma, n_prime);
        r = dfr_report(block, 64 / block.dim, q_value, b_rate, sb);
      }
      emit(out, render({dfr_record(r)}, f.out), f.out);
    };
  });
  auto* simulate_cmd = dfr->add_subcommand("simulate", "Monte Carlo failure rate under Gaussian noise");
  code_options(simulate_cmd);
  simulate_cmd->add_option("--sigma-bar", sigma_bar, "Noise width per coordinate")->required();
  simulate_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", f.seed, "64-bit seed (falls back to LATTICODE_SEED)");
  simulate_cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  add_common(simulate_cmd, f);
  simulate_cmd->callback([&] {
    action = [&] {
      const LatticeSpec& block = catalog_get(lattice_name);
      const CodeConfig cfg = CodeConfig::make(block, p, delta, blocks);
      const McResult m = mc_awgn_dfr(cfg, sigma_bar, trials, seed_from_u64(resolve_seed(f.seed)), f.threads);
      Record r = mc_record(m);
      r.push_back({"bound_log2", fixed(dfr_report(block, blocks, static_cast<double>(cfg.q), cfg.rate, sigma_bar).bound_log2, 4)});
      emit(out, render({r}, f.out), f.out);
    };
  });
  int which = 2;
  auto* table_cmd = dfr->add_subcommand("table", "Recompute a published parameter table");
  table_cmd->add_option("which", which, "Table number")->required()->check(CLI::IsMember({2, 3}));
  add_common(table_cmd, f);
  table_cmd->callback([&] {
    action = [&] {
      const auto rows = reproduce_table(which);
      if (f.out.format == "json") {
        emit(out, table_to_json(rows).dump(f.out.pretty ? 2 : -1) + "\n", f.out);
      } else if (!f.out.pretty) {
        emit(out, table_to_csv(rows), f.out);
      } else {
        std::vector<Record> recs;
        for (const auto& r : rows)
          recs.push_back({{"name", cell(r.name)},
                          {"n_prime", cell(r.n_prime)},
                          {"q", cell(r.q)},
                          {"sigma", fixed(r.sigma, 2)},
                          {"lattice", cell(r.lattice)},
                          {"B", fixed(r.b_rate, 2)},
                          {"ct_bytes", cell(r.ct_bytes)},
                          {"dfr_log2_claimed", cell(r.dfr_log2_claimed)},
                          {"dfr_log2_computed", fixed(r.dfr_log2_computed, 2)},
                          {"match", cell(r.match)}});
        emit(out, render(recs, f.out), f.out);
      }
    };
  });
  std::int64_t max_bits = 512;
  auto* rates_cmd = dfr->add_subcommand("rates", "Feasible totals of encoded bits for a lattice");
  rates_cmd->add_option("--lattice", lattice_name, "Block lattice")->required();
  rates_cmd->add_option("--max-bits", max_bits, "Largest total to list")->check(CLI::PositiveNumber);
  rates_cmd->callback([&] {
    action = [&] {
      const auto totals = feasible_rates(catalog_get(lattice_name), max_bits);
      out << fmt::format("{}\n", fmt::join(totals, " "));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return 0;
    }
    err << "latticode: " << e.what() << "\n";
    return 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const std::exception& e) {
    err << "latticode: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace latticode::cli
