// pqcmc: key generation, issuance, expansion, reconstruction, signing,
// encryption, length reports and benchmarks over file containers.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error.
// Failures print one line to stderr: "error: <kind>: <message>".

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pqcmc/pqcmc.hpp"

namespace fs = std::filesystem;
using namespace pqcmc;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kData = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

struct Globals {
  std::string entropy = "none";
};

std::uint64_t resolve_seed(const Globals& g, const std::optional<std::uint64_t>& seed, const char* flag) {
  if (seed) return *seed;
  if (g.entropy == "os") {
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) | rd();
  }
  throw UsageError(std::string(flag) + " is required (or pass --entropy os)");
}

Bytes parse_hex_arg(const std::string& hex, const char* flag) {
  try {
    return from_hex(hex);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

ParameterSet params_by_name(const std::string& name) {
  try {
    return parameter_set(name);
  } catch (const UnknownParameterSet& e) {
    throw UsageError(e.what());
  }
}

// A private key (PQCK) or an expanded key (PQCX), reduced to what signing
// and decryption need.
struct SecretKey {
  ParameterSet params;
  Gf2Matrix k1_inv;
  LinearCode code;
  Gf2Matrix k3_inv;
};

SecretKey read_secret_key(const std::string& path) {
  const Bytes data = read_file(path);
  if (peek_magic(data) == kExpandedKeyMagic) {
    auto k = read_expanded_key(data);
    return {k.params, std::move(k.k1_new_inv), std::move(k.code), std::move(k.k3_inv)};
  }
  auto k = read_private_key(data);
  return {k.params, std::move(k.k1_inv), std::move(k.code), std::move(k.k3_inv)};
}

// A certificate file, or a response whose certificate is extracted.
ImplicitCert read_cert_or_response(const std::string& path) {
  const Bytes data = read_file(path);
  if (peek_magic(data) == kResponseMagic) return read_response(data).cert;
  return decode_cert(data);
}

Gf2Matrix message_from_octets(ByteView octets, std::size_t zeta1) {
  const std::size_t need = (zeta1 + 7) / 8;
  if (octets.size() != need) {
    throw UsageError("message must be " + std::to_string(need) + " octets for zeta1 = " + std::to_string(zeta1));
  }
  const unsigned spare = static_cast<unsigned>(need * 8 - zeta1);
  if (spare > 0 && (octets.back() & ((1u << spare) - 1)) != 0) {
    throw UsageError("message has bits set beyond zeta1");
  }
  return Gf2Matrix::from_packed(1, zeta1, octets);
}

void say(const std::string& line) { std::cout << line << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-quantum implicit certificates over McEliece-style keys"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--entropy", globals.entropy, "Source for omitted seeds: none (default) or os")
      ->check(CLI::IsMember({"none", "os"}));

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;

  // keygen
  struct {
    std::string params;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string info;
  } kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair and its root self-certificate");
  keygen_cmd->add_option("--params", kg.params, "Parameter set name")->required();
  keygen_cmd->add_option("--seed", kg.seed, "Key seed");
  keygen_cmd->add_option("--out", kg.out, "Output directory")->required();
  keygen_cmd->add_option("--info", kg.info, "Hex info for the self-certificate");
  commands.emplace_back(keygen_cmd, [&] {
    const ParameterSet ps = params_by_name(kg.params);
    const Bytes info = parse_hex_arg(kg.info, "--info");
    const auto key = keygen(ps, resolve_seed(globals, kg.seed, "--seed"));
    std::error_code ec;
    fs::create_directories(kg.out, ec);
    if (ec) throw IoError("cannot create '" + kg.out + "': " + ec.message());
    const fs::path dir(kg.out);
    write_file((dir / "private.key").string(), write_private_key(key));
    write_file((dir / "public.key").string(), write_public_key(key.public_key()));
    write_file((dir / "self.cert").string(), encode_cert(ca_self_descriptor(key, info)));
    say("wrote " + (dir / "private.key").string() + ", public.key, self.cert");
    return kOk;
  });

  // ee request
  struct {
    std::string ee_pub, info, out;
  } rq;
  auto* ee_cmd = app.add_subcommand("ee", "End-entity operations");
  ee_cmd->require_subcommand(1);
  auto* request_cmd = ee_cmd->add_subcommand("request", "Write an issuance request");
  request_cmd->add_option("--ee-pub", rq.ee_pub, "EE public key")->required();
  request_cmd->add_option("--info", rq.info, "Hex-encoded EE information");
  request_cmd->add_option("--out", rq.out, "Request file")->required();
  commands.emplace_back(request_cmd, [&] {
    const Bytes info = parse_hex_arg(rq.info, "--info");
    const auto pub = read_public_key(read_file(rq.ee_pub));
    write_file(rq.out, write_request(pub.params, {pub.l, info}));
    say("wrote " + rq.out);
    return kOk;
  });

  // ca issue
  struct {
    std::string ca_key, ee_pub, info, request, out, cert_out;
    std::optional<std::uint64_t> seed_r, not_before, not_after;
  } is;
  auto* ca_cmd = app.add_subcommand("ca", "Certificate authority operations");
  ca_cmd->require_subcommand(1);
  auto* issue_cmd = ca_cmd->add_subcommand("issue", "Issue an implicit certificate");
  issue_cmd->add_option("--ca-key", is.ca_key, "CA private key")->required();
  auto* ee_pub_opt = issue_cmd->add_option("--ee-pub", is.ee_pub, "EE public key");
  issue_cmd->add_option("--info", is.info, "Hex-encoded EE information (with --ee-pub)");
  auto* request_opt = issue_cmd->add_option("--request", is.request, "Issuance request file");
  ee_pub_opt->excludes(request_opt);
  issue_cmd->add_option("--seed-r", is.seed_r, "Issuance seed r");
  issue_cmd->add_option("--out", is.out, "Response file")->required();
  issue_cmd->add_option("--cert-out", is.cert_out, "Also write the bare certificate");
  auto* nb = issue_cmd->add_option("--not-before", is.not_before, "Validity start");
  auto* na = issue_cmd->add_option("--not-after", is.not_after, "Validity end");
  nb->needs(na);
  na->needs(nb);
  commands.emplace_back(issue_cmd, [&] {
    if (is.ee_pub.empty() == is.request.empty()) throw UsageError("give exactly one of --ee-pub or --request");
    if (!is.request.empty() && !is.info.empty()) throw UsageError("--info applies only with --ee-pub");
    const std::uint64_t seed_r = resolve_seed(globals, is.seed_r, "--seed-r");
    const Bytes info = parse_hex_arg(is.info, "--info");
    const CaContext ca = make_ca_context(read_private_key(read_file(is.ca_key)));
    auto [ee_params, req] = [&]() -> std::pair<ParameterSet, IssuanceRequest> {
      if (!is.request.empty()) return read_request(read_file(is.request));
      auto pub = read_public_key(read_file(is.ee_pub));
      return {pub.params, IssuanceRequest{std::move(pub.l), info}};
    }();
    if (ee_params != ca.keypair.params) {
      throw DimensionError("EE parameter set '" + ee_params.name + "' differs from CA parameter set '" +
                           ca.keypair.params.name + "'");
    }
    std::optional<Validity> validity;
    if (is.not_before) validity = Validity{*is.not_before, *is.not_after};
    const auto resp = ca_issue(ca, req, seed_r, validity);
    write_file(is.out, write_response(resp));
    if (!is.cert_out.empty()) write_file(is.cert_out, encode_cert(resp.cert));
    say("wrote " + is.out);
    return kOk;
  });

  // ee expand
  struct {
    std::string ee_key, response, ca_cert, ca_pub, out, cert_out;
  } ex;
  auto* expand_cmd = ee_cmd->add_subcommand("expand", "Validate a response and derive the expanded key");
  expand_cmd->add_option("--ee-key", ex.ee_key, "EE private key")->required();
  expand_cmd->add_option("--response", ex.response, "Issuance response")->required();
  expand_cmd->add_option("--ca-cert", ex.ca_cert, "CA self-certificate")->required();
  expand_cmd->add_option("--ca-pub", ex.ca_pub, "CA public key")->required();
  expand_cmd->add_option("--out", ex.out, "Expanded key file")->required();
  expand_cmd->add_option("--cert-out", ex.cert_out, "Also write the certificate");
  commands.emplace_back(expand_cmd, [&] {
    const auto ee = read_private_key(read_file(ex.ee_key));
    const auto resp = read_response(read_file(ex.response));
    const Bytes ca_cert = read_file(ex.ca_cert);
    const auto ca_pub = read_public_key(read_file(ex.ca_pub));
    if (ca_pub.params != ee.params) {
      throw DimensionError("CA parameter set '" + ca_pub.params.name + "' differs from EE parameter set '" +
                           ee.params.name + "'");
    }
    const auto expanded = ee_expand(ee, resp, ca_cert, ca_pub.l);
    write_file(ex.out, write_expanded_key(expanded));
    if (!ex.cert_out.empty()) write_file(ex.cert_out, encode_cert(resp.cert));
    say("wrote " + ex.out);
    return kOk;
  });

  // reconstruct
  struct {
    std::string cert, ca_cert, ca_pub, out;
  } rc;
  auto* recon_cmd = app.add_subcommand("reconstruct", "Derive an EE public key from its certificate");
  recon_cmd->add_option("--cert", rc.cert, "Certificate or issuance response")->required();
  recon_cmd->add_option("--ca-cert", rc.ca_cert, "CA self-certificate")->required();
  recon_cmd->add_option("--ca-pub", rc.ca_pub, "CA public key")->required();
  recon_cmd->add_option("--out", rc.out, "Public key file for Q")->required();
  commands.emplace_back(recon_cmd, [&] {
    const auto cert = read_cert_or_response(rc.cert);
    const auto ca_pub = read_public_key(read_file(rc.ca_pub));
    const ParameterSet ps = params_by_name(cert.param_set);
    if (ps != ca_pub.params) throw DimensionError("certificate parameter set differs from the CA key");
    const Gf2Matrix q = reconstruct_public(cert, read_file(rc.ca_cert), ca_pub.l);
    write_file(rc.out, write_public_key({ps, q}));
    say("wrote " + rc.out);
    return kOk;
  });

  // sign / verify
  struct {
    std::string key, in, out;
  } sg;
  auto* sign_cmd = app.add_subcommand("sign", "Sign the SHA-256 digest of a file");
  sign_cmd->add_option("--key", sg.key, "Private or expanded key")->required();
  sign_cmd->add_option("--in", sg.in, "Data file")->required();
  sign_cmd->add_option("--out", sg.out, "Signature file")->required();
  commands.emplace_back(sign_cmd, [&] {
    const auto key = read_secret_key(sg.key);
    const Gf2Matrix m = hash_to_message(sha256(read_file(sg.in)), key.params.zeta1);
    write_file(sg.out, serialize(sign_with(m, key.k1_inv, key.code, key.k3_inv)));
    say("wrote " + sg.out);
    return kOk;
  });

  struct {
    std::string pub, in, sig;
  } vf;
  auto* verify_cmd = app.add_subcommand("verify", "Check a signature against a public key");
  verify_cmd->add_option("--pub", vf.pub, "Public key (L or reconstructed Q)")->required();
  verify_cmd->add_option("--in", vf.in, "Data file")->required();
  verify_cmd->add_option("--sig", vf.sig, "Signature file")->required();
  commands.emplace_back(verify_cmd, [&] {
    const auto pub = read_public_key(read_file(vf.pub));
    const Gf2Matrix s = deserialize(read_file(vf.sig));
    if (s.cols() != 1 || s.rows() != pub.params.zeta2) {
      throw DimensionError("signature is " + s.shape() + ", expected " +
                           Gf2Matrix::shape_string(pub.params.zeta2, 1));
    }
    const Gf2Matrix m = hash_to_message(sha256(read_file(vf.in)), pub.params.zeta1);
    if (verify(s, pub.l) != m) throw VerificationFailed("signature does not reproduce the message digest");
    say("ok");
    return kOk;
  });

  // encrypt / decrypt
  struct {
    std::string pub, msg_hex, out;
    std::optional<std::uint64_t> seed;
  } en;
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a zeta1-bit message");
  encrypt_cmd->add_option("--pub", en.pub, "Public key")->required();
  encrypt_cmd->add_option("--msg-hex", en.msg_hex, "Message octets, MSB-first")->required();
  encrypt_cmd->add_option("--seed", en.seed, "Error-vector seed");
  encrypt_cmd->add_option("--out", en.out, "Ciphertext file")->required();
  commands.emplace_back(encrypt_cmd, [&] {
    const auto pub = read_public_key(read_file(en.pub));
    const Gf2Matrix m = message_from_octets(parse_hex_arg(en.msg_hex, "--msg-hex"), pub.params.zeta1);
    SplitMix64 gen(resolve_seed(globals, en.seed, "--seed"));
    write_file(en.out, serialize(encrypt(m, pub, gen)));
    say("wrote " + en.out);
    return kOk;
  });

  struct {
    std::string key, in;
  } de;
  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext; prints the message as hex");
  decrypt_cmd->add_option("--key", de.key, "Private or expanded key")->required();
  decrypt_cmd->add_option("--in", de.in, "Ciphertext file")->required();
  commands.emplace_back(decrypt_cmd, [&] {
    const auto key = read_secret_key(de.key);
    const Gf2Matrix z = deserialize(read_file(de.in));
    if (z.rows() != 1) throw DimensionError("ciphertext must be a single row, got " + z.shape());
    const auto out = decrypt_with(z, key.k1_inv, key.code, key.k3_inv);
    say(to_hex(out.message.packed()));
    return kOk;
  });

  // lengths
  struct {
    std::string params;
    bool all = false;
    bool kv = false;
  } ln;
  auto* lengths_cmd = app.add_subcommand("lengths", "Key, reconstruction value and signature lengths");
  auto* params_opt = lengths_cmd->add_option("--params", ln.params, "Single parameter set");
  lengths_cmd->add_flag("--all", ln.all, "Every table preset (default)")->excludes(params_opt);
  lengths_cmd->add_flag("--kv", ln.kv, "Key-value output");
  commands.emplace_back(lengths_cmd, [&] {
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    if (!ln.params.empty()) {
      const auto ps = params_by_name(ln.params);
      dims.emplace_back(ps.zeta1, ps.zeta2);
    } else {
      for (const auto& ps : length_table_presets()) dims.emplace_back(ps.zeta1, ps.zeta2);
    }
    const auto report = length_report(dims);
    std::cout << (ln.kv ? report.to_kv() : report.to_text());
    return kOk;
  });

  // bench matgen
  struct {
    std::vector<std::size_t> sizes = {1024, 2048, 4096};
    std::size_t trials = 5;
    std::vector<std::string> methods;
    double min_batch_ms = 10.0;
    bool kv = false;
  } bm;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmarks");
  bench_cmd->require_subcommand(1);
  auto* matgen_cmd = bench_cmd->add_subcommand("matgen", "Invertible-matrix generation timing");
  matgen_cmd->add_option("--sizes", bm.sizes, "Comma-separated sizes")->delimiter(',');
  matgen_cmd->add_option("--trials", bm.trials, "Trials per size (>= 3)");
  matgen_cmd->add_option("--method", bm.methods, "permutation, permutation-dense or baseline (repeatable)");
  matgen_cmd->add_option("--min-batch-ms", bm.min_batch_ms, "Minimum wall time per trial");
  matgen_cmd->add_flag("--kv", bm.kv, "Key-value output");
  commands.emplace_back(matgen_cmd, [&] {
    BenchOptions opts;
    opts.trials = bm.trials;
    opts.min_batch = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double, std::milli>(bm.min_batch_ms));
    if (!bm.methods.empty()) {
      opts.methods.clear();
      for (const auto& name : bm.methods) opts.methods.push_back(parse_method(name));
    }
    const auto report = bench_matrix_gen(bm.sizes, opts);
    std::cout << (bm.kv ? report.to_kv() : report.to_text());
    return kOk;
  });

  // ecqv demo
  struct {
    ec::Scalar ee_priv = 7, ca_priv = 11, nonce = 5;
    std::string info = "45";
  } eq;
  auto* ecqv_cmd = app.add_subcommand("ecqv", "Toy elliptic-curve implicit certificates");
  ecqv_cmd->require_subcommand(1);
  auto* demo_cmd = ecqv_cmd->add_subcommand("demo", "Print an issuance and expansion transcript");
  demo_cmd->add_option("--ee-priv", eq.ee_priv, "EE private scalar");
  demo_cmd->add_option("--ca-priv", eq.ca_priv, "CA private scalar");
  demo_cmd->add_option("--nonce", eq.nonce, "CA nonce");
  demo_cmd->add_option("--info", eq.info, "Hex-encoded EE information");
  commands.emplace_back(demo_cmd, [&] {
    std::cout << ec::ecqv_demo_transcript(ec::toy_curve(), eq.ee_priv, eq.ca_priv, eq.nonce,
                                          parse_hex_arg(eq.info, "--info"));
    return kOk;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    for (auto& [cmd, run] : commands) {
      if (cmd->parsed()) return run();
    }
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationFailed& e) {
    std::cerr << "error: verification-failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const IssuerValidationError& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return kData;
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kData;
  }
}
