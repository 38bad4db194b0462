#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "wplus/wplus.hpp"

using namespace wplus;

namespace {

constexpr int kUsage = 64;

std::uint32_t prime_arg(long p) {
  if (p < 5 || !is_prime(static_cast<std::uint64_t>(p)))
    throw CLI::ValidationError("p", std::to_string(p) + " is not a prime >= 5");
  return static_cast<std::uint32_t>(p);
}

int cmd_verify(long p_in, bool json, const Config& cfg) {
  const std::uint32_t p = prime_arg(p_in);
  const VerifyOutcome o = verify(p, cfg);
  if (json) {
    std::cout << outcome_json(o).dump(2) << "\n";
  } else if (o.report) {
    std::cout << report_text(*o.report);
  } else {
    std::cerr << "internal error: " << o.error << "\n";
  }
  return o.exit_code();
}

int cmd_scan(long lo, long hi, const std::string& out, const Config& cfg) {
  if (lo < 0 || hi < 0) throw CLI::ValidationError("range", "bounds must be nonnegative");
  const auto res = scan(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), cfg, [](const VerifyOutcome& o) {
    std::cerr << "p = " << o.p;
    if (o.report) std::cerr << "  g+ = " << o.report->g << "  wt(inf) = " << o.report->wt_inf;
    static const char* names[] = {"pass", "FALSIFIED", "not a good basis", "internal error"};
    std::cerr << "  " << names[o.exit_code()] << "\n";
  });
  const Json j = scan_json(res);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << j.dump(2) << "\n";
    const auto& s = j["summary"];
    std::cout << s["count"] << " primes: " << s["passed"] << " passed, " << s["falsified"] << " falsified, "
              << s["not_good_basis"] << " without a good basis, " << s["errors"] << " errors\n";
  }
  return res.exit_code();
}

int cmd_ssing(long p_in, const Config& cfg) {
  const std::uint32_t p = prime_arg(p_in);
  const auto s = ss_polys(p);
  std::cout << "S_" << p << "(x) = " << factored(s.S_p, cfg.rng_seed) << "  mod " << p << "\n"
            << "  route: divisor polynomial of E_" << p - 1 << " mod " << p << ", times x^" << s.alpha_rho
            << " (x - 1728)^" << s.alpha_i << "\n"
            << "  linear part    " << factored(s.S_l, cfg.rng_seed) << "\n"
            << "  quadratic part " << factored(s.S_q, cfg.rng_seed) << "\n";
  if (p <= cfg.oracle_bound)
    std::cout << "  Hasse-invariant oracle " << (ss_oracle(p, cfg.oracle_bound) == s.S_p ? "agrees" : "DISAGREES") << "\n";
  return kPass;
}

int cmd_hilbert(long D, const Config& cfg) {
  const auto d = class_poly(D, cfg.float_start_bits, cfg.float_max_factor);
  std::cout << "H_" << D << "(x) = " << d.poly << "\n"
            << "  class number " << d.forms.size() << ", resolved at " << d.precision_bits << " bits after "
            << d.attempts << " attempt" << (d.attempts == 1 ? "" : "s") << "\n";
  return kPass;
}

int cmd_basis(long p_in, const Config& cfg) {
  const std::uint32_t p = prime_arg(p_in);
  const Cache cache(cfg.cache_dir);
  const auto b = cached_good_basis(p, basis_precision(p, cfg.precision_slack), cfg, cache);
  std::cout << "S2+(" << p << "): genus " << b.g << " (X0(p) has genus " << b.g_p << ")\n";
  if (b.g == 0) return kPass;
  std::cout << "  split by " << b.split_operator << ", Hecke blocks of dimension";
  for (const auto& blk : b.galois_blocks) std::cout << " " << blk.dim;
  std::cout << "\n  pivots";
  for (int c : b.pivots) std::cout << " " << c;
  std::cout << "   wt(inf) = " << wt_infinity(b) << "   " << (b.is_good() ? "good" : "NOT p-integral") << "\n";
  for (std::size_t i = 0; i < b.forms.size(); ++i) std::cout << "  f" << i + 1 << " = " << b.forms[i].to_string(12) << "\n";
  return b.is_good() ? kPass : kNotGoodBasis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weierstrass points on X0+(p) modulo p"};
  app.require_subcommand(1);
  Config cfg;
  cfg.cache_dir = default_cache_dir();
  app.add_option("--cache", cfg.cache_dir, "Cache directory (empty string disables)");
  app.add_option("--seed", cfg.rng_seed, "Seed for randomized factoring");

  long p = 0, lo = 0, hi = 0, D = 0;
  bool json = false;
  std::string out;

  auto* verify_cmd = app.add_subcommand("verify", "Run the full congruence chain for one prime");
  verify_cmd->add_option("p", p, "Prime")->required();
  verify_cmd->add_flag("--json", json, "Print the report as JSON");
  verify_cmd->add_flag("--paranoid", cfg.paranoid, "Also extract F(W^2) directly");
  verify_cmd->add_option("--slack", cfg.precision_slack, "Extra q-coefficients")->check(CLI::NonNegativeNumber);

  auto* scan_cmd = app.add_subcommand("scan", "Verify every prime in a range");
  scan_cmd->add_option("a", lo, "Lower bound")->required();
  scan_cmd->add_option("b", hi, "Upper bound")->required();
  scan_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", out, "Write the aggregate JSON here");
  scan_cmd->add_flag("--paranoid", cfg.paranoid, "Also extract F(W^2) directly");
  scan_cmd->add_option("--slack", cfg.precision_slack, "Extra q-coefficients")->check(CLI::NonNegativeNumber);

  auto* ssing_cmd = app.add_subcommand("ssing", "Supersingular polynomial and its split");
  ssing_cmd->add_option("p", p, "Prime")->required();
  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert class polynomial of discriminant -D");
  hilbert_cmd->add_option("D", D, "Positive D with -D a discriminant")->required();
  auto* basis_cmd = app.add_subcommand("basis", "Good basis of S2+(p)");
  basis_cmd->add_option("p", p, "Prime")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(p, json, cfg);
    if (*scan_cmd) return cmd_scan(lo, hi, out, cfg);
    if (*ssing_cmd) return cmd_ssing(p, cfg);
    if (*hilbert_cmd) return cmd_hilbert(D, cfg);
    if (*basis_cmd) return cmd_basis(p, cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsage;
}
