#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "wplus/weierstrass.hpp"

namespace wplus {

using Json = nlohmann::ordered_json;

struct Config {
  int precision_slack = 10;
  std::uint32_t oracle_bound = 103;
  std::string cache_dir;  ///< empty disables the cache
  int jobs = 1;
  bool paranoid = false;
  long float_start_bits = 0;  ///< 0 picks the size-based default
  int float_max_factor = 16;
  std::uint64_t rng_seed = 0x5eed;

  void validate() const {
    if (jobs < 1) throw InvalidArgument("jobs must be at least 1");
    if (precision_slack < 0) throw InvalidArgument("slack must be nonnegative");
    if (float_max_factor < 1) throw InvalidArgument("float_max_factor must be at least 1");
  }
};

/// $WPLUS_CACHE, else $XDG_CACHE_HOME/wplus, else ~/.cache/wplus.
inline std::string default_cache_dir() {
  if (const char* e = std::getenv("WPLUS_CACHE")) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/wplus";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/wplus";
  return "";
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// JSON entries keyed by (kind, key, schema version). Writes go through a
/// temporary file and a rename; unreadable or corrupt entries read as misses.
class Cache {
 public:
  static constexpr int kSchemaVersion = 1;

  Cache() = default;
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& kind, const std::string& key) const {
    return std::filesystem::path(dir_) / (kind + "-" + key + ".v" + std::to_string(kSchemaVersion) + ".json");
  }

  std::optional<Json> load(const std::string& kind, const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(kind, key));
    if (!in) return std::nullopt;
    Json entry = Json::parse(in, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) return std::nullopt;
    if (entry.value("schema_version", -1) != kSchemaVersion) return std::nullopt;
    if (entry.value("kind", "") != kind || entry.value("key", "") != key) return std::nullopt;
    if (!entry.contains("payload") || entry.value("checksum", "") != fnv1a_hex(entry["payload"].dump()))
      return std::nullopt;
    return entry["payload"];
  }

  void store(const std::string& kind, const std::string& key, const Json& payload) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    const Json entry = {{"schema_version", kSchemaVersion},
                        {"kind", kind},
                        {"key", key},
                        {"payload", payload},
                        {"checksum", fnv1a_hex(payload.dump())}};
    const auto target = path_for(kind, key);
    std::ostringstream tmpname;
    tmpname << target.string() << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    {
      std::ofstream out(tmpname.str(), std::ios::trunc);
      if (!out) return;
      out << entry.dump();
      if (!out) return;
    }
    std::filesystem::rename(tmpname.str(), target, ec);
    if (ec) std::filesystem::remove(tmpname.str(), ec);
  }

 private:
  std::string dir_;
};

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline Json poly_json(const FpPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.value());
  return a;
}

inline Json zpoly_json(const ZPoly& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

inline ZPoly zpoly_from_json(const Json& a) {
  std::vector<Integer> c;
  for (const auto& s : a) c.emplace_back(s.get<std::string>());
  return ZPoly(IntegerRing{}, std::move(c));
}

inline Json basis_to_json(const GoodBasis& b) {
  Json forms = Json::array();
  for (const auto& f : b.forms) {
    Json c = Json::array();
    for (int n = 1; n < b.precision; ++n) c.push_back(element_to_string(f.coeff(n)));
    forms.push_back(c);
  }
  Json blocks = Json::array();
  for (const auto& gb : b.galois_blocks) blocks.push_back({{"minpoly", zpoly_json(gb.minpoly)}, {"dim", gb.dim}});
  return {{"p", b.p},           {"g", b.g},
          {"g_p", b.g_p},       {"precision", b.precision},
          {"pivots", b.pivots}, {"p_integral", b.p_integral},
          {"forms", forms},     {"galois_blocks", blocks},
          {"split_operator", b.split_operator}};
}

inline GoodBasis basis_from_json(const Json& j) {
  GoodBasis b;
  b.p = j.at("p").get<std::uint32_t>();
  b.g = j.at("g").get<int>();
  b.g_p = j.at("g_p").get<int>();
  b.precision = j.at("precision").get<int>();
  b.pivots = j.at("pivots").get<std::vector<int>>();
  b.p_integral = j.at("p_integral").get<bool>();
  b.split_operator = j.at("split_operator").get<std::string>();
  for (const auto& fc : j.at("forms")) {
    std::vector<Rat> c{Rat(0)};
    for (const auto& s : fc) c.push_back(rat_from_string(s.get<std::string>()));
    b.forms.emplace_back(RationalField{}, 0, std::move(c), b.precision, 2, static_cast<int>(b.p));
  }
  for (const auto& blk : j.at("galois_blocks"))
    b.galois_blocks.push_back({zpoly_from_json(blk.at("minpoly")), blk.at("dim").get<int>()});
  if (static_cast<int>(b.forms.size()) != b.g || static_cast<int>(b.pivots.size()) != b.g)
    throw InvalidArgument("cached basis is inconsistent");
  return b;
}

// ---------------------------------------------------------------------------
// Cached computations
// ---------------------------------------------------------------------------

inline GoodBasis cached_good_basis(std::uint32_t p, int prec, const Config& cfg, const Cache& cache) {
  const std::string key = std::to_string(p) + "-" + std::to_string(prec);
  if (auto j = cache.load("good_basis", key)) {
    try {
      return basis_from_json(*j);
    } catch (const std::exception&) {
    }
  }
  GoodBasis b = good_basis(p, prec, nullptr, cfg.rng_seed);
  cache.store("good_basis", key, basis_to_json(b));
  return b;
}

inline ClassPolyData cached_class_poly(long D, const Config& cfg, const Cache& cache) {
  const std::string key = std::to_string(D);
  if (auto j = cache.load("class_poly", key)) {
    try {
      ClassPolyData d;
      d.D = D;
      d.forms = reduced_forms(D);
      d.poly = zpoly_from_json(j->at("poly"));
      d.precision_bits = j->at("precision_bits").get<long>();
      if (d.poly.degree() == static_cast<int>(d.forms.size())) return d;
    } catch (const std::exception&) {
    }
  }
  ClassPolyData d = class_poly(D, cfg.float_start_bits, cfg.float_max_factor);
  cache.store("class_poly", key, {{"poly", zpoly_json(d.poly)}, {"precision_bits", d.precision_bits}});
  return d;
}

inline PipelineOptions pipeline_options(const Config& cfg, const Cache& cache) {
  PipelineOptions opt;
  opt.slack = cfg.precision_slack;
  opt.paranoid = cfg.paranoid;
  opt.oracle_bound = cfg.oracle_bound;
  opt.seed = cfg.rng_seed;
  opt.hilbert = [cfg, cache](long D) { return cached_class_poly(D, cfg, cache).poly; };
  return opt;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

enum ExitCode : int { kPass = 0, kFalsifier = 1, kNotGoodBasis = 2, kInternalError = 3 };

struct VerifyOutcome {
  std::uint32_t p = 0;
  std::optional<VerificationReport> report;
  std::string error;  ///< internal error message, if any

  int exit_code() const {
    if (!report) return kInternalError;
    if (!report->good_basis) return kNotGoodBasis;
    return report->all_pass() ? kPass : kFalsifier;
  }
};

inline VerifyOutcome verify(std::uint32_t p, const Config& cfg) {
  cfg.validate();
  require_supported_prime(p);
  VerifyOutcome out;
  out.p = p;
  const Cache cache(cfg.cache_dir);
  try {
    auto t0 = std::chrono::steady_clock::now();
    const GoodBasis basis = cached_good_basis(p, basis_precision(p, cfg.precision_slack), cfg, cache);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.report = extract_Fp(p, basis, pipeline_options(cfg, cache));
    out.report->timings_ms["good_basis"] = ms;
  } catch (const std::exception& e) {
    out.report.reset();
    out.error = e.what();
  }
  return out;
}

inline Json report_json(const VerificationReport& r) {
  Json checks = Json::object();
  for (const auto& [k, v] : r.checks) checks[k] = v;
  Json timings = Json::object();
  for (const auto& [k, v] : r.timings_ms) timings[k] = v;
  Json j = {{"schema", 1},
            {"p", r.p},
            {"modulus", r.p},
            {"g_p", r.g_p},
            {"g_plus", r.g},
            {"pivots", r.pivots},
            {"wt_inf", r.wt_inf},
            {"good_basis", r.good_basis},
            {"polys",
             {{"S_p", poly_json(r.split.S_p)},
              {"S_l", poly_json(r.split.S_l)},
              {"S_q", poly_json(r.split.S_q)},
              {"H_p_mod_p", poly_json(r.H_p_mod_p)},
              {"F_p", poly_json(r.F_p)},
              {"H", poly_json(r.H)}}},
            {"checks", checks},
            {"timings_ms", timings},
            {"pass", r.all_pass()}};
  if (!r.failure.empty()) j["failure"] = r.failure;
  if (r.g >= 2) j["exponents"] = {{"eps_rho", r.exps.eps_rho}, {"eps_i", r.exps.eps_i},
                                  {"alpha_rho", r.exps.alpha_rho}, {"alpha_i", r.exps.alpha_i},
                                  {"delta_rho", r.exps.delta_rho}, {"delta_i", r.exps.delta_i}};
  return j;
}

inline Json outcome_json(const VerifyOutcome& o) {
  if (o.report) return report_json(*o.report);
  return {{"schema", 1}, {"p", o.p}, {"error", o.error}};
}

// ---------------------------------------------------------------------------
// Scan
// ---------------------------------------------------------------------------

struct ScanResult {
  std::uint32_t lo = 0, hi = 0;
  std::vector<VerifyOutcome> outcomes;  ///< ascending p

  int exit_code() const {
    int worst = kPass;
    for (const auto& o : outcomes) {
      const int c = o.exit_code();
      if (c == kInternalError) return kInternalError;
      if (c == kFalsifier) worst = kFalsifier;
      else if (c == kNotGoodBasis && worst == kPass) worst = kNotGoodBasis;
    }
    return worst;
  }
};

inline std::vector<std::uint32_t> primes_in(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> ps;
  for (std::uint32_t p = std::max<std::uint32_t>(lo, 5); p <= hi && p >= lo; ++p)
    if (is_prime(p)) ps.push_back(p);
  return ps;
}

/// Every prime in [lo, hi], with `jobs` workers pulling primes in order.
inline ScanResult scan(std::uint32_t lo, std::uint32_t hi, const Config& cfg,
                       const std::function<void(const VerifyOutcome&)>& on_done = {}) {
  cfg.validate();
  ScanResult res;
  res.lo = lo;
  res.hi = hi;
  if (lo > hi) return res;
  const auto ps = primes_in(lo, hi);
  res.outcomes.resize(ps.size());
  std::atomic<std::size_t> next{0};
  std::mutex done_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < ps.size();) {
      res.outcomes[i] = verify(ps[i], cfg);
      if (on_done) {
        std::lock_guard<std::mutex> lock(done_mu);
        on_done(res.outcomes[i]);
      }
    }
  };
  const int n = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(ps.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return res;
}

inline Json scan_json(const ScanResult& s) {
  Json primes = Json::array();
  int passed = 0, falsified = 0, not_good = 0, errors = 0;
  Json wt_positive = Json::array();
  for (const auto& o : s.outcomes) {
    switch (o.exit_code()) {
      case kPass: ++passed; break;
      case kFalsifier: ++falsified; break;
      case kNotGoodBasis: ++not_good; break;
      default: ++errors; break;
    }
    if (!o.report) {
      primes.push_back({{"p", o.p}, {"error", o.error}});
      continue;
    }
    const auto& r = *o.report;
    Json checks = Json::object();
    for (const auto& [k, v] : r.checks) checks[k] = v;
    Json e = {{"p", r.p}, {"g", r.g}, {"g_p", r.g_p}, {"pivots", r.pivots}, {"wt_inf", r.wt_inf},
              {"good_basis", r.good_basis}, {"checks", checks}, {"pass", r.all_pass()},
              {"deg_F_p", r.F_p.degree()}, {"H", poly_json(r.H)}};
    if (!r.failure.empty()) e["failure"] = r.failure;
    if (r.wt_inf > 0) wt_positive.push_back(r.p);
    primes.push_back(e);
  }
  return {{"schema", 1},
          {"range", {s.lo, s.hi}},
          {"primes", primes},
          {"summary",
           {{"count", s.outcomes.size()},
            {"passed", passed},
            {"falsified", falsified},
            {"not_good_basis", not_good},
            {"errors", errors},
            {"wt_inf_positive", wt_positive}}}};
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

/// "x^4 (x + 1)^6 (x^2 + 10x + 62)^2" style factored form.
inline std::string factored(const FpPoly& f, std::uint64_t seed = 0x5eed) {
  if (f.is_zero()) return "0";
  if (f.degree() == 0) return f.to_string();
  const Factorization fac = factor(f, seed);
  std::string s;
  if (fac.unit != f.field().one()) s = element_to_string(fac.unit);
  for (const auto& [w, e] : fac.factors) {
    if (!s.empty()) s += " ";
    const bool bare = w.degree() == 1 && w.coeff(0).is_zero();
    s += bare ? w.to_string() : "(" + w.to_string() + ")";
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "p = " << r.p << "   genus X0(p) = " << r.g_p << "   genus X0+(p) = " << r.g << "\n";
  if (r.g == 0) os << "X0+(p) has genus 0: nothing to verify beyond the supersingular data.\n";
  if (!r.basis_forms.empty()) {
    os << "\nbasis of S2+(" << r.p << ")  [" << r.split_operator << "; pivots";
    for (int c : r.pivots) os << " " << c;
    os << "; wt(inf) = " << r.wt_inf << "]\n";
    for (std::size_t i = 0; i < r.basis_forms.size(); ++i)
      os << "  f" << i + 1 << " = " << r.basis_forms[i].to_string(9) << "\n";
  }
  if (!r.trivial && r.good_basis && r.g >= 2) {
    os << "\nW = " << r.W_p.to_string(9) << "   (V = " << r.V << ")\n";
    os << "\nF(W~, x) = " << factored(r.Wtilde_divisor) << "  mod " << r.p << "\n";
  }
  os << "\nS_" << r.p << "(x) = " << factored(r.split.S_p) << "\n";
  os << "  linear part    " << factored(r.split.S_l) << "\n";
  os << "  quadratic part " << factored(r.split.S_q) << "\n";
  if (r.g >= 2 && r.good_basis) {
    os << "\neps(rho) = " << r.exps.eps_rho << ", eps(i) = " << r.exps.eps_i << "\n";
    os << "\nF_" << r.p << "(x) = " << factored(r.F_p) << "  mod " << r.p << "\n";
    os << "H(x) = " << factored(r.H) << "\n";
  }
  if (!r.good_basis) os << "\nbasis is not " << r.p << "-integral, so the congruence does not apply\n";
  os << "\nchecks\n";
  for (const auto& [k, v] : r.checks) {
    os << "  " << std::left << std::setw(28) << k << (v ? "ok" : "FAILED");
    if (!v && VerificationReport::informational().count(k)) os << " (reported only)";
    os << "\n";
  }
  if (!r.failure.empty()) os << "\nfalsifier: " << r.failure << "\n";
  os << "\nresult: " << (!r.good_basis ? "NOT A GOOD BASIS" : r.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace wplus
