// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance        run all criteria
//   acceptance 3 5    run only criteria 3 and 5

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wplus/wplus.hpp"

using namespace wplus;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FpPoly P(std::uint32_t p, std::initializer_list<long> c) { return FpPoly::from_ints(PrimeField(p), c); }

struct Verdict {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "\n      failed: " << what;
    }
  }
};

/// Reports for 67 <= p <= 199, computed once and shared by criteria 2, 7, 8.
const std::vector<VerifyOutcome>& main_scan(double* seconds = nullptr) {
  static double elapsed = 0;
  static const std::vector<VerifyOutcome> outcomes = [] {
    const auto t0 = Clock::now();
    Config cfg;
    auto res = scan(67, 199, cfg);
    elapsed = seconds_since(t0);
    return res.outcomes;
  }();
  if (seconds) *seconds = elapsed;
  return outcomes;
}

std::string list(const std::vector<std::uint32_t>& ps) {
  std::string s;
  for (auto p : ps) s += (s.empty() ? "" : " ") + std::to_string(p);
  return s.empty() ? "none" : s;
}

// 1. The p = 67 example.
Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto o = verify(67, Config{});
  const double secs = seconds_since(t0);
  v.require(o.report.has_value(), "verify 67 completed: " + o.error);
  if (!o.report) return v;
  const auto& r = *o.report;
  v.require(o.exit_code() == kPass, "exit code 0");

  const std::vector<std::vector<long>> f = {{1, 0, -3, -3, -3, 1, 4, 3}, {0, 1, -1, -3, 0, 0, 3, 4}};
  v.require(r.basis_forms.size() == 2, "two basis forms");
  for (std::size_t i = 0; i < 2 && i < r.basis_forms.size(); ++i)
    for (int n = 1; n <= 8; ++n)
      v.require(r.basis_forms[i].coeff(n) == Rat(f[i][static_cast<std::size_t>(n - 1)]),
                "f" + std::to_string(i + 1) + " coefficient of q^" + std::to_string(n));
  const std::vector<long> w = {0, 0, 0, 1, -2, -6, 6, 15, 8};
  for (int n = 0; n <= 8; ++n)
    v.require(r.W_p.coeff(n) == Rat(w[static_cast<std::size_t>(n)]), "W coefficient of q^" + std::to_string(n));

  const FpPoly x = P(67, {0, 1}), l1 = P(67, {1, 1}), l14 = P(67, {14, 1});
  const FpPoly q1 = P(67, {45, 8, 1}), q2 = P(67, {24, 44, 1}), h = P(67, {62, 10, 1});
  v.require(r.Wtilde_divisor == x.pow(4) * l1.pow(6) * l14.pow(6) * q1.pow(2) * q2.pow(2) * h.pow(2),
            "F(W~, x) = x^4 (x+1)^6 (x+14)^6 (x^2+8x+45)^2 (x^2+44x+24)^2 (x^2+10x+62)^2");
  v.require(r.split.S_p == l1 * l14 * q1 * q2, "S_67 = (x+1)(x+14)(x^2+8x+45)(x^2+44x+24)");
  v.require(r.split.S_l == l1 * l14 && r.split.S_q == q1 * q2, "linear and quadratic parts");
  v.require(r.F_p == r.split.S_q.pow(2) * h.pow(2), "F_67 = S_q^2 (x^2+10x+62)^2");
  v.require(r.H == h, "H = x^2 + 10x + 62");
  v.require(r.exps.eps_rho == 4 && r.exps.eps_i == 0, "eps = (4, 0)");
  v.require(secs < 30, "runtime under 30 s");
  v.notes << "\n      " << secs << " s";
  return v;
}

// 2. Full congruence over 67 <= p <= 199.
Verdict criterion2() {
  Verdict v;
  double secs = 0;
  const auto& outs = main_scan(&secs);
  std::vector<std::uint32_t> gcd_fail;
  for (const auto& o : outs) {
    const std::string p = std::to_string(o.p);
    v.require(o.report.has_value(), "p = " + p + " completed: " + o.error);
    if (!o.report) continue;
    const auto& r = *o.report;
    v.require(r.good_basis, "p = " + p + " good basis");
    v.require(r.failure.empty(), "p = " + p + " no falsifier: " + r.failure);
    if (r.g >= 2) {
      v.require(r.checks.count("exact_divisions") && r.checks.at("exact_divisions"), "p = " + p + " exact divisions");
      v.require(r.checks.count("square_extraction") && r.checks.at("square_extraction"), "p = " + p + " H1 is a square");
    }
    v.require(r.checks.count("gcd_H_Sp_is_1") == 1, "p = " + p + " gcd(H, S_p) reported");
    if (!r.checks.at("gcd_H_Sp_is_1")) gcd_fail.push_back(o.p);
    v.require(r.F_p.degree() == 2 * (r.g * r.g * r.g - r.g - r.wt_inf), "p = " + p + " degree of F_p");
  }
  v.require(outs.size() == primes_in(67, 199).size(), "every prime scanned");
  v.require(secs < 30 * 60, "runtime under 30 min");
  v.notes << "\n      " << outs.size() << " primes in " << secs << " s; gcd(H, S_p) != 1 for: " << list(gcd_fail);
  return v;
}

// 3. Supersingular polynomial against the oracle, degree and genus relation.
Verdict criterion3() {
  Verdict v;
  const auto t0 = Clock::now();
  int count = 0;
  for (std::uint32_t p = 5; p <= 103; ++p) {
    if (!is_prime(p)) continue;
    ++count;
    const std::string ps = std::to_string(p);
    const auto s = ss_polys(p);
    v.require(s.S_p == ss_oracle(p), "p = " + ps + " S_p matches the oracle");
    const int gp = genus_x0(p);
    v.require(s.degree() == gp + 1, "p = " + ps + " deg S_p = g_p + 1");
    const int gplus = static_cast<int>(plus_data(p).hecke->dim());
    v.require(2 * gplus == gp + 1 - s.S_l.degree(), "p = " + ps + " 2g+ = g_p + 1 - deg S_l");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 120, "runtime under 2 min");
  v.notes << "\n      " << count << " primes in " << secs << " s";
  return v;
}

// 4. Class polynomials modulo p against the linear supersingular part.
Verdict criterion4() {
  Verdict v;
  const auto t0 = Clock::now();
  int count = 0;
  for (std::uint32_t p = 5; p <= 199; ++p) {
    if (!is_prime(p)) continue;
    ++count;
    const std::string ps = std::to_string(p);
    const auto s = ss_polys(p);
    v.require(reduce_mod_p(fixed_point_poly(p), p) == s.S_l * s.S_l, "p = " + ps + " H_p = S_l^2 mod p");
    v.require(is_squarefree(s.S_l), "p = " + ps + " S_l squarefree");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 600, "runtime under 10 min");
  v.notes << "\n      " << count << " primes in " << secs << " s";
  return v;
}

// 5. Square divisor relation on random monomials.
Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::map<int, int> per_residue;
  int total = 0;
  while (total < 60) {
    const int i = static_cast<int>(rng() % 4), a = static_cast<int>(rng() % 6), b = static_cast<int>(rng() % 4);
    const int k = 12 * i + 4 * a + 6 * b;
    if (k == 0 || per_residue[k % 12] >= 10) continue;
    ++per_residue[k % 12];
    ++total;
    const int prec = m_of(2 * k) + 10;
    auto build = [&](auto field) {
      auto f = Series<decltype(field)>::constant(field, field.one(), prec, 0, 1);
      if (i) f = f * delta(field, prec).pow(static_cast<unsigned>(i));
      if (a) f = f * eisenstein(field, 4, prec).pow(static_cast<unsigned>(a));
      if (b) f = f * eisenstein(field, 6, prec).pow(static_cast<unsigned>(b));
      f.set_weight(k);
      return f;
    };
    const std::string name = "Delta^" + std::to_string(i) + " E4^" + std::to_string(a) + " E6^" + std::to_string(b);
    if (total % 2) {
      v.require(square_divisor_relation(build(RationalField{})).holds, name + " over Q");
    } else {
      v.require(square_divisor_relation(build(PrimeField(101))).holds, name + " mod 101");
    }
  }
  for (int r = 0; r < 12; r += 2) v.require(per_residue[r] == 10, "residue " + std::to_string(r) + " covered");
  const double secs = seconds_since(t0);
  v.require(secs < 60, "runtime under 1 min");
  v.notes << "\n      60 monomials, 10 per residue class, in " << secs << " s";
  return v;
}

// 6. Product form of G_p against the closed form.
Verdict criterion6() {
  Verdict v;
  const auto t0 = Clock::now();
  for (std::uint32_t p : {13u, 37u, 5u, 17u, 7u, 19u, 11u, 23u, 67u, 101u}) {
    for (int g = 2; g <= 50; ++g) {
      bool ok = true;
      try {
        gp_poly(g, p);
      } catch (const ClosedFormMismatch&) {
        ok = false;
      }
      v.require(ok, "p = " + std::to_string(p) + ", g = " + std::to_string(g));
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 1, "runtime under 1 s");
  v.notes << "\n      p mod 12 in {1, 5, 7, 11}, 2 <= g <= 50, in " << secs << " s";
  return v;
}

// 7. Integrality and leading term of the Wronskian.
Verdict criterion7() {
  Verdict v;
  int count = 0;
  for (const auto& o : main_scan()) {
    if (!o.report || !o.report->good_basis || o.report->g == 0) continue;
    const auto& r = *o.report;
    const std::string ps = std::to_string(o.p);
    ++count;
    GoodBasis b;
    b.p = r.p;
    b.g = r.g;
    b.g_p = r.g_p;
    b.pivots = r.pivots;
    b.forms = r.basis_forms;
    const auto wd = rational_wronskian(b);
    v.require(wd.p_integral, "p = " + ps + " W_p is p-integral");
    v.require(wd.leading_is_V, "p = " + ps + " leading coefficient is V at q^(sum c_i)");
    v.require(!wd.p_divides_V(), "p = " + ps + " p does not divide V");
    for (int c : r.pivots) v.require(c >= 1 && 6 * c <= static_cast<int>(o.p) + 1, "p = " + ps + " pivot in range");
  }
  v.notes << "\n      " << count << " bases";
  return v;
}

// 8. The cusp as a Weierstrass point.
Verdict criterion8() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<std::uint32_t> low_positive, high_zero, high;
  for (const auto& o : main_scan())
    if (o.report && o.report->wt_inf != 0) low_positive.push_back(o.p);
  Config cfg;
  const auto res = scan(390, 440, cfg);
  for (const auto& o : res.outcomes) {
    high.push_back(o.p);
    v.require(o.report.has_value(), "p = " + std::to_string(o.p) + " completed: " + o.error);
    if (o.report && o.report->wt_inf == 0) high_zero.push_back(o.p);
  }
  const double secs = seconds_since(t0);
  v.require(low_positive.empty(), "wt(inf) = 0 for every scanned p <= 389; positive at: " + list(low_positive));
  v.require(high_zero.empty(), "wt(inf) > 0 for every scanned p in (389, 440]; zero at: " + list(high_zero));
  v.require(secs < 30 * 60, "runtime under 30 min");
  v.notes << "\n      (389, 440]: " << list(high) << " all have wt(inf) > 0 ? " << (high_zero.empty() ? "yes" : "no")
          << "; " << secs << " s";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"p = 67 example reproduced exactly", criterion1},
      {"congruence for 67 <= p <= 199", criterion2},
      {"supersingular oracle, deg S_p, genus relation for 5 <= p <= 103", criterion3},
      {"H_p = S_l^2 mod p and S_l squarefree for 5 <= p <= 199", criterion4},
      {"square divisor relation on 60 random monomials", criterion5},
      {"G_p product form equals closed form", criterion6},
      {"Wronskian integrality and leading term", criterion7},
      {"wt(inf) zero up to 389 and positive in (389, 440]", criterion8},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::stoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);

  int failures = 0;
  for (int n : which) {
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    const auto& [name, run] = criteria[static_cast<std::size_t>(n - 1)];
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.notes << "\n      exception: " << e.what();
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << name << v.notes.str() << std::endl;
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
