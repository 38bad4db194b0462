#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wplus/classpoly.hpp"
#include "wplus/core/factor.hpp"
#include "wplus/level1.hpp"
#include "wplus/modsym.hpp"
#include "wplus/supersingular.hpp"

namespace wplus {

// ---------------------------------------------------------------------------
// Wronskian
// ---------------------------------------------------------------------------

namespace wdetail {

/// Column operations bringing the valuations into strictly increasing order.
/// Swaps flip `sign`; subtractions leave the determinant unchanged.
template <class F>
void echelonize(std::vector<Series<F>>& f, int& sign) {
  for (;;) {
    for (const auto& s : f)
      if (s.is_zero()) throw ZeroWronskian("forms are linearly dependent to the available precision");
    bool changed = false;
    for (std::size_t i = 1; i < f.size(); ++i) {
      for (std::size_t j = i; j > 0 && f[j].valuation() < f[j - 1].valuation(); --j) {
        std::swap(f[j], f[j - 1]);
        sign = -sign;
        changed = true;
      }
    }
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (f[i].valuation() == f[i - 1].valuation()) {
        const typename F::value_type c = f[i].leading() * F::inverse(f[i - 1].leading());
        f[i] -= c * f[i - 1];
        changed = true;
        break;
      }
    }
    if (!changed) return;
  }
}

}  // namespace wdetail

/// det[theta^i f_j]_{0 <= i, j < g}.
template <class F>
Series<F> theta_wronskian(std::vector<Series<F>> f) {
  if (f.empty()) throw InvalidArgument("Wronskian of no forms");
  int sign = 1;
  wdetail::echelonize(f, sign);
  const F field = f.front().field();
  const auto g = static_cast<unsigned>(f.size());
  int weight = 0;
  for (const auto& s : f) weight += s.weight();
  weight += static_cast<int>(g * (g - 1));
  if (g == 1) return (field.from_int(sign) * f.front()).set_weight(weight);
  std::vector<Series<F>> h;
  h.reserve(g - 1);
  for (std::size_t j = 1; j < f.size(); ++j) h.push_back(theta(f[j] / f.front()));
  Series<F> w = f.front().pow(g) * theta_wronskian(std::move(h));
  return (field.from_int(sign) * w).set_weight(weight).set_level(f.front().level());
}

/// prod_{j<k} (c_k - c_j).
inline Integer vandermonde(const std::vector<int>& c) {
  Integer v = 1;
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t k = j + 1; k < c.size(); ++k) v *= c[k] - c[j];
  return v;
}

struct WronskianData {
  std::uint32_t p = 0;
  int g = 0;
  QExpansion W_p;  ///< normalized: leading coefficient 1
  Integer V;
  int valuation = 0;
  bool leading_is_V = false;
  bool p_integral = false;

  bool p_divides_V() const { return mpz_divisible_ui_p(V.get_mpz_t(), p) != 0; }
};

/// Exact rational Wronskian of a good basis.
inline WronskianData rational_wronskian(const GoodBasis& basis) {
  WronskianData d;
  d.p = basis.p;
  d.g = basis.g;
  d.V = vandermonde(basis.pivots);
  QExpansion w = theta_wronskian(basis.forms);
  int sum_c = 0;
  for (int c : basis.pivots) sum_c += c;
  d.valuation = w.valuation();
  d.leading_is_V = w.valuation() == sum_c && w.leading() == Rat(d.V);
  d.W_p = Rat(1) / w.leading() * w;
  d.p_integral = is_p_integral(d.W_p, basis.p);
  return d;
}

// ---------------------------------------------------------------------------
// Lifts to level one
// ---------------------------------------------------------------------------

/// The cusp form b of weight p + 1 with b = f mod p, as a combination of the
/// reduced Miller basis; the residual must vanish through f's precision.
inline FpSeries lift_to_level1(const QExpansion& f, std::uint32_t p, const std::vector<FpSeries>& miller) {
  if (!is_p_integral(f, p)) throw NotPIntegral("form to lift is not " + std::to_string(p) + "-integral");
  const int k = static_cast<int>(p) + 1;
  const int d = m_of(k);
  if (miller.size() != static_cast<std::size_t>(d + 1)) throw InvalidArgument("Miller basis has the wrong size");
  if (f.precision() <= d) throw PrecisionTooSmall("need coefficients through q^" + std::to_string(d) + " to lift");
  const PrimeField fp(p);
  const FpSeries fr = reduce_mod_p(f, p);
  const int prec = miller.front().precision();
  FpSeries b = FpSeries::zero(fp, prec, k, 1);
  if (!fr.coeff(0).is_zero()) throw NoLift("form has a constant term");
  for (int n = 1; n <= d; ++n) {
    const Zp c = fr.coeff(n);
    if (!c.is_zero()) b += c * miller[static_cast<std::size_t>(n)];
  }
  b.set_weight(k).set_level(1);
  const int check = std::min(fr.precision(), prec);
  for (int n = 0; n < check; ++n)
    if (b.coeff(n) != fr.coeff(n))
      throw NoLift("lift disagrees with the form at q^" + std::to_string(n) + " mod " + std::to_string(p));
  return b;
}

// ---------------------------------------------------------------------------
// Elliptic exponents
// ---------------------------------------------------------------------------

struct ExtractionExponents {
  int eps_rho = 0;
  int eps_i = 0;
  long k_tilde = 0;
  int k_star = 0;
  int alpha_rho = 0;
  int alpha_i = 0;
  int delta_rho = 0;
  int delta_i = 0;
};

inline ExtractionExponents elliptic_exponents(std::uint32_t p, int g) {
  require_supported_prime(p);
  if (g < 2) throw InvalidArgument("elliptic exponents need g >= 2");
  ExtractionExponents e;
  const long gg = static_cast<long>(g) * g + g;
  e.k_tilde = gg * (static_cast<long>(p) + 1);
  e.k_star = static_cast<int>(e.k_tilde % 3);
  const long num_rho = gg * (1 + legendre(-3, p)) - e.k_star;
  const long num_i = gg * (1 + legendre(-1, p));
  if (num_rho % 3 != 0 || num_i % 4 != 0)
    throw ParityViolation("non-integral elliptic exponent for p = " + std::to_string(p) + ", g = " + std::to_string(g));
  e.eps_rho = static_cast<int>(num_rho / 3);
  e.eps_i = static_cast<int>(num_i / 4);
  e.alpha_rho = alpha_rho_of(p);
  e.alpha_i = alpha_i_of(p);
  const auto sf = square_factor(g * (g + static_cast<int>(p)));
  e.delta_rho = sf.x_exp;
  e.delta_i = sf.x1728_exp;
  return e;
}

// ---------------------------------------------------------------------------
// Verification report
// ---------------------------------------------------------------------------

struct VerificationReport {
  std::uint32_t p = 0;
  int g_p = 0;
  int g = 0;
  std::vector<int> pivots;
  int wt_inf = 0;
  bool good_basis = true;
  bool trivial = false;
  std::string split_operator;

  std::vector<QExpansion> basis_forms;
  QExpansion W_p;  ///< rational, normalized
  Integer V = 1;
  FpPoly W_divisor;       ///< F~(W, x) mod p
  FpPoly W2_divisor;      ///< F~(W^2, x) mod p
  FpPoly Wtilde_divisor;  ///< S~_p^{g^2-g} F~(W^2, x) G_p(x)
  FpPoly G_p;
  FpPoly H1;
  ExtractionExponents exps;

  SupersingularSplit split;
  FpPoly H_p_mod_p;
  int H_p_degree = 0;
  FpPoly F_p;
  FpPoly H;

  std::map<std::string, bool> checks;
  std::map<std::string, double> timings_ms;
  std::string failure;  ///< message of the falsifier, if one fired

  static const std::set<std::string>& informational() {
    static const std::set<std::string> s{"gcd_H_Sp_is_1", "gcd_H_Sq_is_1"};
    return s;
  }
  bool all_pass() const {
    if (!failure.empty()) return false;
    for (const auto& [name, ok] : checks)
      if (!ok && !informational().count(name)) return false;
    return true;
  }
};

struct PipelineOptions {
  int slack = 10;
  bool paranoid = false;
  std::uint32_t oracle_bound = 103;
  std::uint64_t seed = 0x5eed;
  /// Hilbert class polynomial source; defaults to class_poly.
  std::function<ZPoly(long)> hilbert;
};

namespace wdetail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto t = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t - t0_).count();
    t0_ = t;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace wdetail

/// Coefficients the good basis must carry for lifting and its consistency checks.
inline int basis_precision(std::uint32_t p, int slack) {
  return std::max(min_basis_precision(p), m_of(static_cast<int>(p) + 1) + 1 + slack);
}

/// q-precision of the lifts: W^2 at weight 2g(g+p) must be extractable.
inline int lift_precision(std::uint32_t p, int g, const std::vector<int>& pivots, int slack) {
  int sum_c = 0;
  for (int c : pivots) sum_c += c;
  return m_of(2 * g * (g + static_cast<int>(p))) + g + slack + 2 * sum_c + 4;
}

/// Fills the supersingular and fixed-point parts of the report.
inline void supersingular_checks(VerificationReport& r, const PipelineOptions& opt, wdetail::Stopwatch& sw) {
  const std::uint32_t p = r.p;
  r.split = ss_polys(p);
  r.checks["deg_Sp_is_gp_plus_1"] = r.split.degree() == r.g_p + 1;
  r.checks["genus_formula"] = 2 * r.g == r.g_p + 1 - r.split.S_l.degree();
  r.checks["linear_point_count"] = r.split.S_l == ss_linear_by_counting(p);
  if (p <= opt.oracle_bound) r.checks["deligne_oracle"] = r.split.S_p == ss_oracle(p, opt.oracle_bound);
  r.timings_ms["supersingular"] = sw.lap();
  const ZPoly hp = opt.hilbert ? fixed_point_poly(p, opt.hilbert) : fixed_point_poly(p);
  r.H_p_degree = hp.degree();
  r.H_p_mod_p = reduce_mod_p(hp, p);
  r.checks["fixedlinear"] = r.H_p_mod_p == r.split.S_l * r.split.S_l && is_squarefree(r.split.S_l);
  r.timings_ms["class_polynomials"] = sw.lap();
}

/// The full chain for one prime. Falsifiers are recorded in `failure`;
/// only genuine internal errors propagate.
inline VerificationReport extract_Fp(std::uint32_t p, const GoodBasis& basis, const PipelineOptions& opt = {}) {
  wdetail::Stopwatch sw;
  VerificationReport r;
  r.p = p;
  r.g_p = basis.g_p;
  r.g = basis.g;
  r.pivots = basis.pivots;
  r.wt_inf = wt_infinity(basis);
  r.good_basis = basis.is_good();
  r.split_operator = basis.split_operator;
  r.basis_forms = basis.forms;
  const PrimeField fp(p);
  r.F_p = FpPoly::one(fp);
  r.H = FpPoly::one(fp);

  try {
    supersingular_checks(r, opt, sw);
    if (basis.g < 2) {
      r.trivial = true;
      r.checks["degree_identity"] = r.F_p.degree() == 2 * (basis.g * basis.g * basis.g - basis.g - r.wt_inf);
      r.checks["gcd_H_Sp_is_1"] = true;
      r.checks["gcd_H_Sq_is_1"] = true;
      return r;
    }
    if (!r.good_basis) return r;

    const int g = basis.g;
    const int K = g * (g + static_cast<int>(p));
    const int gg_minus = g * g - g, gg_plus = g * g + g;

    // Rational Wronskian and its integrality.
    const WronskianData wd = rational_wronskian(basis);
    r.W_p = wd.W_p;
    r.V = wd.V;
    r.checks["pivots_in_sturm_range"] = basis.sturm_ok();
    r.checks["wronskian_leading_is_V"] = wd.leading_is_V;
    r.checks["p_not_divides_V"] = !wd.p_divides_V();
    r.checks["wronskian_p_integral"] = wd.p_integral;
    r.timings_ms["rational_wronskian"] = sw.lap();

    // Lifts to weight p + 1 and the mod-p Wronskian of weight K.
    const int N = lift_precision(p, g, basis.pivots, opt.slack);
    const auto miller = miller_basis(fp, static_cast<int>(p) + 1, N);
    std::vector<FpSeries> lifts;
    for (const auto& f : basis.forms) lifts.push_back(lift_to_level1(f, p, miller));
    r.timings_ms["lifts"] = sw.lap();
    FpSeries W = theta_wronskian(lifts);
    const Zp lead = W.leading();
    W = lead.inverse() * W;
    W.set_weight(K).set_level(1);
    r.checks["lift_leading_is_V"] = lead == fp.from_integer(wd.V);
    if (wd.p_integral) r.checks["wronskian_congruence"] = W.agrees_with(reduce_mod_p(wd.W_p, p));
    r.timings_ms["lift_wronskian"] = sw.lap();

    // Divisor polynomials.
    r.exps = elliptic_exponents(p, g);
    const auto& e = r.exps;
    r.W_divisor = divisor_polynomial(W);
    const FpPoly x = FpPoly::x(fp), x1728 = x_minus_1728(p);
    r.W2_divisor = x.pow(static_cast<unsigned>(e.delta_rho)) * x1728.pow(static_cast<unsigned>(e.delta_i)) *
                   r.W_divisor * r.W_divisor;
    if (opt.paranoid) r.checks["paranoid_square_divisor"] = divisor_polynomial(W * W) == r.W2_divisor;
    r.timings_ms["divisor_polynomials"] = sw.lap();

    const GpPoly G = gp_poly(g, p);
    r.G_p = G.poly;
    r.checks["gp_closed_form"] = true;
    r.checks["gp_divides_Sl_power"] = G.poly.divides(r.split.S_l.pow(static_cast<unsigned>(gg_plus)));
    r.Wtilde_divisor = r.split.S_tilde.pow(static_cast<unsigned>(gg_minus)) * r.W2_divisor * G.poly;

    const int a = G.x_exp + e.delta_rho - e.eps_rho;
    const int b = G.x1728_exp + e.delta_i - e.eps_i;
    r.checks["parity"] = a % 2 == 0 && b % 2 == 0;
    if (!r.checks["parity"])
      throw ParityViolation("exponents of x and x - 1728 in H1 are " + std::to_string(a) + ", " + std::to_string(b));

    // H1 and its square root.
    r.checks["exact_divisions"] = false;
    FpPoly h1 = G.poly * r.W2_divisor;
    h1 = exact_div(h1, x.pow(static_cast<unsigned>(e.eps_rho)) * x1728.pow(static_cast<unsigned>(e.eps_i)), "elliptic exponents");
    h1 = exact_div(h1, elliptic_factor(p, e.alpha_rho, e.alpha_i).pow(static_cast<unsigned>(gg_plus)), "elliptic part of S_l");
    h1 = exact_div(h1, r.split.S_tilde_l.pow(static_cast<unsigned>(2 * g)), "S~_l power");
    r.checks["exact_divisions"] = true;
    r.H1 = h1;
    r.checks["square_extraction"] = false;
    r.H = poly_sqrt(h1);
    r.checks["square_extraction"] = true;
    r.F_p = r.split.S_q.pow(static_cast<unsigned>(gg_minus)) * r.H * r.H;
    r.timings_ms["extraction"] = sw.lap();

    r.checks["degree_identity"] = r.F_p.degree() == 2 * (g * g * g - g - r.wt_inf);
    r.checks["wtilde_factorization"] =
        r.Wtilde_divisor == x.pow(static_cast<unsigned>(e.eps_rho)) * x1728.pow(static_cast<unsigned>(e.eps_i)) *
                                r.F_p * r.H_p_mod_p.pow(static_cast<unsigned>(gg_plus / 2));
    r.checks["gcd_H_Sp_is_1"] = gcd(r.H, r.split.S_p).degree() == 0;
    r.checks["gcd_H_Sq_is_1"] = gcd(r.H, r.split.S_q).degree() == 0;
  } catch (const InexactDivision& ex) {
    r.failure = ex.what();
  } catch (const OddMultiplicity& ex) {
    r.failure = ex.what();
  } catch (const ParityViolation& ex) {
    r.failure = ex.what();
  } catch (const ClosedFormMismatch& ex) {
    r.checks["gp_closed_form"] = false;
    r.failure = ex.what();
  } catch (const SplitDegreeMismatch& ex) {
    r.failure = ex.what();
  } catch (const NonPolynomialQuotient& ex) {
    r.failure = ex.what();
  }
  return r;
}

/// Good basis plus the whole chain.
inline VerificationReport verify_prime(std::uint32_t p, const PipelineOptions& opt = {}) {
  require_supported_prime(p);
  wdetail::Stopwatch sw;
  const GoodBasis basis = good_basis(p, basis_precision(p, opt.slack), nullptr, opt.seed);
  const double t = sw.lap();
  VerificationReport r = extract_Fp(p, basis, opt);
  r.timings_ms["good_basis"] = t;
  return r;
}

/// Coefficientwise comparison of the rational Wronskian (reduced mod p) with
/// the Wronskian of the lifts, through the shared precision.
inline bool cross_check_wronskian_congruence(std::uint32_t p, const GoodBasis& basis, const std::vector<FpSeries>& lifts) {
  const WronskianData wd = rational_wronskian(basis);
  if (!wd.p_integral || wd.p_divides_V()) return false;
  FpSeries W = theta_wronskian(lifts);
  W = W.leading().inverse() * W;
  return W.agrees_with(reduce_mod_p(wd.W_p, p));
}

}  // namespace wplus
