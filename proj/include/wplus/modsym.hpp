#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wplus/core/field.hpp"
#include "wplus/core/matrix.hpp"
#include "wplus/core/poly.hpp"
#include "wplus/core/series.hpp"
#include "wplus/core/zfactor.hpp"

// Weight-2 modular symbols for Gamma_0(p) in the Manin-symbol presentation,
// Hecke operators via Merel's matrices, the Atkin-Lehner involution, and the
// echelon basis of the w_p = +1 cusp forms.

namespace wplus {

using SparseVec = std::vector<std::pair<std::size_t, Rat>>;
using QVec = std::vector<Rat>;

// ---------------------------------------------------------------------------
// P^1(F_p)
// ---------------------------------------------------------------------------

/// Symbols (1:d) for d = 0..p-1 sit at index d; (0:1) sits at index p.
class P1 {
 public:
  explicit P1(std::uint32_t p) : p_(p), inv_(p, 0) {
    for (std::uint32_t a = 1; a < p; ++a) inv_[a] = static_cast<std::uint32_t>(powmod(a, p - 2, p));
  }

  std::uint32_t p() const { return p_; }
  std::size_t size() const { return p_ + 1; }

  std::uint32_t reduce(long long x) const {
    long long r = x % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  /// Index of (c:d), or npos when c = d = 0 mod p.
  std::size_t index(long long c, long long d) const {
    const std::uint32_t cc = reduce(c), dd = reduce(d);
    if (cc == 0) return dd == 0 ? npos : p_;
    return static_cast<std::size_t>(std::uint64_t(dd) * inv_[cc] % p_);
  }

  std::pair<std::uint32_t, std::uint32_t> symbol(std::size_t i) const {
    if (i == p_) return {0, 1};
    return {1, static_cast<std::uint32_t>(i)};
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inv_;
};

// ---------------------------------------------------------------------------
// The space
// ---------------------------------------------------------------------------

struct ModSymSpace {
  std::uint32_t p = 0;
  int sign = 1;
  std::size_t free_dim = 0;
  std::vector<SparseVec> sym_to_free;     ///< each Manin symbol in free coordinates
  std::vector<std::size_t> free_rep;      ///< a symbol representing each free generator
  QMatrix boundary;                       ///< free_dim x 2 (cusps infinity, 0)
  QMatrix cuspidal;                       ///< rows: RREF basis of the cuspidal subspace
  int g_p = 0;

  P1 p1() const { return P1(p); }
};

namespace msdetail {

struct SignedUnionFind {
  std::vector<std::size_t> parent;
  std::vector<int> sgn;  // x_i = sgn[i] * x_parent[i]
  std::vector<bool> zero;

  explicit SignedUnionFind(std::size_t n) : parent(n), sgn(n, 1), zero(n, false) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t i) {
    if (parent[i] == i) return {i, 1};
    auto [r, s] = find(parent[i]);
    parent[i] = r;
    sgn[i] *= s;
    return {r, sgn[i]};
  }

  // impose x_i = s * x_j
  void unite(std::size_t i, std::size_t j, int s) {
    auto [ri, si] = find(i);
    auto [rj, sj] = find(j);
    if (ri == rj) {
      if (si != s * sj) zero[ri] = true;
      return;
    }
    // x_ri = si * x_i = si * s * x_j = si * s * sj * x_rj
    parent[ri] = rj;
    sgn[ri] = si * s * sj;
    if (zero[ri]) zero[rj] = true;
  }
};

inline void add_to(QVec& out, const SparseVec& v, const Rat& scale) {
  for (const auto& [k, c] : v) out[k] += scale * c;
}

}  // namespace msdetail

/// Manin-symbol presentation for Gamma_0(p), weight 2. sign = +1 takes the quotient
/// by x = x*, sign = -1 by x = -x*, sign = 0 keeps the full space.
inline ModSymSpace build_space(std::uint32_t p, int sign = 1) {
  require_supported_prime(p);
  if (sign < -1 || sign > 1) throw InvalidArgument("sign must be -1, 0 or 1");
  const P1 P(p);
  const std::size_t n = P.size();
  msdetail::SignedUnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [c, d] = P.symbol(i);
    uf.unite(i, P.index(d, -static_cast<long long>(c)), -1);
    if (sign != 0) uf.unite(i, P.index(-static_cast<long long>(c), d), sign);
  }
  std::vector<long> col_of_root(n, -1);
  std::vector<std::size_t> root_of_col;
  for (std::size_t i = 0; i < n; ++i) {
    auto [r, s] = uf.find(i);
    if (uf.zero[r] || col_of_root[r] >= 0) continue;
    col_of_root[r] = static_cast<long>(root_of_col.size());
    root_of_col.push_back(r);
  }
  const std::size_t ncls = root_of_col.size();

  RationalField Q;
  QMatrix rel(Q, 0, ncls);
  for (std::size_t i = 0; i < n; ++i) {
    auto [c, d] = P.symbol(i);
    const long long cc = c, dd = d;
    const std::size_t terms[3] = {i, P.index(dd, -cc - dd), P.index(-cc - dd, cc)};
    QVec row(ncls, Rat(0));
    bool any = false;
    for (auto t : terms) {
      auto [r, s] = uf.find(t);
      if (uf.zero[r]) continue;
      row[static_cast<std::size_t>(col_of_root[r])] += s;
      any = true;
    }
    if (any) rel.append_row(row);
  }
  if (rel.cols() != ncls) rel = QMatrix(Q, 0, ncls);
  auto piv = rel.rref();

  std::vector<long> pivot_row(ncls, -1);
  for (std::size_t r = 0; r < piv.size(); ++r) pivot_row[piv[r]] = static_cast<long>(r);
  std::vector<long> free_index(ncls, -1);
  ModSymSpace S;
  S.p = p;
  S.sign = sign;
  for (std::size_t c = 0; c < ncls; ++c) {
    if (pivot_row[c] >= 0) continue;
    free_index[c] = static_cast<long>(S.free_dim++);
    S.free_rep.push_back(root_of_col[c]);
  }
  std::vector<SparseVec> class_vec(ncls);
  for (std::size_t c = 0; c < ncls; ++c) {
    if (pivot_row[c] < 0) {
      class_vec[c].emplace_back(static_cast<std::size_t>(free_index[c]), Rat(1));
      continue;
    }
    const auto r = static_cast<std::size_t>(pivot_row[c]);
    for (std::size_t f = 0; f < ncls; ++f)
      if (free_index[f] >= 0 && rel(r, f) != 0)
        class_vec[c].emplace_back(static_cast<std::size_t>(free_index[f]), -rel(r, f));
  }
  S.sym_to_free.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [r, s] = uf.find(i);
    if (uf.zero[r]) continue;
    for (const auto& [k, v] : class_vec[static_cast<std::size_t>(col_of_root[r])])
      S.sym_to_free[i].emplace_back(k, s * v);
  }

  S.boundary = QMatrix(Q, S.free_dim, 2);
  for (std::size_t k = 0; k < S.free_dim; ++k) {
    auto [c, d] = P.symbol(S.free_rep[k]);
    S.boundary(k, c == 0 ? 0 : 1) += 1;
    S.boundary(k, d == 0 ? 0 : 1) -= 1;
  }
  S.cuspidal = S.boundary.left_kernel();
  S.g_p = sign == 0 ? static_cast<int>(S.cuspidal.rows() / 2) : static_cast<int>(S.cuspidal.rows());
  return S;
}

/// Genus of X_0(p) from the Riemann-Hurwitz formula.
inline int genus_x0(std::uint32_t p) {
  const long nu2 = 1 + legendre(-1, p), nu3 = 1 + legendre(-3, p);
  Rat g = make_rat(static_cast<long>(p) + 1, 12) - make_rat(nu2, 4) - make_rat(nu3, 3);
  if (g.get_den() != 1) throw InternalError("non-integral genus");
  return static_cast<int>(g.get_num().get_si());
}

// ---------------------------------------------------------------------------
// Hecke operators
// ---------------------------------------------------------------------------

/// Merel's matrices [a b; c d] with ad - bc = n, a > b >= 0, d > c >= 0.
inline std::vector<std::array<long, 4>> merel_matrices(long n) {
  std::vector<std::array<long, 4>> out;
  for (long a = 1; a <= n; ++a)
    for (long b = 0; b < a; ++b)
      for (long c = 0; c * (a - b) < n; ++c) {
        const long num = n + b * c;
        if (num % a) continue;
        const long d = num / a;
        if (d > c) out.push_back({a, b, c, d});
      }
  return out;
}

/// T_n on the free module (rows are images of the free generators).
inline QMatrix hecke_free(const ModSymSpace& S, long n) {
  const P1 P(S.p);
  const auto mats = merel_matrices(n);
  QMatrix T(RationalField{}, S.free_dim, S.free_dim);
  for (std::size_t k = 0; k < S.free_dim; ++k) {
    auto [c, d] = P.symbol(S.free_rep[k]);
    QVec row(S.free_dim, Rat(0));
    for (const auto& m : mats) {
      const std::size_t j = P.index(static_cast<long long>(c) * m[0] + static_cast<long long>(d) * m[2],
                                    static_cast<long long>(c) * m[1] + static_cast<long long>(d) * m[3]);
      if (j == P1::npos) continue;
      for (const auto& [f, v] : S.sym_to_free[j]) row[f] += v;
    }
    for (std::size_t j = 0; j < S.free_dim; ++j) T(k, j) = row[j];
  }
  return T;
}

namespace msdetail {

// {0, u/v} as a sum of Manin symbols (continued fractions); v = 0 means infinity.
inline void add_zero_to(QVec& out, const ModSymSpace& S, const P1& P, Integer u, Integer v, int scale) {
  if (v < 0) {
    u = -u;
    v = -v;
  }
  // k = -1 term: {0, infinity} = (0:1)
  msdetail::add_to(out, S.sym_to_free[P.index(0, 1)], Rat(scale));
  if (v == 0) return;
  Integer pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  Integer a = u, b = v;
  int k = 0;
  while (true) {
    Integer quo;
    mpz_fdiv_q(quo.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer pk = quo * pm1 + pm2, qk = quo * qm1 + qm2;
    const Integer cc = (k % 2 == 0) ? Integer(-qk) : qk;  // (-1)^{k-1} q_k
    const long long cr = mpz_fdiv_ui(cc.get_mpz_t(), P.p());
    const long long dr = mpz_fdiv_ui(qm1.get_mpz_t(), P.p());
    const std::size_t idx = P.index(cr, dr);
    if (idx == P1::npos) throw InternalError("degenerate Manin symbol in continued fraction");
    msdetail::add_to(out, S.sym_to_free[idx], Rat(scale));
    Integer r = a - quo * b;
    pm2 = pm1;
    qm2 = qm1;
    pm1 = pk;
    qm1 = qk;
    if (r == 0) break;
    a = b;
    b = r;
    ++k;
  }
}

}  // namespace msdetail

/// The Atkin-Lehner involution w_p on the free module.
inline QMatrix atkin_lehner(const ModSymSpace& S) {
  const P1 P(S.p);
  const Integer pz = S.p;
  QMatrix W(RationalField{}, S.free_dim, S.free_dim);
  for (std::size_t k = 0; k < S.free_dim; ++k) {
    auto [c, d] = P.symbol(S.free_rep[k]);
    // lift [[a, b], [c, d]] in SL_2(Z); symbol = {b/d, a/c}
    Integer a, b, cc, dd;
    if (c == 0) {
      a = 1, b = 0, cc = 0, dd = 1;
    } else {
      a = 1, b = Integer(d) - 1, cc = 1, dd = d;
    }
    // w(u/v) = -v / (p u)
    QVec row(S.free_dim, Rat(0));
    msdetail::add_zero_to(row, S, P, -cc, pz * a, 1);
    msdetail::add_zero_to(row, S, P, -dd, pz * b, -1);
    for (std::size_t j = 0; j < S.free_dim; ++j) W(k, j) = row[j];
  }
  return W;
}

// ---------------------------------------------------------------------------
// Subspaces and restriction
// ---------------------------------------------------------------------------

/// A subspace given by RREF rows in free coordinates.
struct Subspace {
  QMatrix basis;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return basis.rows(); }

  static Subspace from_rows(QMatrix rows) {
    Subspace s;
    s.pivots = rows.rref();
    s.basis = std::move(rows);
    return s;
  }

  /// Coordinates of a vector known to lie in the subspace.
  QVec coordinates(const QVec& v) const {
    QVec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = v[pivots[i]];
    return out;
  }
};

/// Matrix of an operator T (acting on the right) restricted to an invariant subspace.
inline QMatrix restrict_to(const QMatrix& T, const Subspace& V) {
  QMatrix img = V.basis * T;
  QMatrix out(RationalField{}, V.dim(), V.dim());
  for (std::size_t i = 0; i < V.dim(); ++i)
    for (std::size_t j = 0; j < V.dim(); ++j) out(i, j) = img(i, V.pivots[j]);
  // invariance check: img rows must be reproduced by their pivot coordinates
  QMatrix back = out * V.basis;
  if (!(back == img)) throw InternalError("operator does not preserve the subspace");
  return out;
}

/// The w_p = +1 part of the cuspidal subspace.
inline Subspace atkin_lehner_plus(const ModSymSpace& S, const QMatrix& W) {
  QMatrix wm1 = W - QMatrix::identity(RationalField{}, S.free_dim);
  QMatrix cw = S.cuspidal * wm1;
  QMatrix coeffs = cw.left_kernel();
  if (coeffs.rows() == 0) return Subspace::from_rows(QMatrix(RationalField{}, 0, S.free_dim));
  return Subspace::from_rows(coeffs * S.cuspidal);
}

inline Subspace atkin_lehner_plus(const ModSymSpace& S) { return atkin_lehner_plus(S, atkin_lehner(S)); }

/// Hecke operators restricted to a subspace, cached per prime.
class SubspaceHecke {
 public:
  SubspaceHecke(std::shared_ptr<const ModSymSpace> S, Subspace V) : S_(std::move(S)), V_(std::move(V)) {}
  SubspaceHecke(const ModSymSpace& S, Subspace V)
      : S_(std::make_shared<const ModSymSpace>(S)), V_(std::move(V)) {}

  const Subspace& subspace() const { return V_; }
  std::size_t dim() const { return V_.dim(); }

  const QMatrix& prime(std::uint32_t l) {
    auto it = cache_.find(l);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(l, restrict_to(hecke_free(*S_, l), V_)).first->second;
  }

  /// v T_n for v in subspace coordinates.
  QVec apply(const QVec& v, std::uint32_t n) {
    if (n == 0) throw InvalidArgument("T_0 is undefined");
    QVec u = v;
    std::uint32_t m = n;
    for (std::uint32_t l = 2; m > 1; ++l) {
      if (l * l > m) l = m;
      if (m % l) continue;
      int e = 0;
      while (m % l == 0) m /= l, ++e;
      u = apply_prime_power(u, l, e);
    }
    return u;
  }

 private:
  QVec apply_prime_power(const QVec& u, std::uint32_t l, int e) {
    const QMatrix& T = prime(l);
    QVec prev2, prev1 = u;
    for (int i = 1; i <= e; ++i) {
      QVec next = T.apply_left(prev1);
      if (i >= 2 && l != S_->p)
        for (std::size_t j = 0; j < next.size(); ++j) next[j] -= Rat(l) * prev2[j];
      prev2 = std::move(prev1);
      prev1 = std::move(next);
    }
    return prev1;
  }

  std::shared_ptr<const ModSymSpace> S_;
  Subspace V_;
  std::map<std::uint32_t, QMatrix> cache_;
};

// ---------------------------------------------------------------------------
// Integral characteristic polynomials and the Hasse bound
// ---------------------------------------------------------------------------

inline ZPoly to_integer_poly(const QPoly& f) {
  std::vector<Integer> c;
  for (const auto& a : f.coeffs()) {
    if (a.get_den() != 1) throw InternalError("characteristic polynomial is not integral: " + f.to_string());
    c.push_back(a.get_num());
  }
  return ZPoly(IntegerRing{}, std::move(c));
}

inline QPoly to_rational_poly(const ZPoly& f) {
  std::vector<Rat> c;
  for (const auto& a : f.coeffs()) c.emplace_back(a);
  return QPoly(RationalField{}, std::move(c));
}

/// Number of distinct real roots of f in (lo, hi], by Sturm's theorem.
inline int sturm_count(const QPoly& f, const Rat& lo, const Rat& hi) {
  std::vector<QPoly> seq{f, f.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](const Rat& x) {
    int n = 0, last = 0;
    for (const auto& g : seq) {
      Rat v = g.eval(x);
      int s = sgn(v);
      if (s == 0) continue;
      if (last != 0 && s != last) ++n;
      last = s;
    }
    return n;
  };
  return changes(lo) - changes(hi);
}

/// All eigenvalues of a (self-adjoint) Hecke matrix are real and lie in [-2 sqrt(l), 2 sqrt(l)].
inline bool hasse_bound_holds(const QMatrix& Tl, std::uint32_t l) {
  if (Tl.rows() == 0) return true;
  QPoly f = charpoly(Tl);
  QPoly sqf = f / gcd(f, f.derivative());
  // rational upper bound for 2 sqrt(l), slightly generous
  const long scale = 1000000;
  const Rat bound = make_rat(static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(l)) * scale)) + 1, scale);
  return sturm_count(sqf, -bound, bound) == sqf.degree();
}

// ---------------------------------------------------------------------------
// Good basis
// ---------------------------------------------------------------------------

struct GaloisBlock {
  ZPoly minpoly;
  int dim = 0;
};

struct GoodBasis {
  std::uint32_t p = 0;
  int g = 0;
  int g_p = 0;
  int precision = 0;
  std::vector<QExpansion> forms;
  std::vector<int> pivots;
  bool p_integral = true;
  std::vector<GaloisBlock> galois_blocks;
  std::string split_operator;

  bool is_good() const { return p_integral; }

  /// Pivot exponents within the Sturm range [1, (p+1)/6].
  bool sturm_ok() const {
    for (int c : pivots)
      if (c < 1 || 6L * c > static_cast<long>(p) + 1) return false;
    return true;
  }
};

/// sum_j (c_j - j): zero exactly when the pivots are 1, 2, ..., g.
inline int wt_infinity(const std::vector<int>& pivots) {
  int w = 0;
  for (std::size_t j = 0; j < pivots.size(); ++j) w += pivots[j] - static_cast<int>(j + 1);
  return w;
}
inline int wt_infinity(const GoodBasis& b) { return wt_infinity(b.pivots); }

/// Minimum q-precision for which the pivots are guaranteed visible.
inline int min_basis_precision(std::uint32_t p) { return static_cast<int>((p + 1) / 6) + 2; }

struct PlusData {
  std::shared_ptr<const ModSymSpace> space;
  QMatrix w;
  std::shared_ptr<SubspaceHecke> hecke;
};

inline PlusData plus_data(std::uint32_t p) {
  PlusData d;
  auto space = std::make_shared<const ModSymSpace>(build_space(p, 1));
  d.w = atkin_lehner(*space);
  d.hecke = std::make_shared<SubspaceHecke>(space, atkin_lehner_plus(*space, d.w));
  d.space = std::move(space);
  return d;
}

namespace msdetail {

inline std::vector<std::uint32_t> small_primes_except(std::uint32_t p, std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t l = 2; out.size() < count; ++l)
    if (is_prime(l) && l != p) out.push_back(l);
  return out;
}

// Linear combinations of T_l used to separate Galois blocks, in schedule order.
inline std::vector<std::vector<std::pair<std::uint32_t, long>>> split_schedule(std::uint32_t p) {
  const auto L = small_primes_except(p, 4);
  const auto a = L[0], b = L[1], c = L[2], d = L[3];
  return {{{a, 1}},
          {{b, 1}},
          {{a, 1}, {b, 1}},
          {{a, 1}, {b, -1}},
          {{a, 1}, {b, 2}},
          {{c, 1}},
          {{a, 1}, {c, 1}},
          {{b, 1}, {c, 1}},
          {{a, 1}, {b, 1}, {c, 1}},
          {{a, 1}, {b, 2}, {c, 3}},
          {{d, 1}},
          {{a, 1}, {b, 2}, {c, 3}, {d, 5}},
          {{a, 3}, {b, -2}, {c, 1}, {d, 7}}};
}

inline std::string schedule_name(const std::vector<std::pair<std::uint32_t, long>>& combo) {
  std::string s;
  for (const auto& [l, c] : combo) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const long a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a);
    s += "T" + std::to_string(l);
  }
  return s;
}

}  // namespace msdetail

/// The echelon basis of S_2^+(p) with coefficients q^1..q^{prec-1}.
inline GoodBasis good_basis(std::uint32_t p, int prec, PlusData* reuse = nullptr, std::uint64_t seed = 0x5eed) {
  require_supported_prime(p);
  if (prec < min_basis_precision(p))
    throw PrecisionTooSmall("good basis for p = " + std::to_string(p) + " needs precision >= " +
                            std::to_string(min_basis_precision(p)));
  PlusData local;
  PlusData& D = reuse ? *reuse : (local = plus_data(p));
  SubspaceHecke& H = *D.hecke;
  RationalField Q;
  GoodBasis out;
  out.p = p;
  out.g_p = D.space->g_p;
  out.g = static_cast<int>(H.dim());
  out.precision = prec;
  const std::size_t g = H.dim();
  if (g == 0) return out;

  // Choose an operator with squarefree characteristic polynomial.
  QMatrix A;
  ZPoly cp;
  bool found = false;
  for (const auto& combo : msdetail::split_schedule(p)) {
    QMatrix M(Q, g, g);
    for (const auto& [l, c] : combo) M = M + Rat(c) * H.prime(l);
    QPoly f = charpoly(M);
    if (gcd(f, f.derivative()).degree() > 0) continue;
    A = M;
    cp = to_integer_poly(f);
    out.split_operator = msdetail::schedule_name(combo);
    found = true;
    break;
  }
  if (!found) throw InternalError("no operator in the schedule separates the Hecke blocks");

  QMatrix rows(Q, 0, static_cast<std::size_t>(prec - 1));
  for (const auto& phi : factor_over_q(cp, seed)) {
    Subspace block = Subspace::from_rows(evaluate(to_rational_poly(phi), A).left_kernel());
    const std::size_t d = block.dim();
    if (static_cast<int>(d) != phi.degree()) throw InternalError("block dimension differs from factor degree");
    out.galois_blocks.push_back({phi, static_cast<int>(d)});
    bool ok = false;
    for (std::size_t attempt = 0; attempt < d && !ok; ++attempt) {
      QVec v = block.basis.row(attempt);
      QMatrix local_rows(Q, d, static_cast<std::size_t>(prec - 1));
      for (int n = 1; n < prec; ++n) {
        QVec c = block.coordinates(H.apply(v, static_cast<std::uint32_t>(n)));
        for (std::size_t j = 0; j < d; ++j) local_rows(j, static_cast<std::size_t>(n - 1)) = c[j];
      }
      if (local_rows.rank() == d) {
        for (std::size_t j = 0; j < d; ++j) rows.append_row(local_rows.row(j));
        ok = true;
      }
    }
    if (!ok) throw PrecisionTooSmall("block forms are dependent at precision " + std::to_string(prec));
  }
  auto piv = rows.rref();
  if (piv.size() != g) throw PrecisionTooSmall("basis forms are dependent at precision " + std::to_string(prec));
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<Rat> c(static_cast<std::size_t>(prec), Rat(0));
    for (int n = 1; n < prec; ++n) c[static_cast<std::size_t>(n)] = rows(i, static_cast<std::size_t>(n - 1));
    out.forms.emplace_back(Q, 0, std::move(c), prec, 2, static_cast<int>(p));
    out.pivots.push_back(static_cast<int>(piv[i]) + 1);
    if (!is_p_integral(out.forms.back(), p)) out.p_integral = false;
  }
  return out;
}

}  // namespace wplus
