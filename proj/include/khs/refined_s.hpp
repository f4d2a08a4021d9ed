#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khs/complex.hpp"
#include "khs/filtered_reduce.hpp"
#include "khs/link.hpp"
#include "khs/linalg.hpp"
#include "khs/reduction.hpp"
#include "khs/steenrod.hpp"

namespace khs {

enum class ThetaKind { Zero, Sq1 };

inline std::string to_string(ThetaKind k) { return k == ThetaKind::Zero ? "zero" : "sq1"; }

inline ThetaKind parse_theta(const std::string& s) {
  if (s == "zero" || s == "0") return ThetaKind::Zero;
  if (s == "sq1" || s == "Sq1") return ThetaKind::Sq1;
  throw std::invalid_argument("unknown theta '" + s + "' (expected zero or sq1)");
}

/// A stable operation Kh^{-m,q} -> Kh^{0,q} over a ground field.
struct ThetaOperation {
  ThetaKind kind = ThetaKind::Zero;
  RingKind field = RingKind::F2;

  int degree() const { return kind == ThetaKind::Sq1 ? 1 : 0; }

  void validate() const {
    if (field == RingKind::Integers) throw std::invalid_argument("theta: ground field must be F2 or Q");
    if (kind == ThetaKind::Sq1 && field != RingKind::F2) throw std::invalid_argument("theta: Sq1 requires characteristic 2");
  }
  static ThetaOperation zero(RingKind f) { return {ThetaKind::Zero, f}; }
  static ThetaOperation sq1() { return {ThetaKind::Sq1, RingKind::F2}; }
};

enum class Fullness { Not, HalfFull, Full };

inline std::string to_string(Fullness f) {
  switch (f) {
    case Fullness::Not: return "not";
    case Fullness::HalfFull: return "half_full";
    case Fullness::Full: return "full";
  }
  return "?";
}

inline Fullness fullness_of_dim(int d) { return d >= 2 ? Fullness::Full : d == 1 ? Fullness::HalfFull : Fullness::Not; }

/// Sparse chain keyed by generator id.
using IdChain = std::map<int, mpq_class>;

/// Witness that alpha [s_o] + beta [s_obar] lies in im(j) (or in V^q when
/// theta_constrained): x is a degree-0 cycle supported at levels >= q with
/// x - alpha s_o - beta s_obar = d(v); when constrained, y is a level-q cycle
/// of degree -m and x_q - theta(y) = d_q(w) on the graded piece.
struct FullnessCertificate {
  std::string role;  // which claim it supports, e.g. "s_plus"
  int q = 0;
  bool theta_constrained = false;
  ThetaKind theta = ThetaKind::Zero;
  mpq_class alpha, beta;
  IdChain x, v, y, w;
};

struct FullnessReport {
  int q = 0;
  int plain_dim = 0;  // dim im(j) ∩ W
  int theta_dim = 0;  // dim V^q
  Fullness plain = Fullness::Not;
  Fullness refined = Fullness::Not;
  std::vector<FullnessCertificate> certificates;
};

struct LevelScan {
  int q;
  int plain_dim;
  int theta_dim;
};

struct RefinedSResult {
  std::string link;
  int components = 0;
  RingKind field = RingKind::F2;
  ThetaKind theta = ThetaKind::Zero;
  int s = 1;
  int r_plus = 1;
  int s_plus = 1;
  std::vector<FullnessCertificate> certificates;
  std::vector<LevelScan> sweep;  // filled only with a full sweep
};

struct RefinedOptions {
  ThetaOperation theta = ThetaOperation::sq1();
  bool full_sweep = false;
  bool certificates = true;
};

/// Degree-0 bookkeeping for one diagram over one field: the Lee (Q) or
/// Bar-Natan (F2) complex, the two canonical cycles, and for Sq1 the
/// integral Khovanov complex on the same generator ids.
template <Field K>
class RefinedEngine {
 public:
  RefinedEngine(const LinkComplexes& lc, ThetaOperation theta) : theta_(theta), kz_(lc.khovanov) {
    theta_.validate();
    if (lc.diagram.empty()) throw std::invalid_argument("RefinedEngine: empty link");
    components_ = lc.diagram.component_count();
    if constexpr (ScalarTraits<K>::ring == RingKind::F2) {
      if (theta.field != RingKind::F2) throw std::invalid_argument("RefinedEngine: field mismatch");
      c_ = lc.bar_natan;
      so_ = lc.bn_so;
      sob_ = lc.bn_sob;
    } else {
      if (theta.field != RingKind::Rationals) throw std::invalid_argument("RefinedEngine: field mismatch");
      c_ = convert_complex<mpq_class>(lc.lee);
      so_ = convert<mpq_class>(lc.lee_so);
      sob_ = convert<mpq_class>(lc.lee_sob);
    }
  }

  const FilteredComplex<K>& complex() const { return c_; }
  const Vec<K>& so() const { return so_; }
  const Vec<K>& sob() const { return sob_; }
  int components() const { return components_; }
  const ThetaOperation& theta() const { return theta_; }

  /// Levels to sweep: parity of the component count, from below the lowest
  /// degree-0 level to above the highest.
  std::vector<int> sweep_levels() const {
    const auto& lv = c_.levels(0);
    if (lv.empty()) throw std::logic_error("RefinedEngine: no degree-0 generators");
    int lo = *std::min_element(lv.begin(), lv.end());
    int hi = *std::max_element(lv.begin(), lv.end());
    auto fix = [&](int q) { return ((q - components_) % 2 == 0) ? q : q - 1; };
    std::vector<int> out;
    for (int q = fix(lo) - 2; q <= fix(hi) + 4; q += 2) out.push_back(q);
    return out;
  }

  void check_parity(int q) const {
    if (((q - components_) % 2 + 2) % 2 != 0)
      throw std::invalid_argument("fullness: q = " + std::to_string(q) + " has the wrong parity for " +
                                  std::to_string(components_) + " component(s)");
  }

  /// dim im(j) ∩ W at level q.
  int plain_dim(int q) const { return projected_dim(build(q, false)); }
  /// dim V^q = dim j(p^{-1}(im theta)) ∩ W at level q.
  int theta_dim(int q) const { return projected_dim(build(q, true)); }

  /// A witness with j(x) = alpha [s_o] + beta [s_obar], or nullopt.
  std::optional<FullnessCertificate> witness(int q, bool constrained, const K& alpha, const K& beta,
                                             const std::string& role) const {
    System sys = build(q, constrained);
    const int n = sys.m.cols();
    SparseMatrix<K> rest(sys.m.rows(), n - 2);
    for (int j = 2; j < n; ++j) rest.set_column(j - 2, sys.m.column_vec(j));
    Vec<K> rhs = sys.m.column_vec(0);
    rhs.scale(-alpha);
    rhs.axpy(-beta, sys.m.column_vec(1));
    auto sol = solve(rest, rhs);
    if (!sol) return std::nullopt;
    Vec<K> z(n);
    z.set(0, alpha);
    z.set(1, beta);
    sol->for_each([&](int i, const K& x) { z.set(i + 2, x); });
    return certificate(sys, z, role);
  }

  /// Witnesses spanning the projected solution space at q.
  std::vector<FullnessCertificate> spanning_witnesses(int q, bool constrained, const std::string& role) const {
    System sys = build(q, constrained);
    std::vector<FullnessCertificate> out;
    Eliminator<K> e(2);
    for (const auto& z : kernel(sys.m)) {
      Vec<K> ab(2);
      ab.set(0, z.get(0));
      ab.set(1, z.get(1));
      if (ab.is_zero() || !e.insert(ab)) continue;
      out.push_back(certificate(sys, z, role));
    }
    return out;
  }

  /// Independent re-check of a certificate from the complexes alone.
  bool validate(const FullnessCertificate& cert, std::string* why = nullptr) const {
    auto fail = [&](const std::string& m) {
      if (why) *why = m;
      return false;
    };
    const K alpha = ScalarTraits<K>::from_rational(cert.alpha);
    const K beta = ScalarTraits<K>::from_rational(cert.beta);
    auto x = to_vec(0, cert.x);
    auto v = to_vec(-1, cert.v);
    if (!x || !v) return fail("chain on an unknown generator");
    if (c_.dim(1) > 0 && !c_.differential(0).apply(*x).is_zero()) return fail("x is not a cycle");
    bool low = false;
    x->for_each([&](int i, const K&) { low |= c_.level(0, i) < cert.q; });
    if (low) return fail("x has support below the level");
    Vec<K> diff = *x;
    diff.axpy(-alpha, so_);
    diff.axpy(-beta, sob_);
    if (c_.dim(-1) > 0) diff.axpy(K(-1), c_.differential(-1).apply(*v));
    else if (!v->is_zero()) return fail("v in an empty degree");
    if (!diff.is_zero()) return fail("x - alpha s_o - beta s_obar is not d(v)");
    if (!cert.theta_constrained) return true;

    auto w = to_vec(-1, cert.w);
    auto y = to_vec(-1, cert.y);
    if (!w || !y) return fail("chain on an unknown generator");
    bool off = false;
    w->for_each([&](int i, const K&) { off |= c_.level(-1, i) != cert.q; });
    y->for_each([&](int i, const K&) { off |= c_.level(-1, i) != cert.q; });
    if (off) return fail("y or w not in the graded piece");
    Vec<K> target = level_part(*x, cert.q);
    if (c_.dim(-1) > 0) target.axpy(K(-1), level_part(c_.differential(-1).apply(*w), cert.q));
    if (cert.theta == ThetaKind::Sq1) {
      if constexpr (ScalarTraits<K>::ring == RingKind::F2) {
        if (c_.dim(-1) > 0 && !level_part(c_.differential(-1).apply(*y), cert.q).is_zero())
          return fail("y is not a cycle of the graded piece");
        target.axpy(K(-1), bockstein_in_c(*y));
      } else {
        return fail("Sq1 certificate over characteristic 0");
      }
    } else if (!y->is_zero()) {
      return fail("y present for theta = zero");
    }
    if (!target.is_zero()) return fail("p(x) - theta(y) is not a boundary of the graded piece");
    return true;
  }

 private:
  struct System {
    int q = 0;
    bool constrained = false;
    SparseMatrix<K> m;  // columns: s_o, s_obar, d(e_k), -theta_j, -d_q(e'_l)
    int nv = 0;
    std::vector<Vec<K>> theta_sources;  // degree -1 chains (C coordinates)
    std::vector<int> w_gens;            // degree -1 indices at level q
  };

  System build(int q, bool constrained) const {
    check_parity(q);
    System sys;
    sys.q = q;
    sys.constrained = constrained;
    const int n0 = c_.dim(0);
    const int nm = c_.dim(-1);
    std::vector<int> row(n0, -1);
    int rows = 0;
    for (int i = 0; i < n0; ++i) {
      const int l = c_.level(0, i);
      if (l < q || (constrained && l == q)) row[i] = rows++;
    }
    auto restrict_rows = [&](const Vec<K>& v) {
      Vec<K> out(rows);
      v.for_each([&](int i, const K& x) {
        if (row[i] >= 0) out.set(row[i], x);
      });
      return out;
    };
    std::vector<Vec<K>> cols;
    cols.push_back(restrict_rows(so_));
    cols.push_back(restrict_rows(sob_));
    if (nm > 0) {
      const auto& d = c_.differential(-1);
      for (int k = 0; k < nm; ++k) cols.push_back(restrict_rows(d.column_vec(k)));
    }
    sys.nv = nm;
    if (constrained) {
      std::vector<Vec<K>> images;
      theta_chains(q, images, sys.theta_sources);
      for (auto& t : images) {
        Vec<K> c = restrict_rows(level_part(t, q));
        c.scale(K(-1));
        cols.push_back(std::move(c));
      }
      if (nm > 0) {
        const auto& d = c_.differential(-1);
        for (int k = 0; k < nm; ++k) {
          if (c_.level(-1, k) != q) continue;
          sys.w_gens.push_back(k);
          Vec<K> c = restrict_rows(level_part(d.column_vec(k), q));
          c.scale(K(-1));
          cols.push_back(std::move(c));
        }
      }
    }
    sys.m = SparseMatrix<K>(rows, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) sys.m.set_column(static_cast<int>(j), cols[j]);
    return sys;
  }

  static int projected_dim(const System& sys) {
    Eliminator<K> e(2);
    for (const auto& z : kernel(sys.m)) {
      Vec<K> ab(2);
      ab.set(0, z.get(0));
      ab.set(1, z.get(1));
      e.insert(ab);
      if (e.rank() == 2) break;
    }
    return e.rank();
  }

  Vec<K> level_part(const Vec<K>& v, int q) const {
    Vec<K> out(v.dim());
    v.for_each([&](int i, const K& x) {
      if (c_.level(0, i) == q) out.set(i, x);
    });
    return out;
  }

  /// Images theta(y_i) (degree 0) and the sources y_i (degree -1) for a
  /// spanning set of Kh^{-m,q}; empty for theta = zero.
  void theta_chains(int q, std::vector<Vec<K>>& images, std::vector<Vec<K>>& sources) const {
    if (theta_.kind == ThetaKind::Zero) return;
    if constexpr (ScalarTraits<K>::ring == RingKind::F2) {
      BocksteinMap m = sq1(kz_, 0, q);
      for (std::size_t r = 0; r < m.source_reps.size(); ++r) {
        Vec<F2> img(c_.dim(0));
        m.image_chains[r].for_each([&](int i, F2 x) { img.set(index_in_c(0, m.target_parent_index[i]), x); });
        Vec<F2> src(c_.dim(-1));
        m.source_reps[r].for_each([&](int i, F2 x) { src.set(index_in_c(-1, m.source_parent_index[i]), x); });
        images.push_back(std::move(img));
        sources.push_back(std::move(src));
      }
    } else {
      throw std::logic_error("theta_chains: Sq1 over characteristic 0");
    }
  }

  int index_in_c(int h, int kz_index) const {
    const int id = kz_.ids(h)[kz_index];
    const int i = c_.index_of(h, id);
    if (i < 0) throw std::logic_error("RefinedEngine: Khovanov and deformed complexes disagree on generators");
    return i;
  }

  Vec<K> bockstein_in_c(const Vec<K>& y) const {
    if constexpr (ScalarTraits<K>::ring == RingKind::F2) {
      Vec<F2> yk(kz_.dim(-1));
      y.for_each([&](int i, F2 x) {
        const int k = kz_.index_of(-1, c_.ids(-1)[i]);
        if (k < 0) throw std::logic_error("RefinedEngine: generator missing from the Khovanov complex");
        yk.set(k, x);
      });
      Vec<F2> z = bockstein_chain(kz_.differential(-1), yk);
      Vec<F2> out(c_.dim(0));
      z.for_each([&](int i, F2 x) { out.set(index_in_c(0, i), x); });
      return out;
    } else {
      return Vec<K>(c_.dim(0));
    }
  }

  IdChain to_ids(int h, const Vec<K>& v) const {
    IdChain out;
    v.for_each([&](int i, const K& x) { out.emplace(c_.ids(h)[i], ScalarTraits<K>::to_rational(x)); });
    return out;
  }

  std::optional<Vec<K>> to_vec(int h, const IdChain& ch) const {
    Vec<K> v(c_.dim(h));
    for (const auto& [id, x] : ch) {
      const int i = c_.index_of(h, id);
      if (i < 0) return std::nullopt;
      v.set(i, ScalarTraits<K>::from_rational(x));
    }
    return v;
  }

  FullnessCertificate certificate(const System& sys, const Vec<K>& z, const std::string& role) const {
    FullnessCertificate cert;
    cert.role = role;
    cert.q = sys.q;
    cert.theta_constrained = sys.constrained;
    cert.theta = theta_.kind;
    const K alpha = z.get(0);
    const K beta = z.get(1);
    cert.alpha = ScalarTraits<K>::to_rational(alpha);
    cert.beta = ScalarTraits<K>::to_rational(beta);
    Vec<K> v(c_.dim(-1));
    for (int k = 0; k < sys.nv; ++k) v.set(k, z.get(2 + k));
    Vec<K> x = so_;
    x.scale(alpha);
    x.axpy(beta, sob_);
    if (sys.nv > 0) x.axpy(K(1), c_.differential(-1).apply(v));
    cert.x = to_ids(0, x);
    cert.v = to_ids(-1, v);
    if (sys.constrained) {
      const int nt = static_cast<int>(sys.theta_sources.size());
      Vec<K> y(c_.dim(-1));
      for (int t = 0; t < nt; ++t) y.axpy(z.get(2 + sys.nv + t), sys.theta_sources[t]);
      Vec<K> w(c_.dim(-1));
      for (std::size_t l = 0; l < sys.w_gens.size(); ++l) w.set(sys.w_gens[l], z.get(2 + sys.nv + nt + static_cast<int>(l)));
      cert.y = to_ids(-1, y);
      cert.w = to_ids(-1, w);
    }
    return cert;
  }

  ThetaOperation theta_;
  FilteredComplex<mpz_class> kz_;
  FilteredComplex<K> c_;
  Vec<K> so_, sob_;
  int components_ = 0;
};

/// dim V^q (or dim im(j) ∩ W when unconstrained) computed in homology
/// coordinates from the maps j and p of sublevel_homology; the chain-level
/// engine is checked against this.
template <Field K>
int homological_fullness_dim(const FilteredComplex<K>& c, const Vec<K>& so, const Vec<K>& sob, int q,
                             const std::vector<Vec<K>>& theta_images, bool constrained) {
  SublevelHomology<K> sh = sublevel_homology(c, q, 0);
  std::vector<Vec<K>> js;  // spanning set of j(S)
  if (!constrained) {
    for (int r = 0; r < sh.dim(); ++r) js.push_back(sh.j.column_vec(r));
  } else {
    const int g = sh.graded.dim();
    const int nt = static_cast<int>(theta_images.size());
    SparseMatrix<K> pt(g, sh.dim() + nt);
    for (int r = 0; r < sh.dim(); ++r) pt.set_column(r, sh.p.column_vec(r));
    for (int t = 0; t < nt; ++t) {
      auto co = sh.graded.coordinates(sh.graded_piece.project(0, theta_images[t]));
      if (!co) throw std::logic_error("homological_fullness_dim: theta image is not a graded cycle");
      pt.set_column(sh.dim() + t, *co);
    }
    for (const auto& z : kernel(pt)) js.push_back(sh.j.apply(slice(z, 0, sh.dim())));
  }
  const int n = sh.full.dim();
  auto wso = sh.full.coordinates(so);
  auto wsob = sh.full.coordinates(sob);
  if (!wso || !wsob) throw std::logic_error("homological_fullness_dim: canonical chain is not a cycle");
  Eliminator<K> ej(n), ejw(n), ew(n);
  for (auto v : js) {
    Vec<K> a = v, b = v;
    ej.insert(a);
    ejw.insert(b);
  }
  for (const auto* w : {&*wso, &*wsob}) {
    Vec<K> a = *w, b = *w;
    ew.insert(a);
    ejw.insert(b);
  }
  return ej.rank() + ew.rank() - ejw.rank();
}

/// Coordinates of [s_o], [s_obar] in degree-0 deformed homology; throws unless
/// they span a 2-dimensional subspace.
template <Field K>
struct WSubspace {
  int homology_dim = 0;
  Vec<K> so, sob;
};

template <Field K>
WSubspace<K> subspace_W(const RefinedEngine<K>& e) {
  HomologyBasis<K> hb = homology_at(e.complex(), 0);
  auto a = hb.coordinates(e.so());
  auto b = hb.coordinates(e.sob());
  if (!a || !b) throw std::logic_error("subspace_W: canonical chain is not a cycle");
  Eliminator<K> el(hb.dim());
  Vec<K> x = *a, y = *b;
  el.insert(x);
  el.insert(y);
  if (el.rank() != 2) throw std::logic_error("subspace_W: canonical classes are not independent");
  return {hb.dim(), *a, *b};
}

template <Field K>
FullnessReport fullness(const RefinedEngine<K>& e, int q, bool certificates = true) {
  e.check_parity(q);
  FullnessReport r;
  r.q = q;
  r.plain_dim = e.plain_dim(q);
  r.theta_dim = e.theta_dim(q);
  r.plain = fullness_of_dim(r.plain_dim);
  r.refined = fullness_of_dim(r.theta_dim);
  if (certificates) {
    for (auto& c : e.spanning_witnesses(q, false, "plain")) r.certificates.push_back(std::move(c));
    for (auto& c : e.spanning_witnesses(q, true, "theta")) r.certificates.push_back(std::move(c));
  }
  return r;
}

namespace detail {

template <Field K>
RefinedSResult refined_from_engine(const RefinedEngine<K>& e, const RefinedOptions& opt) {
  RefinedSResult res;
  res.components = e.components();
  res.field = ScalarTraits<K>::ring;
  res.theta = opt.theta.kind;

  // Classical s from the plain sweep, by both formulas.
  const auto levels = e.sweep_levels();
  std::map<int, int> plain;
  for (int q : levels) plain[q] = e.plain_dim(q);
  if (plain.begin()->second != 2) throw std::logic_error("s: lowest level is not full");
  if (plain.rbegin()->second != 0) throw std::logic_error("s: highest level is not empty");
  int max_half = levels.front(), max_full = levels.front();
  for (auto [q, d] : plain) {
    if (d >= 1) max_half = std::max(max_half, q);
    if (d == 2) max_full = std::max(max_full, q);
  }
  if (max_half - 1 != max_full + 1)
    throw std::logic_error("s: half-full and full formulas disagree (" + std::to_string(max_half - 1) + " vs " +
                           std::to_string(max_full + 1) + ")");
  res.s = max_half - 1;
  const int s = res.s;

  // Refined values from the two decisive levels.
  const K one(1);
  auto sp = e.witness(s - 1, true, one, K(0), "s_plus");
  const bool s_full = e.theta_dim(s - 1) == 2;
  if (s_full != sp.has_value()) throw std::logic_error("s_plus: dimension count and witness criterion disagree");
  res.s_plus = s_full ? s + 2 : s;
  std::optional<FullnessCertificate> rp = e.witness(s + 1, true, one, one, "r_plus");
  if (!rp) rp = e.witness(s + 1, true, one, -one, "r_plus");
  const bool r_half = e.theta_dim(s + 1) >= 1;
  if (r_half != rp.has_value()) throw std::logic_error("r_plus: dimension count and witness criterion disagree");
  res.r_plus = r_half ? s + 2 : s;

  if (opt.certificates) {
    for (auto& c : e.spanning_witnesses(s - 1, false, "full")) res.certificates.push_back(std::move(c));
    for (auto& c : e.spanning_witnesses(s + 1, false, "half_full")) res.certificates.push_back(std::move(c));
    if (sp) {
      res.certificates.push_back(*sp);
      if (auto b = e.witness(s - 1, true, K(0), one, "s_plus")) res.certificates.push_back(*b);
    }
    if (rp) res.certificates.push_back(*rp);
  }

  if (opt.full_sweep) {
    int max_th = levels.front(), max_tf = levels.front();
    for (int q : levels) {
      const int td = e.theta_dim(q);
      res.sweep.push_back({q, plain[q], td});
      if (td >= 1) max_th = std::max(max_th, q);
      if (td == 2) max_tf = std::max(max_tf, q);
    }
    if (max_th + 1 != res.r_plus || max_tf + 3 != res.s_plus)
      throw std::logic_error("refined s: full sweep disagrees with the two-level computation");
  }
  return res;
}

}  // namespace detail

/// s, r_plus and s_plus over the field of `opt.theta` (F2: Bar-Natan, Q: Lee).
/// The empty link gives 1 for all three.
inline RefinedSResult refined_s(const LinkComplexes& lc, const RefinedOptions& opt) {
  opt.theta.validate();
  RefinedSResult res;
  if (lc.diagram.empty()) {
    res.field = opt.theta.field;
    res.theta = opt.theta.kind;
    res.link = serialize(lc.diagram);
    return res;
  }
  if (opt.theta.field == RingKind::F2) res = detail::refined_from_engine(RefinedEngine<F2>(lc, opt.theta), opt);
  else res = detail::refined_from_engine(RefinedEngine<mpq_class>(lc, opt.theta), opt);
  res.link = serialize(lc.diagram);
  return res;
}

inline RefinedSResult refined_s(const OrientedLinkDiagram& d, const RefinedOptions& opt,
                                LinkComplexes::Method method = LinkComplexes::Method::Reduced) {
  return refined_s(prepare_complexes(d, method), opt);
}

inline int s_classical(const OrientedLinkDiagram& d, RingKind field) {
  RefinedOptions o;
  o.theta = ThetaOperation::zero(field);
  o.certificates = false;
  return refined_s(d, o).s;
}

inline int r_plus(const OrientedLinkDiagram& d, ThetaOperation theta) {
  RefinedOptions o;
  o.theta = theta;
  return refined_s(d, o).r_plus;
}

inline int s_plus(const OrientedLinkDiagram& d, ThetaOperation theta) {
  RefinedOptions o;
  o.theta = theta;
  return refined_s(d, o).s_plus;
}

/// (r_minus, s_minus) = (-r_plus(mirror), -s_plus(mirror)).
inline std::pair<int, int> minus_versions(const OrientedLinkDiagram& d, ThetaOperation theta) {
  RefinedOptions o;
  o.theta = theta;
  o.certificates = false;
  auto r = refined_s(mirror(d), o);
  return {-r.r_plus, -r.s_plus};
}

/// Whether Sq1 : Kh^{i-1,q} -> Kh^{i,q} vanishes for i = 0, 1 at q = s(T) - 1.
struct Sq1Hypothesis {
  int q = 0;
  int rank_into_0 = 0;
  int rank_into_1 = 0;
  bool holds() const { return rank_into_0 == 0 && rank_into_1 == 0; }
};

struct DisjointUnionReport {
  bool hypothesis_checked = false;
  Sq1Hypothesis hypothesis;
  int s_plus_union = 0;
  int s_plus_l = 0;
  int s_plus_t = 0;
  int rhs() const { return s_plus_l + s_plus_t - 1; }
  bool equal() const { return s_plus_union == rhs(); }
  bool passed() const { return (!hypothesis_checked || hypothesis.holds()) && equal(); }
};

inline Sq1Hypothesis sq1_hypothesis(const LinkComplexes& t, int s_t) {
  Sq1Hypothesis h;
  h.q = s_t - 1;
  if (t.diagram.empty()) return h;
  h.rank_into_0 = sq1(t, 0, h.q).rank();
  h.rank_into_1 = sq1(t, 1, h.q).rank();
  return h;
}

/// Both sides of s_plus^{Sq1}(L ⊔ T) = s_plus^{Sq1}(L) + s_plus^{Sq1}(T) - 1,
/// each computed from its own complex.
inline DisjointUnionReport disjoint_union_check(const OrientedLinkDiagram& l, const OrientedLinkDiagram& t) {
  RefinedOptions o;
  o.theta = ThetaOperation::sq1();
  o.certificates = false;
  DisjointUnionReport rep;
  auto lt = prepare_complexes(t, LinkComplexes::Method::Reduced);
  auto rt = refined_s(lt, o);
  rep.s_plus_t = rt.s_plus;
  if (!t.empty()) {
    rep.hypothesis_checked = true;
    rep.hypothesis = sq1_hypothesis(lt, rt.s);
  }
  rep.s_plus_l = refined_s(l, o).s_plus;
  rep.s_plus_union = refined_s(disjoint_union(l, t), o).s_plus;
  return rep;
}

/// s0 - chi - [Σ]^2 - |Σ|.
inline int adjunction_bound(int s0, int chi, int self_intersection, int surface_components) {
  if (surface_components < 1) throw std::invalid_argument("adjunction_bound: surface must have at least one component");
  return s0 - chi - self_intersection - surface_components;
}

inline bool adjunction_check(int bound, int s1) { return s1 <= bound; }

}  // namespace khs
