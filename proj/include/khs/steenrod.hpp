#pragma once

#include <stdexcept>
#include <vector>

#include "khs/complex.hpp"
#include "khs/linalg.hpp"
#include "khs/reduction.hpp"

namespace khs {

/// Sq^1 : Kh^{i-1,q}(F2) -> Kh^{i,q}(F2), in the homology bases of the mod 2
/// reduction of the q-graded piece (HomologyBasis order).
struct BocksteinMap {
  int i = 0;
  int q = 0;
  SparseMatrix<F2> matrix;            // rows: target classes, cols: source classes
  std::vector<Vec<F2>> source_reps;    // cycles of degree i-1 (graded-piece coordinates)
  std::vector<Vec<F2>> image_chains;   // y mod 2 with d(lift of rep) = 2y (degree i)
  std::vector<int> source_parent_index;  // graded-piece index -> parent index, degree i-1
  std::vector<int> target_parent_index;  // same, degree i

  int rank() const { return khs::rank(matrix); }
};

/// Bockstein of one mod 2 cycle: lift to a 0/1 integral chain x, check that
/// d(x) = 2y, and return y mod 2. `d` is the integral differential out of the
/// cycle's degree.
inline Vec<F2> bockstein_chain(const SparseMatrix<mpz_class>& d, const Vec<F2>& cycle) {
  Vec<mpz_class> lift(cycle.dim());
  cycle.for_each([&](int i, F2) { lift.set(i, mpz_class(1)); });
  Vec<mpz_class> dx = d.apply(lift);
  Vec<F2> y(d.rows());
  dx.for_each([&](int i, const mpz_class& v) {
    if (!mpz_even_p(v.get_mpz_t())) throw std::logic_error("sq1: integral lift of a mod 2 cycle is not divisible by 2");
    mpz_class half = v / 2;
    if (mpz_odd_p(half.get_mpz_t())) y.set(i, F2(1));
  });
  return y;
}

/// Sq^1 from (i-1, q) to (i, q) on a q-graded integral complex.
inline BocksteinMap sq1(const FilteredComplex<mpz_class>& khovanov, int i, int q) {
  BocksteinMap out;
  out.i = i;
  out.q = q;
  auto piece = khovanov.graded_piece(q);
  const auto& pz = piece.complex;
  auto p2 = mod2(pz);
  HomologyBasis<F2> src = homology_at(p2, i - 1);
  HomologyBasis<F2> tgt = homology_at(p2, i);
  out.matrix = SparseMatrix<F2>(tgt.dim(), src.dim());
  if (piece.index.count(i - 1)) out.source_parent_index = piece.index.at(i - 1);
  if (piece.index.count(i)) out.target_parent_index = piece.index.at(i);
  for (int r = 0; r < src.dim(); ++r) {
    const Vec<F2>& rep = src.representatives()[r];
    Vec<F2> y = bockstein_chain(pz.differential(i - 1), rep);
    auto coords = tgt.coordinates(y);
    if (!coords) throw std::logic_error("sq1: Bockstein image is not a cycle");
    out.matrix.set_column(r, *coords);
    out.source_reps.push_back(rep);
    out.image_chains.push_back(y);
  }
  return out;
}

inline BocksteinMap sq1(const LinkComplexes& lc, int i, int q) { return sq1(lc.khovanov, i, q); }

inline BocksteinMap sq1(const OrientedLinkDiagram& d, int i, int q) {
  return sq1(prepare_complexes(d, LinkComplexes::Method::Reduced), i, q);
}

/// Image of Sq^1 into (i, q): an independent set of classes (coordinates in
/// the target homology basis), with a cycle and a source preimage for each.
struct Sq1Image {
  std::vector<Vec<F2>> classes;
  std::vector<Vec<F2>> chains;
  std::vector<Vec<F2>> preimages;

  int dim() const { return static_cast<int>(classes.size()); }
};

inline Sq1Image sq1_image(const BocksteinMap& m) {
  Sq1Image img;
  Eliminator<F2> e(m.matrix.rows());
  for (int c = 0; c < m.matrix.cols(); ++c) {
    Vec<F2> v = m.matrix.column_vec(c);
    Vec<F2> probe = v;
    if (!e.insert(probe)) continue;
    img.classes.push_back(v);
    img.chains.push_back(m.image_chains[c]);
    img.preimages.push_back(m.source_reps[c]);
  }
  return img;
}

inline Sq1Image sq1_image(const OrientedLinkDiagram& d, int i, int q) { return sq1_image(sq1(d, i, q)); }

}  // namespace khs
