#pragma once

#include <stdexcept>
#include <vector>

#include "khs/laurent.hpp"
#include "khs/link.hpp"

namespace khs {

inline constexpr int kJonesMaxCrossings = 14;

namespace detail {

// Kauffman bracket in the variable A by skein recursion on the first
// unresolved crossing. Arcs are tracked with a plain union-find that is
// copied at each branch.
inline void bracket_rec(const std::vector<std::array<int, 4>>& x, std::size_t k, std::vector<int> uf, int a_power,
                        std::vector<long long>& loops_hist, std::vector<int>& a_hist) {
  auto find = [&](int v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };
  if (k == x.size()) {
    int loops = 0;
    for (std::size_t i = 0; i < uf.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) ++loops;
    loops_hist.push_back(loops);
    a_hist.push_back(a_power);
    return;
  }
  auto join = [&](std::vector<int>& u, int p, int q) {
    auto f = [&](int v) {
      while (u[v] != v) v = u[v] = u[u[v]];
      return v;
    };
    p = f(p);
    q = f(q);
    if (p != q) u[p] = q;
  };
  // A-smoothing joins (a,b),(c,d); A^{-1}-smoothing joins (a,d),(b,c).
  std::vector<int> u0 = uf;
  join(u0, x[k][0], x[k][1]);
  join(u0, x[k][2], x[k][3]);
  bracket_rec(x, k + 1, std::move(u0), a_power + 1, loops_hist, a_hist);
  join(uf, x[k][0], x[k][3]);
  join(uf, x[k][1], x[k][2]);
  bracket_rec(x, k + 1, std::move(uf), a_power - 1, loops_hist, a_hist);
}

}  // namespace detail

/// Kauffman bracket <D> in A, normalized by <unknot> = -A^2 - A^-2, <empty> = 1.
inline Laurent kauffman_bracket(const OrientedLinkDiagram& d) {
  if (d.crossing_count() > kJonesMaxCrossings)
    throw std::invalid_argument("jones oracle: more than " + std::to_string(kJonesMaxCrossings) + " crossings");
  if (d.empty()) return Laurent::monomial(0);
  std::vector<std::array<int, 4>> x;
  for (const auto& q : d.crossings()) x.push_back({d.arc_index(q[0]), d.arc_index(q[1]), d.arc_index(q[2]), d.arc_index(q[3])});
  std::vector<int> uf(d.arc_count());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::vector<long long> loops;
  std::vector<int> powers;
  detail::bracket_rec(x, 0, uf, 0, loops, powers);
  const Laurent delta = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
  Laurent out;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    Laurent t = Laurent::monomial(powers[i]);
    for (long long j = 0; j < loops[i]; ++j) t = t * delta;
    out += t;
  }
  return out;
}

/// Unnormalized Jones polynomial in q (unknot = q + q^-1, empty link = 1).
inline Laurent jones_oracle(const OrientedLinkDiagram& d) {
  if (d.empty()) return Laurent::monomial(0);
  const int n = d.crossing_count();
  Laurent b = kauffman_bracket(d).shifted(-n);
  Laurent out;
  for (const auto& [e, c] : b.terms()) {
    if (e % 2 != 0) throw std::logic_error("jones oracle: odd power of A after normalization");
    const int m = e / 2;  // A^{2m} = (-q^{-1})^m
    out.add(-m, (m % 2 == 0) ? c : -c);
  }
  const int np = d.n_plus();
  const int nm = d.n_minus();
  out = out.shifted(np - 2 * nm);
  return (nm % 2 == 0) ? out : (-1LL) * out;
}

}  // namespace khs
