#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "khs/link.hpp"

namespace khs {

/// Closure of a braid word on `strands` strands. Letter +i is the positive
/// generator s_i (1-based), -i its inverse. Strands that no letter touches
/// close up to free loops.
inline OrientedLinkDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw std::invalid_argument("braid_closure: need at least one strand");
  std::vector<int> cur(strands);
  for (int i = 0; i < strands; ++i) cur[i] = i + 1;
  int next = strands + 1;
  std::vector<Quad> quads;
  std::vector<bool> touched(strands, false);
  for (int g : word) {
    const int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw std::invalid_argument("braid_closure: generator out of range");
    touched[i] = touched[i + 1] = true;
    const int x = cur[i];
    const int y = cur[i + 1];
    const int x2 = next++;
    const int y2 = next++;
    if (g > 0) quads.push_back({y, x2, y2, x});
    else quads.push_back({x, y, x2, y2});
    cur[i] = y2;
    cur[i + 1] = x2;
  }
  // The strand leaving the top at position i continues at the bottom of position i.
  std::map<int, int> close;
  for (int i = 0; i < strands; ++i) close[cur[i]] = i + 1;
  for (auto& q : quads)
    for (int& a : q) {
      auto it = close.find(a);
      if (it != close.end()) a = it->second;
    }
  std::vector<int> used;
  for (const auto& q : quads)
    for (int a : q) used.push_back(a);
  std::vector<int> loops;
  for (int i = 0; i < strands; ++i)
    if (!touched[i]) loops.push_back(i + 1);
  for (int l : loops) used.push_back(l);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto rank = [&](int a) { return static_cast<int>(std::lower_bound(used.begin(), used.end(), a) - used.begin()) + 1; };
  for (auto& q : quads)
    for (int& a : q) a = rank(a);
  for (int& l : loops) l = rank(l);
  return OrientedLinkDiagram::make(quads, loops);
}

namespace knots {

inline const char* const kTrefoil = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
inline const char* const kFigureEight = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
inline const char* const kCinquefoil = "X(2,8,3,7) X(4,10,5,9) X(6,2,7,1) X(8,4,9,3) X(10,6,1,5)";
inline const char* const k942 =
    "X(1,5,2,4) X(5,11,6,10) X(3,8,4,9) X(9,2,10,3) X(16,11,17,12) X(14,8,15,7) X(6,16,7,15) X(18,13,1,14) "
    "X(12,17,13,18)";

}  // namespace knots

/// Names accepted by builtin(). "torus:n:q" is also accepted.
inline std::vector<std::string> builtin_names() {
  return {"empty",    "unknot", "hopf+", "hopf-", "hopf-stab", "trefoil", "trefoil-",
          "trefoil-stab", "figure8", "5_1", "9_42", "9_42-"};
}

/// Links every suite runs over.
inline std::vector<std::string> regression_corpus() {
  return {"empty",     "unknot",    "hopf+",     "hopf-",     "hopf-stab", "trefoil",   "trefoil-",
          "trefoil-stab", "figure8", "5_1",      "torus:2:0", "torus:2:1", "torus:3:0", "torus:3:1",
          "9_42",      "9_42-"};
}

/// Built-in diagrams. The trefoil, figure eight, 5_1 and 9_42 codes are the
/// usual knot-table PD codes; "trefoil" is the all-positive diagram.
inline OrientedLinkDiagram builtin(const std::string& name) {
  if (name.rfind("torus:", 0) == 0) {
    const auto rest = name.substr(6);
    const auto colon = rest.find(':');
    try {
      const int n = std::stoi(rest.substr(0, colon));
      const int q = colon == std::string::npos ? 0 : std::stoi(rest.substr(colon + 1));
      return torus_link({n, q});
    } catch (const std::invalid_argument& e) {
      throw ParseError("bad torus link name '" + name + "': " + e.what());
    }
  }
  if (name == "empty") return {};
  if (name == "unknot") return parse_pd("Loop(1)");
  if (name == "hopf+") return torus_link({2, 0});
  if (name == "hopf-") return mirror(torus_link({2, 0}));
  if (name == "trefoil" || name == "3_1") return parse_pd(knots::kTrefoil);
  if (name == "trefoil-") return mirror(parse_pd(knots::kTrefoil));
  if (name == "trefoil-stab") return braid_closure(3, {1, 1, 1, 2});
  if (name == "hopf-stab") return braid_closure(3, {1, 1, 2});
  if (name == "figure8" || name == "4_1") return parse_pd(knots::kFigureEight);
  if (name == "5_1") return parse_pd(knots::kCinquefoil);
  if (name == "9_42") return parse_pd(knots::k942);
  if (name == "9_42-") return mirror(parse_pd(knots::k942));
  throw ParseError("unknown builtin link '" + name + "'");
}

}  // namespace khs
