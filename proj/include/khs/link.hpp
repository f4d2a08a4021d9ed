#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace khs {

/// Malformed PD text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// PD data that parses but does not describe an oriented planar diagram.
class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Quad = std::array<int, 4>;

enum class Role { Under = 0, Over = 1 };

inline Role role_of_slot(int s) { return (s % 2 == 0) ? Role::Under : Role::Over; }
inline Role opposite(Role r) { return r == Role::Under ? Role::Over : Role::Under; }

/// Oriented link diagram in PD form.
///
/// Each quadruple lists its arcs counterclockwise, starting at the incoming
/// under-strand of the *reference* orientation. The reference orientation of a
/// component is read off from its under-passages (for a component that is
/// never an under-strand, from the usual table convention on over-strand
/// labels). Per-component flags record whether the actual orientation is
/// reversed relative to the reference. Free loops are crossingless unknot
/// components; their reference orientation is counterclockwise.
///
/// Components are numbered by smallest arc label, free loops last.
class OrientedLinkDiagram {
 public:
  OrientedLinkDiagram() = default;

  static OrientedLinkDiagram make(std::vector<Quad> crossings, std::vector<int> loops = {},
                                  std::vector<bool> reversed = {}) {
    OrientedLinkDiagram d;
    d.crossings_ = std::move(crossings);
    d.loops_ = std::move(loops);
    d.derive(std::move(reversed));
    return d;
  }

  bool empty() const { return crossings_.empty() && loops_.empty(); }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int component_count() const { return static_cast<int>(comp_arcs_.size()); }
  const std::vector<Quad>& crossings() const { return crossings_; }
  const Quad& crossing(int k) const { return crossings_[k]; }
  const std::vector<int>& loops() const { return loops_; }
  const std::vector<bool>& reversed() const { return reversed_; }

  /// +1 where the actual orientation agrees with the reference, -1 otherwise.
  std::vector<int> component_orientations() const {
    std::vector<int> out;
    for (bool r : reversed_) out.push_back(r ? -1 : 1);
    return out;
  }

  int sign(int k) const { return sign_[k]; }
  int n_plus() const { return static_cast<int>(std::count(sign_.begin(), sign_.end(), 1)); }
  int n_minus() const { return static_cast<int>(std::count(sign_.begin(), sign_.end(), -1)); }
  int writhe() const { return n_plus() - n_minus(); }

  /// All arc labels, ascending.
  const std::vector<int>& arcs() const { return arcs_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  /// Dense index of an arc label in arcs().
  int arc_index(int label) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), label);
    if (it == arcs_.end() || *it != label) throw std::out_of_range("unknown arc label " + std::to_string(label));
    return static_cast<int>(it - arcs_.begin());
  }
  int max_label() const { return arcs_.empty() ? 0 : arcs_.back(); }

  int component_of_arc(int label) const { return arc_comp_[arc_index(label)]; }
  const std::vector<int>& component_arcs(int c) const { return comp_arcs_[c]; }
  bool is_loop_component(int c) const { return c >= component_count() - static_cast<int>(loops_.size()); }
  /// Component of the strand with the given role at crossing k.
  int component_at(int k, Role r) const { return component_of_arc(crossings_[k][static_cast<int>(r)]); }

  /// Slot through which the strand with role r enters crossing k, in the
  /// reference orientation (0 for the under-strand, 1 or 3 for the over-strand).
  int ref_entry_slot(int k, Role r) const { return r == Role::Under ? 0 : (ref_over3_[k] ? 3 : 1); }
  /// Same, in the actual orientation.
  int entry_slot(int k, Role r) const {
    int s = ref_entry_slot(k, r);
    return reversed_[component_at(k, r)] ? (s ^ 2) : s;
  }
  int entry_arc(int k, Role r) const { return crossings_[k][entry_slot(k, r)]; }
  int ref_entry_arc(int k, Role r) const { return crossings_[k][ref_entry_slot(k, r)]; }

  /// Index of a free loop component, by position in loops().
  bool loop_reversed(int i) const { return reversed_[component_count() - static_cast<int>(loops_.size()) + i]; }

  OrientedLinkDiagram with_reversed(std::vector<bool> reversed) const {
    return make(crossings_, loops_, std::move(reversed));
  }

  friend bool operator==(const OrientedLinkDiagram& a, const OrientedLinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.loops_ == b.loops_ && a.reversed_ == b.reversed_;
  }

 private:
  void derive(std::vector<bool> reversed);

  std::vector<Quad> crossings_;
  std::vector<int> loops_;
  std::vector<bool> reversed_;

  std::vector<int> arcs_;
  std::vector<int> arc_comp_;
  std::vector<std::vector<int>> comp_arcs_;
  std::vector<bool> ref_over3_;
  std::vector<int> sign_;
};

inline void OrientedLinkDiagram::derive(std::vector<bool> reversed) {
  // Label multiplicities.
  std::map<int, int> count;
  for (const auto& q : crossings_)
    for (int a : q) ++count[a];
  for (int l : loops_) {
    if (count.count(l)) throw ParseError("loop label " + std::to_string(l) + " also used by a crossing");
    count[l] = 2;
  }
  {
    std::vector<int> sorted = loops_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ParseError("loop label repeated");
  }
  for (const auto& [label, n] : count)
    if (n != 2)
      throw ParseError("arc label " + std::to_string(label) + " appears " + std::to_string(n) + " times (expected 2)");
  arcs_.clear();
  for (const auto& [label, n] : count) arcs_.push_back(label);

  const int na = arc_count();
  const int nc = crossing_count();

  // Through-strands join arcs into components.
  std::vector<int> parent(na);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (const auto& q : crossings_) {
    unite(arc_index(q[0]), arc_index(q[2]));
    unite(arc_index(q[1]), arc_index(q[3]));
  }
  std::vector<bool> is_loop(na, false);
  for (int l : loops_) is_loop[arc_index(l)] = true;
  std::map<int, int> root_to_comp;
  comp_arcs_.clear();
  arc_comp_.assign(na, -1);
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < na; ++i) {
      if (is_loop[i] != (pass == 1)) continue;
      int r = find(i);
      auto it = root_to_comp.find(r);
      if (it == root_to_comp.end()) {
        it = root_to_comp.emplace(r, static_cast<int>(comp_arcs_.size())).first;
        comp_arcs_.emplace_back();
      }
      arc_comp_[i] = it->second;
      comp_arcs_[it->second].push_back(arcs_[i]);
    }

  // Endpoints of each arc.
  std::vector<std::vector<std::pair<int, int>>> ends(na);
  for (int k = 0; k < nc; ++k)
    for (int s = 0; s < 4; ++s) ends[arc_index(crossings_[k][s])].emplace_back(k, s);

  // Reference traversal, starting from an under-passage where possible.
  std::vector<std::array<int, 2>> entry(nc, {-1, -1});
  const int ncomp_crossing = component_count() - static_cast<int>(loops_.size());
  for (int c = 0; c < ncomp_crossing; ++c) {
    int k0 = -1;
    int s0 = -1;
    for (int k = 0; k < nc && k0 < 0; ++k)
      if (arc_comp_[arc_index(crossings_[k][0])] == c) {
        k0 = k;
        s0 = 0;
      }
    if (k0 < 0) {
      for (int k = 0; k < nc && k0 < 0; ++k)
        if (arc_comp_[arc_index(crossings_[k][1])] == c) {
          k0 = k;
          const int j = crossings_[k][1];
          const int l = crossings_[k][3];
          s0 = (j == l + 1 || l > j + 1) ? 3 : 1;
        }
    }
    int k = k0;
    int s = s0;
    do {
      const int r = static_cast<int>(role_of_slot(s));
      if (r == 0 && s != 0) throw DiagramError("inconsistent orientation data at crossing " + std::to_string(k + 1));
      if (entry[k][r] != -1 && entry[k][r] != s)
        throw DiagramError("inconsistent orientation data at crossing " + std::to_string(k + 1));
      entry[k][r] = s;
      const int out = s ^ 2;
      const auto& e = ends[arc_index(crossings_[k][out])];
      const auto& next = (e[0] == std::make_pair(k, out)) ? e[1] : e[0];
      k = next.first;
      s = next.second;
    } while (!(k == k0 && s == s0));
  }
  ref_over3_.assign(nc, false);
  for (int k = 0; k < nc; ++k) {
    if (entry[k][0] != 0 || entry[k][1] < 0) throw DiagramError("inconsistent orientation data at crossing " + std::to_string(k + 1));
    ref_over3_[k] = entry[k][1] == 3;
  }

  if (reversed.empty()) reversed.assign(component_count(), false);
  if (static_cast<int>(reversed.size()) != component_count())
    throw DiagramError("inconsistent orientation data: " + std::to_string(reversed.size()) + " flags for " +
                       std::to_string(component_count()) + " components");
  reversed_ = std::move(reversed);

  sign_.assign(nc, 0);
  for (int k = 0; k < nc; ++k) {
    const bool under0 = entry_slot(k, Role::Under) == 0;
    const bool over3 = entry_slot(k, Role::Over) == 3;
    sign_[k] = (under0 == over3) ? 1 : -1;
  }
}

namespace detail {

/// Flags for `target` so that each strand enters through the arc given by
/// actual_entry(k, role); loops copy `loop_rev`.
inline std::vector<bool> transfer_orientation(const OrientedLinkDiagram& target,
                                              const std::function<int(int, Role)>& actual_entry,
                                              const std::vector<bool>& loop_rev) {
  std::vector<bool> flags(target.component_count(), false);
  std::vector<bool> done(target.component_count(), false);
  for (int k = 0; k < target.crossing_count(); ++k)
    for (Role r : {Role::Under, Role::Over}) {
      int c = target.component_at(k, r);
      if (done[c]) continue;
      done[c] = true;
      flags[c] = target.ref_entry_arc(k, r) != actual_entry(k, r);
    }
  const int first_loop = target.component_count() - static_cast<int>(target.loops().size());
  for (std::size_t i = 0; i < loop_rev.size(); ++i) flags[first_loop + i] = loop_rev[i];
  return flags;
}

inline std::vector<bool> loop_flags(const OrientedLinkDiagram& d) {
  std::vector<bool> out;
  for (std::size_t i = 0; i < d.loops().size(); ++i) out.push_back(d.loop_reversed(static_cast<int>(i)));
  return out;
}

// Tokenizer for the accepted PD dialects.
class PdScanner {
 public:
  explicit PdScanner(std::string_view s) : s_(s) {}

  struct Result {
    std::vector<Quad> crossings;
    std::vector<int> loops;
    std::optional<std::string> orient;
  };

  Result run() {
    Result out;
    int wrapper_depth = 0;
    while (true) {
      skip_separators();
      if (pos_ >= s_.size()) break;
      char ch = s_[pos_];
      if (starts_with_ci("PD[") || starts_with_ci("PD(")) {
        pos_ += 3;
        ++wrapper_depth;
      } else if ((ch == ']' || ch == ')') && wrapper_depth > 0) {
        ++pos_;
        --wrapper_depth;
      } else if (starts_with_ci("orient=")) {
        pos_ += 7;
        std::string flags;
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) flags += s_[pos_++];
        if (flags.empty()) throw ParseError("orient= needs a string of + and -");
        out.orient = flags;
      } else if (starts_with_ci("loop")) {
        pos_ += 4;
        auto v = group();
        if (v.size() != 1) throw ParseError("malformed loop: expected Loop(k)");
        out.loops.push_back(v[0]);
      } else if ((ch == 'X' || ch == 'x') && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '(' || s_[pos_ + 1] == '[')) {
        ++pos_;
        out.crossings.push_back(quad(group()));
      } else if (ch == '[') {
        // Either [[a,b,c,d],...] or a bare [a,b,c,d].
        std::size_t p = pos_ + 1;
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        if (p < s_.size() && s_[p] == '[') {
          pos_ = p;
          ++wrapper_depth;
        } else {
          out.crossings.push_back(quad(group()));
        }
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "' at offset " + std::to_string(pos_));
      }
    }
    if (wrapper_depth != 0) throw ParseError("unbalanced brackets");
    return out;
  }

 private:
  void skip_separators() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ';' || s_[pos_] == ','))
      ++pos_;
  }
  bool starts_with_ci(std::string_view w) const {
    if (s_.size() - pos_ < w.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(s_[pos_ + i])) != std::tolower(static_cast<unsigned char>(w[i])))
        return false;
    return true;
  }
  static Quad quad(const std::vector<int>& v) {
    if (v.size() != 4) throw ParseError("malformed quadruple: expected 4 labels, got " + std::to_string(v.size()));
    return {v[0], v[1], v[2], v[3]};
  }
  // Parses "(a,b,...)" or "[a,b,...]" at the current position.
  std::vector<int> group() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size() || (s_[pos_] != '(' && s_[pos_] != '[')) throw ParseError("malformed quadruple: missing bracket");
    const char close = s_[pos_] == '(' ? ')' : ']';
    ++pos_;
    std::size_t end = s_.find(close, pos_);
    if (end == std::string_view::npos) throw ParseError("malformed quadruple: missing closing bracket");
    std::string_view body = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    std::vector<int> out;
    std::size_t i = 0;
    while (i <= body.size()) {
      std::size_t j = body.find(',', i);
      if (j == std::string_view::npos) j = body.size();
      std::string tok(body.substr(i, j - i));
      tok.erase(0, tok.find_first_not_of(" \t\r\n"));
      tok.erase(tok.find_last_not_of(" \t\r\n") + 1);
      if (tok.empty()) {
        if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) break;
        throw ParseError("malformed quadruple: empty label");
      }
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed quadruple: '" + tok + "' is not an integer");
      }
      if (used != tok.size()) throw ParseError("malformed quadruple: '" + tok + "' is not an integer");
      out.push_back(static_cast<int>(v));
      i = j + 1;
    }
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses PD text: X(a,b,c,d) / X[a,b,c,d] / [[a,b,c,d],...] / PD[...], plus
/// Loop(k) for free loops and an optional orient=+-... suffix. Explicit
/// orientation flags (+1 / -1 per component) override the suffix.
inline OrientedLinkDiagram parse_pd(std::string_view text, const std::optional<std::vector<int>>& orientations = {}) {
  auto r = detail::PdScanner(text).run();
  std::vector<bool> flags;
  if (orientations) {
    for (int o : *orientations) {
      if (o != 1 && o != -1) throw ParseError("orientation flags must be +1 or -1");
      flags.push_back(o == -1);
    }
  } else if (r.orient) {
    for (char ch : *r.orient) flags.push_back(ch == '-');
  }
  return OrientedLinkDiagram::make(std::move(r.crossings), std::move(r.loops), std::move(flags));
}

/// Canonical text form: quadruples rotated to start at the actual incoming
/// under-strand and sorted; loops sorted; an orient= suffix only when
/// re-parsing would not recover the orientation.
inline std::string serialize(const OrientedLinkDiagram& d) {
  struct Item {
    Quad q;
    int old;
  };
  std::vector<Item> items;
  for (int k = 0; k < d.crossing_count(); ++k) {
    Quad q = d.crossing(k);
    if (d.entry_slot(k, Role::Under) == 2) q = {q[2], q[3], q[0], q[1]};
    items.push_back({q, k});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.q < b.q; });
  std::vector<Quad> quads;
  for (const auto& it : items) quads.push_back(it.q);
  std::vector<std::pair<int, bool>> loops;
  for (std::size_t i = 0; i < d.loops().size(); ++i) loops.emplace_back(d.loops()[i], d.loop_reversed(static_cast<int>(i)));
  std::sort(loops.begin(), loops.end());
  std::vector<int> loop_labels;
  std::vector<bool> loop_rev;
  for (const auto& [l, rev] : loops) {
    loop_labels.push_back(l);
    loop_rev.push_back(rev);
  }
  auto bare = OrientedLinkDiagram::make(quads, loop_labels);
  auto flags = detail::transfer_orientation(
      bare, [&](int k, Role r) { return d.entry_arc(items[k].old, r); }, loop_rev);

  std::string out;
  for (const auto& q : quads) {
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
           std::to_string(q[3]) + ")";
  }
  for (int l : loop_labels) {
    if (!out.empty()) out += ' ';
    out += "Loop(" + std::to_string(l) + ")";
  }
  if (std::find(flags.begin(), flags.end(), true) != flags.end()) {
    if (!out.empty()) out += ' ';
    out += "orient=";
    for (bool f : flags) out += f ? '-' : '+';
  }
  return out;
}

/// Mirror image: every crossing changes type, orientation is kept.
inline OrientedLinkDiagram mirror(const OrientedLinkDiagram& d) {
  std::vector<Quad> quads;
  for (int k = 0; k < d.crossing_count(); ++k) {
    const Quad& q = d.crossing(k);
    if (d.ref_entry_slot(k, Role::Over) == 3) quads.push_back({q[3], q[0], q[1], q[2]});
    else quads.push_back({q[1], q[2], q[3], q[0]});
  }
  auto bare = OrientedLinkDiagram::make(quads, d.loops());
  auto flags = detail::transfer_orientation(
      bare, [&](int k, Role r) { return d.entry_arc(k, opposite(r)); }, detail::loop_flags(d));
  return bare.with_reversed(std::move(flags));
}

inline OrientedLinkDiagram reverse_all(const OrientedLinkDiagram& d) {
  std::vector<bool> flags = d.reversed();
  flags.flip();
  return d.with_reversed(std::move(flags));
}

/// Split union; arcs of d2 are shifted past the labels of d1.
inline OrientedLinkDiagram disjoint_union(const OrientedLinkDiagram& d1, const OrientedLinkDiagram& d2) {
  const int off = d1.max_label();
  std::vector<Quad> quads = d1.crossings();
  for (auto q : d2.crossings()) {
    for (int& a : q) a += off;
    quads.push_back(q);
  }
  std::vector<int> loops = d1.loops();
  for (int l : d2.loops()) loops.push_back(l + off);
  std::vector<bool> loop_rev = detail::loop_flags(d1);
  for (bool b : detail::loop_flags(d2)) loop_rev.push_back(b);
  auto bare = OrientedLinkDiagram::make(quads, loops);
  const int n1 = d1.crossing_count();
  auto flags = detail::transfer_orientation(
      bare,
      [&](int k, Role r) { return k < n1 ? d1.entry_arc(k, r) : d2.entry_arc(k - n1, r) + off; },
      loop_rev);
  return bare.with_reversed(std::move(flags));
}

/// T(n,n) with q strands oriented against the other p = n - q.
struct TorusLinkSpec {
  int n = 2;
  int q_reversed = 0;

  int p() const { return n - q_reversed; }
  void validate() const {
    if (n < 1) throw std::invalid_argument("torus link: n must be >= 1");
    if (q_reversed < 0 || 2 * q_reversed > n) throw std::invalid_argument("torus link: need 0 <= q <= n/2");
  }
};

/// Closure of the braid (s_1 ... s_{n-1})^n; the last q strands are reversed.
inline OrientedLinkDiagram torus_link(const TorusLinkSpec& spec) {
  spec.validate();
  const int n = spec.n;
  if (n == 1) return OrientedLinkDiagram::make({}, {1}, {false});
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 1);
  int next = n + 1;
  std::vector<Quad> quads;
  for (int round = 0; round < n; ++round)
    for (int i = 0; i + 1 < n; ++i) {
      const int x = cur[i];
      const int y = cur[i + 1];
      const int x2 = next++;  // continues x, now at position i+1
      const int y2 = next++;  // continues y, now at position i
      quads.push_back({y, x2, y2, x});
      cur[i] = y2;
      cur[i + 1] = x2;
    }
  std::map<int, int> close;
  for (int i = 0; i < n; ++i) close[cur[i]] = i + 1;
  std::vector<int> used;
  for (auto& q : quads)
    for (int& a : q) {
      auto it = close.find(a);
      if (it != close.end()) a = it->second;
      used.push_back(a);
    }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& q : quads)
    for (int& a : q) a = static_cast<int>(std::lower_bound(used.begin(), used.end(), a) - used.begin()) + 1;
  auto bare = OrientedLinkDiagram::make(quads);
  std::vector<bool> flags(bare.component_count(), false);
  for (int j = n - spec.q_reversed; j < n; ++j) flags[bare.component_of_arc(j + 1)] = true;
  return bare.with_reversed(std::move(flags));
}

}  // namespace khs
