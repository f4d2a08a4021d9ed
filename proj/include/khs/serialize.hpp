#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "khs/complex.hpp"
#include "khs/homology_table.hpp"
#include "khs/refined_s.hpp"
#include "khs/steenrod.hpp"

namespace khs {

using json = nlohmann::ordered_json;

/// Generators as (h, q, id), differential as (h, from id, to id, value).
template <class K>
json to_json(const FilteredComplex<K>& c) {
  json gens = json::array();
  json entries = json::array();
  for (int h : c.degrees())
    for (int i = 0; i < c.dim(h); ++i) gens.push_back({{"h", h}, {"q", c.level(h, i)}, {"id", c.ids(h)[i]}});
  for (int h : c.degrees()) {
    if (c.dim(h + 1) == 0) continue;
    const auto& d = c.differential(h);
    for (int j = 0; j < d.cols(); ++j)
      for (const auto& [i, x] : d.column(j))
        entries.push_back({{"h", h}, {"from", c.ids(h)[j]}, {"to", c.ids(h + 1)[i]}, {"value", ScalarTraits<K>::str(x)}});
  }
  return {{"ring", to_string(ScalarTraits<K>::ring)}, {"generators", gens}, {"differential", entries}};
}

template <class K>
FilteredComplex<K> complex_from_json(const json& j) {
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> deg;  // levels, ids
  for (const auto& g : j.at("generators")) {
    auto& d = deg[g.at("h").get<int>()];
    d.first.push_back(g.at("q").get<int>());
    d.second.push_back(g.at("id").get<int>());
  }
  FilteredComplex<K> c;
  for (auto& [h, d] : deg) c.add_degree(h, d.first, d.second);
  std::map<int, SparseMatrix<K>> mats;
  for (int h : c.degrees()) mats.emplace(h, SparseMatrix<K>(c.dim(h + 1), c.dim(h)));
  std::map<int, std::map<int, std::vector<std::pair<int, K>>>> cols;
  for (const auto& e : j.at("differential")) {
    const int h = e.at("h").get<int>();
    const int from = c.index_of(h, e.at("from").get<int>());
    const int to = c.index_of(h + 1, e.at("to").get<int>());
    if (from < 0 || to < 0) throw std::invalid_argument("complex_from_json: entry on an unknown generator");
    cols[h][from].emplace_back(to, ScalarTraits<K>::from_rational(mpq_class(e.at("value").get<std::string>())));
  }
  for (auto& [h, byc] : cols)
    for (auto& [j2, col] : byc) {
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      mats.at(h).set_column(j2, col);
    }
  for (auto& [h, m] : mats) c.set_differential(h, std::move(m));
  return c;
}

inline json to_json(const HomologyTable& t) {
  json groups = json::array();
  for (const auto& [k, e] : t.entries) {
    json tor = json::array();
    for (const auto& x : e.torsion) tor.push_back(x.get_str());
    groups.push_back({{"h", k.first}, {"q", k.second}, {"rank", e.rank}, {"torsion", tor}});
  }
  return {{"ring", to_string(t.ring)}, {"groups", groups}};
}

inline HomologyTable table_from_json(const json& j) {
  HomologyTable t;
  const std::string r = j.at("ring").get<std::string>();
  t.ring = r == "Z" ? RingKind::Integers : r == "F2" ? RingKind::F2 : RingKind::Rationals;
  for (const auto& g : j.at("groups")) {
    HomologyTable::Entry e;
    e.rank = g.at("rank").get<int>();
    for (const auto& x : g.at("torsion")) e.torsion.emplace_back(x.get<std::string>());
    t.entries[{g.at("h").get<int>(), g.at("q").get<int>()}] = e;
  }
  return t;
}

/// Header h,q,rank,torsion; torsion orders joined by ';'.
inline std::string to_csv(const HomologyTable& t) {
  std::ostringstream os;
  os << "h,q,rank,torsion\n";
  for (const auto& [k, e] : t.entries) {
    os << k.first << ',' << k.second << ',' << e.rank << ',';
    for (std::size_t i = 0; i < e.torsion.size(); ++i) os << (i ? ";" : "") << e.torsion[i].get_str();
    os << '\n';
  }
  return os.str();
}

inline json to_json(const BocksteinMap& m) {
  json rows = json::array();
  for (auto [i, j, x] : m.matrix.triplets()) rows.push_back({i, j});
  return {{"source", {m.i - 1, m.q}}, {"target", {m.i, m.q}}, {"rows", m.matrix.rows()}, {"cols", m.matrix.cols()},
          {"nonzero", rows}, {"rank", m.rank()}};
}

namespace detail {

inline json chain_json(const IdChain& c) {
  json a = json::array();
  for (const auto& [id, x] : c) a.push_back({id, x.get_str()});
  return a;
}

inline IdChain chain_from(const json& j) {
  IdChain c;
  for (const auto& e : j) c.emplace(e.at(0).get<int>(), mpq_class(e.at(1).get<std::string>()));
  return c;
}

}  // namespace detail

inline json to_json(const FullnessCertificate& c) {
  json j = {{"role", c.role},
            {"q", c.q},
            {"theta_constrained", c.theta_constrained},
            {"theta", to_string(c.theta)},
            {"alpha", c.alpha.get_str()},
            {"beta", c.beta.get_str()},
            {"x", detail::chain_json(c.x)},
            {"v", detail::chain_json(c.v)}};
  if (c.theta_constrained) {
    j["y"] = detail::chain_json(c.y);
    j["w"] = detail::chain_json(c.w);
  }
  return j;
}

inline FullnessCertificate certificate_from_json(const json& j) {
  FullnessCertificate c;
  c.role = j.at("role").get<std::string>();
  c.q = j.at("q").get<int>();
  c.theta_constrained = j.at("theta_constrained").get<bool>();
  c.theta = parse_theta(j.at("theta").get<std::string>());
  c.alpha = mpq_class(j.at("alpha").get<std::string>());
  c.beta = mpq_class(j.at("beta").get<std::string>());
  c.x = detail::chain_from(j.at("x"));
  c.v = detail::chain_from(j.at("v"));
  if (c.theta_constrained) {
    c.y = detail::chain_from(j.at("y"));
    c.w = detail::chain_from(j.at("w"));
  }
  return c;
}

inline json to_json(const RefinedSResult& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  json j = {{"link", r.link},
            {"components", r.components},
            {"characteristic", characteristic(r.field)},
            {"theta", to_string(r.theta)},
            {"s", r.s},
            {"r_plus", r.r_plus},
            {"s_plus", r.s_plus},
            {"certificates", certs}};
  if (!r.sweep.empty()) {
    json sw = json::array();
    for (const auto& l : r.sweep) sw.push_back({{"q", l.q}, {"plain_dim", l.plain_dim}, {"theta_dim", l.theta_dim}});
    j["sweep"] = sw;
  }
  return j;
}

inline RefinedSResult refined_from_json(const json& j) {
  RefinedSResult r;
  r.link = j.at("link").get<std::string>();
  r.components = j.at("components").get<int>();
  r.field = j.at("characteristic").get<int>() == 2 ? RingKind::F2 : RingKind::Rationals;
  r.theta = parse_theta(j.at("theta").get<std::string>());
  r.s = j.at("s").get<int>();
  r.r_plus = j.at("r_plus").get<int>();
  r.s_plus = j.at("s_plus").get<int>();
  for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
  if (j.contains("sweep"))
    for (const auto& l : j.at("sweep"))
      r.sweep.push_back({l.at("q").get<int>(), l.at("plain_dim").get<int>(), l.at("theta_dim").get<int>()});
  return r;
}

}  // namespace khs
