#pragma once

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "khs/khs.hpp"

namespace khs::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kInternalError = 3, kVerifyFailed = 4 };

/// Raised when an internal cross-check (certificate, oracle) fails.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string link;
  std::string pd;
  std::string file;
  int characteristic = 2;
  std::string theta;  // empty: sq1 over F2, zero over Q
  std::string format = "json";
  bool oracle = false;
  bool sweep = false;
  int threads = 1;

  ThetaOperation theta_op() const {
    if (characteristic != 0 && characteristic != 2) throw std::invalid_argument("--char must be 0 or 2");
    const RingKind f = characteristic == 2 ? RingKind::F2 : RingKind::Rationals;
    const ThetaKind k = theta.empty() ? (characteristic == 2 ? ThetaKind::Sq1 : ThetaKind::Zero) : parse_theta(theta);
    ThetaOperation t{k, f};
    t.validate();
    return t;
  }
};

struct Input {
  std::string name;
  OrientedLinkDiagram diagram;
};

inline Input resolve_input(const RunConfig& c) {
  const int given = !c.link.empty() + !c.pd.empty() + !c.file.empty();
  if (given != 1) throw ParseError("exactly one of --link, --pd, --file is required");
  if (!c.link.empty()) return {c.link, builtin(c.link)};
  if (!c.pd.empty()) return {"pd", parse_pd(c.pd)};
  std::ifstream in(c.file);
  if (!in) throw ParseError("cannot read '" + c.file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return {c.file, parse_pd(ss.str())};
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

/// Content-addressed store of refined results under $KHS_CACHE_DIR.
class ResultCache {
 public:
  explicit ResultCache(std::ostream& err) {
    const char* dir = std::getenv("KHS_CACHE_DIR");
    if (!dir || !*dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto probe = std::filesystem::path(dir) / ".probe";
    std::ofstream t(probe);
    if (ec || !t) {
      err << "warning: cache directory '" << dir << "' is not writable; continuing uncached\n";
      return;
    }
    t.close();
    std::filesystem::remove(probe, ec);
    dir_ = dir;
  }

  bool enabled() const { return !dir_.empty(); }

  static std::string key(const OrientedLinkDiagram& d, const ThetaOperation& t) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0')
       << fnv1a(serialize(d) + "|" + std::to_string(characteristic(t.field)) + "|" + to_string(t.kind));
    return os.str();
  }

  std::optional<RefinedSResult> get(const std::string& k) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(std::filesystem::path(dir_) / (k + ".json"));
    if (!in) return std::nullopt;
    try {
      return refined_from_json(json::parse(in));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void put(const std::string& k, const RefinedSResult& r) const {
    if (!enabled()) return;
    const auto path = std::filesystem::path(dir_) / (k + ".json");
    const auto tmp = std::filesystem::path(dir_) / (k + ".tmp" + std::to_string(fnv1a(r.link) & 0xffff));
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << to_json(r).dump() << '\n';
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
  }

 private:
  std::string dir_;
};

/// Runs f(0..n-1) over up to `threads` workers; callers write results by index.
inline void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

inline void check_certificates(const LinkComplexes& lc, const RefinedSResult& r, const ThetaOperation& t) {
  if (lc.diagram.empty()) return;
  std::string why;
  auto run = [&](const auto& engine) {
    for (const auto& c : r.certificates)
      if (!engine.validate(c, &why)) throw InternalError("certificate '" + c.role + "' at q=" + std::to_string(c.q) + " failed: " + why);
  };
  if (t.field == RingKind::F2) run(RefinedEngine<F2>(lc, t));
  else run(RefinedEngine<mpq_class>(lc, t));
}

/// Refined invariants with certificates re-validated; with `oracle`, also
/// recomputed from the full cube and compared.
inline RefinedSResult compute_refined(const OrientedLinkDiagram& d, const ThetaOperation& t, bool oracle, bool sweep,
                                      HomologyTable* table = nullptr) {
  RefinedOptions o;
  o.theta = t;
  o.full_sweep = sweep;
  auto lc = prepare_complexes(d, LinkComplexes::Method::Reduced);
  auto r = refined_s(lc, o);
  check_certificates(lc, r, t);
  if (table) *table = khovanov_homology(lc, RingKind::Integers);
  if (oracle) {
    auto naive = prepare_complexes(d, LinkComplexes::Method::Naive);
    auto rn = refined_s(naive, o);
    check_certificates(naive, rn, t);
    if (rn.s != r.s || rn.r_plus != r.r_plus || rn.s_plus != r.s_plus)
      throw InternalError("oracle: full-cube invariants differ from the reduced pipeline");
    if (table && khovanov_homology(naive, RingKind::Integers) != *table)
      throw InternalError("oracle: full-cube homology differs from the reduced pipeline");
  }
  return r;
}

inline json sq1_ranks(const OrientedLinkDiagram& d, const HomologyTable& t) {
  json out = json::array();
  if (d.empty()) return out;
  auto lc = prepare_complexes(d, LinkComplexes::Method::Reduced);
  std::set<std::pair<int, int>> targets;
  for (const auto& [k, e] : t.entries) {
    targets.insert(k);
    targets.insert({k.first + 1, k.second});
  }
  for (auto [i, q] : targets) {
    const int r = sq1(lc, i, q).rank();
    if (r > 0) out.push_back({{"i", i}, {"q", q}, {"rank", r}});
  }
  return out;
}

inline int cmd_compute(const RunConfig& c, std::ostream& out) {
  const ThetaOperation theta = c.theta_op();
  Input in = resolve_input(c);
  HomologyTable table;
  RefinedSResult r = compute_refined(in.diagram, theta, c.oracle, c.sweep, &table);
  if (c.format == "csv") {
    out << to_csv(table);
    return kOk;
  }
  json sq = theta.field == RingKind::F2 ? sq1_ranks(in.diagram, table) : json::array();
  if (c.format == "text") {
    out << "link: " << in.name << "\n"
        << "diagram: " << serialize(in.diagram) << "\n"
        << "crossings: " << in.diagram.crossing_count() << ", components: " << in.diagram.component_count() << "\n"
        << "Kh(Z):";
    for (const auto& [k, e] : table.entries) {
      out << " (" << k.first << "," << k.second << "):" << e.rank;
      for (const auto& x : e.torsion) out << "+Z/" << x.get_str();
    }
    out << "\n";
    if (!sq.empty()) {
      out << "Sq1 ranks:";
      for (const auto& e : sq) out << " ->(" << e["i"] << "," << e["q"] << "):" << e["rank"];
      out << "\n";
    }
    out << "field: " << to_string(theta.field) << ", theta: " << to_string(theta.kind) << "\n"
        << "s = " << r.s << ", r_plus = " << r.r_plus << ", s_plus = " << r.s_plus << "\n"
        << "certificates: " << r.certificates.size() << " (all re-validated)\n";
    return kOk;
  }
  if (c.format != "json") throw std::invalid_argument("unknown format '" + c.format + "'");
  json j = {{"input", in.name},
            {"diagram", serialize(in.diagram)},
            {"crossings", in.diagram.crossing_count()},
            {"components", in.diagram.component_count()},
            {"homology", to_json(table)}};
  if (theta.field == RingKind::F2) j["sq1"] = sq;
  j["refined"] = to_json(r);
  out << j.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

struct Report {
  std::string suite;
  json cases = json::array();
  std::string first_failure;

  void add(const std::string& name, bool ok, json detail) {
    detail["case"] = name;
    detail["passed"] = ok;
    if (!ok && first_failure.empty()) first_failure = name;
    cases.push_back(std::move(detail));
  }
  bool passed() const { return first_failure.empty(); }
  json to_json() const {
    json j = {{"suite", suite}, {"passed", passed()}, {"cases", cases}};
    if (!passed()) j["first_failure"] = first_failure;
    return j;
  }
};

inline int torus_formula(int n, int q) {
  const int p = n - q;
  return (p - q) * (p - q) - 2 * p + 1;
}

inline Report verify_prop1(int max_n, int threads) {
  Report rep;
  rep.suite = "prop1";
  std::vector<std::pair<int, int>> cases;
  for (int n = 2; n <= max_n; ++n)
    for (int q = 0; 2 * q <= n; ++q) cases.emplace_back(n, q);
  std::vector<json> details(cases.size());
  std::vector<bool> ok(cases.size());
  parallel_for(static_cast<int>(cases.size()), threads, [&](int i) {
    auto [n, q] = cases[i];
    const auto d = torus_link({n, q});
    const int expect = torus_formula(n, q);
    auto r2 = compute_refined(d, ThetaOperation::sq1(), false, false);
    auto rq = compute_refined(d, ThetaOperation::zero(RingKind::Rationals), false, false);
    bool good = r2.s == expect && rq.s == expect && r2.s_plus == r2.s;
    json j = {{"n", n}, {"q_reversed", q}, {"expected", expect}, {"s_F2", r2.s}, {"s_Q", rq.s}, {"s_plus_sq1", r2.s_plus}};
    if (n - q == q) {
      j["r_plus_sq1"] = r2.r_plus;
      good = good && r2.r_plus == r2.s;
    }
    auto kh = khovanov_homology(d, RingKind::Integers);
    const int lvl = r2.s - 1;
    const bool z0 = kh.rank(0, lvl) == 1 && kh.torsion(0, lvl).empty();
    const bool z1 = kh.is_zero(1, lvl);
    j["kh0_is_Z"] = z0;
    j["kh1_vanishes"] = z1;
    details[i] = j;
    ok[i] = good && z0 && z1;
  });
  for (std::size_t i = 0; i < cases.size(); ++i)
    rep.add("torus:" + std::to_string(cases[i].first) + ":" + std::to_string(cases[i].second), ok[i], details[i]);
  return rep;
}

inline Report verify_prop2(const std::string& corpus, int threads) {
  if (corpus != "small" && corpus != "full") throw std::invalid_argument("--corpus must be small or full");
  Report rep;
  rep.suite = "prop2";
  std::vector<std::string> ls = {"empty", "unknot", "hopf+", "trefoil"};
  if (corpus == "full") ls.insert(ls.end(), {"hopf-", "trefoil-", "figure8"});
  const std::vector<std::string> ts = {"torus:2:1", "torus:2:0"};
  std::vector<std::pair<std::string, std::string>> cases;
  for (const auto& l : ls)
    for (const auto& t : ts) cases.emplace_back(l, t);
  std::vector<DisjointUnionReport> out(cases.size());
  parallel_for(static_cast<int>(cases.size()), threads,
               [&](int i) { out[i] = disjoint_union_check(builtin(cases[i].first), builtin(cases[i].second)); });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& r = out[i];
    rep.add(cases[i].first + " + " + cases[i].second, r.passed(),
            {{"s_plus_union", r.s_plus_union},
             {"s_plus_L", r.s_plus_l},
             {"s_plus_T", r.s_plus_t},
             {"hypothesis_holds", r.hypothesis.holds()},
             {"hypothesis_q", r.hypothesis.q}});
  }
  return rep;
}

inline Report verify_dichotomy(int threads) {
  Report rep;
  rep.suite = "dichotomy";
  const auto names = regression_corpus();
  const std::vector<ThetaOperation> thetas = {ThetaOperation::sq1(), ThetaOperation::zero(RingKind::F2),
                                              ThetaOperation::zero(RingKind::Rationals)};
  std::vector<std::pair<std::string, ThetaOperation>> cases;
  for (const auto& n : names)
    for (const auto& t : thetas) cases.emplace_back(n, t);
  std::vector<RefinedSResult> res(cases.size());
  std::vector<int> comps(cases.size());
  parallel_for(static_cast<int>(cases.size()), threads, [&](int i) {
    const auto d = builtin(cases[i].first);
    comps[i] = d.component_count();
    res[i] = compute_refined(d, cases[i].second, false, !d.empty());
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& r = res[i];
    const auto& t = cases[i].second;
    auto in_pair = [&](int v) { return v == r.s || v == r.s + 2; };
    bool ok = in_pair(r.r_plus) && in_pair(r.s_plus);
    const int parity = ((comps[i] + 1) % 2 + 2) % 2;
    for (int v : {r.s, r.r_plus, r.s_plus}) ok = ok && ((v % 2 + 2) % 2 == parity);
    if (t.kind == ThetaKind::Zero) ok = ok && r.r_plus == r.s && r.s_plus == r.s;
    if (comps[i] == 0) ok = ok && r.s == 1 && r.r_plus == 1 && r.s_plus == 1;
    rep.add(cases[i].first + " " + to_string(t.field) + "/" + to_string(t.kind), ok,
            {{"s", r.s}, {"r_plus", r.r_plus}, {"s_plus", r.s_plus}});
  }
  return rep;
}

inline Report verify_adjunction_942() {
  Report rep;
  rep.suite = "adjunction-942";
  const int bound = adjunction_bound(1, 1, -1, 1);
  auto r = compute_refined(builtin("9_42"), ThetaOperation::sq1(), true, false);
  rep.add("9_42", bound == 0 && r.s_plus == 0 && adjunction_check(bound, r.s_plus),
          {{"bound", bound}, {"s", r.s}, {"s_plus_sq1", r.s_plus}, {"oracle", true}});
  return rep;
}

// ----------------------------------------------------------------- table

struct TableRow {
  std::string link;
  std::optional<int> n, q;
  int components = 0;
  RefinedSResult r;
};

inline std::vector<std::pair<std::string, OrientedLinkDiagram>> read_link_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::vector<std::pair<std::string, OrientedLinkDiagram>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    try {
      if (line.find('(') != std::string::npos) out.emplace_back("line:" + std::to_string(lineno), parse_pd(line));
      else out.emplace_back(line, builtin(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline int cmd_table(const RunConfig& c, const std::string& family, int max_n, std::ostream& out, std::ostream& err) {
  const ThetaOperation theta = c.theta_op();
  std::vector<TableRow> rows;
  std::vector<OrientedLinkDiagram> diagrams;
  if (!c.file.empty()) {
    for (auto& [name, d] : read_link_file(c.file)) {
      rows.push_back({name, {}, {}, d.component_count(), {}});
      diagrams.push_back(std::move(d));
    }
  } else if (family == "torus") {
    for (int n = 2; n <= max_n; ++n)
      for (int q = 0; 2 * q <= n; ++q) {
        auto d = torus_link({n, q});
        rows.push_back({"torus:" + std::to_string(n) + ":" + std::to_string(q), n, q, d.component_count(), {}});
        diagrams.push_back(std::move(d));
      }
  } else {
    throw std::invalid_argument("unknown family '" + family + "' (expected torus, or --file)");
  }
  ResultCache cache(err);
  parallel_for(static_cast<int>(rows.size()), c.threads, [&](int i) {
    const auto key = ResultCache::key(diagrams[i], theta);
    if (!c.oracle)
      if (auto hit = cache.get(key)) {
        rows[i].r = *hit;
        return;
      }
    rows[i].r = compute_refined(diagrams[i], theta, c.oracle, false);
    cache.put(key, rows[i].r);
  });
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  if (c.format == "json") {
    json a = json::array();
    for (const auto& r : rows) {
      json j = {{"link", r.link}, {"components", r.components}, {"characteristic", characteristic(theta.field)},
                {"theta", to_string(theta.kind)}, {"s", r.r.s}, {"r_plus", r.r.r_plus}, {"s_plus", r.r.s_plus}};
      if (r.n) {
        j["n"] = *r.n;
        j["q_reversed"] = *r.q;
      }
      a.push_back(j);
    }
    out << a.dump(2) << "\n";
  } else if (c.format == "csv" || c.format == "text") {
    out << "link,n,q_reversed,components,characteristic,theta,s,r_plus,s_plus\n";
    for (const auto& r : rows)
      out << r.link << ',' << opt(r.n) << ',' << opt(r.q) << ',' << r.components << ',' << characteristic(theta.field)
          << ',' << to_string(theta.kind) << ',' << r.r.s << ',' << r.r.r_plus << ',' << r.r.s_plus << '\n';
  } else {
    throw std::invalid_argument("unknown format '" + c.format + "'");
  }
  return kOk;
}

// ------------------------------------------------------------------ main

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov homology, Sq1 and refined s-invariants of links"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_input = [&](CLI::App* sc) {
    sc->add_option("--link", cfg.link, "builtin link, e.g. trefoil, 9_42, torus:3:1");
    sc->add_option("--pd", cfg.pd, "PD code, e.g. \"X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\"");
    sc->add_option("--file", cfg.file, "file with a PD code");
  };
  auto add_field = [&](CLI::App* sc) {
    sc->add_option("--char", cfg.characteristic, "field characteristic: 0 (Q, Lee) or 2 (F2, Bar-Natan)");
    sc->add_option("--theta", cfg.theta, "zero or sq1 (default: sq1 in char 2, zero in char 0)");
    sc->add_option("--threads", cfg.threads, "worker threads for batch commands");
  };

  auto* compute = app.add_subcommand("compute", "homology and refined invariants of one link");
  add_input(compute);
  add_field(compute);
  compute->add_option("--format", cfg.format, "json, csv (homology table) or text");
  compute->add_flag("--oracle", cfg.oracle, "cross-check against the full cube");
  compute->add_flag("--sweep", cfg.sweep, "sweep every filtration level");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  verify->fallthrough();
  verify->add_option("--threads", cfg.threads, "worker threads");
  int max_n = 3;
  std::string corpus = "small";
  auto* prop1 = verify->add_subcommand("prop1", "torus links: s and refined s agree with (p-q)^2-2p+1");
  prop1->add_option("--max-n", max_n, "largest n");
  auto* prop2 = verify->add_subcommand("prop2", "additivity of s_plus^Sq1 under disjoint union with T(2,2)");
  prop2->add_option("--corpus", corpus, "small or full");
  auto* dich = verify->add_subcommand("dichotomy", "r_plus, s_plus in {s, s+2} on the regression corpus");
  auto* adj = verify->add_subcommand("adjunction-942", "adjunction bound for 9_42");

  auto* table = app.add_subcommand("table", "invariants over a family of links");
  std::string family = "torus";
  int table_max_n = 3;
  add_field(table);
  table->add_option("--family", family, "torus");
  table->add_option("--max-n", table_max_n, "largest n for the torus family");
  table->add_option("--file", cfg.file, "file with one builtin name or PD code per line");
  table->add_option("--format", cfg.format, "csv or json")->default_str("csv");
  table->add_flag("--oracle", cfg.oracle, "cross-check against the full cube");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*compute) return cmd_compute(cfg, out);
    if (*table) {
      if (table->count("--format") == 0) cfg.format = "csv";
      return cmd_table(cfg, family, table_max_n, out, err);
    }
    Report rep;
    if (*prop1) rep = verify_prop1(max_n, cfg.threads);
    else if (*prop2) rep = verify_prop2(corpus, cfg.threads);
    else if (*dich) rep = verify_dichotomy(cfg.threads);
    else if (*adj) rep = verify_adjunction_942();
    out << rep.to_json().dump(2) << "\n";
    if (!rep.passed()) {
      err << "verify " << rep.suite << ": FAILED at " << rep.first_failure << "\n";
      return kVerifyFailed;
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DiagramError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace khs::cli
