#include "bslab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

#include "bslab/errors.hpp"

namespace bslab {

namespace {

using nlohmann::json;

// Tracks which keys of an object were consumed so leftovers can be rejected.
class Scope {
 public:
  Scope(const json& j, std::string ctx) : j_(j), ctx_(std::move(ctx)) {
    if (!j_.is_object()) throw ConfigError(ctx_ + " must be a JSON object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& require(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) throw ConfigError(ctx_ + " requires field \"" + key + "\"");
    return *it;
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  // Call after all keys were claimed; anything else is a schema violation.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown key \"" + it.key() + "\" in " + ctx_);
  }

  std::string field(const std::string& key) const { return ctx_ + "." + key; }

 private:
  const json& j_;
  std::string ctx_;
  std::set<std::string> seen_;
};

long long get_int(const json& v, const std::string& field) {
  if (!v.is_number_integer())
    throw ConfigError(field + " must be an integer");
  return v.get<long long>();
}

double get_pos_double(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field + " must be a number");
  double d = v.get<double>();
  if (!(d > 0)) throw ConfigError(field + " must be positive");
  return d;
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field + " must be a string");
  return v.get<std::string>();
}

std::vector<long long> get_int_list(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ConfigError(field + " must be a nonempty array of integers");
  std::vector<long long> out;
  for (const auto& e : v) out.push_back(get_int(e, field));
  return out;
}

std::pair<long long, long long> get_range(const json& v, const std::string& field) {
  Scope s(v, field);
  long long lo = get_int(s.require("begin"), s.field("begin"));
  long long hi = get_int(s.require("end"), s.field("end"));
  s.finish();
  if (lo < 1 || hi < lo)
    throw ConfigError(field + " must satisfy 1 <= begin <= end");
  return {lo, hi};
}

std::vector<TestFunction> get_functions(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ConfigError(field + " must be a nonempty array");
  std::vector<TestFunction> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_test_function(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

EuclidConfig parse_euclid(Scope& top) {
  EuclidConfig cfg;
  {
    const json& fam = top.require("family");
    Scope s(fam, top.field("family"));
    cfg.family_kind = get_string(s.require("kind"), s.field("kind"));
    if (cfg.family_kind == "stretch_squeeze") {
      cfg.family = family_stretch_squeeze();
    } else if (cfg.family_kind == "dilation" || cfg.family_kind == "index_chain") {
      RatMat B = parse_rat_matrix(s.require("basis"), s.field("basis"));
      LatticeBasis L0(B);
      cfg.family = cfg.family_kind == "dilation" ? family_dilation(L0) : family_index_chain(L0);
    } else {
      throw ConfigError(s.field("kind") +
                        " must be one of stretch_squeeze, dilation, index_chain");
    }
    s.finish();
  }
  cfg.functions = get_functions(top.require("functions"), top.field("functions"));
  {
    const json& radii = top.require("radii");
    if (!radii.is_array() || radii.empty())
      throw ConfigError(top.field("radii") + " must be a nonempty array");
    for (size_t i = 0; i < radii.size(); ++i) {
      Rat r = parse_rat(radii[i], top.field("radii") + "[" + std::to_string(i) + "]");
      if (r <= 0) throw ConfigError(top.field("radii") + " entries must be positive");
      cfg.radii.push_back(r);
    }
  }
  std::tie(cfg.n_begin, cfg.n_end) = get_range(top.require("n"), top.field("n"));
  if (const json* t = top.optional("tail_tol"))
    cfg.tail_tol = get_pos_double(*t, top.field("tail_tol"));
  int d = cfg.family.member(cfg.n_begin).dim();
  for (const TestFunction& f : cfg.functions)
    if (f.dimension() != d)
      throw ConfigError(top.field("functions") + " dimension " +
                        std::to_string(f.dimension()) + " does not match lattice dimension " +
                        std::to_string(d));
  return cfg;
}

MarkedGroup parse_group(const json& v, const std::string& field) {
  Scope s(v, field);
  std::string kind = get_string(s.require("kind"), s.field("kind"));
  if (kind == "free") {
    long long rank = get_int(s.require("rank"), s.field("rank"));
    s.finish();
    if (rank < 1 || rank > 8) throw ConfigError(s.field("rank") + " must be in [1, 8]");
    return MarkedGroup::free_group(static_cast<int>(rank));
  }
  if (kind == "surface") {
    long long genus = get_int(s.require("genus"), s.field("genus"));
    s.finish();
    if (genus < 2 || genus > 4) throw ConfigError(s.field("genus") + " must be in [2, 4]");
    return MarkedGroup::surface_group(static_cast<int>(genus));
  }
  if (kind == "free_abelian") {
    long long rank = get_int(s.require("rank"), s.field("rank"));
    s.finish();
    if (rank < 1 || rank > 8) throw ConfigError(s.field("rank") + " must be in [1, 8]");
    return MarkedGroup::free_abelian(static_cast<int>(rank));
  }
  throw ConfigError(s.field("kind") + " must be one of free, surface, free_abelian");
}

SchreierConfig parse_schreier(Scope& top) {
  MarkedGroup group = parse_group(top.require("group"), top.field("group"));

  const json& sch = top.require("scheme");
  Scope s(sch, top.field("scheme"));
  std::string kind = get_string(s.require("kind"), s.field("kind"));
  bool absolute = false;
  if (const json* a = s.optional("absolute")) {
    if (!a->is_boolean()) throw ConfigError(s.field("absolute") + " must be a boolean");
    absolute = a->get<bool>();
  }

  auto build = [&]() -> SubgroupScheme {
    if (kind == "single_exponent") {
      long long coord = get_int(s.require("coord"), s.field("coord"));
      s.finish();
      if (coord < 0 || coord >= group.ab_dim())
        throw ConfigError(s.field("coord") + " out of range for the group abelianization");
      return SubgroupScheme::single_exponent(group, static_cast<int>(coord), absolute);
    }
    if (kind == "homology_cover") {
      std::vector<int> free_coords;
      if (const json* fc = s.optional("free_coords"))
        for (long long c : get_int_list(*fc, s.field("free_coords")))
          free_coords.push_back(static_cast<int>(c));
      s.finish();
      return SubgroupScheme::homology_cover(group, free_coords, absolute);
    }
    if (kind == "explicit") {
      const json& chi = s.require("chi");
      if (!chi.is_array() || chi.empty())
        throw ConfigError(s.field("chi") + " must be a nonempty array of integer rows");
      std::vector<std::vector<long long>> rows;
      for (size_t i = 0; i < chi.size(); ++i)
        rows.push_back(get_int_list(chi[i], s.field("chi") + "[" + std::to_string(i) + "]"));
      std::vector<SchemeCoord> coords;
      const json& cs = s.require("coords");
      if (!cs.is_array() || cs.size() != rows.size())
        throw ConfigError(s.field("coords") + " must list one entry per chi row");
      for (size_t i = 0; i < cs.size(); ++i) {
        std::string cf = s.field("coords") + "[" + std::to_string(i) + "]";
        Scope c(cs[i], cf);
        std::string ck = get_string(c.require("kind"), c.field("kind"));
        SchemeCoord sc;
        if (ck == "free") {
          sc.kind = CoordKind::kFree;
        } else if (ck == "fixed") {
          sc.kind = CoordKind::kFixed;
          sc.value = get_int(c.require("value"), c.field("value"));
        } else if (ck == "scaled") {
          sc.kind = CoordKind::kScaled;
          sc.value = get_int(c.require("value"), c.field("value"));
        } else {
          throw ConfigError(c.field("kind") + " must be one of free, fixed, scaled");
        }
        c.finish();
        coords.push_back(sc);
      }
      s.finish();
      return SubgroupScheme(group, rows, coords, absolute);
    }
    throw ConfigError(s.field("kind") +
                      " must be one of single_exponent, homology_cover, explicit");
  };

  SchreierConfig cfg{build(), 1, 1, {}, 1000000};
  std::tie(cfg.n_begin, cfg.n_end) = get_range(top.require("n"), top.field("n"));
  for (long long r : get_int_list(top.require("r"), top.field("r"))) {
    if (r < 0 || r > 64) throw ConfigError(top.field("r") + " entries must be in [0, 64]");
    cfg.r_list.push_back(static_cast<int>(r));
  }
  if (const json* b = top.optional("ball_budget")) {
    cfg.ball_budget = get_int(*b, top.field("ball_budget"));
    if (cfg.ball_budget < 1) throw ConfigError(top.field("ball_budget") + " must be positive");
  }
  return cfg;
}

HypConfig parse_hyp(Scope& top) {
  HypConfig cfg;
  // Monte Carlo sampling: the seed is mandatory so runs are reproducible.
  cfg.seed = static_cast<unsigned long long>(get_int(top.require("seed"), top.field("seed")));
  cfg.samples = get_int(top.require("samples"), top.field("samples"));
  if (cfg.samples < 1 || cfg.samples > 10000000)
    throw ConfigError(top.field("samples") + " must be in [1, 1e7]");
  if (const json* ballj = top.optional("ball")) {
    Scope s(*ballj, top.field("ball"));
    cfg.cutoff = get_pos_double(s.require("cutoff"), s.field("cutoff"));
    if (const json* m = s.optional("margin"))
      cfg.margin = get_pos_double(*m, s.field("margin"));
    if (const json* b = s.optional("budget")) {
      cfg.ball_budget = get_int(*b, s.field("budget"));
      if (cfg.ball_budget < 1) throw ConfigError(s.field("budget") + " must be positive");
    }
    s.finish();
  }
  if (const json* c = top.optional("covers")) {
    cfg.covers = get_int_list(*c, top.field("covers"));
    for (long long n : cfg.covers)
      if (n < 1) throw ConfigError(top.field("covers") + " entries must be >= 1");
  }
  if (const json* k = top.optional("kernel")) {
    if (!k->is_boolean()) throw ConfigError(top.field("kernel") + " must be a boolean");
    cfg.include_kernel = k->get<bool>();
  }
  if (cfg.covers.empty() && !cfg.include_kernel)
    throw ConfigError("hyperbolic config requires \"covers\" or \"kernel\": true");
  {
    const json& radii = top.require("radii");
    if (!radii.is_array() || radii.empty())
      throw ConfigError(top.field("radii") + " must be a nonempty array");
    for (const auto& e : radii)
      cfg.radii.push_back(get_pos_double(e, top.field("radii")));
  }
  if (const json* b = top.optional("band"))
    cfg.band = get_pos_double(*b, top.field("band"));
  return cfg;
}

ZCoverConfig parse_zcover(Scope& top) {
  RatMat B = parse_rat_matrix(top.require("basis"), top.field("basis"));
  LatticeBasis basis(B);
  std::vector<long long> chi = get_int_list(top.require("chi"), top.field("chi"));
  ZCoverConfig cfg{ZCoverScheme(basis, chi), {}, {}, 0, 16, 1e-10, 20000000};
  cfg.functions = get_functions(top.require("functions"), top.field("functions"));
  for (const TestFunction& f : cfg.functions)
    if (f.dimension() != basis.dim())
      throw ConfigError(top.field("functions") + " dimension does not match the basis");
  cfg.n_list = get_int_list(top.require("n"), top.field("n"));
  for (long long n : cfg.n_list)
    if (n < 1) throw ConfigError(top.field("n") + " entries must be >= 1");
  if (const json* m = top.optional("quadrature_m")) {
    cfg.quadrature_m = get_int(*m, top.field("quadrature_m"));
    if (cfg.quadrature_m < 1) throw ConfigError(top.field("quadrature_m") + " must be >= 1");
  }
  if (const json* g = top.optional("theta_grid")) {
    cfg.theta_grid = get_int(*g, top.field("theta_grid"));
    if (cfg.theta_grid < 1 || cfg.theta_grid > 100000)
      throw ConfigError(top.field("theta_grid") + " must be in [1, 1e5]");
  }
  if (const json* t = top.optional("tail_tol"))
    cfg.tail_tol = get_pos_double(*t, top.field("tail_tol"));
  if (const json* b = top.optional("budget")) {
    cfg.budget = get_int(*b, top.field("budget"));
    if (cfg.budget < 1) throw ConfigError(top.field("budget") + " must be positive");
  }
  return cfg;
}

// FNV-1a 64-bit over the canonical (key-sorted) serialization.
std::string hash_of(const json& doc) {
  std::string s = doc.dump();
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

}  // namespace

Rat parse_rat(const nlohmann::json& v, const std::string& field) {
  if (v.is_number_integer()) return rat_of(v.get<long long>(), 1);
  if (v.is_number()) {
    // an exactly integral double (e.g. 2.0) is exact; anything else is not
    double x = v.get<double>();
    if (std::trunc(x) == x && std::abs(x) <= 9.007199254740992e15)
      return rat_of(static_cast<long long>(x), 1);
    throw ConfigError(field + ": non-integral numbers are inexact; write \"p/q\" instead");
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      Rat r(s);
      if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw ConfigError(field + ": cannot parse rational \"" + s + "\"");
    }
  }
  throw ConfigError(field + " must be an integer or a \"p/q\" string");
}

TestFunction parse_test_function(const nlohmann::json& v, const std::string& field) {
  Scope s(v, field);
  std::string kind = get_string(s.require("kind"), s.field("kind"));
  if (kind != "bspline") throw ConfigError(s.field("kind") + " must be \"bspline\"");
  long long k = get_int(s.require("k"), s.field("k"));
  if (k < 2 || k > 32) throw ConfigError(s.field("k") + " must be in [2, 32]");
  const nlohmann::json& a = s.require("a");
  if (!a.is_array() || a.empty())
    throw ConfigError(s.field("a") + " must be a nonempty array");
  RatVec scales;
  for (size_t i = 0; i < a.size(); ++i) {
    Rat ai = parse_rat(a[i], s.field("a") + "[" + std::to_string(i) + "]");
    if (ai <= 0) throw ConfigError(s.field("a") + " entries must be positive");
    scales.push_back(ai);
  }
  s.finish();
  return TestFunction(static_cast<int>(k), scales);
}

RatMat parse_rat_matrix(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ConfigError(field + " must be a nonempty array of rows");
  int rows = static_cast<int>(v.size());
  int cols = -1;
  for (const auto& row : v) {
    if (!row.is_array() || row.empty())
      throw ConfigError(field + " rows must be nonempty arrays");
    if (cols < 0)
      cols = static_cast<int>(row.size());
    else if (cols != static_cast<int>(row.size()))
      throw ConfigError(field + " rows must all have the same length");
  }
  RatMat M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      M.at(i, j) = parse_rat(v[i][j], field + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]");
  return M;
}

ParsedConfig parse_config(const nlohmann::json& doc) {
  ParsedConfig out;
  out.raw = doc;
  out.hash = hash_of(doc);
  Scope top(doc, "config");
  out.model = get_string(top.require("model"), "config.model");
  if (const json* o = top.optional("out")) out.out_dir = get_string(*o, "config.out");
  if (out.model == "euclid") {
    out.euclid = parse_euclid(top);
  } else if (out.model == "schreier") {
    out.schreier = parse_schreier(top);
  } else if (out.model == "hyperbolic") {
    out.hyp = parse_hyp(top);
  } else if (out.model == "zcover") {
    out.zcover = parse_zcover(top);
  } else {
    throw ConfigError("config.model must be one of euclid, schreier, hyperbolic, zcover");
  }
  top.finish();
  return out;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace bslab
