#include "fsol/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fsol/errors.hpp"

namespace fsol {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  fail(ErrorCode::InvalidConfig, "config key '" + key + "': " + what);
}

const json& require(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) bad(key, "missing");
  return *it;
}

double as_number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad(key, "expected an integer");
  return j.get<int>();
}

cplx as_complex(const json& j, const std::string& key) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) bad(key, "expected [re, im]");
  return cplx(as_number(j[0], key), as_number(j[1], key));
}

VecN as_vec(const json& j, const std::string& key, int dim = 0) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) bad(key, "expected a vector of 1..3 numbers");
  VecN v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = as_number(j[i], key);
  if (dim && v.n != dim) bad(key, "dimension mismatch");
  return v;
}

MIdx as_midx(const json& j, const std::string& key, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) bad(key, "expected a multi-index");
  MIdx m;
  for (int i = 0; i < dim; ++i) {
    int v = as_int(j[i], key);
    if (v < 0) bad(key, "multi-index entries must be nonnegative");
    m[i] = v;
  }
  return m;
}

SymbolSpec parse_symbol(const json& root) {
  const int n = as_int(require(root, "dimension"), "dimension");
  if (n < 1 || n > kMaxDim) bad("dimension", "must be 1..3");

  const json& jc = require(root, "coeffs");
  if (!jc.is_array() || jc.size() < 2) bad("coeffs", "expected at least two coefficients");
  std::vector<cplx> coeffs;
  for (const json& c : jc) coeffs.push_back(as_complex(c, "coeffs"));

  EllipsoidalFrame frame;
  frame.q = MatN::identity(n);
  frame.w = VecN(n);
  for (int i = 0; i < n; ++i) frame.w[i] = 1.0;
  frame.b = VecN(n);
  frame.c = 0.0;
  if (root.contains("frame")) {
    const json& jf = root["frame"];
    if (jf.contains("Q")) {
      const json& q = jf["Q"];
      if (!q.is_array() || static_cast<int>(q.size()) != n) bad("frame.Q", "expected n rows");
      for (int i = 0; i < n; ++i) {
        VecN row = as_vec(q[i], "frame.Q", n);
        for (int j = 0; j < n; ++j) frame.q(i, j) = row[j];
      }
    }
    if (jf.contains("W")) frame.w = as_vec(jf["W"], "frame.W", n);
    if (jf.contains("b")) frame.b = as_vec(jf["b"], "frame.b", n);
    if (jf.contains("c")) frame.c = as_complex(jf["c"], "frame.c");
  }
  return SymbolSpec(n, std::move(coeffs), std::move(frame));
}

TestFunction parse_testfn(const json& j, int n) {
  TestFunction f(n);
  if (!j.is_array()) bad("testfn", "expected an atom list");
  for (const json& ja : j) {
    VecN center = ja.contains("center") ? as_vec(ja["center"], "testfn.center", n) : VecN(n);
    double width = ja.contains("width") ? as_number(ja["width"], "testfn.width") : 1.0;
    VecN freq = ja.contains("frequency") ? as_vec(ja["frequency"], "testfn.frequency", n) : VecN(n);
    GaussPolyAtom atom = make_gaussian(center, width, freq, 0.0);
    MultiPoly poly;
    if (ja.contains("monomials")) {
      for (const json& jm : ja["monomials"]) {
        poly.add_term(as_midx(require(jm, "alpha"), "testfn.monomials.alpha", n),
                      as_complex(require(jm, "coeff"), "testfn.monomials.coeff"));
      }
    } else {
      poly = MultiPoly::constant(1.0);
    }
    atom.poly = poly;
    f.atoms.push_back(std::move(atom));
  }
  return f;
}

SourceTerm parse_source(const json& j, int n) {
  SourceTerm s;
  s.dim = n;
  if (!j.is_array()) bad("source", "expected a term list");
  for (const json& jt : j) {
    const std::string type = require(jt, "type").get<std::string>();
    if (type == "point") {
      PointMass pm;
      pm.location = jt.contains("location") ? as_vec(jt["location"], "source.location", n) : VecN(n);
      pm.alpha = jt.contains("alpha") ? as_midx(jt["alpha"], "source.alpha", n) : MIdx{};
      pm.weight = jt.contains("weight") ? as_complex(jt["weight"], "source.weight") : cplx(1.0);
      s.terms.push_back(pm);
    } else if (type == "gaussian") {
      VecN center = jt.contains("center") ? as_vec(jt["center"], "source.center", n) : VecN(n);
      double width = jt.contains("width") ? as_number(jt["width"], "source.width") : 1.0;
      cplx weight = jt.contains("weight") ? as_complex(jt["weight"], "source.weight") : cplx(1.0);
      s.terms.push_back(make_gaussian(center, width, VecN(n), weight));
    } else {
      bad("source.type", "expected 'point' or 'gaussian'");
    }
  }
  return s;
}

}  // namespace

const SymbolSpec& RunConfig::require_symbol() const {
  if (!symbol) fail(ErrorCode::InvalidConfig, "config has no symbol block");
  return *symbol;
}

TestFunction RunConfig::default_testfn() const {
  if (!testfns.empty()) return testfns.front();
  const int n = require_symbol().dim();
  return TestFunction(n, make_gaussian(VecN(n), 1.0));
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.symbol = parse_symbol(root);
    const int n = cfg.symbol->dim();
    if (root.contains("testfn")) cfg.testfns.push_back(parse_testfn(root["testfn"], n));
    if (root.contains("source"))
      cfg.source = parse_source(root["source"], n);
    else
      cfg.source = SourceTerm::delta(n);

    if (root.contains("quadrature")) {
      const json& q = root["quadrature"];
      if (q.contains("sphere_order")) cfg.quadrature.sphere_order = as_int(q["sphere_order"], "quadrature.sphere_order");
      if (q.contains("panel_width")) cfg.quadrature.panel_width = as_number(q["panel_width"], "quadrature.panel_width");
      if (q.contains("nodes_per_panel")) cfg.quadrature.nodes_per_panel = as_int(q["nodes_per_panel"], "quadrature.nodes_per_panel");
      if (q.contains("tail_tol")) cfg.quadrature.tail_tol = as_number(q["tail_tol"], "quadrature.tail_tol");
      if (q.contains("error_budget")) cfg.quadrature.error_budget = as_number(q["error_budget"], "quadrature.error_budget");
    }
    if (root.contains("grid")) {
      const json& g = root["grid"];
      GridBlock gb;
      if (g.contains("extent")) gb.extent = as_number(g["extent"], "grid.extent");
      if (g.contains("resolution")) gb.resolution = as_int(g["resolution"], "grid.resolution");
      if (g.contains("ks")) {
        gb.ks.clear();
        for (const json& k : g["ks"]) gb.ks.push_back(as_int(k, "grid.ks"));
      }
      gb.axis = g.contains("axis") ? as_vec(g["axis"], "grid.axis", n) : VecN::unit(n, 0);
      cfg.grid = gb;
    }
    if (root.contains("surface")) {
      const json& sj = root["surface"];
      SurfaceBlock sb;
      sb.surface.center = sj.contains("center") ? as_vec(sj["center"], "surface.center", n) : VecN(n);
      sb.surface.radius = sj.contains("radius") ? as_number(sj["radius"], "surface.radius") : 1.0;
      if (n == 3)
        sb.surface.axis = sj.contains("axis") ? as_vec(sj["axis"], "surface.axis", n) : VecN{0, 0, 1};
      if (sj.contains("num_samples")) sb.num_samples = as_int(sj["num_samples"], "surface.num_samples");
      if (sj.contains("mollifier_width")) sb.mollifier_width = as_number(sj["mollifier_width"], "surface.mollifier_width");
      cfg.surface = sb;
    }
    if (root.contains("output")) {
      const json& o = root["output"];
      if (o.contains("path")) cfg.output.path = o["path"].get<std::string>();
      if (o.contains("format")) cfg.output.format = o["format"].get<std::string>();
    }
    return cfg;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidConfig, "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_full(cplx z) {
  return format_full(z.real()) + (z.imag() < 0 ? "" : "+") + format_full(z.imag()) + "i";
}

}  // namespace fsol
