#include "freecorr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "freecorr/errors.hpp"

namespace freecorr {

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json optional_numbers(const std::vector<std::optional<double>>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x ? number(*x) : Json(nullptr));
  return a;
}

void dump(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: out += format_number(j.get<double>()); break;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Numeric arrays stay on one line.
      bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      break;
    }
    default: out += j.dump(); break;
  }
}

double get_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  out += '\n';
  return out;
}

Json envelope(const std::string& command, const Json& body) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json to_json(const ExpansionResult& r) {
  Json j;
  j["side"] = side_name(r.side);
  j["scales"] = r.scales;
  Json orders = Json::array();
  for (const auto& o : r.orders) orders.push_back(numbers(o));
  j["orders"] = orders;
  if (!r.parts.empty()) {
    Json parts;
    for (const auto& [name, v] : r.parts) parts[name] = numbers(v);
    j["parts"] = parts;
  }
  return j;
}

Json to_json(const CumulantTable& t) {
  Json j;
  j["order"] = t.order;
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(numbers(r));
  j["rows"] = rows;
  return j;
}

Json to_json(const SpectralMeasure& m) {
  Json j;
  j["kind"] = measure_kind_name(m.kind);
  j["lo"] = number(m.lo);
  j["hi"] = number(m.hi);
  j["grid"] = numbers(m.grid);
  j["density"] = numbers(m.density);
  if (!m.weights.empty()) j["weights"] = numbers(m.weights);
  Json atoms = Json::array();
  for (const auto& a : m.atoms) atoms.push_back(Json{{"x", number(a.x)}, {"w", number(a.w)}});
  j["atoms"] = atoms;
  j["continuous_mass"] = number(m.continuous_mass());
  j["total_mass"] = number(m.total_mass());
  if (m.contour_mass) j["contour_mass"] = number(*m.contour_mass);
  return j;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["instances"] = r.instances;
  j["max_rel_err"] = number(r.max_rel_err);
  j["exact"] = r.exact;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const MCReport& r) {
  Json j;
  j["k"] = r.k;
  j["n_grid"] = r.n_grid;
  j["mean"] = numbers(r.mean);
  j["stderr"] = numbers(r.stderr_);
  j["coef"] = numbers(r.coef);
  Json cov = Json::array();
  for (const auto& row : r.cov) cov.push_back(numbers(row));
  j["cov"] = cov;
  j["prediction"] = optional_numbers(r.prediction);
  j["z"] = optional_numbers(r.z);
  j["chi2"] = number(r.chi2);
  j["dof"] = r.dof;
  return j;
}

Json to_json(const GenusRow& r) {
  return Json{{"k", r.k},
              {"a", number(r.a)},
              {"a_se", number(r.a_se)},
              {"c", number(r.c)},
              {"c_se", number(r.c_se)},
              {"catalan", number(r.catalan)},
              {"engine_c", number(r.engine_c)},
              {"exact_c", number(r.exact_c)},
              {"pass", r.pass}};
}

Json to_json(const EnsembleSpec& spec) {
  Json comps = Json::array();
  for (const auto& c : spec.components) {
    Json j;
    j["kind"] = component_kind_name(c.kind);
    switch (c.kind) {
      case ComponentKind::gue: j["sigma"] = number(c.sigma); break;
      case ComponentKind::wishart: j["ratio"] = number(c.ratio); break;
      case ComponentKind::diag_spikes: j["thetas"] = numbers(c.thetas); break;
      case ComponentKind::haar_fixed_spectrum:
        j["spectrum"] = Json{{"kind", c.spectrum.kind},
                             {"a", number(c.spectrum.a)},
                             {"b", number(c.spectrum.b)},
                             {"p", number(c.spectrum.p)},
                             {"values", numbers(c.spectrum.values)}};
        break;
    }
    j["scale"] = number(c.scale_exponent);
    j["conjugate"] = c.conjugate;
    comps.push_back(j);
  }
  return Json{{"components", comps}};
}

std::string expansion_csv(const ExpansionResult& r) {
  std::ostringstream os;
  os << "k";
  for (size_t j = 0; j < r.orders.size(); ++j) os << ",order" << j;
  for (const auto& p : r.parts) os << ',' << p.first;
  os << '\n';
  const size_t K = r.orders.empty() ? 0 : r.orders.front().size();
  for (size_t k = 0; k < K; ++k) {
    os << k + 1;
    for (const auto& o : r.orders) os << ',' << csv_number(o[k]);
    for (const auto& p : r.parts) os << ',' << csv_number(p.second[k]);
    os << '\n';
  }
  return os.str();
}

std::string cumulants_csv(const CumulantTable& t) {
  std::ostringstream os;
  os << "n";
  for (size_t i = 0; i < t.rows.size(); ++i) os << ",kappa" << i;
  os << '\n';
  for (int n = 0; n < t.length(); ++n) {
    os << n + 1;
    for (const auto& r : t.rows) os << ',' << csv_number(r[n]);
    os << '\n';
  }
  return os.str();
}

std::string measure_csv(const SpectralMeasure& m) {
  std::ostringstream os;
  os << "type,x,value\n";
  for (size_t i = 0; i < m.grid.size(); ++i) os << "density," << csv_number(m.grid[i]) << ',' << csv_number(m.density[i]) << '\n';
  for (const auto& a : m.atoms) os << "atom," << csv_number(a.x) << ',' << csv_number(a.w) << '\n';
  return os.str();
}

std::string check_csv(const std::vector<CheckReport>& rs) {
  std::ostringstream os;
  os << "check,instances,max_rel_err,exact,pass\n";
  for (const auto& r : rs)
    os << r.check << ',' << r.instances << ',' << csv_number(r.max_rel_err) << ',' << (r.exact ? "true" : "false") << ','
       << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string mc_csv(const std::vector<MCReport>& rs) {
  std::ostringstream os;
  size_t p = 0;
  for (const auto& r : rs) p = std::max(p, r.coef.size());
  os << "k";
  for (size_t j = 0; j < p; ++j) os << ",coef" << j << ",se" << j << ",pred" << j << ",z" << j;
  os << ",chi2,dof\n";
  auto opt = [](const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); };
  for (const auto& r : rs) {
    os << r.k;
    for (size_t j = 0; j < p; ++j) {
      if (j < r.coef.size())
        os << ',' << csv_number(r.coef[j]) << ',' << csv_number(r.coef_se(static_cast<int>(j))) << ','
           << opt(r.prediction[j]) << ',' << opt(r.z[j]);
      else
        os << ",,,,";
    }
    os << ',' << csv_number(r.chi2) << ',' << r.dof << '\n';
  }
  return os.str();
}

std::string genus_csv(const std::vector<GenusRow>& rows) {
  std::ostringstream os;
  os << "k,a,a_se,catalan,c,c_se,engine_c,exact_c,pass\n";
  for (const auto& r : rows)
    os << r.k << ',' << csv_number(r.a) << ',' << csv_number(r.a_se) << ',' << csv_number(r.catalan) << ','
       << csv_number(r.c) << ',' << csv_number(r.c_se) << ',' << csv_number(r.engine_c) << ','
       << csv_number(r.exact_c) << ',' << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

Series series_from_json(const Json& j, double default_center) {
  try {
    if (j.is_array()) return Series(default_center, j.get<std::vector<double>>());
    double center = get_or(j, "center", default_center);
    return Series(center, j.at("coeffs").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw DomainError(std::string("series JSON: ") + e.what());
  }
}

AsymptoticInput input_from_json(const Json& j) {
  try {
    AsymptoticInput in;
    std::string side = j.value("side", std::string("hc"));
    if (side == "hc") in.side = Side::hc;
    else if (side == "schur") in.side = Side::schur;
    else throw DomainError("input JSON: side must be hc or schur");
    in.epsilon = get_or(j, "epsilon", 1.0);
    for (const auto& s : j.at("series")) in.series.push_back(series_from_json(s, in.center()));
    in.validate();
    return in;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("input JSON: ") + e.what());
  }
}

EnsembleSpec ensemble_from_json(const Json& j) {
  try {
    EnsembleSpec spec;
    const Json& comps = j.is_array() ? j : j.at("components");
    for (const auto& c : comps) {
      Component comp;
      comp.kind = parse_component_kind(c.at("kind").get<std::string>());
      comp.sigma = get_or(c, "sigma", 1.0);
      comp.ratio = get_or(c, "ratio", 1.0);
      if (c.contains("thetas")) comp.thetas = c.at("thetas").get<std::vector<double>>();
      if (c.contains("spectrum")) {
        const Json& s = c.at("spectrum");
        comp.spectrum.kind = s.value("kind", std::string("uniform"));
        comp.spectrum.a = get_or(s, "a", 0.0);
        comp.spectrum.b = get_or(s, "b", 1.0);
        comp.spectrum.p = get_or(s, "p", 0.5);
        if (s.contains("values")) comp.spectrum.values = s.at("values").get<std::vector<double>>();
      }
      comp.scale_exponent = get_or(c, "scale", 0.0);
      comp.conjugate = c.value("conjugate", false);
      spec.components.push_back(std::move(comp));
    }
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("ensemble JSON: ") + e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << content;
}

}  // namespace freecorr
