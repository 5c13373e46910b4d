// freecorr command-line front end.
// Exit codes: 0 ok, 1 a check failed, 2 configuration error, 3 numeric failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "freecorr/errors.hpp"
#include "freecorr/io.hpp"
#include "freecorr/models.hpp"

using namespace freecorr;

namespace {

constexpr int kExitOk = 0, kExitCheck = 1, kExitConfig = 2, kExitNumeric = 3;

struct Common {
  std::string format = "json";
  std::string output;
  bool quiet = false;
};

struct InputOptions {
  std::string model;
  std::string input;  // JSON file with an AsymptoticInput
  std::vector<std::string> params;
  int kmax = 6;
  int order = -1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--output,-o", c.output, "Output file (default stdout)");
  app->add_flag("--quiet,-q", c.quiet, "Suppress the summary on stderr");
}

void add_input(CLI::App* app, InputOptions& in) {
  app->add_option("--model", in.model, "Named model (see 'examples')");
  app->add_option("--input", in.input, "JSON file with side, epsilon and series");
  app->add_option("--param", in.params, "Model parameter key=value (repeatable)");
  app->add_option("--kmax", in.kmax, "Largest moment index K");
  app->add_option("--order", in.order, "Correction order n (default: all the input provides)");
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("parameter '" + s + "' is not key=value");
    try {
      size_t used = 0;
      std::string value = s.substr(eq + 1);
      double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      p[s.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw DomainError("parameter '" + s + "' has a non-numeric value");
    }
  }
  return p;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw DomainError("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> v;
  for (const auto& s : split_list(text)) {
    try {
      v.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw DomainError("not a number: '" + s + "'");
    }
  }
  return v;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> v;
  for (const auto& s : split_list(text)) {
    try {
      size_t used = 0;
      v.push_back(std::stoi(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + s + "'");
    }
  }
  return v;
}

void emit(const Common& c, const Json& json, const std::string& csv) {
  const std::string text = c.format == "csv" ? csv : dump_json(json);
  if (c.output.empty()) std::cout << text;
  else write_text_file(c.output, text);
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

void note(const Common& c, const std::string& line) {
  if (!c.quiet) std::cerr << line << '\n';
}

void require_k(int K) {
  if (K < 1) throw DomainError("--kmax must be >= 1");
}

// Input from --model or --input, truncated to the requested order.
AsymptoticInput resolve_input(const InputOptions& in, Json& meta) {
  if (in.model.empty() == in.input.empty()) throw DomainError("give exactly one of --model or --input");
  AsymptoticInput input;
  if (!in.model.empty()) {
    Model m = build_model(in.model, parse_params(in.params), in.kmax);
    input = m.input;
    meta["model"] = m.name;
    Json p = Json::object();
    for (const auto& [k, v] : m.params) p[k] = v;
    meta["params"] = p;
  } else {
    if (!in.params.empty()) throw DomainError("--param only applies to --model");
    input = input_from_json(read_json_file(in.input));
    meta["input"] = in.input;
  }
  if (in.order >= 0) {
    if (in.order > input.n()) throw DomainError("--order exceeds the orders the input provides");
    input.series.resize(in.order + 1);
  }
  return input;
}

int cmd_moments(const Common& c, const InputOptions& in) {
  require_k(in.kmax);
  Json meta;
  AsymptoticInput input = resolve_input(in, meta);
  ExpansionResult r = expand(input, in.kmax);
  Json body = meta;
  body["K"] = in.kmax;
  body["epsilon"] = input.epsilon;
  merge(body, to_json(r));
  emit(c, envelope("moments", body), expansion_csv(r));
  note(c, "moments: " + std::to_string(r.orders.size()) + " orders, K = " + std::to_string(in.kmax));
  return kExitOk;
}

int cmd_cumulants(const Common& c, const InputOptions& in) {
  require_k(in.kmax);
  Json meta;
  AsymptoticInput input = resolve_input(in, meta);
  CumulantTable t;
  if (input.side == Side::hc) {
    t = hc_cumulant_table(input.series, in.kmax);
  } else {
    if (input.n() != 1) throw DomainError("cumulants: Schur inputs need exactly Psi and Phi");
    t = quantized_cumulants(input.series[0], input.series[1], in.kmax);
  }
  Json body = meta;
  body["side"] = side_name(input.side);
  body["K"] = in.kmax;
  merge(body, to_json(t));
  emit(c, envelope("cumulants", body), cumulants_csv(t));
  note(c, "cumulants: order " + std::to_string(t.order) + ", K = " + std::to_string(in.kmax));
  return kExitOk;
}

struct DensityOptions {
  std::string catalog;
  std::string mode = "correction";
  int points = 2000;
  double eta = 1e-3;
};

int cmd_density(const Common& c, const InputOptions& in, const DensityOptions& d) {
  Json body;
  SpectralMeasure m;
  if (!d.catalog.empty()) {
    if (!in.model.empty()) throw DomainError("give one of --catalog or --model");
    Params p = parse_params(in.params);
    m = catalog(d.catalog, p, d.points);
    body["catalog"] = d.catalog;
    Json pj = Json::object();
    for (const auto& [k, v] : p) pj[k] = v;
    body["params"] = pj;
    body["source"] = "closed-form";
  } else {
    if (in.model.empty()) throw DomainError("density needs --catalog or --model");
    Model model = build_model(in.model, parse_params(in.params), std::max(in.kmax, 1));
    if (!model.kfunction) throw DomainError("model '" + in.model + "' has no reconstructor input");
    KFunction kf = *model.kfunction;
    kf.mode = d.mode == "lln" ? KMode::lln : KMode::correction;
    ReconstructOptions opt;
    opt.eta = d.eta;
    m = reconstruct_density(kf, d.points, opt);
    body["model"] = model.name;
    Json pj = Json::object();
    for (const auto& [k, v] : model.params) pj[k] = v;
    body["params"] = pj;
    body["mode"] = d.mode;
    body["source"] = "stieltjes";
  }
  merge(body, to_json(m));
  emit(c, envelope("density", body), measure_csv(m));
  std::ostringstream os;
  os << "density: " << m.grid.size() << " points, " << m.atoms.size() << " atoms";
  for (const auto& a : m.atoms) os << " (" << format_number(a.x) << ", " << format_number(a.w) << ")";
  note(c, os.str());
  return kExitOk;
}

struct VerifyOptions {
  std::string check = "all";
  std::string lambda, x, u;
  int k = 2;
  bool numeric = false;
  int instances = 50;
  std::uint64_t seed = 7;
};

int cmd_verify(const Common& c, const VerifyOptions& v) {
  std::vector<CheckReport> reports;
  const bool any_point = !v.lambda.empty() || !v.x.empty() || !v.u.empty();
  auto want = [&](const std::string& name) { return v.check == "all" || v.check == name; };
  if (want("dk")) {
    if (!v.lambda.empty() && !v.x.empty()) {
      reports.push_back(check_dk_eigenrelation(parse_doubles(v.lambda), parse_doubles(v.x), v.k));
    } else if (!any_point) {
      reports.push_back(random_dk_batch(v.instances, 4, 3, v.seed));
    } else if (v.check == "dk") {
      throw DomainError("dk needs both --lambda and --x");
    }
  }
  if (want("dk-schur")) {
    if (!v.lambda.empty()) {
      auto lambda = parse_ints(v.lambda);
      std::vector<BigRational> u;
      if (v.u.empty()) u = default_schur_points(static_cast<int>(lambda.size()));
      else
        for (const auto& s : split_list(v.u)) u.push_back(parse_rational(s));
      reports.push_back(check_dk_schur_eigenrelation(lambda, u, v.k, !v.numeric));
    } else if (!any_point) {
      reports.push_back(exhaustive_schur_exact(3, 3, 3));
    }
  }
  if (want("dk-expansion")) {
    if (!v.x.empty()) {
      auto x = parse_doubles(v.x);
      reports.push_back(check_dk_expansion_equivalence(x, v.k, SeparableFunction::power_sum(static_cast<int>(x.size()), 2)));
    } else if (!any_point) {
      reports.push_back(random_expansion_batch(v.instances, 4, 3, v.seed));
    }
  }
  if (reports.empty()) throw DomainError("verify: nothing to check for the given options");
  bool pass = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    arr.push_back(to_json(r));
    note(c, "verify " + r.check + ": " + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.instances) +
                " instances, max rel err " + format_number(r.max_rel_err) + ")");
  }
  Json body;
  body["pass"] = pass;
  body["reports"] = arr;
  emit(c, envelope("verify", body), check_csv(reports));
  return pass ? kExitOk : kExitCheck;
}

struct McOptions {
  std::string ensemble;
  std::string model;
  std::vector<std::string> params;
  int kmax = 4;
  std::string ngrid;
  int samples = 0;  // 0: 2000, or 20000 for the genus check
  std::uint64_t seed = 20240501;
  int orders = 1;
  bool expensive = false;
  bool dense = false;
  bool genus = false;
  double max_z = 3.0;
};

int cmd_mc(const Common& c, const McOptions& o) {
  FitOptions fo = o.genus ? genus_defaults() : FitOptions{};
  if (!o.ngrid.empty()) fo.n_grid = parse_ints(o.ngrid);
  if (o.samples != 0) fo.samples = o.samples;
  fo.seed = o.seed;
  fo.fast_path = !o.dense;
  if (!o.genus) {
    fo.orders = o.orders;
    fo.expensive = o.expensive;
  }
  Json body;
  body["seed"] = o.seed;
  body["samples"] = fo.samples;
  body["n_grid"] = fo.n_grid;
  if (o.genus) {
    auto rows = genus_check(o.kmax, fo);
    Json arr = Json::array();
    bool pass = true;
    for (const auto& r : rows) {
      arr.push_back(to_json(r));
      pass = pass && r.pass;
    }
    body["genus"] = arr;
    body["pass"] = pass;
    emit(c, envelope("mc", body), genus_csv(rows));
    note(c, std::string("mc genus check: ") + (pass ? "pass" : "FAIL"));
    return pass ? kExitOk : kExitCheck;
  }
  EnsembleSpec spec;
  if (!o.ensemble.empty() == !o.model.empty()) throw DomainError("give exactly one of --ensemble or --model");
  if (!o.ensemble.empty()) {
    Json j = o.ensemble.front() == '@' ? read_json_file(o.ensemble.substr(1)) : parse_json_text(o.ensemble);
    spec = ensemble_from_json(j);
  } else {
    Model m = build_model(o.model, parse_params(o.params), o.kmax);
    if (!m.ensemble) throw DomainError("model '" + o.model + "' has no sampleable ensemble");
    spec = *m.ensemble;
    body["model"] = m.name;
  }
  body["ensemble"] = to_json(spec);
  auto reports = fit_expansion(spec, o.kmax, fo);
  bool pass = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    pass = pass && r.consistent(o.max_z);
  }
  body["max_z"] = o.max_z;
  body["pass"] = pass;
  body["reports"] = arr;
  emit(c, envelope("mc", body), mc_csv(reports));
  note(c, std::string("mc: ") + (pass ? "all z-scores within " : "some z-score exceeds ") + format_number(o.max_z));
  return pass ? kExitOk : kExitCheck;
}

int cmd_examples(const Common& c) {
  Json arr = Json::array();
  std::ostringstream csv;
  csv << "model,side,defaults,description\n";
  for (const auto& m : model_catalog()) {
    Json p = Json::object();
    std::string defaults;
    for (const auto& [k, v] : m.defaults) {
      p[k] = v;
      defaults += (defaults.empty() ? "" : ";") + k + "=" + format_number(v);
    }
    arr.push_back(Json{{"name", m.name}, {"side", side_name(m.side)}, {"defaults", p}, {"description", m.description}});
    csv << m.name << ',' << side_name(m.side) << ',' << defaults << ",\"" << m.description << "\"\n";
  }
  Json cat = Json::array();
  for (const auto& n : catalog_names()) cat.push_back(n);
  emit(c, envelope("examples", Json{{"models", arr}, {"catalog", cat}}), csv.str());
  return kExitOk;
}

// Turns a JSON config into extra flags for options absent from the command line.
std::vector<std::string> config_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  std::vector<std::string> out;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  if (path.empty()) return out;
  Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw DomainError("config: top level must be an object");
  static const std::set<std::string> commands{"moments", "cumulants", "density", "verify", "mc", "examples"};
  bool has_command = !out.empty() && commands.count(out.front());
  if (!has_command) {
    if (!cfg.contains("command")) throw DomainError("config: no command given");
    out.insert(out.begin(), cfg.at("command").get<std::string>());
  }
  std::set<std::string> given;
  for (const auto& a : out)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& key = it.key();
    if (key == "command" || given.count(key)) continue;
    const Json& v = it.value();
    auto scalar = [](const Json& e) {
      if (e.is_string()) return e.get<std::string>();
      if (e.is_number_integer()) return std::to_string(e.get<long long>());
      if (e.is_number()) return format_number(e.get<double>());
      if (e.is_object() || e.is_array()) return e.dump();
      throw DomainError("config: unsupported value");
    };
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back("--" + key);
    } else if (key == "param" && v.is_object()) {
      for (auto p = v.begin(); p != v.end(); ++p) {
        out.push_back("--param");
        out.push_back(p.key() + "=" + scalar(p.value()));
      }
    } else if (v.is_array() && key != "ensemble") {
      for (const auto& e : v) {
        out.push_back("--" + key);
        out.push_back(scalar(e));
      }
    } else {
      out.push_back("--" + key);
      out.push_back(scalar(v));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments, corrections and correction measures of large random matrices", "freecorr"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON file with a \"command\" key and option values");

  Common c;
  InputOptions in;
  auto* moments = app.add_subcommand("moments", "LLN moments and 1/N corrections");
  add_common(moments, c);
  add_input(moments, in);

  auto* cumulants = app.add_subcommand("cumulants", "Cumulant table of an input");
  add_common(cumulants, c);
  add_input(cumulants, in);

  DensityOptions d;
  auto* density = app.add_subcommand("density", "Limit or correction measure");
  add_common(density, c);
  add_input(density, in);
  density->add_option("--catalog", d.catalog, "Closed-form measure name");
  density->add_option("--mode", d.mode, "Reconstruct the limit or the correction")->check(CLI::IsMember({"lln", "correction"}));
  density->add_option("--points", d.points, "Grid size");
  density->add_option("--eta", d.eta, "Imaginary offset");

  VerifyOptions v;
  auto* verify = app.add_subcommand("verify", "Operator identity checks");
  add_common(verify, c);
  verify->add_option("--check", v.check, "Which identity")->check(CLI::IsMember({"all", "dk", "dk-schur", "dk-expansion"}));
  verify->add_option("--lambda", v.lambda, "Comma-separated lambda or signature");
  verify->add_option("--x", v.x, "Comma-separated evaluation point");
  verify->add_option("--u", v.u, "Comma-separated rational Schur points (p/q)");
  verify->add_option("--k", v.k, "Operator index");
  verify->add_flag("--numeric", v.numeric, "Schur check in floating point instead of exact rationals");
  verify->add_option("--instances", v.instances, "Random instances per batch");
  verify->add_option("--seed", v.seed, "Batch seed");

  McOptions mo;
  auto* mc = app.add_subcommand("mc", "Monte Carlo fit of the 1/N expansion");
  add_common(mc, c);
  mc->add_option("--ensemble", mo.ensemble, "Ensemble JSON text or @file");
  mc->add_option("--model", mo.model, "Named model with a sampleable ensemble");
  mc->add_option("--param", mo.params, "Model parameter key=value (repeatable)");
  mc->add_option("--kmax", mo.kmax, "Largest moment index");
  mc->add_option("--ngrid", mo.ngrid, "Comma-separated matrix sizes");
  mc->add_option("--samples", mo.samples, "Samples per size (default 2000, genus 20000)");
  mc->add_option("--seed", mo.seed, "Seed");
  mc->add_option("--orders", mo.orders, "Fit orders (1 or 2)");
  mc->add_flag("--expensive", mo.expensive, "Allow order-2 fits");
  mc->add_flag("--dense", mo.dense, "Always sample dense matrices");
  mc->add_flag("--genus", mo.genus, "GUE genus-expansion check");
  mc->add_option("--max-z", mo.max_z, "Largest accepted |z|");

  auto* examples = app.add_subcommand("examples", "List named models and closed-form measures");
  add_common(examples, c);

  try {
    auto args = config_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (moments->parsed()) return cmd_moments(c, in);
    if (cumulants->parsed()) return cmd_cumulants(c, in);
    if (density->parsed()) return cmd_density(c, in, d);
    if (verify->parsed()) return cmd_verify(c, v);
    if (mc->parsed()) return cmd_mc(c, mo);
    if (examples->parsed()) return cmd_examples(c);
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}
