#include "maxheat/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "maxheat/errors.hpp"
#include "maxheat/oracle.hpp"

namespace maxheat
{

using nlohmann::json;

namespace
{

const double kPi = std::acos(-1.0);

void require_object(const json &node, const std::string &path)
{
  if (!node.is_object())
  {
    throw ConfigError(path + " must be an object");
  }
}

void reject_unknown(const json &node, const std::string &path, const std::set<std::string> &allowed)
{
  require_object(node, path);
  for (const auto &item : node.items())
  {
    if (!allowed.count(item.key()))
    {
      throw ConfigError("unknown key " + (path.empty() ? "" : path + ".") + item.key());
    }
  }
}

json section(const json &doc, const std::string &key)
{
  if (!doc.contains(key))
  {
    return json::object();
  }
  return doc.at(key);
}

double number(const json &node, const std::string &key, const std::string &path, double fallback)
{
  if (!node.contains(key) || node.at(key).is_null())
  {
    return fallback;
  }
  const json &v = node.at(key);
  if (!v.is_number())
  {
    throw ConfigError(path + "." + key + " must be a number");
  }
  return v.get<double>();
}

double required_number(const json &node, const std::string &key, const std::string &path)
{
  if (!node.contains(key) || !node.at(key).is_number())
  {
    throw ConfigError(path + "." + key + " is required and must be a number");
  }
  return node.at(key).get<double>();
}

int integer(const json &node, const std::string &key, const std::string &path, int fallback)
{
  if (!node.contains(key) || node.at(key).is_null())
  {
    return fallback;
  }
  const json &v = node.at(key);
  if (!v.is_number_integer())
  {
    throw ConfigError(path + "." + key + " must be an integer");
  }
  return v.get<int>();
}

std::string text(const json &node, const std::string &key, const std::string &path,
                 const std::string &fallback)
{
  if (!node.contains(key) || node.at(key).is_null())
  {
    return fallback;
  }
  if (!node.at(key).is_string())
  {
    throw ConfigError(path + "." + key + " must be a string");
  }
  return node.at(key).get<std::string>();
}

bool boolean(const json &node, const std::string &key, const std::string &path, bool fallback)
{
  if (!node.contains(key) || node.at(key).is_null())
  {
    return fallback;
  }
  if (!node.at(key).is_boolean())
  {
    throw ConfigError(path + "." + key + " must be a boolean");
  }
  return node.at(key).get<bool>();
}

std::vector<double> number_list(const json &node, const std::string &key, const std::string &path)
{
  if (!node.contains(key) || !node.at(key).is_array())
  {
    throw ConfigError(path + "." + key + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const json &v : node.at(key))
  {
    if (!v.is_number())
    {
      throw ConfigError(path + "." + key + " must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Domain parse_domain(const json &in, json &out)
{
  reject_unknown(in, "domain", {"kind", "n", "width", "height"});
  const std::string kind = text(in, "kind", "domain", "rectangle");
  const int n = integer(in, "n", "domain", 64);
  out = {{"kind", kind}, {"n", n}};
  if (kind == "rectangle")
  {
    const double width = number(in, "width", "domain", 1.0);
    const double height = number(in, "height", "domain", 1.0);
    out["width"] = width;
    out["height"] = height;
    return Domain::rectangle(width, height, n);
  }
  if (kind == "annulus")
  {
    if (in.contains("width") || in.contains("height"))
    {
      throw ConfigError("domain.width/height do not apply to the annulus");
    }
    return Domain::annulus(n);
  }
  throw ConfigError("domain.kind must be \"rectangle\" or \"annulus\", got \"" + kind + "\"");
}

PhysicalConstants parse_constants(const json &in, json &out)
{
  reject_unknown(in, "constants", {"eps", "mu", "kappa"});
  PhysicalConstants c;
  c.eps = number(in, "eps", "constants", 1.0);
  c.mu = number(in, "mu", "constants", 1.0);
  c.kappa = number(in, "kappa", "constants", 1.0);
  c.validate();
  out = {{"eps", c.eps}, {"mu", c.mu}, {"kappa", c.kappa}};
  return c;
}

ConductivityModel parse_conductivity(const json &in, json &out)
{
  reject_unknown(in, "conductivity", {"kind", "params", "sigma0", "sigma1"});
  const std::string kind = text(in, "kind", "conductivity", "constant");
  const json params = section(in, "params");
  const std::string path = "conductivity.params";
  json params_out;
  ConductivityModel::Law law;
  double sigma0 = 0.0, sigma1 = 0.0;
  if (kind == "constant")
  {
    reject_unknown(params, path, {"value"});
    const double value = number(params, "value", path, 0.0);
    law = ConstantSigma{value};
    sigma0 = std::abs(value);
    params_out = {{"value", value}};
  }
  else if (kind == "affine_clamped")
  {
    reject_unknown(params, path, {"a", "b", "lo", "hi"});
    AffineClampedSigma c{required_number(params, "a", path), required_number(params, "b", path),
                         required_number(params, "lo", path), required_number(params, "hi", path)};
    law = c;
    sigma0 = std::max(std::abs(c.lo), std::abs(c.hi));
    sigma1 = std::abs(c.b);
    params_out = {{"a", c.a}, {"b", c.b}, {"lo", c.lo}, {"hi", c.hi}};
  }
  else if (kind == "tabulated")
  {
    reject_unknown(params, path, {"file", "xi", "sigma"});
    TabulatedSigma table;
    if (params.contains("file"))
    {
      if (params.contains("xi") || params.contains("sigma"))
      {
        throw ConfigError(path + ": give either file or xi/sigma arrays");
      }
      table = ConductivityModel::load_table(text(params, "file", path, ""));
    }
    else
    {
      table.xi = number_list(params, "xi", path);
      table.sigma = number_list(params, "sigma", path);
    }
    for (std::size_t k = 0; k < table.sigma.size(); ++k)
    {
      sigma0 = std::max(sigma0, std::abs(table.sigma[k]));
      if (k > 0 && table.xi[k] > table.xi[k - 1])
      {
        sigma1 = std::max(sigma1, std::abs(table.sigma[k] - table.sigma[k - 1]) /
                                      (table.xi[k] - table.xi[k - 1]));
      }
    }
    law = table;
    params_out = {{"xi", table.xi}, {"sigma", table.sigma}};
  }
  else
  {
    throw ConfigError("conductivity.kind must be constant, affine_clamped or tabulated");
  }
  sigma0 = number(in, "sigma0", "conductivity", sigma0);
  sigma1 = number(in, "sigma1", "conductivity", sigma1);
  out = {{"kind", kind}, {"params", params_out}, {"sigma0", sigma0}, {"sigma1", sigma1}};
  return ConductivityModel(std::move(law), sigma0, sigma1);
}

SourceG parse_source(const json &in, json &out)
{
  reject_unknown(in, "source", {"kind", "params"});
  const std::string kind = text(in, "kind", "source", "zero");
  if (kind == "zero")
  {
    if (in.contains("params") && !in.at("params").empty())
    {
      throw ConfigError("source.params does not apply to the zero source");
    }
    out = {{"kind", "zero"}};
    return SourceG::zero();
  }
  if (kind != "separable")
  {
    throw ConfigError("source.kind must be zero or separable");
  }
  const json params = section(in, "params");
  const std::string path = "source.params";
  reject_unknown(params, path, {"amplitude", "omega", "phase", "profile", "cx", "cy", "width"});
  SourceG::Separable p;
  p.amplitude = number(params, "amplitude", path, 1.0);
  p.omega = number(params, "omega", path, 0.0);
  p.phase = number(params, "phase", path, 0.0);
  const std::string profile = text(params, "profile", path, "mode");
  if (profile == "mode")
  {
    p.profile = SourceG::Profile::mode;
  }
  else if (profile == "gaussian")
  {
    p.profile = SourceG::Profile::gaussian;
  }
  else
  {
    throw ConfigError(path + ".profile must be mode or gaussian");
  }
  p.cx = number(params, "cx", path, 0.0);
  p.cy = number(params, "cy", path, 0.0);
  p.width = number(params, "width", path, 1.0);
  out = {{"kind", "separable"},
         {"params",
          {{"amplitude", p.amplitude},
           {"omega", p.omega},
           {"phase", p.phase},
           {"profile", profile},
           {"cx", p.cx},
           {"cy", p.cy},
           {"width", p.width}}}};
  return SourceG::separable(p);
}

// Reads theta from a CSV with columns x,y,theta (the theta_final.csv format).
NodalField read_theta_csv(const std::string &path, const Domain &dom)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open initial.theta_file: " + path);
  }
  NodalField theta(dom);
  std::vector<std::uint8_t> seen(dom.node_count(), 0);
  std::string line;
  std::getline(in, line);  // header
  int line_no = 1;
  const double h = dom.h();
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
    {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, y = 0.0, v = 0.0;
    if (!(fields >> x >> y >> v))
    {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected x,y,theta");
    }
    const long i = std::lround((x - dom.x(0)) / h);
    const long j = std::lround((y - dom.y(0)) / h);
    if (i < 0 || j < 0 || i > dom.nx() || j > dom.ny() || std::abs(dom.x(int(i)) - x) > 1e-6 * h ||
        std::abs(dom.y(int(j)) - y) > 1e-6 * h)
    {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": point is not a grid node");
    }
    const std::size_t k = dom.node(int(i), int(j));
    theta[k] = v;
    seen[k] = 1;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
  {
    if (dom.interior(k) && !seen[k])
    {
      throw ConfigError(path + ": missing values for interior nodes");
    }
  }
  apply_dirichlet(theta, dom);
  return theta;
}

InitialData parse_initial(const json &in, const Domain &dom, json &out)
{
  reject_unknown(in, "initial", {"fields", "params", "theta", "theta_file"});
  InitialData data{NodalField(dom), FaceField(dom), NodalField(dom)};
  const std::string fields = text(in, "fields", "initial", "zero");
  const json params = section(in, "params");
  const std::string path = "initial.params";
  json params_out = json::object();
  if (fields == "zero")
  {
    reject_unknown(params, path, {});
  }
  else if (fields == "cavity_mode")
  {
    reject_unknown(params, path, {"amplitude"});
    const double amplitude = number(params, "amplitude", path, 1.0);
    data.d0 = cavity_mode_dz(dom, amplitude);
    params_out["amplitude"] = amplitude;
  }
  else if (fields == "annulus_b0")
  {
    reject_unknown(params, path, {});
    if (dom.kind() != DomainKind::annulus)
    {
      throw ConfigError("initial.fields = annulus_b0 requires domain.kind = annulus");
    }
    data.b0 = annulus_b0_faces(dom);
  }
  else if (fields == "uniform_b")
  {
    reject_unknown(params, path, {"bx", "by"});
    const double bx = number(params, "bx", path, 1.0);
    const double by = number(params, "by", path, 0.0);
    data.b0 = uniform_b(dom, bx, by);
    params_out = {{"bx", bx}, {"by", by}};
  }
  else
  {
    throw ConfigError("initial.fields must be zero, cavity_mode, annulus_b0 or uniform_b");
  }
  out = {{"fields", fields}, {"params", params_out}};

  if (in.contains("theta_file"))
  {
    if (in.contains("theta"))
    {
      throw ConfigError("give either initial.theta or initial.theta_file");
    }
    const std::string file = text(in, "theta_file", "initial", "");
    data.theta0 = read_theta_csv(file, dom);
    out["theta_file"] = file;
    return data;
  }
  const std::string theta = text(in, "theta", "initial", "zero");
  if (theta == "cavity_mode")
  {
    data.theta0 = cavity_mode_dz(dom, 1.0);
  }
  else if (theta != "zero")
  {
    throw ConfigError("initial.theta must be zero or cavity_mode");
  }
  out["theta"] = theta;
  return data;
}

}  // namespace

NodalField cavity_mode_dz(const Domain &dom, double amplitude)
{
  NodalField dz(dom);
  const double x0 = dom.x(0), y0 = dom.y(0);
  const double lx = dom.x(dom.nx()) - x0, ly = dom.y(dom.ny()) - y0;
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      const std::size_t k = dom.node(i, j);
      if (dom.interior(k))
      {
        dz[k] = amplitude * std::sin(kPi * (dom.x(i) - x0) / lx) * std::sin(kPi * (dom.y(j) - y0) / ly);
      }
    }
  }
  return dz;
}

FaceField annulus_b0_faces(const Domain &dom)
{
  FaceField b(dom);
  const double h = dom.h();
  for (int j = 0; j < dom.ny(); ++j)
  {
    for (int i = 0; i < dom.node_cols(); ++i)
    {
      b.x[dom.bx(i, j)] = oracle::annulus_b0_unchecked(dom.x(i), dom.y(j) + 0.5 * h).x;
    }
  }
  for (int j = 0; j < dom.node_rows(); ++j)
  {
    for (int i = 0; i < dom.nx(); ++i)
    {
      b.y[dom.by(i, j)] = oracle::annulus_b0_unchecked(dom.x(i) + 0.5 * h, dom.y(j)).y;
    }
  }
  return b;
}

FaceField uniform_b(const Domain &dom, double bx, double by)
{
  FaceField b(dom);
  std::fill(b.x.begin(), b.x.end(), bx);
  std::fill(b.y.begin(), b.y.end(), by);
  return b;
}

RunConfig parse_run_config(const json &doc)
{
  reject_unknown(doc, "", {"domain", "constants", "conductivity", "source", "initial", "time",
                           "solver", "output", "threads"});
  RunConfig run;
  json &norm = run.document;
  norm = json::object();

  CoupledConfig &cfg = run.coupled;
  cfg.domain = parse_domain(section(doc, "domain"), norm["domain"]);
  cfg.consts = parse_constants(section(doc, "constants"), norm["constants"]);
  cfg.model = parse_conductivity(section(doc, "conductivity"), norm["conductivity"]);
  cfg.source = parse_source(section(doc, "source"), norm["source"]);
  cfg.initial = parse_initial(section(doc, "initial"), cfg.domain, norm["initial"]);

  const json time = section(doc, "time");
  reject_unknown(time, "time", {"dt", "cfl_auto", "cfl_safety", "T_final"});
  cfg.t_final = required_number(time, "T_final", "time");
  cfg.cfl_safety = number(time, "cfl_safety", "time", 0.9);
  const bool has_dt = time.contains("dt") && !time.at("dt").is_null();
  const bool cfl_auto = boolean(time, "cfl_auto", "time", !has_dt);
  if (cfl_auto == has_dt)
  {
    throw ConfigError("time: give exactly one of dt or cfl_auto = true");
  }
  cfg.dt = has_dt ? number(time, "dt", "time", 0.0) : cfg.cfl_safety * cfl_limit(cfg.domain, cfg.consts);
  norm["time"] = {{"T_final", cfg.t_final}, {"cfl_safety", cfg.cfl_safety}, {"cfl_auto", cfl_auto}};
  norm["time"]["dt"] = has_dt ? json(cfg.dt) : json(nullptr);

  const json solver = section(doc, "solver");
  reject_unknown(solver, "solver", {"mode", "picard_tol", "picard_max_iter", "cg_tol", "cg_max_iter"});
  const std::string mode = text(solver, "mode", "solver", "monolithic");
  if (mode == "monolithic")
  {
    cfg.mode = SolverMode::monolithic;
  }
  else if (mode == "picard")
  {
    cfg.mode = SolverMode::picard;
  }
  else
  {
    throw ConfigError("solver.mode must be monolithic or picard");
  }
  cfg.picard_tol = number(solver, "picard_tol", "solver", 1e-8);
  cfg.picard_max_iter = integer(solver, "picard_max_iter", "solver", 100);
  cfg.cg_tol = number(solver, "cg_tol", "solver", 1e-10);
  cfg.cg_max_iter = integer(solver, "cg_max_iter", "solver", 0);
  norm["solver"] = {{"mode", mode},
                    {"picard_tol", cfg.picard_tol},
                    {"picard_max_iter", cfg.picard_max_iter},
                    {"cg_tol", cfg.cg_tol},
                    {"cg_max_iter", cfg.cg_max_iter}};

  const json output = section(doc, "output");
  reject_unknown(output, "output", {"dir", "snapshot_stride", "fields"});
  run.output.dir = text(output, "dir", "output", "out");
  run.output.snapshot_stride = integer(output, "snapshot_stride", "output", 0);
  run.output.fields = boolean(output, "fields", "output", false);
  if (run.output.snapshot_stride < 0)
  {
    throw ConfigError("output.snapshot_stride must be >= 0");
  }
  norm["output"] = {{"dir", run.output.dir},
                    {"snapshot_stride", run.output.snapshot_stride},
                    {"fields", run.output.fields}};

  const int threads = integer(doc, "threads", "", 0);
  if (threads < 0)
  {
    throw ConfigError("threads must be >= 0");
  }
  run.threads = threads;
  norm["threads"] = threads;

  cfg.validate();
  return run;
}

RunConfig load_run_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file: " + path);
  }
  json doc;
  try
  {
    doc = json::parse(in);
  }
  catch (const json::parse_error &err)
  {
    throw ConfigError(path + ": " + err.what());
  }
  return parse_run_config(doc);
}

namespace
{

struct Preset
{
  std::string description;
  json document;
};

const std::map<std::string, Preset> &presets()
{
  static const std::map<std::string, Preset> table = {
      {"annulus_static_b",
       {"annulus with the static curl-free B0, D0 = 0: constant energy, nonzero steady temperature",
        {{"domain", {{"kind", "annulus"}, {"n", 128}}},
         {"conductivity", {{"kind", "constant"}, {"params", {{"value", 1.0}}}}},
         {"initial", {{"fields", "annulus_b0"}}},
         {"time", {{"cfl_auto", true}, {"T_final", 1.0}}}}}},
      {"square_uniform_b",
       {"unit square with B0 = (1, 0), D0 = 0: E = 1/2 exactly, torsion-shaped steady temperature",
        {{"domain", {{"kind", "rectangle"}, {"n", 128}}},
         {"conductivity", {{"kind", "constant"}, {"params", {{"value", 1.0}}}}},
         {"initial", {{"fields", "uniform_b"}, {"params", {{"bx", 1.0}, {"by", 0.0}}}}},
         {"time", {{"cfl_auto", true}, {"T_final", 2.0}}}}}},
      {"cavity_mode",
       {"lossless unit-square cavity, Dz0 = sin(pi x) sin(pi y): conserved energy",
        {{"domain", {{"kind", "rectangle"}, {"n", 128}}},
         {"conductivity", {{"kind", "constant"}, {"params", {{"value", 0.0}}}}},
         {"initial", {{"fields", "cavity_mode"}}},
         {"time", {{"cfl_auto", true}, {"T_final", 9.0}}}}}},
      {"dissipative_cavity",
       {"cavity mode with constant conductivity 0.5: monotone energy decay",
        {{"domain", {{"kind", "rectangle"}, {"n", 128}}},
         {"conductivity", {{"kind", "constant"}, {"params", {{"value", 0.5}}}}},
         {"initial", {{"fields", "cavity_mode"}}},
         {"time", {{"cfl_auto", true}, {"T_final", 2.0}}}}}},
      {"zero_data",
       {"all initial data and sources zero: the solution vanishes identically",
        {{"domain", {{"kind", "rectangle"}, {"n", 32}}},
         {"conductivity", {{"kind", "affine_clamped"},
                           {"params", {{"a", 0.5}, {"b", 0.1}, {"lo", 0.0}, {"hi", 5.0}}}}},
         {"initial", {{"fields", "zero"}}},
         {"time", {{"cfl_auto", true}, {"T_final", 0.5}}}}}},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names()
{
  std::vector<std::string> names;
  for (const auto &[name, preset] : presets())
  {
    names.push_back(name);
  }
  return names;
}

std::string preset_description(const std::string &name)
{
  const auto it = presets().find(name);
  if (it == presets().end())
  {
    throw ConfigError("unknown preset: " + name);
  }
  return it->second.description;
}

json preset_document(const std::string &name)
{
  const auto it = presets().find(name);
  if (it == presets().end())
  {
    throw ConfigError("unknown preset: " + name);
  }
  return it->second.document;
}

}  // namespace maxheat
