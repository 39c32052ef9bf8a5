#include "l1adm/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace l1adm {

namespace {

// Reads fields of one JSON object and rejects keys nobody asked for, so a
// misspelled option fails loudly instead of being ignored.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string where) : j_(j), where_(std::move(where))
  {
    if (!j_.is_object()) { throw InvalidParameter(where_ + ": expected a JSON object"); }
  }

  bool has(const std::string& key)
  {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  template <class T>
  T get(const std::string& key, T fallback)
  {
    if (!has(key)) { return fallback; }
    return convert<T>(key);
  }

  template <class T>
  std::optional<T> optional(const std::string& key)
  {
    if (!has(key)) { return std::nullopt; }
    return convert<T>(key);
  }

  template <class T>
  T required(const std::string& key)
  {
    if (!has(key)) { throw InvalidParameter(where_ + ": missing required key '" + key + "'"); }
    return convert<T>(key);
  }

  const Json& child(const std::string& key)
  {
    if (!has(key)) { throw InvalidParameter(where_ + ": missing required key '" + key + "'"); }
    return j_.at(key);
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void finish() const
  {
    for (const auto& item : j_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw InvalidParameter(where_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  template <class T>
  T convert(const std::string& key)
  {
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidParameter(where_ + "." + key + ": " + e.what());
    }
  }

  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Json noise_to_json(const NoiseSpec& n)
{
  Json j;
  j["sigma"] = n.sigma;
  j["snr_db"] = n.snr_db ? Json(*n.snr_db) : Json(nullptr);
  j["impulse_fraction"] = n.impulse_fraction;
  return j;
}

NoiseSpec noise_from_json(const Json& j, const std::string& where)
{
  ObjectReader r(j, where);
  NoiseSpec n;
  n.sigma = r.get<double>("sigma", 0.0);
  n.snr_db = r.optional<double>("snr_db");
  n.impulse_fraction = r.get<double>("impulse_fraction", 0.0);
  r.finish();
  return n;
}

std::string lower(std::string_view s)
{
  std::string out(s);
  for (char& c : out) { c = static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }
  return out;
}

}  // namespace

Json to_json(const SolveConfig& c)
{
  Json op;
  op["kind"] = std::string(to_string(c.op.kind));
  op["rows"] = c.op.rows;
  op["cols"] = c.op.cols;
  if (!c.op.file.empty()) { op["file"] = c.op.file; }
  if (!c.op.row_indices.empty()) { op["row_indices"] = c.op.row_indices; }
  if (c.op.sign_seed) { op["sign_seed"] = *c.op.sign_seed; }
  op["seed"] = c.op.seed;

  Json data;
  if (!c.data.b_file.empty()) { data["b"] = c.data.b_file; }
  if (!c.data.x_true_file.empty()) { data["x_true"] = c.data.x_true_file; }
  data["k"] = c.data.k;
  data["noise"] = noise_to_json(c.data.noise);
  data["seed"] = c.data.seed;

  Json model;
  model["family"] = lower(to_string(c.model.family));
  model["nonneg"] = c.model.nonneg;
  model["param"] = c.model.param;
  if (!c.weights_file.empty()) { model["weights"] = c.weights_file; }

  Json solver;
  solver["name"] = c.solver.name;
  if (c.solver.beta) { solver["beta"] = *c.solver.beta; }
  if (c.solver.gamma) { solver["gamma"] = *c.solver.gamma; }
  if (c.solver.tau) { solver["tau"] = *c.solver.tau; }
  solver["eps"] = c.solver.eps;
  solver["max_iter"] = c.solver.max_iter;
  solver["stop"] = std::string(to_string(c.solver.stop));
  solver["enforce_step_guard"] = c.solver.enforce_step_guard;

  return Json{{"operator", op}, {"data", data}, {"model", model}, {"solver", solver}};
}

SolveConfig solve_config_from_json(const Json& j)
{
  SolveConfig c;
  ObjectReader top(j, "config");

  ObjectReader op(top.child("operator"), top.path("operator"));
  c.op.kind = operator_kind_from_string(op.required<std::string>("kind"));
  c.op.rows = op.get<Index>("rows", 0);
  c.op.cols = op.get<Index>("cols", 0);
  c.op.file = op.get<std::string>("file", "");
  c.op.row_indices = op.get<std::vector<Index>>("row_indices", {});
  c.op.sign_seed = op.optional<std::uint64_t>("sign_seed");
  c.op.seed = op.get<std::uint64_t>("seed", 1);
  op.finish();

  if (top.has("data")) {
    ObjectReader data(top.child("data"), top.path("data"));
    c.data.b_file = data.get<std::string>("b", "");
    c.data.x_true_file = data.get<std::string>("x_true", "");
    c.data.k = data.get<Index>("k", 0);
    if (data.has("noise")) { c.data.noise = noise_from_json(data.child("noise"), data.path("noise")); }
    c.data.seed = data.get<std::uint64_t>("seed", 1);
    data.finish();
  }

  if (top.has("model")) {
    ObjectReader model(top.child("model"), top.path("model"));
    c.model.family = model_family_from_string(model.get<std::string>("family", "bp"));
    c.model.nonneg = model.get<bool>("nonneg", false);
    c.model.param = model.get<double>("param", 0.0);
    c.weights_file = model.get<std::string>("weights", "");
    model.finish();
  }

  if (top.has("solver")) {
    ObjectReader solver(top.child("solver"), top.path("solver"));
    c.solver.name = lower(solver.get<std::string>("name", "dadm"));
    c.solver.beta = solver.optional<double>("beta");
    c.solver.gamma = solver.optional<double>("gamma");
    c.solver.tau = solver.optional<double>("tau");
    c.solver.eps = solver.get<double>("eps", 1e-6);
    c.solver.max_iter = solver.get<int>("max_iter", 1000);
    c.solver.stop = stop_rule_from_string(solver.get<std::string>("stop", "relchg"));
    c.solver.enforce_step_guard = solver.get<bool>("enforce_step_guard", true);
    solver.finish();
  }
  top.finish();
  return c;
}

Json to_json(const ExperimentConfig& c)
{
  Json cells = Json::array();
  for (const auto& cell : c.cells) { cells.push_back({cell.m_ratio, cell.k_ratio}); }
  Json cases = Json::array();
  for (const auto& e : c.cases) {
    cases.push_back({{"name", e.name},
                     {"family", lower(to_string(e.family))},
                     {"mu", e.mu},
                     {"snr_db", e.snr_db ? Json(*e.snr_db) : Json(nullptr)}});
  }
  return Json{{"protocol", std::string(to_string(c.protocol))},
              {"seed", c.seed},
              {"trials", c.trials},
              {"n", c.n},
              {"operator", std::string(to_string(c.op_kind))},
              {"eps", c.eps},
              {"max_iter", c.max_iter},
              {"cells", cells},
              {"solvers", c.solvers},
              {"sigma", c.sigma},
              {"mu", c.mu},
              {"curve_solvers", c.curve_solvers},
              {"curve_iters", c.curve_iters},
              {"m", c.m},
              {"k", c.k},
              {"models", c.models},
              {"params", c.params},
              {"noise", noise_to_json(c.noise)},
              {"cases", cases}};
}

ExperimentConfig experiment_config_from_json(const Json& j)
{
  ObjectReader r(j, "experiment");
  ExperimentConfig c = default_experiment_config(protocol_from_string(r.required<std::string>("protocol")));
  c.seed = r.get<std::uint64_t>("seed", c.seed);
  c.trials = r.get<int>("trials", c.trials);
  c.n = r.get<Index>("n", c.n);
  if (r.has("operator")) { c.op_kind = operator_kind_from_string(r.required<std::string>("operator")); }
  c.eps = r.get<double>("eps", c.eps);
  c.max_iter = r.get<int>("max_iter", c.max_iter);
  if (r.has("cells")) {
    c.cells.clear();
    for (const auto& cell : r.child("cells")) {
      if (!cell.is_array() || cell.size() != 2) {
        throw InvalidParameter("experiment.cells: each cell is [m/n, k/m]");
      }
      c.cells.push_back({cell[0].get<double>(), cell[1].get<double>()});
    }
  }
  c.solvers = r.get<std::vector<std::string>>("solvers", c.solvers);
  c.sigma = r.get<double>("sigma", c.sigma);
  c.mu = r.get<double>("mu", c.mu);
  c.curve_solvers = r.get<std::vector<std::string>>("curve_solvers", c.curve_solvers);
  c.curve_iters = r.get<int>("curve_iters", c.curve_iters);
  c.m = r.get<Index>("m", c.m);
  c.k = r.get<Index>("k", c.k);
  c.models = r.get<std::vector<std::string>>("models", c.models);
  c.params = r.get<std::vector<double>>("params", c.params);
  if (r.has("noise")) { c.noise = noise_from_json(r.child("noise"), r.path("noise")); }
  if (r.has("cases")) {
    c.cases.clear();
    for (const auto& item : r.child("cases")) {
      ObjectReader e(item, r.path("cases[]"));
      EvoCase ec;
      ec.name = e.required<std::string>("name");
      ec.family = model_family_from_string(e.get<std::string>("family", "bp"));
      ec.mu = e.get<double>("mu", 0.0);
      ec.snr_db = e.optional<double>("snr_db");
      e.finish();
      c.cases.push_back(ec);
    }
  }
  r.finish();
  return c;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string config_hash(const Json& j)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical_dump(j)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json load_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot open config file " + path.string()); }
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

Json to_json(const RunRecord& run, bool with_history)
{
  auto optional_number = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["solver"] = run.solver;
  j["model"] = {{"family", lower(to_string(run.model.family))},
                {"nonneg", run.model.nonneg},
                {"param", run.model.param},
                {"weighted", run.model.weights.size() != 0}};
  j["status"] = std::string(to_string(run.status));
  if (!run.message.empty()) { j["message"] = run.message; }
  j["iterations"] = run.iterations;
  j["aat"] = run.aat;
  j["seconds"] = run.seconds;
  j["beta"] = run.beta;
  j["gamma"] = run.gamma;
  j["tau"] = run.tau;
  j["rel_res"] = run.rel_res;
  j["final"] = {{"r_p", run.final.r_p},
                {"r_d", run.final.r_d},
                {"gap", run.final.gap},
                {"res", run.final.res},
                {"relchg", run.final.relchg},
                {"objective", run.final.objective},
                {"relerr_pct", optional_number(run.final.relerr)},
                {"flags", run.final.flags}};
  if (with_history) {
    Json rows = Json::array();
    for (const auto& h : run.history) {
      rows.push_back({{"k", h.k},
                      {"relchg", h.relchg},
                      {"r_p", h.r_p},
                      {"r_d", h.r_d},
                      {"gap", h.gap},
                      {"res", h.res},
                      {"objective", h.objective},
                      {"relerr_pct", optional_number(h.relerr)},
                      {"aat", h.aat}});
    }
    j["history"] = rows;
  }
  return j;
}

}  // namespace l1adm
