#include "stochord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "stochord/bivariate_tp2.hpp"
#include "stochord/estimation.hpp"
#include "stochord/fixtures.hpp"
#include "stochord/io.hpp"
#include "stochord/kuiper.hpp"
#include "stochord/roc_odc.hpp"
#include "stochord/univariate_orders.hpp"

namespace stochord::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json witness_json(const Witness& w) {
  json coords = json::object();
  for (const auto& [k, v] : w.coords) coords[k] = num(v);
  return json{{"coords", coords}, {"lhs", num(w.lhs)}, {"rhs", num(w.rhs)}};
}

json verdict_json(const OrderVerdict& v) {
  return json{{"holds", v.holds},
              {"method", v.method},
              {"witness", v.witness ? witness_json(*v.witness) : json(nullptr)}};
}

json bivariate_json(const BivariateDist& r) {
  json pmf = json::array();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.cols(); ++j) row.push_back(r.at(i, j));
    pmf.push_back(row);
  }
  return json{{"x_support", r.x_support()}, {"y_support", r.y_support()}, {"pmf", pmf}};
}

std::vector<double> parse_reals(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number in list: '" + tok + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<std::uint64_t> parse_counts(const std::string& list) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(list);
  std::string tok;
  auto to_u = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("not a nonnegative integer: '" + s + "'");
    }
    return static_cast<std::uint64_t>(std::stoull(s));
  };
  while (std::getline(ss, tok, ',')) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_u(tok));
      continue;
    }
    const std::uint64_t lo = to_u(tok.substr(0, dots));
    const std::uint64_t hi = to_u(tok.substr(dots + 2));
    if (hi < lo) throw UsageError("empty range '" + tok + "'");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

struct Options {
  bool exact = false;
  double tolerance = 1e-12;
  std::string q1, q2, r, a, b, out, out_dir, method, flavor, rule, xs, ns, seeds;
  std::string fixture;
  bool verdict = false;
  std::uint64_t seed = 0;
  int restarts = 8;
  int sweeps = 20;
  std::size_t n = 0;
  double beta = 0.5;
  double x1 = 0.0, x2 = 0.0, lo = 0.0, hi = 0.0, step = 0.0;
  int k = 0;

  Comparison cmp() const { return exact ? Comparison::exact() : Comparison::tolerant(tolerance); }
};

// Collects the report envelope and routes output.
class Session {
 public:
  Session(std::string command, std::ostream& out) : command_(std::move(command)), out_(out) {}

  void input(const std::string& path) {
    inputs_.push_back(json{{"name", fs::path(path).filename().string()},
                           {"digest", io::file_digest(path)}});
  }

  json envelope(json result) const {
    return json{{"command", command_},
                {"version", kVersion},
                {"schema", kSchemaVersion},
                {"inputs", inputs_},
                {"result", std::move(result)}};
  }

  void emit(json result, const std::string& path = {}) const {
    const std::string text = envelope(std::move(result)).dump(2) + "\n";
    if (path.empty()) {
      out_ << text;
      return;
    }
    write_file(path, [&](std::ostream& os) { os << text; });
  }

  static void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io::InputError("cannot write '" + path + "'");
    body(os);
  }

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  std::ostream& out_;
  json inputs_ = json::array();
};

UnivariateDist load_q(Session& s, const std::string& path, const Options& o) {
  s.input(path);
  return io::read_univariate(path, o.exact);
}

BivariateDist load_r(Session& s, const std::string& path, const Options& o) {
  s.input(path);
  return io::read_bivariate(path, o.exact);
}

int verdict_exit(const OrderVerdict& v) { return v.holds ? kOk : kFails; }

int cmd_check_st(Session& s, const Options& o) {
  const auto q1 = load_q(s, o.q1, o);
  const auto q2 = load_q(s, o.q2, o);
  const OrderVerdict v = check_st(q1, q2, o.cmp());
  s.emit(verdict_json(v));
  return verdict_exit(v);
}

int cmd_check_lr(Session& s, const Options& o) {
  const auto q1 = load_q(s, o.q1, o);
  const auto q2 = load_q(s, o.q2, o);
  const LrMethod method = o.method.empty() ? LrMethod::ratio : parse_lr_method(o.method);
  const OrderVerdict v = check_lr(q1, q2, method, o.cmp());
  s.emit(verdict_json(v));
  return verdict_exit(v);
}

int cmd_roc(Session& s, const Options& o) {
  const auto q1 = load_q(s, o.q1, o);
  const auto q2 = load_q(s, o.q2, o);
  const RocCurve curve = roc_curve(q1, q2);
  json result{{"count", curve.points.size()}};
  if (o.out.empty()) {
    json pts = json::array();
    for (const auto& [u, v] : curve.points) pts.push_back(json::array({u, v}));
    result["points"] = pts;
  } else {
    Session::write_file(o.out, [&](std::ostream& os) {
      os << std::setprecision(17) << "u,v\n";
      for (const auto& [u, v] : curve.points) os << u << ',' << v << '\n';
    });
    result["output"] = fs::path(o.out).filename().string();
  }
  int code = kOk;
  if (o.verdict) {
    const OrderVerdict v = roc_is_concave(curve, o.cmp());
    result["concave"] = verdict_json(v);
    code = verdict_exit(v);
  }
  s.emit(result);
  return code;
}

int cmd_odc(Session& s, const Options& o) {
  const auto q1 = load_q(s, o.q1, o);
  const auto q2 = load_q(s, o.q2, o);
  const OdcCurve curve = odc_curve(q1, q2);
  json result{{"count", curve.alphas.size()}, {"absolutely_continuous", curve.absolutely_continuous}};
  if (o.out.empty()) {
    json pts = json::array();
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
      pts.push_back(json::array({curve.alphas[i], curve.values[i]}));
    }
    result["points"] = pts;
  } else {
    Session::write_file(o.out, [&](std::ostream& os) {
      os << std::setprecision(17) << "alpha,H\n";
      for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
        os << curve.alphas[i] << ',' << curve.values[i] << '\n';
      }
    });
    result["output"] = fs::path(o.out).filename().string();
  }
  int code = kOk;
  if (o.verdict) {
    const OrderVerdict v = odc_is_convex(curve, o.cmp());
    result["convex"] = verdict_json(v);
    code = verdict_exit(v);
  }
  s.emit(result);
  return code;
}

int cmd_tp2_check(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const Tp2Method method = o.method.empty() ? Tp2Method::pmf_allpairs : parse_tp2_method(o.method);
  const OrderVerdict v = check_tp2(r, method, o.cmp());
  s.emit(verdict_json(v));
  return verdict_exit(v);
}

int cmd_st_condition(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const OrderVerdict v = check_st_condition(r, o.cmp());
  s.emit(verdict_json(v));
  return verdict_exit(v);
}

int cmd_tp2_project(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  ProjectionConfig config;
  config.seed = o.seed;
  config.restarts = o.restarts;
  config.sweeps = o.sweeps;
  const ProjectionResult res = tp2_project(r, config);
  json history = json::array();
  for (const auto& h : res.trace.history) history.push_back(h);
  json result{{"distance", res.distance},
              {"tp2_certified", res.tp2_certified},
              {"source", res.source},
              {"seed", res.seed},
              {"trace",
               {{"restarts", res.trace.restarts},
                {"iterations", res.trace.iterations},
                {"best_per_restart", res.trace.best_per_restart},
                {"history", history}}},
              {"distribution", bivariate_json(res.distribution)}};
  s.emit(result, o.out);
  return kOk;
}

std::vector<double> eval_points(const Options& o, const BivariateDist& r) {
  return o.xs.empty() ? default_eval_grid(r) : parse_reals(o.xs);
}

int cmd_kernel(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const std::vector<double> xs = eval_points(o, r);
  Kernel k = [&] {
    if (o.flavor == "w" || o.flavor == "west") return kernel_west(r, xs);
    if (o.flavor == "e" || o.flavor == "east") return kernel_east(r, xs);
    if (o.flavor == "new") {
      const SelectionRule rule = o.rule.empty() ? SelectionRule::midpoint : parse_selection_rule(o.rule);
      return kernel_new(r, xs, rule, o.cmp());
    }
    throw UsageError("unknown kernel flavor '" + o.flavor + "'");
  }();
  json rows = json::array();
  for (std::size_t n = 0; n < k.eval_points.size(); ++n) {
    const UnivariateDist row = k.rows[n].canonical();
    json atoms = json::array();
    for (std::size_t j = 0; j < row.size(); ++j) {
      atoms.push_back(json::array({row.support()[j], row.probs()[j]}));
    }
    rows.push_back(json{{"x", k.eval_points[n]},
                        {"region", std::string(to_string(k.regions[n]))},
                        {"atoms", atoms}});
  }
  json result{{"flavor", std::string(to_string(k.flavor))}};
  if (k.flavor == KernelFlavor::modified) result["rule"] = o.rule.empty() ? "midpoint" : o.rule;
  if (o.out.empty()) {
    result["rows"] = rows;
  } else {
    Session::write_file(o.out, [&](std::ostream& os) {
      os << std::setprecision(17) << "x,region,y,prob\n";
      for (const auto& row : rows) {
        for (const auto& atom : row["atoms"]) {
          os << row["x"].get<double>() << ',' << row["region"].get<std::string>() << ','
             << atom[0].get<double>() << ',' << atom[1].get<double>() << '\n';
        }
      }
    });
    result["count"] = k.eval_points.size();
    result["output"] = fs::path(o.out).filename().string();
  }
  s.emit(result);
  return kOk;
}

int cmd_boundaries(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const Boundaries b = o.xs.empty() ? boundaries(r) : boundaries(r, parse_reals(o.xs));
  json result = json::object();
  if (o.out.empty()) {
    json pts = json::array();
    for (const auto& p : b.points) {
      pts.push_back(json{{"x", p.x},
                         {"s_nw", num(p.s_nw)},
                         {"s_se", num(p.s_se)},
                         {"in_range", p.in_range},
                         {"in_x_o", p.in_x_o}});
    }
    result["points"] = pts;
  } else {
    Session::write_file(o.out, [&](std::ostream& os) {
      os << std::setprecision(17) << "x,s_nw,s_se,in_range,in_x_o\n";
      for (const auto& p : b.points) {
        os << p.x << ',' << num(p.s_nw).dump() << ',' << num(p.s_se).dump() << ','
           << (p.in_range ? "true" : "false") << ',' << (p.in_x_o ? "true" : "false") << '\n';
      }
    });
    result["count"] = b.points.size();
    result["output"] = fs::path(o.out).filename().string();
  }
  s.emit(result);
  return kOk;
}

int cmd_kuiper(Session& s, const Options& o) {
  const auto a = load_r(s, o.a, o);
  const auto b = load_r(s, o.b, o);
  const KuiperMethod method = o.method.empty() ? KuiperMethod::kadane : parse_kuiper_method(o.method);
  const GridSignedMeasure sigma = GridSignedMeasure::difference(a, b);
  json result{{"method", std::string(to_string(method))}};
  if (o.exact) {
    if (!sigma.exact) throw UsageError("exact mode needs integer-weight inputs");
    const std::int64_t numerator = kuiper_norm_exact(sigma, method);
    result["value"] = static_cast<double>(numerator) / static_cast<double>(sigma.denominator);
    result["numerator"] = numerator;
    result["denominator"] = sigma.denominator;
  } else {
    result["value"] = kuiper_norm(sigma, method);
  }
  s.emit(result);
  return kOk;
}

int cmd_sample(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const Sample draws = sample(r, o.n, o.seed);
  json result{{"n", o.n}, {"seed", o.seed}, {"prng", "splitmix64"}};
  if (o.out.empty()) {
    json pts = json::array();
    for (const auto& [x, y] : draws) pts.push_back(json::array({x, y}));
    result["samples"] = pts;
  } else {
    Session::write_file(o.out, [&](std::ostream& os) {
      os << std::setprecision(17) << "x,y\n";
      for (const auto& [x, y] : draws) os << x << ',' << y << '\n';
    });
    result["output"] = fs::path(o.out).filename().string();
  }
  s.emit(result);
  return kOk;
}

int cmd_quantiles(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const QuantileFlavor flavor = parse_quantile_flavor(o.flavor);
  const QuantileCurve c = quantile_curve(r, o.beta, flavor, eval_points(o, r));
  json pts = json::array();
  for (const auto& [x, q] : c.points) pts.push_back(json::array({x, num(q)}));
  s.emit(json{{"beta", c.beta}, {"flavor", std::string(to_string(c.flavor))}, {"points", pts}},
         o.out);
  return kOk;
}

std::vector<std::size_t> sizes(const std::string& list) {
  std::vector<std::size_t> out;
  for (std::uint64_t v : parse_counts(list)) {
    if (v == 0) throw UsageError("sample sizes must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int cmd_converge_bracket(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const BracketReport rep = bracket_check(r, sizes(o.ns), parse_counts(o.seeds), o.beta, o.x1, o.x2);
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back(json{{"n", row.n},
                        {"seed", row.seed},
                        {"qn_x1_min", row.qn_x1_min},
                        {"qn_x1_max", row.qn_x1_max},
                        {"qn_x2_min", row.qn_x2_min},
                        {"qn_x2_max", row.qn_x2_max},
                        {"lower_ok", row.lower_ok},
                        {"upper_ok", row.upper_ok}});
  }
  json rates = json::array();
  for (const auto& [n, rate] : rep.pass_rate) rates.push_back(json{{"n", n}, {"pass_rate", rate}});
  s.emit(json{{"beta", rep.beta},
              {"x1", rep.x1},
              {"x2", rep.x2},
              {"qw_x1", rep.qw_x1},
              {"qe_x2", rep.qe_x2},
              {"slack", 0.0},
              {"rows", rows},
              {"pass_rate", rates}},
         o.out);
  return kOk;
}

int cmd_converge_uniform(Session& s, const Options& o) {
  const auto r = load_r(s, o.r, o);
  const UniformReport rep = uniform_convergence_check(
      r, o.beta, o.lo, o.hi, sizes(o.ns), parse_counts(o.seeds),
      o.xs.empty() ? std::vector<double>{} : parse_reals(o.xs));
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back(json{{"n", row.n}, {"seed", row.seed}, {"sup_distance", row.sup_distance}});
  }
  json per_n = json::array();
  for (const auto& [n, d] : rep.max_per_n) per_n.push_back(json{{"n", n}, {"max_sup_distance", d}});
  s.emit(json{{"beta", rep.beta},
              {"lo", rep.lo},
              {"hi", rep.hi},
              {"grid", rep.grid},
              {"rows", rows},
              {"max_per_n", per_n},
              {"nonincreasing", rep.nonincreasing}},
         o.out);
  return kOk;
}

int cmd_fixtures(Session& s, const Options& o) {
  const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  fs::create_directories(dir);
  json files = json::array();
  auto write_q = [&](const std::string& name, const UnivariateDist& q) {
    Session::write_file((dir / name).string(), [&](std::ostream& os) { io::write_univariate_csv(os, q); });
    files.push_back(name);
  };
  auto write_r = [&](const std::string& name, const BivariateDist& r) {
    Session::write_file((dir / name).string(), [&](std::ostream& os) { io::write_bivariate_csv(os, r); });
    files.push_back(name);
  };
  auto grid = [&](fixtures::Grid g) {
    if (o.step > 0.0) g = {o.lo, o.hi, o.step};
    return g;
  };
  const std::string& name = o.fixture;
  if (name == "gauss-pair" || name == "gamma-pair") {
    const auto pair = name == "gauss-pair" ? fixtures::gauss_pair(grid({-15.0, 15.0, 0.1}))
                                           : fixtures::gamma_pair(grid({0.05, 9.95, 0.1}));
    write_q(name + ".q1.csv", pair.q1);
    write_q(name + ".q2.csv", pair.q2);
  } else if (name == "odc-counterexample") {
    const auto pair = fixtures::odc_counterexample(o.k > 0 ? o.k : 200);
    write_q(name + ".q1.csv", pair.q1);
    write_q(name + ".q2.csv", pair.q2);
  } else if (name == "unif-delta-kernel") {
    write_r(name + ".csv", fixtures::unif_delta_kernel(o.k > 0 ? o.k : 30));
  } else if (name == "diag-uniform") {
    write_r(name + ".csv", fixtures::diag_uniform(o.k > 0 ? o.k : 3));
  } else if (name == "antidiag") {
    write_r(name + ".csv", fixtures::antidiag());
  } else if (name == "tp2-5x5") {
    write_r(name + ".csv", fixtures::tp2_5x5());
  } else {
    throw UsageError("unknown fixture '" + name + "'");
  }
  s.emit(json{{"fixture", name}, {"files", files}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stochastic, likelihood-ratio and TP2 order checks on finite-support distributions",
               "stochord"};
  app.set_version_flag("--version", kVersion);
  app.add_flag("--exact", o.exact, "Integer-weight inputs, exact product comparisons");
  app.add_option("--tolerance", o.tolerance, "Relative slack of tolerant comparisons")
      ->check(CLI::NonNegativeNumber);
  app.require_subcommand(1);

  std::map<CLI::App*, std::function<int(Session&, const Options&)>> handlers;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::function<int(Session&, const Options&)> fn) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->fallthrough();
    if (fn) handlers[c] = std::move(fn);
    return c;
  };

  auto* st = sub(&app, "check-st", "Usual stochastic order Q1 <=st Q2", cmd_check_st);
  st->add_option("--q1", o.q1, "First distribution")->required();
  st->add_option("--q2", o.q2, "Second distribution")->required();

  auto* lr = sub(&app, "check-lr", "Likelihood-ratio order Q1 <=lr Q2", cmd_check_lr);
  lr->add_option("--q1", o.q1, "First distribution")->required();
  lr->add_option("--q2", o.q2, "Second distribution")->required();
  lr->add_option("--method", o.method, "ratio | pairwise | intervals | conditional-st");

  for (const char* name : {"roc", "odc"}) {
    const bool is_roc = std::string(name) == "roc";
    auto* c = sub(&app, name, is_roc ? "ROC point set" : "Ordinal dominance curve",
                  is_roc ? cmd_roc : cmd_odc);
    c->add_option("--q1", o.q1, "First distribution")->required();
    c->add_option("--q2", o.q2, "Second distribution")->required();
    c->add_option("--out", o.out, "CSV file for the curve points");
    c->add_flag("--verdict", o.verdict, is_roc ? "Check concavity" : "Check convexity");
  }

  auto* tp2 = sub(&app, "tp2", "TP2 check and projection", nullptr);
  tp2->require_subcommand(1);
  auto* tcheck = sub(tp2, "check", "Check total positivity of order two", cmd_tp2_check);
  tcheck->add_option("--r", o.r, "Bivariate distribution")->required();
  tcheck->add_option("--method", o.method, "pmf-allpairs | pmf-adjacent | intervals");
  auto* tproj = sub(tp2, "project", "Kuiper-nearest TP2 approximation", cmd_tp2_project);
  tproj->add_option("--r", o.r, "Bivariate distribution")->required();
  tproj->add_option("--seed", o.seed, "Seed of the restart pool")->required();
  tproj->add_option("--restarts", o.restarts, "Number of restarts")->check(CLI::PositiveNumber);
  tproj->add_option("--sweeps", o.sweeps, "Coordinate sweeps per restart")->check(CLI::PositiveNumber);
  tproj->add_option("--out", o.out, "Report file");

  auto* stc = sub(&app, "st-condition", "Stochastic-kernel condition of a bivariate law",
                  cmd_st_condition);
  stc->add_option("--r", o.r, "Bivariate distribution")->required();

  auto* ker = sub(&app, "kernel", "Conditional kernel rows", cmd_kernel);
  ker->add_option("--r", o.r, "Bivariate distribution")->required();
  ker->add_option("--flavor", o.flavor, "w | e | new")->required();
  ker->add_option("--rule", o.rule, "nw | se | midpoint (flavor new)");
  ker->add_option("--x", o.xs, "Comma-separated evaluation points");
  ker->add_option("--out", o.out, "CSV file for the rows");

  auto* bnd = sub(&app, "boundaries", "Northwest/southeast support boundaries", cmd_boundaries);
  bnd->add_option("--r", o.r, "Bivariate distribution")->required();
  bnd->add_option("--x", o.xs, "Comma-separated evaluation points");
  bnd->add_option("--out", o.out, "CSV file for the boundaries");

  auto* kui = sub(&app, "kuiper", "Bivariate Kuiper distance", nullptr);
  kui->require_subcommand(1);
  auto* kdist = sub(kui, "dist", "Kuiper norm of A - B", cmd_kuiper);
  kdist->add_option("--a", o.a, "First bivariate distribution")->required();
  kdist->add_option("--b", o.b, "Second bivariate distribution")->required();
  kdist->add_option("--method", o.method, "brute | kadane");

  auto* smp = sub(&app, "sample", "Draw an i.i.d. sample", cmd_sample);
  smp->add_option("--r", o.r, "Bivariate distribution")->required();
  smp->add_option("--n", o.n, "Sample size")->required()->check(CLI::PositiveNumber);
  smp->add_option("--seed", o.seed, "PRNG seed")->required();
  smp->add_option("--out", o.out, "CSV file for the draws");

  auto* qua = sub(&app, "quantiles", "Conditional quantile curve", cmd_quantiles);
  qua->add_option("--r", o.r, "Bivariate distribution")->required();
  qua->add_option("--beta", o.beta, "Level in (0,1)")->required();
  qua->add_option("--flavor", o.flavor, "w | e | emp")->required();
  qua->add_option("--x", o.xs, "Comma-separated evaluation points");
  qua->add_option("--out", o.out, "Report file");

  auto* conv = sub(&app, "converge", "Convergence diagnostics for empirical quantiles", nullptr);
  conv->require_subcommand(1);
  for (const char* name : {"bracket", "uniform"}) {
    const bool is_bracket = std::string(name) == "bracket";
    auto* c = sub(conv, name, is_bracket ? "Bracketing by west/east quantiles" : "Uniform convergence",
                  is_bracket ? cmd_converge_bracket : cmd_converge_uniform);
    c->add_option("--r", o.r, "Bivariate distribution")->required();
    c->add_option("--beta", o.beta, "Level in (0,1)")->required();
    c->add_option("--ns", o.ns, "Sample sizes, e.g. 100,1000")->required();
    c->add_option("--seeds", o.seeds, "Seeds, e.g. 1..20")->required();
    c->add_option("--out", o.out, "Report file");
    if (is_bracket) {
      c->add_option("--x1", o.x1, "Left interior point")->required();
      c->add_option("--x2", o.x2, "Right interior point")->required();
    } else {
      c->add_option("--lo", o.lo, "Left end of the interval")->required();
      c->add_option("--hi", o.hi, "Right end of the interval")->required();
      c->add_option("--x", o.xs, "Comma-separated evaluation grid");
    }
  }

  auto* fix = sub(&app, "fixtures", "Write example distributions", cmd_fixtures);
  fix->add_option("name", o.fixture, "gauss-pair | gamma-pair | odc-counterexample | "
                                     "unif-delta-kernel | diag-uniform | antidiag | tp2-5x5")
      ->required();
  fix->add_option("--out-dir", o.out_dir, "Output directory");
  fix->add_option("--lo", o.lo, "Grid start");
  fix->add_option("--hi", o.hi, "Grid end");
  fix->add_option("--step", o.step, "Grid step")->check(CLI::PositiveNumber);
  fix->add_option("--k", o.k, "Size parameter")->check(CLI::PositiveNumber);

  // First token after the global options names the command.
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--tolerance") {
      ++i;
      continue;
    }
    if (!args[i].empty() && args[i][0] == '-') continue;
    if (app.get_subcommand_no_throw(args[i]) == nullptr) {
      err << "unknown subcommand '" << args[i] << "'\n\n" << app.help();
      return kUsage;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  // Deepest parsed subcommand.
  CLI::App* leaf = &app;
  std::string command;
  while (true) {
    const auto subs = leaf->get_subcommands();
    if (subs.empty()) break;
    leaf = subs.front();
    command += (command.empty() ? "" : " ") + leaf->get_name();
  }
  const auto it = handlers.find(leaf);
  if (it == handlers.end()) {
    err << app.help();
    return kUsage;
  }
  Session session(command, out);
  try {
    return it->second(session, o);
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    session.emit(json{{"error", {{"kind", "precondition"},
                                 {"message", e.what()},
                                 {"witness", witness_json(e.witness())}}}});
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace stochord::cli
