#include "stochord/kuiper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "stochord/bivariate_tp2.hpp"
#include "stochord/rng.hpp"

namespace stochord {

namespace {

template <class T>
T norm_brute(const std::vector<T>& d, std::size_t l, std::size_t m) {
  // S[i][j] = sum of d over rows < i, cols < j.
  std::vector<T> s((l + 1) * (m + 1), T{0});
  auto S = [&](std::size_t i, std::size_t j) -> T& { return s[i * (m + 1) + j]; };
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      S(i + 1, j + 1) = d[i * m + j] + S(i, j + 1) + S(i + 1, j) - S(i, j);
    }
  }
  T best{0};
  for (std::size_t i1 = 0; i1 < l; ++i1) {
    for (std::size_t i2 = i1 + 1; i2 <= l; ++i2) {
      for (std::size_t j1 = 0; j1 < m; ++j1) {
        for (std::size_t j2 = j1 + 1; j2 <= m; ++j2) {
          const T v = S(i2, j2) - S(i1, j2) - S(i2, j1) + S(i1, j1);
          best = std::max(best, v < T{0} ? -v : v);
        }
      }
    }
  }
  return best;
}

template <class T>
T norm_kadane(const std::vector<T>& d, std::size_t l, std::size_t m) {
  T best{0};
  std::vector<T> col(m);
  for (std::size_t i1 = 0; i1 < l; ++i1) {
    std::fill(col.begin(), col.end(), T{0});
    for (std::size_t i2 = i1; i2 < l; ++i2) {
      for (std::size_t j = 0; j < m; ++j) col[j] += d[i2 * m + j];
      // Largest and smallest subarray sums; the empty subarray contributes 0.
      T hi{0};
      T lo{0};
      for (std::size_t j = 0; j < m; ++j) {
        hi = std::max(T{0}, hi + col[j]);
        lo = std::min(T{0}, lo + col[j]);
        best = std::max({best, hi, -lo});
      }
    }
  }
  return best;
}

std::vector<double> merge_grid(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> positions(const std::vector<double>& sub, const std::vector<double>& grid) {
  std::vector<std::size_t> out;
  for (double v : sub) {
    out.push_back(static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), v) -
                                           grid.begin()));
  }
  return out;
}

std::int64_t checked(arith::Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer weights too large for exact Kuiper arithmetic");
  }
  return static_cast<std::int64_t>(v);
}

// Log-potential phi(i,j) = a_i + b_j + sum_{i'<i, j'<j} c_{i'j'} with c >= 0.
// Every adjacent 2x2 log-minor equals one c entry, so exp(phi) is TP2.
struct Potential {
  std::size_t l = 0;
  std::size_t m = 0;
  std::vector<double> x;  // a (l), then b (m), then c ((l-1)(m-1))

  bool is_interaction(std::size_t k) const { return k >= l + m; }

  std::vector<double> pmf(double floor) const {
    std::vector<double> phi(l * m);
    std::vector<double> acc(l * m, 0.0);
    const double* a = x.data();
    const double* b = x.data() + l;
    const double* c = x.data() + l + m;
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i > 0 && j > 0) {
          acc[i * m + j] = acc[(i - 1) * m + j] + acc[i * m + j - 1] - acc[(i - 1) * m + j - 1] +
                           c[(i - 1) * (m - 1) + (j - 1)];
        }
        phi[i * m + j] = a[i] + b[j] + acc[i * m + j];
      }
    }
    const double top = *std::max_element(phi.begin(), phi.end());
    double total = 0.0;
    for (double& v : phi) {
      v = std::exp(v - top);
      total += v;
    }
    for (double& v : phi) v = std::max(v / total, floor);
    return phi;
  }
};

double distance_to(const std::vector<double>& target, const std::vector<double>& p, std::size_t l,
                   std::size_t m) {
  std::vector<double> d(target.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = target[k] - p[k];
  return norm_kadane(d, l, m);
}

BivariateDist on_grid(const BivariateDist& like, const std::vector<double>& p) {
  std::vector<std::vector<double>> rows(like.rows(), std::vector<double>(like.cols()));
  for (std::size_t i = 0; i < like.rows(); ++i) {
    for (std::size_t j = 0; j < like.cols(); ++j) rows[i][j] = p[i * like.cols() + j];
  }
  return BivariateDist::from_pmf(like.x_support(), like.y_support(), rows);
}

std::vector<double> thresholded(std::vector<double> p, double cut) {
  double total = 0.0;
  for (double& v : p) {
    if (v < cut) v = 0.0;
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

constexpr double kSearchFloor = 1e-300;
constexpr double kThreshold = 1e-12;
constexpr double kSentinelMass = 1e-8;
constexpr double kMaxStep = 64.0;

struct SearchOutcome {
  std::vector<double> best_pmf;
  double best = 0.0;
  long long evaluations = 0;
  std::vector<double> history;
};

SearchOutcome pattern_search(Potential pot, const std::vector<double>& target,
                             const ProjectionConfig& config) {
  SearchOutcome out;
  auto objective = [&](const Potential& p) {
    ++out.evaluations;
    return distance_to(target, p.pmf(kSearchFloor), pot.l, pot.m);
  };
  double current = objective(pot);
  std::vector<double> step(pot.x.size(), config.initial_step);
  for (int sweep = 0; sweep < config.sweeps; ++sweep) {
    for (std::size_t k = 0; k < pot.x.size(); ++k) {
      bool improved = false;
      for (double dir : {1.0, -1.0}) {
        Potential trial = pot;
        trial.x[k] += dir * step[k];
        if (pot.is_interaction(k)) trial.x[k] = std::max(0.0, trial.x[k]);
        if (trial.x[k] == pot.x[k]) continue;
        const double value = objective(trial);
        if (value < current) {
          pot = std::move(trial);
          current = value;
          improved = true;
          break;
        }
      }
      step[k] = improved ? std::min(step[k] * 2.0, kMaxStep) : step[k] / 2.0;
    }
    out.history.push_back(current);
  }
  out.best = current;
  out.best_pmf = pot.pmf(0.0);
  return out;
}

}  // namespace

GridSignedMeasure GridSignedMeasure::from_values(std::vector<double> xs, std::vector<double> ys,
                                                 const std::vector<std::vector<double>>& rows) {
  GridSignedMeasure g;
  if (rows.size() != xs.size()) throw std::invalid_argument("signed measure: row count mismatch");
  for (const auto& row : rows) {
    if (row.size() != ys.size()) throw std::invalid_argument("signed measure: column count mismatch");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("signed measure: non-finite entry");
      g.delta.push_back(v);
    }
  }
  g.xs = std::move(xs);
  g.ys = std::move(ys);
  return g;
}

GridSignedMeasure GridSignedMeasure::from_integers(std::vector<double> xs, std::vector<double> ys,
                                                   const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<double>> values;
  std::vector<std::int64_t> exact;
  for (const auto& row : rows) {
    values.emplace_back(row.begin(), row.end());
    exact.insert(exact.end(), row.begin(), row.end());
  }
  GridSignedMeasure g = from_values(std::move(xs), std::move(ys), values);
  g.exact = std::move(exact);
  return g;
}

GridSignedMeasure GridSignedMeasure::difference(const BivariateDist& a, const BivariateDist& b) {
  GridSignedMeasure g;
  g.xs = merge_grid(a.x_support(), b.x_support());
  g.ys = merge_grid(a.y_support(), b.y_support());
  const std::size_t m = g.ys.size();
  g.delta.assign(g.xs.size() * m, 0.0);
  const bool exact = a.has_weights() && b.has_weights();
  std::vector<arith::Wide> num(exact ? g.delta.size() : 0, 0);
  auto add = [&](const BivariateDist& r, double sign, arith::Wide scale) {
    const auto pi = positions(r.x_support(), g.xs);
    const auto pj = positions(r.y_support(), g.ys);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      for (std::size_t j = 0; j < r.cols(); ++j) {
        const std::size_t k = pi[i] * m + pj[j];
        g.delta[k] += sign * r.at(i, j);
        if (exact) num[k] += static_cast<arith::Wide>(sign) * scale * r.weight_at(i, j);
      }
    }
  };
  add(a, 1.0, exact ? b.total_weight() : 1);
  add(b, -1.0, exact ? a.total_weight() : 1);
  if (exact) {
    g.exact.emplace();
    for (arith::Wide v : num) g.exact->push_back(checked(v));
    g.denominator = checked(static_cast<arith::Wide>(a.total_weight()) * b.total_weight());
  }
  return g;
}

std::string_view to_string(KuiperMethod method) {
  return method == KuiperMethod::brute ? "brute" : "kadane";
}

KuiperMethod parse_kuiper_method(std::string_view name) {
  if (name == "brute") return KuiperMethod::brute;
  if (name == "kadane") return KuiperMethod::kadane;
  throw std::invalid_argument("unknown Kuiper method '" + std::string(name) + "'");
}

double kuiper_norm(const GridSignedMeasure& sigma, KuiperMethod method) {
  if (sigma.delta.empty()) return 0.0;
  return method == KuiperMethod::brute ? norm_brute(sigma.delta, sigma.rows(), sigma.cols())
                                       : norm_kadane(sigma.delta, sigma.rows(), sigma.cols());
}

std::int64_t kuiper_norm_exact(const GridSignedMeasure& sigma, KuiperMethod method) {
  if (!sigma.exact) throw std::invalid_argument("exact Kuiper norm requires integer data");
  if (sigma.exact->empty()) return 0;
  std::vector<arith::Wide> d(sigma.exact->begin(), sigma.exact->end());
  const arith::Wide v = method == KuiperMethod::brute ? norm_brute(d, sigma.rows(), sigma.cols())
                                                      : norm_kadane(d, sigma.rows(), sigma.cols());
  return checked(v);
}

BivariateDist refine_grid(const BivariateDist& r) {
  auto interleave = [](const std::vector<double>& pts) {
    const std::vector<double> bd = detail::boundaries_of(pts);
    std::vector<double> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out.push_back(bd[i]);
      out.push_back(pts[i]);
    }
    out.push_back(bd.back());
    return out;
  };
  std::vector<double> xs = interleave(r.x_support());
  std::vector<double> ys = interleave(r.y_support());
  const std::size_t l = xs.size();
  const std::size_t m = ys.size();
  if (r.has_weights()) {
    std::vector<std::vector<std::int64_t>> rows(l, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < r.rows(); ++i) {
      for (std::size_t j = 0; j < r.cols(); ++j) rows[2 * i + 1][2 * j + 1] = r.weight_at(i, j);
    }
    return BivariateDist::from_weights(std::move(xs), std::move(ys), rows);
  }
  std::vector<std::vector<double>> rows(l, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) rows[2 * i + 1][2 * j + 1] = r.at(i, j);
  }
  return BivariateDist::from_pmf(std::move(xs), std::move(ys), rows);
}

ProjectionResult tp2_project(const BivariateDist& r_hat, const ProjectionConfig& config) {
  const BivariateDist refined = refine_grid(r_hat);
  const std::size_t l = refined.rows();
  const std::size_t m = refined.cols();
  const std::vector<double>& target = refined.pmf();
  auto exact_distance = [&](const BivariateDist& candidate) {
    return kuiper_norm(GridSignedMeasure::difference(refined, candidate), KuiperMethod::brute);
  };

  if (check_tp2(r_hat).holds) {
    ProjectionResult res{refined, exact_distance(refined), true, "identity", {}, config.seed};
    return res;
  }

  const auto [p, q] = marginals(refined);
  std::vector<double> product(l * m);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < m; ++j) product[i * m + j] = p.probs()[i] * q.probs()[j];
  }

  Potential start;
  start.l = l;
  start.m = m;
  start.x.assign(l + m + (l - 1) * (m - 1), 0.0);
  for (std::size_t i = 0; i < l; ++i) start.x[i] = std::log(std::max(p.probs()[i], kSentinelMass));
  for (std::size_t j = 0; j < m; ++j) {
    start.x[l + j] = std::log(std::max(q.probs()[j], kSentinelMass));
  }

  ProjectionTrace trace;
  std::vector<double> best_pmf;
  double best_value = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    Potential init = start;
    if (restart > 0) {
      SplitMix64 rng(SplitMix64::mix(config.seed) ^ static_cast<std::uint64_t>(restart));
      for (std::size_t k = 0; k < init.x.size(); ++k) {
        init.x[k] += init.is_interaction(k) ? rng.uniform() : 2.0 * rng.uniform() - 1.0;
      }
    }
    SearchOutcome run = pattern_search(std::move(init), target, config);
    trace.iterations += run.evaluations;
    trace.best_per_restart.push_back(run.best);
    trace.history.push_back(std::move(run.history));
    // Ties keep the lower restart index.
    if (run.best < best_value) {
      best_value = run.best;
      best_pmf = std::move(run.best_pmf);
    }
  }
  trace.restarts = config.restarts;

  struct Candidate {
    std::vector<double> pmf;
    std::string source;
  };
  std::vector<Candidate> candidates;
  if (!best_pmf.empty()) {
    candidates.push_back({thresholded(best_pmf, kThreshold), "search"});
    candidates.push_back({best_pmf, "search"});
  }
  candidates.push_back({product, "product-baseline"});

  std::optional<ProjectionResult> chosen;
  for (const Candidate& c : candidates) {
    const BivariateDist dist = on_grid(refined, c.pmf);
    if (!check_tp2(dist).holds) continue;
    const double d = exact_distance(dist);
    if (!chosen || d < chosen->distance) {
      chosen = ProjectionResult{dist, d, true, c.source, {}, config.seed};
    }
  }
  if (!chosen) throw std::logic_error("tp2_project: no certified candidate");
  chosen->trace = std::move(trace);
  return *chosen;
}

ConsistencyBound consistency_bound(double true_dist_to_emp, double proj_dist) {
  if (true_dist_to_emp < 0.0 || proj_dist < 0.0) {
    throw std::invalid_argument("consistency_bound: distances must be nonnegative");
  }
  ConsistencyBound out;
  out.value = proj_dist + true_dist_to_emp;
  out.within_guarantee = out.value <= 2.0 * true_dist_to_emp;
  if (proj_dist <= true_dist_to_emp && !out.within_guarantee) {
    throw std::logic_error("consistency_bound: sum exceeds twice the true distance");
  }
  return out;
}

}  // namespace stochord
