#include "stochord/bivariate_tp2.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "stochord/univariate_orders.hpp"

namespace stochord {

namespace {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> cells(const BivariateDist& r) {
  Matrix<T> out(r.rows(), std::vector<T>(r.cols()));
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) out[i][j] = detail::cell<T>(r, i, j);
  }
  return out;
}

template <class T>
OrderVerdict st_condition_impl(const BivariateDist& r, double rel_tol) {
  const Matrix<T> h = cells<T>(r);
  const std::size_t l = r.rows();
  const std::size_t m = r.cols();
  const std::vector<double> bx = detail::boundaries_of(r.x_support());
  const std::vector<double> by = detail::boundaries_of(r.y_support());
  // surv[j] for a block of rows: mass in columns >= j, i.e. above by[j].
  auto add_row = [&](std::vector<T>& surv, std::size_t i) {
    T acc{0};
    for (std::size_t j = m; j-- > 0;) {
      acc += h[i][j];
      surv[j] += acc;
    }
  };
  for (std::size_t a = 0; a < l; ++a) {
    std::vector<T> s1(m + 1, T{0});
    for (std::size_t b = a + 1; b <= l; ++b) {
      add_row(s1, b - 1);
      std::vector<T> s2(m + 1, T{0});
      for (std::size_t c = b + 1; c <= l; ++c) {
        add_row(s2, c - 1);
        // s1[0], s2[0] are P(A1), P(A2).
        for (std::size_t t = 1; t < m; ++t) {
          if (!arith::products_leq(s1[t], s2[0], s1[0], s2[t], rel_tol)) {
            return OrderVerdict::fail(
                "st-condition",
                Witness{{{"x0", bx[a]}, {"x1", bx[b]}, {"x2", bx[c]}, {"y", by[t]}},
                        arith::to_double(arith::product(s1[t], s2[0])),
                        arith::to_double(arith::product(s1[0], s2[t]))});
          }
        }
      }
    }
  }
  return OrderVerdict::pass("st-condition");
}

template <class T>
Witness minor_witness(const BivariateDist& r, const Matrix<T>& h, std::size_t i1, std::size_t i2,
                      std::size_t j1, std::size_t j2) {
  return Witness{{{"x1", r.x_support()[i1]},
                  {"x2", r.x_support()[i2]},
                  {"y1", r.y_support()[j1]},
                  {"y2", r.y_support()[j2]}},
                 arith::to_double(arith::product(h[i2][j1], h[i1][j2])),
                 arith::to_double(arith::product(h[i1][j1], h[i2][j2]))};
}

template <class T>
OrderVerdict tp2_allpairs(const BivariateDist& r, const Matrix<T>& h, double rel_tol,
                          const std::string& tag) {
  const std::size_t l = r.rows();
  const std::size_t m = r.cols();
  for (std::size_t i1 = 0; i1 < l; ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < l; ++i2) {
      for (std::size_t j1 = 0; j1 < m; ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < m; ++j2) {
          if (!arith::products_leq(h[i2][j1], h[i1][j2], h[i1][j1], h[i2][j2], rel_tol)) {
            return OrderVerdict::fail(tag, minor_witness(r, h, i1, i2, j1, j2));
          }
        }
      }
    }
  }
  return OrderVerdict::pass(tag);
}

template <class T>
OrderVerdict tp2_adjacent(const BivariateDist& r, const Matrix<T>& h, double rel_tol) {
  for (const auto& row : h) {
    for (const T& v : row) {
      if (!(v > T{0})) return tp2_allpairs(r, h, rel_tol, "pmf-allpairs");
    }
  }
  for (std::size_t i = 0; i + 1 < r.rows(); ++i) {
    for (std::size_t j = 0; j + 1 < r.cols(); ++j) {
      if (!arith::products_leq(h[i + 1][j], h[i][j + 1], h[i][j], h[i + 1][j + 1], rel_tol)) {
        return OrderVerdict::fail("pmf-adjacent", minor_witness(r, h, i, i + 1, j, j + 1));
      }
    }
  }
  return OrderVerdict::pass("pmf-adjacent");
}

template <class T>
OrderVerdict tp2_intervals(const BivariateDist& r, const Matrix<T>& h, double rel_tol) {
  const std::size_t l = r.rows();
  const std::size_t m = r.cols();
  const std::vector<double> bx = detail::boundaries_of(r.x_support());
  for (std::size_t a = 0; a < l; ++a) {
    std::vector<T> col1(m, T{0});
    for (std::size_t b = a + 1; b <= l; ++b) {
      for (std::size_t j = 0; j < m; ++j) col1[j] += h[b - 1][j];
      std::vector<T> col2(m, T{0});
      for (std::size_t c = b + 1; c <= l; ++c) {
        for (std::size_t j = 0; j < m; ++j) col2[j] += h[c - 1][j];
        // With B1 = (y0,y1], B2 = (y1,y2]:
        // R(A1 x B2) R(A2 x B1) <= R(A1 x B1) R(A2 x B2).
        if (auto w = detail::interval_triple_violation(r.y_support(), col1, col2, rel_tol)) {
          Witness out;
          out.coords = {{"x0", bx[a]},           {"x1", bx[b]},           {"x2", bx[c]},
                        {"y0", w->coord("x")}, {"y1", w->coord("y")}, {"y2", w->coord("z")}};
          out.lhs = w->lhs;
          out.rhs = w->rhs;
          return OrderVerdict::fail("intervals", std::move(out));
        }
      }
    }
  }
  return OrderVerdict::pass("intervals");
}

std::vector<std::size_t> positive_rows(const BivariateDist& r) {
  const auto [p, q] = marginals(r);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.probs()[i] > 0.0) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> positive_cols(const BivariateDist& r, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < r.cols(); ++j) {
    if (r.at(i, j) > 0.0) out.push_back(j);
  }
  return out;
}

BoundaryPoint boundary_at(const BivariateDist& r, const std::vector<std::size_t>& rows, double x) {
  BoundaryPoint bp;
  bp.x = x;
  bp.in_range = !rows.empty() && r.x_support()[rows.front()] <= x && x <= r.x_support()[rows.back()];
  for (std::size_t i : rows) {
    const auto cols = positive_cols(r, i);
    if (cols.empty()) continue;
    if (r.x_support()[i] <= x) bp.s_nw = std::max(bp.s_nw, r.y_support()[cols.back()]);
    if (r.x_support()[i] >= x) bp.s_se = std::min(bp.s_se, r.y_support()[cols.front()]);
  }
  bp.in_x_o = bp.in_range && bp.s_nw <= bp.s_se;
  return bp;
}

void prepare_points(std::vector<double>& xs) {
  if (xs.empty()) throw std::domain_error("kernel: empty evaluation set");
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// West (east) row at x: the conditional row of the nearest positive atom at
// or below (above) x; the Y marginal outside the range.
Kernel extremal_kernel(const BivariateDist& r, std::vector<double> xs, KernelFlavor flavor) {
  prepare_points(xs);
  const std::vector<std::size_t> rows = positive_rows(r);
  const UnivariateDist q = marginals(r).second;
  Kernel k;
  k.flavor = flavor;
  for (double x : xs) {
    const double lo = r.x_support()[rows.front()];
    const double hi = r.x_support()[rows.back()];
    k.eval_points.push_back(x);
    if (x < lo || x > hi) {
      k.rows.push_back(q);
      k.regions.push_back(RowRegion::outside_range);
      continue;
    }
    std::size_t pick = rows.front();
    if (flavor == KernelFlavor::east) {
      for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (r.x_support()[*it] >= x) pick = *it;
      }
    } else {
      for (std::size_t i : rows) {
        if (r.x_support()[i] <= x) pick = i;
      }
    }
    const double atom = r.x_support()[pick];
    k.rows.push_back(conditional_row(r, atom));
    k.regions.push_back(atom == x ? RowRegion::atom : RowRegion::between_atoms);
  }
  return k;
}

Kernel modified_kernel(const BivariateDist& r, std::vector<double> xs,
                       const std::function<double(std::size_t, const BoundaryPoint&)>& select,
                       const Comparison& cmp) {
  const OrderVerdict tp2 = check_tp2(r, Tp2Method::pmf_allpairs, cmp);
  if (!tp2.holds) {
    throw PreconditionError("modified kernel requires a TP2 distribution", *tp2.witness);
  }
  Kernel west = kernel_west(r, std::move(xs));
  Kernel k;
  k.flavor = KernelFlavor::modified;
  k.eval_points = west.eval_points;
  const std::vector<std::size_t> rows = positive_rows(r);
  const bool single = rows.size() == 1;
  for (std::size_t n = 0; n < west.eval_points.size(); ++n) {
    const double x = west.eval_points[n];
    const BoundaryPoint bp = boundary_at(r, rows, x);
    if (!bp.in_range || single) {
      k.rows.push_back(west.rows[n]);
      k.regions.push_back(west.regions[n]);
    } else if (bp.in_x_o) {
      k.rows.push_back(UnivariateDist::point_mass(select(n, bp)));
      k.regions.push_back(RowRegion::point_mass);
    } else {
      k.rows.push_back(truncate(west.rows[n], Interval::closed(bp.s_se, bp.s_nw)));
      k.regions.push_back(RowRegion::truncated);
    }
  }
  return k;
}

}  // namespace

OrderVerdict check_st_condition(const BivariateDist& r, const Comparison& cmp) {
  return detail::dispatch(cmp, r.has_weights(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    return st_condition_impl<T>(r, cmp.rel_tol);
  });
}

std::string_view to_string(Tp2Method method) {
  switch (method) {
    case Tp2Method::pmf_allpairs: return "pmf-allpairs";
    case Tp2Method::pmf_adjacent: return "pmf-adjacent";
    case Tp2Method::intervals: return "intervals";
  }
  return "pmf-allpairs";
}

Tp2Method parse_tp2_method(std::string_view name) {
  for (Tp2Method m : {Tp2Method::pmf_allpairs, Tp2Method::pmf_adjacent, Tp2Method::intervals}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown TP2 method '" + std::string(name) + "'");
}

OrderVerdict check_tp2(const BivariateDist& r, Tp2Method method, const Comparison& cmp) {
  return detail::dispatch(cmp, r.has_weights(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    const Matrix<T> h = cells<T>(r);
    switch (method) {
      case Tp2Method::pmf_adjacent: return tp2_adjacent(r, h, cmp.rel_tol);
      case Tp2Method::intervals: return tp2_intervals(r, h, cmp.rel_tol);
      case Tp2Method::pmf_allpairs: break;
    }
    return tp2_allpairs(r, h, cmp.rel_tol, "pmf-allpairs");
  });
}

std::vector<double> default_eval_grid(const BivariateDist& r) {
  std::vector<double> out;
  double prev = 0.0;
  bool first = true;
  for (std::size_t i : positive_rows(r)) {
    const double x = r.x_support()[i];
    if (!first) out.push_back(prev + (x - prev) / 2.0);
    out.push_back(x);
    prev = x;
    first = false;
  }
  return out;
}

Boundaries boundaries(const BivariateDist& r) { return boundaries(r, default_eval_grid(r)); }

Boundaries boundaries(const BivariateDist& r, const std::vector<double>& xs) {
  const std::vector<std::size_t> rows = positive_rows(r);
  Boundaries out;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (double x : sorted) out.points.push_back(boundary_at(r, rows, x));
  return out;
}

std::string_view to_string(KernelFlavor flavor) {
  switch (flavor) {
    case KernelFlavor::west: return "west";
    case KernelFlavor::east: return "east";
    case KernelFlavor::modified: return "new";
  }
  return "west";
}

std::string_view to_string(RowRegion region) {
  switch (region) {
    case RowRegion::outside_range: return "outside-range";
    case RowRegion::atom: return "atom";
    case RowRegion::between_atoms: return "between-atoms";
    case RowRegion::point_mass: return "point-mass";
    case RowRegion::truncated: return "truncated";
  }
  return "atom";
}

Kernel kernel_west(const BivariateDist& r, std::vector<double> xs) {
  return extremal_kernel(r, std::move(xs), KernelFlavor::west);
}

Kernel kernel_east(const BivariateDist& r, std::vector<double> xs) {
  return extremal_kernel(r, std::move(xs), KernelFlavor::east);
}

SelectionRule parse_selection_rule(std::string_view name) {
  if (name == "nw") return SelectionRule::nw;
  if (name == "se") return SelectionRule::se;
  if (name == "midpoint") return SelectionRule::midpoint;
  throw std::invalid_argument("unknown selection rule '" + std::string(name) + "'");
}

Kernel kernel_new(const BivariateDist& r, std::vector<double> xs, SelectionRule rule,
                  const Comparison& cmp) {
  double running = -kInf;
  auto select = [&](std::size_t, const BoundaryPoint& bp) {
    double s = bp.s_nw;
    if (rule == SelectionRule::se) s = bp.s_se;
    if (rule == SelectionRule::midpoint) s = bp.s_nw + (bp.s_se - bp.s_nw) / 2.0;
    running = std::max(running, s);
    return running;
  };
  return modified_kernel(r, std::move(xs), select, cmp);
}

Kernel kernel_new(const BivariateDist& r, std::vector<double> xs,
                  const std::vector<std::pair<double, double>>& selection, const Comparison& cmp) {
  std::vector<std::pair<double, double>> sel = selection;
  std::sort(sel.begin(), sel.end());
  for (std::size_t i = 0; i + 1 < sel.size(); ++i) {
    if (sel[i + 1].second < sel[i].second) {
      throw PreconditionError("selection is not nondecreasing",
                              Witness{{{"x1", sel[i].first}, {"x2", sel[i + 1].first}},
                                      sel[i].second, sel[i + 1].second});
    }
  }
  auto select = [&](std::size_t, const BoundaryPoint& bp) {
    auto it = std::find_if(sel.begin(), sel.end(), [&](const auto& p) { return p.first == bp.x; });
    if (it == sel.end()) {
      throw std::invalid_argument("selection does not cover x = " + std::to_string(bp.x));
    }
    if (it->second < bp.s_nw || it->second > bp.s_se) {
      throw PreconditionError("selection outside [s_nw(x), s_se(x)]",
                              Witness{{{"x", bp.x}, {"s", it->second}}, bp.s_nw, bp.s_se});
    }
    return it->second;
  };
  return modified_kernel(r, std::move(xs), select, cmp);
}

ConditionalDensity conditional_density(const Kernel& knew, double x, const BivariateDist& r) {
  auto it = std::find(knew.eval_points.begin(), knew.eval_points.end(), x);
  if (it == knew.eval_points.end()) {
    throw std::domain_error("conditional_density: x is not an evaluation point of the kernel");
  }
  const std::size_t n = static_cast<std::size_t>(it - knew.eval_points.begin());
  const RowRegion region = knew.regions[n];
  if (region == RowRegion::point_mass) {
    throw std::domain_error("conditional_density: the row at x is a point mass");
  }
  if (region == RowRegion::outside_range) {
    throw std::domain_error("conditional_density: x is outside the range of X");
  }
  const UnivariateDist q = marginals(r).second;
  const UnivariateDist& row = knew.rows[n];
  ConditionalDensity out;
  out.x = x;
  out.ys = r.y_support();
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double qy = q.probs()[j];
    const double ky = interval_mass(row, Interval::closed(q.support()[j], q.support()[j]));
    const double h = qy > 0.0 ? ky / qy : 0.0;
    out.h.push_back(h);
    out.bound = std::max(out.bound, h);
  }
  return out;
}

}  // namespace stochord
