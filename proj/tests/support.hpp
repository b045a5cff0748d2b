#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.
// The oracles evaluate the defining inequalities literally (with exact integer
// arithmetic where the inputs allow it) and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "stochord/distribution.hpp"

namespace testing_support {

using stochord::BivariateDist;
using stochord::UnivariateDist;
__extension__ using Wide = __int128;

/// Weight vectors over a fixed support: all vectors in {0..max}^k except zero.
inline std::vector<std::vector<std::int64_t>> all_weight_vectors(int k, int max) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> w(k, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      if (std::any_of(w.begin(), w.end(), [](auto v) { return v > 0; })) out.push_back(w);
      return;
    }
    for (int v = 0; v <= max; ++v) {
      w[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

/// Random integer-weight distribution on a random subset of {1..span}.
inline UnivariateDist random_weighted(std::mt19937_64& rng, int span, int max_weight) {
  std::uniform_int_distribution<int> wd(0, max_weight);
  std::vector<double> support;
  std::vector<std::int64_t> weights;
  for (int i = 1; i <= span; ++i) {
    support.push_back(i);
    weights.push_back(wd(rng));
  }
  if (std::all_of(weights.begin(), weights.end(), [](auto v) { return v == 0; })) {
    weights[std::uniform_int_distribution<int>(0, span - 1)(rng)] = 1;
  }
  return UnivariateDist::from_weights(support, weights);
}

/// Float-valued pair on a shared support with a monotone likelihood ratio
/// (lr == true) or unconstrained (lr == false).
inline std::pair<UnivariateDist, UnivariateDist> random_float_pair(std::mt19937_64& rng, int k,
                                                                  bool lr) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> support;
  for (int i = 0; i < k; ++i) support.push_back(i * 0.5 + u(rng) * 0.25);
  std::vector<double> g1(k);
  std::vector<double> g2(k);
  std::vector<double> ratio(k);
  for (int i = 0; i < k; ++i) {
    g1[i] = u(rng) < 0.15 ? 0.0 : u(rng);
    ratio[i] = u(rng) * 3.0;
  }
  if (lr) std::sort(ratio.begin(), ratio.end());
  for (int i = 0; i < k; ++i) g2[i] = lr ? g1[i] * ratio[i] : u(rng);
  if (lr && u(rng) < 0.3) {
    g2[k - 1] = 0.5 + u(rng);  // mass where g1 may vanish: ratio +inf at the top
    g1[k - 1] = u(rng) < 0.5 ? 0.0 : g1[k - 1];
  }
  auto normalize = [&](std::vector<double>& g) {
    double t = 0.0;
    for (double v : g) t += v;
    if (t == 0.0) {
      g[0] = 1.0;
      t = 1.0;
    }
    for (double& v : g) v /= t;
  };
  normalize(g1);
  normalize(g2);
  return {UnivariateDist::from_probs(support, g1), UnivariateDist::from_probs(support, g2)};
}

/// Random TP2 pmf: a staircase band (nondecreasing lower and upper column
/// limits per row) times exp of a supermodular potential; some rows may be
/// empty. Returned as probabilities.
inline BivariateDist random_tp2(std::mt19937_64& rng, int l, int m, bool allow_zero_rows = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<int> lo(l);
  std::vector<int> hi(l);
  int a = 0;
  int b = 0;
  for (int i = 0; i < l; ++i) {
    a = std::min(m - 1, a + (u(rng) < 0.35 ? 1 : 0));
    b = std::max(a, std::min(m - 1, b + (u(rng) < 0.6 ? 1 : 0)));
    lo[i] = a;
    hi[i] = b;
  }
  std::vector<double> ra(l);
  std::vector<double> cb(m);
  for (auto& v : ra) v = 2.0 * u(rng) - 1.0;
  for (auto& v : cb) v = 2.0 * u(rng) - 1.0;
  std::vector<std::vector<double>> c(l, std::vector<double>(m, 0.0));
  for (int i = 1; i < l; ++i) {
    for (int j = 1; j < m; ++j) {
      const double inc = u(rng) < 0.3 ? 0.0 : u(rng);
      c[i][j] = c[i - 1][j] + c[i][j - 1] - c[i - 1][j - 1] + inc;
    }
  }
  std::vector<bool> empty(l, false);
  if (allow_zero_rows) {
    for (int i = 0; i < l; ++i) empty[i] = u(rng) < 0.15;
    if (std::all_of(empty.begin(), empty.end(), [](bool e) { return e; })) empty[0] = false;
  }
  std::vector<std::vector<double>> p(l, std::vector<double>(m, 0.0));
  double total = 0.0;
  for (int i = 0; i < l; ++i) {
    if (empty[i]) continue;
    for (int j = lo[i]; j <= hi[i]; ++j) {
      p[i][j] = std::exp(ra[i] + cb[j] + c[i][j]);
      total += p[i][j];
    }
  }
  for (auto& row : p) {
    for (double& v : row) v /= total;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < l; ++i) xs.push_back(i + 1.0);
  for (int j = 0; j < m; ++j) ys.push_back(j + 1.0);
  return BivariateDist::from_pmf(xs, ys, p);
}

// Random pair nu <= mu satisfying the ratio-monotonicity precondition: nu is mu
// times a nondecreasing factor in [0, 1] on a common support.
inline std::pair<UnivariateDist, UnivariateDist> random_dominated_pair(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> support;
  std::vector<double> mu(k);
  std::vector<double> f(k);
  for (int i = 0; i < k; ++i) {
    support.push_back(i + u(rng) * 0.5);
    mu[i] = u(rng) < 0.2 ? 0.0 : u(rng);
    f[i] = u(rng) < 0.2 ? 0.0 : (u(rng) < 0.2 ? 1.0 : u(rng));
  }
  std::sort(f.begin(), f.end());
  std::vector<double> nu(k);
  for (int i = 0; i < k; ++i) nu[i] = mu[i] * f[i];
  return {UnivariateDist::measure(support, mu), UnivariateDist::measure(support, nu)};
}

namespace oracle {

/// Likelihood-ratio order through the density of Q2 with respect to
/// Q1 + Q2: w2 T1 / (w1 T2 + w2 T1) must be isotonic on the atoms where it
/// is defined. Exact on integer weights over a common support.
inline bool lr(const std::vector<std::int64_t>& w1, const std::vector<std::int64_t>& w2) {
  Wide t1 = 0;
  Wide t2 = 0;
  for (auto v : w1) t1 += v;
  for (auto v : w2) t2 += v;
  std::vector<std::pair<Wide, Wide>> rho;  // numerator, denominator
  for (std::size_t i = 0; i < w1.size(); ++i) {
    const Wide num = w2[i] * t1;
    const Wide den = w1[i] * t2 + w2[i] * t1;
    if (den > 0) rho.emplace_back(num, den);
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = i + 1; j < rho.size(); ++j) {
      if (rho[i].first * rho[j].second > rho[j].first * rho[i].second) return false;
    }
  }
  return true;
}

/// Stochastic order: Q1((y,inf)) <= Q2((y,inf)) at every atom, exact.
inline bool st(const std::vector<std::int64_t>& w1, const std::vector<std::int64_t>& w2) {
  Wide t1 = 0;
  Wide t2 = 0;
  for (auto v : w1) t1 += v;
  for (auto v : w2) t2 += v;
  for (std::size_t y = 0; y < w1.size(); ++y) {
    Wide s1 = 0;
    Wide s2 = 0;
    for (std::size_t i = y + 1; i < w1.size(); ++i) {
      s1 += w1[i];
      s2 += w2[i];
    }
    if (s1 * t2 > s2 * t1) return false;
  }
  return true;
}

/// Distributional TP2 over all pairs of nonempty atom sets A1 < A2, B1 < B2
/// (every element of A1 below every element of A2). Exact on integer weights.
inline bool tp2_sets(const std::vector<std::vector<std::int64_t>>& w) {
  const int l = static_cast<int>(w.size());
  const int m = static_cast<int>(w[0].size());
  auto mass = [&](unsigned A, unsigned B) {
    Wide s = 0;
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < m; ++j) {
        if ((A >> i & 1U) && (B >> j & 1U)) s += w[i][j];
      }
    }
    return s;
  };
  auto below = [](unsigned A1, unsigned A2) {
    if (A1 == 0 || A2 == 0) return false;
    const int max1 = 31 - __builtin_clz(A1);
    const int min2 = __builtin_ctz(A2);
    return max1 < min2;
  };
  for (unsigned A1 = 1; A1 < (1U << l); ++A1) {
    for (unsigned A2 = 1; A2 < (1U << l); ++A2) {
      if (!below(A1, A2)) continue;
      for (unsigned B1 = 1; B1 < (1U << m); ++B1) {
        for (unsigned B2 = 1; B2 < (1U << m); ++B2) {
          if (!below(B1, B2)) continue;
          if (mass(A2, B1) * mass(A1, B2) > mass(A1, B1) * mass(A2, B2)) return false;
        }
      }
    }
  }
  return true;
}

/// Largest |sum| over all contiguous index rectangles, summed cell by cell.
template <class T>
T kuiper(const std::vector<T>& d, std::size_t l, std::size_t m) {
  T best{0};
  for (std::size_t i1 = 0; i1 < l; ++i1) {
    for (std::size_t i2 = i1; i2 < l; ++i2) {
      for (std::size_t j1 = 0; j1 < m; ++j1) {
        for (std::size_t j2 = j1; j2 < m; ++j2) {
          T s{0};
          for (std::size_t i = i1; i <= i2; ++i) {
            for (std::size_t j = j1; j <= j2; ++j) s += d[i * m + j];
          }
          best = std::max(best, s < T{0} ? -s : s);
        }
      }
    }
  }
  return best;
}

/// sup over boundaries a < x of nu((a,x]) / mu((a,x]) with 0/0 := 0,
/// evaluated at each point of a common support.
inline std::vector<double> minimal_density(const std::vector<double>& mu,
                                           const std::vector<double>& nu) {
  std::vector<double> f(mu.size(), 0.0);
  for (std::size_t x = 0; x < mu.size(); ++x) {
    double best = 0.0;
    for (std::size_t a = 0; a <= x; ++a) {
      double m = 0.0;
      double n = 0.0;
      for (std::size_t i = a; i <= x; ++i) {
        m += mu[i];
        n += nu[i];
      }
      if (m > 0.0) best = std::max(best, n / m);
    }
    f[x] = best;
  }
  return f;
}

}  // namespace oracle

}  // namespace testing_support
