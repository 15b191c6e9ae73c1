#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "hypbil/billiard.hpp"
#include "hypbil/polygon.hpp"

// Minimization of the average trajectory length, over the right-angled
// polygon moduli (2k-3 free side lengths) with Nelder-Mead, and over the
// one-parameter Lambert family with golden-section search. Both searches are
// derivative-free: every objective evaluation runs a Newton closing solve,
// so analytic gradients are not available.

namespace hypbil {

struct ObjectiveSpec {
  int k = 3;
  BilliardSequence sequence;
  std::vector<std::pair<double, double>> parameter_box;
  double penalty = 1e6;
};

// default box [0.2, 4.0] x regular side, the minimum is well interior
inline ObjectiveSpec make_objective(int k, const BilliardSequence& a) {
  ObjectiveSpec spec;
  spec.k = k;
  spec.sequence = a;
  double s = regular_side_length(k);
  spec.parameter_box.assign(2 * k - 3, {0.2 * s, 4.0 * s});
  return spec;
}

inline std::vector<double> regular_parameters(int k) {
  return std::vector<double>(2 * k - 3, regular_side_length(k));
}

// family average at the polygon with the given free sides; any construction
// or validity failure is encoded as the penalty value instead of thrown
inline double avg_length_objective(const ObjectiveSpec& spec,
                                   const std::vector<double>& params) {
  if (params.size() != spec.parameter_box.size()) return spec.penalty;
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i] < spec.parameter_box[i].first ||
        params[i] > spec.parameter_box[i].second)
      return spec.penalty;
  try {
    RightAngledPolygon P = polygon_from_sides(spec.k, params);
    return cyclic_family(P, spec.sequence).average_length;
  } catch (const GeometryError&) {
    return spec.penalty;
  }
}

struct MinimizationResult {
  std::vector<double> argmin;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double distance_to_regular = 0.0;  // max-norm
  int penalty_evaluations = 0;
  std::pair<double, double> searched_range{0.0, 0.0};  // 1-D search only
};

namespace detail {

struct SimplexPoint {
  std::vector<double> x;
  double f = 0.0;
};

// standard Nelder-Mead (reflect 1, expand 2, contract 1/2, shrink 1/2),
// stopping when the simplex diameter drops below 1e-8
inline MinimizationResult nelder_mead(const ObjectiveSpec& spec,
                                      const std::vector<double>& start,
                                      int max_iter, int* penalty_count) {
  size_t d = start.size();
  auto eval = [&](const std::vector<double>& x) {
    double f = avg_length_objective(spec, x);
    if (f >= spec.penalty && penalty_count) ++*penalty_count;
    return f;
  };

  std::vector<SimplexPoint> S(d + 1);
  S[0] = {start, eval(start)};
  for (size_t i = 0; i < d; ++i) {
    std::vector<double> x = start;
    x[i] += 0.05 * start[i];
    S[i + 1] = {x, eval(x)};
  }

  MinimizationResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::sort(S.begin(), S.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });
    double diam = 0.0;
    for (size_t i = 1; i <= d; ++i)
      for (size_t j = 0; j < d; ++j)
        diam = std::max(diam, std::fabs(S[i].x[j] - S[0].x[j]));
    if (diam < 1e-8) break;

    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) centroid[j] += S[i].x[j];
    }
    for (size_t j = 0; j < d; ++j) centroid[j] /= static_cast<double>(d);

    auto blend = [&](double c) {
      std::vector<double> x(d);
      for (size_t j = 0; j < d; ++j)
        x[j] = centroid[j] + c * (centroid[j] - S[d].x[j]);
      return x;
    };

    std::vector<double> xr = blend(1.0);
    double fr = eval(xr);
    if (fr < S[0].f) {
      std::vector<double> xe = blend(2.0);
      double fe = eval(xe);
      if (fe < fr)
        S[d] = {xe, fe};
      else
        S[d] = {xr, fr};
    } else if (fr < S[d - 1].f) {
      S[d] = {xr, fr};
    } else {
      std::vector<double> xc = blend(fr < S[d].f ? 0.5 : -0.5);
      double fc = eval(xc);
      if (fc < std::min(fr, S[d].f)) {
        S[d] = {xc, fc};
      } else {
        for (size_t i = 1; i <= d; ++i) {
          for (size_t j = 0; j < d; ++j)
            S[i].x[j] = S[0].x[j] + 0.5 * (S[i].x[j] - S[0].x[j]);
          S[i].f = eval(S[i].x);
        }
      }
    }
  }
  std::sort(S.begin(), S.end(),
            [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });
  double diam = 0.0;
  for (size_t i = 1; i <= d; ++i)
    for (size_t j = 0; j < d; ++j)
      diam = std::max(diam, std::fabs(S[i].x[j] - S[0].x[j]));
  res.argmin = S[0].x;
  res.value = S[0].f;
  res.iterations = iter;
  res.converged = diam < 1e-8 && S[0].f < spec.penalty;
  return res;
}

}  // namespace detail

// multi-start search: the regular polygon plus 8 seeded random perturbations
inline MinimizationResult minimize_polygon(const ObjectiveSpec& spec,
                                           unsigned long long seed = 0,
                                           int max_iter = 4000) {
  std::vector<double> reg = regular_parameters(spec.k);
  std::vector<std::vector<double>> starts{reg};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(0.85, 1.2);
  for (int r = 0; r < 8; ++r) {
    std::vector<double> x = reg;
    for (double& c : x) c *= factor(rng);
    starts.push_back(x);
  }

  MinimizationResult best;
  bool have = false;
  int penalties = 0;
  for (const auto& s : starts) {
    MinimizationResult r = detail::nelder_mead(spec, s, max_iter, &penalties);
    if (!r.converged) continue;
    if (!have || r.value < best.value) {
      best = r;
      have = true;
    }
  }
  if (!have) throw GeometryError("optimization failed");
  best.penalty_evaluations = penalties;
  for (size_t j = 0; j < reg.size(); ++j)
    best.distance_to_regular =
        std::max(best.distance_to_regular, std::fabs(best.argmin[j] - reg[j]));
  return best;
}

// objective of the one-parameter family: the reflective-pair average
inline double lambert_objective(int k, const BilliardSequence& a, double t,
                                double penalty = 1e6) {
  try {
    LambertQuad Q = lambert_quad(k, t);
    return reflective_pair(Q, a).average;
  } catch (const GeometryError&) {
    return penalty;
  }
}

// Golden-section search over t. If the sequence is invalid somewhere in the
// range, the range is first shrunk to the widest contiguous valid window
// (reported via searched_range); an empty window is an error.
inline MinimizationResult minimize_lambert(int k, const BilliardSequence& a,
                                           std::pair<double, double> t_range,
                                           double tol = 1e-10) {
  const double penalty = 1e6;
  const int grid = 64;
  double lo = t_range.first, hi = t_range.second;
  if (!(lo > 0.0) || !(hi > lo))
    throw GeometryError("empty Lambert parameter range");

  std::vector<char> ok(grid + 1);
  int best_len = 0, best_start = -1, run = 0, run_start = 0;
  for (int i = 0; i <= grid; ++i) {
    double t = lo + (hi - lo) * i / grid;
    ok[i] = lambert_objective(k, a, t, penalty) < penalty;
    if (ok[i]) {
      if (run == 0) run_start = i;
      if (++run > best_len) {
        best_len = run;
        best_start = run_start;
      }
    } else {
      run = 0;
    }
  }
  if (best_len == 0)
    throw GeometryError("sequence invalid across the whole parameter range");
  double wlo = lo + (hi - lo) * best_start / grid;
  double whi = lo + (hi - lo) * (best_start + best_len - 1) / grid;

  auto f = [&](double t) { return lambert_objective(k, a, t, penalty); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = whi - invphi * (whi - wlo);
  double x2 = wlo + invphi * (whi - wlo);
  double f1 = f(x1), f2 = f(x2);
  int iter = 0;
  while (whi - wlo > tol && iter < 400) {
    if (f1 <= f2) {
      whi = x2;
      x2 = x1;
      f2 = f1;
      x1 = whi - invphi * (whi - wlo);
      f1 = f(x1);
    } else {
      wlo = x1;
      x1 = x2;
      f1 = f2;
      x2 = wlo + invphi * (whi - wlo);
      f2 = f(x2);
    }
    ++iter;
  }
  MinimizationResult res;
  double t_star = 0.5 * (wlo + whi);
  res.argmin = {t_star};
  res.value = f(t_star);
  res.iterations = iter;
  res.converged = whi - wlo <= tol;
  res.distance_to_regular = std::fabs(t_star - regular_lambert_parameter(k));
  res.searched_range = {lo + (hi - lo) * best_start / grid,
                        lo + (hi - lo) * (best_start + best_len - 1) / grid};
  return res;
}

// objective samples along the straight segment through `center` in direction
// `dir`, for unimodality spot checks
inline std::vector<double> objective_profile(const ObjectiveSpec& spec,
                                             const std::vector<double>& center,
                                             const std::vector<double>& dir,
                                             double halfwidth, int samples) {
  std::vector<double> out;
  for (int i = 0; i < samples; ++i) {
    double u = -halfwidth + 2.0 * halfwidth * i / (samples - 1);
    std::vector<double> x = center;
    for (size_t j = 0; j < x.size(); ++j) x[j] += u * dir[j];
    out.push_back(avg_length_objective(spec, x));
  }
  return out;
}

// true when the finite samples have a single run of local minima
inline bool single_dip(const std::vector<double>& v, double penalty = 1e6) {
  int first = -1, last = -1;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] < penalty) {
      if (first < 0) first = static_cast<int>(i);
      last = static_cast<int>(i);
    }
  if (first < 0) return false;
  int minima = 0;
  for (int i = first + 1; i < last; ++i)
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) ++minima;
  return minima <= 1;
}

}  // namespace hypbil
