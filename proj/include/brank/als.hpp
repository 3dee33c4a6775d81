// Alternating least squares over the three factor matrices, in plain IEEE
// doubles with a fixed evaluation order so every run is reproducible from
// its seed. The point is not just to find decompositions: on border-rank
// targets the search "succeeds" only with exploding coefficients, and that
// signature (small residual, huge factor entries) is detected and reported
// as its own outcome.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brank/decomposition.hpp"
#include "brank/errors.hpp"
#include "brank/prng.hpp"
#include "brank/tensor.hpp"

namespace brank {

struct AlsOptions {
  std::uint64_t seed = 1;
  int max_iters = 400;
  int restarts = 1;
  double residual_tol = 1e-8;         // converged when max-norm residual drops below
  double blowup_residual_tol = 1e-4;  // blow-up signature: residual below this ...
  double blowup_threshold = 1e3;      // ... while coefficient max-norm exceeds this
  double regularization = 0.0;        // Tikhonov lambda; 0 keeps blow-ups observable
  // Extrapolated line search (factors + s * step, s = cbrt(iter), kept only
  // when it lowers the residual). Cuts through the slow "swamp" phase that
  // border-rank targets put ALS into; disable for textbook-plain sweeps.
  bool line_search = true;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  std::string outcome;
  double final_residual = 0.0;
  double final_coeff_norm = 0.0;
  int iterations = 0;
};

struct SearchTrace {
  // Histories are recorded every `record_stride` sweeps (plus the final
  // sweep), so long runs stay summarizable without unbounded memory.
  std::vector<double> residuals;
  std::vector<double> coeff_norms;  // same length as residuals
  int record_stride = 1;
  int iterations = 0;
  std::uint64_t seed = 0;  // seed of the selected restart
  std::string outcome = "budget_exhausted";
  std::vector<std::string> warnings;
  std::vector<RestartSummary> restarts;  // every restart, in index order
};

namespace detail {

struct FloatFactors {
  // Row-major factor matrices: U is a x r, V is b x r, W is c x r.
  std::vector<double> u, v, w;
  int a = 0, b = 0, c = 0, r = 0;
  double& U(int i, int j) { return u[static_cast<size_t>(i) * r + j]; }
  double& V(int i, int j) { return v[static_cast<size_t>(i) * r + j]; }
  double& W(int i, int j) { return w[static_cast<size_t>(i) * r + j]; }
};

inline double als_residual(const std::vector<double>& target, FloatFactors& f) {
  double worst = 0.0;
  size_t at = 0;
  for (int i = 0; i < f.a; ++i)
    for (int p = 0; p < f.b; ++p)
      for (int q = 0; q < f.c; ++q) {
        double acc = 0.0;
        for (int j = 0; j < f.r; ++j) acc += f.U(i, j) * f.V(p, j) * f.W(q, j);
        worst = std::max(worst, std::fabs(target[at++] - acc));
      }
  return worst;
}

inline double coeff_max_norm(const FloatFactors& f) {
  double worst = 0.0;
  for (double x : f.u) worst = std::max(worst, std::fabs(x));
  for (double x : f.v) worst = std::max(worst, std::fabs(x));
  for (double x : f.w) worst = std::max(worst, std::fabs(x));
  return worst;
}

// Solves G X = M for X (r x rows), G symmetric positive semidefinite r x r,
// by Gaussian elimination with partial pivoting. Returns false on a pivot
// collapse (numerically singular Gram matrix).
inline bool solve_gram(std::vector<double> g, std::vector<double>& m, int r, int rows,
                       double* min_pivot) {
  *min_pivot = std::numeric_limits<double>::infinity();
  for (int col = 0; col < r; ++col) {
    int piv = col;
    for (int i = col + 1; i < r; ++i)
      if (std::fabs(g[static_cast<size_t>(i) * r + col]) >
          std::fabs(g[static_cast<size_t>(piv) * r + col]))
        piv = i;
    double head = g[static_cast<size_t>(piv) * r + col];
    if (std::fabs(head) < 1e-300) return false;
    *min_pivot = std::min(*min_pivot, std::fabs(head));
    if (piv != col) {
      for (int j = 0; j < r; ++j)
        std::swap(g[static_cast<size_t>(piv) * r + j], g[static_cast<size_t>(col) * r + j]);
      for (int j = 0; j < rows; ++j)
        std::swap(m[static_cast<size_t>(piv) * rows + j], m[static_cast<size_t>(col) * rows + j]);
    }
    for (int i = 0; i < r; ++i) {
      if (i == col) continue;
      double factor = g[static_cast<size_t>(i) * r + col] / head;
      if (factor == 0.0) continue;
      for (int j = col; j < r; ++j)
        g[static_cast<size_t>(i) * r + j] -= factor * g[static_cast<size_t>(col) * r + j];
      for (int j = 0; j < rows; ++j)
        m[static_cast<size_t>(i) * rows + j] -= factor * m[static_cast<size_t>(col) * rows + j];
    }
  }
  for (int i = 0; i < r; ++i) {
    double head = g[static_cast<size_t>(i) * r + i];
    for (int j = 0; j < rows; ++j) m[static_cast<size_t>(i) * rows + j] /= head;
  }
  return true;
}

}  // namespace detail

// One seeded ALS run. The target is flattened once; each sweep updates U, V,
// then W by normal equations (Gram = Hadamard product of the other two
// factors' Grams), then records residual and coefficient norms.
inline std::pair<std::optional<BilinearDecomposition>, SearchTrace> als_single(
    const Tensor3& t, int r, const AlsOptions& opts, std::uint64_t seed) {
  const int a = t.a, b = t.b, c = t.c;
  std::vector<double> target;
  target.reserve(static_cast<size_t>(a) * b * c);
  for (int i = 0; i < a; ++i)
    for (int p = 0; p < b; ++p)
      for (int q = 0; q < c; ++q) target.push_back(rat_double(t.at(i, p, q)));

  detail::FloatFactors f;
  f.a = a;
  f.b = b;
  f.c = c;
  f.r = r;
  Prng rng(seed);
  auto init = [&](std::vector<double>& m, int rows) {
    m.resize(static_cast<size_t>(rows) * r);
    for (double& x : m) x = 2.0 * rng.unit_double() - 1.0;
  };
  init(f.u, a);
  init(f.v, b);
  init(f.w, c);

  SearchTrace trace;
  trace.seed = seed;
  long singular_count = 0;
  long illcond_count = 0;
  double worst_pivot = std::numeric_limits<double>::infinity();

  // Updates factor `rows x r` matrix `x` from the two fixed factors: the
  // normal equations are x * gram = rhs with gram = (y^T y) o (z^T z) and
  // rhs[i][j] = sum over the slice of T against the Khatri-Rao column j.
  auto update = [&](std::vector<double>& x, int rows, const std::vector<double>& y, int ylen,
                    const std::vector<double>& z, int zlen, int axis) {
    std::vector<double> gram(static_cast<size_t>(r) * r, 0.0);
    for (int j1 = 0; j1 < r; ++j1)
      for (int j2 = 0; j2 < r; ++j2) {
        double gy = 0.0, gz = 0.0;
        for (int i = 0; i < ylen; ++i)
          gy += y[static_cast<size_t>(i) * r + j1] * y[static_cast<size_t>(i) * r + j2];
        for (int i = 0; i < zlen; ++i)
          gz += z[static_cast<size_t>(i) * r + j1] * z[static_cast<size_t>(i) * r + j2];
        gram[static_cast<size_t>(j1) * r + j2] = gy * gz;
      }
    if (opts.regularization > 0.0)
      for (int j = 0; j < r; ++j) gram[static_cast<size_t>(j) * r + j] += opts.regularization;

    // rhs stored transposed (r x rows) to suit the solver.
    std::vector<double> rhs(static_cast<size_t>(r) * rows, 0.0);
    for (int i = 0; i < a; ++i)
      for (int p = 0; p < b; ++p)
        for (int q = 0; q < c; ++q) {
          double val = target[(static_cast<size_t>(i) * b + p) * c + q];
          if (val == 0.0) continue;
          int row = axis == 0 ? i : (axis == 1 ? p : q);
          int y_at = axis == 0 ? p : (axis == 1 ? i : i);
          int z_at = axis == 0 ? q : (axis == 1 ? q : p);
          for (int j = 0; j < r; ++j)
            rhs[static_cast<size_t>(j) * rows + row] +=
                val * y[static_cast<size_t>(y_at) * r + j] * z[static_cast<size_t>(z_at) * r + j];
        }
    double min_pivot = 0.0;
    if (!detail::solve_gram(gram, rhs, r, rows, &min_pivot)) {
      ++singular_count;
      return;
    }
    if (min_pivot < 1e-12) {
      ++illcond_count;
      worst_pivot = std::min(worst_pivot, min_pivot);
    }
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < r; ++j) x[static_cast<size_t>(i) * r + j] = rhs[static_cast<size_t>(j) * rows + i];
  };

  const int stride = std::max(1, opts.max_iters / 4096);
  trace.record_stride = stride;

  // Stagnation watch: above the blow-up residual band, a run is parked once
  // neither the residual (down) nor the coefficient norm (up) has moved by a
  // relative 1e-3 across a window proportional to the sweeps already spent.
  // Blow-up paths change like a power of the sweep count, which is a
  // constant factor per proportional window, so they never read as parked.
  constexpr int kStagnationWindow = 2000;
  constexpr double kStagnationRelTol = 1e-3;
  double stagnation_ref = std::numeric_limits<double>::infinity();
  double stagnation_coeff_ref = 0.0;
  int stagnation_mark = 0;

  std::vector<double> prev_u = f.u, prev_v = f.v, prev_w = f.w;
  detail::FloatFactors cand = f;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    update(f.u, a, f.v, b, f.w, c, 0);
    update(f.v, b, f.u, a, f.w, c, 1);
    update(f.w, c, f.u, a, f.v, b, 2);
    double residual = detail::als_residual(target, f);
    if (opts.line_search && iter >= 1) {
      // Extrapolate along the secant through the previous accepted point and
      // the fresh sweep, doubling the step while the residual keeps
      // dropping. Plain sweeps crawl along rank-deficient valleys; the
      // doubling turns that crawl into geometric progress and is a no-op
      // (one rejected probe) whenever the extrapolation does not help.
      std::vector<double> dir_u = f.u, dir_v = f.v, dir_w = f.w;
      auto blend = [](std::vector<double>& out, const std::vector<double>& base,
                      const std::vector<double>& tip, double s) {
        for (size_t i = 0; i < tip.size(); ++i) out[i] = base[i] + s * (tip[i] - base[i]);
      };
      for (double s = 2.0; s < 1e18; s *= 2.0) {
        blend(cand.u, prev_u, dir_u, s);
        blend(cand.v, prev_v, dir_v, s);
        blend(cand.w, prev_w, dir_w, s);
        double cand_residual = detail::als_residual(target, cand);
        if (!(cand_residual < residual)) break;
        residual = cand_residual;
        f.u.swap(cand.u);
        f.v.swap(cand.v);
        f.w.swap(cand.w);
      }
    }
    prev_u = f.u;
    prev_v = f.v;
    prev_w = f.w;
    double coeff = detail::coeff_max_norm(f);
    trace.iterations = iter + 1;

    bool converged = residual < opts.residual_tol;
    bool blowup = !converged && residual < opts.blowup_residual_tol &&
                  coeff > opts.blowup_threshold;
    // Coefficients this large put the cancellation noise of the trilinear
    // evaluation (about coeff^2 * machine epsilon) above the blow-up
    // residual band, so a run still outside the band can never verifiably
    // enter it and further sweeps only amplify the noise.
    bool runaway = !converged && !blowup && coeff > 1e6;
    bool stagnant = false;
    if (iter == 0) {
      stagnation_ref = residual;
      stagnation_coeff_ref = coeff;
      stagnation_mark = 0;
    } else if (iter - stagnation_mark >= std::max(kStagnationWindow, iter / 4)) {
      stagnant = residual > opts.blowup_residual_tol &&
                 stagnation_ref - residual < kStagnationRelTol * stagnation_ref &&
                 coeff - stagnation_coeff_ref < kStagnationRelTol * stagnation_coeff_ref;
      stagnation_ref = residual;
      stagnation_coeff_ref = coeff;
      stagnation_mark = iter;
    }
    bool stopping = converged || blowup || runaway || stagnant || iter + 1 == opts.max_iters;
    if (stopping || iter % stride == 0) {
      trace.residuals.push_back(residual);
      trace.coeff_norms.push_back(coeff);
    }
    if (converged) {
      trace.outcome = "converged";
      break;
    }
    if (blowup) {
      trace.outcome = "diverged_blowup";
      break;
    }
    if (runaway) {
      trace.warnings.push_back("coefficients passed 1e6 at sweep " + std::to_string(iter + 1) +
                               " without entering the blow-up band; stopping early");
      break;
    }
    if (stagnant) {
      trace.warnings.push_back("stagnated at sweep " + std::to_string(iter + 1) +
                               "; stopping early");
      break;
    }
  }
  if (singular_count > 0)
    trace.warnings.push_back("singular gram matrix on " + std::to_string(singular_count) +
                             " update(s); factor left unchanged");
  if (illcond_count > 0)
    trace.warnings.push_back("ill-conditioned gram matrix on " + std::to_string(illcond_count) +
                             " update(s); smallest pivot " + std::to_string(worst_pivot));

  std::optional<BilinearDecomposition> result;
  if (trace.outcome == "converged") {
    BilinearDecomposition d;
    d.mode = BilinearDecomposition::Mode::floating;
    d.r = r;
    d.a = a;
    d.b = b;
    d.c = c;
    for (int j = 0; j < r; ++j) {
      std::vector<double> cu(a), cv(b), cw(c);
      for (int i = 0; i < a; ++i) cu[i] = f.U(i, j);
      for (int i = 0; i < b; ++i) cv[i] = f.V(i, j);
      for (int i = 0; i < c; ++i) cw[i] = f.W(i, j);
      d.fu.push_back(std::move(cu));
      d.fv.push_back(std::move(cv));
      d.fw.push_back(std::move(cw));
    }
    result = std::move(d);
  }
  return {std::move(result), std::move(trace)};
}

// Runs opts.restarts independently seeded searches and returns the best by
// (outcome priority, then residual). The returned trace carries per-restart
// summaries so no outcome is hidden by the selection.
inline std::pair<std::optional<BilinearDecomposition>, SearchTrace> als_search(const Tensor3& t,
                                                                               int r,
                                                                               AlsOptions opts = {}) {
  if (r < 1) throw BadInput("als_search: r must be >= 1");
  if (t.is_zero()) throw ZeroTensor("als_search: tensor is zero");
  auto priority = [](const std::string& outcome) {
    if (outcome == "converged") return 0;
    if (outcome == "diverged_blowup") return 1;
    return 2;
  };
  std::optional<BilinearDecomposition> best_d;
  SearchTrace best_trace;
  std::vector<RestartSummary> summaries;
  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(restart));
    auto [d, trace] = als_single(t, r, opts, seed);
    RestartSummary summary;
    summary.seed = seed;
    summary.outcome = trace.outcome;
    summary.iterations = trace.iterations;
    summary.final_residual = trace.residuals.empty() ? 0.0 : trace.residuals.back();
    summary.final_coeff_norm = trace.coeff_norms.empty() ? 0.0 : trace.coeff_norms.back();
    summaries.push_back(summary);
    bool take = best_trace.residuals.empty() ||
                priority(trace.outcome) < priority(best_trace.outcome) ||
                (priority(trace.outcome) == priority(best_trace.outcome) &&
                 summary.final_residual < (best_trace.residuals.empty()
                                               ? std::numeric_limits<double>::infinity()
                                               : best_trace.residuals.back()));
    if (take) {
      best_d = std::move(d);
      best_trace = std::move(trace);
    }
  }
  best_trace.restarts = std::move(summaries);
  return {std::move(best_d), std::move(best_trace)};
}

inline Json trace_to_json(const SearchTrace& trace) {
  Json restarts = Json::array();
  for (const RestartSummary& s : trace.restarts)
    restarts.push_back(Json{{"seed", s.seed},
                            {"outcome", s.outcome},
                            {"final_residual", s.final_residual},
                            {"final_coeff_norm", s.final_coeff_norm},
                            {"iterations", s.iterations}});
  return Json{{"outcome", trace.outcome},
              {"seed", trace.seed},
              {"iterations", trace.iterations},
              {"record_stride", trace.record_stride},
              {"residuals", trace.residuals},
              {"coeff_norms", trace.coeff_norms},
              {"warnings", trace.warnings},
              {"restarts", std::move(restarts)}};
}

}  // namespace brank
