#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlsparse/error.hpp"
#include "mlsparse/lasso/linesearch.hpp"
#include "mlsparse/lasso/quadratic_model.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::lasso {

LineSearchResult sampled_linesearch(const std::function<std::optional<double>(double)>& eval,
                                    double f0, double beta, double alpha0, std::size_t max_trials) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("line search: beta must lie in (0,1)");
  if (!(alpha0 > 0.0)) throw InvalidArgument("line search: alpha0 must be positive");
  std::optional<LineSearchResult> prev;
  double alpha = alpha0;
  for (std::size_t i = 0; i < max_trials; ++i, alpha *= beta) {
    const auto v = eval(alpha);
    if (prev && prev->value < f0 && (!v || *v > prev->value)) return *prev;
    if (v) {
      prev = LineSearchResult{alpha, *v, i + 1};
    } else {
      prev.reset();
    }
  }
  if (prev && prev->value < f0) return *prev;
  throw StagnationError("line search: no sampled step decreases the objective");
}

LineSearchResult armijo_linesearch(const std::function<double(std::span<const double>)>& f,
                                   std::span<const double> x, std::span<const double> z, double beta,
                                   double alpha0,
                                   const std::function<bool(std::span<const double>)>& pd_guard,
                                   std::size_t max_trials) {
  if (x.size() != z.size()) throw InvalidArgument("line search: length mismatch");
  const double f0 = f(x);
  DenseVector trial(x.size());
  auto eval = [&](double a) -> std::optional<double> {
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + a * z[i];
    if (pd_guard && !pd_guard(trial)) return std::nullopt;
    return f(trial);
  };
  return sampled_linesearch(eval, f0, beta, alpha0, max_trials);
}

namespace {

double sign_after(double u, double p) {
  if (u > 0.0) return 1.0;
  if (u < 0.0) return -1.0;
  return p > 0.0 ? 1.0 : (p < 0.0 ? -1.0 : 0.0);
}

struct LineMin {
  double t = 0.0;
  std::vector<std::size_t> snapped;
};

// Exact minimizer over t >= 0 of  a t + c2 t^2 / 2 + sum lam_i |u_i + t p_i|.
LineMin line_minimize(const QuadraticModel& m, const IndexSet& r, std::span<const double> u,
                      std::span<const double> p, double a, double c2) {
  LineMin out;
  double s = a;
  struct Bp {
    double t;
    std::size_t i;
  };
  std::vector<Bp> bps;
  for (std::size_t i : r) {
    if (p[i] == 0.0) continue;
    const double l = m.lam(i);
    if (l == 0.0) continue;
    s += l * p[i] * sign_after(u[i], p[i]);
    if (u[i] != 0.0 && (u[i] > 0.0) != (p[i] > 0.0)) bps.push_back({-u[i] / p[i], i});
  }
  if (s >= 0.0 || !(c2 > 0.0)) return out;
  std::sort(bps.begin(), bps.end(), [](const Bp& x, const Bp& y) { return x.t != y.t ? x.t < y.t : x.i < y.i; });
  for (std::size_t k = 0; k < bps.size(); ++k) {
    const double tk = bps[k].t;
    const double root = -s / c2;
    if (root <= tk) {
      out.t = root;
      return out;
    }
    const std::size_t i = bps[k].i;
    s += 2.0 * m.lam(i) * std::abs(p[i]);
    if (s + c2 * tk >= 0.0) {
      out.t = tk;
      for (std::size_t q = k; q < bps.size() && bps[q].t == tk; ++q) out.snapped.push_back(bps[q].i);
      for (std::size_t q = k; q-- > 0 && bps[q].t == tk;) out.snapped.push_back(bps[q].i);
      return out;
    }
  }
  out.t = -s / c2;
  return out;
}

}  // namespace

PcdCgResult pcd_cg_solve(const QuadraticModel& m, const IndexSet& r, double rel_tol, std::size_t max_sweeps) {
  m.validate();
  for (std::size_t i : r)
    if (i >= m.size() || !(m.hessian_diag[i] > 0.0))
      throw InvalidArgument("pcd_cg_solve: non-positive Hessian diagonal at index " + std::to_string(i));

  const std::size_t n = m.size();
  PcdCgResult res;
  res.z.assign(n, 0.0);
  DenseVector hz(n, 0.0), u(m.base), d(n, 0.0), d_prev(n, 0.0), p(n, 0.0), hp(n, 0.0);
  double value = 0.0;
  double d0 = -1.0;
  double dprev_norm2 = 0.0;
  std::size_t since_restart = 0;

  auto pcd_direction = [&] {
    for (std::size_t i : r) {
      const double di = m.hessian_diag[i];
      const double gi = m.grad[i] + hz[i];
      d[i] = soft_shrinkage(u[i] - gi / di, m.lam(i) / di) - u[i];
    }
  };
  auto dnorm2 = [&](std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i : r) s += m.hessian_diag[i] * v[i] * v[i];
    return s;
  };

  while (res.sweeps < max_sweeps) {
    pcd_direction();
    const double dn2 = dnorm2(d);
    if (d0 < 0.0) d0 = std::sqrt(dn2);
    if (d0 == 0.0 || std::sqrt(dn2) <= rel_tol * d0) {
      res.converged = true;
      break;
    }

    bool use_cg = since_restart > 0 && since_restart < 10 && dprev_norm2 > 0.0;
    double beta = 0.0;
    if (use_cg) {
      double num = 0.0;
      for (std::size_t i : r) num += m.hessian_diag[i] * d[i] * (d[i] - d_prev[i]);
      beta = std::max(0.0, num / dprev_norm2);
      if (beta == 0.0) use_cg = false;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool cg = use_cg && attempt == 0;
      if (!cg && attempt == 1 && !use_cg) break;
      for (std::size_t i : r) p[i] = cg ? d[i] + beta * p[i] : d[i];
      std::fill(hp.begin(), hp.end(), 0.0);
      m.hessian_apply(p, hp);
      ++res.hessian_applies;
      double a = 0.0, c2 = 0.0;
      for (std::size_t i : r) {
        a += (m.grad[i] + hz[i]) * p[i];
        c2 += p[i] * hp[i];
      }
      const LineMin lm = line_minimize(m, r, u, p, a, c2);
      if (lm.t <= 0.0) {
        if (cg) continue;
        break;
      }
      DenseVector z_new(res.z), hz_new(hz);
      for (std::size_t i : r) {
        z_new[i] += lm.t * p[i];
        hz_new[i] += lm.t * hp[i];
      }
      for (std::size_t i : lm.snapped) z_new[i] = -m.base[i];
      // Change of m along the line, summed per coordinate so that it stays
      // accurate when far below the rounding of m itself.
      double change = 0.5 * lm.t * lm.t * c2;
      for (std::size_t i : r) {
        if (p[i] == 0.0) continue;
        const double ui = u[i], un = m.base[i] + z_new[i], step = z_new[i] - res.z[i];
        const double gi = m.grad[i] + hz[i], l = m.lam(i);
        if (l != 0.0 && ui != 0.0 && un != 0.0 && (un > 0.0) == (ui > 0.0)) {
          change += step * (gi + (ui > 0.0 ? l : -l));
        } else {
          change += step * gi;
          if (l != 0.0) change += l * (std::abs(un) - std::abs(ui));
        }
      }
      const double v_new = value + change;
      if (!(change < 0.0)) {
        if (cg) continue;
        break;
      }
      res.z.swap(z_new);
      hz.swap(hz_new);
      value = v_new;
      accepted = true;
      since_restart = cg ? since_restart + 1 : 1;
    }
    ++res.sweeps;
    if (!accepted) break;

    for (std::size_t i : r) u[i] = m.base[i] + res.z[i];
    d_prev.swap(d);
    dprev_norm2 = dn2;
    if (since_restart >= 10) {
      // Refresh Hz to shed drift from snapping, and restart the CG memory.
      std::fill(hz.begin(), hz.end(), 0.0);
      m.hessian_apply(res.z, hz);
      ++res.hessian_applies;
      double v = 0.0;
      for (std::size_t i : r) {
        v += m.grad[i] * res.z[i] + 0.5 * res.z[i] * hz[i];
        const double l = m.lam(i);
        if (l != 0.0) v += l * (std::abs(m.base[i] + res.z[i]) - std::abs(m.base[i]));
      }
      value = v;
      since_restart = 0;
    }
  }
  res.model_value = value;
  return res;
}

}  // namespace mlsparse::lasso
