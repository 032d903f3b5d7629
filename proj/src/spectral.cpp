#include "cnb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cnb/detail/vecops.hpp"
#include "cnb/rng.hpp"

namespace cnb {

namespace {

constexpr int kMaxSweeps = 60;

double offdiag_mass(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
  return std::sqrt(s);
}

// tan of the rotation angle that annihilates a_pq; the smaller root keeps the
// rotation angle below pi/4, which is what makes Jacobi monotone.
double jacobi_tan(double app, double aqq, double apq) {
  const double theta = (aqq - app) / (2.0 * apq);
  const double denom = std::abs(theta) + std::sqrt(theta * theta + 1.0);
  return (theta >= 0.0 ? 1.0 : -1.0) / denom;
}

// argmax |v_k|, lowest index on ties.
int pivot_index(std::span<const double> v) {
  int best = 0;
  double mag = std::abs(v[0]);
  for (int k = 1; k < static_cast<int>(v.size()); ++k) {
    if (std::abs(v[k]) > mag) {
      mag = std::abs(v[k]);
      best = k;
    }
  }
  return best;
}

}  // namespace

std::vector<double> EigenResult::vector(int k) const {
  const int n = vectors.dim();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = vectors(i, k);
  return v;
}

EigenResult symmetric_eigen(const Matrix& m) {
  const int n = m.dim();
  if (n == 0) return {{}, Matrix()};

  const double scale = max_abs(m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, scale)) {
        throw std::invalid_argument("symmetric_eigen: input is not symmetric");
      }
    }
  }

  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = 0.5 * (m(i, j) + m(j, i));

  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  double norm0 = 0.0;
  for (double e : a) norm0 += e * e;
  norm0 = std::sqrt(norm0);
  const double target = 1e-14 * norm0;

  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

  bool converged = offdiag_mass(a, n) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double t = jacobi_tan(at(p, p), at(q, q), apq);
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- JᵀAJ restricted to the (p,q) plane.
        const double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double& vkp = v[static_cast<size_t>(k) * n + p];
          double& vkq = v[static_cast<size_t>(k) * n + q];
          const double tp = vkp, tq = vkq;
          vkp = c * tp - s * tq;
          vkq = s * tp + c * tq;
        }
      }
    }
    converged = offdiag_mass(a, n) <= target;
  }
  if (!converged) {
    throw ConvergenceError("symmetric_eigen: no convergence after " + std::to_string(kMaxSweeps) +
                               " sweeps",
                           offdiag_mass(a, n));
  }

  // Order descending; stable on exact ties.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return at(i, i) > at(j, j); });

  std::vector<double> values(n);
  std::vector<std::vector<double>> cols(n);
  for (int k = 0; k < n; ++k) {
    values[k] = at(order[k], order[k]);
    cols[k].resize(n);
    for (int i = 0; i < n; ++i) cols[k][i] = v[static_cast<size_t>(i) * n + order[k]];
  }

  // Deterministic handling of degenerate eigenvalues: fix every vector's sign
  // by its pivot, then order the members of each numerically coincident
  // cluster by pivot index.
  for (auto& col : cols) {
    const int p = pivot_index(col);
    if (col[p] < 0.0) detail::scale(col, -1.0);
  }
  const double gap = 1e-9 * norm0;
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && values[hi - 1] - values[hi] < gap) ++hi;
    if (hi - lo > 1) {
      std::stable_sort(cols.begin() + lo, cols.begin() + hi,
                       [](const std::vector<double>& x, const std::vector<double>& y) {
                         return pivot_index(x) < pivot_index(y);
                       });
    }
    lo = hi;
  }

  std::vector<double> vec_entries(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) vec_entries[static_cast<size_t>(i) * n + k] = cols[k][i];
  return {std::move(values), Matrix(n, std::move(vec_entries))};
}

SvdResult svd(const Matrix& x) {
  const int n = x.dim();
  if (n == 0) return {Matrix(), {}, Matrix()};

  std::vector<double> a(x.entries());
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  auto col_dot = [&](const std::vector<double>& m, int p, int q) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += m[static_cast<size_t>(i) * n + p] * m[static_cast<size_t>(i) * n + q];
    return s;
  };
  auto rotate_cols = [&](std::vector<double>& m, int p, int q, double c, double s) {
    for (int i = 0; i < n; ++i) {
      double& mp = m[static_cast<size_t>(i) * n + p];
      double& mq = m[static_cast<size_t>(i) * n + q];
      const double tp = mp, tq = mq;
      mp = c * tp - s * tq;
      mq = s * tp + c * tq;
    }
  };

  bool converged = false;
  double last_off = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    last_off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = col_dot(a, p, p);
        const double aqq = col_dot(a, q, q);
        const double apq = col_dot(a, p, q);
        if (app == 0.0 || aqq == 0.0) continue;  // an exactly zero column is already orthogonal
        const double rel = std::abs(apq) / std::sqrt(app * aqq);
        last_off = std::max(last_off, rel);
        if (rel <= 1e-15) continue;
        converged = false;
        const double t = jacobi_tan(app, aqq, apq);
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        rotate_cols(a, p, q, c, s);
        rotate_cols(v, p, q, c, s);
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("svd: one-sided Jacobi did not converge after " +
                               std::to_string(kMaxSweeps) + " sweeps",
                           last_off);
  }

  std::vector<double> sig(n);
  for (int j = 0; j < n; ++j) sig[j] = std::sqrt(col_dot(a, j, j));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sig[i] > sig[j]; });

  std::vector<double> sigma(n);
  for (int k = 0; k < n; ++k) sigma[k] = sig[order[k]];
  const double clamp = 1e-13 * (n > 0 ? sigma[0] : 0.0);
  for (double& s : sigma)
    if (s <= clamp) s = 0.0;

  // U columns: normalized data columns where sigma > 0, then an orthonormal
  // completion from the standard basis for the null directions.
  std::vector<std::vector<double>> ucols(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) {
    if (sigma[k] <= 0.0) continue;
    const int j = order[k];
    const double inv = 1.0 / sig[j];
    for (int i = 0; i < n; ++i) ucols[k][i] = a[static_cast<size_t>(i) * n + j] * inv;
  }
  for (int k = 0; k < n; ++k) {
    if (sigma[k] > 0.0) continue;
    int best_e = -1;
    double best_norm = -1.0;
    std::vector<double> best_res;
    for (int e = 0; e < n; ++e) {
      std::vector<double> r(n, 0.0);
      r[e] = 1.0;
      for (int k2 = 0; k2 < n; ++k2) {
        if (k2 == k || (sigma[k2] <= 0.0 && k2 > k)) continue;
        const double proj = detail::dot(r, ucols[k2]);
        detail::axpy(r, -proj, ucols[k2]);
      }
      const double rn = detail::norm(r);
      if (rn > best_norm + 1e-12) {
        best_norm = rn;
        best_e = e;
        best_res = std::move(r);
      }
    }
    (void)best_e;
    detail::scale(best_res, 1.0 / best_norm);
    ucols[k] = std::move(best_res);
  }

  // Canonical signs: the largest-magnitude entry of each left vector is made
  // positive (the matching right vector flips with it).
  std::vector<double> u_entries(static_cast<size_t>(n) * n);
  std::vector<double> vt_entries(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    double flip = 1.0;
    const int p = pivot_index(ucols[k]);
    if (ucols[k][p] < 0.0) flip = -1.0;
    for (int i = 0; i < n; ++i) {
      u_entries[static_cast<size_t>(i) * n + k] = flip * ucols[k][i];
      // q2 = Vᵀ: row k of q2 is column j of V.
      vt_entries[static_cast<size_t>(k) * n + i] = flip * v[static_cast<size_t>(i) * n + j];
    }
  }

  return {Matrix(n, std::move(u_entries)), std::move(sigma), Matrix(n, std::move(vt_entries))};
}

PowerResult power_iteration(const LinearOperator& apply, int dim,
                            const std::vector<std::vector<double>>& deflate_against,
                            const PowerOptions& opts) {
  if (dim <= 0) throw std::invalid_argument("power_iteration: dimension must be positive");
  if (static_cast<int>(deflate_against.size()) >= dim) {
    throw std::invalid_argument("power_iteration: deflation set spans the whole space");
  }

  Rng rng(opts.seed);
  std::vector<double> v(dim), w(dim);
  for (double& e : v) e = rng.gaussian();

  auto deflate = [&](std::vector<double>& u) {
    for (const auto& d : deflate_against) detail::axpy(u, -detail::dot(u, d), d);
  };

  double residual = 0.0;
  for (long it = 1; it <= opts.max_iterations; ++it) {
    deflate(v);
    double nv = detail::norm(v);
    while (nv <= 1e-12) {  // start vector fell inside the deflated span; redraw
      for (double& e : v) e = rng.gaussian();
      deflate(v);
      nv = detail::norm(v);
    }
    detail::scale(v, 1.0 / nv);

    apply(v, w);
    deflate(w);

    const double lambda = detail::dot(v, w);
    double rs = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = w[i] - lambda * v[i];
      rs += d * d;
    }
    residual = std::sqrt(rs);
    if (residual <= opts.tol * std::max(1.0, std::abs(lambda))) {
      return {lambda, v, it, residual};
    }
    std::swap(v, w);
  }
  throw ConvergenceError("power_iteration: stalled after " + std::to_string(opts.max_iterations) +
                             " iterations",
                         residual);
}

}  // namespace cnb
