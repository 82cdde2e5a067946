#include "sip/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sip {

TridiagonalOperator discretize_hamiltonian(const ModelParams& params,
                                           const SolverConfig& cfg) {
  cfg.validate();
  TridiagonalOperator op;
  const int n = cfg.grid_points - 1;  // interior points, psi(+-c) = 0
  op.h = 2.0 * cfg.half_width / cfg.grid_points;
  op.offdiag = -1.0 / (op.h * op.h);
  op.diag.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = -cfg.half_width + (i + 1) * op.h;
    op.diag[i] = 2.0 / (op.h * op.h) + reporting_potential(params, x);
  }
  return op;
}

int sturm_count(const TridiagonalOperator& op, double lambda) {
  const double b2 = op.offdiag * op.offdiag;
  const double pivmin =
      std::max(b2, 1.0) * std::numeric_limits<double>::min() /
      std::numeric_limits<double>::epsilon();
  int count = 0;
  double d = 1.0;
  bool first = true;
  for (double a : op.diag) {
    d = first ? (a - lambda) : (a - lambda - b2 / d);
    first = false;
    if (std::abs(d) < pivmin) d = (d < 0.0) ? -pivmin : pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double r = 2.0 * std::abs(op.offdiag);
  for (double a : op.diag) {
    lo = std::min(lo, a - r);
    hi = std::max(hi, a + r);
  }
  const double pad = 1e-10 * std::max(std::abs(lo), std::abs(hi)) +
                     std::numeric_limits<double>::min();
  return {lo - pad, hi + pad};
}

double eigenvalue_by_index(const TridiagonalOperator& op, int k) {
  if (k < 0 || k >= op.size()) throw std::out_of_range("eigenvalue index out of range");
  auto [lo, hi] = gershgorin_bounds(op);
  // invariant: count(lo) <= k < count(hi)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(op, mid) <= k)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid)) + 1e-300) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int m) {
  if (m < 0 || m > op.size())
    throw std::invalid_argument("requested eigenvalue count out of range");
  std::vector<double> w;
  w.reserve(m);
  for (int k = 0; k < m; ++k) w.push_back(eigenvalue_by_index(op, k));
  return w;
}

std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda,
                                int max_iter) {
  const int n = op.size();
  const double b = op.offdiag;
  // Shift slightly off the eigenvalue so the factorization stays regular.
  const double shift = lambda * (1.0 + 1e-13) + 1e-12;

  // LU with partial pivoting of (T - shift I); tridiagonal plus one fill-in
  // superdiagonal.
  std::vector<double> du(n, 0.0), d(n), du2(n, 0.0), dl(n, 0.0);
  std::vector<int> piv(n, 0);
  for (int i = 0; i < n; ++i) {
    d[i] = op.diag[i] - shift;
    if (i + 1 < n) du[i] = b;
    if (i > 0) dl[i] = b;
  }
  // factorize (classic dgttrf)
  for (int i = 0; i < n - 1; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i + 1])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double f = dl[i + 1] / d[i];
      dl[i + 1] = f;
      d[i + 1] -= f * du[i];
      piv[i] = 0;
    } else {
      const double f = d[i] / dl[i + 1];
      d[i] = dl[i + 1];
      dl[i + 1] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      piv[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;

  auto solve = [&](std::vector<double>& rhs) {
    for (int i = 0; i < n - 1; ++i) {
      if (piv[i] == 0) {
        rhs[i + 1] -= dl[i + 1] * rhs[i];
      } else {
        const double tmp = rhs[i];
        rhs[i] = rhs[i + 1];
        rhs[i + 1] = tmp - dl[i + 1] * rhs[i];
      }
    }
    rhs[n - 1] /= d[n - 1];
    if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i)
      rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
  };

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = ((i % 3) - 1) * 0.7 + 0.31;  // deterministic seed
  for (int it = 0; it < max_iter; ++it) {
    solve(v);
    double nrm = 0.0;
    for (double vi : v) nrm += vi * vi;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      throw std::runtime_error("inverse iteration failed to converge");
    for (double& vi : v) vi /= nrm;
    // residual check: ||T v - lambda v||
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double tv = op.diag[i] * v[i];
      if (i > 0) tv += b * v[i - 1];
      if (i + 1 < n) tv += b * v[i + 1];
      const double r = tv - lambda * v[i];
      res += r * r;
    }
    res = std::sqrt(res);
    if (res <= 1e-8 * std::max(1.0, std::abs(lambda))) break;
    if (it == max_iter - 1)
      throw std::runtime_error("inverse iteration failed to converge");
  }
  const double s = 1.0 / std::sqrt(op.h);
  for (double& vi : v) vi *= s;  // h * sum v^2 = 1
  return v;
}

}  // namespace sip
