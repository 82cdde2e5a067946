#ifndef SIP_TRIDIAGONAL_HPP
#define SIP_TRIDIAGONAL_HPP

// Symmetric tridiagonal eigenvalue kernel: Sturm-sequence bisection for
// selected eigenvalues, inverse iteration for eigenvectors. The matrix is the
// Dirichlet finite-difference discretization of -d2/dx2 + V on [-c, c]:
// diag_i = 2/h^2 + V(x_i), constant off-diagonal -1/h^2.

#include <utility>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"

namespace sip {

struct TridiagonalOperator {
  std::vector<double> diag;
  double offdiag = 0.0;
  double h = 0.0;  // grid spacing
  int size() const { return static_cast<int>(diag.size()); }
  double x_of(int i, double half_width) const { return -half_width + (i + 1) * h; }
};

TridiagonalOperator discretize_hamiltonian(const ModelParams& params,
                                           const SolverConfig& cfg);

// Number of eigenvalues strictly below lambda (negative pivots of the shifted
// LDL^T recurrence, with the standard tiny-pivot substitution).
int sturm_count(const TridiagonalOperator& op, double lambda);

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op);

// k-th smallest eigenvalue (0-based) by bisection on sturm_count.
double eigenvalue_by_index(const TridiagonalOperator& op, int k);

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int m);

// Inverse iteration at the given eigenvalue; returns the grid vector
// normalized so that h * sum(v^2) = 1. Throws std::runtime_error when the
// iteration fails to settle within max_iter sweeps.
std::vector<double> eigenvector(const TridiagonalOperator& op, double lambda,
                                int max_iter = 50);

}  // namespace sip

#endif
