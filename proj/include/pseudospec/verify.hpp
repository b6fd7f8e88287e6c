#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudospec/analytic.hpp"
#include "pseudospec/operators.hpp"

namespace pseudospec {

struct EigenResult {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Unit discrete L2 norm (step * sum v^2 = 1), positive at mid-grid.
  std::vector<std::vector<double>> eigenvectors;
  /// Inverse-iteration sweeps per eigenvector.
  std::vector<int> iterations;
};

/// k smallest eigenpairs: multi-shift Sturm bisection, then inverse iteration
/// re-orthogonalized against the vectors already found.
/// Throws invalid_argument for non-symmetric input or k outside [1, dim], and
/// solver_failure (naming the level) if inverse iteration does not converge.
EigenResult solve_symmetric_tridiagonal(const TridiagonalOperator& t, int k);

/// Eigenvalues only.
std::vector<double> bisect_eigenvalues(const TridiagonalOperator& t, int k);

/// Number of eigenvalues strictly below x.
int sturm_count(const TridiagonalOperator& t, double x);

/// ||H psi - E psi|| / ||psi||.
double eigen_residual(const TridiagonalOperator& H, std::span<const double> psi, double E);

/// h * sum u_i eta_ii v_i.
double eta_inner_product(std::span<const double> u, std::span<const double> v,
                         const DiagonalOperator& eta, const GridSpec& g);

struct Tolerances {
  double spectrum = 1e-3;
  double ratio_lo = 3.2;
  double ratio_hi = 4.8;
  double gram = 1e-6;
  /// Bound on the identity residuals when mu = 0 (H already Hermitian).
  double hermitian_limit = 1e-12;
  double marginal = kMarginalTolerance;

  bool ratio_ok(double r) const noexcept { return r >= ratio_lo && r <= ratio_hi; }
};

/// A residual measured on a grid and on its refinement (step halved).
struct ConvergenceCheck {
  double coarse = 0.0;
  double fine = 0.0;
  /// coarse / fine; +inf when fine is zero.
  double ratio = 0.0;
  bool pass = false;
};

struct LevelCheck {
  int n = 0;
  double eps_analytic = 0.0;
  double energy_analytic = 0.0;
  double eps_numeric = 0.0;
  double spectrum_deviation = 0.0;
  ConvergenceCheck eigen_residual;
  bool valid = true;
  bool marginal = false;
  /// Counted by the tolerance gates (valid and not marginal).
  bool gated = true;
  bool spectrum_pass = true;
};

struct VerificationReport {
  Family family = Family::harmonic;
  SwansonParams swanson;
  double mu = 0.0;
  GridSpec grid;
  GridSpec refined_grid;
  Tolerances tolerances;
  bool hermitian_limit = false;

  ConvergenceCheck conjugation;
  ConvergenceCheck pseudo_hermiticity;
  std::vector<LevelCheck> levels;
  /// Largest |G_mn|, m != n, of the eta-Gram matrix of eta-normalized psi_n
  /// over the gated levels.
  double eta_orthogonality = 0.0;
  bool eta_orthogonality_pass = true;

  bool passed() const noexcept;
  /// Flat name -> value view ("conjugation", "eigen_residual[2]", ...).
  std::map<std::string, double> residuals() const;
};

/// Every level n < `levels` that is a normalizable bound state is checked;
/// rm2 levels within the marginal tolerance of the continuum are reported but
/// not gated. Convergence checks use g and g.refined().
VerificationReport run_full_verification(const SwansonParams& p, const Superpotential& sp,
                                         const GridSpec& g, int levels,
                                         const Tolerances& tol = {});
/// Same for an already derived model (e.g. from derive_pt).
VerificationReport run_full_verification(const DerivedParams& d, const Superpotential& sp,
                                         const GridSpec& g, int levels,
                                         const Tolerances& tol = {});

}  // namespace pseudospec
