#pragma once

#include <functional>
#include <vector>

namespace chiralmag {

struct KrylovConfig {
  double tol = 1e-8;   ///< relative residual target, ||b - Ax|| / ||b||
  int max_iters = 500; ///< total matvec budget across restarts
  int restart = 30;    ///< Arnoldi basis size between restarts
};

struct KrylovResult {
  int iterations = 0;
  double residual = 0.0;  ///< final relative residual
};

using LinearOp =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
/// x holds the initial guess on entry and the solution on return.
/// Throws SolverError when the budget is exhausted above tolerance.
KrylovResult gmres(const LinearOp& apply, const std::vector<double>& rhs,
                   std::vector<double>& x, const KrylovConfig& cfg);

}  // namespace chiralmag
