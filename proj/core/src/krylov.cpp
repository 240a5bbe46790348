#include "chiralmag/krylov.hpp"

#include <cmath>
#include <string>

#include "chiralmag/errors.hpp"

namespace chiralmag {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

KrylovResult gmres(const LinearOp& apply, const std::vector<double>& rhs,
                   std::vector<double>& x, const KrylovConfig& cfg) {
  const std::size_t n = rhs.size();
  const int m = cfg.restart > 0 ? cfg.restart : 30;

  const double bnorm = nrm2(rhs);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    return {0, 0.0};
  }

  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
  std::vector<double> w(n), r(n);

  int total_iters = 0;
  double rel = 0.0;

  auto residual = [&](std::vector<double>& out) {
    apply(x, out);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] - out[i];
  };

  while (true) {
    residual(r);
    double beta = nrm2(r);
    rel = beta / bnorm;
    if (rel <= cfg.tol) return {total_iters, rel};
    if (total_iters >= cfg.max_iters) break;

    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    for (; j < m && total_iters < cfg.max_iters; ++j) {
      apply(V[j], w);
      ++total_iters;

      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        const double hij = dot(w, V[i]);
        H[i][j] = hij;
        for (std::size_t p = 0; p < n; ++p) w[p] -= hij * V[i][p];
      }
      const double hj1 = nrm2(w);
      H[j + 1][j] = hj1;
      if (hj1 > 0.0)
        for (std::size_t p = 0; p < n; ++p) V[j + 1][p] = w[p] / hj1;

      for (int i = 0; i < j; ++i) {  // apply accumulated Givens rotations
        const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double denom = std::hypot(H[j][j], H[j + 1][j]);
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = H[j][j] / denom;
        sn[j] = H[j + 1][j] / denom;
      }
      H[j][j] = cs[j] * H[j][j] + sn[j] * H[j + 1][j];
      H[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      rel = std::abs(g[j + 1]) / bnorm;
      if (rel <= cfg.tol || hj1 == 0.0) {
        ++j;
        break;
      }
    }

    // y = H^{-1} g by back substitution, then x += V y.
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int p = i + 1; p < j; ++p) s -= H[i][p] * y[p];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t p = 0; p < n; ++p) x[p] += y[i] * V[i][p];
    // Loop back: the true residual is recomputed at the top, so the
    // recurrence estimate never terminates the solve on its own.
  }

  throw SolverError("gmres: no convergence after " +
                        std::to_string(total_iters) +
                        " iterations (relative residual " +
                        std::to_string(rel) + ")",
                    rel, total_iters);
}

}  // namespace chiralmag
