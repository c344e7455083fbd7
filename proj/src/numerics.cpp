#include "mvl2e/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace mvl2e {

namespace {

void check_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) {
    throw ContractViolation(std::string(name) + ": entries must be finite");
  }
}

// Flips v so that its largest-magnitude entry is positive.
void fix_sign(Eigen::Ref<Vector> v) {
  Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

}  // namespace

double null_tolerance(const Vector& eigenvalues) {
  const double lmax = eigenvalues.size() > 0 ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-9 * std::max(1.0, lmax);
}

EigResult sym_eig(const Matrix& a, const EigenSelection& sel) {
  check_finite(a, "sym_eig");
  if (a.rows() != a.cols()) {
    throw ContractViolation("sym_eig: operand must be square, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw ContractViolation("sym_eig: operand asymmetric beyond tolerance");
  }
  if (sel.count < 1 || sel.count > a.rows()) {
    throw ContractViolation("sym_eig: requested " + std::to_string(sel.count) +
                            " eigenpairs from a " + std::to_string(a.rows()) +
                            "-dimensional operand");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.transpose()));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("sym_eig: eigensolver failed to converge");
  }
  const Vector& vals = solver.eigenvalues();  // ascending
  const Matrix& vecs = solver.eigenvectors();
  const Index n = vals.size();
  const double null_tol = null_tolerance(vals);

  EigResult out;
  out.eigenvalues.resize(sel.count);
  out.eigenvectors.resize(n, sel.count);
  Index taken = 0;
  for (Index step = 0; step < n && taken < sel.count; ++step) {
    const Index i = (sel.which == EigWhich::Smallest) ? step : n - 1 - step;
    if (sel.skip_null && std::abs(vals[i]) <= null_tol) continue;
    out.eigenvalues[taken] = vals[i];
    out.eigenvectors.col(taken) = vecs.col(i);
    fix_sign(out.eigenvectors.col(taken));
    ++taken;
  }
  if (taken < sel.count) {
    throw InsufficientSpectrum("sym_eig: only " + std::to_string(taken) +
                               " non-null eigenpairs available, " +
                               std::to_string(sel.count) + " requested");
  }
  return out;
}

SvdResult svd(const Matrix& m) {
  check_finite(m, "svd");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix svt(const Matrix& m, double tau) {
  if (!(tau >= 0.0)) {
    throw ContractViolation("svt: threshold must be nonnegative, got " + std::to_string(tau));
  }
  SvdResult d = svd(m);
  Vector shrunk = (d.singular_values.array() - tau).max(0.0);
  return d.u * shrunk.asDiagonal() * d.v.transpose();
}

}  // namespace mvl2e
