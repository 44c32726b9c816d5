#include "hecke/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Swap the diagonal entries at positions k, k+1 of an upper-triangular T by a
// unitary similarity, accumulating it into U.
void schur_swap(CMat& t, CMat& u, int k) {
  Cplx a = t(k, k), b = t(k, k + 1), d = t(k + 1, k + 1);
  if (std::abs(a - d) < 1e-300) return;  // same eigenvalue: nothing to do
  // eigenvector of [[a,b],[0,d]] for d: (b, d-a)
  Cplx v0 = b, v1 = d - a;
  double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
  if (nrm == 0) return;
  v0 /= nrm;
  v1 /= nrm;
  // unitary G = [[v0, -conj(v1)], [v1, conj(v0)]]
  CMat g = CMat::Identity(t.rows(), t.cols());
  g(k, k) = v0;
  g(k, k + 1) = -std::conj(v1);
  g(k + 1, k) = v1;
  g(k + 1, k + 1) = std::conj(v0);
  t = g.adjoint() * t * g;
  u = u * g;
  t(k + 1, k) = 0.0;  // clean rounding residue
}

}  // namespace

CMat invariant_projector(const CMat& a, const std::function<bool(Cplx)>& select) {
  int n = (int)a.rows();
  Eigen::ComplexSchur<CMat> schur(a);
  CMat t = schur.matrixT();
  CMat u = schur.matrixU();
  // bubble selected eigenvalues to the leading positions
  int front = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (!select(t(pos, pos))) continue;
    for (int k = pos; k > front; --k) schur_swap(t, u, k - 1);
    ++front;
  }
  int p = front;  // selected block size
  if (p == 0) return CMat::Zero(n, n);
  if (p == n) return CMat::Identity(n, n);
  // T = [[T11, T12],[0, T22]]; projector onto the T22 part is
  // [[0, X],[0, I]] with X T22 - T11 X = T12; we want the T11 (selected) part:
  // P_sel = I - P_unsel.
  CMat t11 = t.topLeftCorner(p, p);
  CMat t12 = t.topRightCorner(p, n - p);
  CMat t22 = t.bottomRightCorner(n - p, n - p);
  CMat x = CMat::Zero(p, n - p);
  for (int j = 0; j < n - p; ++j) {
    CVec rhs = t12.col(j);
    for (int i = 0; i < j; ++i) rhs -= t22(i, j) * x.col(i);
    // (t22(j,j) I - T11) x_j = rhs, T11 upper triangular: back substitution
    CVec xj(p);
    for (int r = p - 1; r >= 0; --r) {
      Cplx s = rhs(r);
      for (int c = r + 1; c < p; ++c) s -= (-t11(r, c)) * xj(c);
      Cplx diag = t22(j, j) - t11(r, r);
      if (std::abs(diag) < 1e-14)
        throw NumericError("invariant_projector: eigenvalue clusters not separated");
      xj(r) = s / diag;
    }
    x.col(j) = xj;
  }
  CMat p_unsel = CMat::Zero(n, n);
  p_unsel.topRightCorner(p, n - p) = x;
  p_unsel.bottomRightCorner(n - p, n - p) = CMat::Identity(n - p, n - p);
  CMat proj_t = CMat::Identity(n, n) - p_unsel;
  return u * proj_t * u.adjoint();
}

SpectralSplit spectral_split(const CMat& a, double eps, double tol) {
  Eigen::ComplexEigenSolver<CMat> es(a, false);
  for (int i = 0; i < a.rows(); ++i) {
    double m = std::abs(es.eigenvalues()(i));
    bool on_circle = std::abs(m - 1.0) <= tol;
    bool inside = m <= 1.0 - eps + tol;
    if (!on_circle && !inside)
      throw SpectrumGapViolation("eigenvalue of modulus " + std::to_string(m) +
                                 " violates the (1-eps, 1) gap");
  }
  SpectralSplit out;
  out.p_one = invariant_projector(a, [&](Cplx z) { return std::abs(std::abs(z) - 1.0) <= 0.5 * eps; });
  out.p_small = CMat::Identity(a.rows(), a.cols()) - out.p_one;
  out.a_small = out.p_small * a;
  return out;
}

std::vector<EigenCluster> generalized_eigenspaces(const CMat& a, double cluster_tol) {
  Eigen::ComplexEigenSolver<CMat> es(a, false);
  int n = (int)a.rows();
  std::vector<Cplx> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = es.eigenvalues()(i);
  // greedy clustering
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    int c = (int)clusters.size();
    clusters.push_back({i});
    label[i] = c;
    for (int j = i + 1; j < n; ++j)
      if (label[j] < 0 && std::abs(vals[i] - vals[j]) < cluster_tol) {
        label[j] = c;
        clusters[c].push_back(j);
      }
  }
  std::vector<EigenCluster> out;
  for (auto& cl : clusters) {
    Cplx mean = 0;
    for (int i : cl) mean += vals[i];
    mean /= (double)cl.size();
    EigenCluster ec;
    ec.value = mean;
    ec.multiplicity = (int)cl.size();
    ec.projector = invariant_projector(
        a, [&](Cplx z) { return std::abs(z - mean) < 0.5 * cluster_tol + 1e-12; });
    out.push_back(ec);
  }
  return out;
}

std::vector<JointCluster> joint_eigenspaces(const std::vector<CMat>& fam,
                                            double cluster_tol, unsigned seed) {
  if (fam.empty()) return {};
  int n = (int)fam[0].rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    CMat combo = CMat::Zero(n, n);
    std::vector<Cplx> coeffs;
    for (auto& m : fam) {
      Cplx c(unif(rng), unif(rng));
      coeffs.push_back(c);
      combo += c * m;
    }
    auto clusters = generalized_eigenspaces(combo, cluster_tol);
    // verify: projectors must commute with every family member and the
    // restriction of each member to each cluster must have a single
    // eigenvalue cluster (joint separation).
    bool ok = true;
    std::vector<JointCluster> out;
    CMat sum = CMat::Zero(n, n);
    for (auto& cl : clusters) {
      JointCluster jc;
      jc.multiplicity = cl.multiplicity;
      jc.projector = cl.projector;
      sum += cl.projector;
      for (auto& m : fam) {
        if ((m * cl.projector - cl.projector * m).norm() > 1e-6 * (1 + m.norm())) ok = false;
        // eigenvalue of m on the cluster: tr(m P)/tr(P)
        Cplx lam = (m * cl.projector).trace() / (double)cl.multiplicity;
        // check m P - lam P is nilpotent-small in spectral radius sense:
        CMat rem = (m - lam * CMat::Identity(n, n)) * cl.projector;
        CMat pw = rem;
        for (int k = 1; k < cl.multiplicity; ++k) pw = pw * rem;
        if (pw.norm() > 1e-5 * std::pow(1 + m.norm(), cl.multiplicity)) ok = false;
        jc.values.push_back(lam);
      }
      out.push_back(jc);
    }
    if ((sum - CMat::Identity(n, n)).norm() > 1e-7 * n) ok = false;
    if (ok) return out;
  }
  throw NumericError("joint_eigenspaces: failed to separate a commuting family");
}

}  // namespace hecke
