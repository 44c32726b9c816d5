#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace hecke {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

// Spectral projector onto the generalized eigenspaces of A whose eigenvalues
// satisfy the predicate.  Schur-based (no diagonalizability assumption):
// reorder the Schur form so selected eigenvalues lead, then decouple with a
// Sylvester solve.
CMat invariant_projector(const CMat& a, const std::function<bool(Cplx)>& select);

// Split by the unit-circle / interior-disc dichotomy: requires every
// eigenvalue to have |lambda| in [1-tol, 1+tol] or |lambda| <= 1-eps+tol;
// otherwise throws SpectrumGapViolation.
struct SpectralSplit {
  CMat p_one;    // projector onto modulus-one generalized eigenspaces
  CMat p_small;  // complement; p_one + p_small = I
  CMat a_small;  // p_small * A
};
SpectralSplit spectral_split(const CMat& a, double eps, double tol = 1e-8);

// Generalized eigen-decomposition: clusters of eigenvalues (within
// cluster_tol) with their spectral projectors; projectors sum to I.
struct EigenCluster {
  Cplx value;  // mean of the cluster
  int multiplicity;
  CMat projector;
};
std::vector<EigenCluster> generalized_eigenspaces(const CMat& a, double cluster_tol);

// Joint generalized eigenspaces of a commuting family: clusters of joint
// eigenvalue tuples with projectors.  Uses a random linear combination with
// the supplied seed (resampled if it fails to separate).
struct JointCluster {
  std::vector<Cplx> values;  // one per matrix in the family
  int multiplicity;
  CMat projector;
};
std::vector<JointCluster> joint_eigenspaces(const std::vector<CMat>& comm_family,
                                            double cluster_tol, unsigned seed = 1234);

}  // namespace hecke
