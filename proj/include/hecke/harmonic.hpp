#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hecke/cfun.hpp"
#include "hecke/repmod.hpp"

namespace hecke {

// Trapezoid grid on the compact torus T^P_u = (S^1)^dim: equal weights
// summing to 1, nodes offset by half a cell (so t -> t^{-1} closed and the
// excluded loci of 1/c are avoided), angles 2 pi (k + 1/2) / n per axis.
class QuadratureGrid {
 public:
  QuadratureGrid(int dim, int n_per_axis);
  size_t size() const { return size_; }
  double weight() const { return 1.0 / (double)size_; }
  std::vector<Cplx> point(size_t index) const;
  int dim() const { return dim_; }
  int n_per_axis() const { return n_; }

 private:
  int dim_, n_;
  size_t size_;
};

// Smooth section sigma on a component: callable t^P-values -> matrix.
using SmoothSection = std::function<CMat(const std::vector<Cplx>&)>;

// Wave packet W_sigma(h) = int Tr(sigma(xi) pi(xi, h)) c^{-1}(xi) d xi,
// approximated on the grid with compensated summation.  r_P given by the
// central character values of delta on the X_P coordinates.
struct WavePacketContext {
  const Parabolic* par;
  const FinRep* delta;
  std::vector<Cplx> rp;  // delta central character on X_P basis
  const CFunction* cf;
  double q;
};
Cplx wave_packet(const WavePacketContext& ctx, const QuadratureGrid& grid,
                 const SmoothSection& sigma, const NElt& h);

// Full torus coordinates of t = r_P t^P.
std::vector<Cplx> lift_point(const Parabolic& par, const std::vector<Cplx>& rp,
                             const std::vector<Cplx>& tP);

// ---- rank-1 Plancherel inversion ----

struct PlancherelReport {
  double ds_mass = 0;                    // mass per discrete-series character
  int num_discrete = 0;                  // number of 1-dim discrete series
  std::vector<std::pair<std::string, double>> residuals;  // word -> |tau - rec|
  double max_residual = 0;
};
// Solves the discrete mass from tau(N_e) = 1 (equal masses within the
// sign-twist orbit of characters) and reports reconstruction residuals for
// all w with N(w) <= norm_bound.
PlancherelReport plancherel_invert_rank1(const Algebra& alg, double q, int grid_n,
                                         const Rational& norm_bound);

// All one-dimensional representations (values on N-basis elements).
struct OneDimRep {
  std::vector<Cplx> theta_values;  // on the lattice basis
  std::function<Cplx(const NElt&)> chi;
  bool discrete_series = false;
};
std::vector<OneDimRep> one_dim_reps(const Algebra& alg, double q);

// ---- section 6 style probes ----

struct GrowthTable {
  std::vector<std::pair<double, double>> rows;  // (n, max |f(N_w)|, N(w)=n)
  std::string verdict;                          // "polynomial(d)" / "exponential(r)" / "flat"
  double fitted;                                // d-hat or r-hat
};
GrowthTable growth_probe(const Coefficient& f, const WeylGroup& weyl,
                         const Rational& max_norm);

struct DecayReport {
  bool applicable = false;
  double slope = 0;  // b-hat > 0 means exponential decay along the ray
  std::vector<double> values;
};
DecayReport cterm_decay_probe(const FinRep& rep, const WeightDatum& wd,
                              const Coefficient& f, const std::vector<int>& Q,
                              const Vec& x0, int kmax);

// ---- Theorem thm:spec factorization check (P = empty) ----

struct FactorizationCheck {
  double discrepancy = 0;        // |LHS - RHS|
  double negative_control = 0;   // same with a perturbed c^Q exponent
  Cplx lhs, rhs;
};
FactorizationCheck factorization_check(const Algebra& alg, const CFunction& cf,
                                       double q, const std::vector<int>& Q,
                                       const std::vector<Cplx>& t_values,
                                       const CVec& a_prime, const CVec& b_prime,
                                       const NElt& h);

}  // namespace hecke
