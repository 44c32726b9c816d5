#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/cfun.hpp"
#include "hecke/numeric.hpp"

namespace hecke {

// Finite dimensional representation: matrices of the N_{s_i} (simple
// positions of the algebra's datum) and of theta along the lattice basis.
class FinRep {
 public:
  FinRep() = default;
  FinRep(const Algebra& alg, double q, std::vector<CMat> nsimple, std::vector<CMat> theta);

  const Algebra& algebra() const { return *alg_; }
  double q() const { return q_; }
  double vnum() const { return std::sqrt(q_); }
  int dim() const { return dim_; }
  const CMat& nsimple(int i) const { return nsimple_[i]; }
  const CMat& theta_gen(int j) const { return theta_[j]; }

  CMat act_theta(const Vec& x) const;   // product of generator powers, cached
  CMat act_finite(int u) const;         // via the shortlex word
  CMat act(const NElt& h) const;        // via the left Bernstein form
  CMat act(const BForm& left) const;

  // Max residual over quadratic, braid, and theta-commutation relations,
  // and the cross relation on the lattice basis.
  double relation_residual() const;
  // || pi(h)^dagger - pi(h*) || on generators (star compatibility).
  double star_residual() const;

 private:
  const Algebra* alg_ = nullptr;
  double q_ = 1.0;
  int dim_ = 0;
  std::vector<CMat> nsimple_, nsimple_inv_;
  std::vector<CMat> theta_, theta_inv_;
  mutable std::map<Vec, CMat> theta_cache_;
  mutable std::map<int, CMat> finite_cache_;
};

// Steinberg representation N_w -> (-1)^{l(w)} q(w)^{-1/2} of a semisimple
// algebra.  Throws if the datum is not semisimple.
FinRep steinberg(const Algebra& alg, double q);
// Central character values of the Steinberg on the lattice basis.
std::vector<Cplx> steinberg_weight(const Algebra& alg, double q);

// Standard induction datum xi = (P, delta, t^P).
struct InductionDatum {
  std::vector<int> P;
  const FinRep* delta = nullptr;              // representation of H_P
  std::vector<Cplx> delta_weight_hint;        // optional: central char on X_P basis
  std::vector<Cplx> tP;                       // values on the X^P coordinates
  bool unitary = true;
};

// Parabolically induced representation in the compact realization
// H(W^P) (x) V_delta, with basis {N_w (x) e_j} ordered by (l(w), word, j).
class InducedRep {
 public:
  InducedRep(const Parabolic& par, const FinRep& delta, const std::vector<Cplx>& tP,
             double q);

  const Parabolic& parabolic() const { return *par_; }
  const Algebra& algebra() const { return par_->parent(); }
  const FinRep& delta() const { return *delta_; }
  const std::vector<int>& coset_reps() const { return wp_; }
  const std::vector<Cplx>& tP() const { return tP_; }
  double q() const { return q_; }
  int dim() const { return dim_; }

  CMat act(const NElt& h) const;
  CMat act_theta(const Vec& x) const;
  CMat act_finite_simple(int simple_pos) const;
  // As a plain FinRep (generator matrices).
  FinRep to_finrep() const;

  // Predicted A-weights for generic xi: w(t') for w in W^P and t' a weight
  // of delta_{t^P}; each weight given by its values on the X basis, paired
  // with the coset rep w it came from.
  struct PredictedWeight {
    int w;                    // W0 index of the coset rep
    std::vector<Cplx> value;  // on the lattice basis of X
  };
  std::vector<PredictedWeight> predicted_weights() const;

 private:
  CMat delta_of_part(const BForm& right_sub) const;  // delta(phi_{t^P}(.))

  const Parabolic* par_;
  const FinRep* delta_;
  std::vector<Cplx> tP_;
  double q_;
  std::vector<int> wp_;   // sorted coset reps (W0 indices)
  int dim_;
  mutable std::map<Vec, CMat> theta_mat_cache_;
};

// ---- weights, temperedness, constant terms ----

struct WeightSpace {
  std::vector<Cplx> value;  // t on the lattice basis
  int multiplicity;
  CMat projector;
};
struct WeightDatum {
  std::vector<WeightSpace> spaces;
  double residual;  // max of projector identity checks
};

// Simultaneous generalized eigendecomposition of the commuting theta action.
WeightDatum weights(const FinRep& rep, double cluster_tol = 1e-6, unsigned seed = 99);

// Z_+-generating set of the cone {x : <x, alpha_p v> >= 0 for p in P}
// (P = all simple positions gives X^+).  Small box enumeration, reduced.
std::vector<Vec> cone_generators(const RootDatum& d, const std::vector<int>& P,
                                 int box = 3);

struct CasselmanReport {
  bool tempered = false;
  bool discrete_series = false;
  std::string witness;  // failing generator and weight, empty if none
};
CasselmanReport casselman_check(const FinRep& rep, const WeightDatum& wd);

// |t| <=_Q 1 for a weight value (on the X basis), Q a set of simple positions.
bool weight_q_tempered(const RootDatum& d, const std::vector<int>& Q,
                       const std::vector<Cplx>& value, int box = 3, double tol = 1e-9);

// Matrix coefficient functional f_{a,b}(h) = <a, pi(h) b>.
struct Coefficient {
  const FinRep* rep;
  CVec a, b;
  Cplx operator()(const NElt& h) const;
};

// Constant term of f_{a,b} along Q: spectral projector onto the Q-tempered
// generalized weight spaces composed into the coefficient.
struct ConstantTerm {
  CMat projector;   // P_Q, commutes with the theta action
  Cplx eval(const Coefficient& f, const NElt& h) const;
};
ConstantTerm constant_term(const FinRep& rep, const WeightDatum& wd,
                           const std::vector<int>& Q, double tol = 1e-9);

// Exponent expansion f(theta_x h) = sum_t E_t(h, x) t(x) with E polynomial
// in x; reconstruction residual checked on a grid by the caller.
struct ExponentExpansion {
  struct Term {
    std::vector<Cplx> t;        // weight value on the basis
    CMat projector;             // E_t
    std::vector<CMat> log_unip; // Lambda_i, nilpotent, one per basis direction
  };
  std::vector<Term> terms;
  // E_t(h, x) evaluated for the functional <a, . b>
  Cplx coefficient(const Coefficient& f, int term, const NElt& h, const Vec& x) const;
  Cplx reconstruct(const Coefficient& f, const NElt& h, const Vec& x) const;
};
ExponentExpansion exponent_expansion(const FinRep& rep, const WeightDatum& wd);

// ---- intertwining operators (P = empty principal series) ----

// Principal series M_t for the full algebra: InducedRep with P = {}.
// Left-normalized operator M(s, t) = pi_t(n_alpha)^{-1} pi_t(iota_s).
CMat intertwiner_matrix_left(const InducedRep& rep, int simple_pos);
// The same for a reduced word (ordered product at fixed t).
CMat intertwiner_matrix_left_word(const InducedRep& rep, const std::vector<int>& word);

// Right intertwiner M_t -> M_{s(t)} (x -> x iota_s^0), the paper's pi(s, xi)
// for P = empty; requires the target representation at s(t).
CMat intertwiner_matrix_right(const InducedRep& source, const InducedRep& target,
                              int simple_pos);
// Ordered product along a reduced word of g^{-1}, giving pi(g, xi): M_t -> M_{g t};
// `reps` supplies the principal series at each intermediate parameter.
CMat intertwiner_matrix_right_path(const Parabolic& par0, const FinRep& delta0,
                                   double q, const std::vector<Cplx>& t_start,
                                   const std::vector<int>& g_word);

}  // namespace hecke
