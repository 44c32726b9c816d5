#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/labels.hpp"
#include "hecke/laurent.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

// Element of the commutative subalgebra A: finitely supported X -> Laurent.
using AElt = std::map<Vec, Laurent>;

AElt a_mul(const AElt& a, const AElt& b);
AElt a_add(const AElt& a, const AElt& b);
AElt a_scale(const Laurent& c, const AElt& a);
AElt a_mono(const Vec& x, const Laurent& c = Laurent(1));
bool a_is_zero(const AElt& a);

// Hecke algebra element in the N-basis: finitely supported W -> Laurent.
struct NElt {
  std::map<WElt, Laurent> c;
  bool is_zero() const { return c.empty(); }
  void add(const WElt& w, const Laurent& v) {
    auto it = c.find(w);
    if (it == c.end()) {
      if (!v.is_zero()) c[w] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  friend bool operator==(const NElt& a, const NElt& b) { return a.c == b.c; }
};

// Bernstein normal form with A-coefficients on the chosen side:
// left form  h = sum_u a_u N_u, right form h = sum_u N_u a_u  (u in W0).
struct BForm {
  std::map<int, AElt> a;
  bool is_zero() const;
};

struct CentralWitness {
  bool central = true;
  std::string witness;  // failing generator, empty when central
};

// The affine Hecke algebra H(R, q): exact arithmetic in the N-basis and the
// Bernstein presentation, plus the analytic helpers the spec requires.
class Algebra {
 public:
  Algebra(const RootDatum& datum, const LabelSpec& labels);

  const RootDatum& datum() const { return datum_; }
  const WeylGroup& weyl() const { return *weyl_; }
  const LabelFunction& labels() const { return *labels_; }

  // --- N-basis layer ---
  NElt one() const;
  NElt basis(const WElt& w) const;
  NElt basis_finite(int u) const;  // N_u, u a W0 index
  NElt mul(const NElt& h1, const NElt& h2) const;
  NElt mul(const NElt& h1, const NElt& h2, const NElt& h3) const;
  NElt scale(const Laurent& c, const NElt& h) const;
  NElt add(const NElt& a, const NElt& b) const;
  NElt sub(const NElt& a, const NElt& b) const;
  NElt invert_basis(const WElt& w) const;  // N_w^{-1}

  // --- Bernstein layer ---
  const NElt& theta(const Vec& x) const;  // cached
  BForm bernstein_left(const NElt& h) const;   // h = sum a_u(theta) N_u
  BForm bernstein_right(const NElt& h) const;  // h = sum N_u a_u(theta)
  NElt nform_left(const BForm& b) const;
  NElt nform_right(const BForm& b) const;

  // cross-relation right-hand side, telescoped: returns the element equal to
  // theta_x N_s - N_s theta_{s(x)} (s = simple position i), as a left BForm.
  BForm cross_relation_rhs(int simple_pos, const Vec& x) const;

  // --- trace, star, inner product, seminorms ---
  Laurent trace(const NElt& h) const;
  NElt star(const NElt& h) const;
  Laurent inner(const NElt& a, const NElt& b) const;  // (a,b) = tau(a* b)
  double seminorm(const NElt& h, int n, double q) const;

  CentralWitness is_central(const NElt& h) const;

  // --- intertwiners ---
  // iota_s as a left BForm (s = simple position in F0 order).
  BForm intertwiner(int simple_pos) const;
  AElt n_alpha(int simple_pos) const;
  // iota_s^2 = n_alpha^s * n_alpha as an element of A.
  AElt intertwiner_squared(int simple_pos) const;

  // --- seminorm-ish metadata ---
  Rational support_norm(const NElt& h) const;  // max N(w) over support

  // serialization: ordered (word, laurent) pairs
  std::vector<std::pair<std::string, std::string>> to_pairs(const NElt& h) const;
  NElt from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) const;

 private:
  void fold_simple(NElt& h, int aff_pos) const;        // h <- h * N_{s_i}
  void fold_simple_inv(NElt& h, int aff_pos) const;    // h <- h * N_{s_i}^{-1}
  NElt mul_basis(const NElt& h, const WElt& w) const;  // h * N_w

  // Left-BForm primitives.  R(s, y) denotes the A-valued cross-relation
  // defect theta_y N_s - N_s theta_{s y}.
  AElt cross_aelt(int simple_pos, const Vec& y) const;
  BForm lmul_finite(int simple_pos, const BForm& b) const;   // N_s . b
  BForm rmul_finite(const BForm& b, int simple_pos) const;   // b . N_s
  BForm rmul_finite_inv(const BForm& b, int simple_pos) const;
  BForm rmul_theta(const BForm& b, const Vec& x) const;
  const BForm& commute_theta(int u, const Vec& x) const;     // N_u theta_x
  BForm rmul_aff_simple(const BForm& b, int aff_pos) const;  // b . N_{s_a}
  BForm omega_bform(const WElt& omega) const;                // N_omega
  const BForm& basis_bform(const WElt& w) const;             // N_w, cached

  // Right-BForm primitives (coefficients to the right of N_u).
  BForm rmulR_finite(const BForm& b, int simple_pos) const;
  BForm rmulR_finite_inv(const BForm& b, int simple_pos) const;
  BForm rmulR_theta(const BForm& b, const Vec& x) const;
  BForm rmulR_aff_simple(const BForm& b, int aff_pos) const;
  BForm omega_bformR(const WElt& omega) const;
  const BForm& basis_bformR(const WElt& w) const;

  RootDatum datum_;
  std::unique_ptr<WeylGroup> weyl_;
  std::unique_ptr<LabelFunction> labels_;
  Vec strict_dominant_;  // some d with <d, alpha_i v> >= 1 for all i
  mutable std::map<Vec, NElt> theta_cache_;
  mutable std::map<std::pair<int, Vec>, BForm> commute_cache_;
  mutable std::map<WElt, BForm> basis_bform_cache_;
  mutable std::map<WElt, BForm> basis_bformR_cache_;
};

// BForm helpers shared by the algebra and its consumers.
void bform_add(BForm& dst, const BForm& src);
BForm bform_scale(const Laurent& c, const BForm& b);
BForm bform_premul_a(const AElt& a, const BForm& b);

// ---------- parabolic subalgebras and quotient maps ----------

// Numeric-coefficient Bernstein form (for the psi/phi twists).
using CAElt = std::map<Vec, std::complex<double>>;
struct CBForm {
  std::map<int, CAElt> a;
};

// Exact part of the compact-realization reduction h N_w = sum N_{w'} h_{w'}
// (w' in W^P, h_{w'} in H^P in right Bernstein form, finite parts in W_P).
struct InductionSplit {
  std::map<int, BForm> parts;  // key: index into coset_reps()
};

// Parabolic context: the subalgebra H^P (same lattice X, roots R_P) and the
// semisimple quotient H_P on X_P, with phi_1, psi_{t^P}, phi_{t^P}.
class Parabolic {
 public:
  Parabolic(const Algebra& parent, const std::vector<int>& P);

  const Algebra& parent() const { return *parent_; }
  const Algebra& sub() const { return *sub_; }        // H^P
  const Algebra& quotient() const { return *quot_; }  // H_P
  const std::vector<int>& P() const { return P_; }
  const QuotientData& qdata() const { return qd_; }

  // H^P element (B-form over sub()) -> element of the parent algebra.
  NElt embed(const NElt& h_sub) const;

  // phi_1: H^P -> H_P (exact).
  BForm phi1(const BForm& left_sub) const;
  // psi_{t^P}: twist theta_x N_w -> x(t^P) theta_x N_w.  Numeric coefficients
  // (Laurent parts evaluated at v); t^P given by its values on the X^P
  // coordinates.
  CBForm psi_twisted(const BForm& left_sub, const std::vector<std::complex<double>>& tP,
                     double v) const;
  // phi_{t^P} = phi_1 o psi_{t^P}: numeric left BForm over H_P.
  CBForm phi_twisted(const BForm& left_sub, const std::vector<std::complex<double>>& tP,
                     double v) const;

  // character value x(t^P) for x in X.
  std::complex<double> tP_value(const Vec& x, const std::vector<std::complex<double>>& tP) const;
  // character value x(t) for t in T given by values on the X_P coordinates
  // (embedding of T_P into T).
  std::complex<double> tP_lattice_value(const Vec& x, const std::vector<std::complex<double>>& tp) const;

  int tP_dim() const { return (int)qd_.proj_xup.size(); }
  int tp_dim() const { return (int)qd_.proj_xp.size(); }

  // Shortest coset representatives of W0/W_P, sorted by (length, word).
  const std::vector<int>& coset_reps() const;
  // Cached exact reduction of h N_{w} (w = coset_reps()[coset_index]).
  const InductionSplit& induction_split(const NElt& h, int coset_index) const;

 private:
  const Algebra* parent_;
  std::vector<int> P_;
  QuotientData qd_;
  std::unique_ptr<Algebra> sub_;
  std::unique_ptr<Algebra> quot_;
  mutable std::vector<int> coset_reps_;
  mutable std::map<std::pair<std::string, int>, InductionSplit> split_cache_;
};

// p_Q and the double-coset splitting of H (left H^Q module map).
struct PQSplit {
  std::vector<int> coset_d;       // W0 indices of D^{Q,Q'}
  std::vector<NElt> components;   // aligned with coset_d; sums to h
  NElt pq;                        // component of w^{Q'} times N_{w^{Q'}}^{-1}
};
PQSplit pq_project(const Algebra& alg, const NElt& h, const std::vector<int>& Q);

}  // namespace hecke
