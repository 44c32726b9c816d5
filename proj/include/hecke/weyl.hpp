#pragma once

#include <map>
#include <string>
#include <vector>

#include "hecke/rational.hpp"
#include "hecke/rootdatum.hpp"

namespace hecke {

// Affine root (alpha v, n), a function y -> <y, alpha v> + n on X (x) R.
struct AffineRoot {
  Vec coroot;
  Int level = 0;
  friend bool operator==(const AffineRoot& a, const AffineRoot& b) {
    return a.coroot == b.coroot && a.level == b.level;
  }
};

// Element of the extended affine Weyl group W = W0 |x X in normal form
// t_x * u; the finite part u is an index into the enumerated W0.
struct WElt {
  Vec x;
  int u = 0;
  friend bool operator==(const WElt& a, const WElt& b) { return a.x == b.x && a.u == b.u; }
  friend bool operator<(const WElt& a, const WElt& b) {
    return a.x != b.x ? a.x < b.x : a.u < b.u;
  }
};

// Reduced expression: w = omega * s_{i_1} ... s_{i_k} with l(omega) = 0 and
// k = l(w).  Indices refer to WeylGroup::aff_simple positions.
struct ReducedWord {
  WElt omega;
  std::vector<int> word;
};

struct DoubleCoset {
  int d;                    // minimal-length representative, W0 index
  std::vector<int> meet;    // L = Q cap d(P), as simple positions
};

// Finite Weyl group tables plus the affine/extended structure attached to a
// root datum: simple affine roots, the length-zero subgroup Omega, lengths,
// norms, reduced words, coset and double-coset machinery.
class WeylGroup {
 public:
  explicit WeylGroup(const RootDatum& d);

  const RootDatum& datum() const { return *datum_; }

  // ---- finite part W0 ----
  int order() const { return (int)xmat_.size(); }
  int mul0(int a, int b) const { return mult_[a][b]; }
  int inv0(int a) const { return inv_[a]; }
  int simple_refl(int i) const { return s0_[i]; }       // W0 index of s_{alpha_i}
  int w0_index() const { return longest_; }             // longest element
  int length0(int u) const { return len0_[u]; }
  const std::vector<int>& word0(int u) const { return words0_[u]; }  // shortlex
  Vec act_x(int u, const Vec& x) const { return mat_apply(xmat_[u], x); }
  Vec act_y(int u, const Vec& y) const { return mat_apply(ymat_[u], y); }
  int find_matrix(const IntMat& m) const;
  const IntMat& xmatrix(int u) const { return xmat_[u]; }

  // ---- extended group ----
  WElt identity() const { return WElt{Vec(datum_->rank, 0), 0}; }
  WElt from_finite(int u) const { return WElt{Vec(datum_->rank, 0), u}; }
  WElt translation(const Vec& x) const { return WElt{x, 0}; }
  WElt mul(const WElt& a, const WElt& b) const;
  WElt inverse(const WElt& a) const;
  bool is_identity(const WElt& a) const { return a.u == 0 && is_zero(a.x); }

  AffineRoot act_aff(const WElt& w, const AffineRoot& a) const;
  bool aff_positive(const AffineRoot& a) const;

  Int length(const WElt& w) const;
  Rational norm(const WElt& w) const;  // N(w) = l(w) + |central part of w(0)|

  int num_aff_simple() const { return (int)aff_simple_.size(); }
  const AffineRoot& aff_simple(int i) const { return aff_simple_[i]; }
  const WElt& aff_refl(int i) const { return aff_refl_[i]; }
  // Root datum index of the finite root under s_i, or -1 for affine nodes.
  int aff_simple_finite_index(int i) const { return aff_finite_idx_[i]; }

  ReducedWord reduced_word(const WElt& w) const;
  WElt from_word(const ReducedWord& rw) const;

  // Omega = length-zero subgroup; generators split into the finite-order part
  // (lifting generators of X/Q) and translations along a basis of Z_X.
  const std::vector<WElt>& omega_finite_gens() const { return omega_f_gens_; }
  // Canonical "pi" when the finite quotient Omega_f is cyclic and nontrivial.
  const std::vector<WElt>& pi_powers() const { return pi_powers_; }

  // Shortest representatives of W0 / W_P, sorted by (length, shortlex word).
  std::vector<int> coset_reps(const std::vector<int>& P) const;
  // Elements of the standard parabolic subgroup W_P.
  std::vector<int> parabolic_elements(const std::vector<int>& P) const;
  // Minimal double coset representatives D^{Q,P} with L = Q cap d(P).
  std::vector<DoubleCoset> double_cosets(const std::vector<int>& Q,
                                         const std::vector<int>& P) const;
  // Unique w = u d v per Howlett; u in W_Q cap W^L, d in D^{Q,P}, v in W_P.
  struct Howlett { int u, d, v; std::vector<int> meet; };
  Howlett howlett_decompose(int w, const std::vector<int>& Q,
                            const std::vector<int>& P) const;

  // All w with N(w) <= bound (finite since the center contributes ||.||).
  std::vector<WElt> norm_ball(const Rational& bound) const;

  // Text form "pi^2 . s1 s0", "t[1,0] . s1", or "e".
  std::string word_string(const WElt& w) const;
  WElt parse_word(const std::string& text) const;

 private:
  void enumerate_w0();
  void build_affine_simples();
  void build_omega();

  const RootDatum* datum_;
  std::vector<IntMat> xmat_, ymat_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_, len0_, s0_;
  std::vector<std::vector<int>> words0_;
  int longest_ = 0;
  std::map<IntMat, int> index_;

  std::vector<AffineRoot> aff_simple_;
  std::vector<WElt> aff_refl_;
  std::vector<int> aff_finite_idx_;
  std::vector<WElt> omega_f_gens_;
  std::vector<WElt> pi_powers_;  // e, pi, pi^2, ... when Omega_f cyclic
};

}  // namespace hecke
