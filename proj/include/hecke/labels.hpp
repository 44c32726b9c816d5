#pragma once

#include <map>
#include <string>
#include <vector>

#include "hecke/laurent.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

// Label spec from user input: either one exponent for every conjugacy class
// of S^aff, or a map keyed by class representative name "s0", "s1", ...
struct LabelSpec {
  int uniform = 1;
  std::map<std::string, int> per_class;  // overrides uniform when nonempty
};

// Positive label function q on W with q(s) = bq^{f_s}, f_s a positive integer
// per W-conjugacy class of affine simple reflections.  Root labels q_{a v}
// at arbitrary levels follow from W-invariance of a -> q_a.
class LabelFunction {
 public:
  LabelFunction(const WeylGroup& w, const LabelSpec& spec);

  int num_classes() const { return (int)class_fs_.size(); }
  int class_of_simple(int i) const { return class_of_simple_[i]; }
  // Name of the class = name of its least representative simple ("s0"...).
  std::string class_name(int c) const { return "s" + std::to_string(class_rep_[c]); }
  int class_exponent(int c) const { return class_fs_[c]; }

  // f_s for a simple affine reflection position.
  int f_simple(int i) const { return class_fs_[class_of_simple_[i]]; }
  // q(s)^{1/2} = v^{f_s}
  Laurent qs_half(int i) const { return Laurent::v(f_simple(i)); }

  // Exponent f with q_a = bq^f for the affine root a = (coroot, level).
  int f_aff(const Vec& coroot, Int level) const;
  // q_{alpha v} exponent at even level (root-label of alpha in R0).
  int f0(int root_index) const;
  // q_{alpha v + 1} exponent (odd level); equals f0 unless <X, alpha v> = 2Z.
  int f1(int root_index) const;
  // true when 2*alpha is in R_nr, i.e. alpha v in 2Y.
  bool doubled(int root_index) const { return doubled_[root_index]; }

  // q(w)^{1/2} as v-monomial, from any reduced word of w.
  Laurent q_half(const WElt& w) const;
  // q(w) via the R_nr inversion-set product (finite part only, eq-style).
  Laurent q_w0_product(int u) const;

 private:
  const WeylGroup* weyl_;
  std::vector<int> class_of_simple_;
  std::vector<int> class_rep_;
  std::vector<int> class_fs_;
  // lookup (coroot orbit id, residue) -> class
  std::vector<int> orbit_of_root_;  // W0-orbit id per root index
  std::map<std::pair<int, int>, int> key_to_class_;
  std::vector<int> modulus_of_root_;  // [Z : <X, alpha v>] in {1,2}
  std::vector<bool> doubled_;
};

}  // namespace hecke
