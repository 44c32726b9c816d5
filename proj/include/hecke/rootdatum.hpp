#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hecke/lattice.hpp"

namespace hecke {

// A reduced root datum (X, Y, R0, R0v, F0).  Both lattices are realized as
// Z^rank with the standard dot pairing; a different perfect pairing is
// obtained by the caller's choice of coordinates.
struct RootDatum {
  int rank = 0;
  std::vector<Vec> roots;    // R0, vectors in X
  std::vector<Vec> coroots;  // R0v, index-aligned with roots
  std::vector<int> simple;   // indices into roots (F0)
  std::string name;          // preset name if any

  // Derived data, filled by finalize().
  std::vector<int> positive;          // indices of R0+
  std::vector<Vec> zx_basis;          // basis of Z_X = {x : <x, R0v> = 0}
  std::vector<Rational> rho_check;    // half the sum of positive coroots
  IntMat cartan;                      // cartan[i][j] = <alpha_i, alpha_j v>

  int num_roots() const { return (int)roots.size(); }
  int num_simple() const { return (int)simple.size(); }
  const Vec& simple_root(int i) const { return roots[simple[i]]; }
  const Vec& simple_coroot(int i) const { return coroots[simple[i]]; }
  bool is_semisimple() const { return zx_basis.empty(); }

  // Index of a root vector in roots, or -1.
  int root_index(const Vec& r) const;
  bool is_positive_root_vec(const Vec& r) const;

  // x dominant: <x, alpha_i v> >= 0 for all simple i.
  bool is_dominant(const Vec& x) const;

  // Fills derived fields; call after setting the defining ones.
  void finalize();
};

// Presets: "A1-sc", "A1-adj", "A2" (weight lattice), "B2".
RootDatum preset_datum(const std::string& name);
std::vector<std::string> preset_names();

// All invariant violations; empty iff the datum is valid.
std::vector<std::string> validate(const RootDatum& d);

struct NonReducedData {
  std::vector<Vec> r_nr;  // R0 together with doubled roots 2a, a v in 2Y
  std::vector<Vec> r_1;   // roots of R_nr whose double is not in R_nr
};
NonReducedData nonreduced(const RootDatum& d);

struct ParabolicSystem {
  std::vector<int> roots;      // indices into d.roots forming R_P
  std::vector<int> positive;   // the positive ones among them
  std::vector<int> gens;       // P as subset of simple positions 0..|F0|-1
};
ParabolicSystem standard_parabolic(const RootDatum& d, const std::vector<int>& P);

// Quotient data for P: sub datum R^P on the same lattices, the semisimple
// quotient datum R_P on X_P = X/(X cap (R_P v)^perp), the projection matrix
// X -> X_P, and the projection X -> X^P (character lattice of T^P).
struct QuotientData {
  RootDatum sub;              // R^P = (X, Y, R_P, R_P v, P)
  RootDatum quotient;         // R_P, realized on Z^{rank_P}
  IntMat proj_xp;             // X -> X_P (rows = coordinates of X_P)
  IntMat proj_xup;            // X -> X^P = X/(X cap Q R_P)
  // Original-root index of each root of `quotient`, aligned lists.
  std::vector<int> root_origin;
};
QuotientData quotient_data(const RootDatum& d, const std::vector<int>& P);

// Coefficients of v in the basis of simple roots, if v lies in their span.
std::optional<std::vector<Rational>> in_simple_span(const RootDatum& d, const Vec& v);

}  // namespace hecke
