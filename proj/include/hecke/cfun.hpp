#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"

namespace hecke {

// Exact torus point for generic-q pole counting: each coordinate is
// sign * mult * q^exp with q transcendental, mult a positive rational.
struct ExactCoord {
  int sign = 1;        // +1 or -1
  Rational exp;        // exponent of q, a half-integer in practice
  Rational mult = Rational(1);
};
struct ExactPoint {
  std::vector<ExactCoord> coords;
  friend bool operator==(const ExactPoint& a, const ExactPoint& b);
  friend bool operator<(const ExactPoint& a, const ExactPoint& b);
};
std::string exact_point_str(const ExactPoint& t);
ExactPoint parse_exact_point(const std::string& text);

// Value of the character x at an exact point, in the same exact form.
ExactCoord exact_char_value(const ExactPoint& t, const Vec& x);
// w(t) for w in W0 (x(w t) = (w^{-1} x)(t)).
ExactPoint exact_act(const WeylGroup& w, int u, const ExactPoint& t);

// One hyperplane factor  1 - sign * q^exp * theta_{-mu}(t).
struct CFactor {
  Vec mu;
  int sign = 1;
  Rational exp;
  bool in_numerator = true;
  int r1_index = 0;  // index into the R_1 list it belongs to
};

// Macdonald c-functions attached to an algebra: explicit factor lists per
// R_1 root, numeric evaluation, exact pole orders, residual points and the
// Plancherel density prefactors.
class CFunction {
 public:
  explicit CFunction(const Algebra& alg);

  const Algebra& algebra() const { return *alg_; }
  // R_1 as vectors together with their factor lists (positive roots first).
  const std::vector<Vec>& r1() const { return r1_; }
  const std::vector<std::vector<CFactor>>& factors() const { return factors_; }

  // Numeric evaluation: t given by its coordinate values z_i (x(t) = prod z^x).
  // S = indices into the R_1 list; throws PoleAtPoint if a denominator factor
  // vanishes (tolerance 1e-13 relative).
  std::complex<double> c_alpha(const std::vector<std::complex<double>>& t, int r1_index,
                               double q) const;
  std::complex<double> c_product(const std::vector<std::complex<double>>& t,
                                 const std::vector<int>& S, double q) const;
  // c over R_{0,+} \ R_{P,+} (P a set of simple positions).
  std::vector<int> complement_set(const std::vector<int>& P) const;
  // c over R_{Q,+} \ R_{P,+}.
  std::vector<int> relative_set(const std::vector<int>& Q, const std::vector<int>& P) const;

  // Exact pole order i_t of (c(t) c(w0 t))^{-1} at an exact point.
  Int pole_order(const ExactPoint& t) const;

  // All residual points (i_t = rank) on the half-integer exponent grid
  // |exp| <= grid_bound, sign vectors in {+-1}^rank, multiplier 1; grouped
  // into W0-orbits.  Empty when Z_X != 0; Unsupported when rank > 2.
  std::vector<std::vector<ExactPoint>> residual_orbits(int grid_bound = 4) const;

  // Theorem cster: r* = s c^{-1} lies in the W(R_{s,1})-orbit of r.
  bool cster_check(const ExactPoint& r) const;

  // Plancherel density q(w^P)^{-1} |W_P/K_P|^{-1} mass |c(xi)|^{-2} at
  // t = r_P t^P; t given by its full coordinate values.  Returns 0 at the
  // (measure-zero) points where 1/c vanishes.
  double plancherel_density(const std::vector<int>& P,
                            const std::vector<std::complex<double>>& t, double q,
                            double delta_mass) const;
  // The prefactor q(w^P)^{-1} |W_P / K_P|^{-1} alone.
  double plancherel_prefactor(const std::vector<int>& P, double q) const;

 private:
  const Algebra* alg_;
  std::vector<Vec> r1_;
  std::vector<int> r1_of_root_;  // map datum root index -> r1 index (or -1)
  std::vector<std::vector<CFactor>> factors_;
};

}  // namespace hecke
