#include "hecke/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hecke/errors.hpp"

namespace hecke {

QuadratureGrid::QuadratureGrid(int dim, int n_per_axis) : dim_(dim), n_(n_per_axis) {
  size_ = 1;
  for (int i = 0; i < dim_; ++i) size_ *= (size_t)n_;
}

std::vector<Cplx> QuadratureGrid::point(size_t index) const {
  std::vector<Cplx> t(dim_);
  for (int i = 0; i < dim_; ++i) {
    size_t k = index % (size_t)n_;
    index /= (size_t)n_;
    double angle = 2.0 * std::numbers::pi * ((double)k + 0.5) / (double)n_;
    t[i] = std::polar(1.0, angle);
  }
  return t;
}

std::vector<Cplx> lift_point(const Parabolic& par, const std::vector<Cplx>& rp,
                             const std::vector<Cplx>& tP) {
  // x(t) = x(r_P) x(t^P) evaluated on the lattice basis
  const RootDatum& d = par.parent().datum();
  std::vector<Cplx> t(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    Vec e(d.rank, 0);
    e[i] = 1;
    Cplx val = par.tP_value(e, tP);
    if (!rp.empty()) val *= par.tP_lattice_value(e, rp);
    t[i] = val;
  }
  return t;
}

Cplx wave_packet(const WavePacketContext& ctx, const QuadratureGrid& grid,
                 const SmoothSection& sigma, const NElt& h) {
  // Kahan-compensated accumulation over the grid
  Cplx sum = 0, comp = 0;
  std::vector<int> S = ctx.cf->complement_set(ctx.par->P());
  for (size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cplx> tP = grid.point(i);
    InducedRep rep(*ctx.par, *ctx.delta, tP, ctx.q);
    CMat pi_h = rep.act(h);
    CMat sg = sigma(tP);
    std::vector<Cplx> t = lift_point(*ctx.par, ctx.rp, tP);
    Cplx cinv = 1.0 / ctx.cf->c_product(t, S, ctx.q);
    Cplx term = (sg * pi_h).trace() * cinv * grid.weight();
    Cplx y = term - comp;
    Cplx t2 = sum + y;
    comp = (t2 - sum) - y;
    sum = t2;
  }
  return sum;
}

std::vector<OneDimRep> one_dim_reps(const Algebra& alg, double q) {
  const WeylGroup& w = alg.weyl();
  const LabelFunction& lf = alg.labels();
  double v = std::sqrt(q);
  int nclass = lf.num_classes();
  int npi = (int)w.pi_powers().size();
  if (npi == 0) npi = 1;
  std::vector<OneDimRep> out;
  // choices: per class a root of the quadratic relation; per Omega_f a
  // character (power of a primitive root of unity).  Braid relations are
  // automatic for scalars; class-constancy handles the pi-conjugation of
  // simples, and the theta consistency check below rejects bad combinations.
  int total = (1 << nclass) * npi;
  for (int code = 0; code < total; ++code) {
    int c = code;
    std::vector<int> sign_choice(nclass);
    for (int k = 0; k < nclass; ++k) {
      sign_choice[k] = c & 1;
      c >>= 1;
    }
    int zeta_pow = c % npi;
    Cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * (double)zeta_pow / (double)npi);
    auto chi = [&alg, &w, &lf, sign_choice, zeta, v](const NElt& h) -> Cplx {
      Cplx val = 0;
      for (auto& [we, coeff] : h.c) {
        ReducedWord rw = w.reduced_word(we);
        int k = -1;
        for (size_t i = 0; i < w.pi_powers().size(); ++i)
          if (w.pi_powers()[i] == rw.omega) k = (int)i;
        if (k < 0) throw Unsupported("one_dim_reps: omega outside <pi>");
        Cplx term = std::pow(zeta, (double)k);
        for (int i : rw.word) {
          int cls = lf.class_of_simple(i);
          int f = lf.class_exponent(cls);
          term *= sign_choice[cls] ? Cplx(-std::pow(v, -f)) : Cplx(std::pow(v, f));
        }
        val += coeff.eval(v) * term;
      }
      return val;
    };
    OneDimRep rep;
    bool consistent = true;
    std::vector<Cplx> theta_vals;
    const RootDatum& d = alg.datum();
    for (int j = 0; j < d.rank && consistent; ++j) {
      Vec e(d.rank, 0);
      e[j] = 1;
      Cplx a = chi(alg.theta(e));
      Cplx b = chi(alg.theta(neg(e)));
      theta_vals.push_back(a);
      if (std::abs(a * b - 1.0) > 1e-9) consistent = false;
    }
    if (!consistent) continue;
    rep.theta_values = theta_vals;
    rep.chi = chi;
    std::vector<int> all;
    for (int i = 0; i < d.num_simple(); ++i) all.push_back(i);
    auto gens = cone_generators(d, all);
    bool ds = d.is_semisimple();
    for (auto& g : gens) {
      double a = 1.0;
      for (size_t i = 0; i < theta_vals.size(); ++i)
        a *= std::pow(std::abs(theta_vals[i]), (double)g[i]);
      if (a > 1 - 1e-9) ds = false;
    }
    rep.discrete_series = ds;
    out.push_back(rep);
  }
  return out;
}

PlancherelReport plancherel_invert_rank1(const Algebra& alg, double q, int grid_n,
                                         const Rational& norm_bound) {
  const RootDatum& d = alg.datum();
  if (d.rank != 1 || !d.is_semisimple())
    throw Unsupported("plancherel inversion implemented for rank-1 semisimple data");
  const WeylGroup& w = alg.weyl();
  double v = std::sqrt(q);

  // discrete series characters
  auto oned = one_dim_reps(alg, q);
  std::vector<OneDimRep> ds;
  for (auto& r : oned)
    if (r.discrete_series) ds.push_back(r);

  // principal series component
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), q, {}, {});
  CFunction cf(alg);
  QuadratureGrid grid(1, grid_n);
  double prefactor = cf.plancherel_prefactor({}, q);
  std::vector<int> S = cf.complement_set({});

  auto ps_term = [&](const NElt& h) -> double {
    Cplx sum = 0, comp = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
      std::vector<Cplx> t = grid.point(i);
      InducedRep ps(par0, triv, t, q);
      Cplx tr = ps.act(h).trace();
      double density = 1.0 / std::norm(cf.c_product(t, S, q));
      Cplx term = tr * density * grid.weight();
      Cplx y = term - comp;
      Cplx t2 = sum + y;
      comp = (t2 - sum) - y;
      sum = t2;
    }
    Cplx total = prefactor * sum;
    if (std::abs(total.imag()) > 1e-8)
      throw NumericError("plancherel: non-real reconstruction term");
    return total.real();
  };

  PlancherelReport report;
  report.num_discrete = (int)ds.size();
  // solve the single mass from tau(N_e) = 1
  NElt ne = alg.one();
  double ps_e = ps_term(ne);
  double chi_sum = 0;
  for (auto& r : ds) chi_sum += r.chi(ne).real();
  if (chi_sum <= 0) throw NumericError("plancherel: no discrete mass to solve");
  report.ds_mass = (1.0 - ps_e) / chi_sum;

  auto ball = w.norm_ball(norm_bound);
  for (auto& elt : ball) {
    NElt nw = alg.basis(elt);
    double tau = w.is_identity(elt) ? 1.0 : 0.0;
    Cplx rec = ps_term(nw);
    for (auto& r : ds) rec += report.ds_mass * r.chi(nw);
    double resid = std::abs(rec - tau);
    report.residuals.push_back({w.word_string(elt), resid});
    report.max_residual = std::max(report.max_residual, resid);
  }
  std::sort(report.residuals.begin(), report.residuals.end());
  return report;
}

GrowthTable growth_probe(const Coefficient& f, const WeylGroup& weyl,
                         const Rational& max_norm) {
  auto ball = weyl.norm_ball(max_norm);
  std::map<Int, double> maxima;
  for (auto& elt : ball) {
    Rational nrm = weyl.norm(elt);
    if (!nrm.is_integer()) continue;  // bucket integer shells
    NElt h;
    h.add(elt, Laurent(1));
    double val = std::abs(f(h));
    Int n = nrm.num();
    maxima[n] = std::max(maxima[n], val);
  }
  GrowthTable table;
  std::vector<double> xs_log, ys, xs_lin;
  for (auto& [n, m] : maxima) {
    table.rows.push_back({(double)n, m});
    if (m > 0 && n > 0) {
      xs_log.push_back(std::log(1.0 + (double)n));
      xs_lin.push_back((double)n);
      ys.push_back(std::log(m));
    }
  }
  if (ys.size() < 3) {
    table.verdict = "flat";
    table.fitted = 0;
    return table;
  }
  auto lsq = [](const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = x.size();
    for (size_t i = 0; i < n; ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icept = (sy - slope * sx) / n;
    double res = 0;
    for (size_t i = 0; i < n; ++i) {
      double e = y[i] - slope * x[i] - icept;
      res += e * e;
    }
    return std::pair<double, double>(slope, res);
  };
  auto [d_hat, res_poly] = lsq(xs_log, ys);
  auto [r_hat, res_exp] = lsq(xs_lin, ys);
  // exponential growth means a positive linear slope with a better fit
  if (r_hat > 0.05 && res_exp < res_poly) {
    table.verdict = "exponential(" + std::to_string(std::exp(r_hat)) + ")";
    table.fitted = r_hat;
  } else {
    table.verdict = "polynomial(" + std::to_string(d_hat) + ")";
    table.fitted = d_hat;
  }
  return table;
}

DecayReport cterm_decay_probe(const FinRep& rep, const WeightDatum& wd,
                              const Coefficient& f, const std::vector<int>& Q,
                              const Vec& x0, int kmax) {
  DecayReport report;
  // precondition: x0 dominant with <x0, alpha v> > 0 for the alpha not in Q
  const RootDatum& d = rep.algebra().datum();
  if (!d.is_dominant(x0)) return report;
  bool positive_pairing = false;
  for (int i = 0; i < d.num_simple(); ++i) {
    if (std::find(Q.begin(), Q.end(), i) != Q.end()) continue;
    if (dot(x0, d.simple_coroot(i)) > 0) positive_pairing = true;
  }
  if (!positive_pairing) return report;  // not applicable
  report.applicable = true;
  ConstantTerm ct = constant_term(rep, wd, Q);
  std::vector<double> xs, ys;
  double norm_x0 = std::sqrt((double)dot(x0, x0));
  for (int k = 1; k <= kmax; ++k) {
    CMat th = rep.act_theta(scale(k, x0));
    Cplx full = f.a.dot(th * f.b);
    Cplx cterm = f.a.dot(ct.projector * (th * f.b));
    double diff = std::abs(full - cterm);
    report.values.push_back(diff);
    if (diff > 1e-300) {
      xs.push_back((double)k * norm_x0);
      ys.push_back(std::log(diff));
    }
  }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double slope = (xs.size() * sxy - sx * sy) / (xs.size() * sxx - sx * sx);
    report.slope = -slope;
  } else {
    report.slope = 1e9;  // identically zero difference: infinitely fast decay
  }
  return report;
}

FactorizationCheck factorization_check(const Algebra& alg, const CFunction& cf,
                                       double q, const std::vector<int>& Q,
                                       const std::vector<Cplx>& t_values,
                                       const CVec& a_prime, const CVec& b_prime,
                                       const NElt& h) {
  const WeylGroup& w = alg.weyl();
  const RootDatum& d = alg.datum();
  double v = std::sqrt(q);
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), q, {}, {});

  // w^Q and Q'
  auto wq_elems = w.parabolic_elements(Q);
  int w_q = 0;
  for (int u : wq_elems)
    if (w.length0(u) > w.length0(w_q)) w_q = u;
  int wQ = w.mul0(w.w0_index(), w_q);
  std::vector<int> Qp;
  for (int qpos : Q) {
    Vec img = w.act_x(wQ, d.simple_root(qpos));
    for (int i = 0; i < d.num_simple(); ++i)
      if (d.simple_root(i) == img) Qp.push_back(i);
  }
  if (Qp.size() != Q.size()) throw std::logic_error("factorization: Q' not standard");

  // t' = w^Q(t)
  std::vector<Cplx> t_prime(t_values.size());
  {
    const IntMat& m = w.xmatrix(w.inv0(wQ));
    for (size_t i = 0; i < t_values.size(); ++i) {
      Cplx val = 1.0;
      for (size_t r = 0; r < t_values.size(); ++r)
        val *= std::pow(t_values[r], (double)m[r][i]);
      t_prime[i] = val;
    }
  }

  // ---- LHS: f^{w^{Q'}}_{a', b'}(xi', h) ----
  InducedRep rep_prime(par0, triv, t_prime, q);
  FinRep fr_prime = rep_prime.to_finrep();
  WeightDatum wd = weights(fr_prime);
  // class W_Q t: weights u(t) for u in W_Q
  CMat proj = CMat::Zero(rep_prime.dim(), rep_prime.dim());
  for (int u : wq_elems) {
    // value of u(t) on the basis
    std::vector<Cplx> val(t_values.size());
    const IntMat& m = w.xmatrix(w.inv0(u));
    for (size_t i = 0; i < t_values.size(); ++i) {
      Cplx x = 1.0;
      for (size_t r = 0; r < t_values.size(); ++r)
        x *= std::pow(t_values[r], (double)m[r][i]);
      val[i] = x;
    }
    // find matching weight space
    int best = -1;
    double bestd = 1e9;
    for (size_t s = 0; s < wd.spaces.size(); ++s) {
      double dd = 0;
      for (size_t i = 0; i < val.size(); ++i) dd += std::abs(wd.spaces[s].value[i] - val[i]);
      if (dd < bestd) {
        bestd = dd;
        best = (int)s;
      }
    }
    if (best < 0 || bestd > 1e-6)
      throw NumericError("factorization: class weight not found (non-generic?)");
    proj += wd.spaces[best].projector;
  }
  Cplx lhs = a_prime.dot(proj * (fr_prime.act(h) * b_prime));

  // ---- RHS: q(w^Q)^{1/2} c^Q(xi) f_{Q,a,b}(xi, p_Q(h)) ----
  Laurent qh = alg.labels().q_half(w.from_finite(wQ));
  double q_wQ_half = std::pow(v, qh.min_degree());
  std::vector<int> SQ = cf.complement_set(Q);
  Cplx cQ = cf.c_product(t_values, SQ, q);

  PQSplit split = pq_project(alg, h, Q);
  // p_Q(h) as an element of the sub algebra H^Q
  Parabolic parQ(alg, Q);
  const Algebra& algQ = parQ.sub();
  BForm pq_left = alg.bernstein_left(split.pq);
  NElt pq_sub;
  for (auto& [u, au] : pq_left.a) {
    // map u (in W_Q) into the sub algebra through its word
    int us = 0;
    for (int letter : w.word0(u)) {
      int pos = -1;
      for (size_t k = 0; k < Q.size(); ++k)
        if (Q[k] == letter) pos = (int)k;
      if (pos < 0) throw std::logic_error("factorization: p_Q(h) outside H^Q");
      us = algQ.weyl().mul0(us, algQ.weyl().simple_refl(pos));
    }
    for (auto& [x, c] : au) {
      NElt part = algQ.mul(algQ.theta(x), algQ.basis_finite(us));
      for (auto& [we, cw] : part.c) pq_sub.add(we, cw * c);
    }
  }

  // pi^Q(xi): principal series of H^Q at t
  Parabolic parQ0(algQ, {});
  FinRep trivQ(parQ0.quotient(), q, {}, {});
  InducedRep repQ(parQ0, trivQ, t_values, q);

  // a = rho(pi(w^Q, bar xi^{-1})^{-1}(a')): at unitary t, bar t^{-1} = t
  CMat A = intertwiner_matrix_right_path(par0, triv, q, t_values, w.word0(wQ));
  CVec a_full = A.inverse() * a_prime;
  // rho: restrict to the coordinates of N_u with u in W_Q, matching the
  // basis order of repQ (coset reps of the sub algebra sorted by length/word)
  const auto& order_par = par0.coset_reps();
  const auto& order_sub = parQ0.coset_reps();
  CVec a_vec = CVec::Zero(repQ.dim());
  for (size_t k = 0; k < order_sub.size(); ++k) {
    // match sub element to parent element through the word
    int up = 0;
    for (int letter : algQ.weyl().word0(order_sub[k]))
      up = w.mul0(up, w.simple_refl(Q[letter]));
    int pos = -1;
    for (size_t j = 0; j < order_par.size(); ++j)
      if (order_par[j] == up) pos = (int)j;
    if (pos < 0) throw std::logic_error("factorization: basis match failed");
    a_vec(k) = a_full(pos);
  }
  // b = sigma^{-1}(b'): b' lives on the span of N_u, u in W_{Q'};
  // sigma(N_u) = N_{w^Q u w^Q^{-1}}
  CVec b_vec = CVec::Zero(repQ.dim());
  for (size_t k = 0; k < order_sub.size(); ++k) {
    int up = 0;
    for (int letter : algQ.weyl().word0(order_sub[k]))
      up = w.mul0(up, w.simple_refl(Q[letter]));
    int img = w.mul0(w.mul0(wQ, up), w.inv0(wQ));
    int pos = -1;
    for (size_t j = 0; j < order_par.size(); ++j)
      if (order_par[j] == img) pos = (int)j;
    if (pos < 0) throw std::logic_error("factorization: sigma match failed");
    b_vec(k) = b_prime(pos);
  }
  Cplx f_q = a_vec.dot(repQ.act(pq_sub) * b_vec);
  Cplx rhs = q_wQ_half * cQ * f_q;

  FactorizationCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.discrepancy = std::abs(lhs - rhs);
  // negative control: perturb the c^Q exponent
  Cplx rhs_bad = q_wQ_half * cQ * cQ * f_q;
  out.negative_control = std::abs(lhs - rhs_bad);
  return out;
}

}  // namespace hecke
