#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hecke/cfun.hpp"
#include "hecke/errors.hpp"
#include "hecke/repmod.hpp"

using namespace hecke;

namespace {
const double kQ = 2.0;

std::vector<Cplx> unit_point(std::initializer_list<double> angles) {
  std::vector<Cplx> t;
  for (double a : angles) t.push_back(std::polar(1.0, a));
  return t;
}
}  // namespace

TEST_CASE("steinberg: second root of the quadratic relation, DS criterion") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  FinRep st = steinberg(alg, kQ);
  CHECK(st.dim() == 1);
  CHECK(std::abs(st.nsimple(0)(0, 0) - Cplx(-1.0 / std::sqrt(2.0))) < 1e-14);
  CHECK(st.relation_residual() < 1e-12);
  // theta_alpha weight modulus < 1
  CHECK(std::abs(st.act_theta({2})(0, 0)) < 1.0);
  auto wd = weights(st);
  auto rpt = casselman_check(st, wd);
  CHECK(rpt.tempered);
  CHECK(rpt.discrete_series);
}

TEST_CASE("steinberg central character equals a residual orbit point") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  CFunction cf(alg);
  auto stw = steinberg_weight(alg, kQ);  // omega(t) = -q^{-1/2}
  CHECK(std::abs(stw[0] - Cplx(-1.0 / std::sqrt(kQ))) < 1e-14);
  bool matched = false;
  for (auto& orb : cf.residual_orbits())
    for (auto& pt : orb) {
      // numeric value of the exact point coordinate
      double val = pt.coords[0].sign * pt.coords[0].mult.to_double() *
                   std::pow(kQ, pt.coords[0].exp.to_double());
      if (std::abs(val - stw[0].real()) < 1e-12 && std::abs(stw[0].imag()) < 1e-12)
        matched = true;
    }
  CHECK(matched);
}

TEST_CASE("induce with P = F0 recovers delta") {
  Algebra alg(preset_datum("A2"), LabelSpec{});
  Parabolic par(alg, {0, 1});
  FinRep st = steinberg(par.quotient(), kQ);
  InducedRep ind(par, st, {}, kQ);
  CHECK(ind.dim() == 1);
  for (int i = 0; i < 2; ++i)
    CHECK((ind.act_finite_simple(i) - st.nsimple(i)).norm() < 1e-12);
}

TEST_CASE("principal series: dimension, relations, weights, unitarity") {
  Algebra alg(preset_datum("A2"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  auto t = unit_point({0.61, 1.13});
  InducedRep ps(par0, triv, t, kQ);
  CHECK(ps.dim() == 6);
  FinRep rep = ps.to_finrep();
  CHECK(rep.relation_residual() < 1e-10);
  CHECK(rep.star_residual() < 1e-8);  // unitary at unitary t
  WeightDatum wd = weights(rep);
  CHECK(wd.spaces.size() == 6);
  // weights are exactly {w(t)}
  auto pred = ps.predicted_weights();
  for (auto& pw : pred) {
    double best = 1e18;
    for (auto& s : wd.spaces) {
      double d = 0;
      for (int i = 0; i < 2; ++i) d += std::abs(s.value[i] - pw.value[i]);
      best = std::min(best, d);
    }
    CHECK(best < 1e-8);
  }
  // non-unitary parameter: the form is no longer preserved
  std::vector<Cplx> t2 = {1.7 * t[0], t[1]};
  InducedRep ps2(par0, triv, t2, kQ);
  FinRep rep2 = ps2.to_finrep();
  CHECK(rep2.relation_residual() < 1e-10);
  CHECK(rep2.star_residual() > 1e-3);
}

TEST_CASE("A2 induction from the Steinberg of H_P has dimension 3") {
  Algebra alg(preset_datum("A2"), LabelSpec{});
  Parabolic par(alg, {0});
  FinRep st = steinberg(par.quotient(), kQ);
  InducedRep ind(par, st, unit_point({0.37}), kQ);
  CHECK(ind.dim() == 3);
  FinRep rep = ind.to_finrep();
  CHECK(rep.relation_residual() < 1e-10);
  CHECK(rep.star_residual() < 1e-8);
  // weights match the predicted w(r_P t^P) set
  WeightDatum wd = weights(rep);
  auto pred = ind.predicted_weights();
  CHECK(pred.size() == 3);
  for (auto& pw : pred) {
    double best = 1e18;
    for (auto& s : wd.spaces) {
      double d = 0;
      for (int i = 0; i < 2; ++i) d += std::abs(s.value[i] - pw.value[i]);
      best = std::min(best, d);
    }
    CHECK(best < 1e-7);
  }
}

TEST_CASE("weights: one-dimensional and Jordan-block cases") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  FinRep st = steinberg(alg, kQ);
  WeightDatum wd1 = weights(st);
  CHECK(wd1.spaces.size() == 1);
  CHECK(wd1.spaces[0].multiplicity == 1);
  // principal series at the fixed point t = s(t): theta becomes a Jordan block
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  InducedRep ps(par0, triv, {Cplx(1.0)}, kQ);
  FinRep rep = ps.to_finrep();
  WeightDatum wd = weights(rep);
  CHECK(wd.spaces.size() == 1);
  CHECK(wd.spaces[0].multiplicity == 2);
  // the nilpotent part is genuinely nonzero
  ExponentExpansion ee = exponent_expansion(rep, wd);
  CHECK(ee.terms.size() == 1);
  CHECK(ee.terms[0].log_unip[0].norm() > 1e-8);
}

TEST_CASE("casselman verdicts: the three spec cases") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  // unitary principal series: tempered, not discrete series
  InducedRep ps(par0, triv, unit_point({0.9}), kQ);
  FinRep rep = ps.to_finrep();
  auto r1 = casselman_check(rep, weights(rep));
  CHECK(r1.tempered);
  CHECK(!r1.discrete_series);
  // Steinberg: tempered and discrete series
  FinRep st = steinberg(alg, kQ);
  auto r2 = casselman_check(st, weights(st));
  CHECK(r2.tempered);
  CHECK(r2.discrete_series);
  // non-unitary principal series: not tempered, with witness
  InducedRep bad(par0, triv, {Cplx(2.0)}, kQ);
  FinRep rep3 = bad.to_finrep();
  auto r3 = casselman_check(rep3, weights(rep3));
  CHECK(!r3.tempered);
  CHECK(!r3.witness.empty());
}

TEST_CASE("exponent expansion reconstructs f(theta_x h)") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unif(-1, 1);
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  for (bool generic : {true, false}) {
    InducedRep ps(par0, triv, generic ? unit_point({0.8}) : std::vector<Cplx>{Cplx(1.0)}, kQ);
    FinRep rep = ps.to_finrep();
    WeightDatum wd = weights(rep);
    ExponentExpansion ee = exponent_expansion(rep, wd);
    CVec a(2), b(2);
    for (int i = 0; i < 2; ++i) {
      a(i) = Cplx(unif(rng), unif(rng));
      b(i) = Cplx(unif(rng), unif(rng));
    }
    Coefficient f{&rep, a, b};
    NElt h = alg.basis_finite(alg.weyl().simple_refl(0));
    for (int n = -6; n <= 6; ++n) {
      Vec x = {n};
      Cplx direct = f(alg.mul(alg.theta(x), h));
      Cplx series = ee.reconstruct(f, h, x);
      CHECK(std::abs(direct - series) < 1e-8 * (1 + std::abs(direct)));
    }
    if (generic)
      for (auto& term : ee.terms) CHECK(term.log_unip[0].norm() < 1e-9);
  }
}

TEST_CASE("constant term: tower, idempotence, translations, Steinberg vanishing") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unif(-1, 1);
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  InducedRep ps(par0, triv, unit_point({1.2}), kQ);
  FinRep rep = ps.to_finrep();
  WeightDatum wd = weights(rep);
  // Q = F0: everything is tempered, projector is the identity
  ConstantTerm full = constant_term(rep, wd, {0});
  CHECK((full.projector - CMat::Identity(2, 2)).norm() < 1e-10);
  // idempotence
  ConstantTerm empty = constant_term(rep, wd, {});
  CHECK((empty.projector * empty.projector - empty.projector).norm() < 1e-10);
  // right translations commute with the constant term, exactly at matrix level
  CVec a(2), b(2);
  for (int i = 0; i < 2; ++i) {
    a(i) = Cplx(unif(rng), unif(rng));
    b(i) = Cplx(unif(rng), unif(rng));
  }
  Coefficient f{&rep, a, b};
  NElt y = alg.theta({1});
  NElt h = alg.basis_finite(alg.weyl().simple_refl(0));
  Cplx lhs = empty.eval(f, alg.mul(h, y));
  Coefficient f_ry{&rep, a, CVec(rep.act(y) * b)};
  Cplx rhs = empty.eval(f_ry, h);
  CHECK(std::abs(lhs - rhs) < 1e-12);
  // Steinberg coefficient: constant term along any proper Q vanishes
  FinRep st = steinberg(alg, kQ);
  WeightDatum wds = weights(st);
  ConstantTerm cst = constant_term(st, wds, {});
  CHECK(cst.projector.norm() < 1e-12);
}

TEST_CASE("left-normalized intertwiner: square, twist, singularity") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  InducedRep ps(par0, triv, unit_point({0.7}), kQ);
  CMat m = intertwiner_matrix_left(ps, 0);
  CHECK((m * m - CMat::Identity(2, 2)).norm() < 1e-10);
  // theta twist: M pi(theta_x) M^{-1} = pi(theta_{s(x)})
  CMat tw = m * ps.act_theta({1}) * m.inverse();
  CHECK((tw - ps.act_theta({-1})).norm() < 1e-10);
  // singular normalization at alpha(t) = q^{-1}
  InducedRep sing(par0, triv, {Cplx(1.0 / std::sqrt(kQ))}, kQ);
  CHECK_THROWS_AS(intertwiner_matrix_left(sing, 0), SingularNormalization);
}

TEST_CASE("right intertwiners: unitary, intertwining, square, braid") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0.1, 6.2);
  Algebra alg(preset_datum("A2"), LabelSpec{});
  Parabolic par0(alg, {});
  FinRep triv(par0.quotient(), kQ, {}, {});
  const WeylGroup& w = alg.weyl();
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Cplx> t = unit_point({angle(rng), angle(rng)});
    InducedRep ps(par0, triv, t, kQ);
    // single reflection: M: M_t -> M_{s t}
    for (int i = 0; i < 2; ++i) {
      CMat m = intertwiner_matrix_right_path(par0, triv, kQ, t, {i});
      CHECK((m * m.adjoint() - CMat::Identity(6, 6)).norm() < 1e-8);
      // intertwines pi_t -> pi_{s(t)}
      std::vector<Cplx> st(2);
      const IntMat& mx = w.xmatrix(w.simple_refl(i));
      for (int k = 0; k < 2; ++k) {
        Cplx val = 1.0;
        for (int r = 0; r < 2; ++r) val *= std::pow(t[r], (double)mx[r][k]);
        st[k] = val;
      }
      InducedRep ps2(par0, triv, st, kQ);
      NElt h = alg.add(alg.theta({1, 0}), alg.basis_finite(w.simple_refl(1)));
      CHECK((m * ps.act(h) - ps2.act(h) * m).norm() < 1e-8);
      // square through the orbit
      CMat back = intertwiner_matrix_right_path(par0, triv, kQ, st, {i});
      CHECK((back * m - CMat::Identity(6, 6)).norm() < 1e-8);
    }
    // braid: words (010) and (101) of w0's subwords s1 s2 s1 = s2 s1 s2
    CMat b1 = intertwiner_matrix_right_path(par0, triv, kQ, t, {0, 1, 0});
    CMat b2 = intertwiner_matrix_right_path(par0, triv, kQ, t, {1, 0, 1});
    CHECK((b1 - b2).norm() < 1e-8);
  }
}

TEST_CASE("spectral split: worked examples and the gap guard") {
  // diag(1, 1/2), n = 4: ||P_small A^4|| = 1/16
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  auto sp = spectral_split(a, 0.3);
  CMat a4 = sp.p_small * a * a * a * a;
  CHECK(a4.norm() == doctest::Approx(1.0 / 16));
  CHECK((sp.p_one + sp.p_small - CMat::Identity(2, 2)).norm() < 1e-12);
  // eigenvalue in the forbidden annulus
  CMat bad = CMat::Zero(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = 0.9;
  CHECK_THROWS_AS(spectral_split(bad, 0.2), SpectrumGapViolation);
  // P_{<1} A^n = (A_{<1})^n on a random conjugated matrix
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> unif(-1, 1);
  int p = 5;
  CMat diag = CMat::Zero(p, p);
  diag(0, 0) = std::polar(1.0, 0.3);
  diag(1, 1) = std::polar(1.0, 2.1);
  diag(2, 2) = 0.6;
  diag(3, 3) = Cplx(0.2, 0.5);
  diag(4, 4) = -0.55;
  CMat s = CMat::Zero(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) s(i, j) = Cplx(unif(rng), unif(rng));
  s += 3.0 * CMat::Identity(p, p);
  CMat m = s * diag * s.inverse();
  auto sp2 = spectral_split(m, 0.3);
  CMat an = m, asm_n = sp2.a_small;
  for (int n = 1; n <= 12; ++n) {
    CHECK((sp2.p_small * an - asm_n).norm() < 1e-7 * (1 + an.norm()));
    an = an * m;
    asm_n = asm_n * sp2.a_small;
  }
}

TEST_CASE("cone generators cover the dominant cone") {
  for (auto& name : preset_names()) {
    RootDatum d = preset_datum(name);
    std::vector<int> all;
    for (int i = 0; i < d.num_simple(); ++i) all.push_back(i);
    auto gens = cone_generators(d, all);
    // every dominant point in a box decomposes greedily into generators
    Vec cur(d.rank, -6);
    while (true) {
      if (d.is_dominant(cur) && !is_zero(cur)) {
        Vec x = cur;
        bool progress = true;
        int guard = 0;
        while (!is_zero(x) && progress && guard < 200) {
          progress = false;
          for (auto& g : gens) {
            Vec y = sub(x, g);
            if (d.is_dominant(y)) {
              x = y;
              progress = true;
              ++guard;
              break;
            }
          }
        }
        CHECK(is_zero(x));
      }
      int k = 0;
      while (k < d.rank && cur[k] == 6) cur[k++] = -6;
      if (k == d.rank) break;
      ++cur[k];
    }
  }
}
