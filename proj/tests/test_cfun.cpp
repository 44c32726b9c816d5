#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hecke/cfun.hpp"
#include "hecke/errors.hpp"

using namespace hecke;

TEST_CASE("empty product and worked A1-sc values") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  CFunction cf(alg);
  std::vector<Cplx> t = {2.0};  // omega(t) = q => alpha(t) = q^2 at q = 2
  CHECK(cf.c_product(t, {}, 2.0) == Cplx(1.0));
  double expected = (1 - std::pow(2.0, -3)) / (1 - std::pow(2.0, -2));
  Cplx got = cf.c_product(t, cf.complement_set({}), 2.0);
  CHECK(std::abs(got - expected) < 1e-14);
  // pole at alpha(t) = 1
  std::vector<Cplx> one = {1.0};
  CHECK_THROWS_AS(cf.c_product(one, cf.complement_set({}), 2.0), PoleAtPoint);
}

TEST_CASE("exact pole orders (A1-sc)") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  CFunction cf(alg);
  ExactPoint p_q{{{1, Rational(1, 2), Rational(1)}}};
  ExactPoint p_qm{{{1, Rational(-1, 2), Rational(1)}}};
  ExactPoint p_1{{{1, Rational(0), Rational(1)}}};
  ExactPoint p_gen{{{1, Rational(0), Rational(3, 2)}}};
  CHECK(cf.pole_order(p_q) == 1);
  CHECK(cf.pole_order(p_qm) == 1);
  CHECK(cf.pole_order(p_1) == -2);
  CHECK(cf.pole_order(p_gen) == 0);
}

TEST_CASE("pole order never exceeds the rank on the scan grid") {
  for (auto& name : preset_names()) {
    Algebra alg(preset_datum(name), LabelSpec{});
    if (!alg.datum().is_semisimple()) continue;
    CFunction cf(alg);
    int rank = alg.datum().rank;
    // scan the same grid residual_orbits uses
    std::vector<Rational> exps;
    for (int twice = -4; twice <= 4; ++twice) exps.push_back(Rational(twice, 2));
    std::vector<ExactPoint> pts;
    if (rank == 1) {
      for (auto& e : exps)
        for (int s : {1, -1}) pts.push_back(ExactPoint{{{s, e, Rational(1)}}});
    } else {
      for (auto& e1 : exps)
        for (auto& e2 : exps)
          for (int s1 : {1, -1})
            for (int s2 : {1, -1})
              pts.push_back(ExactPoint{{{s1, e1, Rational(1)}, {s2, e2, Rational(1)}}});
    }
    for (auto& p : pts) CHECK(cf.pole_order(p) <= rank);
  }
}

TEST_CASE("residual points per preset") {
  {
    Algebra alg(preset_datum("A1-sc"), LabelSpec{});
    CFunction cf(alg);
    auto orbits = cf.residual_orbits();
    // locus alpha(t) = q^{+-1}: two sign orbits over it
    CHECK(orbits.size() == 2);
    for (auto& orb : orbits)
      for (auto& pt : orb) {
        ExactCoord a = exact_char_value(pt, {2});
        CHECK(a.sign == 1);
        CHECK(a.mult == Rational(1));
        CHECK((a.exp == Rational(1) || a.exp == Rational(-1)));
        CHECK(cf.cster_check(pt));
      }
  }
  {
    Algebra alg(preset_datum("A2"), LabelSpec{});
    CFunction cf(alg);
    auto orbits = cf.residual_orbits();
    CHECK(orbits.size() == 1);
    bool principal = false;
    for (auto& pt : orbits[0]) {
      ExactCoord a1 = exact_char_value(pt, {2, -1});
      ExactCoord a2 = exact_char_value(pt, {-1, 2});
      if (a1.exp == Rational(1) && a2.exp == Rational(1) && a1.sign == 1 && a2.sign == 1)
        principal = true;
      CHECK(cf.cster_check(pt));
      CHECK(cf.pole_order(pt) == 2);
    }
    CHECK(principal);
  }
  {
    Algebra alg(preset_datum("B2"), LabelSpec{});
    CFunction cf(alg);
    for (auto& orb : cf.residual_orbits())
      for (auto& pt : orb) {
        CHECK(cf.cster_check(pt));
        CHECK(cf.pole_order(pt) == 2);
      }
  }
}

TEST_CASE("residual search empty when Z_X != 0 (cor:finc)") {
  RootDatum gl;
  gl.rank = 2;
  gl.roots = {{1, -1}, {-1, 1}};
  gl.coroots = {{1, -1}, {-1, 1}};
  gl.simple = {0};
  gl.finalize();
  Algebra alg(gl, LabelSpec{});
  CFunction cf(alg);
  CHECK(cf.residual_orbits().empty());
}

TEST_CASE("residual orbits are W0-stable and finite") {
  Algebra alg(preset_datum("B2"), LabelSpec{});
  CFunction cf(alg);
  auto orbits = cf.residual_orbits();
  for (auto& orb : orbits) {
    std::set<ExactPoint> set(orb.begin(), orb.end());
    for (auto& pt : orb)
      for (int u = 0; u < alg.weyl().order(); ++u)
        CHECK(set.count(exact_act(alg.weyl(), u, pt)) == 1);
  }
}

TEST_CASE("cster negative control") {
  Algebra alg(preset_datum("A2"), LabelSpec{});
  CFunction cf(alg);
  // s = (+, -): R_{s,1} = {+-alpha2}; r* = s c^{-1} leaves the W(R_{s,1}) orbit
  ExactPoint bad{{{1, Rational(1), Rational(1)}, {-1, Rational(1), Rational(1)}}};
  CHECK(!cf.cster_check(bad));
}

TEST_CASE("|c|^2 is W-invariant on unitary samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0, 2 * 3.14159265358979);
  for (auto& name : preset_names()) {
    Algebra alg(preset_datum(name), LabelSpec{});
    CFunction cf(alg);
    auto S = cf.complement_set({});
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Cplx> t;
      for (int i = 0; i < alg.datum().rank; ++i) t.push_back(std::polar(1.0, angle(rng)));
      double base;
      try {
        base = std::norm(cf.c_product(t, S, 2.0));
      } catch (const PoleAtPoint&) {
        continue;
      }
      for (int u = 0; u < alg.weyl().order(); ++u) {
        // coordinates of u(t)
        std::vector<Cplx> ut(t.size());
        const IntMat& m = alg.weyl().xmatrix(alg.weyl().inv0(u));
        for (size_t i = 0; i < t.size(); ++i) {
          Cplx val = 1.0;
          for (size_t r = 0; r < t.size(); ++r) val *= std::pow(t[r], (double)m[r][i]);
          ut[i] = val;
        }
        try {
          CHECK(std::abs(std::norm(cf.c_product(ut, S, 2.0)) - base) < 1e-10 * (1 + base));
        } catch (const PoleAtPoint&) {
        }
      }
    }
  }
}

TEST_CASE("K_P-invariance of c for A2, P = {0}") {
  Algebra alg(preset_datum("A2"), LabelSpec{});
  CFunction cf(alg);
  Parabolic par(alg, {0});
  auto S = cf.complement_set({0});
  // K_P = T_P cap T^P is {+-1} in the T_P coordinate here; the sign twist of
  // r_P leaves every alpha(t) with alpha in R_0 \ R_P unchanged only through
  // the product c; evaluate both lifts.
  std::vector<Cplx> rp_plus = {std::sqrt(0.5)};
  std::vector<Cplx> rp_minus = {-std::sqrt(0.5)};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(0.1, 6.2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Cplx> tp = {std::polar(1.0, angle(rng))};
    auto lift = [&](const std::vector<Cplx>& rp) {
      std::vector<Cplx> t(2);
      for (int i = 0; i < 2; ++i) {
        Vec e(2, 0);
        e[i] = 1;
        t[i] = par.tP_value(e, tp) * par.tP_lattice_value(e, rp);
      }
      return t;
    };
    // K acts on r_P: the twisted point is the lift with the sign flipped AND
    // the same t^P; c must agree (lem:csmo(iii))
    Cplx c1 = cf.c_product(lift(rp_plus), S, 2.0);
    Cplx c2 = cf.c_product(lift(rp_minus), S, 2.0);
    CHECK(std::abs(c1 - c2) < 1e-10 * (1 + std::abs(c1)));
  }
}

TEST_CASE("1/c is bounded on the unitary grid by the rigorous factor bound") {
  for (auto& name : preset_names()) {
    Algebra alg(preset_datum(name), LabelSpec{});
    CFunction cf(alg);
    auto S = cf.complement_set({});
    double q = 2.0;
    // rigorous bound: product over factors of 2 / (1 - q^{-e_min}) style terms
    double bound = 1.0;
    for (int idx : S) {
      for (auto& f : cf.factors()[idx]) {
        if (f.in_numerator)
          bound *= 2.0 / (1.0 - std::pow(q, f.exp.to_double()));
        // denominator factors of c contribute zeros of 1/c: skip
      }
    }
    int n = alg.datum().rank;
    int per_axis = n == 1 ? 10000 : 100;
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < (n == 2 ? per_axis : 1); ++j) {
        double a1 = 2 * 3.14159265358979 * (i + 0.5) / per_axis;
        double a2 = 2 * 3.14159265358979 * (j + 0.5) / per_axis;
        std::vector<Cplx> t = {std::polar(1.0, a1)};
        if (n == 2) t.push_back(std::polar(1.0, a2));
        Cplx c = cf.c_product(t, S, q);
        double inv = 1.0 / std::abs(c);
        CHECK(std::isfinite(inv));
        CHECK(inv <= bound + 1e-9);
      }
  }
}

TEST_CASE("plancherel density facts for A1-sc") {
  Algebra alg(preset_datum("A1-sc"), LabelSpec{});
  CFunction cf(alg);
  double q = 2.0;
  // prefactor = 1 / (q(w0) |W0|) = 1/(2q)
  CHECK(cf.plancherel_prefactor({}, q) == doctest::Approx(1.0 / (2 * q)));
  // density 0 at t = 1 (double zero of |c|^{-2})
  CHECK(cf.plancherel_density({}, {Cplx(1.0)}, q, 1.0) == doctest::Approx(0.0));
  // symmetry under t -> t^{-1} and positivity away from alpha(t) = 1
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0.05, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    double a = angle(rng);
    double d1 = cf.plancherel_density({}, {std::polar(1.0, a)}, q, 1.0);
    double d2 = cf.plancherel_density({}, {std::polar(1.0, -a)}, q, 1.0);
    CHECK(d1 == doctest::Approx(d2));
    if (std::abs(std::polar(1.0, 2 * a) - Cplx(1.0)) > 1e-3) CHECK(d1 > 0);
  }
}

TEST_CASE("exact point serialization") {
  ExactPoint p{{{1, Rational(3, 2), Rational(1)}, {-1, Rational(0), Rational(2)}}};
  std::string s = exact_point_str(p);
  CHECK(s == "(+,3/2,1);(-,0,2)");
  CHECK(parse_exact_point(s) == p);
}

TEST_CASE("A1-adj residual points with unequal labels sit at the classified spots") {
  LabelSpec ls;
  ls.per_class["s0"] = 1;
  ls.per_class["s1"] = 2;
  Algebra alg(preset_datum("A1-adj"), ls);
  CFunction cf(alg);
  auto orbits = cf.residual_orbits();
  REQUIRE(orbits.size() == 2);
  // beta(t) = +- q^{(f1 + f0)/2} and -+ q^{(f1-f0)/2}: exponents 3/2 and 1/2
  std::set<std::pair<int, Rational>> got;
  for (auto& orb : orbits)
    for (auto& pt : orb) got.insert({pt.coords[0].sign, pt.coords[0].exp.abs()});
  CHECK(got.count({1, Rational(3, 2)}) == 1);
  CHECK(got.count({-1, Rational(1, 2)}) == 1);
}
