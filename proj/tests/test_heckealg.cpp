#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hecke/algebra.hpp"

using namespace hecke;

namespace {

NElt random_elt(const Algebra& alg, std::mt19937_64& rng, int terms = 4,
                const Rational& radius = Rational(3)) {
  auto ball = alg.weyl().norm_ball(radius);
  std::uniform_int_distribution<size_t> pick(0, ball.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(-2, 2);
  NElt h;
  for (int t = 0; t < terms; ++t)
    h.add(ball[pick(rng)], Laurent::monomial(Rational(coef(rng)), deg(rng)));
  return h;
}

Algebra make(const std::string& name, int b2_long = 1) {
  LabelSpec spec;
  if (name == "B2" && b2_long != 1) spec.per_class["s1"] = b2_long;
  return Algebra(preset_datum(name), spec);
}

}  // namespace

TEST_CASE("N-basis multiplication against the word oracle") {
  // N_w N_w' = N_{ww'} whenever lengths add: brute-force over ball pairs
  for (auto& name : {std::string("A1-sc"), std::string("A2")}) {
    Algebra alg = make(name);
    const WeylGroup& w = alg.weyl();
    auto ball = w.norm_ball(Rational(3));
    for (auto& a : ball)
      for (auto& b : ball) {
        if (w.length(w.mul(a, b)) != w.length(a) + w.length(b)) continue;
        CHECK(alg.mul(alg.basis(a), alg.basis(b)) == alg.basis(w.mul(a, b)));
      }
  }
}

TEST_CASE("quadratic relation in the N basis") {
  for (auto& name : preset_names()) {
    Algebra alg = make(name, 2);
    for (int i = 0; i < alg.weyl().num_aff_simple(); ++i) {
      NElt ns = alg.basis(alg.weyl().aff_refl(i));
      int f = alg.labels().f_simple(i);
      NElt expect = alg.add(alg.one(), alg.scale(Laurent::v(f) - Laurent::v(-f), ns));
      CHECK(alg.mul(ns, ns) == expect);
    }
  }
}

TEST_CASE("braid relations via length-additive products") {
  Algebra a2 = make("A2");
  NElt s1 = a2.basis_finite(a2.weyl().simple_refl(0));
  NElt s2 = a2.basis_finite(a2.weyl().simple_refl(1));
  CHECK(a2.mul(s1, s2, s1) == a2.mul(s2, s1, s2));
  Algebra b2 = make("B2", 2);
  NElt t1 = b2.basis_finite(b2.weyl().simple_refl(0));
  NElt t2 = b2.basis_finite(b2.weyl().simple_refl(1));
  CHECK(b2.mul(b2.mul(t1, t2), b2.mul(t1, t2)) == b2.mul(b2.mul(t2, t1), b2.mul(t2, t1)));
}

TEST_CASE("basis inverses") {
  for (auto& name : preset_names()) {
    Algebra alg = make(name);
    auto ball = alg.weyl().norm_ball(Rational(4));
    for (auto& w : ball) {
      CHECK(alg.mul(alg.basis(w), alg.invert_basis(w)) == alg.one());
    }
  }
}

TEST_CASE("theta is a lattice homomorphism, independent of the splitting") {
  std::mt19937_64 rng(3);
  for (auto& name : preset_names()) {
    Algebra alg = make(name);
    const RootDatum& d = alg.datum();
    std::uniform_int_distribution<int> coord(-3, 3);
    CHECK(alg.theta(Vec(d.rank, 0)) == alg.one());
    for (int trial = 0; trial < 12; ++trial) {
      Vec x(d.rank), y(d.rank);
      for (auto& c : x) c = coord(rng);
      for (auto& c : y) c = coord(rng);
      CHECK(alg.mul(alg.theta(x), alg.theta(y)) == alg.theta(add(x, y)));
      // adversarial split: x = (x + m) - m for a random dominant m
      Vec m(d.rank, 0);
      for (int i = 0; i < d.rank; ++i) m[i] = std::abs(coord(rng));
      if (d.is_dominant(m) && d.is_dominant(add(x, m))) {
        NElt alt = alg.mul(alg.basis(alg.weyl().translation(add(x, m))),
                           alg.invert_basis(alg.weyl().translation(m)));
        CHECK(alt == alg.theta(x));
      }
    }
    // dominant x: theta_x = N_{t_x}
    Vec dom(d.rank, 0);
    if (d.num_simple() > 0) {
      dom = d.simple_root(0);
      if (!d.is_dominant(dom)) dom = neg(dom);
      if (d.is_dominant(dom)) CHECK(alg.theta(dom) == alg.basis(alg.weyl().translation(dom)));
    }
  }
}

TEST_CASE("A1-sc theta inverses from the spec example") {
  Algebra alg = make("A1-sc");
  CHECK(alg.theta({-1}) == alg.invert_basis(alg.weyl().translation({1})));
  CHECK(alg.mul(alg.theta({1}), alg.theta({-1})) == alg.one());
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(17);
  for (auto& name : preset_names()) {
    Algebra alg = make(name);
    for (int trial = 0; trial < 10; ++trial) {
      NElt a = random_elt(alg, rng), b = random_elt(alg, rng), c = random_elt(alg, rng);
      CHECK(alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c)));
    }
  }
}

TEST_CASE("bernstein forms round trip") {
  std::mt19937_64 rng(23);
  for (auto& name : preset_names()) {
    Algebra alg = make(name, 2);
    for (int trial = 0; trial < 12; ++trial) {
      NElt h = random_elt(alg, rng);
      CHECK(alg.nform_left(alg.bernstein_left(h)) == h);
      CHECK(alg.nform_right(alg.bernstein_right(h)) == h);
    }
    // h = theta_x: left form is concentrated at the identity
    Vec x(alg.datum().rank, 0);
    x[0] = 2;
    if (alg.datum().rank > 1) x[1] = -1;
    BForm b = alg.bernstein_left(alg.theta(x));
    CHECK(b.a.size() == 1);
    CHECK(b.a.count(0) == 1);
    CHECK(b.a.at(0).size() == 1);
    CHECK(b.a.at(0).count(x) == 1);
  }
}

TEST_CASE("support norm bound under multiplication") {
  std::mt19937_64 rng(29);
  Algebra alg = make("A2");
  for (int trial = 0; trial < 8; ++trial) {
    NElt a = random_elt(alg, rng), b = random_elt(alg, rng);
    NElt ab = alg.mul(a, b);
    if (ab.is_zero()) continue;
    Rational bound = alg.support_norm(a) + alg.support_norm(b);
    CHECK(!(bound < alg.support_norm(ab)));
  }
}

TEST_CASE("cross relation: worked A1-sc example") {
  Algebra alg = make("A1-sc");
  NElt ns = alg.basis_finite(alg.weyl().simple_refl(0));
  // theta_omega N_s - N_s theta_{-omega} = (q^{1/2} - q^{-1/2}) theta_omega
  NElt lhs = alg.sub(alg.mul(alg.theta({1}), ns), alg.mul(ns, alg.theta({-1})));
  NElt rhs = alg.scale(Laurent::v(1) - Laurent::v(-1), alg.theta({1}));
  CHECK(lhs == rhs);
}

TEST_CASE("cross relation: both R_nr cases exactly") {
  std::mt19937_64 rng(31);
  for (auto& name : preset_names()) {
    Algebra alg = make(name, 3);
    const RootDatum& d = alg.datum();
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int i = 0; i < d.num_simple(); ++i) {
      for (int trial = 0; trial < 6; ++trial) {
        Vec x(d.rank);
        for (auto& c : x) c = coord(rng);
        NElt ns = alg.basis_finite(alg.weyl().simple_refl(i));
        Vec sx = alg.weyl().act_x(alg.weyl().simple_refl(i), x);
        NElt lhs = alg.sub(alg.mul(alg.theta(x), ns), alg.mul(ns, alg.theta(sx)));
        CHECK(lhs == alg.nform_left(alg.cross_relation_rhs(i, x)));
      }
    }
  }
}

TEST_CASE("trace, star, inner product") {
  std::mt19937_64 rng(37);
  for (auto& name : {std::string("A1-adj"), std::string("A2")}) {
    Algebra alg = make(name);
    CHECK(alg.trace(alg.one()) == Laurent(1));
    NElt ns = alg.basis_finite(alg.weyl().simple_refl(0));
    CHECK(alg.star(ns) == ns);
    for (int trial = 0; trial < 8; ++trial) {
      NElt a = random_elt(alg, rng), b = random_elt(alg, rng);
      // tau is a trace
      CHECK(alg.trace(alg.mul(a, b)) == alg.trace(alg.mul(b, a)));
      // star is an anti-involution
      CHECK(alg.star(alg.mul(a, b)) == alg.mul(alg.star(b), alg.star(a)));
      CHECK(alg.star(alg.star(a)) == a);
    }
    // N-basis orthonormality
    auto ball = alg.weyl().norm_ball(Rational(3));
    for (auto& u : ball)
      for (auto& v : ball) {
        Laurent ip = alg.inner(alg.basis(u), alg.basis(v));
        if (u == v)
          CHECK(ip == Laurent(1));
        else
          CHECK(ip.is_zero());
      }
  }
}

TEST_CASE("center membership") {
  Algebra alg = make("A1-sc");
  CHECK(alg.is_central(alg.one()).central);
  NElt orbit_sum = alg.add(alg.theta({1}), alg.theta({-1}));
  CHECK(alg.is_central(orbit_sum).central);
  auto cw = alg.is_central(alg.basis_finite(alg.weyl().simple_refl(0)));
  CHECK(!cw.central);
  CHECK(!cw.witness.empty());
  // A2: W0-orbit sums of theta are central; partial sums are not
  Algebra a2 = make("A2");
  std::set<Vec> orbit;
  for (int u = 0; u < a2.weyl().order(); ++u) orbit.insert(a2.weyl().act_x(u, {1, 0}));
  NElt z;
  for (auto& y : orbit) z = a2.add(z, a2.theta(y));
  CHECK(a2.is_central(z).central);
  CHECK(!a2.is_central(a2.theta({1, 0})).central);
}

TEST_CASE("intertwiners: commutation, squares, braid") {
  std::mt19937_64 rng(41);
  for (auto& name : preset_names()) {
    Algebra alg = make(name, 2);
    const RootDatum& d = alg.datum();
    for (int i = 0; i < d.num_simple(); ++i) {
      NElt iota = alg.nform_left(alg.intertwiner(i));
      for (int j = 0; j < d.rank; ++j) {
        Vec e(d.rank, 0);
        e[j] = 1;
        Vec se = alg.weyl().act_x(alg.weyl().simple_refl(i), e);
        CHECK(alg.mul(iota, alg.theta(e)) == alg.mul(alg.theta(se), iota));
      }
      BForm sq;
      sq.a[0] = alg.intertwiner_squared(i);
      CHECK(alg.mul(iota, iota) == alg.nform_left(sq));
    }
  }
  // A1-sc golden value: iota_s^2 = (q - theta_{-alpha})(q - theta_alpha)
  Algebra a1 = make("A1-sc");
  AElt golden = a_mul(a_add(a_mono(Vec{0}, Laurent::v(2)), a_mono(Vec{-2}, Laurent(-1))),
                      a_add(a_mono(Vec{0}, Laurent::v(2)), a_mono(Vec{2}, Laurent(-1))));
  CHECK(a1.intertwiner_squared(0) == golden);
  // braid
  Algebra a2 = make("A2");
  NElt i1 = a2.nform_left(a2.intertwiner(0));
  NElt i2 = a2.nform_left(a2.intertwiner(1));
  CHECK(a2.mul(i1, i2, i1) == a2.mul(i2, i1, i2));
}

TEST_CASE("parabolic maps") {
  Algebra alg = make("A2");
  Parabolic par(alg, {0});
  // phi_1 is the identity on the finite subalgebra
  NElt ns_sub = par.sub().basis_finite(par.sub().weyl().simple_refl(0));
  BForm sub_b = par.sub().bernstein_left(ns_sub);
  BForm img = par.phi1(sub_b);
  CHECK(img.a.size() == 1);
  // psi_1 = id: twist by the trivial character
  std::vector<Cplx> one_t(par.tP_dim(), Cplx(1, 0));
  CBForm tw = par.psi_twisted(sub_b, one_t, std::sqrt(2.0));
  CHECK(tw.a.size() == 1);
  // phi_{t^P}(theta_x) = x(t^P) theta_{xbar} on random x
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::vector<Cplx> tp = {std::polar(1.0, 0.9)};
  for (int trial = 0; trial < 10; ++trial) {
    Vec x = {coord(rng), coord(rng)};
    BForm tb = par.sub().bernstein_left(par.sub().theta(x));
    CBForm ph = par.phi_twisted(tb, tp, std::sqrt(2.0));
    REQUIRE(ph.a.size() == 1);
    const CAElt& a0 = ph.a.begin()->second;
    REQUIRE(a0.size() == 1);
    Vec xb = mat_apply(par.qdata().proj_xp, x);
    CHECK(a0.begin()->first == xb);
    Cplx expect = par.tP_value(x, tp);
    CHECK(std::abs(a0.begin()->second - expect) < 1e-12);
  }
  // embedding: theta and finite generators agree with the parent
  Vec e = {1, 0};
  CHECK(par.embed(par.sub().theta(e)) == alg.theta(e));
  CHECK(par.embed(ns_sub) == alg.basis_finite(alg.weyl().simple_refl(0)));
}

TEST_CASE("pQ projection") {
  std::mt19937_64 rng(47);
  Algebra alg = make("A2");
  const WeylGroup& w = alg.weyl();
  std::vector<int> Q = {0};
  // w^{Q'} setup
  auto wq = w.parabolic_elements(Q);
  int w_q = 0;
  for (int u : wq)
    if (w.length0(u) > w.length0(w_q)) w_q = u;
  int wQp = w.inv0(w.mul0(w.w0_index(), w_q));
  // identity p_Q(h N_{w^{Q'}}) = h for h in H^Q
  NElt h = alg.add(alg.theta({2, -1}), alg.basis_finite(w.simple_refl(0)));
  PQSplit sp = pq_project(alg, alg.mul(h, alg.basis_finite(wQp)), Q);
  CHECK(sp.pq == h);
  // left H^Q-module map: p_Q(g h) = g p_Q(h) for g in H^Q
  NElt g = alg.add(alg.theta({0, 1}), alg.scale(Laurent::v(1), alg.basis_finite(w.simple_refl(0))));
  NElt any = random_elt(alg, rng, 5);
  PQSplit s1 = pq_project(alg, alg.mul(g, any), Q);
  PQSplit s2 = pq_project(alg, any, Q);
  CHECK(s1.pq == alg.mul(g, s2.pq));
  // splitting sums back
  NElt total;
  for (auto& comp : s2.components) total = alg.add(total, comp);
  CHECK(total == any);
  // result lies in H^Q: left Bernstein support in W_Q
  BForm pb = alg.bernstein_left(s2.pq);
  auto wq_set = w.parabolic_elements(Q);
  for (auto& [u, au] : pb.a)
    CHECK(std::count(wq_set.begin(), wq_set.end(), u) == 1);
}

TEST_CASE("seminorms") {
  Algebra alg = make("A1-sc");
  auto ball = alg.weyl().norm_ball(Rational(4));
  for (auto& w : ball) {
    double nw = alg.weyl().norm(w).to_double();
    CHECK(alg.seminorm(alg.basis(w), 3, 2.0) == doctest::Approx(std::pow(1 + nw, 3)));
  }
  CHECK(alg.seminorm(alg.one(), 0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("serialization round trip and ordering") {
  std::mt19937_64 rng(53);
  Algebra alg = make("A2");
  for (int trial = 0; trial < 6; ++trial) {
    NElt h = random_elt(alg, rng);
    auto pairs = alg.to_pairs(h);
    CHECK(alg.from_pairs(pairs) == h);
    // ordering: nondecreasing norm
    double last = -1;
    for (auto& [word, poly] : pairs) {
      double nrm = alg.weyl().norm(alg.weyl().parse_word(word)).to_double();
      CHECK(nrm >= last - 1e-12);
      last = nrm;
    }
  }
}
