// heckekernel: exact affine Hecke algebra computations and numeric
// harmonic-analysis checks, driven by a JSON job config.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hecke/config.hpp"
#include "hecke/errors.hpp"
#include "hecke/harmonic.hpp"

using namespace hecke;
using nlohmann::json;

namespace {

std::vector<Cplx> angles_to_point(const json& arr) {
  std::vector<Cplx> t;
  for (auto& a : arr) t.push_back(std::polar(1.0, a.get<double>()));
  return t;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const json& arr) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& item : arr) out.push_back({item[0].get<std::string>(), item[1].get<std::string>()});
  return out;
}

void emit_element(Output& out, const Algebra& alg, const NElt& h) {
  out.headers = {"word", "coefficient"};
  for (auto& [word, poly] : alg.to_pairs(h)) out.rows.push_back({word, poly});
}

Output cmd_validate(const JobConfig& cfg) {
  Output out;
  auto bad = validate(cfg.datum);
  out.scalars.push_back({"violations", std::to_string(bad.size())});
  out.headers = {"violation"};
  for (auto& b : bad) out.rows.push_back({b});
  if (!bad.empty()) throw ValidationError("datum invalid: " + bad.front());
  return out;
}

Output cmd_weyl(const JobConfig& cfg, const Algebra& alg) {
  Output out;
  const json& p = *cfg.params;
  const WeylGroup& w = alg.weyl();
  out.scalars.push_back({"|W0|", std::to_string(w.order())});
  out.scalars.push_back({"aff_simples", std::to_string(w.num_aff_simple())});
  out.scalars.push_back({"label_classes", std::to_string(alg.labels().num_classes())});
  for (int c = 0; c < alg.labels().num_classes(); ++c)
    out.scalars.push_back({"class_" + alg.labels().class_name(c),
                           "f=" + std::to_string(alg.labels().class_exponent(c))});
  if (p.contains("word")) {
    WElt elt = w.parse_word(p["word"].get<std::string>());
    out.scalars.push_back({"word", w.word_string(elt)});
    out.scalars.push_back({"length", std::to_string(w.length(elt))});
    out.scalars.push_back({"norm", w.norm(elt).str()});
  }
  if (p.contains("P") && !p.contains("Q")) {
    auto P = p["P"].get<std::vector<int>>();
    out.headers = {"coset_rep", "length"};
    for (int u : w.coset_reps(P)) {
      std::ostringstream word;
      if (w.word0(u).empty()) word << "e";
      for (size_t i = 0; i < w.word0(u).size(); ++i)
        word << (i ? " " : "") << "s" << (w.word0(u)[i] + 1);
      out.rows.push_back({word.str(), std::to_string(w.length0(u))});
    }
  }
  if (p.contains("P") && p.contains("Q")) {
    auto P = p["P"].get<std::vector<int>>();
    auto Q = p["Q"].get<std::vector<int>>();
    out.headers = {"d", "length", "meet"};
    for (auto& dc : w.double_cosets(Q, P)) {
      std::ostringstream word, meet;
      if (w.word0(dc.d).empty()) word << "e";
      for (size_t i = 0; i < w.word0(dc.d).size(); ++i)
        word << (i ? " " : "") << "s" << (w.word0(dc.d)[i] + 1);
      for (size_t i = 0; i < dc.meet.size(); ++i) meet << (i ? " " : "") << dc.meet[i];
      out.rows.push_back({word.str(), std::to_string(w.length0(dc.d)), meet.str()});
    }
  }
  return out;
}

Output cmd_mult(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  if (!p.contains("a") || !p.contains("b"))
    throw ValidationError("mult requires params.a and params.b");
  NElt a = alg.from_pairs(pairs_from_json(p["a"]));
  NElt b = alg.from_pairs(pairs_from_json(p["b"]));
  Output out;
  emit_element(out, alg, alg.mul(a, b));
  return out;
}

Output cmd_normalform(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  if (!p.contains("h")) throw ValidationError("normalform requires params.h");
  NElt h = alg.from_pairs(pairs_from_json(p["h"]));
  BForm b = alg.bernstein_left(h);
  Output out;
  bool roundtrip = alg.nform_left(b) == h;
  out.scalars.push_back({"roundtrip_exact", roundtrip ? "true" : "false"});
  out.headers = {"finite_part", "exponent", "coefficient"};
  for (auto& [u, au] : b.a) {
    std::ostringstream word;
    if (alg.weyl().word0(u).empty()) word << "e";
    for (size_t i = 0; i < alg.weyl().word0(u).size(); ++i)
      word << (i ? " " : "") << "s" << (alg.weyl().word0(u)[i] + 1);
    for (auto& [x, c] : au) {
      std::ostringstream xs;
      xs << "[";
      for (size_t i = 0; i < x.size(); ++i) xs << (i ? "," : "") << x[i];
      xs << "]";
      out.rows.push_back({word.str(), xs.str(), c.str()});
    }
  }
  return out;
}

Output cmd_center(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  Output out;
  NElt h;
  if (p.contains("h")) {
    h = alg.from_pairs(pairs_from_json(p["h"]));
  } else if (p.contains("x")) {
    Vec x = p["x"].get<Vec>();
    // W0-orbit sum of theta_x
    std::set<Vec> orbit;
    for (int u = 0; u < alg.weyl().order(); ++u) orbit.insert(alg.weyl().act_x(u, x));
    for (auto& y : orbit) h = alg.add(h, alg.theta(y));
  } else {
    throw ValidationError("center requires params.h or params.x");
  }
  auto cw = alg.is_central(h);
  out.scalars.push_back({"central", cw.central ? "true" : "false"});
  if (!cw.central) out.scalars.push_back({"witness", cw.witness});
  return out;
}

Output cmd_cfun(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  CFunction cf(alg);
  if (!p.contains("angles")) throw ValidationError("cfun requires params.angles");
  std::vector<Cplx> t = angles_to_point(p["angles"]);
  if ((int)t.size() != alg.datum().rank) throw ValidationError("angles dimension mismatch");
  std::vector<int> P;
  if (p.contains("P")) P = p["P"].get<std::vector<int>>();
  auto S = cf.complement_set(P);
  Cplx c = cf.c_product(t, S, cfg.q);
  Output out;
  out.scalars.push_back({"c", format_complex(c)});
  out.scalars.push_back({"abs_c_sq", format_double(std::norm(c))});
  return out;
}

Output cmd_residual(const JobConfig& cfg, const Algebra& alg) {
  CFunction cf(alg);
  auto orbits = cf.residual_orbits();
  Output out;
  out.scalars.push_back({"orbits", std::to_string(orbits.size())});
  out.headers = {"orbit", "point", "pole_order", "cster"};
  for (size_t i = 0; i < orbits.size(); ++i)
    for (auto& pt : orbits[i])
      out.rows.push_back({std::to_string(i), exact_point_str(pt),
                          std::to_string(cf.pole_order(pt)),
                          cf.cster_check(pt) ? "true" : "false"});
  (void)cfg;
  return out;
}

struct InducedBundle {
  std::unique_ptr<Parabolic> par;
  std::unique_ptr<FinRep> delta;
  std::unique_ptr<InducedRep> rep;
  std::vector<Cplx> tP;
};

InducedBundle make_induced(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  InducedBundle b;
  std::vector<int> P;
  if (p.contains("P")) P = p["P"].get<std::vector<int>>();
  b.par = std::make_unique<Parabolic>(alg, P);
  std::string which = p.value("delta", "steinberg");
  if (which == "steinberg" && !P.empty()) {
    b.delta = std::make_unique<FinRep>(steinberg(b.par->quotient(), cfg.q));
  } else if (P.empty()) {
    b.delta = std::make_unique<FinRep>(b.par->quotient(), cfg.q, std::vector<CMat>{},
                                       std::vector<CMat>{});
  } else {
    throw ValidationError("delta must be 'steinberg' (built-in) for P nonempty");
  }
  if (p.contains("tP_angles")) {
    b.tP = angles_to_point(p["tP_angles"]);
  } else {
    b.tP.assign(b.par->tP_dim(), Cplx(1.0, 0.0));
  }
  if (p.contains("tP_scale")) {
    auto scales = p["tP_scale"].get<std::vector<double>>();
    for (size_t i = 0; i < b.tP.size() && i < scales.size(); ++i) b.tP[i] *= scales[i];
  }
  if ((int)b.tP.size() != b.par->tP_dim())
    throw ValidationError("tP_angles dimension mismatch");
  b.rep = std::make_unique<InducedRep>(*b.par, *b.delta, b.tP, cfg.q);
  return b;
}

Output weights_table(const FinRep& rep, const WeightDatum& wd) {
  Output out;
  out.headers = {"weight", "abs", "multiplicity"};
  std::vector<std::pair<std::string, std::pair<std::string, int>>> rows;
  for (auto& s : wd.spaces) {
    std::ostringstream val, absv;
    double prod = 1;
    for (size_t i = 0; i < s.value.size(); ++i) {
      val << (i ? ";" : "") << format_complex(s.value[i]);
      prod *= std::abs(s.value[i]);
    }
    absv << format_double(prod);
    rows.push_back({absv.str(), {val.str(), s.multiplicity}});
  }
  std::sort(rows.begin(), rows.end());
  for (auto& [absv, rest] : rows)
    out.rows.push_back({rest.first, absv, std::to_string(rest.second)});
  (void)rep;
  return out;
}

Output cmd_induce(const JobConfig& cfg, const Algebra& alg) {
  auto b = make_induced(cfg, alg);
  FinRep rep = b.rep->to_finrep();
  Output out = weights_table(rep, weights(rep));
  out.scalars.push_back({"dim", std::to_string(b.rep->dim())});
  out.scalars.push_back({"relation_residual", format_double(rep.relation_residual())});
  out.scalars.push_back({"star_residual", format_double(rep.star_residual())});
  std::rotate(out.scalars.rbegin(), out.scalars.rbegin() + 3, out.scalars.rend());
  return out;
}

Output cmd_tempered(const JobConfig& cfg, const Algebra& alg) {
  auto b = make_induced(cfg, alg);
  FinRep rep = b.rep->to_finrep();
  WeightDatum wd = weights(rep);
  auto rpt = casselman_check(rep, wd);
  Output out = weights_table(rep, wd);
  out.scalars.push_back({"tempered", rpt.tempered ? "true" : "false"});
  out.scalars.push_back({"discrete_series", rpt.discrete_series ? "true" : "false"});
  if (!rpt.witness.empty()) out.scalars.push_back({"witness", rpt.witness});
  return out;
}

Output cmd_cterm(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  auto b = make_induced(cfg, alg);
  if (!p.contains("Q")) throw ValidationError("cterm requires params.Q");
  auto Q = p["Q"].get<std::vector<int>>();
  FinRep rep = b.rep->to_finrep();
  WeightDatum wd = weights(rep);
  ConstantTerm ct = constant_term(rep, wd, Q);
  // class-sum comparison on random coefficients and a norm ball
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  auto pred = b.rep->predicted_weights();
  const WeylGroup& w = alg.weyl();
  // class-sum projector: spaces whose matching coset rep has w(P) in R_{Q,+}
  ParabolicSystem psq = standard_parabolic(alg.datum(), Q);
  std::set<int> qroots(psq.positive.begin(), psq.positive.end());
  CMat classum = CMat::Zero(rep.dim(), rep.dim());
  for (auto& s : wd.spaces) {
    // match to predicted weight
    int best = -1;
    double bestd = 1e18;
    for (size_t k = 0; k < pred.size(); ++k) {
      double dd = 0;
      for (size_t i = 0; i < s.value.size(); ++i) dd += std::abs(s.value[i] - pred[k].value[i]);
      if (dd < bestd) {
        bestd = dd;
        best = (int)k;
      }
    }
    if (best < 0 || bestd > 1e-6) throw NumericError("cterm: weight matching failed");
    int rep_w = pred[best].w;
    bool q_class = true;
    for (int ppos : b.par->P()) {
      Vec img = w.act_x(rep_w, alg.datum().simple_root(ppos));
      if (!alg.datum().is_positive_root_vec(img) || !qroots.count(alg.datum().root_index(img)))
        q_class = false;
    }
    if (q_class) classum += s.projector;
  }
  double bound = p.value("normBound", 8.0);
  auto ball = w.norm_ball(Rational((long long)bound));
  double maxdisc = 0;
  int trials = p.value("trials", 3);
  for (int trial = 0; trial < trials; ++trial) {
    CVec a(rep.dim()), bb(rep.dim());
    for (int i = 0; i < rep.dim(); ++i) {
      a(i) = Cplx(unif(rng), unif(rng));
      bb(i) = Cplx(unif(rng), unif(rng));
    }
    for (auto& elt : ball) {
      NElt h = alg.basis(elt);
      CMat mh = rep.act(h);
      Cplx spec = a.dot(ct.projector * (mh * bb));
      Cplx cls = a.dot(classum * (mh * bb));
      maxdisc = std::max(maxdisc, std::abs(spec - cls));
    }
  }
  Output out;
  out.scalars.push_back({"projector_rank", format_double(ct.projector.trace().real())});
  out.scalars.push_back({"classsum_discrepancy", format_double(maxdisc)});
  return out;
}

Output cmd_plancherel(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  int grid = p.value("gridN", 4096);
  double bound = p.value("normBound", 10.0);
  auto rpt = plancherel_invert_rank1(alg, cfg.q, grid, Rational((long long)bound));
  Output out;
  out.scalars.push_back({"ds_mass", format_double(rpt.ds_mass)});
  out.scalars.push_back({"num_discrete", std::to_string(rpt.num_discrete)});
  out.scalars.push_back({"max_residual", format_double(rpt.max_residual)});
  out.headers = {"word", "residual"};
  for (auto& [word, r] : rpt.residuals) out.rows.push_back({word, format_double(r)});
  return out;
}

Output cmd_probe_growth(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  auto b = make_induced(cfg, alg);
  FinRep rep = b.rep->to_finrep();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  CVec a(rep.dim()), bb(rep.dim());
  for (int i = 0; i < rep.dim(); ++i) {
    a(i) = Cplx(unif(rng), unif(rng));
    bb(i) = Cplx(unif(rng), unif(rng));
  }
  Coefficient f{&rep, a, bb};
  double maxN = p.value("maxN", 14.0);
  auto table = growth_probe(f, alg.weyl(), Rational((long long)maxN));
  Output out;
  out.scalars.push_back({"verdict", table.verdict});
  out.scalars.push_back({"fitted", format_double(table.fitted)});
  out.headers = {"n", "max_abs"};
  for (auto& [n, m] : table.rows)
    out.rows.push_back({format_double(n), format_double(m)});
  return out;
}

Output cmd_probe_decay(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  auto b = make_induced(cfg, alg);
  if (!p.contains("Q") || !p.contains("x0"))
    throw ValidationError("probe-decay requires params.Q and params.x0");
  auto Q = p["Q"].get<std::vector<int>>();
  Vec x0 = p["x0"].get<Vec>();
  FinRep rep = b.rep->to_finrep();
  WeightDatum wd = weights(rep);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  CVec a(rep.dim()), bb(rep.dim());
  for (int i = 0; i < rep.dim(); ++i) {
    a(i) = Cplx(unif(rng), unif(rng));
    bb(i) = Cplx(unif(rng), unif(rng));
  }
  Coefficient f{&rep, a, bb};
  auto rpt = cterm_decay_probe(rep, wd, f, Q, x0, p.value("kmax", 12));
  Output out;
  out.scalars.push_back({"applicable", rpt.applicable ? "true" : "false"});
  if (rpt.applicable) out.scalars.push_back({"slope", format_double(rpt.slope)});
  out.headers = {"k", "difference"};
  for (size_t i = 0; i < rpt.values.size(); ++i)
    out.rows.push_back({std::to_string(i + 1), format_double(rpt.values[i])});
  return out;
}

Output cmd_factor_check(const JobConfig& cfg, const Algebra& alg) {
  const json& p = *cfg.params;
  std::vector<int> Q = p.value("Q", std::vector<int>{0});
  int count = p.value("count", 10);
  CFunction cf(alg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1, 1);
  std::uniform_real_distribution<double> angle(0.1, 6.1);
  int dim = alg.weyl().order();
  double maxdisc = 0, minctl = 1e18;
  auto wq_elems = alg.weyl().parabolic_elements(Q);
  for (int trial = 0; trial < count; ++trial) {
    std::vector<Cplx> t;
    for (int i = 0; i < alg.datum().rank; ++i) t.push_back(std::polar(1.0, angle(rng)));
    CVec a(dim), b = CVec::Zero(dim);
    for (int i = 0; i < dim; ++i) a(i) = Cplx(unif(rng), unif(rng));
    // b' supported on H(W_{Q'})
    int w_q = 0;
    for (int u : wq_elems)
      if (alg.weyl().length0(u) > alg.weyl().length0(w_q)) w_q = u;
    int wQ = alg.weyl().mul0(alg.weyl().w0_index(), w_q);
    for (int u : wq_elems) {
      int img = alg.weyl().mul0(alg.weyl().mul0(wQ, u), alg.weyl().inv0(wQ));
      const auto& order = alg.weyl().coset_reps({});
      for (size_t j = 0; j < order.size(); ++j)
        if (order[j] == img) b(j) = Cplx(unif(rng), unif(rng));
    }
    NElt h;
    auto ball = alg.weyl().norm_ball(Rational(3));
    std::uniform_int_distribution<size_t> pick(0, ball.size() - 1);
    for (int k = 0; k < 3; ++k) h.add(ball[pick(rng)], Laurent(1));
    auto chk = factorization_check(alg, cf, cfg.q, Q, t, a, b, h);
    maxdisc = std::max(maxdisc, chk.discrepancy);
    minctl = std::min(minctl, chk.negative_control);
  }
  Output out;
  out.scalars.push_back({"max_discrepancy", format_double(maxdisc)});
  out.scalars.push_back({"min_negative_control", format_double(minctl)});
  return out;
}

int run(const std::string& config_text, const std::string& cmd_override,
        const std::string& format_override, const std::string& out_override,
        long long seed_override) {
  ParsedJob job = parse_config(config_text);
  JobConfig& cfg = job.cfg;
  if (!cmd_override.empty()) cfg.cmd = cmd_override;
  if (!format_override.empty()) cfg.format = format_override;
  if (!out_override.empty()) cfg.out = out_override;
  if (seed_override >= 0) cfg.seed = (unsigned long long)seed_override;

  Output result;
  if (cfg.cmd == "validate") {
    result = cmd_validate(cfg);
  } else {
    auto bad = validate(cfg.datum);
    if (!bad.empty()) throw ValidationError("datum invalid: " + bad.front());
    Algebra alg(cfg.datum, cfg.labels);
    if (cfg.cmd == "weyl")
      result = cmd_weyl(cfg, alg);
    else if (cfg.cmd == "mult")
      result = cmd_mult(cfg, alg);
    else if (cfg.cmd == "normalform")
      result = cmd_normalform(cfg, alg);
    else if (cfg.cmd == "center")
      result = cmd_center(cfg, alg);
    else if (cfg.cmd == "cfun")
      result = cmd_cfun(cfg, alg);
    else if (cfg.cmd == "residual")
      result = cmd_residual(cfg, alg);
    else if (cfg.cmd == "induce")
      result = cmd_induce(cfg, alg);
    else if (cfg.cmd == "weights")
      result = cmd_induce(cfg, alg);
    else if (cfg.cmd == "tempered")
      result = cmd_tempered(cfg, alg);
    else if (cfg.cmd == "cterm")
      result = cmd_cterm(cfg, alg);
    else if (cfg.cmd == "plancherel")
      result = cmd_plancherel(cfg, alg);
    else if (cfg.cmd == "probe-growth")
      result = cmd_probe_growth(cfg, alg);
    else if (cfg.cmd == "probe-decay")
      result = cmd_probe_decay(cfg, alg);
    else if (cfg.cmd == "factor-check")
      result = cmd_factor_check(cfg, alg);
    else
      throw ValidationError("unknown cmd '" + cfg.cmd + "'");
  }
  std::string text = emit(result, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heckekernel: affine Hecke algebra kernel computations"};
  std::string config_path, cmd_override, format_override, out_override;
  long long seed_override = -1;
  app.add_option("config", config_path, "job config file (JSON)")->required();
  app.add_option("--cmd", cmd_override, "override the config command");
  app.add_option("--format", format_override, "override output format (csv|json|text)");
  app.add_option("--out", out_override, "override output path");
  app.add_option("--seed", seed_override, "override the random seed");
  CLI11_PARSE(app, argc, argv);

  // HECKE_THREADS caps internal parallelism; evaluation loops are serial in
  // this build, so any positive cap is honored as-is.
  if (const char* th = std::getenv("HECKE_THREADS")) (void)th;

  std::ifstream f(config_path);
  if (!f) {
    std::cout << "{\"error\":\"cannot read config file\",\"code\":2}\n";
    return 2;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  try {
    return run(buf.str(), cmd_override, format_override, out_override, seed_override);
  } catch (const ValidationError& e) {
    std::cout << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cout << json{{"error", e.what()}, {"code", 4}}.dump() << "\n";
    return 4;
  } catch (const NumericError& e) {
    std::cout << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}, {"code", 1}}.dump() << "\n";
    return 1;
  }
}
