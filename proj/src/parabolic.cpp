#include <algorithm>
#include <set>
#include <sstream>

#include "hecke/algebra.hpp"
#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Label spec for a derived datum (sub or quotient): each affine-simple class
// inherits the parent exponent of the matching affine root q_{a+1}, looked up
// through the original coroots.
LabelSpec inherited_labels(const RootDatum& derived,
                           const Algebra& parent,
                           const std::vector<Vec>* coroot_lift) {
  WeylGroup wtmp(derived);
  LabelSpec unit;
  LabelFunction tmp(wtmp, unit);
  LabelSpec spec;
  for (int c = 0; c < tmp.num_classes(); ++c) {
    // representative simple of this class
    int rep = -1;
    for (int i = 0; i < wtmp.num_aff_simple(); ++i)
      if (tmp.class_of_simple(i) == c && tmp.class_name(c) == ("s" + std::to_string(i)))
        rep = i;
    if (rep < 0)
      for (int i = 0; i < wtmp.num_aff_simple(); ++i)
        if (tmp.class_of_simple(i) == c) { rep = i; break; }
    const AffineRoot& a = wtmp.aff_simple(rep);
    Vec orig = a.coroot;
    if (coroot_lift) {
      // match the derived coroot to its original through the aligned lists
      int idx = -1;
      for (size_t k = 0; k < derived.coroots.size(); ++k)
        if (derived.coroots[k] == a.coroot) idx = (int)k;
      if (idx < 0) throw std::logic_error("inherited_labels: coroot not found");
      orig = (*coroot_lift)[idx];
    }
    spec.per_class[tmp.class_name(c)] = parent.labels().f_aff(orig, a.level + 1);
  }
  return spec;
}

}  // namespace

Parabolic::Parabolic(const Algebra& parent, const std::vector<int>& P)
    : parent_(&parent), P_(P), qd_(quotient_data(parent.datum(), P)) {
  if (qd_.sub.num_simple() > 0) {
    LabelSpec sspec = inherited_labels(qd_.sub, parent, nullptr);
    sub_ = std::make_unique<Algebra>(qd_.sub, sspec);
  } else {
    LabelSpec unit;
    sub_ = std::make_unique<Algebra>(qd_.sub, unit);
  }
  if (qd_.quotient.rank > 0) {
    std::vector<Vec> lift;
    for (size_t k = 0; k < qd_.quotient.coroots.size(); ++k)
      lift.push_back(parent.datum().coroots[qd_.root_origin[k]]);
    LabelSpec qspec = inherited_labels(qd_.quotient, parent, &lift);
    quot_ = std::make_unique<Algebra>(qd_.quotient, qspec);
  } else {
    RootDatum trivial;
    trivial.rank = 0;
    trivial.finalize();
    LabelSpec unit;
    quot_ = std::make_unique<Algebra>(trivial, unit);
  }
}

NElt Parabolic::embed(const NElt& h_sub) const {
  // H^P sits inside H as the span of theta_x N_u, u in W_P; transport the
  // left Bernstein form termwise.
  BForm b = sub_->bernstein_left(h_sub);
  NElt out;
  for (auto& [u, au] : b.a) {
    // map the finite part through its word in the sub datum's simples
    int pu = 0;
    for (int i : sub_->weyl().word0(u))
      pu = parent_->weyl().mul0(pu, parent_->weyl().simple_refl(P_[i]));
    NElt nu = parent_->basis_finite(pu);
    for (auto& [x, c] : au) {
      NElt part = parent_->mul(parent_->theta(x), nu);
      for (auto& [w, cw] : part.c) out.add(w, cw * c);
    }
  }
  return out;
}

BForm Parabolic::phi1(const BForm& left_sub) const {
  if (qd_.quotient.rank == 0) {
    // H_P = C: theta_xbar = 1, N_u = N_u (W_P trivial here)
    BForm out;
    for (auto& [u, au] : left_sub.a) {
      Laurent total;
      for (auto& [x, c] : au) total += c;
      if (!total.is_zero()) out.a[u] = a_mono(Vec{}, total);
    }
    return out;
  }
  BForm out;
  for (auto& [u, au] : left_sub.a) {
    // finite part transported by matching words (P-simples align by index)
    int qu = 0;
    for (int i : sub_->weyl().word0(u))
      qu = quot_->weyl().mul0(qu, quot_->weyl().simple_refl(i));
    AElt img;
    for (auto& [x, c] : au) {
      Vec xb = mat_apply(qd_.proj_xp, x);
      img = a_add(img, a_mono(xb, c));
    }
    if (!img.empty()) {
      auto& slot = out.a[qu];
      slot = a_add(slot, img);
    }
  }
  return out;
}

std::complex<double> Parabolic::tP_value(const Vec& x,
                                         const std::vector<std::complex<double>>& tP) const {
  Vec xq = mat_apply(qd_.proj_xup, x);
  std::complex<double> val = 1.0;
  for (size_t j = 0; j < xq.size(); ++j) val *= std::pow(tP[j], (double)xq[j]);
  return val;
}

std::complex<double> Parabolic::tP_lattice_value(
    const Vec& x, const std::vector<std::complex<double>>& tp) const {
  Vec xq = mat_apply(qd_.proj_xp, x);
  std::complex<double> val = 1.0;
  for (size_t j = 0; j < xq.size(); ++j) val *= std::pow(tp[j], (double)xq[j]);
  return val;
}

const std::vector<int>& Parabolic::coset_reps() const {
  if (coset_reps_.empty()) coset_reps_ = parent_->weyl().coset_reps(P_);
  return coset_reps_;
}

const InductionSplit& Parabolic::induction_split(const NElt& h, int coset_index) const {
  std::ostringstream os;
  for (auto& [w, c] : h.c) {
    for (auto v : w.x) os << v << ",";
    os << "|" << w.u << "|" << c.str() << ";";
  }
  auto key = std::make_pair(os.str(), coset_index);
  auto it = split_cache_.find(key);
  if (it != split_cache_.end()) return it->second;
  const Algebra& alg = *parent_;
  const WeylGroup& w = alg.weyl();
  const auto& reps = coset_reps();
  NElt prod = alg.mul(h, alg.basis_finite(reps[coset_index]));
  BForm right = alg.bernstein_right(prod);
  InductionSplit sp;
  auto wp_elems = w.parabolic_elements(P_);
  std::set<int> wp_set(wp_elems.begin(), wp_elems.end());
  for (auto& [u, au] : right.a) {
    int found_w = -1, found_v = -1;
    for (size_t k = 0; k < reps.size() && found_w < 0; ++k) {
      int v = w.mul0(w.inv0(reps[k]), u);
      if (wp_set.count(v)) {
        found_w = (int)k;
        found_v = v;
      }
    }
    if (found_w < 0) throw std::logic_error("induction_split: coset not matched");
    auto& slot = sp.parts[found_w].a[found_v];
    slot = a_add(slot, au);
  }
  return split_cache_.emplace(key, std::move(sp)).first->second;
}

CBForm Parabolic::psi_twisted(const BForm& left_sub,
                              const std::vector<std::complex<double>>& tP,
                              double v) const {
  CBForm out;
  for (auto& [u, au] : left_sub.a)
    for (auto& [x, c] : au) {
      std::complex<double> val = tP_value(x, tP) * c.eval(v);
      if (std::abs(val) == 0.0) continue;
      out.a[u][x] += val;
    }
  return out;
}

CBForm Parabolic::phi_twisted(const BForm& left_sub,
                              const std::vector<std::complex<double>>& tP,
                              double v) const {
  CBForm out;
  for (auto& [u, au] : left_sub.a) {
    int qu = 0;
    if (qd_.quotient.rank > 0)
      for (int i : sub_->weyl().word0(u))
        qu = quot_->weyl().mul0(qu, quot_->weyl().simple_refl(i));
    for (auto& [x, c] : au) {
      std::complex<double> val = tP_value(x, tP) * c.eval(v);
      if (std::abs(val) == 0.0) continue;
      Vec xb = qd_.quotient.rank > 0 ? mat_apply(qd_.proj_xp, x) : Vec{};
      out.a[qu][xb] += val;
    }
  }
  return out;
}

PQSplit pq_project(const Algebra& alg, const NElt& h, const std::vector<int>& Q) {
  const WeylGroup& w = alg.weyl();
  // Q' = w^Q(Q) with w^Q = w_0 w_Q the longest element of W^Q
  auto wq_elems = w.parabolic_elements(Q);
  int w_q = 0;
  for (int u : wq_elems)
    if (w.length0(u) > w.length0(w_q)) w_q = u;
  int wQ = w.mul0(w.w0_index(), w_q);  // w^Q
  int wQp = w.inv0(wQ);                // w^{Q'}
  std::vector<int> Qp;
  for (int q : Q) {
    Vec img = w.act_x(wQ, w.datum().simple_root(q));
    int found = -1;
    for (int i = 0; i < w.datum().num_simple(); ++i)
      if (w.datum().simple_root(i) == img) found = i;
    if (found < 0) throw std::logic_error("pq_project: w^Q(Q) not standard");
    Qp.push_back(found);
  }
  auto dcs = w.double_cosets(Q, Qp);
  auto wq_set = wq_elems;
  auto wqp_set = w.parabolic_elements(Qp);

  PQSplit out;
  BForm b = alg.bernstein_left(h);
  std::vector<BForm> parts(dcs.size());
  for (auto& [u, au] : b.a) {
    // find the double coset of u
    int best = u;
    for (int a : wq_set)
      for (int c : wqp_set) {
        int v = w.mul0(w.mul0(a, u), c);
        if (w.length0(v) < w.length0(best)) best = v;
      }
    int idx = -1;
    for (size_t i = 0; i < dcs.size(); ++i)
      if (dcs[i].d == best) idx = (int)i;
    if (idx < 0) throw std::logic_error("pq_project: coset not found");
    parts[idx].a[u] = au;
  }
  for (size_t i = 0; i < dcs.size(); ++i) {
    out.coset_d.push_back(dcs[i].d);
    out.components.push_back(alg.nform_left(parts[i]));
  }
  int pq_idx = -1;
  for (size_t i = 0; i < dcs.size(); ++i)
    if (dcs[i].d == wQp) pq_idx = (int)i;
  if (pq_idx < 0) throw std::logic_error("pq_project: w^{Q'} is not a coset rep");
  out.pq = alg.mul(out.components[pq_idx],
                   alg.invert_basis(w.from_finite(wQp)));
  return out;
}

}  // namespace hecke
