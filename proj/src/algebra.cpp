#include "hecke/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "hecke/errors.hpp"

namespace hecke {

AElt a_mul(const AElt& a, const AElt& b) {
  AElt p;
  for (auto& [xa, ca] : a)
    for (auto& [xb, cb] : b) {
      Vec x = add(xa, xb);
      auto it = p.find(x);
      Laurent t = ca * cb;
      if (it == p.end()) {
        if (!t.is_zero()) p[x] = t;
      } else {
        it->second += t;
        if (it->second.is_zero()) p.erase(it);
      }
    }
  return p;
}

AElt a_add(const AElt& a, const AElt& b) {
  AElt p = a;
  for (auto& [x, c] : b) {
    auto it = p.find(x);
    if (it == p.end()) {
      if (!c.is_zero()) p[x] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) p.erase(it);
    }
  }
  return p;
}

AElt a_scale(const Laurent& c, const AElt& a) {
  AElt p;
  if (c.is_zero()) return p;
  for (auto& [x, v] : a) p[x] = c * v;
  return p;
}

AElt a_mono(const Vec& x, const Laurent& c) {
  AElt p;
  if (!c.is_zero()) p[x] = c;
  return p;
}

bool a_is_zero(const AElt& a) { return a.empty(); }

bool BForm::is_zero() const {
  for (auto& [u, coeff] : a)
    if (!coeff.empty()) return false;
  return true;
}

Algebra::Algebra(const RootDatum& datum, const LabelSpec& labels) : datum_(datum) {
  datum_.finalize();
  weyl_ = std::make_unique<WeylGroup>(datum_);
  labels_ = std::make_unique<LabelFunction>(*weyl_, labels);
  // a strictly dominant shift for the theta decomposition x = x+ - x-
  strict_dominant_.assign(datum_.rank, 0);
  if (datum_.num_simple() > 0) {
    bool found = false;
    for (int radius = 1; radius <= 6 && !found; ++radius) {
      Vec cur(datum_.rank, -radius);
      while (true) {
        bool ok = true;
        for (int i = 0; i < datum_.num_simple() && ok; ++i)
          if (dot(cur, datum_.simple_coroot(i)) < 1) ok = false;
        if (ok) {
          strict_dominant_ = cur;
          found = true;
          break;
        }
        int k = 0;
        while (k < datum_.rank && cur[k] == radius) cur[k++] = -radius;
        if (k == datum_.rank) break;
        ++cur[k];
      }
    }
    if (!found) throw ValidationError("no strictly dominant vector found");
  }
}

NElt Algebra::one() const {
  NElt h;
  h.add(weyl_->identity(), Laurent(1));
  return h;
}

NElt Algebra::basis(const WElt& w) const {
  NElt h;
  h.add(w, Laurent(1));
  return h;
}

NElt Algebra::basis_finite(int u) const { return basis(weyl_->from_finite(u)); }

NElt Algebra::scale(const Laurent& c, const NElt& h) const {
  NElt r;
  if (c.is_zero()) return r;
  for (auto& [w, v] : h.c) r.c[w] = c * v;
  return r;
}

NElt Algebra::add(const NElt& a, const NElt& b) const {
  NElt r = a;
  for (auto& [w, v] : b.c) r.add(w, v);
  return r;
}

NElt Algebra::sub(const NElt& a, const NElt& b) const {
  NElt r = a;
  for (auto& [w, v] : b.c) r.add(w, -v);
  return r;
}

void Algebra::fold_simple(NElt& h, int aff_pos) const {
  // h <- h N_s:  N_w N_s = N_{ws} if l grows, else N_{ws} + (v^f - v^-f) N_w
  const WElt& s = weyl_->aff_refl(aff_pos);
  int f = labels_->f_simple(aff_pos);
  Laurent tcoef = Laurent::v(f) - Laurent::v(-f);
  NElt out;
  for (auto& [w, c] : h.c) {
    WElt ws = weyl_->mul(w, s);
    if (weyl_->length(ws) > weyl_->length(w)) {
      out.add(ws, c);
    } else {
      out.add(ws, c);
      out.add(w, c * tcoef);
    }
  }
  h = std::move(out);
}

void Algebra::fold_simple_inv(NElt& h, int aff_pos) const {
  // N_s^{-1} = N_s + (v^-f - v^f)
  const WElt& s = weyl_->aff_refl(aff_pos);
  int f = labels_->f_simple(aff_pos);
  Laurent shift = Laurent::v(-f) - Laurent::v(f);
  NElt out;
  for (auto& [w, c] : h.c) {
    WElt ws = weyl_->mul(w, s);
    if (weyl_->length(ws) > weyl_->length(w)) {
      out.add(ws, c);
      out.add(w, c * shift);
    } else {
      // N_w N_s^{-1} = N_{ws} + (t - t) ... expand N_s^{-1} directly
      out.add(ws, c);
      out.add(w, c * (Laurent::v(f) - Laurent::v(-f)));
      out.add(w, c * shift);
    }
  }
  h = std::move(out);
}

NElt Algebra::mul_basis(const NElt& h, const WElt& w) const {
  ReducedWord rw = weyl_->reduced_word(w);
  NElt out;
  // h * N_omega: right translation of the support (lengths are additive)
  for (auto& [v, c] : h.c) out.add(weyl_->mul(v, rw.omega), c);
  for (int i : rw.word) fold_simple(out, i);
  return out;
}

NElt Algebra::mul(const NElt& h1, const NElt& h2) const {
  NElt out;
  for (auto& [w, c] : h2.c) {
    NElt part = mul_basis(h1, w);
    for (auto& [v, cv] : part.c) out.add(v, cv * c);
  }
  return out;
}

NElt Algebra::mul(const NElt& h1, const NElt& h2, const NElt& h3) const {
  return mul(mul(h1, h2), h3);
}

NElt Algebra::invert_basis(const WElt& w) const {
  // N_w^{-1} = N_{s_k}^{-1} ... N_{s_1}^{-1} N_{omega^{-1}} for w = omega s_1..s_k
  ReducedWord rw = weyl_->reduced_word(w);
  NElt out = one();
  for (auto it = rw.word.rbegin(); it != rw.word.rend(); ++it) fold_simple_inv(out, *it);
  NElt shifted;
  WElt oinv = weyl_->inverse(rw.omega);
  for (auto& [v, c] : out.c) shifted.add(weyl_->mul(v, oinv), c);
  return shifted;
}

const NElt& Algebra::theta(const Vec& x) const {
  auto it = theta_cache_.find(x);
  if (it != theta_cache_.end()) return it->second;
  // decompose x = x+ - x- with both dominant
  Int m = 0;
  for (int i = 0; i < datum_.num_simple(); ++i) {
    Int num = -dot(x, datum_.simple_coroot(i));
    Int den = dot(strict_dominant_, datum_.simple_coroot(i));
    if (num > 0) {
      Int need = (num + den - 1) / den;
      m = std::max(m, need);
    }
  }
  Vec xplus = hecke::add(x, hecke::scale(m, strict_dominant_));
  Vec xminus = hecke::scale(m, strict_dominant_);
  NElt h = basis(weyl_->translation(xplus));
  if (m > 0) h = mul(h, invert_basis(weyl_->translation(xminus)));
  return theta_cache_.emplace(x, std::move(h)).first->second;
}

void bform_add(BForm& dst, const BForm& src) {
  for (auto& [u, au] : src.a) {
    auto& slot = dst.a[u];
    slot = a_add(slot, au);
    if (slot.empty()) dst.a.erase(u);
  }
}

BForm bform_scale(const Laurent& c, const BForm& b) {
  BForm out;
  if (c.is_zero()) return out;
  for (auto& [u, au] : b.a) out.a[u] = a_scale(c, au);
  return out;
}

BForm bform_premul_a(const AElt& a, const BForm& b) {
  BForm out;
  if (a.empty()) return out;
  for (auto& [u, au] : b.a) {
    AElt prod = a_mul(a, au);
    if (!prod.empty()) out.a[u] = prod;
  }
  return out;
}

AElt Algebra::cross_aelt(int simple_pos, const Vec& y) const {
  BForm rhs = cross_relation_rhs(simple_pos, y);
  auto it = rhs.a.find(0);
  return it == rhs.a.end() ? AElt{} : it->second;
}

BForm Algebra::lmul_finite(int simple_pos, const BForm& b) const {
  // N_s (a(theta) N_v) = a^s(theta) N_s N_v - R(s, s.) corrections
  int s = weyl_->simple_refl(simple_pos);
  int f = labels_->f_aff(datum_.simple_coroot(simple_pos), 1);
  Laurent tcoef = Laurent::v(f) - Laurent::v(-f);
  BForm out;
  for (auto& [v, a] : b.a) {
    AElt a_s;
    AElt corr;  // sum_y c_y R(s, s(y))
    for (auto& [y, c] : a) {
      Vec sy = weyl_->act_x(s, y);
      a_s = a_add(a_s, a_mono(sy, c));
      AElt r = cross_aelt(simple_pos, sy);
      if (!r.empty()) corr = a_add(corr, a_scale(c, r));
    }
    int sv = weyl_->mul0(s, v);
    // theta^s part times N_s N_v
    if (!a_s.empty()) {
      auto& slot = out.a[sv];
      slot = a_add(slot, a_s);
      if (slot.empty()) out.a.erase(sv);
      if (weyl_->length0(sv) < weyl_->length0(v)) {
        auto& slot2 = out.a[v];
        slot2 = a_add(slot2, a_scale(tcoef, a_s));
        if (slot2.empty()) out.a.erase(v);
      }
    }
    if (!corr.empty()) {
      auto& slot = out.a[v];
      slot = a_add(slot, a_scale(Laurent(-1), corr));
      if (slot.empty()) out.a.erase(v);
    }
  }
  return out;
}

BForm Algebra::rmul_finite(const BForm& b, int simple_pos) const {
  // (a(theta) N_v) N_s: pure right multiplication on the finite part
  int s = weyl_->simple_refl(simple_pos);
  int f = labels_->f_aff(datum_.simple_coroot(simple_pos), 1);
  Laurent tcoef = Laurent::v(f) - Laurent::v(-f);
  BForm out;
  for (auto& [v, a] : b.a) {
    int vs = weyl_->mul0(v, s);
    auto& slot = out.a[vs];
    slot = a_add(slot, a);
    if (slot.empty()) out.a.erase(vs);
    if (weyl_->length0(vs) < weyl_->length0(v)) {
      auto& slot2 = out.a[v];
      slot2 = a_add(slot2, a_scale(tcoef, a));
      if (slot2.empty()) out.a.erase(v);
    }
  }
  return out;
}

BForm Algebra::rmul_finite_inv(const BForm& b, int simple_pos) const {
  int f = labels_->f_aff(datum_.simple_coroot(simple_pos), 1);
  BForm out = rmul_finite(b, simple_pos);
  bform_add(out, bform_scale(Laurent::v(-f) - Laurent::v(f), b));
  return out;
}

const BForm& Algebra::commute_theta(int u, const Vec& x) const {
  auto key = std::make_pair(u, x);
  auto it = commute_cache_.find(key);
  if (it != commute_cache_.end()) return it->second;
  BForm out;
  if (u == 0) {
    out.a[0] = a_mono(x);
  } else {
    int first = weyl_->word0(u)[0];
    int uprime = weyl_->mul0(weyl_->simple_refl(first), u);
    out = lmul_finite(first, commute_theta(uprime, x));
  }
  return commute_cache_.emplace(key, std::move(out)).first->second;
}

BForm Algebra::rmul_theta(const BForm& b, const Vec& x) const {
  BForm out;
  for (auto& [u, a] : b.a) bform_add(out, bform_premul_a(a, commute_theta(u, x)));
  return out;
}

BForm Algebra::rmul_aff_simple(const BForm& b, int aff_pos) const {
  int fin = weyl_->aff_simple_finite_index(aff_pos);
  if (fin >= 0) {
    // finite node: locate its simple position
    for (int i = 0; i < datum_.num_simple(); ++i)
      if (datum_.simple[i] == fin) return rmul_finite(b, i);
    throw std::logic_error("rmul_aff_simple: finite node not simple");
  }
  // extra node: s_a = t_theta s_theta and N_{s_a} = theta_theta N_{s_theta}^{-1}
  const AffineRoot& a = weyl_->aff_simple(aff_pos);
  Vec theta_coroot = neg(a.coroot);
  int ri = -1;
  for (int j = 0; j < datum_.num_roots(); ++j)
    if (datum_.coroots[j] == theta_coroot) ri = j;
  if (ri < 0) throw std::logic_error("rmul_aff_simple: highest root not found");
  const Vec& theta_root = datum_.roots[ri];
  BForm out = rmul_theta(b, theta_root);
  // N_{s_theta}^{-1}: inverse letters of the word of s_theta, reversed
  IntMat srefl = mat_identity(datum_.rank);
  for (int r = 0; r < datum_.rank; ++r)
    for (int c = 0; c < datum_.rank; ++c) srefl[r][c] -= theta_root[r] * theta_coroot[c];
  int s_theta = weyl_->find_matrix(srefl);
  auto word = weyl_->word0(s_theta);
  for (auto itw = word.rbegin(); itw != word.rend(); ++itw)
    out = rmul_finite_inv(out, *itw);
  return out;
}

BForm Algebra::omega_bform(const WElt& omega) const {
  // decompose omega = pi^k t_z with z central; both factors have dominant
  // translation parts, so their N's are theta's times finite inverses.
  BForm b;
  b.a[0] = a_mono(Vec(datum_.rank, 0));
  if (weyl_->is_identity(omega)) return b;
  auto central = [&](const Vec& x) {
    for (auto& cv : datum_.coroots)
      if (dot(x, cv) != 0) return false;
    return true;
  };
  WElt rest = omega;
  const auto& powers = weyl_->pi_powers();
  if (powers.size() > 1) {
    int found = -1;
    for (size_t k = 0; k < powers.size(); ++k) {
      WElt cand = weyl_->mul(weyl_->inverse(powers[k]), omega);
      if (cand.u == 0 && central(cand.x)) {
        found = (int)k;
        rest = cand;
        break;
      }
    }
    if (found < 0) throw Unsupported("omega outside <pi, Z_X>");
    if (found > 0) {
      const WElt& pi = powers[1];
      if (!datum_.is_dominant(pi.x))
        throw std::logic_error("pi has non-dominant translation part");
      // N_pi = theta_{z_pi} N_{u_pi^{-1}}^{-1}
      for (int rep = 0; rep < found; ++rep) {
        b = rmul_theta(b, pi.x);
        int uinv = weyl_->inv0(pi.u);
        auto word = weyl_->word0(uinv);
        for (auto itw = word.rbegin(); itw != word.rend(); ++itw)
          b = rmul_finite_inv(b, *itw);
      }
    }
  } else {
    if (!(omega.u == 0 && central(omega.x)))
      throw Unsupported("omega decomposition requires a cyclic Omega_f");
  }
  if (!is_zero(rest.x)) b = rmul_theta(b, rest.x);
  return b;
}

const BForm& Algebra::basis_bform(const WElt& w) const {
  auto it = basis_bform_cache_.find(w);
  if (it != basis_bform_cache_.end()) return it->second;
  ReducedWord rw = weyl_->reduced_word(w);
  BForm b = omega_bform(rw.omega);
  for (int i : rw.word) b = rmul_aff_simple(b, i);
  return basis_bform_cache_.emplace(w, std::move(b)).first->second;
}

BForm Algebra::bernstein_left(const NElt& h) const {
  BForm out;
  for (auto& [w, c] : h.c) bform_add(out, bform_scale(c, basis_bform(w)));
  return out;
}

// ---- right-form primitives ----

BForm Algebra::rmulR_finite(const BForm& b, int simple_pos) const {
  // (N_v a(theta)) N_s = (N_v N_s) a^s(theta) + N_v sum_y c_y R(s, y)
  int s = weyl_->simple_refl(simple_pos);
  int f = labels_->f_aff(datum_.simple_coroot(simple_pos), 1);
  Laurent tcoef = Laurent::v(f) - Laurent::v(-f);
  BForm out;
  for (auto& [v, a] : b.a) {
    AElt a_s;
    AElt corr;
    for (auto& [y, c] : a) {
      a_s = a_add(a_s, a_mono(weyl_->act_x(s, y), c));
      AElt r = cross_aelt(simple_pos, y);
      if (!r.empty()) corr = a_add(corr, a_scale(c, r));
    }
    int vs = weyl_->mul0(v, s);
    if (!a_s.empty()) {
      auto& slot = out.a[vs];
      slot = a_add(slot, a_s);
      if (slot.empty()) out.a.erase(vs);
      if (weyl_->length0(vs) < weyl_->length0(v)) {
        auto& slot2 = out.a[v];
        slot2 = a_add(slot2, a_scale(tcoef, a_s));
        if (slot2.empty()) out.a.erase(v);
      }
    }
    if (!corr.empty()) {
      auto& slot = out.a[v];
      slot = a_add(slot, corr);
      if (slot.empty()) out.a.erase(v);
    }
  }
  return out;
}

BForm Algebra::rmulR_finite_inv(const BForm& b, int simple_pos) const {
  int f = labels_->f_aff(datum_.simple_coroot(simple_pos), 1);
  BForm out = rmulR_finite(b, simple_pos);
  bform_add(out, bform_scale(Laurent::v(-f) - Laurent::v(f), b));
  return out;
}

BForm Algebra::rmulR_theta(const BForm& b, const Vec& x) const {
  BForm out;
  AElt mono = a_mono(x);
  for (auto& [u, a] : b.a) out.a[u] = a_mul(a, mono);
  return out;
}

BForm Algebra::rmulR_aff_simple(const BForm& b, int aff_pos) const {
  int fin = weyl_->aff_simple_finite_index(aff_pos);
  if (fin >= 0) {
    for (int i = 0; i < datum_.num_simple(); ++i)
      if (datum_.simple[i] == fin) return rmulR_finite(b, i);
    throw std::logic_error("rmulR_aff_simple: finite node not simple");
  }
  const AffineRoot& a = weyl_->aff_simple(aff_pos);
  Vec theta_coroot = neg(a.coroot);
  int ri = -1;
  for (int j = 0; j < datum_.num_roots(); ++j)
    if (datum_.coroots[j] == theta_coroot) ri = j;
  if (ri < 0) throw std::logic_error("rmulR_aff_simple: highest root not found");
  const Vec& theta_root = datum_.roots[ri];
  BForm out = rmulR_theta(b, theta_root);
  IntMat srefl = mat_identity(datum_.rank);
  for (int r = 0; r < datum_.rank; ++r)
    for (int c = 0; c < datum_.rank; ++c) srefl[r][c] -= theta_root[r] * theta_coroot[c];
  int s_theta = weyl_->find_matrix(srefl);
  auto word = weyl_->word0(s_theta);
  for (auto itw = word.rbegin(); itw != word.rend(); ++itw)
    out = rmulR_finite_inv(out, *itw);
  return out;
}

BForm Algebra::omega_bformR(const WElt& omega) const {
  BForm b;
  b.a[0] = a_mono(Vec(datum_.rank, 0));
  if (weyl_->is_identity(omega)) return b;
  auto central = [&](const Vec& x) {
    for (auto& cv : datum_.coroots)
      if (dot(x, cv) != 0) return false;
    return true;
  };
  WElt rest = omega;
  const auto& powers = weyl_->pi_powers();
  if (powers.size() > 1) {
    int found = -1;
    for (size_t k = 0; k < powers.size(); ++k) {
      WElt cand = weyl_->mul(weyl_->inverse(powers[k]), omega);
      if (cand.u == 0 && central(cand.x)) {
        found = (int)k;
        rest = cand;
        break;
      }
    }
    if (found < 0) throw Unsupported("omega outside <pi, Z_X>");
    if (found > 0) {
      const WElt& pi = powers[1];
      if (!datum_.is_dominant(pi.x))
        throw std::logic_error("pi has non-dominant translation part");
      for (int rep = 0; rep < found; ++rep) {
        // b . N_pi with N_pi = theta_{z_pi} N_{u_pi^{-1}}^{-1}
        b = rmulR_theta(b, pi.x);
        int uinv = weyl_->inv0(pi.u);
        auto word = weyl_->word0(uinv);
        for (auto itw = word.rbegin(); itw != word.rend(); ++itw)
          b = rmulR_finite_inv(b, *itw);
      }
    }
  } else {
    if (!(omega.u == 0 && central(omega.x)))
      throw Unsupported("omega decomposition requires a cyclic Omega_f");
  }
  if (!is_zero(rest.x)) b = rmulR_theta(b, rest.x);
  return b;
}

const BForm& Algebra::basis_bformR(const WElt& w) const {
  auto it = basis_bformR_cache_.find(w);
  if (it != basis_bformR_cache_.end()) return it->second;
  ReducedWord rw = weyl_->reduced_word(w);
  BForm b = omega_bformR(rw.omega);
  for (int i : rw.word) b = rmulR_aff_simple(b, i);
  return basis_bformR_cache_.emplace(w, std::move(b)).first->second;
}

BForm Algebra::bernstein_right(const NElt& h) const {
  BForm out;
  for (auto& [w, c] : h.c) bform_add(out, bform_scale(c, basis_bformR(w)));
  return out;
}

NElt Algebra::nform_left(const BForm& b) const {
  NElt out;
  for (auto& [u, au] : b.a) {
    NElt nu = basis_finite(u);
    for (auto& [x, c] : au) {
      NElt part = mul(theta(x), nu);
      for (auto& [w, cw] : part.c) out.add(w, cw * c);
    }
  }
  return out;
}

NElt Algebra::nform_right(const BForm& b) const {
  NElt out;
  for (auto& [u, au] : b.a) {
    NElt nu = basis_finite(u);
    for (auto& [x, c] : au) {
      NElt part = mul(nu, theta(x));
      for (auto& [w, cw] : part.c) out.add(w, cw * c);
    }
  }
  return out;
}

BForm Algebra::cross_relation_rhs(int simple_pos, const Vec& x) const {
  // Telescoped right-hand side of the Bernstein cross relation; three sign
  // cases for k = <x, alpha v>, and the two R_nr cases for the numerator.
  const Vec& alpha = datum_.simple_root(simple_pos);
  const Vec& alphav = datum_.simple_coroot(simple_pos);
  int ri = datum_.simple[simple_pos];
  Int k = dot(x, alphav);
  BForm out;
  AElt sum;  // telescoped (theta_x - theta_{s x}) / (1 - theta_{-step})
  if (k == 0) return out;
  bool dbl = labels_->doubled(ri);
  Vec step = dbl ? hecke::scale(2, alpha) : alpha;
  Int nsteps = dbl ? k / 2 : k;  // <x, alpha v> is even whenever doubled
  if (dbl && k % 2 != 0)
    throw std::logic_error("cross_relation_rhs: odd pairing on doubled root");
  if (nsteps > 0) {
    Vec cur = x;
    for (Int j = 0; j < nsteps; ++j) {
      sum = a_add(sum, a_mono(cur));
      cur = hecke::sub(cur, step);
    }
  } else {
    Vec sx = hecke::sub(x, hecke::scale(k, alpha));
    Vec cur = sx;
    for (Int j = 0; j < -nsteps; ++j) {
      sum = a_add(sum, a_mono(cur, Laurent(-1)));
      cur = hecke::sub(cur, step);
    }
  }
  int f0 = labels_->f0(ri);
  AElt pref;
  if (!dbl) {
    pref = a_mono(Vec(datum_.rank, 0), Laurent::v(f0) - Laurent::v(-f0));
  } else {
    int f1 = labels_->f1(ri);
    // (q_{av/2}^{1/2} q_{av}^{1/2} - q_{av/2}^{-1/2} q_{av}^{-1/2})
    //   + (q_{av}^{1/2} - q_{av}^{-1/2}) theta_{-alpha}
    pref = a_mono(Vec(datum_.rank, 0), Laurent::v(f1) - Laurent::v(-f1));
    pref = a_add(pref, a_mono(neg(alpha), Laurent::v(f0) - Laurent::v(-f0)));
  }
  out.a[0] = a_mul(pref, sum);  // coefficient of N_e
  return out;
}

Laurent Algebra::trace(const NElt& h) const {
  auto it = h.c.find(weyl_->identity());
  return it == h.c.end() ? Laurent() : it->second;
}

NElt Algebra::star(const NElt& h) const {
  NElt out;
  for (auto& [w, c] : h.c) out.add(weyl_->inverse(w), c);
  return out;
}

Laurent Algebra::inner(const NElt& a, const NElt& b) const {
  Laurent s;
  for (auto& [w, ca] : a.c) {
    auto it = b.c.find(w);
    if (it != b.c.end()) s += ca * it->second;
  }
  return s;
}

double Algebra::seminorm(const NElt& h, int n, double q) const {
  double v = std::sqrt(q);
  double best = 0;
  for (auto& [w, c] : h.c) {
    double nw = weyl_->norm(w).to_double();
    double val = std::abs(c.eval(v)) * std::pow(1.0 + nw, n);
    best = std::max(best, val);
  }
  return best;
}

CentralWitness Algebra::is_central(const NElt& h) const {
  for (int i = 0; i < datum_.num_simple(); ++i) {
    NElt ns = basis_finite(weyl_->simple_refl(i));
    if (!(mul(h, ns) == mul(ns, h)))
      return {false, "N_s" + std::to_string(i + 1)};
  }
  for (int j = 0; j < datum_.rank; ++j) {
    Vec e(datum_.rank, 0);
    e[j] = 1;
    const NElt& th = theta(e);
    if (!(mul(h, th) == mul(th, h)))
      return {false, "theta_e" + std::to_string(j + 1)};
  }
  return {true, ""};
}

Rational Algebra::support_norm(const NElt& h) const {
  Rational best(0);
  for (auto& [w, c] : h.c) {
    Rational nw = weyl_->norm(w);
    if (best < nw) best = nw;
  }
  return best;
}

AElt Algebra::n_alpha(int simple_pos) const {
  const Vec& alpha = datum_.simple_root(simple_pos);
  int ri = datum_.simple[simple_pos];
  int f0 = labels_->f0(ri);
  if (!labels_->doubled(ri)) {
    // rewritten convention: n_alpha = q_{av} - theta_{-alpha}
    AElt n = a_mono(Vec(datum_.rank, 0), Laurent::v(2 * f0));
    n = a_add(n, a_mono(neg(alpha), Laurent(-1)));
    return n;
  }
  int f1 = labels_->f1(ri);
  // alpha1 = 2 alpha in R_1: labels q_{alpha1 v} = v^{2(f1-f0)}, q_{2 alpha1 v} = v^{2 f0};
  // n = (q_{a1v}^{1/2} + theta_{-alpha})(q_{a1v}^{1/2} q_{2a1v} - theta_{-alpha})
  AElt left = a_mono(Vec(datum_.rank, 0), Laurent::v(f1 - f0));
  left = a_add(left, a_mono(neg(alpha)));
  AElt right = a_mono(Vec(datum_.rank, 0), Laurent::v(f1 + f0));
  right = a_add(right, a_mono(neg(alpha), Laurent(-1)));
  return a_mul(left, right);
}

BForm Algebra::intertwiner(int simple_pos) const {
  // In the N-basis normalization, eq-(9)-compatible form is
  //   iota_s = (q_{a1v} q_{2a1v})^{1/2} (1 - theta_{-alpha1}) N_s
  //          + (1 - q_{a1v} q_{2a1v}) + q_{a1v}^{1/2}(1 - q_{2a1v}) theta_{-alpha1/2},
  // alpha1 in R_1 over the direction of the simple root.  The A-part is
  // forced by the cross relation; the N_s-coefficient makes
  // iota_s^2 = n_alpha^s n_alpha hold, so (iota_s^0)^2 = 1.
  const Vec& alpha = datum_.simple_root(simple_pos);
  int ri = datum_.simple[simple_pos];
  int f0 = labels_->f0(ri);
  BForm out;
  int s_index = weyl_->simple_refl(simple_pos);
  Vec zero(datum_.rank, 0);
  if (!labels_->doubled(ri)) {
    // q_{2 alpha1 v} = 1: iota_s = q^{1/2} (1 - theta_{-alpha}) N_s + (1 - q)
    Laurent qh = Laurent::v(f0);
    AElt lead = a_mono(zero, qh);
    lead = a_add(lead, a_mono(neg(alpha), -qh));
    out.a[s_index] = lead;
    out.a[0] = a_mono(zero, Laurent(1) - Laurent::v(2 * f0));
    return out;
  }
  int f1 = labels_->f1(ri);
  // alpha1 = 2 alpha: q_{a1v} = v^{2(f1-f0)}, q_{2a1v} = v^{2f0};
  // (q_{a1v} q_{2a1v})^{1/2} = v^{f1}
  Laurent qh = Laurent::v(f1);
  AElt lead = a_mono(zero, qh);
  lead = a_add(lead, a_mono(hecke::scale(-2, alpha), -qh));
  out.a[s_index] = lead;
  AElt tail = a_mono(zero, Laurent(1) - Laurent::v(2 * f1));
  // q_{a1v}^{1/2} (1 - q_{2a1v}) theta_{-alpha}
  tail = a_add(tail, a_mono(neg(alpha), Laurent::v(f1 - f0) * (Laurent(1) - Laurent::v(2 * f0))));
  out.a[0] = tail;
  return out;
}

AElt Algebra::intertwiner_squared(int simple_pos) const {
  // iota_s^2 = n_alpha^s n_alpha in A
  AElt n = n_alpha(simple_pos);
  AElt ns;
  int s = weyl_->simple_refl(simple_pos);
  for (auto& [x, c] : n) ns[weyl_->act_x(s, x)] = c;
  return a_mul(ns, n);
}

std::vector<std::pair<std::string, std::string>> Algebra::to_pairs(const NElt& h) const {
  std::vector<std::pair<WElt, Laurent>> items(h.c.begin(), h.c.end());
  std::vector<std::pair<Rational, size_t>> keyed;
  for (size_t i = 0; i < items.size(); ++i) keyed.push_back({weyl_->norm(items[i].first), i});
  std::sort(keyed.begin(), keyed.end(), [&](auto& a, auto& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return weyl_->word_string(items[a.second].first) <
           weyl_->word_string(items[b.second].first);
  });
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& [nrm, i] : keyed)
    out.push_back({weyl_->word_string(items[i].first), items[i].second.str()});
  return out;
}

NElt Algebra::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) const {
  NElt h;
  for (auto& [word, poly] : pairs) h.add(weyl_->parse_word(word), Laurent::parse(poly));
  return h;
}

}  // namespace hecke
