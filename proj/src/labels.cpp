#include "hecke/labels.hpp"

#include <numeric>
#include <set>

#include "hecke/errors.hpp"

namespace hecke {

LabelFunction::LabelFunction(const WeylGroup& w, const LabelSpec& spec) : weyl_(&w) {
  const RootDatum& d = w.datum();
  int nroots = d.num_roots();

  // W0-orbits on roots (equivalently on coroots)
  orbit_of_root_.assign(nroots, -1);
  int norb = 0;
  for (int i = 0; i < nroots; ++i) {
    if (orbit_of_root_[i] >= 0) continue;
    std::vector<int> stack = {i};
    orbit_of_root_[i] = norb;
    while (!stack.empty()) {
      int j = stack.back();
      stack.pop_back();
      for (int s = 0; s < d.num_simple(); ++s) {
        Vec im = w.act_x(w.simple_refl(s), d.roots[j]);
        int k = d.root_index(im);
        if (k >= 0 && orbit_of_root_[k] < 0) {
          orbit_of_root_[k] = norb;
          stack.push_back(k);
        }
      }
    }
    ++norb;
  }

  modulus_of_root_.assign(nroots, 1);
  doubled_.assign(nroots, false);
  for (int i = 0; i < nroots; ++i) {
    Int g = 0;
    for (Int c : d.coroots[i]) g = std::gcd(g, c < 0 ? -c : c);
    modulus_of_root_[i] = (g % 2 == 0) ? 2 : 1;
    doubled_[i] = (modulus_of_root_[i] == 2);
  }

  // classes of affine simples: key = (orbit of coroot, level mod modulus)
  auto key_of = [&](const AffineRoot& a) {
    int ri = -1;
    for (int j = 0; j < nroots; ++j)
      if (d.coroots[j] == a.coroot) ri = j;
    if (ri < 0) throw std::logic_error("affine simple coroot not in datum");
    int m = modulus_of_root_[ri];
    int res = (int)(((a.level % m) + m) % m);
    return std::make_pair(orbit_of_root_[ri], res);
  };
  int nsimp = w.num_aff_simple();
  class_of_simple_.assign(nsimp, -1);
  for (int i = 0; i < nsimp; ++i) {
    auto key = key_of(w.aff_simple(i));
    auto it = key_to_class_.find(key);
    if (it == key_to_class_.end()) {
      int c = (int)class_rep_.size();
      key_to_class_[key] = c;
      class_rep_.push_back(i);
      class_of_simple_[i] = c;
    } else {
      class_of_simple_[i] = it->second;
    }
  }

  class_fs_.assign(class_rep_.size(), spec.uniform);
  if (spec.uniform <= 0) throw ValidationError("labels must be positive");
  if (!spec.per_class.empty()) {
    for (auto& [name, f] : spec.per_class) {
      if (f <= 0) throw ValidationError("labels must be positive");
      bool found = false;
      for (size_t c = 0; c < class_rep_.size(); ++c)
        if (class_name((int)c) == name) {
          class_fs_[c] = f;
          found = true;
        }
      if (!found && name != "s")
        throw ValidationError("unknown label class '" + name + "'");
      if (name == "s")  // shorthand: uniform value under key "s"
        class_fs_.assign(class_rep_.size(), f);
    }
  }
}

int LabelFunction::f_aff(const Vec& coroot, Int level) const {
  const RootDatum& d = weyl_->datum();
  int ri = -1;
  for (int j = 0; j < d.num_roots(); ++j)
    if (d.coroots[j] == coroot) ri = j;
  if (ri < 0) throw std::domain_error("f_aff: unknown coroot");
  int m = modulus_of_root_[ri];
  // q_a = q(s_b) for the class of simples b with b+1 in the orbit-level of a,
  // i.e. the class keyed by residue (level-1) mod m.
  int res = (int)((((level - 1) % m) + m) % m);
  auto it = key_to_class_.find({orbit_of_root_[ri], res});
  if (it == key_to_class_.end())
    throw std::domain_error("f_aff: no label class for this orbit/parity");
  return class_fs_[it->second];
}

int LabelFunction::f0(int root_index) const {
  const RootDatum& d = weyl_->datum();
  return f_aff(d.coroots[root_index], 0);
}

int LabelFunction::f1(int root_index) const {
  const RootDatum& d = weyl_->datum();
  return f_aff(d.coroots[root_index], 1);
}

Laurent LabelFunction::q_half(const WElt& w) const {
  ReducedWord rw = weyl_->reduced_word(w);
  int e = 0;
  for (int i : rw.word) e += f_simple(i);
  return Laurent::v(e);
}

Laurent LabelFunction::q_w0_product(int u) const {
  // q(u) = prod over R_nr,+ cap u^{-1} R_nr,- of q_{alpha v}, where the label
  // of a doubled root 2a is q_{a v / 2} with exponent f1 - f0.
  const RootDatum& d = weyl_->datum();
  int e = 0;
  int uinv = weyl_->inv0(u);
  for (int i : d.positive) {
    Vec im = weyl_->act_x(u, d.roots[i]);
    bool flips = !d.is_positive_root_vec(im);
    if (flips) e += 2 * f0(i);
    if (doubled_[i]) {
      // the doubled root 2 alpha flips with alpha; its label exponent
      if (flips) e += 2 * (f1(i) - f0(i));
    }
  }
  (void)uinv;
  return Laurent::v(e);
}

}  // namespace hecke
