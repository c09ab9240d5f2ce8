#include <algorithm>

#include "coho3/groups.hpp"

namespace coho3 {

using Element = FiniteGroup::Element;

namespace {

constexpr Element kUnset = static_cast<Element>(-1);

// Extends s_t -> img_t to a map on <s_1..s_m> along right multiplication.
// Fails when two paths disagree or two elements collide.
bool extend(const FiniteGroup& a, const FiniteGroup& b, std::span<const Element> src, std::span<const Element> img,
            std::vector<Element>& phi) {
  std::fill(phi.begin(), phi.end(), kUnset);
  std::vector<char> used(b.order(), 0);
  std::vector<Element> queue{0};
  phi[0] = 0;
  used[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Element x = queue[q];
    for (std::size_t t = 0; t < src.size(); ++t) {
      const Element y = a.mul(x, src[t]);
      const Element fy = b.mul(phi[x], img[t]);
      if (phi[y] == kUnset) {
        if (used[fy]) return false;
        used[fy] = 1;
        phi[y] = fy;
        queue.push_back(y);
      } else if (phi[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

std::string first_difference(const GroupFingerprint& x, const GroupFingerprint& y) {
  if (x.order != y.order) return "order";
  if (x.exponent != y.exponent) return "exponent";
  if (x.center != y.center) return "center";
  if (x.abelianization != y.abelianization) return "abelianization";
  if (x.class_sizes != y.class_sizes) return "class sizes";
  if (x.element_order_counts != y.element_order_counts) return "element orders";
  return "";
}

}  // namespace

IsoResult isomorphic(const PcGroup& pa, const PcGroup& pb) {
  const FiniteGroup& a = pa.group();
  const FiniteGroup& b = pb.group();
  if (a.order() > 729 || b.order() > 729) throw TooLarge("isomorphism testing is limited to order 3^6");

  IsoResult res;
  const GroupFingerprint fa = fingerprint(a), fb = fingerprint(b);
  if (!(fa == fb)) {
    res.reason = first_difference(fa, fb);
    return res;
  }

  // Minimal generating set of a: pc generators independent modulo Frattini.
  std::vector<Element> phi_a = a.order() > 1 ? a.frattini_subgroup() : std::vector<Element>{0};
  std::vector<Element> src;
  std::size_t reach = phi_a.size();
  for (Element s : a.generators()) {
    std::vector<Element> trial = phi_a;
    trial.insert(trial.end(), src.begin(), src.end());
    trial.push_back(s);
    const std::size_t sz = a.closure(trial).size();
    if (sz > reach) {
      src.push_back(s);
      reach = sz;
    }
  }

  std::vector<char> in_phi_b(b.order(), 0);
  if (b.order() > 1)
    for (Element x : b.frattini_subgroup()) in_phi_b[x] = 1;

  std::vector<std::vector<Element>> candidates(src.size());
  for (std::size_t t = 0; t < src.size(); ++t)
    for (Element y = 0; y < b.order(); ++y)
      if (!in_phi_b[y] && b.element_order(y) == a.element_order(src[t]) &&
          b.conjugacy_classes()[b.class_of(y)].size() == a.conjugacy_classes()[a.class_of(src[t])].size())
        candidates[t].push_back(y);

  std::vector<Element> img(src.size());
  std::vector<Element> phi(a.order());
  bool found = false;
  auto search = [&](auto&& self, std::size_t t) -> void {
    if (found) return;
    if (t == src.size()) {
      found = true;
      return;
    }
    for (Element y : candidates[t]) {
      img[t] = y;
      if (!extend(a, b, std::span(src).first(t + 1), std::span(img).first(t + 1), phi)) continue;
      self(self, t + 1);
      if (found) return;
    }
  };
  search(search, 0);
  if (!found) {
    res.reason = "no generator images satisfy the relations";
    return res;
  }
  extend(a, b, src, img, phi);
  res.isomorphic = true;
  for (std::size_t i = 0; i < pa.presentation().size(); ++i) res.generator_images.push_back(pb.exponents(phi[pa.generator(i)]));
  return res;
}

bool verify_witness(const PcGroup& pa, const PcGroup& pb, const std::vector<Exponents>& images) {
  const PcPresentation& p = pa.presentation();
  const FiniteGroup& b = pb.group();
  if (images.size() != p.size() || pa.order() != pb.order()) return false;
  std::vector<Element> img;
  for (const auto& e : images) img.push_back(pb.element(e));
  auto eval = [&](const Exponents& e) {
    Element r = 0;
    for (std::size_t l = 0; l < e.size(); ++l) r = b.mul(r, b.power(img[l], e[l]));
    return r;
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (b.power(img[i], p.generators()[i].order) != eval(p.power(i))) return false;
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (b.commutator(img[j], img[i]) != eval(p.commutator(j, i))) return false;
  }
  return b.closure(img).size() == b.order();
}

}  // namespace coho3
