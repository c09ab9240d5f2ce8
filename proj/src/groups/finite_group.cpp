#include <algorithm>
#include <numeric>

#include "coho3/groups.hpp"

namespace coho3 {

using Element = FiniteGroup::Element;

FiniteGroup::FiniteGroup(std::size_t order, std::vector<std::uint16_t> table, std::vector<Element> generators)
    : order_(order), table_(std::move(table)), generators_(std::move(generators)) {
  if (order_ == 0 || order_ > 65535 || table_.size() != order_ * order_)
    throw BadParameter("malformed multiplication table");
  if (generators_.empty() && order_ > 1)
    for (Element x = 1; x < order_; ++x) generators_.push_back(x);

  inverse_.assign(order_, 0);
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b)
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }

  element_order_.assign(order_, 1);
  for (Element a = 1; a < order_; ++a) {
    Element x = a;
    int k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    element_order_[a] = k;
  }

  class_of_.assign(order_, static_cast<std::size_t>(-1));
  for (Element x = 0; x < order_; ++x) {
    if (class_of_[x] != static_cast<std::size_t>(-1)) continue;
    const std::size_t id = classes_.size();
    std::vector<Element> cls{x};
    class_of_[x] = id;
    for (std::size_t q = 0; q < cls.size(); ++q)
      for (Element h : generators_) {
        Element y = conjugate(cls[q], h);
        if (class_of_[y] == static_cast<std::size_t>(-1)) {
          class_of_[y] = id;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

Element FiniteGroup::power(Element a, long k) const {
  const long m = element_order_[a];
  k %= m;
  if (k < 0) k += m;
  Element r = 0;
  for (long t = 0; t < k; ++t) r = mul(r, a);
  return r;
}

std::vector<Element> FiniteGroup::closure(std::span<const Element> gens) const {
  std::vector<char> in(order_, 0);
  std::vector<Element> out{0};
  in[0] = 1;
  for (std::size_t q = 0; q < out.size(); ++q)
    for (Element g : gens) {
      Element y = mul(out[q], g);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> FiniteGroup::normal_closure(std::span<const Element> gens) const {
  std::vector<Element> list(gens.begin(), gens.end());
  while (true) {
    std::vector<Element> sub = closure(list);
    std::vector<char> in(order_, 0);
    for (Element x : sub) in[x] = 1;
    bool grew = false;
    const std::size_t n = list.size();
    for (std::size_t i = 0; i < n; ++i)
      for (Element h : generators_) {
        Element y = conjugate(list[i], h);
        if (!in[y]) {
          in[y] = 1;
          list.push_back(y);
          grew = true;
        }
      }
    if (!grew) return sub;
  }
}

bool FiniteGroup::is_normal(std::span<const Element> subgroup) const {
  std::vector<char> in(order_, 0);
  for (Element x : subgroup) in[x] = 1;
  for (Element x : subgroup)
    for (Element h : generators_)
      if (!in[conjugate(x, h)]) return false;
  return true;
}

bool FiniteGroup::is_abelian() const {
  for (Element a : generators_)
    for (Element b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<Element> FiniteGroup::center() const {
  std::vector<Element> out;
  for (Element x = 0; x < order_; ++x) {
    bool central = true;
    for (Element h : generators_)
      if (mul(x, h) != mul(h, x)) {
        central = false;
        break;
      }
    if (central) out.push_back(x);
  }
  return out;
}

std::vector<Element> FiniteGroup::derived_subgroup() const {
  std::vector<Element> comms;
  for (Element a : generators_)
    for (Element b : generators_) {
      Element c = commutator(a, b);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(comms);
}

std::vector<Element> FiniteGroup::frattini_subgroup() const {
  const int p = prime();
  std::vector<char> seen(order_, 0);
  std::vector<Element> gens;
  for (Element a : generators_)
    for (Element b : generators_) {
      Element c = commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  for (Element x = 0; x < order_; ++x) {
    Element y = power(x, p);
    if (!seen[y]) {
      seen[y] = 1;
      gens.push_back(y);
    }
  }
  return normal_closure(gens);
}

int FiniteGroup::exponent() const {
  long e = 1;
  for (int o : element_order_) e = std::lcm(e, static_cast<long>(o));
  return static_cast<int>(e);
}

int FiniteGroup::prime() const {
  if (order_ == 1) return 1;
  std::size_t n = order_;
  std::size_t p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  if (n != 1) throw BadParameter("group order is not a prime power");
  return static_cast<int>(p);
}

std::vector<std::size_t> FiniteGroup::class_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& c : classes_) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroup FiniteGroup::subgroup(std::span<const Element> elements) const {
  const std::size_t m = elements.size();
  std::vector<std::int64_t> pos(order_, -1);
  for (std::size_t i = 0; i < m; ++i) pos[elements[i]] = static_cast<std::int64_t>(i);
  if (m == 0 || elements[0] != 0) throw BadParameter("subgroup element list must start with the identity");
  std::vector<std::uint16_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::int64_t c = pos[mul(elements[a], elements[b])];
      if (c < 0) throw BadParameter("element list is not closed under multiplication");
      table[a * m + b] = static_cast<std::uint16_t>(c);
    }
  // Greedy generating set.
  std::vector<Element> gens;
  std::vector<char> covered(order_, 0);
  covered[0] = 1;
  for (std::size_t i = 1; i < m; ++i) {
    if (covered[elements[i]]) continue;
    gens.push_back(elements[i]);
    for (Element x : closure(gens)) covered[x] = 1;
  }
  std::vector<Element> local;
  for (Element g : gens) local.push_back(static_cast<Element>(pos[g]));
  return FiniteGroup(m, std::move(table), std::move(local));
}

FiniteGroup FiniteGroup::quotient(std::span<const Element> normal, std::vector<Element>* coset_of) const {
  std::vector<Element> coset(order_, static_cast<Element>(-1));
  std::vector<Element> reps;
  for (Element x = 0; x < order_; ++x) {
    if (coset[x] != static_cast<Element>(-1)) continue;
    const Element id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element n : normal) coset[mul(x, n)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<std::uint16_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = static_cast<std::uint16_t>(coset[mul(reps[a], reps[b])]);
  std::vector<Element> gens;
  for (Element g : generators_) {
    Element c = coset[g];
    if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  if (coset_of) *coset_of = coset;
  return FiniteGroup(m, std::move(table), std::move(gens));
}

IntVector FiniteGroup::abelian_invariants(std::span<const Element> subgroup) const {
  if (subgroup.size() <= 1) return {};
  const int p = prime();
  // c[k] = #{x : x^{p^k} = 1}; the number of cyclic factors of order >= p^k
  // is log_p(c[k] / c[k-1]).
  std::vector<std::size_t> c{1};
  long pk = 1;
  while (c.back() < subgroup.size()) {
    pk *= p;
    std::size_t cnt = 0;
    for (Element x : subgroup)
      if (pk % element_order_[x] == 0) ++cnt;
    c.push_back(cnt);
  }
  auto logp = [p](std::size_t v) {
    int r = 0;
    while (v > 1) {
      v /= static_cast<std::size_t>(p);
      ++r;
    }
    return r;
  };
  std::vector<int> at_least;  // at_least[k-1] = # factors of order >= p^k
  for (std::size_t k = 1; k < c.size(); ++k) at_least.push_back(logp(c[k] / c[k - 1]));
  at_least.push_back(0);
  IntVector out;
  Integer q = 1;
  for (std::size_t k = 0; k + 1 < at_least.size(); ++k) {
    q *= p;
    for (int t = 0; t < at_least[k] - at_least[k + 1]; ++t) out.push_back(q);
  }
  return out;
}

}  // namespace coho3
