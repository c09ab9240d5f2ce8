#include <algorithm>

#include "coho3/groups.hpp"

namespace coho3 {

using Element = FiniteGroup::Element;

namespace {

// Multiplication table from the collector, checked for consistency: the
// table is built along a spanning tree of the Cayley graph and then every
// remaining Cayley edge must agree with it.
FiniteGroup materialize(const PcPresentation& p) {
  if (p.order() > kEnumerationBound)
    throw TooLarge("group of order " + std::to_string(p.order()) + " exceeds the enumeration bound");
  Collector c(p);
  const std::size_t n = c.order(), k = p.size();

  std::vector<std::vector<Element>> right(k, std::vector<Element>(n));
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<char> hit(n, 0);
    for (Element x = 0; x < n; ++x) {
      Element y = c.right_mul(x, j);
      if (hit[y]) throw InconsistentPresentation("right multiplication by " + p.generators()[j].name +
                                                 " is not a permutation");
      hit[y] = 1;
      right[j][x] = y;
    }
  }

  std::vector<Element> order{0};
  std::vector<Element> parent(n, 0);
  std::vector<std::size_t> via(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t j = 0; j < k; ++j) {
      Element y = right[j][order[q]];
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = order[q];
        via[y] = j;
        order.push_back(y);
      }
    }
  if (order.size() != n) throw InconsistentPresentation("generators do not reach every normal form");

  std::vector<std::uint16_t> table(n * n);
  for (Element x = 0; x < n; ++x) table[x * n] = static_cast<std::uint16_t>(x);
  for (std::size_t q = 1; q < n; ++q) {
    const Element y = order[q];
    const auto& r = right[via[y]];
    for (Element x = 0; x < n; ++x) table[x * n + y] = static_cast<std::uint16_t>(r[table[x * n + parent[y]]]);
  }
  for (Element y = 0; y < n; ++y)
    for (std::size_t j = 0; j < k; ++j) {
      const Element yj = right[j][y];
      for (Element x = 0; x < n; ++x)
        if (table[x * n + yj] != right[j][table[x * n + y]])
          throw InconsistentPresentation("relations of " + p.name() + " are inconsistent");
    }

  std::vector<Element> gens;
  for (std::size_t j = 0; j < k; ++j) gens.push_back(c.index(p.generator(j)));
  return FiniteGroup(n, std::move(table), std::move(gens));
}

}  // namespace

PcGroup::PcGroup(PcPresentation p) : p_(std::move(p)), group_(materialize(p_)) {
  const std::size_t k = p_.size();
  stride_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) stride_[i - 1] = stride_[i] * static_cast<std::size_t>(p_.generators()[i].order);
}

Element PcGroup::element(const Exponents& e) const {
  p_.validate_exponents(e);
  std::size_t x = 0;
  for (std::size_t i = 0; i < e.size(); ++i) x += static_cast<std::size_t>(e[i]) * stride_[i];
  return static_cast<Element>(x);
}

Exponents PcGroup::exponents(Element x) const {
  Exponents e(p_.size());
  std::size_t r = x;
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<int>(r / stride_[i]);
    r %= stride_[i];
  }
  return e;
}

Element PcGroup::evaluate(const Word& w) const {
  Element r = 0;
  for (const auto& f : w) {
    if (f.gen >= p_.size()) throw BadParameter("word uses an unknown generator");
    r = group_.mul(r, group_.power(generator(f.gen), f.power));
  }
  return r;
}

std::string PcGroup::format(Element x) const {
  Exponents e = exponents(x);
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += p_.generators()[i].name;
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

PcConversion to_pc_presentation(const FiniteGroup& g, std::string name) {
  const std::size_t n = g.order();
  const int p = g.prime();

  // Grow a normal series one central step of order p at a time.
  std::vector<int> level(n, -1);
  level[0] = 0;
  std::vector<Element> members{0};
  std::vector<Element> seq;
  while (members.size() < n) {
    Element pick = 0;
    for (Element x = 1; x < n && pick == 0; ++x) {
      if (level[x] >= 0 || level[g.power(x, p)] < 0) continue;
      bool central = true;
      for (Element s : g.generators())
        if (level[g.commutator(x, s)] < 0) {
          central = false;
          break;
        }
      if (central) pick = x;
    }
    if (pick == 0) throw BadParameter("no central series step found");
    seq.push_back(pick);
    const int lvl = static_cast<int>(seq.size());
    const std::size_t before = members.size();
    Element xt = 0;
    for (int t = 1; t < p; ++t) {
      xt = g.mul(xt, pick);
      for (std::size_t m = 0; m < before; ++m) {
        Element y = g.mul(xt, members[m]);
        level[y] = lvl;
        members.push_back(y);
      }
    }
  }

  const std::size_t k = seq.size();
  std::vector<Element> gens(seq.rbegin(), seq.rend());
  std::vector<Element> gen_inv;
  for (Element x : gens) gen_inv.push_back(g.inv(x));

  auto normal_form = [&](Element x) {
    Exponents e(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const int bound = static_cast<int>(k - i - 1);
      for (int t = 0; t < p; ++t) {
        if (level[x] <= bound) {
          e[i] = t;
          break;
        }
        x = g.mul(gen_inv[i], x);
      }
    }
    return e;
  };

  std::vector<PcPresentation::Generator> pg;
  for (std::size_t i = 0; i < k; ++i) pg.push_back({"g" + std::to_string(i + 1), p});
  PcConversion out{PcPresentation(std::move(name), std::move(pg)), {}};
  for (std::size_t i = 0; i < k; ++i) {
    out.presentation.set_power(i, normal_form(g.power(gens[i], p)));
    for (std::size_t j = i + 1; j < k; ++j) out.presentation.set_commutator(j, i, normal_form(g.commutator(gens[j], gens[i])));
  }
  out.normal_forms.reserve(n);
  for (Element x = 0; x < n; ++x) out.normal_forms.push_back(normal_form(x));
  return out;
}

FgAbGroup center(const PcGroup& g) {
  return FgAbGroup::from_cyclic_orders(g.group().abelian_invariants(g.group().center()));
}

FgAbGroup abelianization(const PcGroup& g) { return cokernel(g.presentation().abelianization_relations()); }

std::vector<Element> derived_subgroup(const PcGroup& g) { return g.group().derived_subgroup(); }

int exponent(const PcGroup& g) { return g.group().exponent(); }

std::vector<std::size_t> conjugacy_class_sizes(const PcGroup& g) { return g.group().class_sizes(); }

// --- builtins ---

Family parse_family(std::string_view name) {
  if (name == "G") return Family::G;
  if (name == "G'" || name == "Gprime") return Family::GPrime;
  if (name == "E") return Family::E;
  if (name == "M") return Family::M;
  if (name == "N") return Family::N;
  if (name == "P") return Family::P;
  if (name == "wreath") return Family::Wreath;
  throw BadParameter("unknown group family '" + std::string(name) + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::G: return "G";
    case Family::GPrime: return "G'";
    case Family::E: return "E";
    case Family::M: return "M";
    case Family::N: return "N";
    case Family::P: return "P";
    case Family::Wreath: return "wreath";
  }
  return "?";
}

namespace {

int pow3(int e) {
  int r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::string with_params(const std::string& base, int n, int eps) {
  return base + "(" + std::to_string(n) + "," + std::to_string(eps) + ")";
}

}  // namespace

PcPresentation make_group(Family family, int n, int eps) {
  const bool uses_n = family == Family::G || family == Family::M || family == Family::N || family == Family::P;
  if (uses_n && (n < 4 || n > 19)) throw BadParameter("n must lie in 4..19");
  if ((family == Family::G || family == Family::P) && eps != 1 && eps != -1)
    throw BadParameter("eps must be +1 or -1");
  if (family == Family::GPrime && n != 4) throw BadParameter("G' is only defined for n = 4");

  switch (family) {
    case Family::G: {
      // A^3 = B^{3^{n-2}} = C^3 = [B,C] = 1, [B,A] = C, [C,A] = B^{eps 3^{n-3}}.
      const int ob = pow3(n - 2), e = eps > 0 ? pow3(n - 3) : ob - pow3(n - 3);
      PcPresentation p(with_params("G", n, eps), {{"A", 3}, {"B", ob}, {"C", 3}});
      p.set_commutator(1, 0, {0, 0, 1});
      p.set_commutator(2, 0, {0, e, 0});
      return p;
    }
    case Family::GPrime: {
      // [B,A] = C, [C,A] = B^{-3} = A^3.
      PcPresentation p("G'(4)", {{"A", 3}, {"B", 9}, {"C", 3}});
      p.set_power(0, {0, 6, 0});
      p.set_commutator(1, 0, {0, 0, 1});
      p.set_commutator(2, 0, {0, 6, 0});
      return p;
    }
    case Family::E: {
      PcPresentation p("E", {{"A", 3}, {"B", 3}, {"C", 3}});
      p.set_commutator(1, 0, {0, 0, 1});
      return p;
    }
    case Family::M:
      return PcPresentation(with_params("M", n, eps), {{"B", pow3(n - 2)}, {"C", 3}});
    case Family::N:
      return PcPresentation(with_params("N", n, eps), {{"B3", pow3(n - 3)}, {"C", 3}});
    case Family::P: {
      // <A, B^3, C> inside G(n,eps): [C,A] = (B^3)^{eps 3^{n-4}}, B^3 central.
      const int od = pow3(n - 3), e = eps > 0 ? pow3(n - 4) : od - pow3(n - 4);
      PcPresentation p(with_params("P", n, eps), {{"A", 3}, {"B3", od}, {"C", 3}});
      p.set_commutator(2, 0, {0, e, 0});
      return p;
    }
    case Family::Wreath: {
      // C3 wr C3: A permutes the base (C3)^3; U, V, W a basis adapted to the
      // augmentation filtration.
      PcPresentation p("C3wrC3", {{"A", 3}, {"U", 3}, {"V", 3}, {"W", 3}});
      p.set_commutator(1, 0, {0, 0, 1, 0});
      p.set_commutator(2, 0, {0, 0, 0, 1});
      return p;
    }
  }
  throw BadParameter("unknown family");
}

// --- derived constructions ---

PcPresentation quotient_presentation(const PcGroup& g, std::span<const Element> normal_gens, std::string name) {
  const FiniteGroup& G = g.group();
  std::vector<Element> normal = G.normal_closure(normal_gens);
  FiniteGroup q = G.quotient(normal);
  if (q.order() == 1) return PcPresentation(std::move(name), {});
  return to_pc_presentation(q, std::move(name)).presentation;
}

std::vector<MaximalSubgroup> maximal_subgroups(const PcGroup& g) {
  const FiniteGroup& G = g.group();
  if (G.order() > 729) throw TooLarge("maximal subgroups are enumerated only up to order 3^6");
  if (G.order() == 1) return {};
  const int p = G.prime();
  std::vector<Element> phi = G.frattini_subgroup();
  std::vector<Element> coset_of;
  FiniteGroup v = G.quotient(phi, &coset_of);

  // Basis of the Frattini quotient from the pc generators.
  std::vector<Element> basis;
  for (Element s : G.generators()) {
    std::vector<Element> trial = basis;
    trial.push_back(coset_of[s]);
    if (v.closure(trial).size() > v.closure(basis).size()) basis.push_back(coset_of[s]);
  }
  const std::size_t d = basis.size();
  std::vector<std::vector<int>> coords(v.order());
  std::vector<int> c(d, 0);
  for (std::size_t code = 0; code < v.order(); ++code) {
    std::size_t r = code;
    Element x = 0;
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = static_cast<int>(r % p);
      r /= p;
      x = v.mul(x, v.power(basis[i], c[i]));
    }
    coords[x] = c;
  }

  std::vector<MaximalSubgroup> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= p;
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<int> f(d);
    std::size_t r = code;
    for (std::size_t i = 0; i < d; ++i) {
      f[i] = static_cast<int>(r % p);
      r /= p;
    }
    // Keep one functional per line: first nonzero coordinate equal to 1.
    auto first = std::find_if(f.begin(), f.end(), [](int a) { return a != 0; });
    if (*first != 1) continue;
    MaximalSubgroup m;
    for (Element x = 0; x < G.order(); ++x) {
      const auto& cx = coords[coset_of[x]];
      long s = 0;
      for (std::size_t i = 0; i < d; ++i) s += static_cast<long>(f[i]) * cx[i];
      if (s % p == 0) m.elements.push_back(x);
    }
    out.push_back(std::move(m));
  }

  const auto a = g.presentation().find("A"), b = g.presentation().find("B");
  const char* names[] = {"B", "A", "AB", "AB^2"};
  std::vector<Element> probes;
  if (a && b) {
    const Element ea = g.generator(*a), eb = g.generator(*b);
    probes = {eb, ea, G.mul(ea, eb), G.mul(ea, G.mul(eb, eb))};
  }
  for (auto& m : out) {
    for (std::size_t t = 0; t < probes.size(); ++t)
      if (std::binary_search(m.elements.begin(), m.elements.end(), probes[t])) {
        m.contains = names[t];
        break;
      }
    FiniteGroup sub = G.subgroup(m.elements);
    m.abelian = sub.is_abelian();
    if (m.abelian) m.abelian_invariants = G.abelian_invariants(m.elements);
    std::string label = m.contains.empty() ? std::to_string(&m - out.data() + 1) : m.contains;
    m.presentation = to_pc_presentation(sub, g.presentation().name() + "_max_" + label).presentation;
  }
  if (!probes.empty()) {
    auto rank = [&](const MaximalSubgroup& m) {
      for (std::size_t t = 0; t < 4; ++t)
        if (m.contains == names[t]) return t;
      return std::size_t{4};
    };
    std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return rank(x) < rank(y); });
  }
  return out;
}

GroupFingerprint fingerprint(const FiniteGroup& g) {
  GroupFingerprint f;
  f.order = g.order();
  f.exponent = g.exponent();
  f.center = g.abelian_invariants(g.center());
  FiniteGroup ab = g.quotient(g.derived_subgroup());
  std::vector<Element> all(ab.order());
  for (Element x = 0; x < ab.order(); ++x) all[x] = x;
  f.abelianization = ab.abelian_invariants(all);
  f.class_sizes = g.class_sizes();
  const int p = g.order() == 1 ? 2 : g.prime();
  for (Element x = 0; x < g.order(); ++x) {
    std::size_t lg = 0;
    for (int o = g.element_order(x); o > 1; o /= p) ++lg;
    if (f.element_order_counts.size() <= lg) f.element_order_counts.resize(lg + 1, 0);
    ++f.element_order_counts[lg];
  }
  return f;
}

void to_json(nlohmann::json& j, const GroupFingerprint& f) {
  nlohmann::json center, ab;
  for (const auto& x : f.center) center.push_back(x.get_si());
  for (const auto& x : f.abelianization) ab.push_back(x.get_si());
  j = nlohmann::json{{"order", f.order},
                     {"exponent", f.exponent},
                     {"center", center.is_null() ? nlohmann::json::array() : center},
                     {"abelianization", ab.is_null() ? nlohmann::json::array() : ab},
                     {"class_sizes", f.class_sizes},
                     {"element_order_counts", f.element_order_counts}};
}

}  // namespace coho3
