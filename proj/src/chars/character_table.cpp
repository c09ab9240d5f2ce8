#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "coho3/chars.hpp"

namespace coho3 {

using Element = PcGroup::Element;

namespace {

long mod(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::string key_of(const ClassFunction& f) {
  std::string k;
  for (const auto& v : f.values) k += v.to_string() + "|";
  return k;
}

}  // namespace

std::size_t CharacterTable::degree(std::size_t row) const {
  auto d = characters.at(row).values.at(0).rational();
  return static_cast<std::size_t>(d->get_num().get_ui());
}

ClassFunction CharacterTable::constant(long v) const {
  ClassFunction f;
  f.values.assign(classes.size(), Cyclotomic(v));
  return f;
}

Cyclotomic CharacterTable::inner_product(const ClassFunction& a, const ClassFunction& b) const {
  Cyclotomic s;
  for (std::size_t c = 0; c < classes.size(); ++c)
    s += Rational(static_cast<long>(classes[c].size)) * (a.values[c] * b.values[c].conj());
  return Rational(1, static_cast<unsigned long>(group_order)) * s;
}

IntVector CharacterTable::decompose(const ClassFunction& f) const {
  IntVector out;
  for (const auto& chi : characters) {
    auto q = inner_product(f, chi).rational();
    if (!q || q->get_den() != 1) throw NotGenuine("class function is not a virtual character");
    out.push_back(q->get_num());
  }
  return out;
}

ClassFunction CharacterTable::from_coefficients(const IntVector& coeffs) const {
  if (coeffs.size() != characters.size()) throw BadParameter("coefficient vector has wrong length");
  ClassFunction f = constant(0);
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    if (coeffs[r] != 0) f = f + static_cast<long>(coeffs[r].get_si()) * characters[r];
  return f;
}

ClassFunction CharacterTable::lambda2(const ClassFunction& f) const {
  ClassFunction r;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Cyclotomic& x = f.values[c];
    r.values.push_back(Rational(1, 2) * (x * x - f.values[classes[c].square]));
  }
  return r;
}

ClassFunction CharacterTable::lambda3(const ClassFunction& f) const {
  ClassFunction r;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Cyclotomic& x = f.values[c];
    const Cyclotomic& x2 = f.values[classes[c].square];
    const Cyclotomic& x3 = f.values[classes[c].cube];
    r.values.push_back(Rational(1, 6) * (x * x * x - Rational(3) * (x * x2) + Rational(2) * x3));
  }
  return r;
}

std::vector<std::vector<long>> abelian_subgroup_characters(const PcGroup& g, std::span<const Element> elements,
                                                           long conductor) {
  FiniteGroup sub = g.group().subgroup(elements);
  if (!sub.is_abelian()) throw BadParameter("subgroup is not abelian");
  std::vector<std::vector<long>> out;
  if (sub.order() == 1) {
    out.push_back({0});
    return out;
  }
  PcConversion conv = to_pc_presentation(sub, "sub");
  FgAbGroup ab = cokernel(conv.presentation.abelianization_relations());
  std::vector<IntVector> coords;
  for (const auto& e : conv.normal_forms) {
    IntVector x(e.begin(), e.end());
    coords.push_back(ab.project(x));
  }
  const std::size_t r = ab.ngens();
  std::vector<long> d(r);
  for (std::size_t i = 0; i < r; ++i) {
    d[i] = ab.modulus(i).get_si();
    if (conductor % d[i] != 0) throw BadParameter("conductor does not cover the subgroup exponent");
  }
  std::vector<long> c(r, 0);
  for (bool more = true; more;) {
    std::vector<long> lam(elements.size());
    for (std::size_t x = 0; x < elements.size(); ++x) {
      long s = 0;
      for (std::size_t i = 0; i < r; ++i) s += coords[x][i].get_si() * c[i] * (conductor / d[i]);
      lam[x] = mod(s, conductor);
    }
    out.push_back(std::move(lam));
    more = false;
    for (std::size_t i = r; i-- > 0;) {
      if (++c[i] < d[i]) {
        more = true;
        break;
      }
      c[i] = 0;
    }
  }
  return out;
}

ClassFunction induce(const CharacterTable& t, const PcGroup& g, std::span<const Element> elements,
                     const std::vector<long>& lambda) {
  const FiniteGroup& G = g.group();
  std::vector<std::int64_t> pos(G.order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<std::int64_t>(i);
  // Coset representatives of the normal subgroup.
  std::vector<Element> reps;
  {
    std::vector<char> covered(G.order(), 0);
    for (Element x = 0; x < G.order(); ++x) {
      if (covered[x]) continue;
      reps.push_back(x);
      for (Element m : elements) covered[G.mul(x, m)] = 1;
    }
  }
  ClassFunction f;
  for (const auto& cls : t.classes) {
    Cyclotomic v;
    if (pos[cls.representative] >= 0)
      for (Element r : reps) {
        Element y = G.mul(G.mul(r, cls.representative), G.inv(r));
        v += Cyclotomic::root(t.conductor, lambda[static_cast<std::size_t>(pos[y])]);
      }
    f.values.push_back(std::move(v));
  }
  return f;
}

CharacterTable irreducible_characters(const PcGroup& g) {
  const FiniteGroup& G = g.group();
  CharacterTable t;
  t.group_name = g.presentation().name();
  t.group_order = G.order();
  t.conductor = G.exponent();

  t.class_of.resize(G.order());
  for (Element x = 0; x < G.order(); ++x) t.class_of[x] = G.class_of(x);
  for (const auto& cls : G.conjugacy_classes()) {
    const Element rep = cls.front();
    t.classes.push_back({rep, g.format(rep), cls.size(), G.element_order(rep), G.class_of(G.power(rep, 2)),
                         G.class_of(G.power(rep, 3))});
  }

  // Linear characters through the abelianization.
  FgAbGroup ab = abelianization(g);
  if (!ab.is_finite()) throw BadParameter("abelianization is infinite");
  const std::size_t r = ab.ngens();
  std::vector<long> d(r);
  for (std::size_t i = 0; i < r; ++i) d[i] = ab.modulus(i).get_si();
  std::vector<IntVector> rep_coords;
  for (const auto& cls : t.classes) {
    Exponents e = g.exponents(cls.representative);
    rep_coords.push_back(ab.project(IntVector(e.begin(), e.end())));
  }
  std::vector<long> c(r, 0);
  for (bool more = true; more;) {
    ClassFunction f;
    for (const auto& y : rep_coords) {
      long s = 0;
      for (std::size_t i = 0; i < r; ++i) s += y[i].get_si() * c[i] * (t.conductor / d[i]);
      f.values.push_back(Cyclotomic::root(t.conductor, s));
    }
    t.characters.push_back(std::move(f));
    more = false;
    for (std::size_t i = r; i-- > 0;) {
      if (++c[i] < d[i]) {
        more = true;
        break;
      }
      c[i] = 0;
    }
  }

  if (t.characters.size() < t.classes.size()) {
    if (G.order() > 729) throw TooLarge("character tables need maximal subgroups, limited to order 3^6");
    const MaximalSubgroup* m = nullptr;
    auto subs = maximal_subgroups(g);
    for (const auto& s : subs)
      if (s.abelian && G.order() / s.elements.size() == 3) {
        m = &s;
        break;
      }
    if (!m) throw NoAbelianIndex3(t.group_name + " has no abelian subgroup of index 3");

    std::unordered_map<std::string, bool> seen;
    for (const auto& lam : abelian_subgroup_characters(g, m->elements, t.conductor)) {
      ClassFunction f = induce(t, g, m->elements, lam);
      // Invariant characters induce to sums of linear characters.
      if (!(t.inner_product(f, f) == Cyclotomic(1L))) continue;
      if (seen.emplace(key_of(f), true).second) t.characters.push_back(std::move(f));
    }
  }

  std::size_t sum = 0;
  for (std::size_t i = 0; i < t.characters.size(); ++i) sum += t.degree(i) * t.degree(i);
  if (sum != G.order() || t.characters.size() != t.classes.size())
    throw std::logic_error("character table of " + t.group_name + " is incomplete");
  return t;
}

std::shared_ptr<const CharacterTable> cached_character_table(const PcPresentation& p) {
  static std::mutex mu;
  static std::vector<std::pair<PcPresentation, std::shared_ptr<const CharacterTable>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [key, table] : cache)
      if (key == p && key.name() == p.name()) return table;
  }
  auto table = std::make_shared<const CharacterTable>(irreducible_characters(PcGroup(p)));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace_back(p, table);
  return table;
}

// --- table comparison ---

namespace {

struct IdTable {
  std::vector<std::vector<int>> rows;  // value ids
};

// Interns the values of both tables so comparisons are integer compares.
std::pair<IdTable, IdTable> intern(const CharacterTable& a, const CharacterTable& b) {
  const long n = std::max(a.conductor, b.conductor);
  std::unordered_map<std::string, int> ids;
  auto convert = [&](const CharacterTable& t) {
    IdTable out;
    for (const auto& chi : t.characters) {
      std::vector<int> row;
      for (const auto& v : chi.values) {
        auto [it, inserted] = ids.emplace(v.lift(n).to_string(), static_cast<int>(ids.size()));
        row.push_back(it->second);
      }
      out.rows.push_back(std::move(row));
    }
    return out;
  };
  IdTable x = convert(a);
  IdTable y = convert(b);
  return {x, y};
}

}  // namespace

bool tables_equivalent(const CharacterTable& a, const CharacterTable& b) {
  const std::size_t k = a.classes.size();
  if (k != b.classes.size() || a.group_order != b.group_order) return false;
  auto [ta, tb] = intern(a, b);

  // Column signatures: class size and the sorted column values. Element
  // orders and the cube map are not read off the table (G'(4) and G(4,-1)
  // share a table but differ in both), so only the square map, which acts on
  // values as a Galois automorphism, is required to match.
  auto signature = [](const CharacterTable& t, const IdTable& it, std::size_t c) {
    std::vector<long> s{static_cast<long>(t.classes[c].size)};
    std::vector<long> col;
    for (const auto& row : it.rows) col.push_back(row[c]);
    std::sort(col.begin(), col.end());
    s.insert(s.end(), col.begin(), col.end());
    return s;
  };
  std::vector<std::vector<long>> sa(k), sb(k);
  for (std::size_t c = 0; c < k; ++c) {
    sa[c] = signature(a, ta, c);
    sb[c] = signature(b, tb, c);
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }

  std::vector<std::int64_t> sigma(k, -1);
  std::vector<char> used(k, 0);
  // Rows of a and b restricted to assigned columns must agree as multisets.
  auto rows_consistent = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<int>> ra, rb;
    for (const auto& row : ta.rows) {
      std::vector<int> v;
      for (std::size_t c : cols) v.push_back(row[c]);
      ra.push_back(std::move(v));
    }
    for (const auto& row : tb.rows) {
      std::vector<int> v;
      for (std::size_t c : cols) v.push_back(row[static_cast<std::size_t>(sigma[c])]);
      rb.push_back(std::move(v));
    }
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
  };

  std::vector<std::size_t> assigned;
  auto search = [&](auto&& self, std::size_t col) -> bool {
    if (col == k) return rows_consistent(assigned);
    if (sigma[col] >= 0) return self(self, col + 1);
    for (std::size_t cand = 0; cand < k; ++cand) {
      if (used[cand] || sb[cand] != sa[col]) continue;
      // Assign col -> cand and propagate through the square map.
      std::vector<std::size_t> trail;
      bool ok = true;
      std::vector<std::pair<std::size_t, std::size_t>> todo{{col, cand}};
      while (!todo.empty() && ok) {
        auto [x, y] = todo.back();
        todo.pop_back();
        if (sigma[x] >= 0) {
          ok = static_cast<std::size_t>(sigma[x]) == y;
          continue;
        }
        if (used[y] || sb[y] != sa[x]) {
          ok = false;
          continue;
        }
        sigma[x] = static_cast<std::int64_t>(y);
        used[y] = 1;
        trail.push_back(x);
        todo.push_back({a.classes[x].square, b.classes[y].square});
      }
      if (ok) {
        assigned.insert(assigned.end(), trail.begin(), trail.end());
        if (rows_consistent(assigned) && self(self, col + 1)) return true;
        assigned.resize(assigned.size() - trail.size());
      }
      for (std::size_t x : trail) {
        used[static_cast<std::size_t>(sigma[x])] = 0;
        sigma[x] = -1;
      }
    }
    return false;
  };
  return search(search, 0);
}

bool has_value(const CharacterTable& t, const Cyclotomic& v) {
  for (const auto& chi : t.characters)
    for (const auto& x : chi.values)
      if (x == v) return true;
  return false;
}

bool has_entry(const CharacterTable& t, int n, int eps) {
  long q = 1;
  for (int i = 0; i < n - 2; ++i) q *= 3;
  const long shift = eps > 0 ? q / 3 : q - q / 3;  // eps 3^{n-3} mod 3^{n-2}
  for (long k = 1; k < q; ++k) {
    if (k % 3 == 0) continue;
    // eta = zeta_q^k; eta (2 + eta^{eps 3^{n-3}}) = 2 eta + eta^{1 + eps 3^{n-3}}.
    Cyclotomic v = Rational(2) * Cyclotomic::root(q, k) + Cyclotomic::root(q, k * (1 + shift));
    if (has_value(t, v)) return true;
  }
  return false;
}

RepRingElement lambda2(const CharacterTable& t, const RepRingElement& x) {
  for (const auto& c : x.coefficients)
    if (c < 0) throw NotGenuine("lambda operations need a genuine character");
  RepRingElement r{t.decompose(t.lambda2(t.from_coefficients(x.coefficients)))};
  for (const auto& c : r.coefficients)
    if (c < 0) throw NotGenuine("exterior square decomposed with a negative multiplicity");
  return r;
}

RepRingElement lambda3(const CharacterTable& t, const RepRingElement& x) {
  for (const auto& c : x.coefficients)
    if (c < 0) throw NotGenuine("lambda operations need a genuine character");
  RepRingElement r{t.decompose(t.lambda3(t.from_coefficients(x.coefficients)))};
  for (const auto& c : r.coefficients)
    if (c < 0) throw NotGenuine("exterior cube decomposed with a negative multiplicity");
  return r;
}

void to_json(nlohmann::json& j, const CharacterTable& t) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : t.classes)
    classes.push_back({{"representative", c.word},
                       {"size", c.size},
                       {"element_order", c.element_order},
                       {"square", c.square},
                       {"cube", c.cube}});
  nlohmann::json chars = nlohmann::json::array();
  for (const auto& chi : t.characters) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : chi.values) {
      nlohmann::json jv;
      to_json(jv, v);
      row.push_back(jv["coefficients"]);
    }
    chars.push_back(row);
  }
  j = nlohmann::json{{"group", t.group_name},
                     {"order", t.group_order},
                     {"conductor", t.conductor},
                     {"classes", classes},
                     {"characters", chars}};
}

}  // namespace coho3
