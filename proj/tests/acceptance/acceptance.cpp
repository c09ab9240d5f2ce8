// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// (integers, group invariants, cyclotomic values), so no tolerance applies.
//
// Exit status: 0 when every failure is listed in known_failures(), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coho3/chars.hpp"
#include "coho3/dsl.hpp"
#include "coho3/pipelines.hpp"

using namespace coho3;
using Element = FiniteGroup::Element;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;  // stable identifiers
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

// Criterion 6 cannot hold as stated for n = 5: chi is a constituent of
// xi*xibar, so it is trivial on the centre <B^3> and its determinant is
// trivial on B, while psi^3 is not. Both eps values hit the same relation.
const std::set<std::string>& known_failures() {
  static const std::set<std::string> k{"G(5,1): Lambda3(chi) = psi^3", "G(5,-1): Lambda3(chi) = psi^3"};
  return k;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string show(const std::optional<Integer>& x) { return x ? x->get_str() : std::string("infinite"); }

Polynomial P(const GradedRing& r, const std::string& s) { return parse_polynomial(r.presentation(), s); }

std::map<int, std::optional<Integer>> gysin_orders(const GradedRing& g, const std::string& xi, int max_degree) {
  std::map<int, std::optional<Integer>> out;
  for (const auto& s : gysin_series(g, P(g, xi), max_degree)) out[s.m] = s.total_order;
  return out;
}

Outcome criterion1() {
  Outcome o;
  auto g = shared_ring("thm10.G");
  const std::vector<std::pair<std::string, std::string>> bundles{
      {"G(4,1)", "delta1 - beta"}, {"G(4,-1)", "delta1 + beta"}, {"G'(4)", "delta1 + beta + alpha"}, {"wreath", "delta1"}};
  const std::map<std::string, std::map<int, long>> expected{
      {"G(4,1)", {{3, 3}, {4, 27}, {5, 3}}},
      {"G(4,-1)", {{3, 9}}},
      {"G'(4)", {{3, 3}, {4, 27}, {5, 1}}},
      {"wreath", {{3, 3}, {4, 81}}}};
  std::ostringstream d;
  for (const auto& [label, xi] : bundles) {
    auto orders = gysin_orders(*g, xi, 6);
    d << label << ":";
    for (int m = 3; m <= 5; ++m) d << " H" << m << "=" << show(orders[m]);
    d << "; ";
    for (const auto& [m, want] : expected.at(label))
      o.require(orders[m] == Integer(want), "|H^" + std::to_string(m) + "(" + label + ")|");
  }
  // The relation as printed in the statement does not reproduce the table.
  std::size_t stated_failures = 0;
  for (const auto& c : order81_table_checks(*shared_ring("thm10.G-stated"))) stated_failures += !c.pass;
  o.require(stated_failures > 0, "stated relation variant unexpectedly reproduces the table");
  d << "stated variant mismatches: " << stated_failures;
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto g = shared_ring("thm10.G");
  const Polynomial minus = P(*g, "delta1 - beta"), prime = P(*g, "delta1 + beta + alpha");
  const FgAbGroup k = mult_kernel(*g, minus, 4);
  o.require(k.order() == Integer(3), "ker(delta1 - beta) on H^4 has order 3");
  o.require(kernel_spanned_by(*g, minus, 4, {P(*g, "delta1*beta + alpha^2")}),
            "ker(delta1 - beta) generated by delta1*beta + alpha^2");
  // The generator itself must be nonzero and killed.
  const Polynomial gen = P(*g, "delta1*beta + alpha^2");
  o.require(!g->is_zero(gen), "delta1*beta + alpha^2 nonzero in H^4");
  o.require(g->is_zero(g->presentation().multiply(minus, gen)), "(delta1 - beta)(delta1*beta + alpha^2) = 0");
  const FgAbGroup kp = mult_kernel(*g, prime, 4);
  o.require(kp.is_trivial(), "delta1 + beta + alpha injective on H^4");
  o.detail = "ker(delta1-beta)|H4 = " + k.to_string() + ", ker(delta1+beta+alpha)|H4 = " + kp.to_string();
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream d;
  for (int n : {5, 6}) {
    const std::string name = "cor14(" + std::to_string(n) + ")";
    RingMap m = builtin_map(name);
    MapReport rep = verify_map(m);
    o.require(rep.passes, name + " is a ring map");
    const auto bij = map_bijective(m, 12);
    const auto bad = std::count(bij.begin(), bij.end(), false);
    o.require(bad == 0, name + " bijective in degrees 0..12");
    d << name << ": " << rep.checks.size() << " relations map to 0, " << (bij.size() - bad) << "/" << bij.size()
      << " degrees bijective; ";
  }
  o.detail = d.str();
  return o;
}

// Coefficients of (t^6 - t^4 + t^2) / ((1 - t^6)(1 - t^2)) by long division
// against the expanded denominator 1 - t^2 - t^6 + t^8.
std::vector<long> lemma8_series(int max_degree) {
  std::vector<long> num(max_degree + 1, 0), a(max_degree + 1, 0);
  if (max_degree >= 2) num[2] = 1;
  if (max_degree >= 4) num[4] = -1;
  if (max_degree >= 6) num[6] = 1;
  auto at = [&](int k) { return k < 0 ? 0L : a[k]; };
  for (int k = 0; k <= max_degree; ++k) a[k] = num[k] + at(k - 2) + at(k - 6) - at(k - 8);
  return a;
}

Outcome criterion4() {
  Outcome o;
  Order3Action y = make_action(builtin_map("thm6.Y"), 12);
  const auto want = lemma8_series(12);
  std::ostringstream obs, exp;
  for (int j = 0; j <= 12; ++j) {
    FgAbGroup h = h1_c3(y, j);
    const bool elementary = h.is_finite() && (h.is_trivial() || h.exponent() == 3);
    const long dim = static_cast<long>(h.torsion().size());
    o.require(elementary, "H^1 in degree " + std::to_string(j) + " is an F3 vector space");
    o.require(dim == want[j], "dim H^1 in degree " + std::to_string(j));
    obs << (j ? "," : "") << dim;
    exp << (j ? "," : "") << want[j];
  }
  o.detail = "observed (" + obs.str() + "), series (" + exp.str() + ")";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;
  for (const char* name : {"prop7.resM", "prop7.resP"}) {
    MapReport rep = verify_map(builtin_map(name));
    std::size_t zero = 0;
    for (const auto& c : rep.checks) zero += c.zero;
    o.require(rep.passes, std::string(name) + " kills every relation");
    d << name << ": " << zero << "/" << rep.checks.size() << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (int n : {4, 5})
    for (int eps : {1, -1}) {
      const std::string label = "G(" + std::to_string(n) + "," + std::to_string(eps) + ")";
      RepRingReport r = verify_rep_ring_relations(n, eps);
      std::size_t held = 0;
      for (const auto& rel : r.relations) {
        held += rel.holds;
        o.require(rel.holds, label + ": " + rel.relation);
      }
      d << label << " " << held << "/" << r.relations.size() << "; ";
    }
  Mod3MapReport m = verify_mod3_map(5);
  o.require(m.well_defined, "mod-3 comparison map well defined for n = 5");
  d << "mod-3 map " << (m.well_defined ? "well defined" : "not well defined");
  o.detail = d.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto table = [](Family f, int n, int eps) { return cached_character_table(make_group(f, n, eps)); };
  o.require(!tables_equivalent(*table(Family::G, 4, 1), *table(Family::G, 4, -1)), "G(4,1) and G(4,-1) tables differ");
  o.require(tables_equivalent(*table(Family::GPrime, 4, 1), *table(Family::G, 4, -1)), "G'(4) and G(4,-1) tables agree");
  std::ostringstream d;
  for (int n : {4, 5})
    for (int eps : {1, -1})
      for (int group_eps : {1, -1}) {
        const bool found = has_entry(*table(Family::G, n, group_eps), n, eps);
        o.require(found == (eps == group_eps), "entry with eps=" + std::to_string(eps) + " in G(" + std::to_string(n) +
                                                   "," + std::to_string(group_eps) + ")");
        if (found) d << "eps=" << eps << " entry in G(" << n << "," << group_eps << "); ";
      }
  o.detail = d.str();
  return o;
}

// A subgroup (C3)^3: three pairwise commuting elements of order 3 with the
// third outside the span of the first two.
bool contains_elementary_abelian_27(const FiniteGroup& g) {
  std::vector<Element> order3;
  for (Element x = 1; x < g.order(); ++x)
    if (g.element_order(x) == 3) order3.push_back(x);
  auto commute = [&](Element a, Element b) { return g.mul(a, b) == g.mul(b, a); };
  for (std::size_t i = 0; i < order3.size(); ++i)
    for (std::size_t j = i + 1; j < order3.size(); ++j) {
      const Element a = order3[i], b = order3[j];
      if (!commute(a, b)) continue;
      std::set<Element> span;
      for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) span.insert(g.mul(g.power(a, s), g.power(b, t)));
      if (span.size() != 9) continue;
      for (std::size_t k = j + 1; k < order3.size(); ++k) {
        const Element c = order3[k];
        if (!span.count(c) && commute(a, c) && commute(b, c)) return true;
      }
    }
  return false;
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream d;
  for (int n : {4, 5})
    for (int eps : {1, -1}) {
      const std::string label = "G(" + std::to_string(n) + "," + std::to_string(eps) + ")";
      PcGroup g(make_group(Family::G, n, eps));
      const FgAbGroup z = center(g);
      o.require(z.order() == Integer(ipow(3, n - 3)), label + ": |Z| = 3^(n-3)");
      o.require(z.torsion().size() == 1, label + ": Z cyclic");

      auto subs = maximal_subgroups(g);
      o.require(subs.size() == 4, label + ": four maximal subgroups");
      if (subs.size() != 4) continue;
      o.require(subs[0].contains == "B" && subs[0].abelian &&
                    subs[0].abelian_invariants == IntVector{3, ipow(3, n - 2)},
                label + ": subgroup containing B is C3 + C_{3^(n-2)}");
      o.require(subs[1].contains == "A" &&
                    isomorphic(PcGroup(subs[1].presentation), PcGroup(make_group(Family::P, n, eps))).isomorphic,
                label + ": subgroup containing A is P(n,eps)");
      if (n == 4 && eps == -1) {
        PcGroup p4(make_group(Family::P, 4, -1));
        for (std::size_t i : {2, 3})
          o.require(isomorphic(PcGroup(subs[i].presentation), p4).isomorphic,
                    label + ": subgroup containing " + subs[i].contains + " is P(4,-1)");
      }
      std::vector<Element> common = subs[0].elements;
      for (const auto& s : subs) {
        std::vector<Element> next;
        std::set_intersection(common.begin(), common.end(), s.elements.begin(), s.elements.end(),
                              std::back_inserter(next));
        common = next;
      }
      o.require(g.group().abelian_invariants(common) == IntVector{3, ipow(3, n - 3)},
                label + ": intersection is C3 + C_{3^(n-3)}");
    }

  for (int n : {4, 5}) {
    const long c = ipow(3, n - 4);
    auto iso_to = [&](CircleHom h, PcPresentation target, const std::string& what) {
      PcGroup k(kernel_of_circle_hom(h).presentation), t(target);
      auto r = isomorphic(k, t);
      o.require(r.isomorphic && verify_witness(k, t, r.generator_images), what);
    };
    const std::string sn = std::to_string(n);
    iso_to({c, 0, 1}, make_group(Family::G, n, -1), "ker(3^(n-4) delta1 + beta) = G(" + sn + ",-1)");
    iso_to({c, 0, -1}, make_group(Family::G, n, 1), "ker(3^(n-4) delta1 - beta) = G(" + sn + ",1)");
    o.require(contains_elementary_abelian_27(kernel_of_circle_hom({c, 0, 0}).group),
              "ker(3^(n-4) delta1) contains (C3)^3 for n = " + sn);
    o.require(!contains_elementary_abelian_27(kernel_of_circle_hom({c, 0, 1}).group),
              "G(" + sn + ",-1) has no (C3)^3");
  }
  {
    PcGroup k(kernel_of_circle_hom({1, 1, 1}).presentation), t(make_group(Family::GPrime, 4));
    o.require(isomorphic(k, t).isomorphic, "ker(delta1 + beta + alpha) = G'(4)");
  }
  d << "centres, maximal subgroups and circle kernels checked for n = 4, 5";
  o.detail = d.str();
  return o;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<long> entry(-6, 6);
  std::vector<IntVector> rows(r, IntVector(c));
  for (auto& row : rows)
    for (auto& x : row) x = entry(rng);
  return IntMatrix::from_rows(rows, c);
}

Outcome criterion9() {
  Outcome o;
  std::size_t cases = 0;
  std::mt19937 rng(20260903);
  std::uniform_int_distribution<std::size_t> dim(1, 5);

  // Smith normal form: U A V = S, unimodular U and V, divisibility chain.
  for (int trial = 0; trial < 200; ++trial, ++cases) {
    const IntMatrix a = random_matrix(rng, dim(rng), dim(rng));
    const SmithForm f = smith_normal_form(a);
    o.require(f.U * a * f.V == f.S, "SNF: U A V = S");
    o.require(abs(f.U.determinant()) == 1 && abs(f.V.determinant()) == 1, "SNF: unimodular transforms");
    const IntVector dg = f.diagonal();
    for (std::size_t i = 0; i + 1 < f.rank; ++i)
      o.require(dg[i] != 0 && dg[i + 1] % dg[i] == 0, "SNF: divisibility chain");
    for (std::size_t i = 0; i < f.S.rows(); ++i)
      for (std::size_t j = 0; j < f.S.cols(); ++j)
        if (i != j) o.require(f.S(i, j) == 0, "SNF: off-diagonal zero");
    if (a.rows() == a.cols()) {
      const Integer det = abs(a.determinant());
      const auto ord = cokernel(a).order();
      o.require(det == 0 ? !ord.has_value() : ord == det, "SNF: |coker A| = |det A|");
    }
  }

  // Abelian group algebra.
  std::uniform_int_distribution<long> cyc(0, 4);
  auto random_group = [&] {
    std::vector<Integer> orders;
    for (std::size_t i = 0, k = dim(rng) - 1; i < k; ++i) orders.push_back(Integer(ipow(3, cyc(rng))));
    if (cyc(rng) == 0) orders.push_back(Integer(0));
    return FgAbGroup::from_cyclic_orders(orders);
  };
  for (int trial = 0; trial < 100; ++trial, ++cases) {
    const FgAbGroup a = random_group(), b = random_group(), c = random_group();
    o.require(direct_sum(a, b) == direct_sum(b, a), "sum commutes");
    o.require(tensor(a, b) == tensor(b, a), "tensor commutes");
    o.require(tor(a, b) == tor(b, a), "Tor commutes");
    o.require(tensor(a, direct_sum(b, c)) == direct_sum(tensor(a, b), tensor(a, c)), "tensor distributes");
    o.require(tor(a, direct_sum(b, c)) == direct_sum(tor(a, b), tor(a, c)), "Tor distributes");
    o.require(tor(a, b).is_finite(), "Tor is finite");
    if (a.is_finite() && b.is_finite())
      o.require(*direct_sum(a, b).order() == *a.order() * *b.order(), "orders multiply over sums");
  }

  // Graded commutativity and closure of the quotient construction.
  for (const char* name : {"prop4.M", "thm6.P", "thm6.Pfin(5)", "thm10.G", "lemma8.gr", "thm13.G(5,1)", "thm13.G(6,-1)"}) {
    auto r = shared_ring(name);
    const auto& pres = r->presentation();
    for (const auto& rel : pres.relations()) {
      const int rd = *pres.degree(rel);
      for (int d = rd; d <= 10; ++d)
        for (const auto& mono : pres.monomials(d - rd)) {
          Polynomial m;
          m.add(mono, 1);
          ++cases;
          o.require(r->is_zero(pres.multiply(m, rel)), std::string(name) + ": ideal closed");
        }
    }
    for (std::size_t i = 0; i < pres.size(); ++i)
      for (std::size_t j = 0; j < pres.size(); ++j) {
        const Polynomial x = pres.generator(i), y = pres.generator(j);
        const int sign = pres.is_odd(i) && pres.is_odd(j) ? -1 : 1;
        const Polynomial diff = pres.multiply(x, y) - Integer(sign) * pres.multiply(y, x);
        ++cases;
        o.require(r->is_zero(diff), std::string(name) + ": graded commutativity");
      }
  }

  // Exactness bookkeeping around the Gysin sequences.
  {
    auto g = shared_ring("thm10.G");
    for (const char* xi : {"delta1 - beta", "delta1 + beta", "delta1 + beta + alpha", "delta1", "3*delta1 - beta"}) {
      ++cases;
      o.require(exactness_bookkeeping(*g, P(*g, xi), 10).consistent(), std::string("exactness for ") + xi);
    }
    auto m = shared_ring("prop4.M");
    o.require(exactness_bookkeeping(*m, euler_class_M(m->presentation(), 4, 1), 10).consistent(), "exactness on M");
  }

  // Parser round trips.
  for (const auto& name : builtin_ring_names()) {
    if (name.find('(') != std::string::npos) continue;
    ++cases;
    const RingPresentation r = builtin_ring(name);
    const std::string text = print_ring(r);
    o.require(print_ring(parse_ring(text)) == text && parse_ring(text).relations() == r.relations(),
              "ring round trip " + name);
  }
  for (const char* name : {"thm6.P(5)", "thm6.Pfin(4)", "thm6.Pfin(5,-1)", "thm13.G(5,1)", "thm13.G(6,-1)"}) {
    ++cases;
    const std::string text = print_ring(builtin_ring(name));
    o.require(print_ring(parse_ring(text)) == text, std::string("ring round trip ") + name);
  }
  for (const char* name : {"G(4,1)", "G(4,-1)", "G(5,-1)", "G'(4)", "E", "M(4,1)", "N(5,-1)", "P(5,1)", "wreath"}) {
    ++cases;
    const PcPresentation g = builtin_group(name);
    o.require(parse_group(print_group(g)) == g, std::string("group round trip ") + name);
  }

  // Failures are deduplicated so the report stays readable.
  std::sort(o.failures.begin(), o.failures.end());
  o.failures.erase(std::unique(o.failures.begin(), o.failures.end()), o.failures.end());
  o.detail = std::to_string(cases) + " cases";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Gysin table for the order-81 circle-bundle groups", criterion1},
      {"kernels of the Euler classes on H^4", criterion2},
      {"comparison map for n = 5, 6", criterion3},
      {"H^1(C3, H^j) against the rational series, j <= 12", criterion4},
      {"restriction maps to the maximal subgroups", criterion5},
      {"representation ring and lambda relations", criterion6},
      {"character table separation", criterion7},
      {"group invariants and circle kernels", criterion8},
      {"property suites", criterion9},
  };

  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [title, run] = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s [exact] (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", i + 1, title.c_str(), secs,
                o.detail.c_str());
    for (const auto& f : o.failures) {
      const bool known = known_failures().count(f) > 0;
      unexpected |= !known;
      std::printf("    failed: %s%s\n", f.c_str(), known ? " (known, not attainable)" : "");
    }
    std::fflush(stdout);
  }
  return unexpected ? 1 : 0;
}
