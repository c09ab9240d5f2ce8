#include "coho3/pipelines.hpp"

#include "coho3/dsl.hpp"

#include <future>
#include <map>
#include <numeric>

namespace coho3 {

namespace {

Integer pow3(int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

Polynomial var(const RingPresentation& r, const char* name) { return r.variable(name); }

std::optional<Integer> product_order(const FgAbGroup& a, const FgAbGroup& b) {
  auto x = a.order(), y = b.order();
  if (!x || !y) return std::nullopt;
  return *x * *y;
}

}  // namespace

std::vector<GysinSegment> gysin_series(const GradedRing& r, const Polynomial& xi, int max_degree, int first) {
  if (r.presentation().degree(xi).value_or(2) != 2) throw NotHomogeneous("the Euler class must have degree 2");
  std::vector<GysinSegment> out;
  for (int m = std::max(first, 0); m <= max_degree - 1; ++m) {
    GysinSegment s;
    s.m = m;
    s.coker_part = m >= 2 ? mult_map(r, xi, m - 2).cokernel : r.piece(m).structure;
    s.ker_part = m >= 1 ? mult_map(r, xi, m - 1).kernel : FgAbGroup::trivial();
    s.total_order = product_order(s.coker_part, s.ker_part);
    if (s.ker_part.is_trivial()) s.iso_type = s.coker_part;
    else if (s.coker_part.is_trivial()) s.iso_type = s.ker_part;
    out.push_back(std::move(s));
  }
  return out;
}

Polynomial euler_class_G(const RingPresentation& r, int n, int eps) {
  return pow3(n - 4) * var(r, "delta1") - Integer(eps) * var(r, "beta");
}

Polynomial euler_class_M(const RingPresentation& r, int n, int eps) {
  return pow3(n - 3) * var(r, "tau") - Integer(eps) * var(r, "beta");
}

Polynomial euler_class_P(const RingPresentation& r, int n) { return pow3(n - 4) * var(r, "delta1"); }

ExactnessReport exactness_bookkeeping(const GradedRing& r, const Polynomial& xi, int max_degree) {
  ExactnessReport rep;
  for (int d = 0; d + 2 <= max_degree; ++d) {
    const FgAbGroup& src = r.piece(d).structure;
    const FgAbGroup& dst = r.piece(d + 2).structure;
    InducedMap f = mult_map(r, xi, d);
    const std::string where = "xi: H^" + std::to_string(d) + " -> H^" + std::to_string(d + 2);
    if (src.free_rank() != f.kernel.free_rank() + f.image.free_rank())
      rep.failures.push_back(where + ": free rank of source != kernel + image");
    if (dst.free_rank() != f.image.free_rank() + f.cokernel.free_rank())
      rep.failures.push_back(where + ": free rank of target != image + cokernel");
    if (src.is_finite() && src.order() != product_order(f.kernel, f.image))
      rep.failures.push_back(where + ": |source| != |kernel| * |image|");
    if (dst.is_finite() && dst.order() != product_order(f.image, f.cokernel))
      rep.failures.push_back(where + ": |target| != |image| * |cokernel|");
  }
  // Segments built from the same maps must agree with them.
  for (const auto& s : gysin_series(r, xi, max_degree, 0)) {
    if (s.total_order && s.coker_part.order() && s.ker_part.order() &&
        *s.total_order != *s.coker_part.order() * *s.ker_part.order())
      rep.failures.push_back("segment " + std::to_string(s.m) + ": order is not the product of its parts");
  }
  return rep;
}

// --- fingerprints ---

namespace {

FingerprintEntry entry_for(int degree, const FgAbGroup& g) {
  FingerprintEntry e;
  e.degree = degree;
  e.order = g.order();
  e.exponent = g.exponent();
  e.group = g;
  return e;
}

std::vector<FgAbGroup> cyclic_cohomology(long n, int max_degree) {
  std::vector<FgAbGroup> h;
  for (int m = 0; m <= max_degree; ++m) {
    if (m == 0) h.push_back(FgAbGroup::from_cyclic_orders({0L}));
    else if (m % 2) h.push_back(FgAbGroup::trivial());
    else h.push_back(FgAbGroup::from_cyclic_orders({n}));
  }
  return h;
}

}  // namespace

Fingerprint kunneth_abelian(const std::vector<long>& orders, int max_degree) {
  for (long n : orders)
    if (n < 2) throw std::invalid_argument("cyclic orders must be at least 2");
  // H*(trivial group) = Z in degree 0.
  std::vector<FgAbGroup> h(max_degree + 1, FgAbGroup::trivial());
  h[0] = FgAbGroup::from_cyclic_orders({0L});
  std::string label;
  for (long n : orders) {
    const auto c = cyclic_cohomology(n, max_degree + 1);
    std::vector<FgAbGroup> next;
    for (int m = 0; m <= max_degree; ++m) {
      FgAbGroup acc = FgAbGroup::trivial();
      for (int i = 0; i <= m; ++i) acc = direct_sum(acc, tensor(h[i], c[m - i]));
      for (int i = 0; i <= m + 1 && i <= max_degree; ++i) acc = direct_sum(acc, tor(h[i], c[m + 1 - i]));
      next.push_back(acc);
    }
    h = std::move(next);
    label += (label.empty() ? "C" : "xC") + std::to_string(n);
  }
  Fingerprint f{label.empty() ? "1" : label, "kunneth", {}};
  for (int m = 0; m <= max_degree; ++m) f.entries.push_back(entry_for(m, h[m]));
  return f;
}

Fingerprint gysin_fingerprint(std::string label, const GradedRing& r, const Polynomial& xi, int max_degree) {
  Fingerprint f{std::move(label), "gysin", {}};
  for (const auto& s : gysin_series(r, xi, max_degree + 1, 0)) {
    FingerprintEntry e;
    e.degree = s.m;
    e.order = s.total_order;
    if (s.iso_type) {
      e.exponent = s.iso_type->exponent();
      e.group = s.iso_type;
    }
    f.entries.push_back(std::move(e));
  }
  return f;
}

Fingerprint ring_fingerprint(std::string label, const GradedRing& r, int max_degree) {
  Fingerprint f{std::move(label), "ring", {}};
  for (int m = 0; m <= max_degree; ++m) f.entries.push_back(entry_for(m, r.piece(m).structure));
  return f;
}

bool distinguishable(const Fingerprint& a, const Fingerprint& b) {
  const std::size_t n = std::min(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.entries[i];
    const auto& y = b.entries[i];
    if (x.order != y.order) return true;
    if (x.group && y.group && !(*x.group == *y.group)) return true;
  }
  return false;
}

std::vector<std::vector<std::string>> distinguish(const std::vector<Fingerprint>& fps) {
  std::vector<std::size_t> parent(fps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j)
      if (!distinguishable(fps[i], fps[j])) parent[std::max(root(i), root(j))] = std::min(root(i), root(j));
  std::vector<std::vector<std::string>> classes;
  std::vector<long> slot(fps.size(), -1);
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const std::size_t r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]].push_back(fps[i].label);
  }
  return classes;
}

std::vector<Fingerprint> order81_fingerprints(int max_degree) {
  std::vector<std::future<Fingerprint>> jobs;
  for (const auto& orders : std::vector<std::vector<long>>{{81}, {3, 27}, {9, 9}, {3, 3, 9}, {3, 3, 3, 3}})
    jobs.push_back(std::async(std::launch::async, [orders, max_degree] { return kunneth_abelian(orders, max_degree); }));
  auto g = shared_ring("thm10.G");
  const auto& p = g->presentation();
  const Polynomial d1 = p.variable("delta1"), b = p.variable("beta"), a = p.variable("alpha");
  const std::vector<std::pair<std::string, Polynomial>> bundles{
      {"G(4,1)", d1 - b}, {"G(4,-1)", d1 + b}, {"G'(4)", d1 + b + a}, {"wreath", d1}};
  for (const auto& [label, xi] : bundles)
    jobs.push_back(std::async(std::launch::async, [g, label, xi, max_degree] {
      return gysin_fingerprint(label, *g, xi, max_degree);
    }));
  std::vector<Fingerprint> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<std::string> order81_not_computed() {
  return {"C9:C9 (split metacyclic)", "C27:C3 (split metacyclic, element of order 27)",
          "(C9xC3):C3 (non-metacyclic, H^2 = C3+C9)", "C3 x 3^(1+2) exponent 3", "C3 x 3^(1+2) exponent 9",
          "P(5,e)"};
}

std::vector<TableCheck> order81_table_checks(const GradedRing& g) {
  const auto& p = g.presentation();
  auto poly = [&](const char* s) { return parse_polynomial(p, s); };
  auto show = [](const std::optional<Integer>& x) { return x ? x->get_str() : std::string("infinite"); };
  std::vector<TableCheck> out;
  auto add = [&](std::string label, std::string expected, std::string observed) {
    const bool pass = expected == observed;
    out.push_back({std::move(label), std::move(expected), std::move(observed), pass});
  };

  add("H^4(G~)", FgAbGroup::from_cyclic_orders({3L, 3L, 3L, 3L, 0L}).to_string(), g.piece(4).structure.to_string());
  const std::vector<std::pair<const char*, const char*>> bundles{
      {"G(4,1)", "delta1 - beta"}, {"G(4,-1)", "delta1 + beta"}, {"G'(4)", "delta1 + beta + alpha"}, {"wreath", "delta1"}};
  const std::map<std::string, std::map<int, long>> expected{
      {"G(4,1)", {{3, 3}, {4, 27}, {5, 3}}},
      {"G(4,-1)", {{3, 9}}},
      {"G'(4)", {{3, 3}, {4, 27}, {5, 1}}},
      {"wreath", {{3, 3}, {4, 81}}}};
  for (const auto& [label, xi] : bundles) {
    const auto segs = gysin_series(g, poly(xi), 6);
    for (const auto& [m, order] : expected.at(label))
      for (const auto& s : segs)
        if (s.m == m) add("|H^" + std::to_string(m) + "(" + label + ")|", std::to_string(order), show(s.total_order));
  }
  const Polynomial xm = poly("delta1 - beta");
  const FgAbGroup k = mult_kernel(g, xm, 4);
  add("ker(delta1 - beta) on H^4", "3", show(k.order()));
  add("ker(delta1 - beta) on H^4 generated by delta1*beta + alpha^2", "yes",
      kernel_spanned_by(g, xm, 4, {poly("delta1*beta + alpha^2")}) ? "yes" : "no");
  add("ker(delta1 + beta + alpha) on H^4", "1", show(mult_kernel(g, poly("delta1 + beta + alpha"), 4).order()));
  return out;
}

nlohmann::json to_json(const TableCheck& c) {
  return nlohmann::json{{"label", c.label}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}};
}

nlohmann::json to_json(const GysinSegment& s) {
  nlohmann::json j;
  j["m"] = s.m;
  coho3::to_json(j["coker_part"], s.coker_part);
  coho3::to_json(j["ker_part"], s.ker_part);
  if (s.total_order) coho3::to_json(j["total_order"], *s.total_order);
  else j["total_order"] = "infinite";
  j["iso_type"] = s.iso_type ? "determined" : "ambiguous";
  if (s.iso_type) j["group"] = s.iso_type->to_string();
  return j;
}

nlohmann::json to_json(const Fingerprint& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : f.entries) {
    nlohmann::json j;
    j["degree"] = e.degree;
    if (e.order) coho3::to_json(j["order"], *e.order);
    else j["order"] = "infinite";
    if (e.group) {
      coho3::to_json(j["exponent"], *e.exponent);
      j["group"] = e.group->to_string();
    } else {
      j["exponent"] = nullptr;
      j["group"] = "ambiguous";
    }
    entries.push_back(j);
  }
  return nlohmann::json{{"label", f.label}, {"source", f.source}, {"entries", entries}};
}

}  // namespace coho3
