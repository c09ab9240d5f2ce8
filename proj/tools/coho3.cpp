// Command-line front end. Every run prints one JSON report on stdout (or CSV
// for `distinguish --csv`); exit 0 on success, 1 when a verification fails,
// 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coho3/chars.hpp"
#include "coho3/dsl.hpp"
#include "coho3/pipelines.hpp"

using namespace coho3;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kVersion = "0.1.0";

struct Outcome {
  json payload = json::object();
  json provenance = json::object();
  std::string verdict;
  int status = 0;
  std::string csv;  // printed instead of JSON when set
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json integer(const Integer& z) {
  json j;
  to_json(j, z);
  return j;
}

json group_json(const FgAbGroup& g) {
  json j;
  to_json(j, g);
  return j;
}

void note_ring(Outcome& o, const RingPresentation& r) {
  o.provenance[r.name()] = r.provenance().empty() ? "user file" : r.provenance();
}

PcPresentation load_group(const std::string& spec, const std::string& file) {
  if (!file.empty()) return parse_group(read_file(file));
  if (spec.empty()) throw UsageError("give a builtin group or --file");
  return builtin_group(spec);
}

std::shared_ptr<const GradedRing> load_ring(Outcome& o, const std::string& spec, const std::string& file) {
  std::shared_ptr<const GradedRing> r;
  if (!file.empty()) r = std::make_shared<const GradedRing>(parse_ring(read_file(file)));
  else if (!spec.empty()) r = shared_ring(spec);
  else throw UsageError("give a builtin ring or --file");
  note_ring(o, r->presentation());
  return r;
}

json map_report_json(const MapReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"relation", c.relation}, {"image", c.image}, {"zero", c.zero}});
  return {{"map", r.name}, {"passes", r.passes}, {"checks", checks}};
}

json relations_json(const std::vector<RelationCheck>& rels) {
  json out = json::array();
  for (const auto& r : rels) out.push_back({{"relation", r.relation}, {"holds", r.holds}});
  return out;
}

// --- subcommands ---

Outcome group_info(const std::string& spec, const std::string& file) {
  Outcome o;
  PcGroup g(load_group(spec, file));
  o.provenance[g.presentation().name()] = file.empty() ? "builtin group" : "user file";
  auto& p = o.payload;
  p["name"] = g.presentation().name();
  p["presentation"] = print_group(g.presentation());
  p["order"] = g.order();
  p["exponent"] = exponent(g);
  p["center"] = group_json(center(g));
  p["abelianization"] = group_json(abelianization(g));
  p["derived_subgroup_order"] = derived_subgroup(g).size();
  p["class_sizes"] = conjugacy_class_sizes(g);
  json subs = json::array();
  for (const auto& m : maximal_subgroups(g)) {
    json s{{"order", m.elements.size()}, {"abelian", m.abelian}};
    if (!m.contains.empty()) s["contains"] = m.contains;
    if (m.abelian) {
      json inv = json::array();
      for (const auto& x : m.abelian_invariants) inv.push_back(integer(x));
      s["invariants"] = inv;
    }
    subs.push_back(s);
  }
  p["maximal_subgroups"] = subs;
  json fp;
  to_json(fp, fingerprint(g.group()));
  p["fingerprint"] = fp;
  return o;
}

Outcome chartab(const std::string& spec, const std::string& file, const std::string& compare,
                const std::vector<int>& entry) {
  Outcome o;
  PcGroup g(load_group(spec, file));
  auto t = cached_character_table(g.presentation());
  json tj;
  to_json(tj, *t);
  o.payload["table"] = tj;
  if (!compare.empty()) {
    auto other = cached_character_table(builtin_group(compare));
    o.payload["compare"] = {{"with", compare}, {"equivalent", tables_equivalent(*t, *other)}};
  }
  if (!entry.empty()) {
    if (entry.size() != 2) throw UsageError("--entry takes N EPS");
    o.payload["has_entry"] = {{"n", entry[0]}, {"eps", entry[1]}, {"found", has_entry(*t, entry[0], entry[1])}};
  }
  return o;
}

Outcome ring_basis(const std::string& spec, const std::string& file, int degree) {
  Outcome o;
  auto r = load_ring(o, spec, file);
  o.payload = piece_json(r->presentation(), r->piece(degree));
  return o;
}

Outcome hilbert(const std::string& spec, const std::string& file, int max_degree) {
  Outcome o;
  auto r = load_ring(o, spec, file);
  json rows = json::array();
  for (const auto& e : hilbert_report(*r, max_degree)) {
    json j;
    to_json(j, e);
    rows.push_back(j);
  }
  o.payload = {{"ring", r->presentation().name()}, {"degrees", rows}};
  return o;
}

// Restriction maps with the source replaced by the chosen relation variant.
std::vector<RingMap> restriction_maps(const std::string& variant) {
  const std::string src = variant == "stated" ? "thm10.G-stated" : "thm10.G";
  std::vector<RingMap> out;
  for (const char* name : {"prop7.resM", "prop7.resP"}) {
    RingMap m = builtin_map(name);
    out.push_back(make_ring_map(shared_ring(src), m.target, m.images, name));
  }
  return out;
}

Outcome verify_variant(const std::string& variant) {
  Outcome o;
  const std::string src = variant == "stated" ? "thm10.G-stated" : "thm10.G";
  auto g = shared_ring(src);
  note_ring(o, g->presentation());
  bool ok = true;
  json maps = json::array();
  for (const auto& m : restriction_maps(variant)) {
    note_ring(o, m.target->presentation());
    MapReport r = verify_map(m);
    ok &= r.passes;
    maps.push_back(map_report_json(r));
  }
  json checks = json::array();
  for (const auto& c : order81_table_checks(*g)) {
    ok &= c.pass;
    checks.push_back(to_json(c));
  }
  o.payload = {{"ring", src}, {"restriction_maps", maps}, {"order81_table", checks}};
  o.status = ok ? 0 : 1;
  o.verdict = ok ? src + " reproduces the restriction maps and the order-81 table"
                 : src + " fails the order-81 cross-check";
  return o;
}

Outcome verify_map_cmd(const std::string& map_name, const std::string& preset, int max_degree) {
  if (preset == "thm10-variant-proof") return verify_variant("proof");
  if (preset == "thm10-variant-stated") return verify_variant("stated");
  std::string name = map_name;
  if (!preset.empty()) {
    static const std::map<std::string, std::string> presets{
        {"prop7-resM", "prop7.resM"}, {"prop7-resP", "prop7.resP"}, {"cor14-5", "cor14(5)"},
        {"cor14-6", "cor14(6)"},      {"prop4-X", "prop4.X"},       {"thm6-Y", "thm6.Y"}};
    auto it = presets.find(preset);
    if (it == presets.end()) throw UsageError("unknown preset '" + preset + "'");
    name = it->second;
  }
  if (name.empty()) throw UsageError("give --map or --preset");
  Outcome o;
  RingMap m = builtin_map(name);
  note_ring(o, m.source->presentation());
  note_ring(o, m.target->presentation());
  MapReport r = verify_map(m);
  o.payload = map_report_json(r);
  bool ok = r.passes;
  if (ok && max_degree >= 0) {
    auto flags = map_bijective(m, max_degree);
    o.payload["bijective"] = flags;
    for (bool b : flags) ok &= b;
  }
  o.status = ok ? 0 : 1;
  o.verdict = ok ? "verified" : "failed";
  return o;
}

Outcome iso_ring(int n, int max_degree) {
  Outcome o;
  RingMap m = builtin_map("cor14(" + std::to_string(n) + ")");
  note_ring(o, m.source->presentation());
  note_ring(o, m.target->presentation());
  MapReport r = verify_map(m);
  bool ok = r.passes;
  o.payload["map"] = map_report_json(r);
  if (r.passes) {
    auto flags = map_bijective(m, max_degree);
    json per = json::array();
    for (int d = 0; d <= max_degree; ++d) {
      per.push_back({{"degree", d},
                     {"bijective", static_cast<bool>(flags[d])},
                     {"source", m.source->piece(d).structure.to_string()},
                     {"target", m.target->piece(d).structure.to_string()}});
      ok &= flags[d];
    }
    o.payload["degrees"] = per;
  }
  o.status = ok ? 0 : 1;
  o.verdict = ok ? "Corollary 14 verified to degree " + std::to_string(max_degree)
                 : "Corollary 14 not verified for n = " + std::to_string(n);
  return o;
}

Polynomial euler_class_for(const RingPresentation& r, const std::string& group) {
  if (group == "G'(4)") return parse_polynomial(r, "delta1 + beta + alpha");
  if (group == "wreath") return parse_polynomial(r, "delta1");
  BuiltinSpec s = parse_builtin_spec(group);
  if (s.name != "G" || s.params.size() != 2) throw UsageError("--group must be G(n,eps), G'(4) or wreath");
  return euler_class_G(r, s.params[0], s.params[1]);
}

Outcome gysin(const std::string& ring, const std::string& xi_text, const std::string& group, int max_degree) {
  Outcome o;
  auto r = shared_ring(ring);
  note_ring(o, r->presentation());
  if (xi_text.empty() == group.empty()) throw UsageError("give exactly one of --xi and --group");
  Polynomial xi = xi_text.empty() ? euler_class_for(r->presentation(), group) : parse_polynomial(r->presentation(), xi_text);
  json segs = json::array();
  for (const auto& s : gysin_series(*r, xi, max_degree)) segs.push_back(to_json(s));
  o.payload = {{"ring", ring}, {"xi", r->presentation().format(xi)}, {"segments", segs}};
  return o;
}

std::string fingerprint_csv(const std::vector<Fingerprint>& fps, const std::vector<std::string>& skipped) {
  std::string out = "group,degree,order,type\n";
  for (const auto& f : fps)
    for (const auto& e : f.entries)
      out += "\"" + f.label + "\"," + std::to_string(e.degree) + "," + (e.order ? e.order->get_str() : "infinite") +
             "," + (e.group ? e.group->to_string() : "ambiguous") + "\n";
  for (const auto& s : skipped) out += "\"" + s + "\",,not computed,\n";
  return out;
}

Outcome distinguish_cmd(bool order81, int thm13_n, int max_degree, bool csv) {
  Outcome o;
  std::vector<Fingerprint> fps;
  std::vector<std::string> skipped;
  bool ok = true;
  if (order81 == (thm13_n > 0)) throw UsageError("give exactly one of --order81 and --thm13 N");
  if (order81) {
    const int d = max_degree < 0 ? 6 : max_degree;
    fps = order81_fingerprints(d);
    skipped = order81_not_computed();
    note_ring(o, shared_ring("thm10.G")->presentation());
    json checks = json::array();
    for (const auto& c : order81_table_checks(*shared_ring("thm10.G"))) {
      ok &= c.pass;
      checks.push_back(to_json(c));
    }
    o.payload["order81_table"] = checks;
  } else {
    const int d = max_degree < 0 ? 12 : max_degree;
    for (int eps : {1, -1}) {
      const std::string name = "thm13.G(" + std::to_string(thm13_n) + "," + std::to_string(eps) + ")";
      auto r = shared_ring(name);
      note_ring(o, r->presentation());
      fps.push_back(ring_fingerprint("G(" + std::to_string(thm13_n) + "," + std::to_string(eps) + ")", *r, d));
    }
  }
  auto classes = distinguish(fps);
  if (order81) ok &= classes.size() == fps.size();
  json fj = json::array();
  for (const auto& f : fps) fj.push_back(to_json(f));
  o.payload["fingerprints"] = fj;
  o.payload["classes"] = classes;
  json nc = json::array();
  for (const auto& s : skipped) nc.push_back({{"group", s}, {"status", "not computed"}});
  o.payload["not_computed"] = nc;
  o.status = ok ? 0 : 1;
  o.verdict = std::to_string(fps.size()) + " computed fingerprints in " + std::to_string(classes.size()) + " classes";
  if (csv) o.csv = fingerprint_csv(fps, skipped);
  return o;
}

Outcome kunneth(const std::vector<long>& orders, int max_degree) {
  if (orders.empty()) throw UsageError("give --orders");
  for (long n : orders)
    if (n < 2) throw UsageError("cyclic orders must be at least 2");
  Outcome o;
  o.payload = to_json(kunneth_abelian(orders, max_degree));
  return o;
}

// Coefficient of t^d in (t^6 - t^4 + t^2) / ((1 - t^6)(1 - t^2)).
long series_coefficient(int d) {
  if (d % 2) return 0;
  auto c = [](int m) { return m < 0 ? 0 : m / 3 + 1; };
  return c(d / 2 - 1) - c(d / 2 - 2) + c(d / 2 - 3);
}

Outcome fixed_points(const std::string& action, int max_degree) {
  if (action != "thm6.Y" && action != "prop4.X") throw UsageError("--action must be thm6.Y or prop4.X");
  Outcome o;
  Order3Action a = make_action(builtin_map(action), max_degree);
  note_ring(o, a.map.source->presentation());
  bool ok = true;
  json rows = json::array();
  for (int d = 0; d <= max_degree; ++d) {
    FgAbGroup h = h1_c3(a, d);
    json row{{"degree", d}, {"fixed", group_json(fixed_subgroup(a, d))}, {"h1", group_json(h)}};
    if (action == "thm6.Y") {
      const long want = series_coefficient(d);
      const bool match = h.free_rank() == 0 && h.exponent() <= 3 && static_cast<long>(h.torsion().size()) == want;
      row["series_coefficient"] = want;
      row["matches_series"] = match;
      ok &= match;
    }
    rows.push_back(row);
  }
  o.payload = {{"action", action}, {"degrees", rows}};
  o.status = ok ? 0 : 1;
  if (action == "thm6.Y") o.verdict = ok ? "h1 matches the series" : "h1 differs from the series";
  return o;
}

Outcome verify_prop2(int n, int eps) {
  Outcome o;
  std::vector<std::pair<int, int>> cases;
  if (n > 0) {
    if (eps == 0) cases = {{n, 1}, {n, -1}};
    else cases = {{n, eps}};
  } else {
    cases = {{4, 1}, {4, -1}, {5, 1}, {5, -1}};
  }
  bool ok = true;
  json reports = json::array();
  for (auto [cn, ce] : cases) {
    RepRingReport r = verify_rep_ring_relations(cn, ce);
    ok &= r.all_hold;
    reports.push_back({{"n", cn},
                       {"eps", ce},
                       {"all_hold", r.all_hold},
                       {"assignments_tried", r.assignments_tried},
                       {"rows", r.rows},
                       {"relations", relations_json(r.relations)}});
  }
  o.payload["representation_ring"] = reports;
  json mod3 = json::array();
  std::vector<int> ns;
  for (auto [cn, ce] : cases)
    if (cn >= 5 && std::find(ns.begin(), ns.end(), cn) == ns.end()) ns.push_back(cn);
  for (int cn : ns) {
    Mod3MapReport m = verify_mod3_map(cn);
    ok &= m.well_defined;
    mod3.push_back({{"n", cn}, {"well_defined", m.well_defined}, {"relations", relations_json(m.relations)}});
  }
  o.payload["mod3_map"] = mod3;
  o.status = ok ? 0 : 1;
  o.verdict = ok ? "all relations hold" : "some relations fail";
  return o;
}

Outcome verify_prop7(const std::string& variant) {
  if (variant != "proof" && variant != "stated") throw UsageError("--variant must be proof or stated");
  Outcome o;
  bool ok = true;
  json maps = json::array();
  for (const auto& m : restriction_maps(variant)) {
    note_ring(o, m.source->presentation());
    note_ring(o, m.target->presentation());
    MapReport r = verify_map(m);
    ok &= r.passes;
    maps.push_back(map_report_json(r));
  }
  o.payload["maps"] = maps;
  o.status = ok ? 0 : 1;
  o.verdict = ok ? "verified" : "failed";
  return o;
}

json envelope(const std::vector<std::string>& argv) {
  return {{"schema_version", kSchemaVersion}, {"artifact", "coho3"}, {"version", kVersion}, {"command", argv}};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Integral cohomology and character computations for 3-groups"};
  app.require_subcommand(1);

  std::string spec, file, compare, ring, xi, group, preset, map_name, action = "thm6.Y", variant = "proof";
  std::vector<int> entry;
  std::vector<long> orders;
  int degree = 0, max_degree = -1, n = 0, eps = 0, thm13_n = 0;
  bool order81 = false, csv = false;

  auto* c_group = app.add_subcommand("group-info", "structure of a group");
  c_group->add_option("group", spec, "builtin group, e.g. G(4,1)");
  c_group->add_option("--file", file, ".grp file");

  auto* c_chartab = app.add_subcommand("chartab", "character table");
  c_chartab->add_option("group", spec, "builtin group");
  c_chartab->add_option("--file", file, ".grp file");
  c_chartab->add_option("--compare", compare, "builtin group to compare tables with");
  c_chartab->add_option("--entry", entry, "N EPS: look for eta(2 + eta^(eps 3^(N-3)))")->expected(2);

  auto* c_basis = app.add_subcommand("ring-basis", "one graded piece of a ring");
  c_basis->add_option("ring", spec, "builtin ring, e.g. thm10.G");
  c_basis->add_option("--file", file, ".ring file");
  c_basis->add_option("--degree", degree, "degree")->required();

  auto* c_hilbert = app.add_subcommand("hilbert", "graded pieces up to a degree");
  c_hilbert->add_option("ring", spec, "builtin ring");
  c_hilbert->add_option("--file", file, ".ring file");
  c_hilbert->add_option("--max-degree", max_degree, "largest degree (default 12)");

  auto* c_vmap = app.add_subcommand("verify-map", "check that a ring map respects relations");
  c_vmap->add_option("--map", map_name, "builtin map, e.g. cor14(5)");
  c_vmap->add_option("--preset", preset,
                     "prop7-resM, prop7-resP, cor14-5, cor14-6, prop4-X, thm6-Y, thm10-variant-proof, "
                     "thm10-variant-stated");
  c_vmap->add_option("--max-degree", max_degree, "also test bijectivity up to this degree");

  auto* c_iso = app.add_subcommand("iso-ring", "isomorphism of H*(G(n,1)) and H*(G(n,-1))");
  c_iso->add_option("--n", n, "n >= 5")->required();
  c_iso->add_option("--max-degree", max_degree, "default 12");

  auto* c_gysin = app.add_subcommand("gysin", "Gysin sequence for a circle bundle");
  c_gysin->add_option("--ring", ring, "builtin ring (default thm10.G)");
  c_gysin->add_option("--xi", xi, "Euler class, e.g. \"delta1 - beta\"");
  c_gysin->add_option("--group", group, "G(n,eps), G'(4) or wreath");
  c_gysin->add_option("--max-degree", max_degree, "default 6");

  auto* c_dist = app.add_subcommand("distinguish", "separate groups by cohomology fingerprints");
  c_dist->add_flag("--order81", order81, "the order-81 groups");
  c_dist->add_option("--thm13", thm13_n, "compare G(N,1) and G(N,-1) via their ring presentations");
  c_dist->add_option("--max-degree", max_degree, "default 6 (order81) or 12");
  c_dist->add_flag("--csv", csv, "print group,degree,order,type rows");

  auto* c_kun = app.add_subcommand("kunneth", "cohomology of a product of cyclic groups");
  c_kun->add_option("--orders", orders, "cyclic orders, e.g. 3,27")->delimiter(',')->required();
  c_kun->add_option("--max-degree", max_degree, "default 8");

  auto* c_fix = app.add_subcommand("fixed-points", "fixed points and H^1 of an order-3 action");
  c_fix->add_option("--action", action, "thm6.Y or prop4.X");
  c_fix->add_option("--max-degree", max_degree, "default 12");

  auto* c_p2 = app.add_subcommand("verify-prop2", "representation ring relations of G(n,eps)");
  c_p2->add_option("--n", n, "4 or 5 (default both)");
  c_p2->add_option("--eps", eps, "1 or -1 (default both)");

  auto* c_p7 = app.add_subcommand("verify-prop7", "restriction maps to the subgroup rings");
  c_p7->add_option("--variant", variant, "proof or stated");

  json report = envelope(args);
  Outcome out;
  auto fail = [&](const std::string& kind, const std::string& msg) {
    report["error"] = {{"kind", kind}, {"message", msg}};
    report["status"] = 2;
    std::cout << report.dump(2) << "\n";
    return 2;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }
  auto md = [&](int dflt) { return max_degree < 0 ? dflt : max_degree; };
  try {
    if (*c_group) out = group_info(spec, file);
    else if (*c_chartab) out = chartab(spec, file, compare, entry);
    else if (*c_basis) out = ring_basis(spec, file, degree);
    else if (*c_hilbert) out = hilbert(spec, file, md(12));
    else if (*c_vmap) out = verify_map_cmd(map_name, preset, max_degree);
    else if (*c_iso) out = iso_ring(n, md(12));
    else if (*c_gysin) out = gysin(ring.empty() ? "thm10.G" : ring, xi, group, md(6));
    else if (*c_dist) out = distinguish_cmd(order81, thm13_n, max_degree, csv);
    else if (*c_kun) out = kunneth(orders, md(8));
    else if (*c_fix) out = fixed_points(action, md(12));
    else if (*c_p2) out = verify_prop2(n, eps);
    else if (*c_p7) out = verify_prop7(variant);
  } catch (const SyntaxError& e) {
    return fail("syntax", e.what());
  } catch (const UnknownBuiltin& e) {
    return fail("unknown_builtin", e.what());
  } catch (const DegreeBoundExceeded& e) {
    return fail("degree_bound", e.what());
  } catch (const UsageError& e) {
    return fail("usage", e.what());
  } catch (const std::exception& e) {
    return fail("input", e.what());
  }

  if (!out.csv.empty()) {
    std::cout << out.csv;
    return out.status;
  }
  report["provenance"] = {
      {"sources", out.provenance},
      {"variants",
       {{"thm10.G", "delta1^2 = 3*delta2 - delta1*beta (thm10.G-stated keeps delta1^2 = 3*delta2)"},
        {"lemma8.gr", "gamma{3i+3} read as gamma^(3i+3)"},
        {"odd_squares", "squares of odd generators are 0"}}}};
  report["payload"] = out.payload;
  report["status"] = out.status;
  if (!out.verdict.empty()) report["verdict"] = out.verdict;
  std::cout << report.dump(2) << "\n";
  return out.status;
}
