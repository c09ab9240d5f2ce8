#pragma once

// Cohomology of finite groups from the ring engine: the Gysin sequence of a
// circle bundle BG -> BG~ with Euler class xi, Kunneth for finite abelian
// groups, and fingerprint comparison.

#include <optional>
#include <string>
#include <vector>

#include "coho3/rings.hpp"

namespace coho3 {

// H^m(G) sits in 0 -> H^m(G~)/xi H^{m-2}(G~) -> H^m(G) -> ker(xi : H^{m-1} -> H^{m+1}) -> 0.
struct GysinSegment {
  int m = 0;
  FgAbGroup coker_part;
  FgAbGroup ker_part;
  std::optional<Integer> total_order;  // nullopt when infinite
  // Set when one side is trivial, so H^m(G) is the other side. Two nontrivial
  // sides leave the extension open, even when both are elementary abelian.
  std::optional<FgAbGroup> iso_type;
};

// Segments for first <= m <= max_degree - 1 (the kernel part needs degree m+1).
std::vector<GysinSegment> gysin_series(const GradedRing& r, const Polynomial& xi, int max_degree, int first = 2);

// Euler classes of the circle bundles used for the subgroups.
Polynomial euler_class_G(const RingPresentation& thm10, int n, int eps);  // 3^{n-4} delta1 - eps beta
Polynomial euler_class_M(const RingPresentation& prop4, int n, int eps);  // 3^{n-3} tau - eps beta
Polynomial euler_class_P(const RingPresentation& thm6, int n);            // 3^{n-4} delta1

// For every multiplication map in the window: free ranks add up across
// kernel, image and cokernel, and orders multiply when the groups are finite.
struct ExactnessReport {
  std::vector<std::string> failures;
  bool consistent() const { return failures.empty(); }
};
ExactnessReport exactness_bookkeeping(const GradedRing& r, const Polynomial& xi, int max_degree);

struct FingerprintEntry {
  int degree = 0;
  std::optional<Integer> order;     // nullopt: infinite
  std::optional<Integer> exponent;  // only when the group is determined
  std::optional<FgAbGroup> group;   // only when determined
};
struct Fingerprint {
  std::string label;
  std::string source;  // "kunneth", "gysin", "ring"
  std::vector<FingerprintEntry> entries;  // degrees 0..D
};

// prod C_{n_i}; seed H*(C_n) = Z, 0, C_n, 0, C_n, ...
Fingerprint kunneth_abelian(const std::vector<long>& orders, int max_degree);
Fingerprint gysin_fingerprint(std::string label, const GradedRing& r, const Polynomial& xi, int max_degree);
// Graded pieces of a ring taken as the cohomology itself.
Fingerprint ring_fingerprint(std::string label, const GradedRing& r, int max_degree);

// Fingerprints differ when some degree has different orders, or both sides
// are determined there and differ as groups.
bool distinguishable(const Fingerprint& a, const Fingerprint& b);
// Classes of labels that no fingerprint comparison separates (connected
// components of the indistinguishability relation), in input order.
std::vector<std::vector<std::string>> distinguish(const std::vector<Fingerprint>& fps);

// The order-81 groups handled here: five abelian groups via Kunneth and the
// four kernels of delta1 - beta, delta1 + beta, delta1 + beta + alpha, delta1.
std::vector<Fingerprint> order81_fingerprints(int max_degree = 6);
// The non-abelian order-81 groups outside the circle-bundle family.
std::vector<std::string> order81_not_computed();

// The low-degree checks separating the four circle-bundle groups of order
// 81, run against a ring presenting H*(G~) (either relation variant).
struct TableCheck {
  std::string label;
  std::string expected;
  std::string observed;
  bool pass = false;
};
std::vector<TableCheck> order81_table_checks(const GradedRing& g);

nlohmann::json to_json(const GysinSegment& s);
nlohmann::json to_json(const TableCheck& c);
nlohmann::json to_json(const Fingerprint& f);

}  // namespace coho3
