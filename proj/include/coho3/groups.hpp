#pragma once

// Finite p-groups given by power-commutator presentations, materialized as
// multiplication tables for the structural computations.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coho3/linalg.hpp"

namespace coho3 {

class BadParameter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InfiniteKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InconsistentPresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normal-form exponent vector (GroupWord): 0 <= e_i < relative order of g_i.
using Exponents = std::vector<int>;

struct WordFactor {
  std::size_t gen;
  long power;
};
using Word = std::vector<WordFactor>;

// Largest group order handled by the enumeration-based routines.
inline constexpr std::size_t kEnumerationBound = 2187;  // 3^7

class PcPresentation {
 public:
  struct Generator {
    std::string name;
    int order;  // relative order
  };

  PcPresentation() = default;
  PcPresentation(std::string name, std::vector<Generator> gens);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<std::size_t> find(std::string_view name) const;

  // g_i^{order_i} = value, value a normal form in <g_{i+1}, ...>.
  void set_power(std::size_t i, Exponents value);
  const Exponents& power(std::size_t i) const { return power_[i]; }
  // [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i = value for i < j, value in <g_{i+1}, ...>.
  void set_commutator(std::size_t j, std::size_t i, Exponents value);
  const Exponents& commutator(std::size_t j, std::size_t i) const;

  // Product of the relative orders; saturates at SIZE_MAX.
  std::size_t order() const;
  Exponents identity() const { return Exponents(gens_.size(), 0); }
  Exponents generator(std::size_t i) const;
  bool is_identity(const Exponents& e) const;
  void validate_exponents(const Exponents& e) const;

  // Relation matrix of exponent sums (one column per nontrivial relation);
  // its cokernel is the abelianization.
  IntMatrix abelianization_relations() const;

  friend bool operator==(const PcPresentation& a, const PcPresentation& b);

 private:
  std::string name_;
  std::vector<Generator> gens_;
  std::vector<Exponents> power_;
  std::vector<std::vector<Exponents>> comm_;  // comm_[j][i], i < j
};

// Collection in a pc presentation. Elements are indexed by mixed radix over
// the exponent vector; right multiplication by a generator is memoized.
class Collector {
 public:
  explicit Collector(PcPresentation p);

  std::size_t order() const { return order_; }
  const PcPresentation& presentation() const { return p_; }
  std::uint32_t index(const Exponents& e) const;
  Exponents exponents(std::uint32_t x) const;

  std::uint32_t right_mul(std::uint32_t x, std::size_t gen);
  std::uint32_t mul(std::uint32_t x, std::uint32_t y);
  std::uint32_t inverse(std::uint32_t x);
  std::uint32_t evaluate(const Word& w);

 private:
  std::uint32_t gen_power(std::size_t gen, long k);

  PcPresentation p_;
  std::size_t order_ = 1;
  std::vector<std::uint32_t> stride_;
  std::vector<std::int64_t> memo_;
  std::vector<std::uint32_t> power_index_;
  std::vector<std::vector<std::uint32_t>> conj_;  // conj_[i][j] = g_j^{g_i}
};

// Normal form of w1 * w2 in the group presented by p.
Exponents multiply(const Exponents& w1, const Exponents& w2, const PcPresentation& p);

// A finite group given by its full multiplication table; element 0 is the
// identity.
class FiniteGroup {
 public:
  using Element = std::uint32_t;

  FiniteGroup(std::size_t order, std::vector<std::uint16_t> table, std::vector<Element> generators);

  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element power(Element a, long k) const;
  Element commutator(Element a, Element b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Element conjugate(Element a, Element by) const { return mul(mul(inv(by), a), by); }
  int element_order(Element a) const { return element_order_[a]; }
  const std::vector<Element>& generators() const { return generators_; }

  // Subgroup generated by gens, as a sorted element list.
  std::vector<Element> closure(std::span<const Element> gens) const;
  std::vector<Element> normal_closure(std::span<const Element> gens) const;
  bool is_normal(std::span<const Element> subgroup) const;
  bool is_abelian() const;
  std::vector<Element> center() const;
  std::vector<Element> derived_subgroup() const;
  std::vector<Element> frattini_subgroup() const;
  int exponent() const;
  // Prime dividing the order; throws BadParameter unless the order is a prime power.
  int prime() const;

  const std::vector<std::vector<Element>>& conjugacy_classes() const { return classes_; }
  std::size_t class_of(Element a) const { return class_of_[a]; }
  std::vector<std::size_t> class_sizes() const;

  // Subgroup as a standalone group; elements[i] becomes element i.
  FiniteGroup subgroup(std::span<const Element> elements) const;
  // Quotient by a normal subgroup; coset_of[g] gives the image of g.
  FiniteGroup quotient(std::span<const Element> normal, std::vector<Element>* coset_of = nullptr) const;

  // Invariant factors of an abelian subgroup (given as its element list).
  IntVector abelian_invariants(std::span<const Element> subgroup) const;

 private:
  std::size_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::vector<int> element_order_;
  std::vector<Element> generators_;
  std::vector<std::vector<Element>> classes_;
  std::vector<std::size_t> class_of_;
};

// Presentation plus its materialized group table (orders up to kEnumerationBound).
class PcGroup {
 public:
  using Element = FiniteGroup::Element;

  explicit PcGroup(PcPresentation p);

  const PcPresentation& presentation() const { return p_; }
  const FiniteGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }
  Element element(const Exponents& e) const;
  Exponents exponents(Element x) const;
  Element generator(std::size_t i) const { return element(p_.generator(i)); }
  Element evaluate(const Word& w) const;
  std::string format(Element x) const;  // e.g. "A*B^3*C"

 private:
  PcPresentation p_;
  std::vector<std::size_t> stride_;
  FiniteGroup group_;
};

// Pc presentation of a finite p-group (relative orders all p), with the
// normal form of every element of g in the new presentation.
struct PcConversion {
  PcPresentation presentation;
  std::vector<Exponents> normal_forms;
};
PcConversion to_pc_presentation(const FiniteGroup& g, std::string name);

// Structural invariants.
FgAbGroup center(const PcGroup& g);
FgAbGroup abelianization(const PcGroup& g);
std::vector<PcGroup::Element> derived_subgroup(const PcGroup& g);
int exponent(const PcGroup& g);
std::vector<std::size_t> conjugacy_class_sizes(const PcGroup& g);  // sorted

// Builtin presentations.
enum class Family { G, GPrime, E, M, N, P, Wreath };
Family parse_family(std::string_view name);
std::string family_name(Family f);
PcPresentation make_group(Family family, int n = 4, int eps = 1);

// Elements X^i Y^j Z^k t of the Lie group containing every G(n,eps):
// X^3 = Y^3 = Z^3 = 1, T central, [Y,Z] = 1, [Y,X] = Z, [Z,X] = omega.
// t = exp(2 pi i * numer / denom).
struct LieElement {
  int i = 0, j = 0, k = 0;
  Integer numer = 0;
  Integer denom = 1;

  LieElement operator*(const LieElement& o) const;
  friend bool operator==(const LieElement& a, const LieElement& b);
};

// c_delta1 * delta1 + c_alpha * alpha + c_beta * beta in Hom(G~, T):
// delta1 maps X^iY^jZ^k t to t^3, alpha to omega^i, beta to omega^j.
struct CircleHom {
  Integer c_delta1 = 0;
  int c_alpha = 0;  // mod 3
  int c_beta = 0;   // mod 3

  // Value in Q/Z as numer/denom, reduced to [0, 1).
  std::pair<Integer, Integer> evaluate(const LieElement& x) const;
};

struct CircleKernel {
  PcPresentation presentation;
  std::vector<LieElement> elements;  // indexed like the materialized group
  FiniteGroup group;
};

// The finite kernel of h, as a pc presentation. Throws InfiniteKernel when
// c_delta1 == 0, BadParameter unless |c_delta1| is a power of 3 (otherwise
// the kernel is not a 3-group) and TooLarge past the enumeration bound.
CircleKernel kernel_of_circle_hom(const CircleHom& h);

// Isomorphism testing by fingerprint filter and backtracking over images of
// a minimal generating set.
struct IsoResult {
  bool isomorphic = false;
  std::vector<Exponents> generator_images;  // images of the pc generators of the first group
  std::string reason;                       // which invariant separated the groups
};
IsoResult isomorphic(const PcGroup& a, const PcGroup& b);
// Checks that images satisfy every relation of a's presentation and generate b.
bool verify_witness(const PcGroup& a, const PcGroup& b, const std::vector<Exponents>& images);

struct GroupFingerprint {
  std::size_t order;
  int exponent;
  IntVector center;
  IntVector abelianization;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> element_order_counts;  // index = log_p(order)

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};
GroupFingerprint fingerprint(const FiniteGroup& g);

struct MaximalSubgroup {
  std::vector<PcGroup::Element> elements;
  PcPresentation presentation;
  std::string contains;  // "B", "A", "AB", "AB^2" for the G-family, else ""
  bool abelian = false;
  IntVector abelian_invariants;  // when abelian
};
std::vector<MaximalSubgroup> maximal_subgroups(const PcGroup& g);

// Quotient of g by the normal subgroup generated by the given elements.
PcPresentation quotient_presentation(const PcGroup& g, std::span<const PcGroup::Element> normal_gens,
                                     std::string name);

void to_json(nlohmann::json& j, const GroupFingerprint& f);

}  // namespace coho3
