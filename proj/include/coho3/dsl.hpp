#pragma once

// Text formats for group and ring presentations, and the builtin corpus.
//
//   group G41 { gen A:3, B:27, C:3; rel [B,C]=1, [B,A]=C, [C,A]=B^9; }
//   ring M { gen tau deg 2, beta deg 2, gamma deg 2, mu deg 3; rel 3*beta, 3*gamma, 3*mu; }
//
// Group relations are commutators [x,y] (later generator first unless the
// value is 1) or powers x^order, equated to a normal-form word in later
// generators; a bare relation means "= 1". Ring relations are polynomial
// equations; a bare expression means "= 0". '#' starts a comment.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coho3/groups.hpp"
#include "coho3/rings.hpp"

namespace coho3 {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};
class UnknownIdentifier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};
class InhomogeneousRelation : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};
class UnknownBuiltin : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PcPresentation parse_group(std::string_view text);
RingPresentation parse_ring(std::string_view text);
// A single homogeneous-or-not polynomial over the generators of r.
Polynomial parse_polynomial(const RingPresentation& r, std::string_view text);

// Canonical text; parse(print(x)) reproduces x.
std::string print_group(const PcPresentation& p);
std::string print_ring(const RingPresentation& r);

// Builtin names with parameters, e.g. "thm13.G(5,-1)", "G(4,1)", "prop4.M".
struct BuiltinSpec {
  std::string name;
  std::vector<int> params;
};
BuiltinSpec parse_builtin_spec(std::string_view s);

// Rings: prop4.M, thm6.P, thm6.Pfin(n), thm10.G, thm10.G-stated, lemma8.gr,
// thm13.G(n,eps).
RingPresentation builtin_ring(std::string_view spec);
// Groups: G(n,eps), G'(4), E, M(n,eps), N(n,eps), P(n,eps), wreath.
PcPresentation builtin_group(std::string_view spec);
std::vector<std::string> builtin_ring_names();
std::vector<std::string> builtin_group_names();

// Maps between builtin rings:
//   prop7.resM       thm10.G -> prop4.M
//   prop7.resP       thm10.G -> thm6.P
//   cor14(n)         thm13.G(n,-1) -> thm13.G(n,1)
//   prop4.X, thm6.Y  the order-3 actions
RingMap builtin_map(std::string_view spec);
std::vector<std::string> builtin_map_names();

// Shared ring instances so graded pieces are computed once per process.
std::shared_ptr<const GradedRing> shared_ring(std::string_view spec);

}  // namespace coho3
