#include <cctype>
#include <set>

#include "coho3/dsl.hpp"

namespace coho3 {

namespace {

struct Token {
  enum Kind { Ident, Int, String, Punct, End } kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'' ||
                              s[j] == '.'))
        ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
      if (j >= s.size() || s[j] != '"') throw SyntaxError(line, col, "unterminated string");
      out.push_back({Token::String, std::string(s.substr(i + 1, j - i - 1)), line, col});
      advance(j + 1 - i);
    } else if (std::string_view("{};,:=+-*^()[]").find(c) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(std::string_view punct) const { return peek().kind == Token::Punct && peek().text == punct; }
  bool at_word(std::string_view w) const { return peek().kind == Token::Ident && peek().text == w; }
  bool accept(std::string_view punct) {
    if (!at(punct)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().line, peek().col, msg); }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'" + found());
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "'" + found());
    next();
  }
  std::string ident() {
    if (peek().kind != Token::Ident) fail("expected an identifier" + found());
    return next().text;
  }
  std::string name() {
    if (peek().kind == Token::String) return next().text;
    return ident();
  }
  long integer() {
    if (peek().kind != Token::Int) fail("expected an integer" + found());
    const Token& t = peek();
    try {
      long v = std::stol(t.text);
      next();
      return v;
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  std::string found() const {
    return peek().kind == Token::End ? " but reached the end of input" : " but found '" + peek().text + "'";
  }
  void expect_end() {
    if (peek().kind != Token::End) fail("unexpected trailing input" + found());
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// --- ring expressions ---

class RingExprParser {
 public:
  RingExprParser(Parser& p, const RingPresentation& r) : p_(p), r_(r) {}

  Polynomial expr() {
    Polynomial acc;
    bool neg = false;
    if (p_.accept("-")) neg = true;
    else p_.accept("+");
    Polynomial t = term();
    acc = neg ? -t : t;
    while (p_.at("+") || p_.at("-")) {
      const bool minus = p_.next().text == "-";
      Polynomial u = term();
      acc = minus ? acc - u : acc + u;
    }
    return acc;
  }

 private:
  Polynomial term() {
    Polynomial acc = factor();
    while (p_.accept("*")) acc = r_.multiply(acc, factor());
    return acc;
  }
  Polynomial factor() {
    Polynomial base = primary();
    if (p_.accept("^")) {
      long k = p_.integer();
      if (k > 64) p_.fail("exponent too large");
      base = r_.power(base, static_cast<int>(k));
    }
    return base;
  }
  Polynomial primary() {
    const Token& t = p_.peek();
    if (t.kind == Token::Int) return r_.constant(Integer(p_.next().text));
    if (t.kind == Token::Ident) {
      auto i = r_.find(t.text);
      if (!i) throw UnknownIdentifier(t.line, t.col, "unknown generator '" + t.text + "'");
      p_.next();
      return r_.generator(*i);
    }
    if (p_.accept("(")) {
      Polynomial e = expr();
      p_.expect(")");
      return e;
    }
    if (p_.accept("-")) return -factor();
    p_.fail("expected a term" + p_.found());
  }

  Parser& p_;
  const RingPresentation& r_;
};

bool plain_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.')) return false;
  return s != "gen" && s != "rel" && s != "deg";
}

std::string quoted_name(const std::string& s) { return plain_identifier(s) ? s : "\"" + s + "\""; }

}  // namespace

// --- rings ---

RingPresentation parse_ring(std::string_view text) {
  Parser p(text);
  p.expect_word("ring");
  std::string name = p.name();
  p.expect("{");
  std::vector<RingGenerator> gens;
  std::set<std::string> seen;
  if (!p.at_word("gen")) p.fail("expected 'gen'" + p.found());
  p.next();
  do {
    const Token& t = p.peek();
    std::string g = p.ident();
    if (!seen.insert(g).second) throw SyntaxError(t.line, t.col, "duplicate generator '" + g + "'");
    p.expect_word("deg");
    long d = p.integer();
    if (d < 1 || d > 64) throw SyntaxError(t.line, t.col, "generator degree must lie in 1..64");
    gens.push_back({g, static_cast<int>(d)});
  } while (p.accept(","));
  p.expect(";");

  RingPresentation r(name, gens);
  while (p.at_word("rel")) {
    p.next();
    if (p.accept(";")) continue;
    do {
      const Token start = p.peek();
      RingExprParser e(p, r);
      Polynomial lhs = e.expr();
      Polynomial rhs;
      bool has_rhs = false;
      if (p.accept("=")) {
        rhs = e.expr();
        has_rhs = true;
      }
      Polynomial rel = lhs - rhs;
      try {
        std::optional<int> dl = r.degree(lhs), dr = r.degree(rhs);
        if (dl && dr && *dl != *dr)
          throw NotHomogeneous("sides have degrees " + std::to_string(*dl) + " and " + std::to_string(*dr));
        r.degree(rel);
      } catch (const NotHomogeneous& ex) {
        throw InhomogeneousRelation(start.line, start.col, std::string("inhomogeneous relation: ") + ex.what());
      }
      std::string label = has_rhs ? r.format(lhs) + " = " + r.format(rhs) : r.format(lhs) + " = 0";
      r.add_relation(rel, label);
    } while (p.accept(","));
    p.expect(";");
  }
  p.expect("}");
  p.expect_end();
  return r;
}

Polynomial parse_polynomial(const RingPresentation& r, std::string_view text) {
  Parser p(text);
  RingExprParser e(p, r);
  Polynomial out = e.expr();
  p.expect_end();
  return out;
}

std::string print_ring(const RingPresentation& r) {
  std::string s = "ring " + quoted_name(r.name()) + " {\n  gen ";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += r.generators()[i].name + " deg " + std::to_string(r.generators()[i].degree);
  }
  s += ";\n";
  if (!r.relations().empty()) {
    s += "  rel ";
    for (std::size_t i = 0; i < r.relations().size(); ++i) {
      if (i) s += ",\n      ";
      s += r.format(r.relations()[i]);
    }
    s += ";\n";
  }
  s += "}\n";
  return s;
}

// --- groups ---

namespace {

struct RawValue {
  std::vector<std::pair<std::size_t, long>> factors;
  int line, col;
};

// Word of generator powers on the right of a group relation.
RawValue parse_group_word(Parser& p, const std::vector<PcPresentation::Generator>& gens) {
  RawValue v{{}, p.peek().line, p.peek().col};
  if (p.peek().kind == Token::Int) {
    if (p.peek().text != "1") p.fail("only the integer 1 may appear in a group word");
    p.next();
    return v;
  }
  do {
    const Token& t = p.peek();
    std::string g = p.ident();
    std::size_t idx = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == g) idx = i;
    if (idx == gens.size()) throw UnknownIdentifier(t.line, t.col, "unknown generator '" + g + "'");
    long k = 1;
    if (p.accept("^")) {
      const bool neg = p.accept("-");
      k = p.integer();
      if (neg) k = -k;
    }
    v.factors.push_back({idx, k});
  } while (p.accept("*"));
  return v;
}

}  // namespace

PcPresentation parse_group(std::string_view text) {
  Parser p(text);
  p.expect_word("group");
  std::string name = p.name();
  p.expect("{");
  std::vector<PcPresentation::Generator> gens;
  if (!p.at_word("gen")) p.fail("expected 'gen'" + p.found());
  p.next();
  do {
    const Token& t = p.peek();
    std::string g = p.ident();
    for (const auto& x : gens)
      if (x.name == g) throw SyntaxError(t.line, t.col, "duplicate generator '" + g + "'");
    p.expect(":");
    long o = p.integer();
    if (o < 2 || o > 2187) throw SyntaxError(t.line, t.col, "generator order must lie in 2..2187");
    gens.push_back({g, static_cast<int>(o)});
  } while (p.accept(","));
  p.expect(";");

  auto index_of = [&](const Token& t) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == t.text) return i;
    throw UnknownIdentifier(t.line, t.col, "unknown generator '" + t.text + "'");
  };

  struct Pending {
    bool power;
    std::size_t j, i;  // commutator [g_j, g_i] or power of g_i
    RawValue value;
  };
  std::vector<Pending> pending;
  while (p.at_word("rel")) {
    p.next();
    if (p.accept(";")) continue;
    do {
      const Token start = p.peek();
      Pending rel{};
      if (p.accept("[")) {
        const Token a = p.peek();
        p.ident();
        p.expect(",");
        const Token b = p.peek();
        p.ident();
        p.expect("]");
        std::size_t ia = index_of(a), ib = index_of(b);
        if (ia == ib) throw SyntaxError(start.line, start.col, "commutator of a generator with itself");
        rel = {false, std::max(ia, ib), std::min(ia, ib), {}};
        if (p.accept("=")) rel.value = parse_group_word(p, gens);
        if (ia < ib && !rel.value.factors.empty())
          throw SyntaxError(start.line, start.col, "write nontrivial commutators with the later generator first");
      } else {
        const Token g = p.peek();
        p.ident();
        std::size_t i = index_of(g);
        p.expect("^");
        long k = p.integer();
        if (k != gens[i].order)
          throw SyntaxError(start.line, start.col, "power relations must use the declared order of " + g.text);
        rel = {true, i, i, {}};
        if (p.accept("=")) rel.value = parse_group_word(p, gens);
      }
      pending.push_back(std::move(rel));
    } while (p.accept(","));
    p.expect(";");
  }
  p.expect("}");
  p.expect_end();

  PcPresentation out(name, gens);
  std::vector<bool> trivial_power(gens.size(), true);
  for (const auto& r : pending)
    if (r.power && !r.value.factors.empty()) trivial_power[r.i] = false;
  for (const auto& r : pending) {
    Exponents e(gens.size(), 0);
    std::size_t last = r.i;
    for (const auto& [g, k] : r.value.factors) {
      if (g <= last)
        throw SyntaxError(r.value.line, r.value.col,
                          "the value must be a normal-form word in generators after " + gens[r.i].name);
      last = g;
      long v = k;
      if (v < 0 || v >= gens[g].order) {
        if (!trivial_power[g])
          throw SyntaxError(r.value.line, r.value.col, "exponent of " + gens[g].name + " must lie in 0.." +
                                                           std::to_string(gens[g].order - 1));
        v = ((v % gens[g].order) + gens[g].order) % gens[g].order;
      }
      e[g] = static_cast<int>(v);
    }
    if (r.power) out.set_power(r.i, e);
    else out.set_commutator(r.j, r.i, e);
  }
  return out;
}

std::string print_group(const PcPresentation& p) {
  const auto& gens = p.generators();
  auto word = [&](const Exponents& e) {
    std::string s;
    for (std::size_t g = 0; g < e.size(); ++g) {
      if (e[g] == 0) continue;
      if (!s.empty()) s += "*";
      s += gens[g].name;
      if (e[g] != 1) s += "^" + std::to_string(e[g]);
    }
    return s.empty() ? std::string("1") : s;
  };
  std::string s = "group " + quoted_name(p.name()) + " {\n  gen ";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i].name + ":" + std::to_string(gens[i].order);
  }
  s += ";\n";
  std::vector<std::string> rels;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!p.is_identity(p.power(i)))
      rels.push_back(gens[i].name + "^" + std::to_string(gens[i].order) + "=" + word(p.power(i)));
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!p.is_identity(p.commutator(j, i)))
        rels.push_back("[" + gens[j].name + "," + gens[i].name + "]=" + word(p.commutator(j, i)));
  }
  if (!rels.empty()) {
    s += "  rel ";
    for (std::size_t k = 0; k < rels.size(); ++k) s += (k ? ", " : "") + rels[k];
    s += ";\n";
  }
  s += "}\n";
  return s;
}

// --- builtin specs ---

BuiltinSpec parse_builtin_spec(std::string_view s) {
  BuiltinSpec out;
  auto open = s.find('(');
  out.name = std::string(s.substr(0, open));
  if (open == std::string_view::npos) return out;
  if (s.back() != ')') throw UnknownBuiltin("malformed builtin name '" + std::string(s) + "'");
  std::string_view args = s.substr(open + 1, s.size() - open - 2);
  while (!args.empty()) {
    auto comma = args.find(',');
    std::string piece(args.substr(0, comma));
    try {
      std::size_t used = 0;
      int v = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.params.push_back(v);
    } catch (const std::exception&) {
      throw UnknownBuiltin("malformed builtin parameter '" + piece + "'");
    }
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace coho3
