#include <limits>
#include <utility>

#include "coho3/groups.hpp"

namespace coho3 {

PcPresentation::PcPresentation(std::string name, std::vector<Generator> gens)
    : name_(std::move(name)), gens_(std::move(gens)) {
  const std::size_t k = gens_.size();
  for (const auto& g : gens_)
    if (g.order < 2) throw BadParameter("relative order of " + g.name + " must be at least 2");
  power_.assign(k, Exponents(k, 0));
  comm_.resize(k);
  for (std::size_t j = 0; j < k; ++j) comm_[j].assign(j, Exponents(k, 0));
}

std::optional<std::size_t> PcPresentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

void PcPresentation::validate_exponents(const Exponents& e) const {
  if (e.size() != gens_.size()) throw BadParameter("exponent vector has wrong length");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] >= gens_[i].order)
      throw BadParameter("exponent of " + gens_[i].name + " out of range");
}

static void require_below(const Exponents& value, std::size_t i, const std::string& what) {
  for (std::size_t l = 0; l <= i && l < value.size(); ++l)
    if (value[l] != 0) throw BadParameter(what + " must lie in the subgroup of later generators");
}

void PcPresentation::set_power(std::size_t i, Exponents value) {
  validate_exponents(value);
  require_below(value, i, "power relation of " + gens_[i].name);
  power_[i] = std::move(value);
}

void PcPresentation::set_commutator(std::size_t j, std::size_t i, Exponents value) {
  if (i >= j) throw BadParameter("commutator relations need i < j");
  validate_exponents(value);
  require_below(value, i, "commutator [" + gens_[j].name + "," + gens_[i].name + "]");
  comm_[j][i] = std::move(value);
}

const Exponents& PcPresentation::commutator(std::size_t j, std::size_t i) const {
  if (i >= j) throw BadParameter("commutator relations need i < j");
  return comm_[j][i];
}

std::size_t PcPresentation::order() const {
  std::size_t n = 1;
  for (const auto& g : gens_) {
    if (n > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(g.order))
      return std::numeric_limits<std::size_t>::max();
    n *= static_cast<std::size_t>(g.order);
  }
  return n;
}

Exponents PcPresentation::generator(std::size_t i) const {
  Exponents e(gens_.size(), 0);
  e.at(i) = 1;
  return e;
}

bool PcPresentation::is_identity(const Exponents& e) const {
  for (int x : e)
    if (x != 0) return false;
  return true;
}

IntMatrix PcPresentation::abelianization_relations() const {
  const std::size_t k = gens_.size();
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector c(k, 0);
    c[i] = gens_[i].order;
    for (std::size_t l = 0; l < k; ++l) c[l] -= power_[i][l];
    cols.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (is_identity(comm_[j][i])) continue;
      IntVector c(k, 0);
      for (std::size_t l = 0; l < k; ++l) c[l] -= comm_[j][i][l];
      cols.push_back(std::move(c));
    }
  return IntMatrix::from_columns(cols, k);
}

bool operator==(const PcPresentation& a, const PcPresentation& b) {
  if (a.gens_.size() != b.gens_.size()) return false;
  for (std::size_t i = 0; i < a.gens_.size(); ++i)
    if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].order != b.gens_[i].order) return false;
  return a.power_ == b.power_ && a.comm_ == b.comm_;
}

// --- collection ---

namespace {
constexpr std::size_t kCollectorBound = std::size_t{1} << 22;
}

Collector::Collector(PcPresentation p) : p_(std::move(p)) {
  const std::size_t k = p_.size();
  order_ = p_.order();
  if (order_ > kCollectorBound) throw TooLarge("group order too large for collection tables");
  stride_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;)
    stride_[i - 1] = stride_[i] * static_cast<std::size_t>(p_.generators()[i].order);
  memo_.assign(order_ * k, -1);
  power_index_.resize(k);
  for (std::size_t i = 0; i < k; ++i) power_index_[i] = index(p_.power(i));

  // Conjugates g_j^{g_i} = g_j [g_j, g_i], built from the bottom of the series
  // up so that every product only needs relations of later generators.
  conj_.assign(k, std::vector<std::uint32_t>(k, 0));
  for (std::size_t i = k; i-- > 0;)
    for (std::size_t j = i + 1; j < k; ++j)
      conj_[i][j] = mul(static_cast<std::uint32_t>(stride_[j]), index(p_.commutator(j, i)));
}

std::uint32_t Collector::index(const Exponents& e) const {
  p_.validate_exponents(e);
  std::size_t x = 0;
  for (std::size_t i = 0; i < e.size(); ++i) x += static_cast<std::size_t>(e[i]) * stride_[i];
  return static_cast<std::uint32_t>(x);
}

Exponents Collector::exponents(std::uint32_t x) const {
  Exponents e(p_.size());
  std::size_t r = x;
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<int>(r / stride_[i]);
    r %= stride_[i];
  }
  return e;
}

std::uint32_t Collector::right_mul(std::uint32_t x, std::size_t j) {
  std::int64_t& slot = memo_[static_cast<std::size_t>(x) * p_.size() + j];
  if (slot >= 0) return static_cast<std::uint32_t>(slot);

  // x = prefix * g_j^e * suffix, suffix in G_{>j}; then
  // x g_j = prefix * g_j^{e+1} * suffix^{g_j}.
  const std::size_t high = x - x % (stride_[j] * p_.generators()[j].order);
  const std::size_t e = (x / stride_[j]) % p_.generators()[j].order;
  const std::size_t suffix = x % stride_[j];

  std::uint32_t conj = 0;
  std::size_t rest = suffix;
  for (std::size_t l = j + 1; l < p_.size(); ++l) {
    const std::size_t el = rest / stride_[l];
    rest %= stride_[l];
    for (std::size_t t = 0; t < el; ++t) conj = mul(conj, conj_[j][l]);
  }

  std::size_t result;
  if (e + 1 < static_cast<std::size_t>(p_.generators()[j].order)) {
    result = high + (e + 1) * stride_[j] + conj;
  } else {
    result = high + mul(power_index_[j], conj);
  }
  slot = static_cast<std::int64_t>(result);
  return static_cast<std::uint32_t>(result);
}

std::uint32_t Collector::mul(std::uint32_t x, std::uint32_t y) {
  std::size_t rest = y;
  for (std::size_t l = 0; l < p_.size(); ++l) {
    const std::size_t el = rest / stride_[l];
    rest %= stride_[l];
    for (std::size_t t = 0; t < el; ++t) x = right_mul(x, l);
  }
  return x;
}

std::uint32_t Collector::inverse(std::uint32_t x) {
  // x has finite order; x^{-1} = x^{ord - 1}.
  std::uint32_t prev = 0, cur = x;
  for (std::size_t steps = 0; cur != 0; ++steps) {
    if (steps > order_) throw InconsistentPresentation("powers of an element never reach the identity");
    prev = cur;
    cur = mul(cur, x);
  }
  return x == 0 ? 0 : prev;
}

std::uint32_t Collector::gen_power(std::size_t gen, long k) {
  std::uint32_t g = static_cast<std::uint32_t>(stride_.at(gen));
  if (k < 0) {
    g = inverse(g);
    k = -k;
  }
  std::uint32_t r = 0;
  for (long t = 0; t < k; ++t) r = mul(r, g);
  return r;
}

std::uint32_t Collector::evaluate(const Word& w) {
  std::uint32_t r = 0;
  for (const auto& f : w) {
    if (f.gen >= p_.size()) throw BadParameter("word uses an unknown generator");
    r = mul(r, gen_power(f.gen, f.power));
  }
  return r;
}

Exponents multiply(const Exponents& w1, const Exponents& w2, const PcPresentation& p) {
  Collector c(p);
  return c.exponents(c.mul(c.index(w1), c.index(w2)));
}

}  // namespace coho3
