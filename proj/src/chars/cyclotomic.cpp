#include <algorithm>

#include "coho3/chars.hpp"

namespace coho3 {

namespace {

void require_power_of_three(long n) {
  if (n < 1) throw BadParameter("conductor must be positive");
  long m = n;
  while (m % 3 == 0) m /= 3;
  if (m != 1) throw BadParameter("conductor must be a power of 3");
}

long mod(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

}  // namespace

Cyclotomic::Cyclotomic(long v) {
  if (v != 0) coeffs_[0] = v;
}

Cyclotomic::Cyclotomic(const Rational& v) {
  if (v != 0) coeffs_[0] = v;
}

Cyclotomic Cyclotomic::from_raw(long conductor, std::map<long, Rational> raw) {
  Cyclotomic out;
  out.conductor_ = conductor;
  if (conductor == 1) {
    Rational s = 0;
    for (auto& [k, c] : raw) s += c;
    if (s != 0) out.coeffs_[0] = s;
    return out;
  }
  // zeta^k = -zeta^{k - N/3} - zeta^{k - 2N/3} for k >= 2N/3.
  const long third = conductor / 3, top = 2 * third;
  for (auto& [k, c] : raw) {
    if (c == 0) continue;
    if (k >= top) {
      out.coeffs_[k - third] -= c;
      out.coeffs_[k - top] -= c;
    } else {
      out.coeffs_[k] += c;
    }
  }
  std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Cyclotomic Cyclotomic::root(long conductor, long k) {
  require_power_of_three(conductor);
  return from_raw(conductor, {{mod(k, conductor), Rational(1)}});
}

std::optional<Rational> Cyclotomic::rational() const {
  if (coeffs_.empty()) return Rational(0);
  if (coeffs_.size() == 1 && coeffs_.begin()->first == 0) return coeffs_.begin()->second;
  return std::nullopt;
}

Cyclotomic Cyclotomic::lift(long m) const {
  if (m == conductor_) return *this;
  require_power_of_three(m);
  if (m % conductor_ != 0) throw BadParameter("cannot lift to a conductor that is not a multiple");
  const long s = m / conductor_;
  std::map<long, Rational> raw;
  for (const auto& [k, c] : coeffs_) raw[k * s] += c;
  return from_raw(m, std::move(raw));
}

Cyclotomic Cyclotomic::conj() const {
  std::map<long, Rational> raw;
  for (const auto& [k, c] : coeffs_) raw[mod(-k, conductor_)] += c;
  return from_raw(conductor_, std::move(raw));
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) throw BadParameter("negative powers of cyclotomic numbers are not supported");
  Cyclotomic r(1L), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const long n = std::max(a.conductor_, b.conductor_);
  Cyclotomic x = a.lift(n), y = b.lift(n);
  for (const auto& [k, c] : y.coeffs_) x.coeffs_[k] += c;
  std::erase_if(x.coeffs_, [](const auto& kv) { return kv.second == 0; });
  return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero() || b.is_zero()) return Cyclotomic();
  const long n = std::max(a.conductor_, b.conductor_);
  Cyclotomic x = a.lift(n), y = b.lift(n);
  std::map<long, Rational> raw;
  for (const auto& [i, c] : x.coeffs_)
    for (const auto& [j, d] : y.coeffs_) raw[(i + j) % n] += c * d;
  return Cyclotomic::from_raw(n, std::move(raw));
}

Cyclotomic operator*(const Rational& q, const Cyclotomic& a) {
  if (q == 0) return Cyclotomic();
  Cyclotomic r = a;
  for (auto& [k, c] : r.coeffs_) c *= q;
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  const long n = std::max(a.conductor_, b.conductor_);
  return a.lift(n).coeffs_ == b.lift(n).coeffs_;
}

std::string Cyclotomic::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::string z = "z" + std::to_string(conductor_) + (k == 1 ? "" : "^" + std::to_string(k));
    if (k == 0) out += mag.get_str();
    else if (mag == 1) out += z;
    else out += mag.get_str() + "*" + z;
  }
  return out;
}

void to_json(nlohmann::json& j, const Cyclotomic& c) {
  // Dense coefficient vector over 1, zeta, ..., zeta^{phi(N)-1}.
  const long n = c.conductor();
  const long dim = n == 1 ? 1 : 2 * n / 3;
  nlohmann::json coeffs = nlohmann::json::array();
  for (long k = 0; k < dim; ++k) {
    auto it = c.coefficients().find(k);
    Rational v = it == c.coefficients().end() ? Rational(0) : it->second;
    if (v.get_den() == 1 && v.get_num().fits_slong_p()) coeffs.push_back(v.get_num().get_si());
    else coeffs.push_back(v.get_str());
  }
  j = nlohmann::json{{"conductor", n}, {"coefficients", coeffs}};
}

// --- class functions ---

namespace {

template <typename Op>
ClassFunction pointwise(const ClassFunction& a, const ClassFunction& b, Op op) {
  if (a.values.size() != b.values.size()) throw BadParameter("class functions of different groups");
  ClassFunction r;
  r.values.reserve(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) r.values.push_back(op(a.values[i], b.values[i]));
  return r;
}

}  // namespace

ClassFunction ClassFunction::conj() const {
  ClassFunction r;
  for (const auto& v : values) r.values.push_back(v.conj());
  return r;
}

ClassFunction ClassFunction::pow(long e) const {
  // Negative exponents are meant for characters of degree one.
  ClassFunction base = e < 0 ? conj() : *this;
  const long m = e < 0 ? -e : e;
  ClassFunction r;
  for (const auto& v : base.values) r.values.push_back(v.pow(m));
  return r;
}

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  return pointwise(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x + y; });
}
ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
  return pointwise(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x - y; });
}
ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  return pointwise(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x * y; });
}
ClassFunction operator*(long k, const ClassFunction& a) {
  ClassFunction r;
  for (const auto& v : a.values) r.values.push_back(Rational(k) * v);
  return r;
}

}  // namespace coho3
