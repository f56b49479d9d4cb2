#include "superspin/grassmann.hpp"

#include "superspin/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace superspin {

namespace {

void check_order(int order) {
  if (order < 0 || order > GrassmannNumber::kMaxOrder)
    throw DomainError("Grassmann order must lie in [0, 16], got " +
                      std::to_string(order));
}

bool negligible(Scalar c) {
  return std::abs(c.real()) < GrassmannNumber::kCanonEps &&
         std::abs(c.imag()) < GrassmannNumber::kCanonEps;
}

std::vector<GrassmannNumber::Term>
merge_sorted(std::vector<GrassmannNumber::Term> v) {
  std::sort(v.begin(), v.end(),
            [](const auto &a, const auto &b) { return a.mask < b.mask; });
  std::vector<GrassmannNumber::Term> out;
  out.reserve(v.size());
  for (const auto &t : v) {
    if (!out.empty() && out.back().mask == t.mask)
      out.back().coef += t.coef;
    else
      out.push_back(t);
  }
  return out;
}

} // namespace

int blade_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t x = a >> 1; x != 0; x >>= 1)
    swaps += std::popcount(x & b);
  return (swaps & 1) ? -1 : 1;
}

GrassmannNumber::GrassmannNumber(int order) : order_(order) {
  check_order(order);
}

GrassmannNumber::GrassmannNumber(int order, Scalar body) : order_(order) {
  check_order(order);
  terms_.push_back({0, body});
  canonicalize();
}

GrassmannNumber GrassmannNumber::generator(int order, int j) {
  if (j < 1 || j > order)
    throw DomainError("generator index out of range");
  return blade(order, 1u << (j - 1));
}

GrassmannNumber GrassmannNumber::blade(int order, std::uint32_t mask,
                                       Scalar coef) {
  GrassmannNumber g(order);
  if (mask >= (1u << order))
    throw DomainError("blade mask exceeds order");
  g.terms_.push_back({mask, coef});
  g.canonicalize();
  return g;
}

GrassmannNumber GrassmannNumber::from_terms(int order, std::vector<Term> terms) {
  GrassmannNumber g(order);
  for (const auto &t : terms)
    if (t.mask >= (1u << order))
      throw DomainError("blade mask exceeds order");
  g.terms_ = merge_sorted(std::move(terms));
  g.canonicalize();
  return g;
}

void GrassmannNumber::canonicalize() {
  std::erase_if(terms_, [](const Term &t) { return negligible(t.coef); });
  for (const auto &t : terms_)
    if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag()))
      throw DomainError("non-finite Grassmann coefficient");
}

Scalar GrassmannNumber::coefficient(std::uint32_t mask) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), mask,
      [](const Term &t, std::uint32_t m) { return t.mask < m; });
  if (it != terms_.end() && it->mask == mask)
    return it->coef;
  return 0.0;
}

GrassmannNumber GrassmannNumber::nilpotent_part() const {
  GrassmannNumber g(order_);
  for (const auto &t : terms_)
    if (t.mask != 0)
      g.terms_.push_back(t);
  return g;
}

GrassmannNumber GrassmannNumber::grade(int k) const {
  GrassmannNumber g(order_);
  for (const auto &t : terms_)
    if (std::popcount(t.mask) == k)
      g.terms_.push_back(t);
  return g;
}

GrassmannNumber GrassmannNumber::even_part() const {
  GrassmannNumber g(order_);
  for (const auto &t : terms_)
    if (std::popcount(t.mask) % 2 == 0)
      g.terms_.push_back(t);
  return g;
}

GrassmannNumber GrassmannNumber::odd_part() const {
  GrassmannNumber g(order_);
  for (const auto &t : terms_)
    if (std::popcount(t.mask) % 2 == 1)
      g.terms_.push_back(t);
  return g;
}

Parity GrassmannNumber::parity() const {
  bool has_even = false, has_odd = false;
  for (const auto &t : terms_)
    (std::popcount(t.mask) % 2 ? has_odd : has_even) = true;
  if (has_even && has_odd)
    return Parity::mixed;
  return has_odd ? Parity::odd : Parity::even;
}

bool GrassmannNumber::is_odd() const {
  for (const auto &t : terms_)
    if (std::popcount(t.mask) % 2 == 0)
      return false;
  return true;
}

bool GrassmannNumber::is_real(double tol) const {
  for (const auto &t : terms_)
    if (std::abs(t.coef.imag()) > tol)
      return false;
  return true;
}

GrassmannNumber GrassmannNumber::conj() const {
  GrassmannNumber g = *this;
  for (auto &t : g.terms_)
    t.coef = std::conj(t.coef);
  return g;
}

double GrassmannNumber::norm() const {
  double s = 0.0;
  for (const auto &t : terms_)
    s += std::abs(t.coef);
  return s;
}

GrassmannNumber GrassmannNumber::operator-() const {
  GrassmannNumber g = *this;
  for (auto &t : g.terms_)
    t.coef = -t.coef;
  return g;
}

GrassmannNumber &GrassmannNumber::operator+=(const GrassmannNumber &o) {
  check_same_order(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mask < b->mask))
      out.push_back(*a++);
    else if (a == terms_.end() || b->mask < a->mask)
      out.push_back(*b++);
    else {
      out.push_back({a->mask, a->coef + b->coef});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  canonicalize();
  return *this;
}

GrassmannNumber &GrassmannNumber::operator-=(const GrassmannNumber &o) {
  return *this += -o;
}

GrassmannNumber &GrassmannNumber::operator*=(Scalar s) {
  for (auto &t : terms_)
    t.coef *= s;
  canonicalize();
  return *this;
}

std::string GrassmannNumber::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto &t : terms_) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << t.coef.real() << (t.coef.imag() < 0 ? "-" : "+")
       << std::abs(t.coef.imag()) << "i)";
    for (int i = 0; i < order_; ++i)
      if (t.mask & (1u << i))
        os << "f" << (i + 1);
  }
  return os.str();
}

bool operator==(const GrassmannNumber &a, const GrassmannNumber &b) {
  if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mask != b.terms_[i].mask ||
        a.terms_[i].coef != b.terms_[i].coef)
      return false;
  return true;
}

void check_same_order(const GrassmannNumber &a, const GrassmannNumber &b) {
  if (a.order() != b.order())
    throw DomainError("Grassmann order mismatch: " + std::to_string(a.order()) +
                      " vs " + std::to_string(b.order()));
}

GrassmannNumber gr_mul(const GrassmannNumber &x, const GrassmannNumber &y) {
  check_same_order(x, y);
  const int order = x.order();
  if (x.is_zero() || y.is_zero())
    return GrassmannNumber(order);
  const std::size_t pairs = x.terms().size() * y.terms().size();
  const std::size_t dim = std::size_t{1} << order;
  std::vector<GrassmannNumber::Term> out;
  if (pairs * 4 >= dim) {
    std::vector<Scalar> acc(dim, 0.0);
    std::vector<char> hit(dim, 0);
    for (const auto &a : x.terms())
      for (const auto &b : y.terms()) {
        if (a.mask & b.mask)
          continue;
        const std::uint32_t m = a.mask | b.mask;
        acc[m] += static_cast<double>(blade_sign(a.mask, b.mask)) * a.coef * b.coef;
        hit[m] = 1;
      }
    for (std::size_t m = 0; m < dim; ++m)
      if (hit[m])
        out.push_back({static_cast<std::uint32_t>(m), acc[m]});
    return GrassmannNumber::from_terms(order, std::move(out));
  }
  out.reserve(pairs);
  for (const auto &a : x.terms())
    for (const auto &b : y.terms()) {
      if (a.mask & b.mask)
        continue;
      out.push_back({a.mask | b.mask,
                     static_cast<double>(blade_sign(a.mask, b.mask)) * a.coef *
                         b.coef});
    }
  return GrassmannNumber::from_terms(order, std::move(out));
}

GrassmannNumber gr_grade(const GrassmannNumber &x, int k) { return x.grade(k); }
Parity gr_parity(const GrassmannNumber &x) { return x.parity(); }
double gr_norm(const GrassmannNumber &x) { return x.norm(); }

GrassmannNumber gr_exp(const GrassmannNumber &x) {
  const int order = x.order();
  const GrassmannNumber nil = x.nilpotent_part();
  GrassmannNumber sum(order, 1.0);
  GrassmannNumber power(order, 1.0);
  for (int j = 1; j <= order; ++j) {
    power = gr_mul(power, nil) * (1.0 / j);
    if (power.is_zero())
      break;
    sum += power;
  }
  return sum * std::exp(x.body());
}

GrassmannNumber gr_ln(const GrassmannNumber &x) {
  const Scalar a0 = x.body();
  if (a0 == 0.0)
    throw NotInvertibleError("logarithm of a Grassmann number with zero body");
  const int order = x.order();
  const GrassmannNumber u = x.nilpotent_part() * (1.0 / a0);
  GrassmannNumber sum(order, std::log(a0));
  GrassmannNumber power(order, 1.0);
  for (int j = 1; j <= order; ++j) {
    power = gr_mul(power, u);
    if (power.is_zero())
      break;
    sum += power * ((j % 2 ? 1.0 : -1.0) / j);
  }
  return sum;
}

GrassmannNumber gr_inverse(const GrassmannNumber &x) {
  const Scalar a0 = x.body();
  if (a0 == 0.0)
    throw NotInvertibleError("Grassmann number with zero body is not invertible");
  const int order = x.order();
  const GrassmannNumber u = x.nilpotent_part() * (-1.0 / a0);
  GrassmannNumber sum(order, 1.0);
  GrassmannNumber power(order, 1.0);
  for (int j = 1; j <= order; ++j) {
    power = gr_mul(power, u);
    if (power.is_zero())
      break;
    sum += power;
  }
  return sum * (1.0 / a0);
}

GrassmannNumber gr_sqrt(const GrassmannNumber &x) {
  if (!x.is_even())
    throw DomainError("square root requires an even Grassmann number");
  return gr_exp(gr_ln(x) * 0.5);
}

GrassmannNumber gr_pow(const GrassmannNumber &x, int k) {
  if (k < 0)
    return gr_pow(gr_inverse(x), -k);
  GrassmannNumber r(x.order(), 1.0);
  for (int i = 0; i < k; ++i)
    r = gr_mul(r, x);
  return r;
}

bool approx_equal(const GrassmannNumber &a, const GrassmannNumber &b,
                  double tol) {
  check_same_order(a, b);
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= tol * scale;
}

GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber &b) {
  a += b;
  return a;
}
GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber &b) {
  a -= b;
  return a;
}
GrassmannNumber operator*(const GrassmannNumber &a, const GrassmannNumber &b) {
  return gr_mul(a, b);
}
GrassmannNumber operator*(GrassmannNumber a, Scalar s) {
  a *= s;
  return a;
}
GrassmannNumber operator*(Scalar s, GrassmannNumber a) {
  a *= s;
  return a;
}

} // namespace superspin
