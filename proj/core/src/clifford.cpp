#include "superspin/clifford.hpp"

#include "superspin/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace superspin {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

struct WeylTerm {
  double coef;
  std::array<std::uint8_t, Monomial::kMaxFermions> alpha;
};

// x^{a1} y^{b1} x^{a2} y^{b2} with [x, y] = 1 rewritten as
// sum_k (-1)^k k! C(b1,k) C(a2,k) x^{a1+a2-k} y^{b1+b2-k}.
std::vector<WeylTerm> weyl_product(const Monomial &u, const Monomial &v,
                                   int n) {
  std::vector<WeylTerm> acc{{1.0, {}}};
  for (int j = 0; j < n; ++j) {
    const int a1 = u.alpha[2 * j], b1 = u.alpha[2 * j + 1];
    const int a2 = v.alpha[2 * j], b2 = v.alpha[2 * j + 1];
    const int kmax = std::min(b1, a2);
    std::vector<WeylTerm> next;
    next.reserve(acc.size() * (kmax + 1));
    double kfact = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0)
        kfact *= k;
      const double c =
          (k % 2 ? -1.0 : 1.0) * kfact * binomial(b1, k) * binomial(a2, k);
      const int xa = a1 + a2 - k, yb = b1 + b2 - k;
      if (xa > 255 || yb > 255)
        throw CapExceededError("fermionic exponent overflow");
      for (const auto &t : acc) {
        WeylTerm w = t;
        w.coef *= c;
        w.alpha[2 * j] = static_cast<std::uint8_t>(xa);
        w.alpha[2 * j + 1] = static_cast<std::uint8_t>(yb);
        next.push_back(w);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

} // namespace

int Monomial::degree() const {
  int d = 0;
  for (auto a : alpha)
    d += a;
  return d;
}

CliffordElement::CliffordElement(int m, int n, int order, int cap)
    : m_(m), n_(n), order_(order), cap_(cap) {
  if (m < 0 || m > kMaxBosons)
    throw DomainError("bosonic dimension m must lie in [0, 16]");
  if (n < 0 || 2 * n > Monomial::kMaxFermions)
    throw DomainError("fermionic dimension 2n must lie in [0, 16]");
  if (cap < 0)
    throw DomainError("degree cap must be non-negative");
  if (order < 0 || order > GrassmannNumber::kMaxOrder)
    throw DomainError("Grassmann order must lie in [0, 16]");
}

CliffordElement CliffordElement::scalar(int m, int n, int order,
                                        const GrassmannNumber &c, int cap) {
  CliffordElement x(m, n, order, cap);
  x.add_term(Monomial{}, c);
  return x;
}

CliffordElement CliffordElement::scalar(int m, int n, int order, Scalar c,
                                        int cap) {
  return scalar(m, n, order, GrassmannNumber(order, c), cap);
}

CliffordElement CliffordElement::e(int m, int n, int order, int j, int cap) {
  if (j < 1 || j > m)
    throw DomainError("e_j index out of range");
  CliffordElement x(m, n, order, cap);
  Monomial mono;
  mono.blade = 1u << (j - 1);
  x.add_term(mono, GrassmannNumber(order, 1.0));
  return x;
}

CliffordElement CliffordElement::ep(int m, int n, int order, int j, int cap) {
  if (j < 1 || j > 2 * n)
    throw DomainError("e`_j index out of range");
  CliffordElement x(m, n, order, cap);
  Monomial mono;
  mono.alpha[j - 1] = 1;
  x.add_term(mono, GrassmannNumber(order, 1.0));
  return x;
}

GrassmannNumber CliffordElement::coefficient(const Monomial &mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? GrassmannNumber(order_) : it->second;
}

GrassmannNumber CliffordElement::scalar_part() const {
  return coefficient(Monomial{});
}

void CliffordElement::add_term(const Monomial &mono, const GrassmannNumber &c) {
  if (c.order() != order_)
    throw DomainError("Grassmann order mismatch in Clifford term");
  if (mono.blade >= (1u << m_))
    throw DomainError("blade outside the bosonic generators");
  for (int i = 2 * n_; i < Monomial::kMaxFermions; ++i)
    if (mono.alpha[i] != 0)
      throw DomainError("fermionic index outside 1..2n");
  if (c.is_zero())
    return;
  if (mono.degree() > cap_)
    throw CapExceededError("term degree exceeds the cap");
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero())
    terms_.erase(it);
}

CliffordElement CliffordElement::degree_at_most(int d) const {
  CliffordElement out(m_, n_, order_, cap_);
  out.truncated_ = truncated_;
  for (const auto &[mono, c] : terms_)
    if (mono.degree() <= d)
      out.terms_.emplace(mono, c);
  return out;
}

CliffordElement CliffordElement::with_cap(int cap) const {
  CliffordElement out(m_, n_, order_, cap);
  out.truncated_ = truncated_;
  for (const auto &[mono, c] : terms_) {
    if (mono.degree() > cap) {
      out.truncated_ = true;
      continue;
    }
    out.terms_.emplace(mono, c);
  }
  return out;
}

double CliffordElement::norm() const {
  double s = 0.0;
  for (const auto &[mono, c] : terms_)
    s += c.norm();
  return s;
}

int CliffordElement::max_degree() const {
  int d = 0;
  for (const auto &[mono, c] : terms_)
    d = std::max(d, mono.degree());
  return d;
}

void CliffordElement::check_compatible(const CliffordElement &o) const {
  if (m_ != o.m_ || n_ != o.n_ || order_ != o.order_)
    throw DomainError("Clifford elements with different (m, n, N)");
}

CliffordElement CliffordElement::operator-() const {
  CliffordElement out = *this;
  for (auto &[mono, c] : out.terms_)
    c = -c;
  return out;
}

CliffordElement &CliffordElement::operator+=(const CliffordElement &o) {
  check_compatible(o);
  cap_ = std::min(cap_, o.cap_);
  truncated_ = truncated_ || o.truncated_;
  for (const auto &[mono, c] : o.terms_) {
    if (mono.degree() > cap_) {
      truncated_ = true;
      continue;
    }
    add_term(mono, c);
  }
  std::erase_if(terms_, [this](const auto &kv) {
    if (kv.first.degree() > cap_) {
      truncated_ = true;
      return true;
    }
    return false;
  });
  return *this;
}

CliffordElement &CliffordElement::operator-=(const CliffordElement &o) {
  return *this += -o;
}

CliffordElement &CliffordElement::operator*=(Scalar s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

CliffordElement cl_mul(const CliffordElement &x, const CliffordElement &y,
                       MulOptions opts) {
  x.check_compatible(y);
  int cap = std::min(x.cap_, y.cap_);
  if (opts.cap >= 0)
    cap = opts.cap;
  CliffordElement out(x.m_, x.n_, x.order_, cap);
  out.truncated_ = x.truncated_ || y.truncated_;
  for (const auto &[u, a] : x.terms_) {
    const int deg_u = u.degree();
    for (const auto &[v, b] : y.terms_) {
      const GrassmannNumber ab = gr_mul(a, b);
      if (ab.is_zero())
        continue;
      const std::uint32_t common = u.blade & v.blade;
      int sign = blade_sign(u.blade, v.blade);
      if (std::popcount(common) % 2)
        sign = -sign;
      if ((deg_u % 2) && (std::popcount(v.blade) % 2))
        sign = -sign;
      for (const auto &w : weyl_product(u, v, x.n_)) {
        Monomial mono;
        mono.blade = u.blade ^ v.blade;
        mono.alpha = w.alpha;
        if (mono.degree() > cap) {
          if (opts.strict)
            throw CapExceededError("product exceeds fermionic degree cap " +
                                   std::to_string(cap));
          out.truncated_ = true;
          continue;
        }
        out.add_term(mono, ab * (sign * w.coef));
      }
    }
  }
  return out;
}

CliffordElement cl_mul(const CliffordElement &x, const CliffordElement &y) {
  return cl_mul(x, y, MulOptions{});
}

CliffordElement cl_commutator(const CliffordElement &x,
                              const CliffordElement &y) {
  return cl_mul(x, y) - cl_mul(y, x);
}

CliffordElement cl_scale(const GrassmannNumber &c, const CliffordElement &x) {
  return cl_mul(CliffordElement::scalar(x.m(), x.n(), x.order(), c, x.cap()), x);
}

CliffordElement operator+(CliffordElement a, const CliffordElement &b) {
  a += b;
  return a;
}
CliffordElement operator-(CliffordElement a, const CliffordElement &b) {
  a -= b;
  return a;
}
CliffordElement operator*(const CliffordElement &a, const CliffordElement &b) {
  return cl_mul(a, b);
}
CliffordElement operator*(CliffordElement a, Scalar s) {
  a *= s;
  return a;
}
CliffordElement operator*(Scalar s, CliffordElement a) {
  a *= s;
  return a;
}

bool approx_equal(const CliffordElement &a, const CliffordElement &b,
                  double tol) {
  const int cap = std::max(a.cap(), b.cap());
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a.with_cap(cap) - b.with_cap(cap)).norm() <= tol * scale;
}

} // namespace superspin
