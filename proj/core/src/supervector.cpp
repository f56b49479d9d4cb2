#include "superspin/clifford.hpp"
#include "superspin/errors.hpp"
#include "superspin/orthosymplectic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace superspin {

namespace {

// g_{jk} for 0-based fermionic indices.
double g_form(int j, int k) {
  if (j / 2 != k / 2 || j == k)
    return 0.0;
  return (j % 2 == 0) ? 1.0 : -1.0;
}

// The index paired with k by g (0-based).
int partner(int k) { return (k % 2 == 0) ? k + 1 : k - 1; }

GrassmannNumber checked_even(const GrassmannNumber &c, double tol,
                             const char *what) {
  if (c.odd_part().norm() > tol)
    throw DomainError(std::string(what) + " coefficient is not even");
  return c.even_part();
}

GrassmannNumber checked_odd(const GrassmannNumber &c, double tol,
                            const char *what) {
  if (c.even_part().norm() > tol)
    throw DomainError(std::string(what) + " coefficient is not odd");
  return c.odd_part();
}

} // namespace

// ---------------------------------------------------------------- vectors

Supervector::Supervector(int m, int n, int order)
    : m_(m), n_(n), order_(order), even_(m, GrassmannNumber(order)),
      odd_(2 * n, GrassmannNumber(order)) {
  if (m < 0 || n < 0)
    throw DomainError("negative supervector dimension");
}

Supervector::Supervector(std::vector<GrassmannNumber> even,
                         std::vector<GrassmannNumber> odd, int order)
    : m_(static_cast<int>(even.size())), n_(static_cast<int>(odd.size()) / 2),
      order_(order), even_(std::move(even)), odd_(std::move(odd)) {
  if (odd_.size() % 2 != 0)
    throw FormatError("odd part of a supervector needs an even length");
  validate();
}

void Supervector::validate() const {
  for (const auto &g : even_)
    if (g.order() != order_ || !g.is_even())
      throw FormatError("even supervector coordinates must be even");
  for (const auto &g : odd_)
    if (g.order() != order_ || !g.is_odd())
      throw FormatError("odd supervector coordinates must be odd");
}

Supervector Supervector::unit_even(int m, int n, int order, int j) {
  Supervector v(m, n, order);
  v.even_.at(j) = GrassmannNumber(order, 1.0);
  return v;
}

void Supervector::set_even(int j, GrassmannNumber v) {
  if (v.order() != order_ || !v.is_even())
    throw FormatError("even supervector coordinates must be even");
  even_.at(j) = std::move(v);
}

void Supervector::set_odd(int k, GrassmannNumber v) {
  if (v.order() != order_ || !v.is_odd())
    throw FormatError("odd supervector coordinates must be odd");
  odd_.at(k) = std::move(v);
}

CliffordElement Supervector::to_clifford(int cap) const {
  CliffordElement x(m_, n_, order_, cap);
  for (int j = 0; j < m_; ++j) {
    Monomial mono;
    mono.blade = 1u << j;
    x.add_term(mono, even_[j]);
  }
  for (int k = 0; k < 2 * n_; ++k) {
    Monomial mono;
    mono.alpha[k] = 1;
    x.add_term(mono, odd_[k]);
  }
  return x;
}

Supervector Supervector::from_clifford(const CliffordElement &x, double tol) {
  Supervector v(x.m(), x.n(), x.order());
  for (const auto &[mono, c] : x.terms()) {
    const int deg = mono.degree();
    const int nb = std::popcount(mono.blade);
    if (deg == 0 && nb == 1) {
      v.even_[std::countr_zero(mono.blade)] = checked_even(c, tol, "vector");
    } else if (deg == 1 && nb == 0) {
      int k = 0;
      while (mono.alpha[k] == 0)
        ++k;
      v.odd_[k] = checked_odd(c, tol, "vector");
    } else if (c.norm() > tol) {
      throw DomainError("Clifford element has non-vector terms");
    }
  }
  return v;
}

Supervector Supervector::operator-() const {
  Supervector v = *this;
  for (auto &g : v.even_)
    g = -g;
  for (auto &g : v.odd_)
    g = -g;
  return v;
}

Supervector &Supervector::operator+=(const Supervector &o) {
  if (m_ != o.m_ || n_ != o.n_)
    throw DomainError("supervector shape mismatch");
  for (int j = 0; j < m_; ++j)
    even_[j] += o.even_[j];
  for (int k = 0; k < 2 * n_; ++k)
    odd_[k] += o.odd_[k];
  return *this;
}

Supervector &Supervector::operator-=(const Supervector &o) {
  return *this += -o;
}

Supervector &Supervector::operator*=(const GrassmannNumber &s) {
  if (!s.is_even())
    throw DomainError("supervectors scale only by even Grassmann numbers");
  for (auto &g : even_)
    g = gr_mul(s, g);
  for (auto &g : odd_)
    g = gr_mul(s, g);
  return *this;
}

double Supervector::norm() const {
  double s = 0.0;
  for (const auto &g : even_)
    s += g.norm();
  for (const auto &g : odd_)
    s += g.norm();
  return s;
}

Supervector operator+(Supervector a, const Supervector &b) {
  a += b;
  return a;
}
Supervector operator-(Supervector a, const Supervector &b) {
  a -= b;
  return a;
}

Supervector operator*(const Supermatrix &mat, const Supervector &x) {
  const int m = x.m(), q = 2 * x.n();
  if (mat.p() != m || mat.q() != q)
    throw DomainError("supermatrix and supervector shapes differ");
  std::vector<const GrassmannNumber *> z;
  for (int j = 0; j < m; ++j)
    z.push_back(&x.even(j));
  for (int k = 0; k < q; ++k)
    z.push_back(&x.odd(k));
  std::vector<GrassmannNumber> even(m, GrassmannNumber(x.order()));
  std::vector<GrassmannNumber> odd(q, GrassmannNumber(x.order()));
  for (int r = 0; r < m + q; ++r) {
    GrassmannNumber &out = r < m ? even[r] : odd[r - m];
    for (int c = 0; c < m + q; ++c)
      if (!mat(r, c).is_zero() && !z[c]->is_zero())
        out += gr_mul(mat(r, c), *z[c]);
  }
  return Supervector(std::move(even), std::move(odd), x.order());
}

bool approx_equal(const Supervector &a, const Supervector &b, double tol) {
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= tol * scale;
}

GrassmannNumber inner_product(const Supervector &x, const Supervector &y) {
  if (x.m() != y.m() || x.n() != y.n())
    throw DomainError("supervector shape mismatch");
  GrassmannNumber s(x.order());
  for (int j = 0; j < x.m(); ++j)
    s += gr_mul(x.even(j), y.even(j));
  for (int j = 0; j < x.n(); ++j)
    s -= (gr_mul(x.odd(2 * j), y.odd(2 * j + 1)) -
          gr_mul(x.odd(2 * j + 1), y.odd(2 * j))) *
         0.5;
  return s;
}

bool on_supersphere(const Supervector &w, double tol) {
  double body = 0.0;
  for (const auto &g : w.even())
    body += std::norm(g.body());
  if (std::abs(body - 1.0) >= tol)
    return false;
  const GrassmannNumber r = inner_product(w, w) - GrassmannNumber(w.order(), 1.0);
  return r.norm() <= tol;
}

// ---------------------------------------------------------------- bivectors

ExtendedSuperbivector::ExtendedSuperbivector(int m, int n, int order)
    : m_(m), n_(n), order_(order),
      b_(static_cast<std::size_t>(m * (m - 1) / 2), GrassmannNumber(order)),
      bq_(static_cast<std::size_t>(m * 2 * n), GrassmannNumber(order)),
      B_(static_cast<std::size_t>(n * (2 * n + 1)), GrassmannNumber(order)) {
  if (m < 0 || n < 0)
    throw DomainError("negative superbivector dimension");
}

int ExtendedSuperbivector::b_index(int j, int k) const {
  if (!(0 <= j && j < k && k < m_))
    throw DomainError("b index pair must satisfy j < k < m");
  return j * (2 * m_ - j - 1) / 2 + (k - j - 1);
}

int ExtendedSuperbivector::B_index(int j, int k) const {
  const int q = 2 * n_;
  if (!(0 <= j && j <= k && k < q))
    throw DomainError("B index pair must satisfy j <= k < 2n");
  return j * (2 * q - j + 1) / 2 + (k - j);
}

void ExtendedSuperbivector::set_b(int j, int k, GrassmannNumber v) {
  if (v.order() != order_ || !v.is_even())
    throw FormatError("b coefficients must be even");
  b_[b_index(j, k)] = std::move(v);
}

void ExtendedSuperbivector::set_bq(int j, int k, GrassmannNumber v) {
  if (j < 0 || j >= m_ || k < 0 || k >= 2 * n_)
    throw DomainError("bq index out of range");
  if (v.order() != order_ || !v.is_odd())
    throw FormatError("bq coefficients must be odd");
  bq_[j * 2 * n_ + k] = std::move(v);
}

void ExtendedSuperbivector::set_B(int j, int k, GrassmannNumber v) {
  if (v.order() != order_ || !v.is_even())
    throw FormatError("B coefficients must be even");
  B_[B_index(j, k)] = std::move(v);
}

bool ExtendedSuperbivector::is_strict() const {
  return std::all_of(B_.begin(), B_.end(),
                     [](const GrassmannNumber &g) { return g.body() == 0.0; });
}

bool ExtendedSuperbivector::is_zero() const {
  for (const auto *g : slots())
    if (!g->is_zero())
      return false;
  return true;
}

double ExtendedSuperbivector::norm() const {
  double s = 0.0;
  for (const auto *g : slots())
    s += g->norm();
  return s;
}

ExtendedSuperbivector ExtendedSuperbivector::body() const {
  ExtendedSuperbivector out = *this;
  for (auto *g : out.slots())
    *g = GrassmannNumber(order_, g->body());
  return out;
}

ExtendedSuperbivector ExtendedSuperbivector::nilpotent_part() const {
  ExtendedSuperbivector out = *this;
  for (auto *g : out.slots())
    *g = g->nilpotent_part();
  return out;
}

std::vector<GrassmannNumber *> ExtendedSuperbivector::slots() {
  std::vector<GrassmannNumber *> s;
  for (auto &g : b_)
    s.push_back(&g);
  for (auto &g : bq_)
    s.push_back(&g);
  for (auto &g : B_)
    s.push_back(&g);
  return s;
}

std::vector<const GrassmannNumber *> ExtendedSuperbivector::slots() const {
  std::vector<const GrassmannNumber *> s;
  for (const auto &g : b_)
    s.push_back(&g);
  for (const auto &g : bq_)
    s.push_back(&g);
  for (const auto &g : B_)
    s.push_back(&g);
  return s;
}

CliffordElement ExtendedSuperbivector::to_clifford(int cap) const {
  CliffordElement x(m_, n_, order_, cap);
  for (int j = 0; j < m_; ++j)
    for (int k = j + 1; k < m_; ++k) {
      Monomial mono;
      mono.blade = (1u << j) | (1u << k);
      x.add_term(mono, b(j, k));
    }
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < 2 * n_; ++k) {
      Monomial mono;
      mono.blade = 1u << j;
      mono.alpha[k] = 1;
      x.add_term(mono, bq(j, k));
    }
  for (int j = 0; j < 2 * n_; ++j)
    for (int k = j; k < 2 * n_; ++k) {
      const GrassmannNumber &c = B(j, k);
      if (c.is_zero())
        continue;
      Monomial mono;
      ++mono.alpha[j];
      ++mono.alpha[k];
      x.add_term(mono, c);
      // e`_j (.) e`_k = e`_j e`_k - g_jk / 2 for j < k
      if (g_form(j, k) != 0.0)
        x.add_term(Monomial{}, c * (-0.5 * g_form(j, k)));
    }
  return x;
}

ExtendedSuperbivector
ExtendedSuperbivector::from_clifford(const CliffordElement &x, double tol) {
  ExtendedSuperbivector B(x.m(), x.n(), x.order());
  GrassmannNumber constant(x.order());
  for (const auto &[mono, c] : x.terms()) {
    const int deg = mono.degree();
    const int nb = std::popcount(mono.blade);
    if (deg == 0 && nb == 2) {
      const int j = std::countr_zero(mono.blade);
      const int k = 31 - std::countl_zero(mono.blade);
      B.b_[B.b_index(j, k)] = checked_even(c, tol, "b");
    } else if (deg == 1 && nb == 1) {
      int k = 0;
      while (mono.alpha[k] == 0)
        ++k;
      B.bq_[std::countr_zero(mono.blade) * 2 * B.n_ + k] =
          checked_odd(c, tol, "bq");
    } else if (deg == 2 && nb == 0) {
      int j = 0;
      while (mono.alpha[j] == 0)
        ++j;
      int k = j;
      if (mono.alpha[j] == 1) {
        k = j + 1;
        while (mono.alpha[k] == 0)
          ++k;
      }
      B.B_[B.B_index(j, k)] = checked_even(c, tol, "B");
    } else if (deg == 0 && nb == 0) {
      constant = c;
    } else if (c.norm() > tol) {
      throw DomainError("Clifford element is not an extended superbivector");
    }
  }
  GrassmannNumber expected(x.order());
  for (int j = 0; j < B.n_; ++j)
    expected -= B.B(2 * j, 2 * j + 1) * 0.5;
  if ((constant - expected).norm() > tol * std::max(1.0, constant.norm()))
    throw DomainError("scalar part inconsistent with an extended superbivector");
  return B;
}

void ExtendedSuperbivector::check_compatible(
    const ExtendedSuperbivector &o) const {
  if (m_ != o.m_ || n_ != o.n_ || order_ != o.order_)
    throw DomainError("extended superbivectors with different (m, n, N)");
}

ExtendedSuperbivector ExtendedSuperbivector::operator-() const {
  ExtendedSuperbivector out = *this;
  for (auto *g : out.slots())
    *g = -*g;
  return out;
}

ExtendedSuperbivector &
ExtendedSuperbivector::operator+=(const ExtendedSuperbivector &o) {
  check_compatible(o);
  auto dst = slots();
  auto src = o.slots();
  for (std::size_t i = 0; i < dst.size(); ++i)
    *dst[i] += *src[i];
  return *this;
}

ExtendedSuperbivector &
ExtendedSuperbivector::operator-=(const ExtendedSuperbivector &o) {
  return *this += -o;
}

ExtendedSuperbivector &ExtendedSuperbivector::operator*=(Scalar s) {
  for (auto *g : slots())
    *g *= s;
  return *this;
}

ExtendedSuperbivector operator+(ExtendedSuperbivector a,
                                const ExtendedSuperbivector &b) {
  a += b;
  return a;
}
ExtendedSuperbivector operator-(ExtendedSuperbivector a,
                                const ExtendedSuperbivector &b) {
  a -= b;
  return a;
}
ExtendedSuperbivector operator*(ExtendedSuperbivector a, Scalar s) {
  a *= s;
  return a;
}
ExtendedSuperbivector operator*(Scalar s, ExtendedSuperbivector a) {
  a *= s;
  return a;
}

bool approx_equal(const ExtendedSuperbivector &a, const ExtendedSuperbivector &b,
                  double tol) {
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= tol * scale;
}

ExtendedSuperbivector wedge(const Supervector &x, const Supervector &y) {
  if (x.m() != y.m() || x.n() != y.n() || x.order() != y.order())
    throw DomainError("supervector shape mismatch");
  const int m = x.m(), q = 2 * x.n();
  ExtendedSuperbivector B(m, x.n(), x.order());
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      B.set_b(j, k, gr_mul(x.even(j), y.even(k)) - gr_mul(x.even(k), y.even(j)));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < q; ++k)
      B.set_bq(j, k, gr_mul(x.even(j), y.odd(k)) - gr_mul(x.odd(k), y.even(j)));
  for (int j = 0; j < q; ++j) {
    B.set_B(j, j, gr_mul(x.odd(j), y.odd(j)));
    for (int k = j + 1; k < q; ++k)
      B.set_B(j, k, gr_mul(x.odd(j), y.odd(k)) + gr_mul(x.odd(k), y.odd(j)));
  }
  return B;
}

// ------------------------------------------------------------------- phi

Supermatrix phi(const ExtendedSuperbivector &B) {
  const int m = B.m(), q = 2 * B.n(), order = B.order();
  GrassmannMatrix e(m + q, m + q, order);
  auto A = [&](int r, int c) -> GrassmannNumber & { return e(r, c); };
  auto Bq = [&](int r, int c) -> GrassmannNumber & { return e(r, m + c); };
  auto Cq = [&](int r, int c) -> GrassmannNumber & { return e(m + r, c); };
  auto D = [&](int r, int c) -> GrassmannNumber & { return e(m + r, m + c); };

  // b e_j e_k -> 2b (E_kj - E_jk)
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      const GrassmannNumber &c = B.b(j, k);
      if (c.is_zero())
        continue;
      A(k, j) += c * 2.0;
      A(j, k) -= c * 2.0;
    }
  // b` e_j e`_{2k-1} -> B` = b` E_{j,2k}, C` = 2b` E_{2k-1,j}
  // b` e_j e`_{2k}   -> B` = -b` E_{j,2k-1}, C` = 2b` E_{2k,j}
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < q; ++k) {
      const GrassmannNumber &c = B.bq(j, k);
      if (c.is_zero())
        continue;
      if (k % 2 == 0)
        Bq(j, k + 1) += c;
      else
        Bq(j, k - 1) -= c;
      Cq(k, j) += c * 2.0;
    }
  // Symmetric fermionic products, 1-based pairs (P, Q) with P <= Q.
  for (int p = 0; p < q; ++p)
    for (int r = p; r < q; ++r) {
      const GrassmannNumber &c = B.B(p, r);
      if (c.is_zero())
        continue;
      const int P = p + 1, Q = r + 1;
      auto at = [&](int row1, int col1) -> GrassmannNumber & {
        return D(row1 - 1, col1 - 1);
      };
      if (P % 2 == 0 && Q % 2 == 0) {
        // e`_{2j} (.) e`_{2k} -> -b (E_{2j,2k-1} + E_{2k,2j-1})
        at(P, Q - 1) -= c;
        at(Q, P - 1) -= c;
      } else if (P % 2 == 1 && Q % 2 == 1) {
        // e`_{2j-1} (.) e`_{2k-1} -> b (E_{2j-1,2k} + E_{2k-1,2j})
        at(P, Q + 1) += c;
        at(Q, P + 1) += c;
      } else if (P % 2 == 1) {
        // e`_{2j-1} (.) e`_{2k} -> b (E_{2k,2j} - E_{2j-1,2k-1})
        at(Q, P + 1) += c;
        at(P, Q - 1) -= c;
      } else {
        // e`_{2j} (.) e`_{2k-1}, j < k -> b (E_{2j,2k} - E_{2k-1,2j-1})
        at(P, Q + 1) += c;
        at(Q, P - 1) -= c;
      }
    }
  return Supermatrix(m, q, std::move(e));
}

ExtendedSuperbivector phi_inv(const Supermatrix &X, double tol) {
  if (X.q() % 2 != 0)
    throw DomainError("phi_inv needs an (m|2n) supermatrix");
  const SO0Check chk = is_so0(X, tol);
  if (!chk.ok)
    throw DomainError("phi_inv input is not in so0 (residual " +
                      std::to_string(chk.residual) + ")");
  const int m = X.p(), q = X.q(), order = X.order();
  ExtendedSuperbivector B(m, q / 2, order);
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      B.set_b(j, k, X(k, j) * 0.5);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < q; ++k)
      B.set_bq(j, k, X(m + k, j) * 0.5);
  // D = S Omega with S symmetric, S_pq = B_pq (p < q), S_pp = 2 B_pp.
  for (int p = 0; p < q; ++p)
    for (int r = p; r < q; ++r) {
      // (-D Omega)_{pr} = -D_{p, partner(r)} Omega_{partner(r), r}
      const int s = partner(r);
      const double om = (s % 2 == 0) ? 1.0 : -1.0;
      GrassmannNumber v = X(m + p, m + s) * (-om);
      if (p == r)
        v *= 0.5;
      B.set_B(p, r, v);
    }
  return B;
}

Supervector cl_commutator_action(const ExtendedSuperbivector &B,
                                 const Supervector &x) {
  if (B.m() != x.m() || B.n() != x.n() || B.order() != x.order())
    throw DomainError("bivector and supervector shapes differ");
  const int m = B.m(), q = 2 * B.n();
  std::vector<GrassmannNumber> y(m, GrassmannNumber(x.order()));
  std::vector<GrassmannNumber> yq(q, GrassmannNumber(x.order()));
  // [b e_j e_k, x] = 2b (x_j e_k - x_k e_j)
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      const GrassmannNumber &c = B.b(j, k);
      if (c.is_zero())
        continue;
      y[k] += gr_mul(c, x.even(j)) * 2.0;
      y[j] -= gr_mul(c, x.even(k)) * 2.0;
    }
  // [b` e_j e`_{2k-1}, x] = b` (2 x_j e`_{2k-1} + x`_{2k} e_j)
  // [b` e_j e`_{2k}, x]   = b` (2 x_j e`_{2k} - x`_{2k-1} e_j)
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < q; ++k) {
      const GrassmannNumber &c = B.bq(j, k);
      if (c.is_zero())
        continue;
      yq[k] += gr_mul(c, x.even(j)) * 2.0;
      if (k % 2 == 0)
        y[j] += gr_mul(c, x.odd(k + 1));
      else
        y[j] -= gr_mul(c, x.odd(k - 1));
    }
  for (int p = 0; p < q; ++p)
    for (int r = p; r < q; ++r) {
      const GrassmannNumber &c = B.B(p, r);
      if (c.is_zero())
        continue;
      const int P = p + 1, Q = r + 1;
      auto xo = [&](int idx1) { return gr_mul(c, x.odd(idx1 - 1)); };
      auto out = [&](int idx1) -> GrassmannNumber & { return yq[idx1 - 1]; };
      if (P % 2 == 0 && Q % 2 == 0) {
        // -b (x`_{2j-1} e`_{2k} + x`_{2k-1} e`_{2j})
        out(Q) -= xo(P - 1);
        out(P) -= xo(Q - 1);
      } else if (P % 2 == 1 && Q % 2 == 1) {
        // b (x`_{2j} e`_{2k-1} + x`_{2k} e`_{2j-1})
        out(Q) += xo(P + 1);
        out(P) += xo(Q + 1);
      } else if (P % 2 == 1) {
        // b (x`_{2j} e`_{2k} - x`_{2k-1} e`_{2j-1})
        out(Q) += xo(P + 1);
        out(P) -= xo(Q - 1);
      } else {
        // e`_{2j} (.) e`_{2k-1}: b (x`_{2k} e`_{2j} - x`_{2j-1} e`_{2k-1})
        out(P) += xo(Q + 1);
        out(Q) -= xo(P - 1);
      }
    }
  return Supervector(std::move(y), std::move(yq), x.order());
}

// ------------------------------------------------------------ reflections

Supermatrix reflect_matrix(const Supervector &w, double tol) {
  if (!on_supersphere(w, tol))
    throw DomainError("reflection axis is not on the supersphere w^2 = -1");
  const int m = w.m(), q = 2 * w.n(), order = w.order();
  // (w` Omega)_c = sum_l w`_l Omega_{l,c}
  std::vector<GrassmannNumber> wo(q, GrassmannNumber(order));
  for (int c = 0; c < q; ++c)
    wo[c] = (c % 2 == 1) ? w.odd(c - 1) : -w.odd(c + 1);
  GrassmannMatrix e(m + q, m + q, order);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      e(k, j) = gr_mul(w.even(k), w.even(j)) * -2.0;
      if (j == k)
        e(k, j) += GrassmannNumber(order, 1.0);
    }
    for (int c = 0; c < q; ++c)
      e(k, m + c) = gr_mul(w.even(k), wo[c]);
  }
  for (int k = 0; k < q; ++k) {
    for (int j = 0; j < m; ++j)
      e(m + k, j) = gr_mul(w.odd(k), w.even(j)) * -2.0;
    for (int c = 0; c < q; ++c) {
      e(m + k, m + c) = gr_mul(w.odd(k), wo[c]);
      if (c == k)
        e(m + k, m + c) += GrassmannNumber(order, 1.0);
    }
  }
  return Supermatrix(m, q, std::move(e));
}

Supervector reflect_apply(const Supervector &w, const Supervector &x,
                          double tol) {
  const Supervector by_matrix = reflect_matrix(w, tol) * x;
  const CliffordElement cw = w.to_clifford();
  const CliffordElement wxw = cl_mul(cl_mul(cw, x.to_clifford()), cw);
  const Supervector by_product = Supervector::from_clifford(wxw);
  if (!approx_equal(by_matrix, by_product, tol))
    throw std::logic_error("reflection: matrix and Clifford routes disagree");
  return by_matrix;
}

} // namespace superspin
