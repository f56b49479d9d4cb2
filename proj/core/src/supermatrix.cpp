#include "superspin/supermatrix.hpp"

#include "superspin/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace superspin {

namespace {

void check_shape(bool ok, const char *what) {
  if (!ok)
    throw DomainError(std::string("shape mismatch in ") + what);
}

GrassmannMatrix sub_block(const GrassmannMatrix &m, int r0, int c0, int rows,
                          int cols) {
  GrassmannMatrix out(rows, cols, m.order());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out(r, c) = m(r0 + r, c0 + c);
  return out;
}

GrassmannNumber leibniz_det(const GrassmannMatrix &m) {
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GrassmannNumber det(m.order());
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j])
          ++inversions;
    GrassmannNumber prod(m.order(), inversions % 2 ? -1.0 : 1.0);
    for (int i = 0; i < n && !prod.is_zero(); ++i)
      prod = gr_mul(prod, m(i, perm[i]));
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

GrassmannNumber laplace_det(const GrassmannMatrix &m) {
  const int n = m.rows();
  if (n <= 4)
    return leibniz_det(m);
  GrassmannNumber det(m.order());
  for (int r = 0; r < n; ++r) {
    if (m(r, 0).is_zero())
      continue;
    GrassmannMatrix minor(n - 1, n - 1, m.order());
    for (int i = 0, mi = 0; i < n; ++i) {
      if (i == r)
        continue;
      for (int j = 1; j < n; ++j)
        minor(mi, j - 1) = m(i, j);
      ++mi;
    }
    GrassmannNumber term = gr_mul(m(r, 0), laplace_det(minor));
    det += (r % 2 ? -term : term);
  }
  return det;
}

int body_pivot(const GrassmannMatrix &m, int k) {
  int best = -1;
  double best_abs = 0.0;
  for (int r = k; r < m.rows(); ++r) {
    const double a = std::abs(m(r, k).body());
    if (a > best_abs) {
      best_abs = a;
      best = r;
    }
  }
  return best;
}

} // namespace

// ---------------------------------------------------------------- matrices

GrassmannMatrix::GrassmannMatrix(int rows, int cols, int order)
    : rows_(rows), cols_(cols), order_(order),
      data_(static_cast<std::size_t>(rows) * cols, GrassmannNumber(order)) {
  if (rows < 0 || cols < 0)
    throw DomainError("negative matrix dimension");
}

GrassmannMatrix GrassmannMatrix::identity(int n, int order) {
  GrassmannMatrix m(n, n, order);
  for (int i = 0; i < n; ++i)
    m(i, i) = GrassmannNumber(order, 1.0);
  return m;
}

GrassmannMatrix GrassmannMatrix::from_body(const Eigen::MatrixXcd &b,
                                           int order) {
  GrassmannMatrix m(static_cast<int>(b.rows()), static_cast<int>(b.cols()),
                    order);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      m(r, c) = GrassmannNumber(order, b(r, c));
  return m;
}

GrassmannMatrix GrassmannMatrix::transpose() const {
  GrassmannMatrix t(cols_, rows_, order_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

Eigen::MatrixXcd GrassmannMatrix::body() const {
  Eigen::MatrixXcd b(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      b(r, c) = (*this)(r, c).body();
  return b;
}

double GrassmannMatrix::norm() const {
  double s = 0.0;
  for (const auto &g : data_)
    s += g.norm();
  return s;
}

bool GrassmannMatrix::all_even() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const GrassmannNumber &g) { return g.is_even(); });
}

bool GrassmannMatrix::all_odd() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const GrassmannNumber &g) { return g.is_odd(); });
}

GrassmannMatrix GrassmannMatrix::operator-() const {
  GrassmannMatrix m = *this;
  for (auto &g : m.data_)
    g = -g;
  return m;
}

GrassmannMatrix &GrassmannMatrix::operator+=(const GrassmannMatrix &o) {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += o.data_[i];
  return *this;
}

GrassmannMatrix &GrassmannMatrix::operator-=(const GrassmannMatrix &o) {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] -= o.data_[i];
  return *this;
}

GrassmannMatrix &GrassmannMatrix::operator*=(Scalar s) {
  for (auto &g : data_)
    g *= s;
  return *this;
}

GrassmannMatrix operator+(GrassmannMatrix a, const GrassmannMatrix &b) {
  a += b;
  return a;
}
GrassmannMatrix operator-(GrassmannMatrix a, const GrassmannMatrix &b) {
  a -= b;
  return a;
}
GrassmannMatrix operator*(GrassmannMatrix a, Scalar s) {
  a *= s;
  return a;
}

GrassmannMatrix operator*(const GrassmannMatrix &a, const GrassmannMatrix &b) {
  check_shape(a.cols() == b.rows(), "matrix product");
  if (a.order() != b.order())
    throw DomainError("Grassmann order mismatch in matrix product");
  GrassmannMatrix out(a.rows(), b.cols(), a.order());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const GrassmannNumber &x = a(r, k);
      if (x.is_zero())
        continue;
      for (int c = 0; c < b.cols(); ++c)
        if (!b(k, c).is_zero())
          out(r, c) += gr_mul(x, b(k, c));
    }
  return out;
}

GrassmannMatrix operator*(const GrassmannNumber &s, const GrassmannMatrix &a) {
  GrassmannMatrix out(a.rows(), a.cols(), a.order());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out(r, c) = gr_mul(s, a(r, c));
  return out;
}

GrassmannNumber gm_det(const GrassmannMatrix &m) {
  check_shape(m.rows() == m.cols(), "determinant");
  const int n = m.rows();
  if (n == 0)
    return GrassmannNumber(m.order(), 1.0);
  if (n <= 4)
    return leibniz_det(m);
  GrassmannMatrix a = m;
  GrassmannNumber det(m.order(), 1.0);
  for (int k = 0; k < n; ++k) {
    const int piv = body_pivot(a, k);
    if (piv < 0)
      return laplace_det(m);
    if (piv != k) {
      for (int c = 0; c < n; ++c)
        std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    const GrassmannNumber inv = gr_inverse(a(k, k));
    det = gr_mul(det, a(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero())
        continue;
      const GrassmannNumber f = gr_mul(a(r, k), inv);
      for (int c = k; c < n; ++c)
        a(r, c) -= gr_mul(f, a(k, c));
    }
  }
  return det;
}

GrassmannMatrix gm_inverse(const GrassmannMatrix &m) {
  check_shape(m.rows() == m.cols(), "inverse");
  const int n = m.rows();
  GrassmannMatrix a = m;
  GrassmannMatrix inv = GrassmannMatrix::identity(n, m.order());
  for (int k = 0; k < n; ++k) {
    const int piv = body_pivot(a, k);
    if (piv < 0)
      throw NotInvertibleError("matrix body is singular");
    if (piv != k)
      for (int c = 0; c < n; ++c) {
        std::swap(a(k, c), a(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    const GrassmannNumber p = gr_inverse(a(k, k));
    for (int c = 0; c < n; ++c) {
      a(k, c) = gr_mul(p, a(k, c));
      inv(k, c) = gr_mul(p, inv(k, c));
    }
    for (int r = 0; r < n; ++r) {
      if (r == k || a(r, k).is_zero())
        continue;
      const GrassmannNumber f = a(r, k);
      for (int c = 0; c < n; ++c) {
        if (!a(k, c).is_zero())
          a(r, c) -= gr_mul(f, a(k, c));
        if (!inv(k, c).is_zero())
          inv(r, c) -= gr_mul(f, inv(k, c));
      }
    }
  }
  return inv;
}

// ------------------------------------------------------------ supermatrices

Supermatrix::Supermatrix(int p, int q, int order)
    : p_(p), q_(q), entries_(p + q, p + q, order) {
  if (p < 0 || q < 0)
    throw DomainError("negative supermatrix block size");
}

Supermatrix::Supermatrix(int p, int q, GrassmannMatrix entries)
    : p_(p), q_(q), entries_(std::move(entries)) {
  if (p < 0 || q < 0 || entries_.rows() != p + q || entries_.cols() != p + q)
    throw FormatError("supermatrix entries do not match the (p|q) shape");
  validate();
}

void Supermatrix::validate() const {
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c) {
      const GrassmannNumber &g = entries_(r, c);
      if (g.order() != order())
        throw FormatError("supermatrix entries must share one Grassmann order");
      const bool ok = is_odd_position(r, c) ? g.is_odd() : g.is_even();
      if (!ok)
        throw FormatError("parity violation at entry (" + std::to_string(r) +
                          "," + std::to_string(c) + ")");
    }
}

void Supermatrix::set(int r, int c, GrassmannNumber v) {
  if (v.order() != order())
    throw DomainError("Grassmann order mismatch in supermatrix entry");
  const bool ok = is_odd_position(r, c) ? v.is_odd() : v.is_even();
  if (!ok)
    throw FormatError("parity violation at entry (" + std::to_string(r) + "," +
                      std::to_string(c) + ")");
  entries_(r, c) = std::move(v);
}

Supermatrix Supermatrix::identity(int p, int q, int order) {
  return Supermatrix(p, q, GrassmannMatrix::identity(p + q, order));
}

Supermatrix Supermatrix::from_blocks(const GrassmannMatrix &a,
                                     const GrassmannMatrix &b,
                                     const GrassmannMatrix &c,
                                     const GrassmannMatrix &d) {
  const int p = a.rows(), q = d.rows();
  if (a.cols() != p || d.cols() != q || b.rows() != p || b.cols() != q ||
      c.rows() != q || c.cols() != p)
    throw DomainError("inconsistent block shapes");
  GrassmannMatrix e(p + q, p + q, a.order());
  for (int r = 0; r < p; ++r) {
    for (int k = 0; k < p; ++k)
      e(r, k) = a(r, k);
    for (int k = 0; k < q; ++k)
      e(r, p + k) = b(r, k);
  }
  for (int r = 0; r < q; ++r) {
    for (int k = 0; k < p; ++k)
      e(p + r, k) = c(r, k);
    for (int k = 0; k < q; ++k)
      e(p + r, p + k) = d(r, k);
  }
  return Supermatrix(p, q, std::move(e));
}

Supermatrix Supermatrix::from_body(int p, int q, int order,
                                   const Eigen::MatrixXcd &m) {
  if (m.rows() != p + q || m.cols() != p + q)
    throw DomainError("body matrix shape mismatch");
  return Supermatrix(p, q, GrassmannMatrix::from_body(m, order));
}

Supermatrix Supermatrix::block_diag(int order, const Eigen::MatrixXcd &a,
                                    const Eigen::MatrixXcd &d) {
  const int p = static_cast<int>(a.rows()), q = static_cast<int>(d.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p + q, p + q);
  m.topLeftCorner(p, p) = a;
  m.bottomRightCorner(q, q) = d;
  return from_body(p, q, order, m);
}

GrassmannMatrix Supermatrix::block_a() const {
  return sub_block(entries_, 0, 0, p_, p_);
}
GrassmannMatrix Supermatrix::block_b() const {
  return sub_block(entries_, 0, p_, p_, q_);
}
GrassmannMatrix Supermatrix::block_c() const {
  return sub_block(entries_, p_, 0, q_, p_);
}
GrassmannMatrix Supermatrix::block_d() const {
  return sub_block(entries_, p_, p_, q_, q_);
}

Supermatrix Supermatrix::body() const {
  Supermatrix out(p_, q_, order());
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      out.entries_(r, c) = GrassmannNumber(order(), entries_(r, c).body());
  return out;
}

Supermatrix Supermatrix::nilpotent_part() const {
  Supermatrix out(p_, q_, order());
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      out.entries_(r, c) = entries_(r, c).nilpotent_part();
  return out;
}

Supermatrix Supermatrix::grade(int k) const {
  Supermatrix out(p_, q_, order());
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      out.entries_(r, c) = entries_(r, c).grade(k);
  return out;
}

bool Supermatrix::is_body_only() const {
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      if (!entries_(r, c).nilpotent_part().is_zero())
        return false;
  return true;
}

bool Supermatrix::is_nilpotent() const {
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      if (entries_(r, c).body() != 0.0)
        return false;
  return true;
}

double Supermatrix::max_entry_norm() const {
  double mx = 0.0;
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      mx = std::max(mx, entries_(r, c).norm());
  return mx;
}

Supermatrix Supermatrix::operator-() const {
  Supermatrix out = *this;
  out.entries_ = -entries_;
  return out;
}

Supermatrix &Supermatrix::operator+=(const Supermatrix &o) {
  check_shape(p_ == o.p_ && q_ == o.q_, "supermatrix addition");
  entries_ += o.entries_;
  return *this;
}

Supermatrix &Supermatrix::operator-=(const Supermatrix &o) {
  check_shape(p_ == o.p_ && q_ == o.q_, "supermatrix subtraction");
  entries_ -= o.entries_;
  return *this;
}

Supermatrix &Supermatrix::operator*=(Scalar s) {
  entries_ *= s;
  return *this;
}

Supermatrix operator+(Supermatrix a, const Supermatrix &b) {
  a += b;
  return a;
}
Supermatrix operator-(Supermatrix a, const Supermatrix &b) {
  a -= b;
  return a;
}
Supermatrix operator*(Supermatrix a, Scalar s) {
  a *= s;
  return a;
}
Supermatrix operator*(Scalar s, Supermatrix a) {
  a *= s;
  return a;
}
Supermatrix operator*(const Supermatrix &a, const Supermatrix &b) {
  return sm_mul(a, b);
}

Supermatrix sm_mul(const Supermatrix &m, const Supermatrix &l) {
  check_shape(m.p() == l.p() && m.q() == l.q(), "supermatrix product");
  return Supermatrix(m.p(), m.q(), m.entries() * l.entries());
}

Supermatrix sm_commutator(const Supermatrix &m, const Supermatrix &l) {
  return sm_mul(m, l) - sm_mul(l, m);
}

Supermatrix sm_supertranspose(const Supermatrix &m) {
  return Supermatrix::from_blocks(m.block_a().transpose(),
                                  m.block_c().transpose(),
                                  -m.block_b().transpose(),
                                  m.block_d().transpose());
}

GrassmannNumber sm_supertrace(const Supermatrix &m) {
  GrassmannNumber s(m.order());
  for (int i = 0; i < m.p(); ++i)
    s += m(i, i);
  for (int i = m.p(); i < m.size(); ++i)
    s -= m(i, i);
  return s;
}

Supermatrix sm_inverse(const Supermatrix &m) {
  const GrassmannMatrix a = m.block_a(), b = m.block_b(), c = m.block_c(),
                        d = m.block_d();
  const GrassmannMatrix a_inv = gm_inverse(a);
  const GrassmannMatrix d_inv = gm_inverse(d);
  const GrassmannMatrix sa_inv = gm_inverse(a - b * d_inv * c);
  const GrassmannMatrix sd_inv = gm_inverse(d - c * a_inv * b);
  return Supermatrix::from_blocks(sa_inv, -(a_inv * b * sd_inv),
                                  -(d_inv * c * sa_inv), sd_inv);
}

GrassmannNumber sm_sdet(const Supermatrix &m) {
  const GrassmannMatrix a = m.block_a(), b = m.block_b(), c = m.block_c(),
                        d = m.block_d();
  const GrassmannMatrix d_inv = gm_inverse(d);
  if (m.p() > 0 && std::abs(Eigen::MatrixXcd(a.body()).determinant()) == 0.0)
    throw NotInvertibleError("block A has singular body");
  return gr_mul(gm_det(a - b * d_inv * c), gr_inverse(gm_det(d)));
}

GrassmannNumber sm_sdet_alt(const Supermatrix &m) {
  const GrassmannMatrix a = m.block_a(), b = m.block_b(), c = m.block_c(),
                        d = m.block_d();
  const GrassmannMatrix a_inv = gm_inverse(a);
  return gr_mul(gm_det(a), gr_inverse(gm_det(d - c * a_inv * b)));
}

namespace {

Supermatrix finite_exp(const Supermatrix &x) {
  Supermatrix sum = Supermatrix::identity(x.p(), x.q(), x.order());
  Supermatrix term = sum;
  for (int k = 1; k <= x.order() + 1; ++k) {
    term = sm_mul(term, x) * (1.0 / k);
    if (term.norm() == 0.0)
      break;
    sum += term;
  }
  return sum;
}

Supermatrix taylor_exp(const Supermatrix &x) {
  Supermatrix sum = Supermatrix::identity(x.p(), x.q(), x.order());
  Supermatrix term = sum;
  for (int k = 1; k < 200; ++k) {
    term = sm_mul(term, x) * (1.0 / k);
    sum += term;
    if (term.norm() < 1e-14 * sum.norm())
      break;
  }
  return sum;
}

// Sum_{j>=1} (-1)^{j+1} x^j / j, stopped when terms vanish or are negligible.
Supermatrix log_series(const Supermatrix &x, int max_terms) {
  Supermatrix sum(x.p(), x.q(), x.order());
  Supermatrix power = Supermatrix::identity(x.p(), x.q(), x.order());
  for (int j = 1; j <= max_terms; ++j) {
    power = sm_mul(power, x);
    const double pn = power.norm();
    if (pn == 0.0)
      break;
    sum += power * ((j % 2 ? 1.0 : -1.0) / j);
    if (pn / j < 1e-16 * std::max(1.0, sum.norm()))
      break;
  }
  return sum;
}

// Principal square root by the Denman-Beavers iteration.
Supermatrix sqrt_db(const Supermatrix &m) {
  Supermatrix y = m;
  Supermatrix z = Supermatrix::identity(m.p(), m.q(), m.order());
  for (int it = 0; it < 100; ++it) {
    const Supermatrix y_next = (y + sm_inverse(z)) * 0.5;
    const Supermatrix z_next = (z + sm_inverse(y)) * 0.5;
    const double delta = (y_next - y).norm();
    y = y_next;
    z = z_next;
    if (delta <= 1e-15 * y.norm())
      break;
  }
  return y;
}

double body_spectral_radius(const Eigen::MatrixXcd &x) {
  if (x.rows() == 0)
    return 0.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

Supermatrix sm_exp(const Supermatrix &m) {
  if (m.is_nilpotent())
    return finite_exp(m);
  const double nrm = m.norm();
  int s = 0;
  if (nrm > 1.0)
    s = static_cast<int>(std::ceil(std::log2(nrm)));
  Supermatrix r = taylor_exp(m * std::ldexp(1.0, -s));
  for (int i = 0; i < s; ++i)
    r = sm_mul(r, r);
  return r;
}

Supermatrix sm_ln(const Supermatrix &m) {
  const Supermatrix id = Supermatrix::identity(m.p(), m.q(), m.order());
  const Supermatrix x = m - id;
  if (x.is_nilpotent())
    return log_series(x, m.order() + 1);
  const Eigen::MatrixXcd xb = x.body_matrix();
  const double rho = std::max(
      body_spectral_radius(xb.topLeftCorner(m.p(), m.p())),
      body_spectral_radius(xb.bottomRightCorner(m.q(), m.q())));
  if (x.norm() >= 1.0 && rho >= 1.0)
    throw OutOfDomainError("logarithm requires ||M - I|| < 1 or spectral radius of the body of M - I below 1");
  Supermatrix y = m;
  int k = 0;
  while ((y - id).norm() > 0.25 && k < 60) {
    y = sqrt_db(y);
    ++k;
  }
  return log_series(y - id, 400) * std::ldexp(1.0, k);
}

Supermatrix sm_body(const Supermatrix &m) { return m.body(); }
Supermatrix sm_grade(const Supermatrix &m, int k) { return m.grade(k); }

bool approx_equal(const Supermatrix &a, const Supermatrix &b, double tol) {
  check_shape(a.p() == b.p() && a.q() == b.q(), "comparison");
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= tol * scale;
}

Eigen::MatrixXd omega(int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    w(2 * j, 2 * j + 1) = 1.0;
    w(2 * j + 1, 2 * j) = -1.0;
  }
  return w;
}

Supermatrix block_q(int m, int n, int order) {
  return Supermatrix::block_diag(order, Eigen::MatrixXcd::Identity(m, m),
                                 (-0.5 * omega(n)).cast<Scalar>());
}

} // namespace superspin
