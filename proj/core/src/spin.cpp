#include "superspin/spin.hpp"

#include "superspin/errors.hpp"
#include "superspin/orthosymplectic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace superspin {

namespace {

constexpr double kPi = std::numbers::pi;

void check_shape(const SpinElement &s, const ExtendedSuperbivector &B) {
  if (B.m() != s.m || B.n() != s.n || B.order() != s.order)
    throw FormatError("spin factor shape does not match the element");
}

bool real_body_only(const GrassmannNumber &g, double tol) {
  return g.nilpotent_part().norm() <= tol && std::abs(g.body().imag()) <= tol;
}

Eigen::MatrixXcd d_block_body(const Supermatrix &X) {
  const int m = X.p();
  const int q = X.q();
  return X.body_matrix().block(m, m, q, q);
}

void check_plane(int plane, const WeylContext &ctx) {
  if (plane < 1 || plane > ctx.n)
    throw DomainError("oscillator plane out of range");
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i)
    f *= i;
  return f;
}

// Integer k with theta = k pi to rounding, if any.
bool pi_multiple(double theta, long long &k) {
  const double r = std::round(theta / kPi);
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(theta - r * kPi) <= 4 * eps * std::max(1.0, std::abs(theta))) {
    k = static_cast<long long>(r);
    return true;
  }
  return false;
}

} // namespace

SpinElement::SpinElement(int m, int n, int order,
                         std::vector<ExtendedSuperbivector> f)
    : m(m), n(n), order(order), factors(std::move(f)) {
  for (const auto &B : factors)
    check_shape(*this, B);
}

bool SpinElement::is_identity() const {
  for (const auto &B : factors)
    if (!B.is_zero())
      return false;
  return true;
}

SpinElement operator*(const SpinElement &a, const SpinElement &b) {
  if (a.m != b.m || a.n != b.n || a.order != b.order)
    throw FormatError("spin elements of different shapes");
  SpinElement r = a;
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

Supermatrix h_action(const SpinElement &s) {
  Supermatrix h = Supermatrix::identity(s.m, 2 * s.n, s.order);
  for (const auto &B : s.factors) {
    check_shape(s, B);
    h = h * sm_exp(phi(B));
  }
  return h;
}

Supervector conjugate_nilpotent(const ExtendedSuperbivector &B,
                                const Supervector &x) {
  if (!B.body().is_zero())
    throw DomainError("conjugation needs a bivector without body");
  const int cap = 2 * B.order() + 2;
  const MulOptions opts{cap, false};
  const CliffordElement b = B.to_clifford(cap);
  auto expo = [&](const CliffordElement &y) {
    CliffordElement sum = CliffordElement::scalar(y.m(), y.n(), y.order(), 1.0, cap);
    CliffordElement term = sum;
    for (int k = 1; k <= B.order() + 1; ++k) {
      term = cl_mul(term, y, opts) * Scalar(1.0 / k);
      if (term.is_zero())
        break;
      sum += term;
    }
    return sum;
  };
  const CliffordElement ep = expo(b);
  const CliffordElement em = expo(-b);
  const CliffordElement y = cl_mul(cl_mul(ep, x.to_clifford(cap), opts), em, opts);
  return Supervector::from_clifford(y);
}

XiSplit xi_split(const ExtendedSuperbivector &B) {
  const int m = B.m();
  const Supermatrix X = phi(B.body());
  const Eigen::MatrixXcd a = X.body_matrix().block(0, 0, m, m);
  const Eigen::MatrixXcd d = d_block_body(X);
  const Eigen::MatrixXcd anti = (d - d.transpose()) * 0.5;
  const Eigen::MatrixXcd sym = (d + d.transpose()) * 0.5;
  XiSplit s;
  s.xi1 = phi_inv(Supermatrix::block_diag(B.order(), a, anti));
  s.xi2 = phi_inv(Supermatrix::block_diag(B.order(), Eigen::MatrixXcd::Zero(m, m), sym));
  s.xi3 = B.nilpotent_part();
  return s;
}

bool in_xi1(const ExtendedSuperbivector &B, double tol) {
  for (const auto *g : B.slots())
    if (!real_body_only(*g, tol))
      return false;
  for (int j = 0; j < B.m(); ++j)
    for (int k = 0; k < 2 * B.n(); ++k)
      if (B.bq(j, k).norm() > tol)
        return false;
  const Eigen::MatrixXcd d = d_block_body(phi(B));
  if (d.size() == 0)
    return true;
  return (d + d.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, d.cwiseAbs().maxCoeff());
}

bool in_xi2(const ExtendedSuperbivector &B, double tol) {
  for (const auto *g : B.slots())
    if (!real_body_only(*g, tol))
      return false;
  for (int j = 0; j < B.m(); ++j) {
    for (int k = j + 1; k < B.m(); ++k)
      if (B.b(j, k).norm() > tol)
        return false;
    for (int k = 0; k < 2 * B.n(); ++k)
      if (B.bq(j, k).norm() > tol)
        return false;
  }
  const Eigen::MatrixXcd d = d_block_body(phi(B));
  if (d.size() == 0)
    return true;
  return (d - d.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, d.cwiseAbs().maxCoeff());
}

bool in_xi3(const ExtendedSuperbivector &B, double tol) {
  for (const auto *g : B.slots())
    if (std::abs(g->body()) > tol)
      return false;
  return true;
}

SpinElement lift(const Supermatrix &M, double tol) {
  if (M.q() % 2 != 0)
    throw FormatError("odd block size must be even");
  const So0Decomposition d = decompose_SO0(M, tol);
  const double inv_tol = std::max(tol, 1e-8);
  return SpinElement(M.p(), M.q() / 2, M.order(),
                     {phi_inv(d.compact, inv_tol), phi_inv(d.symmetric, inv_tol),
                      phi_inv(d.nilpotent, inv_tol)});
}

CliffordElement oscillator_a(int plane, const WeylContext &ctx) {
  check_plane(plane, ctx);
  return CliffordElement::ep(ctx.m, ctx.n, ctx.order, 2 * plane - 1, ctx.cap) -
         CliffordElement::ep(ctx.m, ctx.n, ctx.order, 2 * plane, ctx.cap) * Scalar(0, 1);
}

CliffordElement oscillator_b(int plane, const WeylContext &ctx) {
  check_plane(plane, ctx);
  return CliffordElement::ep(ctx.m, ctx.n, ctx.order, 2 * plane - 1, ctx.cap) +
         CliffordElement::ep(ctx.m, ctx.n, ctx.order, 2 * plane, ctx.cap) * Scalar(0, 1);
}

double stirling2(int k, int j) {
  if (k < 0 || j < 0 || j > k)
    return 0.0;
  std::vector<double> row(k + 1, 0.0);
  row[0] = 1.0;
  for (int r = 1; r <= k; ++r) {
    for (int c = std::min(r, k); c >= 1; --c)
      row[c] = c * row[c] + row[c - 1];
    row[0] = 0.0;
  }
  return row[j];
}

namespace {

// a^l b^l for l = 0..L.
std::vector<CliffordElement> ab_powers(int L, int plane, const WeylContext &ctx) {
  const MulOptions opts{ctx.cap, true};
  const CliffordElement a = oscillator_a(plane, ctx);
  const CliffordElement b = oscillator_b(plane, ctx);
  std::vector<CliffordElement> out;
  CliffordElement ap = CliffordElement::scalar(ctx.m, ctx.n, ctx.order, 1.0, ctx.cap);
  CliffordElement bp = ap;
  out.push_back(ap);
  for (int l = 1; l <= L; ++l) {
    ap = cl_mul(ap, a, opts);
    bp = cl_mul(bp, b, opts);
    out.push_back(cl_mul(ap, bp, opts));
  }
  return out;
}

} // namespace

CliffordElement weyl_stirling_pow(int k, int plane, const WeylContext &ctx) {
  check_plane(plane, ctx);
  if (k < 0)
    throw DomainError("negative power");
  if (2 * k > ctx.cap)
    throw CapExceededError("(ab)^k needs degree 2k within the cap");
  const std::vector<CliffordElement> pw = ab_powers(k, plane, ctx);
  CliffordElement sum(ctx.m, ctx.n, ctx.order, ctx.cap);
  for (int j = 0; j <= k; ++j) {
    const double s = stirling2(k, j);
    if (s == 0.0)
      continue;
    sum += pw[j] * (s * std::pow(Scalar(0, -2), k - j));
  }
  return sum;
}

OscillatorExp oscillator_exp(double theta, int plane, const WeylContext &ctx) {
  check_plane(plane, ctx);
  if (!std::isfinite(theta))
    throw DomainError("non-finite angle");
  OscillatorExp r;
  long long k = 0;
  if (pi_multiple(theta, k)) {
    const double s = (k % 2 == 0) ? 1.0 : -1.0;
    r.exact = true;
    r.ab_coefficients = {Scalar(s)};
    r.value = CliffordElement::scalar(ctx.m, ctx.n, ctx.order, s, ctx.cap);
    return r;
  }
  const int L = ctx.cap / 2;
  const Scalar c = std::exp(Scalar(0, -2 * theta)) - 1.0;
  const Scalar pre = std::exp(Scalar(0, -theta));
  const std::vector<CliffordElement> pw = ab_powers(L, plane, ctx);
  r.value = CliffordElement(ctx.m, ctx.n, ctx.order, ctx.cap);
  Scalar cl = pre;
  for (int l = 0; l <= L; ++l) {
    if (l > 0)
      cl *= c / (Scalar(0, -2) * double(l));
    r.ab_coefficients.push_back(cl);
    r.value += pw[l] * cl;
  }
  const double h = std::abs(c) / 2.0;
  r.truncation_bound = std::pow(h, L + 1) / factorial(L + 1) * std::exp(h);
  return r;
}

CliffordElement classical_exp(const CliffordElement &x) {
  if (x.n() != 0)
    throw DomainError("classical exponential needs n = 0");
  const double nrm = x.norm();
  int s = 0;
  if (nrm > 0.5)
    s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const CliffordElement y = x * Scalar(std::ldexp(1.0, -s));
  CliffordElement sum = CliffordElement::scalar(x.m(), 0, x.order(), 1.0, x.cap());
  CliffordElement term = sum;
  for (int k = 1; k < 60; ++k) {
    term = cl_mul(term, y) * Scalar(1.0 / k);
    sum += term;
    if (term.norm() <= 1e-17 * sum.norm())
      break;
  }
  for (int i = 0; i < s; ++i)
    sum = cl_mul(sum, sum);
  return sum;
}

int kernel_sign(const ExtendedSuperbivector &B, double tol) {
  if (!in_xi1(B, tol))
    throw DomainError("bivector is not in Xi_1");
  const Supermatrix X = phi(B);
  const Supermatrix H = sm_exp(X);
  const Supermatrix I = Supermatrix::identity(X.p(), X.q(), X.order());
  const double scale = std::max(1.0, X.max_entry_norm());
  if ((H - I).max_entry_norm() > tol * scale)
    throw NotInKernelError("exp(phi(B)) is not the identity");

  const int m = B.m();
  int sign = 1;
  if (m >= 2) {
    ExtendedSuperbivector bo(m, 0, 0);
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        bo.set_b(j, k, GrassmannNumber(0, B.b(j, k).body().real()));
    const CliffordElement e = classical_exp(bo.to_clifford());
    const double s0 = e.scalar_part().body().real();
    if (std::abs(std::abs(s0) - 1.0) > 1e-6 ||
        (e - CliffordElement::scalar(m, 0, 0, s0, e.cap())).norm() > 1e-6)
      throw NotInKernelError("bosonic exponential is not +-1");
    sign *= s0 > 0 ? 1 : -1;
  }
  if (B.n() > 0) {
    const Eigen::MatrixXd ds = d_block_body(X).real();
    const Eigen::MatrixXcd L = unitary_iso(ds);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L * Scalar(0, 1));
    long long total = 0;
    for (int j = 0; j < es.eigenvalues().size(); ++j) {
      const double th = es.eigenvalues()(j);
      const double k = std::round(th / (2 * kPi));
      if (std::abs(th - 2 * kPi * k) > 1e-6 * std::max(1.0, std::abs(th)))
        throw NotInKernelError("symplectic angle is not a multiple of 2 pi");
      total += static_cast<long long>(std::abs(k));
    }
    if (total % 2 != 0)
      sign = -sign;
  }
  return sign;
}

int kernel_sign(const SpinElement &s, double tol) {
  int sign = 1;
  for (const auto &B : s.factors)
    sign *= kernel_sign(B, tol);
  return sign;
}

SpinElement frft_element(const std::vector<double> &thetas, int m, int order) {
  const int n = static_cast<int>(thetas.size());
  ExtendedSuperbivector B(m, n, order);
  for (int j = 0; j < n; ++j) {
    const GrassmannNumber v(order, thetas[j] * kPi / 2.0);
    B.set_B(2 * j, 2 * j, v);
    B.set_B(2 * j + 1, 2 * j + 1, v);
  }
  return SpinElement(m, n, order, {B});
}

} // namespace superspin
