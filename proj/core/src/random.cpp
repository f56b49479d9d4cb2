#include "superspin/random.hpp"

#include "superspin/errors.hpp"
#include "superspin/orthosymplectic.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace superspin {

double Rng::uniform(double a, double b) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

double Rng::normal() {
  double u1 = 0.0;
  while (u1 <= 0.0)
    u1 = uniform(0.0, 1.0);
  const double u2 = uniform(0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

GrassmannNumber random_grassmann(Rng &rng, int order, Parity parity,
                                 double body, double nil) {
  std::vector<GrassmannNumber::Term> terms;
  const std::uint32_t dim = 1u << order;
  for (std::uint32_t mask = 0; mask < dim; ++mask) {
    const bool odd = std::popcount(mask) % 2 == 1;
    if (parity == Parity::even && odd)
      continue;
    if (parity == Parity::odd && !odd)
      continue;
    const double scale = mask == 0 ? body : nil;
    terms.push_back({mask, rng.uniform(-scale, scale)});
  }
  return GrassmannNumber::from_terms(order, std::move(terms));
}

Supermatrix random_supermatrix(Rng &rng, int p, int q, int order, double body,
                               double nil) {
  GrassmannMatrix e(p + q, p + q, order);
  for (int r = 0; r < p + q; ++r)
    for (int c = 0; c < p + q; ++c) {
      const bool odd = (r < p) != (c < p);
      e(r, c) = random_grassmann(rng, order, odd ? Parity::odd : Parity::even,
                                 body, nil);
    }
  return Supermatrix(p, q, std::move(e));
}

Supervector random_supervector(Rng &rng, int m, int n, int order, double body,
                               double nil) {
  Supervector v(m, n, order);
  for (int j = 0; j < m; ++j)
    v.set_even(j, random_grassmann(rng, order, Parity::even, body, nil));
  for (int k = 0; k < 2 * n; ++k)
    v.set_odd(k, random_grassmann(rng, order, Parity::odd, body, nil));
  return v;
}

Supervector random_supersphere(Rng &rng, int m, int n, int order, double nil) {
  if (m < 1)
    throw DomainError("the supersphere needs at least one even direction");
  std::vector<double> body(m);
  double len = 0.0;
  while (len < 1e-3) {
    len = 0.0;
    for (auto &b : body) {
      b = rng.normal();
      len += b * b;
    }
    len = std::sqrt(len);
  }
  Supervector w(m, n, order);
  for (int j = 0; j < m; ++j) {
    GrassmannNumber g = random_grassmann(rng, order, Parity::even, 0.0, nil);
    g += GrassmannNumber(order, body[j] / len);
    w.set_even(j, g);
  }
  for (int k = 0; k < 2 * n; ++k)
    w.set_odd(k, random_grassmann(rng, order, Parity::odd, 0.0, nil));
  // <s w, s w> = s^2 <w, w> for even s, so s = <w, w>^{-1/2} normalises.
  w *= gr_inverse(gr_sqrt(inner_product(w, w)));
  return w;
}

ExtendedSuperbivector random_bivector(Rng &rng, int m, int n, int order,
                                      double body, double nil) {
  ExtendedSuperbivector B(m, n, order);
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      B.set_b(j, k, random_grassmann(rng, order, Parity::even, body, nil));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < 2 * n; ++k)
      B.set_bq(j, k, random_grassmann(rng, order, Parity::odd, body, nil));
  for (int j = 0; j < 2 * n; ++j)
    for (int k = j; k < 2 * n; ++k)
      B.set_B(j, k, random_grassmann(rng, order, Parity::even, body, nil));
  return B;
}

Eigen::MatrixXd random_rotation(Rng &rng, int m) {
  Eigen::MatrixXd g(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      g(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < m; ++c)
    if (rr(c, c) < 0)
      q.col(c) = -q.col(c);
  if (m > 0 && q.determinant() < 0)
    q.col(0) = -q.col(0);
  return q;
}

Eigen::MatrixXd random_compact_symplectic(Rng &rng, int n) {
  // exp of a skew-Hermitian n x n matrix, mapped back to real 2n x 2n.
  Eigen::MatrixXcd h(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      h(r, c) = Scalar(rng.normal(), rng.normal());
  const Eigen::MatrixXcd skew = (h - h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(skew * Scalar(0, -1));
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = std::exp(Scalar(0, 1) * es.eigenvalues()(k));
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
  return unitary_iso_inv(u);
}

} // namespace superspin
