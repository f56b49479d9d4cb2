#include "superspin/orthosymplectic.hpp"

#include "superspin/errors.hpp"
#include "superspin/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace superspin {

namespace {

constexpr double kPi = std::numbers::pi;

double max_entry_norm(const GrassmannMatrix &m) {
  double mx = 0.0;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      mx = std::max(mx, m(r, c).norm());
  return mx;
}

double principal_phase(Scalar z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

void require_square(const Eigen::MatrixXd &a, const char *what) {
  if (a.rows() != a.cols())
    throw DomainError(std::string(what) + " needs a square matrix");
}

} // namespace

O0Check is_O0(const Supermatrix &M, double tol) {
  if (M.q() % 2 != 0)
    throw DomainError("O0 membership needs an (m|2n) supermatrix");
  const int m = M.p(), n = M.q() / 2, order = M.order();
  O0Check out;
  const Supermatrix Q = block_q(m, n, order);
  out.residual =
      (sm_mul(sm_mul(sm_supertranspose(M), Q), M) - Q).max_entry_norm();

  const GrassmannMatrix A = M.block_a(), B = M.block_b(), C = M.block_c(),
                        D = M.block_d();
  const GrassmannMatrix W =
      GrassmannMatrix::from_body(omega(n).cast<Scalar>(), order);
  const GrassmannMatrix At = A.transpose(), Bt = B.transpose(),
                        Ct = C.transpose(), Dt = D.transpose();
  const GrassmannMatrix e1 = At * A - Ct * W * C * 0.5 -
                             GrassmannMatrix::identity(m, order);
  const GrassmannMatrix e2 = At * B - Ct * W * D * 0.5;
  const GrassmannMatrix e3 = Bt * B + Dt * W * D * 0.5 - W * 0.5;
  out.block_residual = std::max(
      {max_entry_norm(e1), max_entry_norm(e2), max_entry_norm(e3)});

  const double scale = std::max(1.0, std::pow(M.max_entry_norm(), 2));
  out.ok = out.residual <= tol * scale && out.block_residual <= tol * scale;
  try {
    out.sdet = sm_sdet(M);
  } catch (const NotInvertibleError &) {
    out.ok = false;
  }
  return out;
}

MembershipCheck is_SO0(const Supermatrix &M, double tol) {
  const O0Check o = is_O0(M, tol);
  MembershipCheck out;
  out.residual = o.residual;
  if (!o.sdet)
    return out;
  const double sdet_dev =
      (*o.sdet - GrassmannNumber(M.order(), 1.0)).norm();
  out.residual = std::max(out.residual, sdet_dev);
  const double scale = std::max(1.0, std::pow(M.max_entry_norm(), 2));
  out.ok = o.ok && sdet_dev <= tol * scale;
  return out;
}

MembershipCheck is_so0(const Supermatrix &X, double tol) {
  if (X.q() % 2 != 0)
    throw DomainError("so0 membership needs an (m|2n) supermatrix");
  const Supermatrix Q = block_q(X.p(), X.q() / 2, X.order());
  MembershipCheck out;
  out.residual =
      (sm_mul(sm_supertranspose(X), Q) + sm_mul(Q, X)).max_entry_norm();
  out.ok = out.residual <= tol * std::max(1.0, X.max_entry_norm());
  return out;
}

Supermatrix connect_path(const Supermatrix &M, double t, double tol) {
  const MembershipCheck chk = is_SO0(M, tol);
  if (!chk.ok)
    throw DomainError("connect_path needs an element of SO0 (residual " +
                      std::to_string(chk.residual) + ")");
  Supermatrix out(M.p(), M.q(), M.order());
  double tj = 1.0;
  for (int j = 0; j <= M.order(); ++j) {
    out += M.grade(j) * tj;
    tj *= t;
  }
  return out;
}

Eigen::MatrixXd so_rotation_log(const Eigen::MatrixXd &A0, double tol) {
  require_square(A0, "so_rotation_log");
  const int m = static_cast<int>(A0.rows());
  if (m == 0)
    return A0;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  if ((A0.transpose() * A0 - I).cwiseAbs().maxCoeff() > tol ||
      A0.determinant() <= 0.0)
    throw DomainError("so_rotation_log needs an element of SO(m)");
  Eigen::RealSchur<Eigen::MatrixXd> schur(A0);
  const Eigen::MatrixXd &T = schur.matrixT();
  const Eigen::MatrixXd &U = schur.matrixU();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  std::vector<int> reflections;
  for (int i = 0; i < m;) {
    if (i + 1 < m && T(i + 1, i) != 0.0) {
      const double s = 0.5 * (T(i + 1, i) - T(i, i + 1));
      const double c = 0.5 * (T(i, i) + T(i + 1, i + 1));
      double theta = std::atan2(s, c);
      if (theta <= -kPi)
        theta = kPi;
      L(i + 1, i) = theta;
      L(i, i + 1) = -theta;
      i += 2;
    } else {
      if (T(i, i) < 0.0)
        reflections.push_back(i);
      ++i;
    }
  }
  if (reflections.size() % 2 != 0)
    throw DomainError("so_rotation_log: odd number of -1 eigenvalues");
  // Pairs of -1 eigenvalues become rotations by +pi.
  for (std::size_t k = 0; k < reflections.size(); k += 2) {
    const int a = reflections[k], b = reflections[k + 1];
    L(b, a) = kPi;
    L(a, b) = -kPi;
  }
  const Eigen::MatrixXd X = U * L * U.transpose();
  return 0.5 * (X - X.transpose());
}

SymplecticPolar sp_polar(const Eigen::MatrixXd &D0, double tol) {
  require_square(D0, "sp_polar");
  if (D0.rows() % 2 != 0)
    throw DomainError("sp_polar needs an even dimension");
  const int n = static_cast<int>(D0.rows()) / 2;
  if (n == 0)
    return {D0, D0};
  const Eigen::MatrixXd W = omega(n);
  const double scale = std::max(1.0, D0.squaredNorm());
  if ((D0.transpose() * W * D0 - W).cwiseAbs().maxCoeff() > tol * scale)
    throw DomainError("sp_polar needs a symplectic matrix");
  SymplecticPolar out;
  if (n == 0) {
    out.R = D0;
    out.Z0 = D0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D0.transpose() * D0);
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::MatrixXd &V = es.eigenvectors();
  const Eigen::VectorXd half_log = lam.array().log() * 0.5;
  const Eigen::VectorXd inv_sqrt = lam.array().rsqrt();
  out.Z0 = V * half_log.asDiagonal() * V.transpose();
  out.Z0 = 0.5 * (out.Z0 + out.Z0.transpose());
  out.R = D0 * (V * inv_sqrt.asDiagonal() * V.transpose());
  return out;
}

Eigen::MatrixXcd unitary_iso(const Eigen::MatrixXd &D0) {
  require_square(D0, "unitary_iso");
  const int n = static_cast<int>(D0.rows()) / 2;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    Q(j, 2 * j) = 1.0;
    Q(j, 2 * j + 1) = Scalar(0, 1);
  }
  return 0.5 * Q * D0.cast<Scalar>() * Q.adjoint();
}

Eigen::MatrixXd unitary_iso_inv(const Eigen::MatrixXcd &L) {
  const int n = static_cast<int>(L.rows());
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    Q(j, 2 * j) = 1.0;
    Q(j, 2 * j + 1) = Scalar(0, 1);
  }
  // (conj(Q^T) L Q + Q^T conj(L) conj(Q)) / 2 is the real part of Q^H L Q.
  return (Q.adjoint() * L * Q).real();
}

Eigen::MatrixXd su_compact_log(const Eigen::MatrixXd &R, double tol) {
  require_square(R, "su_compact_log");
  const int n = static_cast<int>(R.rows()) / 2;
  if (n == 0)
    return R;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const Eigen::MatrixXd W = omega(n);
  if ((R.transpose() * R - I).cwiseAbs().maxCoeff() > tol ||
      (R.transpose() * W * R - W).cwiseAbs().maxCoeff() > tol)
    throw DomainError("su_compact_log needs an element of SO(2n) and Sp(2n)");
  const Eigen::MatrixXcd L = unitary_iso(R);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(L);
  const Eigen::MatrixXcd &T = schur.matrixT();
  const Eigen::MatrixXcd &U = schur.matrixU();
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = Scalar(0, principal_phase(T(k, k)));
  const Eigen::MatrixXcd logL = U * phases.asDiagonal() * U.adjoint();
  const Eigen::MatrixXd Y0 = unitary_iso_inv(logL);
  return 0.5 * (Y0 - Y0.transpose());
}

Eigen::MatrixXd real_body(const Eigen::MatrixXcd &m, double tol) {
  if (m.size() > 0 &&
      m.imag().cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw DomainError("body has a non-real part");
  return m.real();
}

So0Decomposition decompose_SO0(const Supermatrix &M, double tol) {
  const MembershipCheck chk = is_SO0(M, tol);
  if (!chk.ok)
    throw DomainError("decompose_SO0 needs an element of SO0 (residual " +
                      std::to_string(chk.residual) + ")");
  const int m = M.p(), q = M.q(), order = M.order();
  const Eigen::MatrixXd M0 = real_body(M.body_matrix(), tol);
  const Eigen::MatrixXd A0 = M0.topLeftCorner(m, m);
  const Eigen::MatrixXd D0 = M0.bottomRightCorner(q, q);

  const Eigen::MatrixXd X0 = so_rotation_log(A0, 1e-7);
  const SymplecticPolar polar = sp_polar(D0, 1e-7);
  const Eigen::MatrixXd Y0 = su_compact_log(polar.R, 1e-7);

  So0Decomposition out;
  out.compact = Supermatrix::block_diag(order, X0.cast<Scalar>(),
                                        Y0.cast<Scalar>());
  out.symmetric = Supermatrix::block_diag(
      order, Eigen::MatrixXcd::Zero(m, m), polar.Z0.cast<Scalar>());

  const Eigen::MatrixXcd M0_inv = M0.inverse().cast<Scalar>();
  const Supermatrix L =
      sm_mul(Supermatrix::from_body(m, q, order, M0_inv), M.nilpotent_part());
  out.nilpotent = sm_ln(Supermatrix::identity(m, q, order) + L);

  const Supermatrix back = recompose(out);
  out.residual = (back - M).norm() / std::max(M.norm(), 1e-300);
  return out;
}

Supermatrix recompose(const So0Decomposition &d) {
  return sm_mul(sm_mul(sm_exp(d.compact), sm_exp(d.symmetric)),
                sm_exp(d.nilpotent));
}

Eigen::MatrixXd interleave_permutation(int n) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    P(2 * j, j) = 1.0;
    P(2 * j + 1, n + j) = 1.0;
  }
  return P;
}

Supermatrix osp_form(int m, int n, int order) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return Supermatrix::block_diag(order, Eigen::MatrixXcd::Identity(m, m),
                                 J.cast<Scalar>());
}

namespace {

Supermatrix osp_conjugator(int m, int n, int order, bool inverse) {
  const Eigen::MatrixXd P = interleave_permutation(n);
  const Scalar c(0.0, std::sqrt(2.0));
  const Eigen::MatrixXcd d =
      inverse ? Eigen::MatrixXcd(P.cast<Scalar>() / c)
              : Eigen::MatrixXcd(P.transpose().cast<Scalar>() * c);
  return Supermatrix::block_diag(order, Eigen::MatrixXcd::Identity(m, m), d);
}

} // namespace

Supermatrix osp_iso(const Supermatrix &X) {
  if (X.q() % 2 != 0)
    throw DomainError("osp_iso needs an (m|2n) supermatrix");
  const int m = X.p(), n = X.q() / 2, order = X.order();
  return sm_mul(sm_mul(osp_conjugator(m, n, order, true), X),
                osp_conjugator(m, n, order, false));
}

Supermatrix osp_iso_inv(const Supermatrix &Y) {
  if (Y.q() % 2 != 0)
    throw DomainError("osp_iso_inv needs an (m|2n) supermatrix");
  const int m = Y.p(), n = Y.q() / 2, order = Y.order();
  return sm_mul(sm_mul(osp_conjugator(m, n, order, false), Y),
                osp_conjugator(m, n, order, true));
}

Supermatrix random_so0(Rng &rng, int m, int n, int order, RandomScales s) {
  const int q = 2 * n;
  GrassmannMatrix A(m, m, order), C(q, m, order), S(q, q, order);
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      A(j, k) = random_grassmann(rng, order, Parity::even, s.body, s.nil);
      A(k, j) = -A(j, k);
    }
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < m; ++c)
      C(r, c) = random_grassmann(rng, order, Parity::odd, s.body, s.nil);
  for (int r = 0; r < q; ++r)
    for (int c = r; c < q; ++c) {
      S(r, c) = random_grassmann(rng, order, Parity::even, s.body, s.nil);
      S(c, r) = S(r, c);
    }
  const GrassmannMatrix W =
      GrassmannMatrix::from_body(omega(n).cast<Scalar>(), order);
  // B = C^T Omega / 2 and D = S Omega with S symmetric.
  return Supermatrix::from_blocks(A, C.transpose() * W * 0.5, C, S * W);
}

Supermatrix random_so0(int m, int n, int order, std::uint64_t seed,
                       RandomScales s) {
  Rng rng(seed);
  return random_so0(rng, m, n, order, s);
}

Supermatrix random_SO0(Rng &rng, int m, int n, int order, int k,
                       RandomScales s) {
  Supermatrix M = Supermatrix::identity(m, 2 * n, order);
  for (int i = 0; i < k; ++i)
    M = sm_mul(M, sm_exp(random_so0(rng, m, n, order, s)));
  return M;
}

Supermatrix random_SO0(int m, int n, int order, std::uint64_t seed, int k,
                       RandomScales s) {
  Rng rng(seed);
  return random_SO0(rng, m, n, order, k, s);
}

} // namespace superspin
