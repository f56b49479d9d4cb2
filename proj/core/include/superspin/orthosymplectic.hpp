#pragma once
#include "superspin/grassmann.hpp"
#include "superspin/supermatrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace superspin {

class Rng;

struct O0Check {
  bool ok = false;
  // max entry norm of M^ST Q M - Q
  double residual = 0.0;
  // max entry norm over the three block equations
  double block_residual = 0.0;
  // absent when M is not invertible
  std::optional<GrassmannNumber> sdet;
};

struct MembershipCheck {
  bool ok = false;
  double residual = 0.0;
};

// Residuals are absolute; acceptance compares against tol * max(1, |M|_max^2).
O0Check is_O0(const Supermatrix &M, double tol = 1e-9);
MembershipCheck is_SO0(const Supermatrix &M, double tol = 1e-9);
// X^ST Q + Q X = 0; acceptance against tol * max(1, |X|_max).
MembershipCheck is_so0(const Supermatrix &X, double tol = 1e-9);
using SO0Check = MembershipCheck;

// M(t) = sum_j t^j [M]_j.
Supermatrix connect_path(const Supermatrix &M, double t, double tol = 1e-9);

// Antisymmetric X0 with exp(X0) = A0 for A0 in SO(m); angles in (-pi, pi].
Eigen::MatrixXd so_rotation_log(const Eigen::MatrixXd &A0, double tol = 1e-9);

struct SymplecticPolar {
  Eigen::MatrixXd R;  // in SO(2n) and Sp(2n)
  Eigen::MatrixXd Z0; // symmetric, in sp(2n)
};
// D0 = R exp(Z0).
SymplecticPolar sp_polar(const Eigen::MatrixXd &D0, double tol = 1e-9);

// Psi(D0) = Q D0 Q^H / 2 with Q_{j,2j-1} = 1, Q_{j,2j} = i.
Eigen::MatrixXcd unitary_iso(const Eigen::MatrixXd &D0);
Eigen::MatrixXd unitary_iso_inv(const Eigen::MatrixXcd &L);

// Log of R in SO(2n) and Sp(2n) through the unitary picture.
Eigen::MatrixXd su_compact_log(const Eigen::MatrixXd &R, double tol = 1e-9);

struct So0Decomposition {
  Supermatrix compact;   // body-only; so(m) x (sp cap so)(2n)
  Supermatrix symmetric; // body-only; zero A block, symmetric sp D block
  Supermatrix nilpotent; // nilpotent element of so0
  double residual = 0.0; // |e^X e^Y e^Z - M| / |M|
};
So0Decomposition decompose_SO0(const Supermatrix &M, double tol = 1e-9);
Supermatrix recompose(const So0Decomposition &d);

// Real symplectic matrix body of an (m|2n) supermatrix with real body.
Eigen::MatrixXd real_body(const Eigen::MatrixXcd &m, double tol = 1e-9);

// Interleaved-to-split permutation P with P^T J P = Omega.
Eigen::MatrixXd interleave_permutation(int n);
// Standard form G = diag(I_m, J_2n), J = [[0, I], [-I, 0]].
Supermatrix osp_form(int m, int n, int order);
// R^{-1} X R with R = diag(I_m, i sqrt(2) P^T).
Supermatrix osp_iso(const Supermatrix &X);
Supermatrix osp_iso_inv(const Supermatrix &Y);

struct RandomScales {
  double body = 0.5;
  double nil = 0.3;
};
Supermatrix random_so0(Rng &rng, int m, int n, int order, RandomScales s = {});
Supermatrix random_so0(int m, int n, int order, std::uint64_t seed,
                       RandomScales s = {});
// Product of k exponentials of random so0 draws.
Supermatrix random_SO0(Rng &rng, int m, int n, int order, int k,
                       RandomScales s = {});
Supermatrix random_SO0(int m, int n, int order, std::uint64_t seed, int k,
                       RandomScales s = {});

} // namespace superspin
