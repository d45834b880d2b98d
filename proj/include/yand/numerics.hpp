#pragma once

#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace yand {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Orthonormal basis of R^{n+1} whose last column is the unit gradient.
/// Columns 0..n-1 span the tangent hyperplane of the level set.
struct Frame {
  Matrix q;
  double grad_norm = 0.0;

  Eigen::Index ambient_dim() const { return q.cols(); }
  Eigen::Index tangent_dim() const { return q.cols() - 1; }
  Vector normal() const { return q.col(q.cols() - 1); }
  Matrix tangents() const { return q.leftCols(q.cols() - 1); }
};

/// Single Householder reflection taking the last canonical axis to g/|g|.
/// The reflector sign follows g's last component, and the last column is then
/// overwritten with g/|g| exactly. Throws Errc::ZeroGradient for |g| <= 1e-300.
Frame build_normal_aligned_frame(const Vector& g);

/// Replaces the tangent columns T by T*R for an orthogonal n x n matrix R.
Frame rotate_tangent_basis(const Frame& frame, const Matrix& r);

enum class SymmetricTag { PositiveDefinite, Singular, OtherIndefinite };

struct SymmetricClass {
  SymmetricTag tag = SymmetricTag::Singular;
  double min_eig = 0.0;
  double threshold = 0.0;
  /// Present iff tag == PositiveDefinite.
  std::optional<Eigen::LLT<Matrix>> factor;
};

inline constexpr double kDegeneracyEps = 1e-10;

/// Classifies a symmetric matrix by the sign of its smallest eigenvalue,
/// using the threshold eps * max(1, |M|_inf). Throws Errc::NotSymmetric when
/// |M_ij - M_ji| exceeds 1e-12 * max(1, |M|_inf).
SymmetricClass classify_symmetric(const Matrix& m, double eps_deg = kDegeneracyEps);

/// Applies the inverse of a PositiveDefinite matrix through its Cholesky
/// factor. Throws Errc::NotFactorized otherwise.
Vector solve_spd(const SymmetricClass& cls, const Vector& rhs);

/// Maximum absolute row sum.
double inf_norm(const Matrix& m);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(const Vector& a, const Vector& b);

/// Angle in [0, pi/2] between the lines spanned by two nonzero vectors.
double line_angle(const Vector& a, const Vector& b);

}  // namespace yand
