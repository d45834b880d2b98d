#pragma once

#include <optional>
#include <string_view>

#include "yand/numerics.hpp"
#include "yand/objective.hpp"

namespace yand {

/// Hessian in the normal-aligned frame, Q^T H Q, with the normal axis last.
struct BlockHessian {
  Matrix tangent_block;  ///< B = [f_ij], n x n
  Vector mixed;          ///< c = [f_{n+1,i}], length n
  double normal_normal = 0.0;
  Frame frame;
};

enum class PointKind { Elliptic, Degenerate, NonElliptic };

struct PointClass {
  PointKind kind = PointKind::Degenerate;
  double min_eig_tangent = 0.0;
};

enum class DirectionCase { AN, FlippedAN, SteepestFallback };

std::string_view to_string(PointKind kind) noexcept;
std::string_view to_string(DirectionCase c) noexcept;

struct DirectionResult {
  Vector d;  ///< ambient coordinates
  DirectionCase direction_case = DirectionCase::SteepestFallback;
  Vector tau;  ///< tangential coefficients in the frame used
  double tangential_norm = 0.0;  ///< T = |tau|
  double cos_theta = 1.0;        ///< -<g, d> / (|g| |d|)
  PointClass point_class;
};

/// Affine normal represented with its frame-normal component fixed at -1.
struct AffineNormal {
  Vector tau;
  Vector d;
};

BlockHessian block_decompose(const Objective& obj, const Vector& x);
BlockHessian block_decompose(const Objective& obj, const Vector& x, const Frame& frame);

PointClass classify_point(const Objective& obj, const Vector& x);

/// tau = B^{-1} ( -|grad f| / (n + 2) * s + c ) with
/// s_i = sum_{p,q} (B^{-1})_{pq} D^3 f[t_p, t_q, t_i], and d = sum_i tau_i t_i - n_hat.
/// Throws Errc::DegenerateTangentBlock when B is singular.
AffineNormal affine_normal_direction(const Objective& obj, const Vector& x);
AffineNormal affine_normal_direction(const Objective& obj, const Vector& x, const Frame& frame);

inline constexpr double kOrthogonalityBand = 1e-12;

/// Sign-corrected descent direction. The affine normal's orientation is
/// inward (descent) exactly at elliptic points; elsewhere it is flipped.
/// Degenerate points, or an affine normal within the orthogonality band of
/// the tangent plane, fall back to -grad f / |grad f|.
DirectionResult descent_direction(const Objective& obj, const Vector& x,
                                  double eps_orth = kOrthogonalityBand);
DirectionResult descent_direction(const Objective& obj, const Vector& x, const Frame& frame,
                                  double eps_orth = kOrthogonalityBand);

/// Solves H d = -grad f. With regularize set and H not positive definite,
/// H + lambda I is used, lambda = max(0, -min_eig) + 1e-8 max(1, |H|_inf).
/// Without regularization a singular H throws Errc::SingularHessian.
Vector newton_direction(const Objective& obj, const Vector& x, bool regularize);

/// T and cos(theta) of an arbitrary direction relative to the gradient:
/// d is rescaled so its normal component is -1 when that component is
/// negative; T is then the tangential norm. For non-descent d, T is +inf.
struct DirectionGeometry {
  double tangential_norm = 0.0;
  double cos_theta = 1.0;
};
DirectionGeometry direction_geometry(const Vector& grad, const Vector& d);

}  // namespace yand
