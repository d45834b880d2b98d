#include "yand/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yand/error.hpp"

namespace yand {

std::string_view to_string(PointKind kind) noexcept {
  switch (kind) {
    case PointKind::Elliptic: return "Elliptic";
    case PointKind::Degenerate: return "Degenerate";
    case PointKind::NonElliptic: return "NonElliptic";
  }
  return "Unknown";
}

std::string_view to_string(DirectionCase c) noexcept {
  switch (c) {
    case DirectionCase::AN: return "AN";
    case DirectionCase::FlippedAN: return "FlippedAN";
    case DirectionCase::SteepestFallback: return "SteepestFallback";
  }
  return "Unknown";
}

BlockHessian block_decompose(const Objective& obj, const Vector& x) {
  return block_decompose(obj, x, build_normal_aligned_frame(obj.gradient(x)));
}

BlockHessian block_decompose(const Objective& obj, const Vector& x, const Frame& frame) {
  const Matrix h = obj.hessian(x);
  Matrix rotated = frame.q.transpose() * h * frame.q;
  rotated = 0.5 * (rotated + rotated.transpose());
  const Eigen::Index n = frame.tangent_dim();
  BlockHessian out;
  out.tangent_block = rotated.topLeftCorner(n, n);
  out.mixed = rotated.bottomLeftCorner(1, n).transpose();
  out.normal_normal = rotated(n, n);
  out.frame = frame;
  return out;
}

namespace {

PointClass classify_block(const SymmetricClass& cls) {
  PointClass pc;
  pc.min_eig_tangent = cls.min_eig;
  switch (cls.tag) {
    case SymmetricTag::PositiveDefinite: pc.kind = PointKind::Elliptic; break;
    case SymmetricTag::Singular: pc.kind = PointKind::Degenerate; break;
    case SymmetricTag::OtherIndefinite: pc.kind = PointKind::NonElliptic; break;
  }
  return pc;
}

// B^{-1} applied to columns, through Cholesky when B is definite and LU
// otherwise (non-elliptic blocks are still invertible).
Matrix tangent_inverse(const Matrix& b, const SymmetricClass& cls) {
  const Eigen::Index n = b.rows();
  if (cls.tag == SymmetricTag::PositiveDefinite) {
    return cls.factor->solve(Matrix::Identity(n, n));
  }
  return b.partialPivLu().inverse();
}

AffineNormal affine_normal_from_block(const Objective& obj, const Vector& x,
                                      const BlockHessian& blk, const SymmetricClass& cls) {
  if (cls.tag == SymmetricTag::Singular) {
    throw Error(Errc::DegenerateTangentBlock, "tangent-tangent Hessian block is singular");
  }
  const Frame& frame = blk.frame;
  const Eigen::Index n = frame.tangent_dim();
  const Matrix t = frame.tangents();
  const Matrix b_inv = tangent_inverse(blk.tangent_block, cls);

  // s_i = sum_{p,q} (B^{-1})_{pq} D^3 f[t_p, t_q, t_i]
  Vector s = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector ti = t.col(i);
    double acc = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        acc += b_inv(p, q) * obj.third_directional(x, t.col(p), t.col(q), ti);
      }
    }
    s(i) = acc;
  }

  const double scale = frame.grad_norm / static_cast<double>(n + 2);
  AffineNormal an;
  an.tau = b_inv * (blk.mixed - scale * s);
  an.d = t * an.tau - frame.normal();
  return an;
}

}  // namespace

PointClass classify_point(const Objective& obj, const Vector& x) {
  return classify_block(classify_symmetric(block_decompose(obj, x).tangent_block));
}

AffineNormal affine_normal_direction(const Objective& obj, const Vector& x) {
  return affine_normal_direction(obj, x, build_normal_aligned_frame(obj.gradient(x)));
}

AffineNormal affine_normal_direction(const Objective& obj, const Vector& x, const Frame& frame) {
  const BlockHessian blk = block_decompose(obj, x, frame);
  return affine_normal_from_block(obj, x, blk, classify_symmetric(blk.tangent_block));
}

DirectionResult descent_direction(const Objective& obj, const Vector& x, double eps_orth) {
  return descent_direction(obj, x, build_normal_aligned_frame(obj.gradient(x)), eps_orth);
}

DirectionResult descent_direction(const Objective& obj, const Vector& x, const Frame& frame,
                                  double eps_orth) {
  const BlockHessian blk = block_decompose(obj, x, frame);
  const SymmetricClass cls = classify_symmetric(blk.tangent_block);
  const Vector grad = frame.grad_norm * frame.normal();

  DirectionResult out;
  out.point_class = classify_block(cls);

  const auto steepest = [&] {
    out.direction_case = DirectionCase::SteepestFallback;
    out.d = -frame.normal();
    out.tau = Vector::Zero(frame.tangent_dim());
    out.tangential_norm = 0.0;
    out.cos_theta = 1.0;
    return out;
  };

  if (out.point_class.kind == PointKind::Degenerate) return steepest();

  const AffineNormal an = affine_normal_from_block(obj, x, blk, cls);
  if (!an.d.allFinite()) return steepest();

  // Raw orientation: inward at elliptic points, outward otherwise.
  const double orientation = out.point_class.kind == PointKind::Elliptic ? 1.0 : -1.0;
  const Vector d_an = orientation * an.d;
  const double slope = grad.dot(d_an);
  const double band = eps_orth * frame.grad_norm * d_an.norm();

  if (slope < -band) {
    out.direction_case = DirectionCase::AN;
    out.d = d_an;
  } else if (slope > band) {
    out.direction_case = DirectionCase::FlippedAN;
    // -d_an rescaled to normal component -1.
    const Vector flipped = -d_an;
    out.d = flipped / -flipped.dot(frame.normal());
  } else {
    return steepest();
  }
  out.tau = an.tau;
  out.tangential_norm = an.tau.norm();
  out.cos_theta = -grad.dot(out.d) / (frame.grad_norm * out.d.norm());
  return out;
}

Vector newton_direction(const Objective& obj, const Vector& x, bool regularize) {
  const Vector g = obj.gradient(x);
  if (!(g.norm() > 0.0)) throw Error(Errc::ZeroGradient, "gradient vanishes");
  Matrix h = obj.hessian(x);
  SymmetricClass cls = classify_symmetric(h);
  if (cls.tag == SymmetricTag::PositiveDefinite) return solve_spd(cls, -g);

  if (regularize) {
    const double lambda = std::max(0.0, -cls.min_eig) + 1e-8 * std::max(1.0, inf_norm(h));
    h.diagonal().array() += lambda;
    cls = classify_symmetric(h);
    if (cls.tag == SymmetricTag::PositiveDefinite) return solve_spd(cls, -g);
    // Shift landed inside the degeneracy threshold; fall back to LDL^T.
    return h.ldlt().solve(-g);
  }
  Eigen::FullPivLU<Matrix> lu(h);
  lu.setThreshold(kDegeneracyEps);
  if (cls.tag == SymmetricTag::Singular || !lu.isInvertible()) {
    throw Error(Errc::SingularHessian, "Hessian is singular");
  }
  return lu.solve(-g);
}

DirectionGeometry direction_geometry(const Vector& grad, const Vector& d) {
  const double gn = grad.norm();
  const double dn = d.norm();
  DirectionGeometry out;
  out.cos_theta = -grad.dot(d) / (gn * dn);
  const double normal_component = grad.dot(d) / gn;
  if (normal_component < 0.0) {
    const Vector scaled = d / -normal_component;
    const Vector tangential = scaled + grad / gn;
    out.tangential_norm = tangential.norm();
  } else {
    out.tangential_norm = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace yand
