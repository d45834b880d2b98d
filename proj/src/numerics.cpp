#include "yand/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "yand/error.hpp"

namespace yand {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroGradient: return "ZeroGradient";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotFactorized: return "NotFactorized";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::DegenerateTangentBlock: return "DegenerateTangentBlock";
    case Errc::SingularHessian: return "SingularHessian";
    case Errc::EmptySlice: return "EmptySlice";
    case Errc::NoFiniteStep: return "NoFiniteStep";
    case Errc::NotDescent: return "NotDescent";
    case Errc::MissingReference: return "MissingReference";
    case Errc::UnknownProblem: return "UnknownProblem";
    case Errc::SingularB: return "SingularB";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Frame build_normal_aligned_frame(const Vector& g) {
  if (g.size() < 1 || !g.allFinite()) {
    throw Error(Errc::ZeroGradient, "gradient is empty or not finite");
  }
  const double norm = g.norm();
  if (!(norm > 1e-300)) {
    throw Error(Errc::ZeroGradient, "gradient norm below 1e-300");
  }
  const Eigen::Index m = g.size();
  const Vector u = g / norm;

  // v = u + s e_last with s = sign(u_last); H = I - 2 v v^T / v^T v maps
  // e_last to -s u, so |v_last| >= 1 and v^T v >= 2.
  const double s = u(m - 1) >= 0.0 ? 1.0 : -1.0;
  Vector v = u;
  v(m - 1) += s;
  const double vv = v.squaredNorm();

  Frame frame;
  frame.q = Matrix::Identity(m, m) - (2.0 / vv) * (v * v.transpose());
  frame.q.col(m - 1) = u;
  frame.grad_norm = norm;
  return frame;
}

Frame rotate_tangent_basis(const Frame& frame, const Matrix& r) {
  const Eigen::Index n = frame.tangent_dim();
  if (r.rows() != n || r.cols() != n) {
    throw Error(Errc::InvalidArgument, "rotation must be n x n");
  }
  Frame out = frame;
  out.q.leftCols(n) = frame.q.leftCols(n) * r;
  return out;
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

SymmetricClass classify_symmetric(const Matrix& m, double eps_deg) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::InvalidArgument, "matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, inf_norm(m));
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(Errc::NotSymmetric, "asymmetry exceeds 1e-12 relative");
  }
  const Matrix sym = 0.5 * (m + m.transpose());

  SymmetricClass out;
  out.threshold = eps_deg * scale;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  out.min_eig = eig.eigenvalues().minCoeff();

  if (out.min_eig > out.threshold) {
    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() == Eigen::Success) {
      out.tag = SymmetricTag::PositiveDefinite;
      out.factor = std::move(llt);
      return out;
    }
    // Cholesky breakdown on a matrix the eigen-solver calls definite only
    // happens right at the threshold; report it as singular.
    out.tag = SymmetricTag::Singular;
    return out;
  }
  out.tag = std::abs(out.min_eig) <= out.threshold ? SymmetricTag::Singular
                                                   : SymmetricTag::OtherIndefinite;
  return out;
}

Vector solve_spd(const SymmetricClass& cls, const Vector& rhs) {
  if (cls.tag != SymmetricTag::PositiveDefinite || !cls.factor) {
    throw Error(Errc::NotFactorized, "matrix is not positive definite");
  }
  if (cls.factor->rows() != rhs.size()) {
    throw Error(Errc::InvalidArgument, "right-hand side has the wrong dimension");
  }
  return cls.factor->solve(rhs);
}

double angle_between(const Vector& a, const Vector& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  // atan2 form stays accurate for nearly parallel vectors.
  const double s = (a / a.norm() - (c * b) / b.norm()).norm();
  return std::atan2(s, c);
}

double line_angle(const Vector& a, const Vector& b) {
  const double t = angle_between(a, b);
  return std::min(t, M_PI - t);
}

}  // namespace yand
