#include "bslab/moebius.hpp"

#include <cmath>

#include "bslab/errors.hpp"

namespace bslab {

double MoebiusMatrix::dist_mod_sign(const MoebiusMatrix& o) const {
  auto frob = [](double pa, double pb, double pc, double pd) {
    return std::sqrt(pa * pa + pb * pb + pc * pc + pd * pd);
  };
  double dm = frob(a - o.a, b - o.b, c - o.c, d - o.d);
  double dp = frob(a + o.a, b + o.b, c + o.c, d + o.d);
  return std::min(dm, dp);
}

Cx MoebiusMatrix::apply_halfplane(Cx z) const {
  return (a * z + b) / (c * z + d);
}

Cx MoebiusMatrix::apply_disk(Cx w) const {
  // Conjugate by the Cayley transform C(z) = (iz + i)/(-z + 1) mapping the
  // disk onto the half plane; N = C^{-1} M C expanded in closed form.
  const Cx i(0, 1);
  Cx na = Cx(a + d, b - c);
  Cx nb = Cx(a - d, -(b + c));
  Cx nc = std::conj(nb);
  Cx nd = std::conj(na);
  return (na * w + nb) / (nc * w + nd);
}

MoebiusMatrix mul(const MoebiusMatrix& A, const MoebiusMatrix& B) {
  MoebiusMatrix M{A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                  A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d};
  double det = M.det();
  if (!(det > 0.5))
    throw InvariantViolation("matrix product lost determinant 1 (det = " +
                             std::to_string(det) + ")");
  double s = std::sqrt(det);
  M.a /= s;
  M.b /= s;
  M.c /= s;
  M.d /= s;
  return M;
}

double hyp_dist(Cx z, Cx w) {
  if (!(z.imag() > 0) || !(w.imag() > 0))
    throw ConfigError("hyp_dist: points must have positive imaginary part");
  double q = std::norm(z - w) / (2.0 * z.imag() * w.imag());
  return std::acosh(1.0 + q);
}

double disk_dist(Cx z, Cx w) {
  double nz = std::norm(z), nw = std::norm(w);
  if (!(nz < 1) || !(nw < 1)) throw ConfigError("disk_dist: points must be inside the disk");
  double q = 2.0 * std::norm(z - w) / ((1.0 - nz) * (1.0 - nw));
  return std::acosh(1.0 + q);
}

MoebiusKind classify(const MoebiusMatrix& M, double tol) {
  double t = std::abs(M.trace());
  if (t > 2.0 + tol) return MoebiusKind::kHyperbolic;
  if (t < 2.0 - tol) return MoebiusKind::kElliptic;
  return MoebiusKind::kParabolic;
}

double translation_length(const MoebiusMatrix& M, double tol) {
  if (classify(M, tol) != MoebiusKind::kHyperbolic)
    throw ConfigError("translation_length: matrix is not hyperbolic (|tr| = " +
                      std::to_string(std::abs(M.trace())) + ")");
  return 2.0 * std::acosh(std::abs(M.trace()) / 2.0);
}

}  // namespace bslab
