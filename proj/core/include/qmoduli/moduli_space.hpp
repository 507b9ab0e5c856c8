#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "qmoduli/operator_space.hpp"

namespace qmoduli {

double to_double(const Rational& r);

// Square roots of the diagonal real Gram of W_R. Conjugating by diag(sqrt_g)
// turns Gram-symmetric matrices into ordinary symmetric ones; we call the
// rescaled coordinates orthonormal coordinates. All float64 spectral work
// happens there.
std::vector<double> sqrt_gram_diagonal(int k);
Eigen::MatrixXd orthonormal_coords(const RatMat& op, const std::vector<double>& sqrt_g);

enum class PointStatus { interior, boundary, infeasible };
const char* to_string(PointStatus s);

// Linearization of the moduli of gauge operators T = sqrt(Id + C) attached to
// the degree-k standard map. C ranges over the trace-form complement, inside
// S(W_R), of the spans generated by symmetric pairs on the evaluation line at
// the base point (span0, order-0 contact) and on that line mixed with its
// first derivative line (span1, order-1 contact). Feasibility is Id + C >= 0.
struct ModuliDescriptor {
  int k = 0;
  int ambient_dim = 0;  // 2k + 2

  // Pairs across distinct weight lines are trace-free, so span1 misses the
  // identity; restoring it recovers span0 exactly: span0 = span1 + R*Id.
  Subspace span0;
  Subspace span1;
  Subspace tangent;
  std::vector<IsotypicLabel> tangent_labels;

  // Exact matrix of C -> J*C in tangent coordinates; squares to -Id.
  RatMat j_on_tangent;

  // Numeric caches, orthonormal ambient coordinates.
  std::vector<double> sqrt_gram;
  std::vector<Eigen::MatrixXd> tangent_ops;           // per tangent basis row
  std::vector<Eigen::MatrixXd> span0_ops, span1_ops;  // unit Frobenius norm
  Eigen::MatrixXd j_on_tangent_num;
  Eigen::VectorXd sigma_coords, j_sigma_coords;  // even k only: family plane

  int dim() const { return tangent.rank(); }
};

// Builds all of the above. Throws std::logic_error quoting both numbers if
// the tangent dimension differs from k(k-1).
ModuliDescriptor moduli_descriptor(int k);

// One gauge operator: C = sum coords_i tangent_i, A = Id + C, T the PSD
// square root of A with eigenvalues inside a relative 1e-9 band around zero
// clipped to zero. Eigenvalues below the band make the point infeasible; an
// infeasible point carries no T (and no kernel basis), only the spectrum.
struct ModuliPoint {
  int k = 0;
  std::vector<double> coords;
  PointStatus status = PointStatus::interior;
  int kernel_dim = 0;            // eigenvalues at or below the zero band
  Eigen::VectorXd eigenvalues;   // of Id + C, ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal coordinates
  Eigen::MatrixXd T;             // PSD square root, orthonormal coordinates
  Eigen::MatrixXd kernel;        // orthonormal basis of Ker T, one per column
};

ModuliPoint make_point(const ModuliDescriptor& desc, const std::vector<double>& coords);

// Trace pairings of T^2 - Id against the two constraint spans: max over the
// unit-norm basis operators, relative to max(1, |T^2 - Id|_F). Both vanish on
// moduli points; computing them certifies that make_point solved the stated
// equations rather than restating its construction.
struct ConditionResiduals {
  double order0 = 0.0;
  double order1 = 0.0;
};
ConditionResiduals condition_residuals(const ModuliDescriptor& desc, const ModuliPoint& pt);

// Domain rotation z -> e^{i theta} z acting on deformation coordinates:
// C' = cos(k theta) C - sin(k theta) J*C. Period 2 pi / k.
std::vector<double> s1_rotate(const ModuliDescriptor& desc, const std::vector<double>& coords,
                              double theta);
ModuliPoint s1_rotate(const ModuliDescriptor& desc, const ModuliPoint& pt, double theta);

// Two-parameter slice C = t sigma + s (J sigma), defined for even k (sigma is
// Gram-skew at odd levels; throws std::invalid_argument). Interior iff
// t^2 + s^2 < 1, boundary on the unit circle, infeasible outside.
ModuliPoint family_point(const ModuliDescriptor& desc, double t, double s);

// Random interior point: Gaussian coordinates rescaled so that C has the
// given spectral radius (< 1 guarantees interior).
ModuliPoint sample_interior(const ModuliDescriptor& desc, std::mt19937_64& rng,
                            double spectral_radius = 0.6);

// Deterministic fingerprint of a feasible gauge operator: T compressed to a
// pivot-projected orthonormal basis of range(T). Interior points (trivial
// kernel) get T itself. The basis depends only on range(T), not on the
// eigensolver's choices inside degenerate eigenspaces, so equal operators get
// equal keys while isospectral but distinct operators get distinct keys.
Eigen::MatrixXd gauge_class_key(const ModuliPoint& pt);

// Deterministic orthonormal basis of range(T) = (Ker T)^perp: Gram-Schmidt
// over the projected standard basis vectors in index order, so the result
// depends only on the range, not on eigensolver choices.  Identity-shaped
// (n x n) for points with trivial kernel; throws on infeasible points.
Eigen::MatrixXd range_orthonormal_basis(const ModuliPoint& pt);
// Frobenius distance; keys of different sizes are infinitely far apart.
double key_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Closure rank of a pair span against the dimension full rigidity demands.
struct RigidityReport {
  int k = 0;
  int rank = 0;
  int expected = 0;
  bool rigid() const { return rank == expected; }
};

// Degree-k map to complex projective space: the G-span of the Hermitian pair
// on the evaluation line must fill the complex-linear symmetric operators,
// rank (k+1)^2.
RigidityReport rigidity_herm(int k);

// Real-form model: sections are the sigma-fixed form W^R at level 2k and the
// evaluation plane is spanned by x^{2k} + y^{2k} and i(x^{2k} - y^{2k}). The
// G-span of its symmetric pairs must fill S(W^R), rank (2k+1)(k+1).
RigidityReport rigidity_real(int k);

}  // namespace qmoduli
