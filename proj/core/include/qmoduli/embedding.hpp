#pragma once

// Induced maps CP^1 -> G~_{n-2}(R^n) -> Q_{n-2} subset CP^{n-1}.
//
// A map is described by its space of acting sections: an n x d real matrix
// whose columns are sections of O(level) written in orthonormal coordinates
// of the realified module.  The image plane at a domain point x is the
// kernel of the (complex-valued) evaluation functional restricted to that
// section space; its oriented normal 2-frame realises the classical
// plane/quadric correspondence zeta = a + i b, Sum zeta_j^2 = 0.
//
// Differential-geometric quantities (isometry ratio, conformality defect,
// degree, energy density) are measured by central finite differences of the
// log-potential log |E(z)|^2 of the holomorphic evaluation row, with one
// Richardson extrapolation level.

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmoduli/moduli_space.hpp"

namespace qmoduli {

// A point of the domain sphere in one of two affine charts glued by
// z -> 1/z.  Coordinates are kept in the closed disc |z| <= 1.2 so that
// every point admits a chart with a bounded coordinate and finite-difference
// stencils never leave the chart.
struct DomainPoint {
    int chart = 0;                  // 0 or 1
    std::complex<double> z{0.0, 0.0};
};

// Throws std::invalid_argument if the chart index or |z| is out of range.
void validate_domain_point(const DomainPoint& x);

// The same point in the other chart (only meaningful for z != 0).
DomainPoint other_chart(const DomainPoint& x);

// Moebius action of g in SU(2) on the domain; the result is always returned
// in a chart where |coordinate| <= 1.
DomainPoint mobius_apply(const Eigen::Matrix2cd& g, const DomainPoint& x);

// Haar-ish random SU(2) element: normalised Gaussian quaternion.
Eigen::Matrix2cd random_su2(std::mt19937_64& rng);

// Deterministic low-discrepancy sample of the closed unit disc of each
// chart: golden-angle spiral, rotated by a seed-derived phase.  Returns
// per_chart points on chart 0 followed by per_chart points on chart 1.
std::vector<DomainPoint> sample_points(int per_chart, std::uint64_t seed);

// Oriented codimension-two plane in R^d, stored by an orthonormal frame of
// its normal plane (ordered: the orientation is part of the data).
struct OrientedPlane {
    Eigen::VectorXd a;
    Eigen::VectorXd b;

    int ambient() const { return static_cast<int>(a.size()); }
    // Orthogonal projector onto the plane itself, Id - aa^T - bb^T.
    Eigen::MatrixXd projector() const;
};

struct QuadricPoint {
    Eigen::VectorXcd zeta;          // isotropic: Sum zeta_j^2 = 0
};

// |Sum zeta_j^2| / |zeta|^2, the relative isotropy defect.
double isotropy_defect(const QuadricPoint& q);

QuadricPoint plane_to_quadric(const OrientedPlane& p);

// A full-sphere map determined by a space of acting sections.
struct EmbeddingMap {
    int level = 0;                  // polynomial degree of the sections
    std::string name;
    Eigen::MatrixXd sections;       // n x d, n = 2*(level+1)
    // Orthonormal coordinates on the section parameter space inside the
    // realified module (n x d; identity for full maps).  Group elements act
    // on parameters through frame^T * R * frame.
    Eigen::MatrixXd frame;
    std::vector<double> inv_sqrt_gram;   // 1/sqrt(c_a), a = 0..level

    int ambient() const { return static_cast<int>(sections.cols()); }
    int degree() const { return level; }
};

// Full map of degree k: every section of O(k) acts.
EmbeddingMap standard_map(int k);

// The real form of the degree-2k module: 2k+1 real sections, image in the
// quadric of CP^{2k}, degree 2k.
EmbeddingMap real_standard_map(int k);

// Map attached to a feasible moduli point: sections T v for v in (Ker T)^perp.
// Throws std::invalid_argument on infeasible points.
EmbeddingMap deformed_map(const ModuliDescriptor& desc, const ModuliPoint& pt);

// Complex evaluation row of the acting sections at x (length d).
Eigen::RowVectorXcd eval_row(const EmbeddingMap& m, const DomainPoint& x);

// Kernel of the evaluation functional at x, as an oriented plane in R^d.
// Throws std::runtime_error naming x if the evaluation degenerates (the
// section space fails to generate the fibre at x).
OrientedPlane eval_plane(const EmbeddingMap& m, const DomainPoint& x);

// log |eval row|^2 at chart coordinate z; the potential whose Laplacian
// measures the pulled-back Fubini-Study form.
double log_potential(const EmbeddingMap& m, int chart, std::complex<double> z);

// Finite-difference Laplacian ratio  Delta log|E|^2 / Delta log(1+|z|^2);
// equals the degree for an isometric map of that degree.
double isometry_ratio(const EmbeddingMap& m, const DomainPoint& x);

// Antiholomorphic energy fraction 2|P' dbar|^2 / (|P' d|^2 + |P' dbar|^2)
// of the unit quadric lift: ~0 for holomorphic maps, ~2 for conjugated ones.
double cr_residual(const EmbeddingMap& m, const DomainPoint& x);

// Trace of the pulled-back projective metric against the domain metric;
// constant 2*degree for a holomorphic isometric map.
double energy_density(const EmbeddingMap& m, const DomainPoint& x);

// Two-chart disc quadrature of the pulled-back Fubini-Study form,
// normalised to the degree.  Gauss-Legendre radially, uniform angularly.
double degree_integral(const EmbeddingMap& m, int radial = 32, int angular = 64);

// Max over samples and kernel directions of the component of a unit kernel
// vector along the normal frame of the full-module evaluation plane of T.
// Exact containment Ker T subset plane would give 0.  Requires a boundary
// point (throws otherwise).
double kernel_containment(const ModuliPoint& pt,
                          const std::vector<DomainPoint>& xs);

// Realified action of g on the level-k module in orthonormal coordinates
// (an orthogonal (2k+2) x (2k+2) matrix).
Eigen::MatrixXd realified_su2_action(int k, const Eigen::Matrix2cd& g);

// Max over group elements and samples of the projector distance
// || plane(m, g.x) - R_g plane(m, x) R_g^T ||_F.
double equivariance_residual(const EmbeddingMap& m,
                             const std::vector<Eigen::Matrix2cd>& gs,
                             const std::vector<DomainPoint>& xs);

// Least-squares orthogonal alignment R with plane_b(x) = R plane_a(x) R^T
// on the fit samples, polar-projected to the orthogonal group.  Returns
// std::nullopt when the fitted alignment fails on any validation sample
// (projector distance above tol).
std::optional<Eigen::MatrixXd> fit_alignment(const EmbeddingMap& a,
                                             const EmbeddingMap& b,
                                             const std::vector<DomainPoint>& fit,
                                             const std::vector<DomainPoint>& check,
                                             double tol = 1e-6);

}  // namespace qmoduli
