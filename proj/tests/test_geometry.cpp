#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qmoduli/embedding.hpp"
#include "qmoduli/moduli_space.hpp"

using namespace qmoduli;

namespace {

// Realified multiplication by i at level k, in orthonormal coordinates.
Eigen::MatrixXd j_mult(int k) {
  const int n1 = k + 1;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n1, 2 * n1);
  j.topRightCorner(n1, n1) = -Eigen::MatrixXd::Identity(n1, n1);
  j.bottomLeftCorner(n1, n1) = Eigen::MatrixXd::Identity(n1, n1);
  return j;
}

double plane_distance(const OrientedPlane& p, const OrientedPlane& q) {
  return (p.projector() - q.projector()).norm();
}

// Antiholomorphic energy fraction of the orientation-reversed plane field;
// the quadric lift becomes conj(zeta), so holomorphic maps read ~2.
double cr_residual_reversed(const EmbeddingMap& m, const DomainPoint& x) {
  const auto lift = [&](std::complex<double> z) -> Eigen::VectorXcd {
    const OrientedPlane p = eval_plane(m, DomainPoint{x.chart, z});
    return (p.a - std::complex<double>(0.0, 1.0) * p.b) / std::sqrt(2.0);
  };
  const double h = 1e-4;
  const std::complex<double> ih(0.0, h), i1(0.0, 1.0);
  const Eigen::VectorXcd p0 = lift(x.z);
  const Eigen::VectorXcd px = (lift(x.z + h) - lift(x.z - h)) / (2.0 * h);
  const Eigen::VectorXcd py = (lift(x.z + ih) - lift(x.z - ih)) / (2.0 * h);
  Eigen::VectorXcd del = 0.5 * (px - i1 * py);
  Eigen::VectorXcd dbar = 0.5 * (px + i1 * py);
  del -= p0 * p0.dot(del);
  dbar -= p0 * p0.dot(dbar);
  const double u = del.squaredNorm(), v = dbar.squaredNorm();
  return 2.0 * v / (u + v);
}

}  // namespace

TEST_CASE("standard map: potential, isometry ratio, energy, degree") {
  for (int k = 1; k <= 4; ++k) {
    const EmbeddingMap m = standard_map(k);
    const auto pts = sample_points(8, 7u);
    for (const DomainPoint& x : pts) {
      // |E(z)|^2 = 2 (1+|z|^2)^k exactly in both charts (the realified row
      // counts the real and J copies of every section).
      CHECK(log_potential(m, x.chart, x.z) ==
            doctest::Approx(k * std::log1p(std::norm(x.z)) + std::log(2.0)).epsilon(1e-12));
      CHECK(isometry_ratio(m, x) == doctest::Approx(k).epsilon(1e-6));
      CHECK(energy_density(m, x) == doctest::Approx(2.0 * k).epsilon(1e-6));
      CHECK(cr_residual(m, x) < 1e-8);
      CHECK(isotropy_defect(plane_to_quadric(eval_plane(m, x))) < 1e-12);
    }
    CHECK(degree_integral(m) == doctest::Approx(k).epsilon(1e-6));
  }
}

TEST_CASE("orientation convention: reversed frames are antiholomorphic") {
  const EmbeddingMap m = standard_map(1);
  for (const DomainPoint& x : sample_points(4, 11u)) {
    CHECK(cr_residual(m, x) < 1e-8);
    CHECK(cr_residual_reversed(m, x) > 2.0 - 1e-8);
  }
}

TEST_CASE("chart overlap: planes agree after coordinate inversion") {
  const ModuliDescriptor d3 = moduli_descriptor(3);
  std::mt19937_64 rng(5);
  const ModuliPoint pt = sample_interior(d3, rng);
  const EmbeddingMap maps[] = {standard_map(2), real_standard_map(1), deformed_map(d3, pt)};
  for (const EmbeddingMap& m : maps) {
    for (int i = 0; i < 6; ++i) {
      const double r = 0.85 + 0.05 * i;
      const DomainPoint x{i % 2, std::polar(r, 0.7 * i + 0.3)};
      CHECK(plane_distance(eval_plane(m, x), eval_plane(m, other_chart(x))) < 1e-9);
    }
  }
}

TEST_CASE("quadric correspondence: frame rotation moves the lift by a phase") {
  const EmbeddingMap m = standard_map(3);
  const DomainPoint x{0, {0.31, -0.44}};
  const OrientedPlane p = eval_plane(m, x);
  const double phi = 0.83;
  OrientedPlane q;
  q.a = std::cos(phi) * p.a + std::sin(phi) * p.b;
  q.b = -std::sin(phi) * p.a + std::cos(phi) * p.b;
  CHECK(plane_distance(p, q) < 1e-14);
  const Eigen::VectorXcd z1 = plane_to_quadric(p).zeta;
  const Eigen::VectorXcd z2 = plane_to_quadric(q).zeta;
  // Same projective point: zeta rotates by e^{i phi}.
  const std::complex<double> i1(0.0, 1.0);
  CHECK((z2 - (std::cos(phi) - i1 * std::sin(phi)) * z1).norm() < 1e-12);
}

TEST_CASE("deformed map at zero coordinates reproduces the standard map") {
  const ModuliDescriptor desc = moduli_descriptor(3);
  const ModuliPoint origin = make_point(desc, std::vector<double>(desc.dim(), 0.0));
  const EmbeddingMap md = deformed_map(desc, origin);
  const EmbeddingMap ms = standard_map(3);
  for (const DomainPoint& x : sample_points(5, 23u))
    CHECK(plane_distance(eval_plane(md, x), eval_plane(ms, x)) < 1e-12);
}

TEST_CASE("real standard map: odd ambient, even degree, holomorphic") {
  for (int k = 1; k <= 2; ++k) {
    const EmbeddingMap m = real_standard_map(k);
    CHECK(m.ambient() == 2 * k + 1);
    CHECK(m.degree() == 2 * k);
    for (const DomainPoint& x : sample_points(6, 13u)) {
      CHECK(isometry_ratio(m, x) == doctest::Approx(2.0 * k).epsilon(1e-6));
      CHECK(cr_residual(m, x) < 1e-8);
      CHECK(energy_density(m, x) == doctest::Approx(4.0 * k).epsilon(1e-6));
    }
    CHECK(degree_integral(m) == doctest::Approx(2.0 * k).epsilon(1e-6));
  }
}

TEST_CASE("deformed maps stay isometric of the same degree") {
  const ModuliDescriptor desc = moduli_descriptor(3);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    const ModuliPoint pt = sample_interior(desc, rng);
    REQUIRE(pt.status == PointStatus::interior);
    const EmbeddingMap m = deformed_map(desc, pt);
    for (const DomainPoint& x : sample_points(6, 41u)) {
      const double ratio = isometry_ratio(m, x);
      CHECK(ratio == doctest::Approx(3.0).epsilon(1e-6));
      CHECK(cr_residual(m, x) < 1e-7);
      CHECK(energy_density(m, x) == doctest::Approx(6.0).epsilon(1e-5));
      CHECK(isotropy_defect(plane_to_quadric(eval_plane(m, x))) < 1e-12);
    }
    CHECK(degree_integral(m) == doctest::Approx(3.0).epsilon(1e-5));
  }
}

TEST_CASE("kernel containment holds on the boundary and rejects the interior") {
  const ModuliDescriptor desc = moduli_descriptor(2);
  const auto xs = sample_points(5, 61u);

  const ModuliPoint edge = family_point(desc, 1.0, 0.0);
  REQUIRE(edge.status == PointStatus::boundary);
  CHECK(kernel_containment(edge, xs) < 1e-9);

  const ModuliPoint inside = family_point(desc, 0.4, 0.1);
  CHECK_THROWS_AS((void)kernel_containment(inside, xs), std::invalid_argument);
}

TEST_CASE("realified group action: homomorphism, orthogonality, base case") {
  std::mt19937_64 rng(17);
  const Eigen::Matrix2cd g1 = random_su2(rng), g2 = random_su2(rng);
  CHECK((g1.adjoint() * g1 - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
  CHECK(std::abs(g1.determinant() - 1.0) < 1e-12);

  for (int k = 1; k <= 4; ++k) {
    const Eigen::MatrixXd r1 = realified_su2_action(k, g1);
    const Eigen::MatrixXd r12 = realified_su2_action(k, g1 * g2);
    const int n = 2 * (k + 1);
    CHECK((r1.transpose() * r1 - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
    CHECK((r1 * realified_su2_action(k, g2) - r12).norm() < 1e-12);
  }

  // Level 1: m_0 = y maps to -gamma m_1 + alpha m_0 under p -> p(g^{-1} .).
  const Eigen::MatrixXd r = realified_su2_action(1, g1);
  CHECK(r(0, 0) == doctest::Approx(g1(0, 0).real()).epsilon(1e-14));
  CHECK(r(1, 0) == doctest::Approx(-g1(1, 0).real()).epsilon(1e-14));
  CHECK(r(2, 0) == doctest::Approx(g1(0, 0).imag()).epsilon(1e-14));
  CHECK(r(3, 0) == doctest::Approx(-g1(1, 0).imag()).epsilon(1e-14));
}

TEST_CASE("equivariance: symmetric maps commute, generic deformations do not") {
  std::mt19937_64 rng(31);
  std::vector<Eigen::Matrix2cd> gs;
  for (int i = 0; i < 5; ++i) gs.push_back(random_su2(rng));
  const auto xs = sample_points(5, 71u);

  CHECK(equivariance_residual(standard_map(3), gs, xs) < 1e-8);
  CHECK(equivariance_residual(real_standard_map(2), gs, xs) < 1e-8);

  const ModuliDescriptor d2 = moduli_descriptor(2);
  const ModuliPoint fam = family_point(d2, 0.35, 0.2);
  CHECK(equivariance_residual(deformed_map(d2, fam), gs, xs) < 1e-8);

  const ModuliDescriptor d4 = moduli_descriptor(4);
  std::mt19937_64 rng2(77);
  const ModuliPoint generic = sample_interior(d4, rng2);
  REQUIRE(generic.status == PointStatus::interior);
  CHECK(equivariance_residual(deformed_map(d4, generic), gs, xs) > 1e-3);
}

TEST_CASE("tangent directions anticommute with multiplication by i") {
  // This is what turns domain rotations into the planar rotation of the
  // deformation coordinates and target rotations by e^{-ik theta/2}.
  for (int k = 2; k <= 4; ++k) {
    const ModuliDescriptor d = moduli_descriptor(k);
    const Eigen::MatrixXd j = j_mult(k);
    for (const Eigen::MatrixXd& b : d.tangent_ops)
      CHECK((j * b + b * j).norm() < 1e-12);
  }
}

TEST_CASE("domain rotation: images align by the predicted target rotation") {
  const ModuliDescriptor desc = moduli_descriptor(2);
  const ModuliPoint p0 = family_point(desc, 0.45, 0.1);
  const double theta = 0.37;
  const ModuliPoint p1 = s1_rotate(desc, p0, theta);
  const EmbeddingMap m0 = deformed_map(desc, p0);
  const EmbeddingMap m1 = deformed_map(desc, p1);

  const auto fit = sample_points(6, 301u);
  const auto held_out = sample_points(6, 302u);
  const auto r = fit_alignment(m0, m1, fit, held_out, 1e-6);
  REQUIRE(r.has_value());

  const int k = 2;
  const Eigen::MatrixXd rt = std::cos(k * theta / 2.0) *
                                 Eigen::MatrixXd::Identity(m0.ambient(), m0.ambient()) -
                             std::sin(k * theta / 2.0) * j_mult(k);
  const double match = std::min((*r - rt).norm(), (*r + rt).norm());
  CHECK(match < 1e-6);

  // Different spectra cannot be aligned: validation must fail.
  const ModuliPoint q = family_point(desc, 0.8, 0.0);
  const auto bad = fit_alignment(m0, deformed_map(desc, q), fit, held_out, 1e-6);
  CHECK(!bad.has_value());
}

TEST_CASE("domain sampling and chart moves") {
  const auto a = sample_points(25, 5u);
  const auto b = sample_points(25, 5u);
  const auto c = sample_points(25, 6u);
  REQUIRE(a.size() == 50);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].chart == (i < 25 ? 0 : 1));
    CHECK(std::abs(a[i].z) <= 1.0);
    CHECK(a[i].z == b[i].z);
  }
  CHECK(a[3].z != c[3].z);

  std::mt19937_64 rng(2);
  const Eigen::Matrix2cd g = random_su2(rng), h = random_su2(rng);
  for (const DomainPoint& x : a) {
    const DomainPoint y = mobius_apply(g, x);
    CHECK(std::abs(y.z) <= 1.0 + 1e-12);
    // Composition consistency, compared through homogeneous coordinates.
    const DomainPoint z1 = mobius_apply(h, y);
    const DomainPoint z2 = mobius_apply(h * g, x);
    const Eigen::Vector2cd v1 = z1.chart == 0 ? Eigen::Vector2cd(-z1.z, 1.0)
                                              : Eigen::Vector2cd(-1.0, z1.z);
    const Eigen::Vector2cd v2 = z2.chart == 0 ? Eigen::Vector2cd(-z2.z, 1.0)
                                              : Eigen::Vector2cd(-1.0, z2.z);
    const std::complex<double> cross = v1(0) * v2(1) - v1(1) * v2(0);
    CHECK(std::abs(cross) < 1e-12);
  }

  CHECK_THROWS_AS(validate_domain_point(DomainPoint{2, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_domain_point(DomainPoint{0, {1.3, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS((void)other_chart(DomainPoint{0, {0.0, 0.0}}), std::invalid_argument);
}
