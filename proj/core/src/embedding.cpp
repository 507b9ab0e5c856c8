#include "qmoduli/embedding.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qmoduli/rep_element.hpp"

namespace qmoduli {
namespace {

constexpr double kFdStep = 1e-4;      // central finite-difference step
constexpr double kChartBound = 1.2;   // max |coordinate| accepted in a chart
constexpr std::uint64_t kProbeSeed = 20260814ull;

double binom_d(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

std::vector<double> inv_sqrt_gram_for(int level) {
  // <m_a, m_a> = 1/binom(level, a), so the orthonormal scaling is sqrt(binom).
  std::vector<double> s(level + 1);
  for (int a = 0; a <= level; ++a) s[a] = std::sqrt(binom_d(level, a));
  return s;
}

std::string point_str(const DomainPoint& x) {
  std::ostringstream os;
  os << "chart " << x.chart << ", z = (" << x.z.real() << ", " << x.z.imag() << ")";
  return os.str();
}

double unit_open(std::mt19937_64& rng) {
  // Deterministic uniform in (0,1) from the top 53 bits.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Complex evaluation row over the full orthonormal module basis at a chart
// coordinate.  Entry a carries the monomial value (-1)^a z^a (chart 0) or
// (-1)^a z^{level-a} (chart 1, the two differing by the transition factor
// z^level); entry (level+1)+a carries i times the same value.
Eigen::RowVectorXcd module_row(int level, const std::vector<double>& isg, int chart,
                               std::complex<double> z) {
  const int n1 = level + 1;
  std::vector<std::complex<double>> pw(n1);
  pw[0] = 1.0;
  for (int j = 1; j <= level; ++j) pw[j] = pw[j - 1] * z;

  Eigen::RowVectorXcd row(2 * n1);
  double sign = 1.0;
  for (int a = 0; a <= level; ++a) {
    const std::complex<double> val = sign * pw[chart == 0 ? a : level - a] * isg[a];
    row(a) = val;
    row(n1 + a) = std::complex<double>(0.0, 1.0) * val;
    sign = -sign;
  }
  return row;
}

Eigen::RowVectorXcd raw_eval_row(const EmbeddingMap& m, int chart, std::complex<double> z) {
  const Eigen::RowVectorXcd row = module_row(m.level, m.inv_sqrt_gram, chart, z);
  return row * m.sections.cast<std::complex<double>>();
}

OrientedPlane plane_from_row(const Eigen::RowVectorXcd& e, const DomainPoint& x) {
  const Eigen::VectorXd va = e.real().transpose();
  const Eigen::VectorXd vb = e.imag().transpose();
  const double scale = std::sqrt(va.squaredNorm() + vb.squaredNorm());
  const double na = va.norm();
  if (!(na > 1e-10 * scale) || scale == 0.0)
    throw std::runtime_error("evaluation fails to generate the fibre at " + point_str(x));
  OrientedPlane p;
  p.a = va / na;
  Eigen::VectorXd b = vb - p.a.dot(vb) * p.a;
  const double nb = b.norm();
  if (!(nb > 1e-10 * scale))
    throw std::runtime_error("evaluation fails to generate the fibre at " + point_str(x));
  p.b = b / nb;
  return p;
}

void probe_generation(const EmbeddingMap& m) {
  for (const DomainPoint& x : sample_points(5, kProbeSeed)) (void)eval_plane(m, x);
}

template <class F>
double fd_laplacian(F&& f, std::complex<double> z, double h) {
  const std::complex<double> ih(0.0, h);
  return (f(z + h) + f(z - h) + f(z + ih) + f(z - ih) - 4.0 * f(z)) / (h * h);
}

// One Richardson level on the O(h^2) five-point Laplacian.
template <class F>
double fd_laplacian_rich(F&& f, std::complex<double> z, double h) {
  const double fine = fd_laplacian(f, z, h);
  const double coarse = fd_laplacian(f, z, 2.0 * h);
  return (4.0 * fine - coarse) / 3.0;
}

struct ProjectiveDerivs {
  Eigen::VectorXcd del;   // projected d/dz of the unit lift
  Eigen::VectorXcd dbar;  // projected d/dzbar of the unit lift
};

ProjectiveDerivs projective_derivs(const EmbeddingMap& m, const DomainPoint& x) {
  const auto lift = [&](std::complex<double> z) -> Eigen::VectorXcd {
    const OrientedPlane p = eval_plane(m, DomainPoint{x.chart, z});
    return (p.a + std::complex<double>(0.0, 1.0) * p.b) / std::sqrt(2.0);
  };
  const double h = kFdStep;
  const std::complex<double> ih(0.0, h);
  const Eigen::VectorXcd p0 = lift(x.z);
  const Eigen::VectorXcd px = (lift(x.z + h) - lift(x.z - h)) / (2.0 * h);
  const Eigen::VectorXcd py = (lift(x.z + ih) - lift(x.z - ih)) / (2.0 * h);
  const std::complex<double> i1(0.0, 1.0);
  const Eigen::VectorXcd del = 0.5 * (px - i1 * py);
  const Eigen::VectorXcd dbar = 0.5 * (px + i1 * py);
  ProjectiveDerivs d;
  d.del = del - p0 * p0.dot(del);    // Eigen's dot conjugates the left factor
  d.dbar = dbar - p0 * p0.dot(dbar);
  return d;
}

// Gauss-Legendre nodes and weights on [0, 1] via the Golub-Welsch recurrence.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = jac(i - 1, i) = b;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = v0 * v0;   // 2 v0^2 on [-1,1], halved by the affine map
  }
}

}  // namespace

void validate_domain_point(const DomainPoint& x) {
  if (x.chart != 0 && x.chart != 1)
    throw std::invalid_argument("domain point: chart must be 0 or 1");
  if (!(std::abs(x.z) <= kChartBound + 1e-9))
    throw std::invalid_argument("domain point: |coordinate| exceeds the chart bound 1.2");
}

DomainPoint other_chart(const DomainPoint& x) {
  validate_domain_point(x);
  if (std::abs(x.z) == 0.0)
    throw std::invalid_argument("other_chart: the chart origin has no coordinate in the other chart");
  DomainPoint y{1 - x.chart, 1.0 / x.z};
  validate_domain_point(y);
  return y;
}

DomainPoint mobius_apply(const Eigen::Matrix2cd& g, const DomainPoint& x) {
  validate_domain_point(x);
  // Chart 0 coordinate z marks the line through (-z, 1); chart 1 the line
  // through (-1, w).  Evaluation of u at the line vector P reads u(P), so
  // planes transform by the module action when points move by g itself.
  const Eigen::Vector2cd p = x.chart == 0 ? Eigen::Vector2cd(-x.z, 1.0)
                                          : Eigen::Vector2cd(-1.0, x.z);
  const Eigen::Vector2cd q = g * p;
  if (std::abs(q(1)) >= std::abs(q(0))) return DomainPoint{0, -q(0) / q(1)};
  return DomainPoint{1, -q(1) / q(0)};
}

Eigen::Matrix2cd random_su2(std::mt19937_64& rng) {
  double q[4];
  for (int i = 0; i < 4; i += 2) {
    const double u1 = unit_open(rng);
    const double u2 = unit_open(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    q[i] = r * std::cos(2.0 * M_PI * u2);
    q[i + 1] = r * std::sin(2.0 * M_PI * u2);
  }
  const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& v : q) v /= norm;
  Eigen::Matrix2cd g;
  g << std::complex<double>(q[0], q[1]), std::complex<double>(q[2], q[3]),
      std::complex<double>(-q[2], q[3]), std::complex<double>(q[0], -q[1]);
  return g;
}

std::vector<DomainPoint> sample_points(int per_chart, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<DomainPoint> out;
  out.reserve(2 * per_chart);
  for (int chart = 0; chart < 2; ++chart) {
    const double offset = 2.0 * M_PI * unit_open(rng);
    for (int i = 0; i < per_chart; ++i) {
      const double r = std::sqrt((i + 0.5) / per_chart);
      out.push_back(DomainPoint{chart, std::polar(r, offset + golden * i)});
    }
  }
  return out;
}

Eigen::MatrixXd OrientedPlane::projector() const {
  const int n = ambient();
  return Eigen::MatrixXd::Identity(n, n) - a * a.transpose() - b * b.transpose();
}

double isotropy_defect(const QuadricPoint& q) {
  const std::complex<double> s = (q.zeta.array() * q.zeta.array()).sum();
  return std::abs(s) / q.zeta.squaredNorm();
}

QuadricPoint plane_to_quadric(const OrientedPlane& p) {
  QuadricPoint q;
  q.zeta = p.a + std::complex<double>(0.0, 1.0) * p.b;
  return q;
}

EmbeddingMap standard_map(int k) {
  if (k < 1) throw std::invalid_argument("standard_map: level must be >= 1");
  EmbeddingMap m;
  m.level = k;
  m.name = "standard k=" + std::to_string(k);
  const int n = 2 * (k + 1);
  m.sections = Eigen::MatrixXd::Identity(n, n);
  m.frame = m.sections;
  m.inv_sqrt_gram = inv_sqrt_gram_for(k);
  probe_generation(m);
  return m;
}

EmbeddingMap real_standard_map(int k) {
  if (k < 1) throw std::invalid_argument("real_standard_map: level must be >= 1");
  const int level = 2 * k;
  const int n = 2 * (level + 1);
  const auto basis = real_form_basis(level);
  const std::vector<double> sg = sqrt_gram_diagonal(level);

  Eigen::MatrixXd sec(n, static_cast<int>(basis.size()));
  for (int j = 0; j < sec.cols(); ++j) {
    const RatVec r = realify(basis[j]);
    for (int i = 0; i < n; ++i) sec(i, j) = to_double(r[i]) * sg[i];
  }
  // The real-form basis is orthogonal; Gram-Schmidt here only normalises
  // and guards the construction.
  for (int j = 0; j < sec.cols(); ++j) {
    for (int i = 0; i < j; ++i) sec.col(j) -= sec.col(i).dot(sec.col(j)) * sec.col(i);
    const double norm = sec.col(j).norm();
    if (!(norm > 1e-9)) throw std::logic_error("real_standard_map: degenerate section basis");
    sec.col(j) /= norm;
  }

  EmbeddingMap m;
  m.level = level;
  m.name = "real-standard k=" + std::to_string(k);
  m.sections = sec;
  m.frame = sec;
  m.inv_sqrt_gram = inv_sqrt_gram_for(level);
  probe_generation(m);
  return m;
}

EmbeddingMap deformed_map(const ModuliDescriptor& desc, const ModuliPoint& pt) {
  if (pt.k != desc.k)
    throw std::invalid_argument("deformed_map: point and descriptor level disagree");
  if (pt.status == PointStatus::infeasible)
    throw std::invalid_argument("deformed_map: infeasible point has no map");
  EmbeddingMap m;
  m.level = desc.k;
  m.name = "deformed k=" + std::to_string(desc.k);
  const Eigen::MatrixXd q = range_orthonormal_basis(pt);
  m.frame = q;
  m.sections = pt.T * q;
  m.inv_sqrt_gram = inv_sqrt_gram_for(desc.k);
  probe_generation(m);
  return m;
}

Eigen::RowVectorXcd eval_row(const EmbeddingMap& m, const DomainPoint& x) {
  validate_domain_point(x);
  return raw_eval_row(m, x.chart, x.z);
}

OrientedPlane eval_plane(const EmbeddingMap& m, const DomainPoint& x) {
  validate_domain_point(x);
  return plane_from_row(raw_eval_row(m, x.chart, x.z), x);
}

double log_potential(const EmbeddingMap& m, int chart, std::complex<double> z) {
  return std::log(raw_eval_row(m, chart, z).squaredNorm());
}

double isometry_ratio(const EmbeddingMap& m, const DomainPoint& x) {
  validate_domain_point(x);
  const auto num_f = [&](std::complex<double> z) { return log_potential(m, x.chart, z); };
  const auto den_f = [](std::complex<double> z) { return std::log1p(std::norm(z)); };
  const double num = fd_laplacian_rich(num_f, x.z, kFdStep);
  const double den = fd_laplacian_rich(den_f, x.z, kFdStep);
  return num / den;
}

double cr_residual(const EmbeddingMap& m, const DomainPoint& x) {
  validate_domain_point(x);
  const ProjectiveDerivs d = projective_derivs(m, x);
  const double u = d.del.squaredNorm();
  const double v = d.dbar.squaredNorm();
  if (u + v == 0.0) return 0.0;
  return 2.0 * v / (u + v);
}

double energy_density(const EmbeddingMap& m, const DomainPoint& x) {
  validate_domain_point(x);
  const ProjectiveDerivs d = projective_derivs(m, x);
  const double w = 1.0 + std::norm(x.z);
  return 2.0 * (d.del.squaredNorm() + d.dbar.squaredNorm()) * w * w;
}

double degree_integral(const EmbeddingMap& m, int radial, int angular) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(radial, nodes, weights);
  double total = 0.0;
  for (int chart = 0; chart < 2; ++chart) {
    const auto f = [&](std::complex<double> z) { return log_potential(m, chart, z); };
    double chart_sum = 0.0;
    for (int i = 0; i < radial; ++i) {
      const double r = nodes[i];
      double ring = 0.0;
      for (int j = 0; j < angular; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / angular;
        ring += fd_laplacian_rich(f, std::polar(r, th), kFdStep);
      }
      chart_sum += weights[i] * r * ring * (2.0 * M_PI / angular);
    }
    total += chart_sum;
  }
  return total / (4.0 * M_PI);
}

double kernel_containment(const ModuliPoint& pt, const std::vector<DomainPoint>& xs) {
  if (pt.status != PointStatus::boundary)
    throw std::invalid_argument("kernel_containment: requires a boundary point");
  EmbeddingMap full;
  full.level = pt.k;
  full.name = "kernel probe k=" + std::to_string(pt.k);
  full.sections = pt.T;
  full.frame = Eigen::MatrixXd::Identity(pt.T.rows(), pt.T.cols());
  full.inv_sqrt_gram = inv_sqrt_gram_for(pt.k);

  double worst = 0.0;
  for (const DomainPoint& x : xs) {
    const OrientedPlane p = eval_plane(full, x);
    for (int j = 0; j < pt.kernel.cols(); ++j) {
      worst = std::max(worst, std::abs(p.a.dot(pt.kernel.col(j))));
      worst = std::max(worst, std::abs(p.b.dot(pt.kernel.col(j))));
    }
  }
  return worst;
}

Eigen::MatrixXd realified_su2_action(int k, const Eigen::Matrix2cd& g) {
  using cd = std::complex<double>;
  const cd al = g(0, 0), be = g(0, 1), ga = g(1, 0), de = g(1, 1);
  // (pi(g)p)(v) = p(g^{-1} v) with g^{-1} = [[de, -be], [-ga, al]] (det 1).
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(k + 1, k + 1);
  for (int a = 0; a <= k; ++a) {
    // Coefficients of (de x - be y)^a and (-ga x + al y)^{k-a} by x-degree.
    std::vector<cd> u(a + 1), w(k - a + 1);
    for (int j = 0; j <= a; ++j)
      u[j] = binom_d(a, j) * std::pow(de, j) * std::pow(-be, a - j);
    for (int j = 0; j <= k - a; ++j)
      w[j] = binom_d(k - a, j) * std::pow(-ga, j) * std::pow(al, k - a - j);
    for (int b = 0; b <= k; ++b) {
      cd s = 0.0;
      for (int j = std::max(0, b - (k - a)); j <= std::min(a, b); ++j) s += u[j] * w[b - j];
      mat(b, a) = s;
    }
  }
  // Conjugate into orthonormal coordinates, then realify block-wise.
  const std::vector<double> isg = inv_sqrt_gram_for(k);
  for (int b = 0; b <= k; ++b)
    for (int a = 0; a <= k; ++a) mat(b, a) *= isg[a] / isg[b];

  const int n1 = k + 1;
  Eigen::MatrixXd r(2 * n1, 2 * n1);
  r.topLeftCorner(n1, n1) = mat.real();
  r.bottomRightCorner(n1, n1) = mat.real();
  r.bottomLeftCorner(n1, n1) = mat.imag();
  r.topRightCorner(n1, n1) = -mat.imag();
  return r;
}

double equivariance_residual(const EmbeddingMap& m,
                             const std::vector<Eigen::Matrix2cd>& gs,
                             const std::vector<DomainPoint>& xs) {
  double worst = 0.0;
  for (const Eigen::Matrix2cd& g : gs) {
    const Eigen::MatrixXd r = realified_su2_action(m.level, g);
    const Eigen::MatrixXd rw = m.frame.transpose() * r * m.frame;
    for (const DomainPoint& x : xs) {
      const Eigen::MatrixXd lhs = eval_plane(m, mobius_apply(g, x)).projector();
      const Eigen::MatrixXd rhs = rw * eval_plane(m, x).projector() * rw.transpose();
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

std::optional<Eigen::MatrixXd> fit_alignment(const EmbeddingMap& a,
                                             const EmbeddingMap& b,
                                             const std::vector<DomainPoint>& fit,
                                             const std::vector<DomainPoint>& check,
                                             double tol) {
  if (a.ambient() != b.ambient() || fit.empty()) return std::nullopt;
  const int d = a.ambient();
  const int d2 = d * d;

  // Normal equations for the linear system R P_a(x) - P_b(x) R = 0 over all
  // fit samples, in column-major vec coordinates.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d2, d2);
  for (const DomainPoint& x : fit) {
    const Eigen::MatrixXd pa = eval_plane(a, x).projector();
    const Eigen::MatrixXd pb = eval_plane(b, x).projector();
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(d2, d2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          sys(i + d * j, i + d * k) += pa(k, j);   // vec(R pa)
          sys(i + d * j, k + d * j) -= pb(i, k);   // -vec(pb R)
        }
    gram += sys.transpose() * sys;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  Eigen::VectorXd v = es.eigenvectors().col(0);
  const Eigen::Map<const Eigen::MatrixXd> r0(v.data(), d, d);

  // Polar projection onto the orthogonal group.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd r = svd.matrixU() * svd.matrixV().transpose();

  for (const DomainPoint& x : check) {
    const Eigen::MatrixXd pa = eval_plane(a, x).projector();
    const Eigen::MatrixXd pb = eval_plane(b, x).projector();
    if ((r * pa * r.transpose() - pb).norm() > tol) return std::nullopt;
  }
  return r;
}

}  // namespace qmoduli
