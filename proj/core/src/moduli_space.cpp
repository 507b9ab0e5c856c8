#include "qmoduli/moduli_space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qmoduli {

double to_double(const Rational& r) { return r.get_d(); }

std::vector<double> sqrt_gram_diagonal(int k) {
  const RatVec g = gram_diagonal(k);
  std::vector<double> s(g.size());
  for (size_t i = 0; i < g.size(); ++i) s[i] = std::sqrt(to_double(g[i]));
  return s;
}

Eigen::MatrixXd orthonormal_coords(const RatMat& op, const std::vector<double>& sqrt_g) {
  Eigen::MatrixXd m(op.rows, op.cols);
  for (int i = 0; i < op.rows; ++i)
    for (int j = 0; j < op.cols; ++j) m(i, j) = sqrt_g[i] * to_double(op(i, j)) / sqrt_g[j];
  return m;
}

const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::interior:
      return "interior";
    case PointStatus::boundary:
      return "boundary";
    default:
      return "infeasible";
  }
}

namespace {

Eigen::MatrixXd to_eigen(const RatMat& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = to_double(m(i, j));
  return out;
}

std::vector<Eigen::MatrixXd> unit_ops(const Subspace& sub, int n,
                                      const std::vector<double>& sqrt_g) {
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(sub.rank());
  for (const auto& row : sub.basis.rows()) {
    Eigen::MatrixXd b = orthonormal_coords(unflatten(row, n, n), sqrt_g);
    ops.push_back(b / b.norm());
  }
  return ops;
}

}  // namespace

ModuliDescriptor moduli_descriptor(int k) {
  if (k < 1) throw std::invalid_argument("moduli_descriptor: level must be >= 1");
  ModuliDescriptor d;
  d.k = k;
  d.ambient_dim = real_dim(k);
  const int n = d.ambient_dim;

  const RepElement low = RepElement::monomial(k, 0);  // evaluation line y^k
  const RepElement jlow = low.scaled(GaussianRational::unit_i());
  const RepElement der = RepElement::monomial(k, 1);  // derivative line x y^{k-1}
  const RepElement jder = der.scaled(GaussianRational::unit_i());

  d.span0 = g_span_operators(k, {sym_pair(low, low), sym_pair(low, jlow), sym_pair(jlow, jlow)});
  std::vector<SymOperator> seeds1;
  for (const auto& a : {der, jder})
    for (const auto& b : {low, jlow}) seeds1.push_back(sym_pair(a, b));
  d.span1 = g_span_operators(k, seeds1);

  Subspace constraints = d.span1;
  for (const auto& row : d.span0.basis.rows()) constraints.basis.adjoin(row);
  constraints.basis.adjoin(SymOperator::identity(k).flat());
  d.tangent = ortho_complement(constraints, sym_operator_space(k));
  const int expect = k * (k - 1);
  if (d.tangent.rank() != expect)
    throw std::logic_error("moduli tangent dimension " + std::to_string(d.tangent.rank()) +
                           " at level " + std::to_string(k) + ", need " + std::to_string(expect));
  d.tangent.ambient = "deformations level " + std::to_string(k);
  d.tangent_labels = casimir_isotypic(adjoint_action(k), d.tangent.basis);

  // Exact J-composition on tangent coordinates. coordinates() throws if J*B
  // escapes the tangent, and the square must be -Id.
  const RatMat J = j_matrix(k);
  const int t = d.tangent.rank();
  d.j_on_tangent = RatMat(t, t);
  for (int c = 0; c < t; ++c) {
    const RatMat b = unflatten(d.tangent.basis.rows()[c], n, n);
    const RatVec coords = d.tangent.basis.coordinates(flatten(J * b));
    for (int r = 0; r < t; ++r) d.j_on_tangent(r, c) = coords[r];
  }
  if (!(d.j_on_tangent * d.j_on_tangent + RatMat::identity(t)).is_zero())
    throw std::logic_error("J composition on the tangent does not square to -Id");

  d.sqrt_gram = sqrt_gram_diagonal(k);
  d.tangent_ops.reserve(t);
  for (const auto& row : d.tangent.basis.rows())
    d.tangent_ops.push_back(orthonormal_coords(unflatten(row, n, n), d.sqrt_gram));
  d.span0_ops = unit_ops(d.span0, n, d.sqrt_gram);
  d.span1_ops = unit_ops(d.span1, n, d.sqrt_gram);
  d.j_on_tangent_num = to_eigen(d.j_on_tangent);

  if (k % 2 == 0) {
    const RatVec cs = d.tangent.basis.coordinates(SymOperator::sigma(k).flat());
    const RatVec cj = d.tangent.basis.coordinates(SymOperator::j_sigma(k).flat());
    d.sigma_coords.resize(t);
    d.j_sigma_coords.resize(t);
    for (int i = 0; i < t; ++i) {
      d.sigma_coords[i] = to_double(cs[i]);
      d.j_sigma_coords[i] = to_double(cj[i]);
    }
  }
  return d;
}

ModuliPoint make_point(const ModuliDescriptor& desc, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != desc.dim())
    throw std::invalid_argument("make_point: expected " + std::to_string(desc.dim()) +
                                " coordinates, got " + std::to_string(coords.size()));
  const int n = desc.ambient_dim;
  ModuliPoint pt;
  pt.k = desc.k;
  pt.coords = coords;

  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (size_t i = 0; i < coords.size(); ++i) a += coords[i] * desc.tangent_ops[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  pt.eigenvalues = es.eigenvalues();
  pt.eigenvectors = es.eigenvectors();

  const double tol = 1e-9 * std::max(1.0, pt.eigenvalues.cwiseAbs().maxCoeff());
  Eigen::VectorXd clipped = pt.eigenvalues;
  bool negative = false;
  pt.kernel_dim = 0;
  for (int i = 0; i < n; ++i) {
    if (clipped[i] <= tol) {
      if (clipped[i] < -tol) negative = true;
      clipped[i] = 0.0;
      ++pt.kernel_dim;
    }
  }
  pt.status = negative ? PointStatus::infeasible
                       : (pt.kernel_dim > 0 ? PointStatus::boundary : PointStatus::interior);
  if (pt.status != PointStatus::infeasible) {
    pt.T = pt.eigenvectors * clipped.cwiseSqrt().asDiagonal() * pt.eigenvectors.transpose();
    pt.kernel = pt.eigenvectors.leftCols(pt.kernel_dim);
  }
  return pt;
}

ConditionResiduals condition_residuals(const ModuliDescriptor& desc, const ModuliPoint& pt) {
  if (pt.status == PointStatus::infeasible)
    throw std::invalid_argument("condition_residuals: infeasible point has no gauge operator");
  const int n = desc.ambient_dim;
  const Eigen::MatrixXd d = pt.T * pt.T - Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(1.0, d.norm());
  auto worst = [&](const std::vector<Eigen::MatrixXd>& ops) {
    double m = 0.0;
    // trace(d b) = elementwise sum: both matrices are symmetric.
    for (const auto& b : ops) m = std::max(m, std::abs((d.array() * b.array()).sum()));
    return m / scale;
  };
  return {worst(desc.span0_ops), worst(desc.span1_ops)};
}

std::vector<double> s1_rotate(const ModuliDescriptor& desc, const std::vector<double>& coords,
                              double theta) {
  if (static_cast<int>(coords.size()) != desc.dim())
    throw std::invalid_argument("s1_rotate: coordinate count mismatch");
  const Eigen::Map<const Eigen::VectorXd> c(coords.data(), coords.size());
  const Eigen::VectorXd out =
      std::cos(desc.k * theta) * c - std::sin(desc.k * theta) * (desc.j_on_tangent_num * c);
  return std::vector<double>(out.data(), out.data() + out.size());
}

ModuliPoint s1_rotate(const ModuliDescriptor& desc, const ModuliPoint& pt, double theta) {
  return make_point(desc, s1_rotate(desc, pt.coords, theta));
}

ModuliPoint family_point(const ModuliDescriptor& desc, double t, double s) {
  if (desc.k % 2 != 0)
    throw std::invalid_argument("family_point: sigma is Gram-skew at odd levels");
  std::vector<double> coords(desc.dim());
  for (int i = 0; i < desc.dim(); ++i)
    coords[i] = t * desc.sigma_coords[i] + s * desc.j_sigma_coords[i];
  return make_point(desc, coords);
}

ModuliPoint sample_interior(const ModuliDescriptor& desc, std::mt19937_64& rng,
                            double spectral_radius) {
  const int t = desc.dim();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> coords(t);
  for (auto& c : coords) c = gauss(rng);
  if (t > 0) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(desc.ambient_dim, desc.ambient_dim);
    for (int i = 0; i < t; ++i) c += coords[i] * desc.tangent_ops[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > 0.0)
      for (auto& x : coords) x *= spectral_radius / radius;
  }
  return make_point(desc, coords);
}

Eigen::MatrixXd range_orthonormal_basis(const ModuliPoint& pt) {
  if (pt.status == PointStatus::infeasible)
    throw std::invalid_argument("range_orthonormal_basis: infeasible point has no gauge operator");
  const int n = static_cast<int>(pt.T.rows());
  if (pt.kernel_dim == 0) return Eigen::MatrixXd::Identity(n, n);

  const int r = n - pt.kernel_dim;
  // Eigenvalues ascend, so the clipped ones sit in the leading columns.
  const Eigen::MatrixXd range = pt.eigenvectors.rightCols(r);
  const Eigen::MatrixXd proj = range * range.transpose();

  // Gram-Schmidt over the projected standard basis vectors in index order.
  // The result depends only on range(T), so gauge keys stay reproducible
  // even when T has degenerate positive eigenvalues.
  Eigen::MatrixXd q(n, r);
  int got = 0;
  for (int i = 0; i < n && got < r; ++i) {
    Eigen::VectorXd v = proj.col(i);
    for (int j = 0; j < got; ++j) v -= q.col(j).dot(v) * q.col(j);
    const double norm = v.norm();
    if (norm > 1e-6) q.col(got++) = v / norm;
  }
  if (got != r)
    throw std::logic_error("range_orthonormal_basis: projected basis is incomplete");
  return q;
}

Eigen::MatrixXd gauge_class_key(const ModuliPoint& pt) {
  if (pt.status == PointStatus::infeasible)
    throw std::invalid_argument("gauge_class_key: infeasible point has no gauge operator");
  if (pt.kernel_dim == 0) return pt.T;
  const Eigen::MatrixXd q = range_orthonormal_basis(pt);
  return q.transpose() * pt.T * q;
}

double key_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  return (a - b).norm();
}

RigidityReport rigidity_herm(int k) {
  const SymOperator h = herm_pair(RepElement::monomial(k, 0), RepElement::monomial(k, 0));
  return {k, g_span_operators(k, {h}).rank(), (k + 1) * (k + 1)};
}

RigidityReport rigidity_real(int k) {
  const int level = 2 * k;
  std::vector<RatVec> rows;
  for (const auto& v : real_form_basis(level)) rows.push_back(realify(v));
  const EchelonBasis sub = span_of(real_dim(level), rows);
  const GroupAction act = restricted_action(rep_action(level), sub);
  const int d = act.dim;  // 2k + 1

  // Gram of the restricted basis rows under the ambient real inner product.
  const RatVec g = gram_diagonal(level);
  RatMat gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (size_t a = 0; a < g.size(); ++a) s += g[a] * sub.rows()[i][a] * sub.rows()[j][a];
      gram(i, j) = s;
    }

  const RepElement top = RepElement::monomial(level, level);  // x^{2k}
  const RepElement bot = RepElement::monomial(level, 0);      // y^{2k}
  const RatVec vp = sub.coordinates(realify(top + bot));
  const RatVec vm = sub.coordinates(realify((top - bot).scaled(GaussianRational::unit_i())));

  auto pair = [&](const RatVec& u, const RatVec& v) {
    const RatVec gu = gram.apply(u);
    const RatVec gv = gram.apply(v);
    RatMat m(d, d);
    const Rational half(1, 2);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = half * (gv[j] * u[i] + gu[j] * v[i]);
    return flatten(m);
  };

  Subspace span = g_span(adjoint_action_of(act), "S(W^R) level " + std::to_string(level),
                         {pair(vp, vp), pair(vp, vm), pair(vm, vm)});
  return {k, span.rank(), (2 * k + 1) * (k + 1)};
}

}  // namespace qmoduli
