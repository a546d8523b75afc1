#include "homfinsler/liealg/lie_algebra.hpp"

#include <cmath>

namespace homfinsler::liealg {

namespace {

double neg_trace_product(const DenseMatrix<double>& x, const DenseMatrix<double>& y) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = 0; b < x.cols(); ++b) s += x(a, b) * y(b, a);
  return -s;
}

DenseMatrix<double> commutator(const DenseMatrix<double>& x, const DenseMatrix<double>& y) { return x * y - y * x; }

struct Complex {
  DenseMatrix<double> re;
  DenseMatrix<double> im;
  explicit Complex(std::size_t n) : re(n, n), im(n, n) {}
};

DenseMatrix<double> embed(const Complex& c) { return embed_complex(c.re, c.im); }

std::vector<DenseMatrix<double>> unitary_basis(int n, bool with_center) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<DenseMatrix<double>> basis;
  for (int k = 1; k < n; ++k) {
    Complex c(un);
    const double f = 1.0 / std::sqrt(2.0 * k * (k + 1));
    for (int a = 0; a < k; ++a) c.im(static_cast<std::size_t>(a), static_cast<std::size_t>(a)) = f;
    c.im(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = -k * f;
    basis.push_back(embed(c));
  }
  if (with_center) {
    Complex c(un);
    for (std::size_t a = 0; a < un; ++a) c.im(a, a) = 1.0 / std::sqrt(2.0 * n);
    basis.push_back(embed(c));
  }
  for (std::size_t p = 0; p < un; ++p)
    for (std::size_t q = p + 1; q < un; ++q) {
      Complex r(un);
      r.re(p, q) = 0.5;
      r.re(q, p) = -0.5;
      basis.push_back(embed(r));
      Complex i(un);
      i.im(p, q) = 0.5;
      i.im(q, p) = 0.5;
      basis.push_back(embed(i));
    }
  return basis;
}

}  // namespace

DenseMatrix<double> embed_complex(const DenseMatrix<double>& re, const DenseMatrix<double>& im) {
  const std::size_t n = re.rows();
  DenseMatrix<double> m(2 * n, 2 * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const double a = re(p, q);
      const double b = im(p, q);
      m(2 * p, 2 * q) = a;
      m(2 * p, 2 * q + 1) = -b;
      m(2 * p + 1, 2 * q) = b;
      m(2 * p + 1, 2 * q + 1) = a;
    }
  return m;
}

DenseMatrix<double> embed_quaternion(const std::array<DenseMatrix<double>, 4>& parts) {
  const std::size_t n = parts[0].rows();
  DenseMatrix<double> m(4 * n, 4 * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const double a = parts[0](p, q);
      const double b = parts[1](p, q);
      const double c = parts[2](p, q);
      const double d = parts[3](p, q);
      // left multiplication by a + bi + cj + dk on (1, i, j, k)
      const double block[4][4] = {{a, -b, -c, -d}, {b, a, -d, c}, {c, d, a, -b}, {d, -c, b, a}};
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) m(4 * p + r, 4 * q + s) = block[r][s];
    }
  return m;
}

LieAlgebra::LieAlgebra(std::string name, std::vector<DenseMatrix<double>> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  const std::size_t n = basis_.size();
  for (const auto& b : basis_)
    if (b.rows() != b.cols() || b.rows() != basis_[0].rows()) throw DimensionError("LieAlgebra: basis matrices differ in shape");
  form_ = DenseMatrix<double>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) form_(i, j) = neg_trace_product(basis_[i], basis_[j]);
  if (n == 0) {
    form_inv_ = form_;
    sc_ = StructureConstants(0, {});
    return;
  }
  if (!numkernel::is_positive_definite(form_)) throw StructuralError("LieAlgebra: -tr(XY) is not positive definite on the basis");
  form_inv_ = numkernel::LuDecomposition<double>(form_).inverse();
  std::vector<StructureConstants::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto c = commutator(basis_[i], basis_[j]);
      Vec<double> rhs(n);
      for (std::size_t l = 0; l < n; ++l) rhs[l] = neg_trace_product(c, basis_[l]);
      auto coords = numkernel::matvec<double, double>(form_inv_, std::span<const double>(rhs));
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(coords[k]) > 1e-13)
          entries.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), coords[k]});
    }
  sc_ = StructureConstants(n, std::move(entries));
}

Vec<double> LieAlgebra::bracket(std::span<const double> x, std::span<const double> y) const { return sc_.bracket<double>(x, y); }

double LieAlgebra::inner(std::span<const double> x, std::span<const double> y) const {
  return numkernel::bilinear<double>(form_, x, y);
}

DenseMatrix<double> LieAlgebra::element(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("LieAlgebra::element: wrong coordinate count");
  DenseMatrix<double> m(matrix_size(), matrix_size());
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] != 0.0) m += basis_[i] * x[i];
  return m;
}

Vec<double> LieAlgebra::coordinates(const DenseMatrix<double>& m) const {
  Vec<double> rhs(dim());
  for (std::size_t l = 0; l < dim(); ++l) rhs[l] = neg_trace_product(m, basis_[l]);
  return numkernel::matvec<double, double>(form_inv_, std::span<const double>(rhs));
}

double LieAlgebra::antisymmetry_defect() const {
  double worst = 0.0;
  const int n = static_cast<int>(dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(sc_.coefficient(i, j, k) + sc_.coefficient(j, i, k)));
  return worst;
}

double LieAlgebra::jacobi_defect() const {
  const std::size_t n = dim();
  double worst = 0.0;
  auto unit = [n](std::size_t i) {
    Vec<double> e(n, 0.0);
    e[i] = 1.0;
    return e;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto a = unit(i), b = unit(j), c = unit(k);
        auto t1 = bracket(a, bracket(b, c));
        auto t2 = bracket(b, bracket(c, a));
        auto t3 = bracket(c, bracket(a, b));
        for (std::size_t l = 0; l < n; ++l) worst = std::max(worst, std::abs(t1[l] + t2[l] + t3[l]));
      }
  return worst;
}

double LieAlgebra::invariance_defect() const {
  const std::size_t n = dim();
  double worst = 0.0;
  for (std::size_t z = 0; z < n; ++z) {
    Vec<double> ez(n, 0.0);
    ez[z] = 1.0;
    const auto adz = ad(ez);
    // B ad z + (ad z)^T B must vanish
    const auto m = form_ * adz + adz.transpose() * form_;
    worst = std::max(worst, m.max_abs_entry());
  }
  return worst;
}

std::size_t LieAlgebra::center_dim() const {
  const std::size_t n = dim();
  if (n == 0) return 0;
  DenseMatrix<double> stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<double> e(n, 0.0);
    e[i] = 1.0;
    const auto a = ad(e);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = a(r, c);
  }
  return numkernel::nullspace(stacked).cols();
}

AlgebraPtr make_u(int n) {
  if (n < 1) throw DomainError("u(n) needs n >= 1");
  return std::make_shared<LieAlgebra>("u(" + std::to_string(n) + ")", unitary_basis(n, true));
}

AlgebraPtr make_su(int n) {
  if (n < 1) throw DomainError("su(n) needs n >= 1");
  return std::make_shared<LieAlgebra>("su(" + std::to_string(n) + ")", unitary_basis(n, false));
}

AlgebraPtr make_sp(int n) {
  if (n < 1) throw DomainError("sp(n) needs n >= 1");
  const auto un = static_cast<std::size_t>(n);
  std::vector<DenseMatrix<double>> basis;
  auto zero = [un] { return std::array<DenseMatrix<double>, 4>{DenseMatrix<double>(un, un), DenseMatrix<double>(un, un),
                                                               DenseMatrix<double>(un, un), DenseMatrix<double>(un, un)}; };
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t u = 1; u < 4; ++u) {
      auto parts = zero();
      parts[u](k, k) = 0.5;
      basis.push_back(embed_quaternion(parts));
    }
  const double f = 1.0 / (2.0 * std::sqrt(2.0));
  for (std::size_t p = 0; p < un; ++p)
    for (std::size_t q = p + 1; q < un; ++q)
      for (std::size_t u = 0; u < 4; ++u) {
        // u E_pq - conj(u) E_qp
        auto parts = zero();
        parts[u](p, q) = f;
        parts[u](q, p) = (u == 0) ? -f : f;
        basis.push_back(embed_quaternion(parts));
      }
  return std::make_shared<LieAlgebra>("sp(" + std::to_string(n) + ")", std::move(basis));
}

AlgebraPtr make_abelian(int k) {
  if (k < 0) throw DomainError("abelian algebra needs k >= 0");
  const auto uk = static_cast<std::size_t>(k);
  std::vector<DenseMatrix<double>> basis;
  const double f = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < uk; ++i) {
    DenseMatrix<double> m(2 * uk, 2 * uk);
    m(2 * i, 2 * i + 1) = -f;
    m(2 * i + 1, 2 * i) = f;
    basis.push_back(std::move(m));
  }
  return std::make_shared<LieAlgebra>("R^" + std::to_string(k), std::move(basis));
}

AlgebraPtr direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t na = a.matrix_size();
  const std::size_t nb = b.matrix_size();
  std::vector<DenseMatrix<double>> basis;
  for (const auto& x : a.basis()) {
    DenseMatrix<double> m(na + nb, na + nb);
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) m(r, c) = x(r, c);
    basis.push_back(std::move(m));
  }
  for (const auto& x : b.basis()) {
    DenseMatrix<double> m(na + nb, na + nb);
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t c = 0; c < nb; ++c) m(na + r, na + c) = x(r, c);
    basis.push_back(std::move(m));
  }
  return std::make_shared<LieAlgebra>(a.name() + "+" + b.name(), std::move(basis));
}

AlgebraPtr build_algebra(const AlgebraSpec& spec) {
  AlgebraPtr base;
  if (spec.family == "u") {
    base = make_u(spec.n);
  } else if (spec.family == "su") {
    base = make_su(spec.n);
  } else if (spec.family == "sp") {
    base = make_sp(spec.n);
  } else if (spec.family == "abelian") {
    return make_abelian(spec.n);
  } else if (spec.family == "f4" || spec.family == "so" || spec.family == "spin") {
    throw NotRealizedError("algebra family '" + spec.family + "' is catalog data only (see catalog cases 9 and 10)");
  } else {
    throw DomainError("unknown algebra family '" + spec.family + "'");
  }
  if (spec.abelian < 0) throw DomainError("abelian summand count must be >= 0");
  if (spec.abelian == 0) return base;
  return direct_sum(*base, *make_abelian(spec.abelian));
}

Vec<double> bracket(const LieAlgebra& g, std::span<const double> x, std::span<const double> y) {
  if (x.size() != g.dim() || y.size() != g.dim()) throw DimensionError("bracket: coordinate vectors have the wrong length");
  return g.bracket(x, y);
}

}  // namespace homfinsler::liealg
