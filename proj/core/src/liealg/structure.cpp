#include "homfinsler/liealg/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace homfinsler::liealg {

namespace {

Vec<double> unit(std::size_t n, std::size_t i) {
  Vec<double> e(n, 0.0);
  e[i] = 1.0;
  return e;
}

DenseMatrix<double> columns(const std::vector<Vec<double>>& vecs, std::size_t rows) {
  DenseMatrix<double> m(rows, vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j) m.set_col(j, std::span<const double>(vecs[j]));
  return m;
}

std::size_t centralizer_dim(const StructureConstants& sc, std::span<const double> x) {
  return numkernel::nullspace(sc.ad<double>(x), 1e-9).cols();
}

int rank_of(const StructureConstants& sc, std::uint64_t seed) {
  const std::size_t n = sc.dim();
  if (n == 0) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-10, 10);
  std::size_t best = n;
  for (int draw = 0; draw < 3; ++draw) {
    Vec<double> x(n);
    for (auto& c : x) c = coef(rng);
    best = std::min(best, centralizer_dim(sc, x));
  }
  return static_cast<int>(best);
}

bool is_unitary_family(const LieAlgebra& g) { return g.name().rfind("u(", 0) == 0 || g.name().rfind("su(", 0) == 0; }

}  // namespace

Subalgebra::Subalgebra(AlgebraPtr parent, const std::vector<Vec<double>>& span, double tol) : parent_(std::move(parent)) {
  const std::size_t n = parent_->dim();
  for (const auto& v : span)
    if (v.size() != n) throw DimensionError("Subalgebra: spanning vector has the wrong length");
  basis_ = numkernel::orthonormalize_columns(columns(span, n), parent_->form());
  if (tol >= 0.0) {
    const double d = closure_defect();
    if (d > tol) throw StructuralError("Subalgebra: span is not closed under the bracket (defect " + std::to_string(d) + ")");
  }
}

Subalgebra Subalgebra::zero(AlgebraPtr parent) { return Subalgebra(std::move(parent), {}); }

Subalgebra Subalgebra::whole(AlgebraPtr parent) {
  std::vector<Vec<double>> span;
  for (std::size_t i = 0; i < parent->dim(); ++i) span.push_back(unit(parent->dim(), i));
  return Subalgebra(std::move(parent), span);
}

Subalgebra Subalgebra::from_columns(AlgebraPtr parent, const DenseMatrix<double>& cols, double tol) {
  std::vector<Vec<double>> span;
  for (std::size_t j = 0; j < cols.cols(); ++j) span.push_back(cols.col(j));
  return Subalgebra(std::move(parent), span, tol);
}

Vec<double> Subalgebra::project(std::span<const double> x) const {
  const std::size_t n = parent_->dim();
  Vec<double> p(n, 0.0);
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto b = basis_.col(j);
    const double c = parent_->inner(x, b);
    for (std::size_t i = 0; i < n; ++i) p[i] += c * b[i];
  }
  return p;
}

bool Subalgebra::contains(std::span<const double> x, double tol) const {
  const auto p = project(x);
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) r = std::max(r, std::abs(p[i] - x[i]));
  return r <= tol;
}

double Subalgebra::closure_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a + 1; b < dim(); ++b) {
      const auto z = parent_->bracket(basis_.col(a), basis_.col(b));
      const auto p = project(z);
      for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] - p[i]));
    }
  return worst;
}

StructureConstants Subalgebra::intrinsic_structure() const {
  std::vector<StructureConstants::Entry> entries;
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b) {
      if (a == b) continue;
      const auto z = parent_->bracket(basis_.col(a), basis_.col(b));
      for (std::size_t c = 0; c < dim(); ++c) {
        const double v = parent_->inner(z, basis_.col(c));
        if (std::abs(v) > 1e-13) entries.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c), v});
      }
    }
  return StructureConstants(dim(), std::move(entries));
}

Vec<double> ReductiveSplit::to_g(std::span<const double> xm) const { return numkernel::matvec<double, double>(m_basis, xm); }

Vec<double> ReductiveSplit::bracket_g(std::span<const double> xm, std::span<const double> ym) const {
  return g->bracket(to_g(xm), to_g(ym));
}

Vec<double> ReductiveSplit::bracket_m(std::span<const double> xm, std::span<const double> ym) const {
  const auto z = bracket_g(xm, ym);
  return m_coords<double>(z);
}

DenseMatrix<double> ReductiveSplit::ad_m(std::span<const double> z) const {
  const std::size_t dm = dim_m();
  DenseMatrix<double> a(dm, dm);
  for (std::size_t j = 0; j < dm; ++j) {
    const auto col = m_coords<double>(g->bracket(z, m_basis.col(j)));
    a.set_col(j, std::span<const double>(col));
  }
  return a;
}

DenseMatrix<double> ReductiveSplit::bi_invariant_on_m() const { return m_basis.transpose() * g->form() * m_basis; }

ReductiveSplit reductive_split(const AlgebraPtr& g, const Subalgebra& h, const DenseMatrix<double>& inner) {
  const std::size_t n = g->dim();
  if (inner.rows() != n || inner.cols() != n) throw DimensionError("reductive_split: form has the wrong size");
  if (!numkernel::is_positive_definite(inner)) throw InadmissibleNormError("reductive_split: form is not positive definite");
  if (h.parent().get() != g.get() && h.parent()->dim() != n) throw DimensionError("reductive_split: h lives in another algebra");
  ReductiveSplit s;
  s.g = g;
  s.h_basis = h.basis();
  const std::size_t dh = h.dim();

  // m = { x : inner(x, h_j) = 0 }: project every basis vector along the inner-orthogonal direction.
  const auto hq = numkernel::orthonormalize_columns(h.basis(), inner, 1e-12);
  std::vector<Vec<double>> projected;
  for (std::size_t i = 0; i < n; ++i) {
    auto e = unit(n, i);
    for (std::size_t j = 0; j < hq.cols(); ++j) {
      const auto c = hq.col(j);
      const double t = numkernel::bilinear<double>(inner, std::span<const double>(e), std::span<const double>(c));
      for (std::size_t r = 0; r < n; ++r) e[r] -= t * c[r];
    }
    projected.push_back(std::move(e));
  }
  s.m_basis = numkernel::orthonormalize_columns(columns(projected, n), g->form(), 1e-9);
  if (s.m_basis.cols() + dh != n) throw StructuralError("reductive_split: complement has the wrong dimension");

  DenseMatrix<double> full(n, n);
  for (std::size_t j = 0; j < dh; ++j) full.set_col(j, std::span<const double>(s.h_basis.col(j)));
  for (std::size_t j = 0; j < s.dim_m(); ++j) full.set_col(dh + j, std::span<const double>(s.m_basis.col(j)));
  const auto inv = numkernel::LuDecomposition<double>(full).inverse();
  s.pr_h = DenseMatrix<double>(dh, n);
  s.pr_m = DenseMatrix<double>(s.dim_m(), n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < dh; ++r) s.pr_h(r, c) = inv(r, c);
    for (std::size_t r = 0; r < s.dim_m(); ++r) s.pr_m(r, c) = inv(dh + r, c);
  }

  double worst = 0.0;
  for (std::size_t a = 0; a < dh; ++a)
    for (std::size_t b = 0; b < s.dim_m(); ++b) {
      const auto z = g->bracket(s.h_basis.col(a), s.m_basis.col(b));
      const auto zh = numkernel::matvec<double, double>(s.pr_h, std::span<const double>(z));
      for (double v : zh) worst = std::max(worst, std::abs(v));
    }
  if (worst > 1e-12)
    throw InvarianceError("reductive_split: [h, m] leaves m (defect " + std::to_string(worst) + "); the form is not Ad(H)-invariant");
  return s;
}

ReductiveSplit reductive_split(const AlgebraPtr& g, const Subalgebra& h) { return reductive_split(g, h, g->form()); }

int rank(const LieAlgebra& g, std::uint64_t seed) { return rank_of(g.structure(), seed); }

int rank(const Subalgebra& k, std::uint64_t seed) { return rank_of(k.intrinsic_structure(), seed); }

DenseMatrix<double> maximal_ideal_in(const LieAlgebra& g, const Subalgebra& k) {
  const std::size_t n = g.dim();
  DenseMatrix<double> cur = k.basis();
  for (int iter = 0; iter < static_cast<int>(n) + 2; ++iter) {
    const std::size_t d = cur.cols();
    if (d == 0) return cur;
    // x = cur c is kept iff (I - P) ad(e_i) cur c = 0 for every i.
    DenseMatrix<double> p(n, n);
    for (std::size_t j = 0; j < d; ++j) {
      const auto b = cur.col(j);
      const auto bb = numkernel::matvec<double, double>(g.form(), std::span<const double>(b));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) p(r, c) += b[r] * bb[c];
    }
    const auto q = DenseMatrix<double>::identity(n) - p;
    DenseMatrix<double> stacked(n * n, d);
    for (std::size_t i = 0; i < n; ++i) {
      const auto block = q * g.ad(unit(n, i)) * cur;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) stacked(i * n + r, c) = block(r, c);
    }
    const auto ns = numkernel::nullspace(stacked, 1e-10);
    if (ns.cols() == d) return cur;
    cur = numkernel::orthonormalize_columns(cur * ns, g.form());
  }
  return cur;
}

InvarianceCheck ad_invariance_check(const DenseMatrix<double>& inner_m, const ReductiveSplit& split, double tol) {
  InvarianceCheck r;
  const std::size_t dm = split.dim_m();
  if (inner_m.rows() != dm || inner_m.cols() != dm) throw DimensionError("ad_invariance_check: inner has the wrong size");
  for (std::size_t z = 0; z < split.dim_h(); ++z) {
    const auto a = split.ad_m(split.h_basis.col(z));
    const auto defect = inner_m * a + a.transpose() * inner_m;
    for (std::size_t x = 0; x < dm; ++x)
      for (std::size_t y = 0; y < dm; ++y)
        if (std::abs(defect(x, y)) > r.worst) {
          r.worst = std::abs(defect(x, y));
          r.z = z;
          r.x = y;
          r.y = x;
        }
  }
  r.pass = r.worst <= tol;
  return r;
}

Vec<double> diagonal_of(const LieAlgebra& g, std::span<const double> x) {
  if (!is_unitary_family(g)) throw DomainError("diagonal_of: algebra is not u(n) or su(n)");
  const auto m = g.element(x);
  Vec<double> d(m.rows() / 2);
  for (std::size_t p = 0; p < d.size(); ++p) d[p] = m(2 * p + 1, 2 * p);
  return d;
}

Vec<double> diagonal_element(const LieAlgebra& g, std::span<const double> d) {
  if (!is_unitary_family(g)) throw DomainError("diagonal_element: algebra is not u(n) or su(n)");
  const std::size_t n = g.matrix_size() / 2;
  if (d.size() != n) throw DimensionError("diagonal_element: wrong number of entries");
  DenseMatrix<double> re(n, n), im(n, n);
  for (std::size_t p = 0; p < n; ++p) im(p, p) = d[p];
  const auto m = embed_complex(re, im);
  auto x = g.coordinates(m);
  const auto back = g.element(x) - m;
  if (back.max_abs_entry() > 1e-10) throw DomainError("diagonal_element: matrix is not in the algebra (trace must vanish for su)");
  return x;
}

DenseMatrix<double> RootPlaneDecomp::projector(std::size_t i) const {
  const DenseMatrix<double>& b = (i == 0) ? m0 : planes.at(i - 1).basis;
  return b * b.transpose();
}

RootPlaneDecomp root_plane_decomposition(const ReductiveSplit& split) {
  const LieAlgebra& g = *split.g;
  if (g.name() != "su(3)" && g.name() != "u(3)") throw DomainError("root_plane_decomposition: only su(3) and u(3) are supported");
  for (std::size_t j = 0; j < split.dim_h(); ++j) {
    const auto m = g.element(split.h_basis.col(j));
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = 0; q < 3; ++q)
        if (p != q)
          for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
              if (std::abs(m(2 * p + r, 2 * q + c)) > 1e-12)
                throw DomainError("root_plane_decomposition: unsupported torus (h is not diagonal)");
  }
  RootPlaneDecomp out;
  const std::size_t dm = split.dim_m();
  std::vector<Vec<double>> plane_cols;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      DenseMatrix<double> re(3, 3), im(3, 3), re2(3, 3), im2(3, 3);
      re(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = 0.5;
      re(static_cast<std::size_t>(q), static_cast<std::size_t>(p)) = -0.5;
      im2(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = 0.5;
      im2(static_cast<std::size_t>(q), static_cast<std::size_t>(p)) = 0.5;
      RootPlane rp;
      rp.p = p;
      rp.q = q;
      rp.label = "e" + std::to_string(p + 1) + "-e" + std::to_string(q + 1);
      rp.basis = DenseMatrix<double>(dm, 2);
      const DenseMatrix<double> gens[2] = {embed_complex(re, im), embed_complex(re2, im2)};
      for (std::size_t c = 0; c < 2; ++c) {
        const auto xg = g.coordinates(gens[c]);
        const auto xm = split.m_coords<double>(xg);
        const auto back = split.to_g(xm);
        double res = 0.0;
        for (std::size_t i = 0; i < xg.size(); ++i) res = std::max(res, std::abs(back[i] - xg[i]));
        if (res > 1e-10) throw DomainError("root_plane_decomposition: root plane is not contained in m");
        rp.basis.set_col(c, std::span<const double>(xm));
        plane_cols.push_back(xm);
      }
      out.planes.push_back(std::move(rp));
    }
  DenseMatrix<double> pt(plane_cols.size(), dm);
  for (std::size_t r = 0; r < plane_cols.size(); ++r)
    for (std::size_t c = 0; c < dm; ++c) pt(r, c) = plane_cols[r][c];
  out.m0 = numkernel::nullspace(pt);
  // fix the orientation of a one-dimensional m0 so its first nonzero entry is positive
  for (std::size_t j = 0; j < out.m0.cols(); ++j) {
    auto c = out.m0.col(j);
    auto it = std::find_if(c.begin(), c.end(), [](double v) { return std::abs(v) > 1e-12; });
    if (it != c.end() && *it < 0)
      for (std::size_t r = 0; r < dm; ++r) out.m0(r, j) = -out.m0(r, j);
  }
  return out;
}

}  // namespace homfinsler::liealg
