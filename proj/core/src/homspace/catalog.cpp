#include "homfinsler/homspace/catalog.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace homfinsler::homspace {

namespace {

using liealg::LieAlgebra;

std::vector<CatalogCase> build_catalog() {
  std::vector<CatalogCase> c;
  c.push_back({1, "su(n+1)", "su(n)+R", "su(n)", "S^{2n+1} = SU(n+1)/SU(n)", true, true, "n >= 1", ""});
  c.push_back({2, "su(n+1)+R", "su(n)+R+R", "su(n)+R", "S^{2n+1} = U(n+1)/U(n) or SU(n+1)/SU(n)", true, true,
               "n >= 1; the R-line of h must leave su(n+1) and must not be central",
               "if the R-line of h lies in su(n+1) the space is finitely covered by (SU(n+1)/S(U(n)xU(1))) x R, "
               "whose flat factor forbids positive curvature"});
  c.push_back({3, "sp(n+1)", "sp(n)+R", "sp(n)", "S^{4n+3} = Sp(n+1)/Sp(n)", true, true, "n >= 1", ""});
  c.push_back({4, "sp(n+1)+R", "sp(n)+R+R", "sp(n)+R", "S^{4n+3} = Sp(n+1)U(1)/(Sp(n)xU(1)) or Sp(n+1)/Sp(n)", true, true,
               "n >= 1; the R-line of h must leave sp(n+1) and must not be central",
               "if the R-line of h lies in sp(n+1) the space is finitely covered by (Sp(n+1)/(Sp(n)U(1))) x R, "
               "whose flat factor forbids positive curvature"});
  c.push_back({5, "sp(n+1)+R", "sp(n)+sp(1)+R", "sp(n)+sp(1)", "universal cover HP^n x R", false, false, "none",
               "universal cover HP^n x R has a flat factor, so no positively curved invariant metric exists"});
  c.push_back({6, "su(3)", "R+R (Cartan)", "R", "S_{k,l} = SU(3)/U_{k,l}", true, true, "k l (k+l) != 0",
               "k l (k+l) = 0 gives SU(3)/U(1) with U(1) a maximal torus of a standard SU(2); every invariant "
               "non-Riemannian (alpha,beta)-metric with vanishing S-curvature there has a flag of zero curvature"});
  c.push_back({7, "su(3)+R", "R+R+R", "R+R", "U(3)/T^2, T^2 diagonal", true, true,
               "T^2 not inside SU(3); Lie(T^2) cap su(3) not the torus of a standard SU(2); T^2 not containing the center",
               "T^2 inside SU(3) gives a cover (SU(3)/T^2) x R with a flat factor; if Lie(T^2) cap su(3) is the torus "
               "of a standard SU(2) the fixed direction has the shape sqrt(-1) diag(a,a,b) and produces a zero flag"});
  c.push_back({8, "sp(3)+R", "sp(1)+sp(1)+sp(1)+R", "sp(1)+sp(1)+sp(1)", "cover (Sp(3)/Sp(1)^3) x R", false, false,
               "none", "finitely covered by (Sp(3)/(Sp(1)xSp(1)xSp(1))) x R, a flat factor rules out positive flag curvature"});
  c.push_back({9, "f4+R", "so(9)+R", "so(9)", "cover (F4/Spin(9)) x R", false, false, "none",
               "finitely covered by (F4/Spin(9)) x R, a flat factor rules out positive flag curvature; f4 is not realized"});
  c.push_back({10, "f4+R", "so(8)+R", "so(8)", "cover (F4/Spin(8)) x R", false, false, "none",
               "finitely covered by (F4/Spin(8)) x R, a flat factor rules out positive flag curvature; f4 is not realized"});
  return c;
}

DenseMatrix<double> pad(const DenseMatrix<double>& m, std::size_t size) {
  DenseMatrix<double> out(size, size);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

/// Coordinates in g of the basis of `small`, embedded in the upper-left corner.
std::vector<Vec<double>> embed_upper_left(const LieAlgebra& g, const LieAlgebra& small) {
  std::vector<Vec<double>> out;
  for (const auto& b : small.basis()) out.push_back(g.coordinates(pad(b, g.matrix_size())));
  return out;
}

Vec<double> unit(const LieAlgebra& g, Vec<double> x) {
  const double nx = std::sqrt(g.inner(x, x));
  for (double& c : x) c /= nx;
  return x;
}

DenseMatrix<double> column_block(std::size_t dm, std::size_t begin, std::size_t end) {
  DenseMatrix<double> b(dm, end - begin);
  for (std::size_t j = begin; j < end; ++j) b(j, j - begin) = 1.0;
  return b;
}

const std::vector<double>& torus_row(const CaseParams& p, std::size_t i, std::size_t len) {
  if (p.torus.size() <= i || p.torus[i].size() != len)
    throw ConfigError("case " + std::to_string(p.id) + ": torus parameter needs row " + std::to_string(i) + " of length " +
                      std::to_string(len));
  return p.torus[i];
}

CaseParams with_defaults(CaseParams p) {
  if (p.id == 2 && p.torus.empty()) p.torus = {{1.0, 0.0}};
  if (p.id == 4 && p.torus.empty()) p.torus = {{1.0, 1.0}};
  if (p.id == 7 && p.torus.empty()) p.torus = {{1.0, 1.0, -2.0}, {0.0, 1.0, 0.0}};
  return p;
}

// For case 7: the traceless direction of Lie(T^2), or nothing if T^2 lies in su(3).
Vec<double> su3_intersection(const std::vector<double>& g1, const std::vector<double>& g2) {
  const double t1 = g1[0] + g1[1] + g1[2];
  const double t2 = g2[0] + g2[1] + g2[2];
  Vec<double> t(3);
  for (int i = 0; i < 3; ++i) t[i] = t2 * g1[i] - t1 * g2[i];
  return t;
}

}  // namespace

const std::vector<CatalogCase>& catalog() {
  static const std::vector<CatalogCase> c = build_catalog();
  return c;
}

const CatalogCase& catalog_case(int id) {
  for (const auto& c : catalog())
    if (c.id == id) return c;
  throw ConfigError("unknown catalog case " + std::to_string(id) + " (valid ids are 1..10)");
}

CaseParams normalized(const CaseParams& p) {
  CaseParams q = with_defaults(p);
  if (q.id == 6) {
    if (q.k == 0 && q.l == 0) throw ConfigError("case 6: (k, l) = (0, 0) does not define a circle");
    const int g = std::gcd(q.k, q.l);
    q.k /= g;
    q.l /= g;
    if (q.k + q.l < 0 || (q.k + q.l == 0 && q.k < 0)) {
      q.k = -q.k;
      q.l = -q.l;
    }
  }
  return q;
}

Admissibility admissibility(const CaseParams& raw) {
  const auto& entry = catalog_case(raw.id);
  const CaseParams p = normalized(raw);
  if (!entry.admissible) return {false, entry.exclusion};
  switch (p.id) {
    case 1:
    case 3:
      if (p.n < 1) throw ConfigError("case " + std::to_string(p.id) + ": n must be >= 1");
      return {true, ""};
    case 2:
    case 4: {
      if (p.n < 1) throw ConfigError("case " + std::to_string(p.id) + ": n must be >= 1");
      const auto& w = torus_row(p, 0, 2);
      if (w[0] == 0.0 && w[1] == 0.0) throw ConfigError("case " + std::to_string(p.id) + ": the line weights are both zero");
      if (p.id == 2) {
        // sqrt(-1) diag(x,..,x,y): in su(n+1) iff n x + y = 0, central iff x = y
        if (std::abs(p.n * w[0] + w[1]) <= 1e-12 * (std::abs(w[0]) + std::abs(w[1]))) return {false, entry.exclusion};
        if (std::abs(w[0] - w[1]) <= 1e-12 * (std::abs(w[0]) + std::abs(w[1])))
          return {false, "the R-line of h is the center of u(n+1); h then contains an ideal and the pair reduces to case 1"};
      } else {
        // x sqrt(-1) E_{n+1,n+1} + y z
        if (w[1] == 0.0) return {false, entry.exclusion};
        if (w[0] == 0.0) return {false, "the R-line of h is the center; h then contains an ideal and the pair reduces to case 3"};
      }
      return {true, ""};
    }
    case 6:
      if (p.k * p.l * (p.k + p.l) == 0) return {false, entry.exclusion, true};
      return {true, ""};
    case 7: {
      const auto& g1 = torus_row(p, 0, 3);
      const auto& g2 = torus_row(p, 1, 3);
      const double cross0 = g1[1] * g2[2] - g1[2] * g2[1];
      const double cross1 = g1[2] * g2[0] - g1[0] * g2[2];
      const double cross2 = g1[0] * g2[1] - g1[1] * g2[0];
      const double scale = std::max(1.0, std::abs(cross0) + std::abs(cross1) + std::abs(cross2));
      if (std::abs(cross0) + std::abs(cross1) + std::abs(cross2) <= 1e-12 * scale)
        throw ConfigError("case 7: the torus generators are linearly dependent");
      // the center (1,1,1) lies in the span iff it is orthogonal to the normal
      if (std::abs(cross0 + cross1 + cross2) <= 1e-12 * scale)
        return {false, "T^2 contains the center of U(3); h then contains an ideal and the pair reduces to case 6"};
      const double t1 = g1[0] + g1[1] + g1[2];
      const double t2 = g2[0] + g2[1] + g2[2];
      if (std::abs(t1) <= 1e-12 && std::abs(t2) <= 1e-12) return {false, entry.exclusion};
      const auto t = su3_intersection(g1, g2);
      const double tmax = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
      for (double c : t)
        if (std::abs(c) <= 1e-12 * tmax) return {false, entry.exclusion, true};
      return {true, ""};
    }
    default:
      return {false, entry.exclusion};
  }
}

DenseMatrix<double> RealizedCase::inner(std::span<const double> scalars) const {
  if (scalars.size() != blocks.size())
    throw ConfigError("expected " + std::to_string(blocks.size()) + " block scalars, got " + std::to_string(scalars.size()));
  const std::size_t dm = space->dim();
  DenseMatrix<double> a(dm, dm);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!(scalars[b] > 0.0)) throw ConfigError("block scalars must be positive");
    const auto& u = blocks[b];
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < u.cols(); ++c) s += u(i, c) * u(j, c);
        a(i, j) += scalars[b] * s;
      }
  }
  return a;
}

RiemannianHomMetric RealizedCase::riemannian(std::span<const double> scalars) const {
  return RiemannianHomMetric(space, inner(scalars));
}

InvariantABMetric RealizedCase::ab_metric(std::span<const double> scalars, const PhiFunction& phi) const {
  return InvariantABMetric(space, inner(scalars), v, phi);
}

RealizedCase realize_case(const CaseParams& raw, bool allow_excluded) {
  const auto& entry = catalog_case(raw.id);
  if (!entry.constructible)
    throw NotRealizedError("case " + std::to_string(raw.id) + " is catalog data only: " + entry.exclusion);
  const auto adm = admissibility(raw);
  if (!adm.admissible && !allow_excluded) throw StructuralError("case " + std::to_string(raw.id) + " excluded: " + adm.reason);

  RealizedCase rc;
  rc.params = normalized(raw);
  const auto& p = rc.params;
  const auto un = static_cast<std::size_t>(p.n);
  liealg::AlgebraPtr g;
  std::vector<Vec<double>> hspan;
  std::string label;
  switch (p.id) {
    case 1:
      g = liealg::make_su(p.n + 1);
      if (p.n > 1) hspan = embed_upper_left(*g, *liealg::make_su(p.n));
      label = "SU(" + std::to_string(p.n + 1) + ")/SU(" + std::to_string(p.n) + ")";
      break;
    case 2: {
      g = liealg::make_u(p.n + 1);
      if (p.n > 1) hspan = embed_upper_left(*g, *liealg::make_su(p.n));
      const auto& w = p.torus[0];
      Vec<double> d(un + 1, w[0]);
      d[un] = w[1];
      hspan.push_back(liealg::diagonal_element(*g, d));
      label = "U(" + std::to_string(p.n + 1) + ")/(SU(" + std::to_string(p.n) + ")xU(1))";
      break;
    }
    case 3:
      g = liealg::make_sp(p.n + 1);
      hspan = embed_upper_left(*g, *liealg::make_sp(p.n));
      label = "Sp(" + std::to_string(p.n + 1) + ")/Sp(" + std::to_string(p.n) + ")";
      break;
    case 4: {
      auto sp = liealg::make_sp(p.n + 1);
      g = liealg::direct_sum(*sp, *liealg::make_abelian(1));
      hspan = embed_upper_left(*g, *liealg::make_sp(p.n));
      std::array<DenseMatrix<double>, 4> parts{DenseMatrix<double>(un + 1, un + 1), DenseMatrix<double>(un + 1, un + 1),
                                               DenseMatrix<double>(un + 1, un + 1), DenseMatrix<double>(un + 1, un + 1)};
      parts[1](un, un) = 1.0;
      const auto ei = unit(*g, g->coordinates(pad(liealg::embed_quaternion(parts), g->matrix_size())));
      Vec<double> z(g->dim(), 0.0);
      z[g->dim() - 1] = 1.0;
      const auto& w = p.torus[0];
      Vec<double> line(g->dim());
      for (std::size_t i = 0; i < g->dim(); ++i) line[i] = w[0] * ei[i] + w[1] * z[i];
      hspan.push_back(line);
      label = "Sp(" + std::to_string(p.n + 1) + ")xU(1)/(Sp(" + std::to_string(p.n) + ")xU(1))";
      break;
    }
    case 6: {
      g = liealg::make_su(3);
      const std::vector<double> d{double(p.k), double(p.l), double(-(p.k + p.l))};
      hspan.push_back(liealg::diagonal_element(*g, d));
      label = "S_{" + std::to_string(p.k) + "," + std::to_string(p.l) + "}";
      break;
    }
    case 7: {
      g = liealg::make_u(3);
      hspan.push_back(liealg::diagonal_element(*g, p.torus[0]));
      hspan.push_back(liealg::diagonal_element(*g, p.torus[1]));
      label = "U(3)/T^2";
      break;
    }
    default:
      throw NotRealizedError("case " + std::to_string(p.id) + " has no realization");
  }
  Subalgebra h = hspan.empty() ? Subalgebra::zero(g) : Subalgebra(g, hspan);
  rc.space = make_coset(g, std::move(h), label, p.id);
  const std::size_t dm = rc.space->dim();

  if (p.id == 6 || p.id == 7) {
    const auto rp = liealg::root_plane_decomposition(rc.space->split);
    rc.blocks.push_back(rp.m0);
    rc.block_labels.push_back("m0");
    for (const auto& plane : rp.planes) {
      rc.blocks.push_back(plane.basis);
      rc.block_labels.push_back(plane.label);
    }
    rc.v = rp.m0.col(0);
  } else {
    // m is ordered [fixed line, rest] for cases 1-2 and [i, (j,k), H^n] for 3-4
    if (p.id == 1 || p.id == 2) {
      rc.blocks = {column_block(dm, 0, 1), column_block(dm, 1, dm)};
      rc.block_labels = {"m0", "C^n"};
    } else {
      rc.blocks = {column_block(dm, 0, 1), column_block(dm, 1, 3), column_block(dm, 3, dm)};
      rc.block_labels = {"m0", "jk", "H^n"};
    }
    rc.v = Vec<double>(dm, 0.0);
    rc.v[0] = 1.0;
  }

  // the block decomposition must be Ad(H)-invariant for independent scalars and v must be fixed
  std::vector<double> probe(rc.blocks.size());
  for (std::size_t i = 0; i < probe.size(); ++i) probe[i] = 1.0 + 0.37 * double(i);
  const auto chk = liealg::ad_invariance_check(rc.inner(probe), rc.space->split);
  if (!chk.pass) throw StructuralError("case " + std::to_string(p.id) + ": block decomposition is not Ad(H)-invariant");
  const auto vg = rc.space->split.to_g(rc.v);
  for (std::size_t j = 0; j < rc.space->split.dim_h(); ++j)
    for (double c : g->bracket(rc.space->split.h_basis.col(j), vg))
      if (std::abs(c) > 1e-10) throw StructuralError("case " + std::to_string(p.id) + ": v is not Ad(H)-fixed");
  return rc;
}

}  // namespace homfinsler::homspace
