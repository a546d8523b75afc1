#pragma once

// Jet passes shared by the spray, Riemann and S-curvature code.

#include "homfinsler/chartcurv/chart.hpp"
#include "homfinsler/numkernel/jet.hpp"

namespace homfinsler::chartcurv::detail {

using J1 = numkernel::Jet<double>;
using J2 = numkernel::Jet<J1>;

template <typename S>
struct SprayJets {
  DenseMatrix<S> g;
  Vec<S> G;
};

/// Given F^2 as a jet over (p, q) = (x - x0, y - y0) with coefficients S, and y as S values,
/// returns g = 1/2 F^2_yy and G = 1/4 g^{-1} (F^2_xy y - F^2_x).
template <typename S>
SprayJets<S> spray_from_f2(const numkernel::Jet<S>& f2, const Vec<S>& y, std::size_t n) {
  SprayJets<S> out;
  out.g = DenseMatrix<S>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      S v = f2.partial({int(n + i), int(n + j)}) * 0.5;
      out.g(i, j) = v;
      out.g(j, i) = v;
    }
  Vec<S> rhs(n);
  for (std::size_t l = 0; l < n; ++l) {
    S acc = -f2.partial({int(l)});
    for (std::size_t k = 0; k < n; ++k) acc += f2.partial({int(k), int(n + l)}) * y[k];
    rhs[l] = acc;
  }
  out.G = numkernel::LuDecomposition<S>(out.g).solve(std::span<const S>(rhs));
  for (auto& c : out.G) c = c * 0.25;
  return out;
}

/// Pass over (t, eta): x = x0 + t y0, y = y0 + eta, coefficients order 2.
SprayJets<J1> spray_pass_a(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y);

/// Pass over xi: x = x0 + xi, y = y0, coefficients order 1.
SprayJets<J1> spray_pass_b(const ChartContext& chart, const ABNormData& norm, std::span<const double> x, std::span<const double> y);

}  // namespace homfinsler::chartcurv::detail
