#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "homfinsler/homspace/coset.hpp"

namespace homfinsler::homspace {

struct KSubalgebra {
  Subalgebra k;              // h + R v
  DenseMatrix<double> p;     // dm x (dm-1), a-orthonormal basis of the a-complement of v in m
  double closure_defect = 0.0;
  double p_invariance_defect = 0.0;  // max |<[z,x]_m, v>| for z in k, x in p
  double p_inner_defect = 0.0;       // max |<[z,x]_m, y> + <x, [z,y]_m>| for z in k, x, y in p
  bool pass = false;
};

/// Throws PreconditionError if KVCL fails, StructuralError if h + R v is not closed.
KSubalgebra k_subalgebra(const InvariantABMetric& metric, double tol = 1e-10);

/// min_t F(w + t v) for w in m. Throws DomainError for w = 0.
double submersion_norm(const InvariantABMetric& metric, std::span<const double> w);

struct SubmersionRatio {
  double mean = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
  bool pass = false;  // variance < 1e-8
};

/// Ratio F'(w) / alpha(w) over random w in p.
SubmersionRatio submersion_ratio(const InvariantABMetric& metric, std::size_t samples = 100, std::uint64_t seed = 5);

struct StructuralReport {
  int rank_g = 0;
  int rank_h = 0;
  bool rank_ok = false;  // rank g <= rank h + 1
  bool closure_ok = false;
  std::string closure_message;
  std::size_t ideal_dim = 0;
  bool ideal_ok = false;  // maximal ideal of g inside h + R v has dim <= 1
  bool kvcl_ok = false;
  SubmersionRatio ratio;
  bool pass = false;
  std::string first_failure;
};

/// Rank inequality, closure of h + R v, ideal dimension, submersion ratio.
StructuralReport structural_checks(const InvariantABMetric& metric, std::size_t ratio_samples = 100, std::uint64_t seed = 5);

}  // namespace homfinsler::homspace
