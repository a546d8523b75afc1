#pragma once

#include <span>
#include <string>
#include <vector>

#include "homfinsler/homspace/coset.hpp"

namespace homfinsler::homspace {

/// Parameters selecting a concrete coset space from a catalog family.
///   case 1, 3: n
///   case 2, 4: n, torus = {{x, y}} (weights of the extra line of h)
///   case 6:    k, l
///   case 7:    torus = two diagonal generators of Lie(T^2) in u(3)
struct CaseParams {
  int id = 1;
  int n = 1;
  int k = 1;
  int l = 1;
  std::vector<std::vector<double>> torus;

  bool operator==(const CaseParams&) const = default;
};

struct CatalogCase {
  int id = 0;
  std::string g;
  std::string k;
  std::string h;
  std::string space;
  bool admissible = false;     // family contains admissible members
  bool constructible = false;  // a realization exists in this library
  std::string condition;       // admissibility condition on parameters
  std::string exclusion;       // why the family or subfamily is excluded
};

const std::vector<CatalogCase>& catalog();
const CatalogCase& catalog_case(int id);

/// Case 6: divides (k, l) by their gcd and makes k + l >= 0.
CaseParams normalized(const CaseParams& p);

struct Admissibility {
  bool admissible = false;
  std::string reason;
  /// Excluded only because the fixed direction produces a flag of zero curvature
  /// (case 6 with k l (k+l) = 0, case 7 with the diag(a,a,b) shape); such members
  /// can still be realized as negative controls.
  bool zero_flag = false;
};

/// Throws ConfigError for malformed parameters.
Admissibility admissibility(const CaseParams& p);

/// A realized catalog member with its block decomposition of m.
struct RealizedCase {
  CaseParams params;
  CosetPtr space;
  std::vector<DenseMatrix<double>> blocks;  // dm x d_i, B-orthonormal columns
  std::vector<std::string> block_labels;
  Vec<double> v;  // unit vector spanning the Ad(H)-fixed line used for beta

  std::size_t block_count() const { return blocks.size(); }
  /// sum_i c_i P_i with P_i the B-orthogonal projector on block i.
  DenseMatrix<double> inner(std::span<const double> scalars) const;
  RiemannianHomMetric riemannian(std::span<const double> scalars) const;
  InvariantABMetric ab_metric(std::span<const double> scalars, const PhiFunction& phi) const;
};

/// Throws StructuralError for excluded parameters unless allow_excluded,
/// NotRealizedError for catalog-only cases.
RealizedCase realize_case(const CaseParams& p, bool allow_excluded = false);

}  // namespace homfinsler::homspace
