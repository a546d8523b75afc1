#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet<T> stores the Taylor (monomial) coefficients of a function of `nvars`
// seed variables, truncated at total order `order` (<= 3). Coefficients may
// themselves be jets, which gives nested differentiation: Jet<Jet<double>>
// carries derivatives in two independent variable sets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "homfinsler/numkernel/errors.hpp"

namespace homfinsler::numkernel {

inline constexpr int kMaxJetOrder = 3;

/// Monomial bookkeeping shared by all jets with the same (nvars, order).
/// Layouts are interned for the lifetime of the process.
class JetLayout {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  static const JetLayout* get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return monomials_.size(); }

  /// Variables of monomial `idx` in nondecreasing order; unused slots are -1.
  const std::array<int, kMaxJetOrder>& monomial(std::size_t idx) const { return monomials_[idx]; }
  int degree(std::size_t idx) const { return degrees_[idx]; }

  /// Index of the monomial with the given variables (any order), or -1 when
  /// its degree exceeds the truncation order.
  int index_of(std::span<const int> vars) const;
  int index1(int i) const { return 1 + i; }
  int index2(int i, int j) const { return idx2_[static_cast<std::size_t>(i * nvars_ + j)]; }

  const std::vector<Product>& products() const { return products_; }
  /// Products with lhs == a occupy [lhs_begin(a), lhs_begin(a + 1)).
  std::size_t lhs_begin(std::size_t a) const { return lhs_offsets_[a]; }

  /// For each monomial index and variable v: (index of monomial / v, multiplicity of v)
  /// or (-1, 0) when v does not divide it.
  std::pair<int, int> divide(std::size_t idx, int v) const;

  std::string describe(std::size_t idx) const;

 private:
  JetLayout(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<std::array<int, kMaxJetOrder>> monomials_;
  std::vector<int> degrees_;
  std::vector<int> idx2_;
  std::vector<int> idx3_;
  std::vector<Product> products_;
  std::vector<std::size_t> lhs_offsets_;
};

template <typename T>
class Jet;

template <typename T>
struct is_jet : std::false_type {};
template <typename T>
struct is_jet<Jet<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_jet_v = is_jet<T>::value;

/// Scalar types the numeric routines are generic over.
template <typename T>
concept Scalar = std::is_same_v<T, double> || is_jet_v<T>;

inline double value_of(double x) { return x; }

/// Innermost constant term.
template <typename T>
double value_of(const Jet<T>& x);

/// Largest absolute coefficient over the whole nesting.
inline double max_abs(double x) { return std::abs(x); }
template <typename T>
double max_abs(const Jet<T>& x);

inline bool all_finite(double x) { return std::isfinite(x); }

/// acc += a * b without temporaries.
inline void mul_add(double& acc, double a, double b) { acc += a * b; }

inline bool is_zero(double x) { return x == 0.0; }

/// acc += c * x without temporaries.
inline void axpy(double& acc, double c, double x) { acc += c * x; }
template <typename T>
void axpy(Jet<T>& acc, double c, const Jet<T>& x);
template <typename T>
bool is_zero(const Jet<T>& x);
template <typename T>
void mul_add(Jet<T>& acc, const Jet<T>& a, const Jet<T>& b);

template <typename T>
class Jet {
 public:
  using value_type = T;

  /// Constant zero without a layout; adopts the layout of the first operand it meets.
  Jet() : coeffs_(1, T{}) {}
  Jet(const T& c) : coeffs_(1, c) {}  // NOLINT(google-explicit-constructor)
  template <typename S>
    requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
  Jet(S c) : coeffs_(1, T(static_cast<double>(c))) {}  // NOLINT(google-explicit-constructor)

  Jet(const JetLayout* layout, const T& constant) : layout_(layout), coeffs_(layout->size(), T{}) {
    coeffs_[0] = constant;
  }

  /// Seed variable `var` at `value` with unit first-order coefficient.
  static Jet variable(const JetLayout* layout, int var, const T& value) {
    Jet j(layout, value);
    j.coeffs_[static_cast<std::size_t>(layout->index1(var))] = T(1.0);
    return j;
  }

  const JetLayout* layout() const { return layout_; }
  bool is_constant() const { return layout_ == nullptr; }
  std::size_t size() const { return coeffs_.size(); }

  const T& value() const { return coeffs_[0]; }
  T& value() { return coeffs_[0]; }

  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }

  /// Taylor coefficient of the monomial (zero for a constant jet).
  T coeff(std::span<const int> vars) const {
    if (vars.empty()) return coeffs_[0];
    if (!layout_) return T{};
    const int idx = layout_->index_of(vars);
    return idx < 0 ? T{} : coeffs_[static_cast<std::size_t>(idx)];
  }

  /// Partial derivative d^|vars| f / dx_vars, i.e. coefficient times multiplicity factorials.
  T partial(std::initializer_list<int> vars) const {
    std::vector<int> v(vars);
    return partial(std::span<const int>(v));
  }
  T partial(std::span<const int> vars) const {
    std::array<int, kMaxJetOrder> sorted{};
    double factor = 1.0;
    const std::size_t k = vars.size();
    for (std::size_t i = 0; i < k; ++i) sorted[i] = vars[i];
    std::sort(sorted.begin(), sorted.begin() + static_cast<long>(k));
    int run = 1;
    for (std::size_t i = 1; i < k; ++i) {
      run = (sorted[i] == sorted[i - 1]) ? run + 1 : 1;
      factor *= run;
    }
    return coeff(vars) * factor;
  }

  /// Promote a constant jet to `layout` (no-op when it already has one).
  void adopt(const JetLayout* layout) {
    if (layout_ || !layout) return;
    T c = coeffs_[0];
    coeffs_.assign(layout->size(), T{});
    coeffs_[0] = std::move(c);
    layout_ = layout;
  }

  Jet& operator+=(const Jet& o) {
    if (o.layout_) adopt(o.layout_);
    if (!o.layout_) {
      coeffs_[0] += o.coeffs_[0];
    } else {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    }
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    if (o.layout_) adopt(o.layout_);
    if (!o.layout_) {
      coeffs_[0] -= o.coeffs_[0];
    } else {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(double s) { return *this *= (1.0 / s); }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    if (!a.layout_ && !b.layout_) return Jet(a.coeffs_[0] * b.coeffs_[0]);
    if (!a.layout_) return scale(b, a.coeffs_[0]);
    if (!b.layout_) return scale(a, b.coeffs_[0]);
    Jet r(a.layout_, T{});
    mul_add(r, a, b);
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

  /// d/dx_var, truncated at order - 1 (same variable count).
  Jet derivative(int var) const {
    if (!layout_) return Jet();
    if (layout_->order() == 0) return Jet();
    const JetLayout* lower = JetLayout::get(layout_->nvars(), layout_->order() - 1);
    Jet r(lower, T{});
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      auto [target, mult] = layout_->divide(i, var);
      if (target < 0) continue;
      r.coeffs_[static_cast<std::size_t>(target)] += coeffs_[i] * static_cast<double>(mult);
    }
    return r;
  }

  /// Throws JetPropagationError naming the first non-finite coefficient.
  void validate(const std::string& context = {}) const;

 private:
  template <typename U>
  friend void mul_add(Jet<U>& acc, const Jet<U>& a, const Jet<U>& b);
  template <typename U>
  friend Jet<U> reciprocal(const Jet<U>& x);

  static Jet scale(const Jet& a, const T& s) {
    Jet r = a;
    for (auto& c : r.coeffs_) c = c * s;
    return r;
  }

  const JetLayout* layout_ = nullptr;
  std::vector<T> coeffs_;
};

template <typename T>
double value_of(const Jet<T>& x) {
  return value_of(x.value());
}

template <typename T>
double max_abs(const Jet<T>& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, max_abs(x[i]));
  return m;
}

template <typename T>
bool all_finite(const Jet<T>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!all_finite(x[i])) return false;
  return true;
}

template <typename T>
void Jet<T>::validate(const std::string& context) const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (all_finite(coeffs_[i])) continue;
    std::ostringstream os;
    os << "non-finite jet coefficient at multi-index "
       << (layout_ ? layout_->describe(i) : std::string("()"));
    if (!context.empty()) os << " in " << context;
    throw JetPropagationError(os.str());
  }
}

template <typename T>
void mul_add(Jet<T>& acc, const Jet<T>& a, const Jet<T>& b) {
  if (!a.layout_ && !b.layout_) {
    mul_add(acc.coeffs_[0], a.coeffs_[0], b.coeffs_[0]);
    return;
  }
  const JetLayout* layout = a.layout_ ? a.layout_ : b.layout_;
  acc.adopt(layout);
  if (!a.layout_) {
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) mul_add(acc.coeffs_[i], a.coeffs_[0], b.coeffs_[i]);
    return;
  }
  if (!b.layout_) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) mul_add(acc.coeffs_[i], a.coeffs_[i], b.coeffs_[0]);
    return;
  }
  const auto& prods = layout->products();
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (is_zero(a.coeffs_[i])) continue;
    const std::size_t end = layout->lhs_begin(i + 1);
    for (std::size_t k = layout->lhs_begin(i); k < end; ++k) mul_add(acc.coeffs_[prods[k].out], a.coeffs_[i], b.coeffs_[prods[k].rhs]);
  }
}

template <typename T>
void axpy(Jet<T>& acc, double c, const Jet<T>& x) {
  if (x.layout()) acc.adopt(x.layout());
  if (!x.layout()) {
    axpy(acc[0], c, x[0]);
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) axpy(acc[i], c, x[i]);
}

template <typename T>
bool is_zero(const Jet<T>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elementary functions. Each is composed as f(u0 + d) = sum_k f_k d^k with the
// Taylor coefficients f_k evaluated in the coefficient type, which makes the
// functions work at every nesting level.
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
Jet<T> compose(const Jet<T>& u, const std::array<T, kMaxJetOrder + 1>& f) {
  if (u.is_constant()) return Jet<T>(f[0]);
  Jet<T> delta = u;
  delta.value() = T{};
  const int order = u.layout()->order();
  Jet<T> result(u.layout(), f[0]);
  Jet<T> power = delta;
  for (int k = 1; k <= order; ++k) {
    if (k > 1) power = power * delta;
    for (std::size_t i = 0; i < result.size(); ++i) mul_add(result[i], f[static_cast<std::size_t>(k)], power[i]);
  }
  return result;
}

}  // namespace detail

template <typename T>
Jet<T> reciprocal(const Jet<T>& x) {
  using std::abs;
  const T& x0 = x.value();
  if (value_of(x0) == 0.0) throw SingularityError("jet reciprocal of zero");
  T q = T(1.0) / x0;
  std::array<T, kMaxJetOrder + 1> f{q, -(q * q), q * q * q, -(q * q * q * q)};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> sqrt(const Jet<T>& x) {
  using std::sqrt;
  const T& x0 = x.value();
  T s = sqrt(x0);
  T q = T(1.0) / x0;
  // binom(1/2, k)
  std::array<T, kMaxJetOrder + 1> f{s, s * q * 0.5, s * q * q * (-0.125), s * q * q * q * 0.0625};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  T e = exp(x.value());
  std::array<T, kMaxJetOrder + 1> f{e, e, e * 0.5, e * (1.0 / 6.0)};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> log(const Jet<T>& x) {
  using std::log;
  const T& x0 = x.value();
  T q = T(1.0) / x0;
  std::array<T, kMaxJetOrder + 1> f{log(x0), q, q * q * (-0.5), q * q * q * (1.0 / 3.0)};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> sin(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  T s = sin(x.value());
  T c = cos(x.value());
  std::array<T, kMaxJetOrder + 1> f{s, c, s * (-0.5), c * (-1.0 / 6.0)};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> cos(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  T s = sin(x.value());
  T c = cos(x.value());
  std::array<T, kMaxJetOrder + 1> f{c, -s, c * (-0.5), s * (1.0 / 6.0)};
  return detail::compose(x, f);
}

/// x^p for real p (x > 0 unless p is a nonnegative integer).
template <typename T>
Jet<T> pow(const Jet<T>& x, double p) {
  using std::pow;
  const T& x0 = x.value();
  T base = pow(x0, p);
  T q = T(1.0) / x0;
  const double c1 = p;
  const double c2 = p * (p - 1.0) / 2.0;
  const double c3 = p * (p - 1.0) * (p - 2.0) / 6.0;
  std::array<T, kMaxJetOrder + 1> f{base, base * q * c1, base * q * q * c2, base * q * q * q * c3};
  return detail::compose(x, f);
}

template <typename T>
Jet<T> operator+(Jet<T> a, double s) {
  a.value() += T(s);
  return a;
}
template <typename T>
Jet<T> operator+(double s, Jet<T> a) {
  a.value() += T(s);
  return a;
}
template <typename T>
Jet<T> operator-(Jet<T> a, double s) {
  a.value() -= T(s);
  return a;
}
template <typename T>
Jet<T> operator-(double s, const Jet<T>& a) {
  Jet<T> r = -a;
  r.value() += T(s);
  return r;
}

// Mixed nesting: Jet<Jet<double>> with an inner-jet operand.
template <typename T>
  requires is_jet_v<T>
Jet<T> operator*(const Jet<T>& a, const T& s) {
  return a * Jet<T>(s);
}
template <typename T>
  requires is_jet_v<T>
Jet<T> operator*(const T& s, const Jet<T>& a) {
  return a * Jet<T>(s);
}

/// Evaluate `f` at `point` with every coordinate seeded: returns the jet of f
/// in `point.size()` variables to the requested order (<= 3).
template <typename F>
Jet<double> jet_eval(F&& f, std::span<const double> point, int order = 2) {
  if (point.empty()) throw DomainError("jet_eval: empty seed set");
  if (order < 0 || order > kMaxJetOrder) throw DomainError("jet_eval: order must be in [0, 3]");
  const JetLayout* layout = JetLayout::get(static_cast<int>(point.size()), order);
  std::vector<Jet<double>> args;
  args.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i)
    args.push_back(Jet<double>::variable(layout, static_cast<int>(i), point[i]));
  Jet<double> r = f(std::span<const Jet<double>>(args));
  r.adopt(layout);
  r.validate("jet_eval");
  return r;
}

}  // namespace homfinsler::numkernel
