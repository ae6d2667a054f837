#pragma once

// Power-sum polynomials phi_m(x) = sum_i x_i^m on the ranked simplex, the
// generator A of the unlabeled two-parameter diffusion acting on them, and
// exact PD(alpha, theta) expectations via the partition correlation
// moments.
//
// phi_1 is reduced to the constant 1 wherever it appears. PD(alpha, theta)
// charges only the simplex where sum x_i = 1, and every quantity computed
// here is a PD-integral, so the reduction is exact for all of them.
//
// The algebra is templated on the coefficient type: double for ordinary use,
// an exact rational type to pin the deterministic identities to zero error.

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pdlab/core.hpp"

namespace pdlab {

/// Sorted (descending) multiset of power-sum indices, each >= 2. The empty
/// monomial is the constant 1.
using Monomial = std::vector<int>;

/// Drops 1-factors, sorts descending; rejects indices < 1.
Monomial normalize_monomial(std::vector<int> factors);
int monomial_degree(const Monomial& m);
std::string monomial_to_string(const Monomial& m);

/// All monomials of total degree <= max_degree, degree-major and
/// reverse-lexicographic within each degree; starts with the constant.
std::vector<Monomial> monomials_up_to_degree(int max_degree);

/// Largest number of factors for which set-partition expansions are run
/// (Bell(10) = 115975 terms).
inline constexpr int kMaxExpectationFactors = 10;

template <class Scalar>
class BasicPowerSumPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  BasicPowerSumPoly() = default;

  static BasicPowerSumPoly constant(const Scalar& c) {
    BasicPowerSumPoly p;
    p.add_term({}, c);
    return p;
  }
  static BasicPowerSumPoly phi(int m) { return monomial({m}); }
  static BasicPowerSumPoly monomial(std::vector<int> factors, const Scalar& c = Scalar(1)) {
    BasicPowerSumPoly p;
    p.add_term(std::move(factors), c);
    return p;
  }

  void add_term(std::vector<int> factors, const Scalar& c) {
    add_normalized(normalize_monomial(std::move(factors)), c);
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Largest monomial degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  BasicPowerSumPoly homogeneous_component(int d) const {
    BasicPowerSumPoly out;
    for (const auto& [m, c] : terms_)
      if (monomial_degree(m) == d) out.terms_.emplace(m, c);
    return out;
  }

  BasicPowerSumPoly& operator+=(const BasicPowerSumPoly& o) {
    for (const auto& [m, c] : o.terms_) add_normalized(m, c);
    return *this;
  }
  BasicPowerSumPoly& operator-=(const BasicPowerSumPoly& o) {
    for (const auto& [m, c] : o.terms_) add_normalized(m, -c);
    return *this;
  }
  BasicPowerSumPoly& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPowerSumPoly operator+(BasicPowerSumPoly a, const BasicPowerSumPoly& b) { return a += b; }
  friend BasicPowerSumPoly operator-(BasicPowerSumPoly a, const BasicPowerSumPoly& b) { return a -= b; }
  friend BasicPowerSumPoly operator*(BasicPowerSumPoly a, const Scalar& s) { return a *= s; }
  friend BasicPowerSumPoly operator*(const Scalar& s, BasicPowerSumPoly a) { return a *= s; }
  friend BasicPowerSumPoly operator*(const BasicPowerSumPoly& a, const BasicPowerSumPoly& b) {
    BasicPowerSumPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma);
        m.insert(m.end(), mb.begin(), mb.end());
        std::sort(m.begin(), m.end(), std::greater<>());
        out.add_normalized(std::move(m), ca * cb);
      }
    return out;
  }
  friend bool operator==(const BasicPowerSumPoly&, const BasicPowerSumPoly&) = default;

 private:
  void add_normalized(Monomial m, const Scalar& c) {
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Terms terms_;
};

using PowerSumPoly = BasicPowerSumPoly<double>;

std::string to_string(const PowerSumPoly& p);

template <class Scalar>
BasicPowerSumPoly<Scalar> poly_mul(const BasicPowerSumPoly<Scalar>& u,
                                   const BasicPowerSumPoly<Scalar>& v) {
  return u * v;
}

// ---------------------------------------------------------------------------
// Generator

/// A applied to one monomial phi_{m_1} ... phi_{m_k}:
///   sum_i [C(m_i,2) - m_i alpha/2] phi_{m_i - 1} prod_{j != i} phi_{m_j}
/// + sum_{i<j} m_i m_j phi_{m_i + m_j - 1} prod_{l != i,j} phi_{m_l}
/// - m (m - 1 + theta)/2 prod_i phi_{m_i},      m = sum_i m_i.
template <class Scalar>
void add_generator_image(const Scalar& alpha, const Scalar& theta, const Monomial& mono,
                         const Scalar& coeff, BasicPowerSumPoly<Scalar>& out) {
  const std::size_t k = mono.size();
  if (k == 0) return;  // A1 = 0
  int deg = 0;
  for (int mi : mono) deg += mi;
  std::vector<int> buf;
  for (std::size_t i = 0; i < k; ++i) {
    const Scalar mi(mono[i]);
    const Scalar w = mi * (mi - Scalar(1)) / Scalar(2) - mi * alpha / Scalar(2);
    buf.assign(mono.begin(), mono.end());
    buf[i] -= 1;
    out.add_term(buf, coeff * w);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      buf.clear();
      for (std::size_t l = 0; l < k; ++l)
        if (l != i && l != j) buf.push_back(mono[l]);
      buf.push_back(mono[i] + mono[j] - 1);
      out.add_term(buf, coeff * Scalar(mono[i] * mono[j]));
    }
  const Scalar m(deg);
  out.add_term(std::vector<int>(mono.begin(), mono.end()),
               -coeff * m * (m - Scalar(1) + theta) / Scalar(2));
}

template <class Scalar>
BasicPowerSumPoly<Scalar> generator_apply(const Scalar& alpha, const Scalar& theta,
                                          const BasicPowerSumPoly<Scalar>& u) {
  BasicPowerSumPoly<Scalar> out;
  for (const auto& [mono, c] : u.terms()) add_generator_image(alpha, theta, mono, c, out);
  return out;
}

// ---------------------------------------------------------------------------
// Expectations

/// E[ sum over distinct indices i_1..i_l of prod_b x_{i_b}^{n_b} ] under
/// PD(alpha, theta):
///   prod_{i=1}^{l-1} (theta + i alpha) * prod_b (1-alpha)_{n_b - 1} / (theta+1)_{n-1}.
template <class Scalar>
Scalar correlation_moment(const Scalar& alpha, const Scalar& theta, std::span<const int> block_sums) {
  Scalar num(1);
  int n = 0;
  for (std::size_t i = 1; i < block_sums.size(); ++i) num *= theta + Scalar(static_cast<int>(i)) * alpha;
  for (int nb : block_sums) {
    n += nb;
    for (int j = 1; j < nb; ++j) num *= Scalar(j) - alpha;
  }
  Scalar den(1);
  for (int j = 1; j < n; ++j) den *= theta + Scalar(j);
  return num / den;
}

/// E[phi_{m_1} ... phi_{m_k}] by expanding the product over set partitions
/// of the k factors into distinct-index correlation moments.
template <class Scalar>
Scalar monomial_expectation(const Scalar& alpha, const Scalar& theta, const Monomial& mono) {
  const std::size_t k = mono.size();
  if (k == 0) return Scalar(1);
  if (k > static_cast<std::size_t>(kMaxExpectationFactors))
    throw CapacityError("pd_expectation: more than " + std::to_string(kMaxExpectationFactors) +
                        " factors in a monomial");
  // Restricted growth strings a[0..k-1]: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(k, 0), maxes(k, 0);
  std::vector<int> sums;
  Scalar total(0);
  for (;;) {
    const int blocks = 1 + *std::max_element(maxes.begin(), maxes.end());
    sums.assign(static_cast<std::size_t>(blocks), 0);
    for (std::size_t i = 0; i < k; ++i) sums[a[i]] += mono[i];
    total += correlation_moment(alpha, theta, std::span<const int>(sums));
    // next string
    std::size_t i = k - 1;
    while (i > 0 && a[i] == maxes[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    maxes[i] = std::max(maxes[i - 1], a[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      a[j] = 0;
      maxes[j] = maxes[i];
    }
  }
  return total;
}

template <class Scalar>
Scalar pd_expectation(const Scalar& alpha, const Scalar& theta, const BasicPowerSumPoly<Scalar>& u) {
  Scalar s(0);
  for (const auto& [mono, c] : u.terms()) s += c * monomial_expectation(alpha, theta, mono);
  return s;
}

// ---------------------------------------------------------------------------
// Dirichlet form

/// Carre du champ <grad u, a(x) grad v> with a_ij = x_i (delta_ij - x_j):
/// on generators Gamma(phi_a, phi_b) = a b (phi_{a+b-1} - phi_a phi_b),
/// extended by the product rule in each argument.
template <class Scalar>
BasicPowerSumPoly<Scalar> carre_du_champ(const BasicPowerSumPoly<Scalar>& u,
                                         const BasicPowerSumPoly<Scalar>& v) {
  BasicPowerSumPoly<Scalar> out;
  std::vector<int> buf;
  for (const auto& [mu, cu] : u.terms())
    for (const auto& [mv, cv] : v.terms())
      for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < mv.size(); ++j) {
          const int a = mu[i];
          const int b = mv[j];
          buf.clear();
          for (std::size_t l = 0; l < mu.size(); ++l)
            if (l != i) buf.push_back(mu[l]);
          for (std::size_t l = 0; l < mv.size(); ++l)
            if (l != j) buf.push_back(mv[l]);
          const Scalar w = cu * cv * Scalar(a * b);
          buf.push_back(a + b - 1);
          out.add_term(buf, w);
          buf.back() = a;
          buf.push_back(b);
          out.add_term(buf, -w);
        }
  return out;
}

/// -E[(Au) v]
template <class Scalar>
Scalar dirichlet_form(const Scalar& alpha, const Scalar& theta, const BasicPowerSumPoly<Scalar>& u,
                      const BasicPowerSumPoly<Scalar>& v) {
  return -pd_expectation(alpha, theta, generator_apply(alpha, theta, u) * v);
}

/// (1/2) E[Gamma(u, v)], the gradient-form route.
template <class Scalar>
Scalar dirichlet_form_carre_du_champ(const Scalar& alpha, const Scalar& theta,
                                     const BasicPowerSumPoly<Scalar>& u,
                                     const BasicPowerSumPoly<Scalar>& v) {
  return pd_expectation(alpha, theta, carre_du_champ(u, v)) / Scalar(2);
}

/// E[Au]; vanishes for every u under PD(alpha, theta).
template <class Scalar>
Scalar zero_mean_check(const Scalar& alpha, const Scalar& theta, const BasicPowerSumPoly<Scalar>& u) {
  return pd_expectation(alpha, theta, generator_apply(alpha, theta, u));
}

// PdParams conveniences.
inline PowerSumPoly generator_apply(const PdParams& p, const PowerSumPoly& u) {
  return generator_apply(p.alpha(), p.theta(), u);
}
inline double pd_expectation(const PdParams& p, const PowerSumPoly& u) {
  return pd_expectation(p.alpha(), p.theta(), u);
}
inline double dirichlet_form(const PdParams& p, const PowerSumPoly& u, const PowerSumPoly& v) {
  return dirichlet_form(p.alpha(), p.theta(), u, v);
}
inline double dirichlet_form_carre_du_champ(const PdParams& p, const PowerSumPoly& u,
                                            const PowerSumPoly& v) {
  return dirichlet_form_carre_du_champ(p.alpha(), p.theta(), u, v);
}
inline double zero_mean_check(const PdParams& p, const PowerSumPoly& u) {
  return zero_mean_check(p.alpha(), p.theta(), u);
}

// ---------------------------------------------------------------------------
// Spectrum

inline constexpr int kMaxSpectrumDegree = 20;

/// Matrix of A on the monomial basis of degree <= max_degree. Column c holds
/// the coordinates of A(basis[c]); with the degree-major ordering the matrix
/// is upper triangular.
struct GeneratorMatrix {
  std::vector<Monomial> basis;
  std::vector<double> entries;  // row-major, basis.size()^2
  double at(std::size_t row, std::size_t col) const { return entries[row * basis.size() + col]; }
};

GeneratorMatrix generator_matrix(const PdParams& params, int max_degree);

struct SpectralLevel {
  int degree;          // 0 for the constant eigenvalue
  double eigenvalue;   // 0 or -m(m-1+theta)/2
  int multiplicity;
};

/// Eigenvalues of A on polynomials of degree <= max_degree, read off the
/// diagonal of the triangular generator matrix.
std::vector<SpectralLevel> spectrum(const PdParams& params, int max_degree);

/// lambda_m = m (m - 1 + theta) / 2
double eigenvalue_magnitude(const PdParams& params, int m);

// ---------------------------------------------------------------------------
// Moment dynamics

/// E[phi_m(X_t)] for the unlabeled diffusion started at a deterministic x0,
/// from the triangular system d/dt E phi_j = a_j E phi_{j-1} - lambda_j E phi_j
/// (a_j = j (j - 1 - alpha)/2, phi_1 = 1), solved in closed form.
/// phi_init holds phi_2(x0), ..., phi_m(x0).
double moment_ode_solution(const PdParams& params, int m, std::span<const double> phi_init, double t);

}  // namespace pdlab
