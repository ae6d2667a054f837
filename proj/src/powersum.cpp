#include "pdlab/powersum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdlab/partitions.hpp"

namespace pdlab {

Monomial normalize_monomial(std::vector<int> factors) {
  for (int f : factors)
    if (f < 1) throw DomainError("power-sum index must be >= 1, got " + std::to_string(f));
  std::erase(factors, 1);
  std::sort(factors.begin(), factors.end(), std::greater<>());
  return factors;
}

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int f : m) d += f;
  return d;
}

std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += '*';
    s += "phi" + std::to_string(m[i]);
  }
  return s;
}

std::vector<Monomial> monomials_up_to_degree(int max_degree) {
  std::vector<Monomial> out;
  out.emplace_back();
  for (int d = 2; d <= max_degree; ++d)
    for_each_partition(d, d, 2, [&](std::span<const int> parts) {
      out.emplace_back(parts.begin(), parts.end());
    });
  return out;
}

std::string to_string(const PowerSumPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    double mag = c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mag = std::abs(c);
    first = false;
    if (m.empty()) {
      os << mag;
    } else {
      if (mag != 1.0) os << mag << '*';
      os << monomial_to_string(m);
    }
  }
  return os.str();
}

double eigenvalue_magnitude(const PdParams& params, int m) {
  return 0.5 * m * (m - 1 + params.theta());
}

GeneratorMatrix generator_matrix(const PdParams& params, int max_degree) {
  if (max_degree < 0) throw DomainError("generator_matrix: max_degree must be non-negative");
  if (max_degree > kMaxSpectrumDegree)
    throw CapacityError("generator_matrix: max_degree above " + std::to_string(kMaxSpectrumDegree));
  GeneratorMatrix g;
  g.basis = monomials_up_to_degree(max_degree);
  const std::size_t n = g.basis.size();
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(g.basis[i], i);
  g.entries.assign(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    PowerSumPoly image;
    add_generator_image(params.alpha(), params.theta(), g.basis[col], 1.0, image);
    for (const auto& [m, c] : image.terms()) g.entries[index.at(m) * n + col] = c;
  }
  return g;
}

std::vector<SpectralLevel> spectrum(const PdParams& params, int max_degree) {
  if (max_degree < 2) throw DomainError("spectrum: max_degree must be >= 2");
  const GeneratorMatrix g = generator_matrix(params, max_degree);
  const std::size_t n = g.basis.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c)
      if (g.at(r, c) != 0.0)
        throw NumericError("spectrum: generator matrix is not upper triangular", g.at(r, c));

  std::vector<SpectralLevel> levels;
  for (std::size_t i = 0; i < n; ++i) {
    const int d = monomial_degree(g.basis[i]);
    const double diag = g.at(i, i);
    if (!levels.empty() && levels.back().degree == d) {
      if (diag != levels.back().eigenvalue)
        throw NumericError("spectrum: unequal diagonal within degree " + std::to_string(d),
                           std::abs(diag - levels.back().eigenvalue));
      ++levels.back().multiplicity;
    } else {
      levels.push_back({d, diag, 1});
    }
  }
  return levels;
}

double moment_ode_solution(const PdParams& params, int m, std::span<const double> phi_init, double t) {
  if (m < 2) throw DomainError("moment_ode_solution: m must be >= 2");
  if (phi_init.size() != static_cast<std::size_t>(m - 1))
    throw DomainError("moment_ode_solution: expected phi_2..phi_m initial values");
  for (double v : phi_init)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("moment_ode_solution: initial values must lie in [0,1]");
  if (!(t >= 0.0)) throw DomainError("moment_ode_solution: t must be non-negative");

  const double alpha = params.alpha();
  const double theta = params.theta();
  auto a = [&](int j) { return 0.5 * j * (j - 1 - alpha); };
  auto lam = [&](int j) { return 0.5 * j * (j - 1 + theta); };

  // y_j(t) = y*_j + sum_{i=2}^{j} c[j][i] exp(-lambda_i t)
  std::vector<double> stat(static_cast<std::size_t>(m) + 1, 1.0);
  for (int j = 2; j <= m; ++j) stat[j] = a(j) * stat[j - 1] / lam(j);

  std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1,
                                     std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  for (int j = 2; j <= m; ++j) {
    double rest = 0.0;
    for (int i = 2; i < j; ++i) {
      c[j][i] = a(j) * c[j - 1][i] / (lam(j) - lam(i));
      rest += c[j][i];
    }
    c[j][j] = (phi_init[j - 2] - stat[j]) - rest;
  }
  double y = stat[m];
  for (int i = 2; i <= m; ++i) y += c[m][i] * std::exp(-lam(i) * t);
  return y;
}

}  // namespace pdlab
