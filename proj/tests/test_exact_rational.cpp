#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdlab/powersum.hpp"

using namespace pdlab;
using Q = boost::multiprecision::cpp_rational;
using Poly = BasicPowerSumPoly<Q>;

namespace {

// every power-sum monomial of degree 2..6 (subscripts >= 2)
const std::vector<Monomial> kMonomials = {{2}, {3}, {4}, {2, 2}, {5}, {3, 2}, {6}, {4, 2}, {3, 3}, {2, 2, 2}};

const std::vector<std::pair<Q, Q>> kParams = {
    {Q(1, 2), Q(1, 2)}, {Q(3, 10), Q(7, 5)}, {Q(0), Q(1)}, {Q(-1, 2), Q(3, 2)}, {Q(7, 10), Q(-1, 5)}};

Poly mixed(int seed) {
  Poly u = Poly::constant(Q(seed % 3));
  for (std::size_t i = 0; i < kMonomials.size(); ++i)
    if ((seed + i) % 3 != 0) u = u + Poly::monomial(kMonomials[i], Q(static_cast<int>((seed * 7 + i * 5) % 11) - 5, 3));
  return u;
}

}  // namespace

TEST_CASE("first moment") {
  for (const auto& [a, t] : kParams) CHECK(pd_expectation(a, t, Poly::phi(2)) == (1 - a) / (1 + t));
}

TEST_CASE("generator has zero stationary mean") {
  for (const auto& [a, t] : kParams) {
    for (const auto& m : kMonomials) CHECK(zero_mean_check(a, t, Poly::monomial(m)) == 0);
    for (int s = 0; s < 6; ++s) CHECK(zero_mean_check(a, t, mixed(s)) == 0);
  }
}

TEST_CASE("Dirichlet form is symmetric and both routes agree") {
  for (const auto& [a, t] : kParams)
    for (std::size_t i = 0; i < kMonomials.size(); ++i)
      for (std::size_t j = i; j < kMonomials.size(); ++j) {
        const auto u = Poly::monomial(kMonomials[i]);
        const auto v = Poly::monomial(kMonomials[j]);
        const Q uv = dirichlet_form(a, t, u, v);
        CHECK(uv == dirichlet_form(a, t, v, u));
        CHECK(uv == dirichlet_form_carre_du_champ(a, t, u, v));
        if (i == j) CHECK(uv >= 0);
      }
}

TEST_CASE("mixed polynomials") {
  for (const auto& [a, t] : kParams)
    for (int s = 0; s < 4; ++s) {
      const auto u = mixed(s), v = mixed(s + 5);
      CHECK(dirichlet_form(a, t, u, v) == dirichlet_form(a, t, v, u));
      CHECK(dirichlet_form(a, t, u, v) == dirichlet_form_carre_du_champ(a, t, u, v));
      CHECK(dirichlet_form(a, t, u, u) >= 0);
    }
}
