#include <doctest.h>

#include <array>
#include <random>

#include "gph/kernels.hpp"
#include "gph/matrix.hpp"

using namespace gph;

static std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

TEST_CASE("every available table agrees with the scalar kernels") {
  std::mt19937_64 rng(7);
  const auto& ref = kernels::scalar_table();
  for (const auto* tab : kernels::available_tables()) {
    CAPTURE(tab->name);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 17u, 64u, 129u}) {
      const auto x = random_vec(rng, n), y = random_vec(rng, n);
      CHECK(tab->dot(x.data(), y.data(), n) ==
            doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13));
      auto y1 = y, y2 = y;
      ref.axpy(0.37, x.data(), y1.data(), n);
      tab->axpy(0.37, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-14));
    }
    const std::array<std::array<std::size_t, 3>, 6> shapes{
        {{1, 1, 1}, {3, 5, 2}, {4, 4, 4}, {9, 7, 11}, {16, 16, 16}, {5, 33, 6}}};
    for (const auto& [m, k, n] : shapes) {
      const auto a = random_vec(rng, m * k), b = random_vec(rng, k * n);
      std::vector<double> c1(m * n, 1.0), c2(m * n, -1.0);
      ref.gemm(a.data(), b.data(), c1.data(), m, k, n);
      tab->gemm(a.data(), b.data(), c2.data(), m, k, n);
      for (std::size_t i = 0; i < m * n; ++i) CHECK(c2[i] == doctest::Approx(c1[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar table is always present and named") {
  const auto tabs = kernels::available_tables();
  REQUIRE(!tabs.empty());
  CHECK(tabs.front()->isa == kernels::Isa::scalar);
  CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
  CHECK(kernels::active().name != nullptr);
}

TEST_CASE("matrix product goes through the active kernel and matches a naive loop") {
  Matrix a{{1, 2, 3}, {4, 5, 6}};
  Matrix b{{7, 8}, {9, 10}, {11, 12}};
  const Matrix c = a * b;
  CHECK(c(0, 0) == 58);
  CHECK(c(0, 1) == 64);
  CHECK(c(1, 0) == 139);
  CHECK(c(1, 1) == 154);
}
