#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "support.hpp"
#include "tripent/entropy.hpp"
#include "tripent/error.hpp"

using namespace tripent;

TEST_SUITE("entropy") {

TEST_CASE("shannon entropy of small tables") {
  CHECK(shannon_entropy(DiscretePMF({1.0}, {1})) == 0.0);
  CHECK(shannon_entropy(DiscretePMF({0.25, 0.25, 0.25, 0.25}, {4})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(shannon_entropy(DiscretePMF({0.5, 0.0, 0.5}, {3})) == doctest::Approx(1.0).epsilon(1e-15));
  // mpmath oracle
  CHECK(shannon_entropy(DiscretePMF({0.34645, 0.65355}, {2})) == doctest::Approx(0.93085758199578).epsilon(1e-13));
}

TEST_CASE("mutual information of a correlated bit pair") {
  const DiscretePMF p({3.0 / 8, 1.0 / 8, 1.0 / 8, 3.0 / 8}, {2, 2});
  CHECK(mutual_information(p) == doctest::Approx(0.18872187554087).epsilon(1e-13));
  CHECK(mutual_information(DiscretePMF({0.25, 0.25, 0.25, 0.25}, {2, 2})) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("PMF validation and renormalization") {
  CHECK_THROWS_AS(DiscretePMF({0.5, 0.6}, {2}), ValidationError);
  CHECK_THROWS_AS(DiscretePMF({-0.1, 1.1}, {2}), ValidationError);
  CHECK_THROWS_AS(DiscretePMF({0.5, 0.5}, {3}), ValidationError);
  CHECK_THROWS_AS(DiscretePMF({1.0}, {}), ValidationError);
  CHECK_THROWS_AS(DiscretePMF({1.0}, {1, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(DiscretePMF({std::nan(""), 1.0}, {2}), ValidationError);

  const DiscretePMF p({0.5 + 4e-13, 0.5}, {2});
  CHECK(p.probabilities()[0] + p.probabilities()[1] == doctest::Approx(1.0).epsilon(1e-16));

  const auto q = DiscretePMF::from_counts(std::vector<double>{3, 1}, {2});
  CHECK(q.probabilities()[0] == 0.75);
  CHECK_THROWS_AS(DiscretePMF::from_counts(std::vector<double>{0, 0}, {2}), UsageError);
}

TEST_CASE("marginals and indexing") {
  const DiscretePMF p({0.1, 0.2, 0.3, 0.4}, {2, 2});
  const std::vector<std::size_t> idx{1, 0};
  CHECK(p.at(idx) == doctest::Approx(0.3));
  const auto m0 = p.marginal({0});
  CHECK(m0.probabilities()[0] == doctest::Approx(0.3));
  const auto m1 = p.marginal({1});
  CHECK(m1.probabilities()[1] == doctest::Approx(0.6));
  CHECK_THROWS_AS(p.marginal({2}), UsageError);
  CHECK_THROWS_AS(conditional_entropy(m0, 0), UsageError);
  CHECK_THROWS_AS(mutual_information(DiscretePMF({1.0}, {1, 1, 1})), UsageError);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.34645) == doctest::Approx(0.93085758199578).epsilon(1e-13));
  CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
}

TEST_CASE("gaussian differential entropy") {
  CHECK(gaussian_differential_entropy(1.0) == doctest::Approx(2.04709558518064).epsilon(1e-13));
  CHECK(gaussian_differential_entropy(2.0) - gaussian_differential_entropy(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_differential_entropy(0.0), DomainError);
}

TEST_CASE("histogram estimator") {
  Histogram1D one{0.25, 0.0, {10.0}};
  CHECK(differential_entropy_from_histogram(one) == doctest::Approx(-2.0));

  Histogram1D flat{0.5, -1.0, {1.0, 1.0, 1.0, 1.0}};
  CHECK(differential_entropy_from_histogram(flat) == doctest::Approx(1.0));  // uniform on width 2

  CHECK_THROWS_AS(differential_entropy_from_histogram({0.0, 0.0, {1.0}}), UsageError);
  CHECK_THROWS_AS(differential_entropy_from_histogram({1.0, 0.0, {0.0, 0.0}}), UsageError);
  CHECK_THROWS_AS(histogram_from_values(std::vector<double>{}, 1.0), UsageError);
  CHECK_THROWS_AS(histogram_from_values(std::vector<double>{1.0}, -1.0), UsageError);

  const auto h = histogram_from_values(std::vector<double>{0.1, 0.2, 1.3, -0.7}, 0.5);
  CHECK(h.origin == doctest::Approx(-1.0));
  CHECK(h.total() == 4.0);
  CHECK(h.bin_center(0) == doctest::Approx(-0.75));
}

TEST_CASE("histogram entropy of gaussian samples approaches the analytic value") {
  std::mt19937_64 g(11);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<double> v(400000);
  for (auto& x : v) x = n(g);
  const double est = differential_entropy_from_histogram(histogram_from_values(v, 0.1));
  CHECK(est == doctest::Approx(gaussian_differential_entropy(3.0)).epsilon(2e-3));
}

TEST_CASE("property: chain rule, conditional entropy and MI non-negativity") {
  auto g = testgen::rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t a = testgen::random_dim(g, 1, 4), b = testgen::random_dim(g, 1, 4), c = testgen::random_dim(g, 1, 4);
    const DiscretePMF p(testgen::random_table(g, a * b * c), {a, b, c});
    const double h = shannon_entropy(p);
    // H(ABC) = H(AB) + H(C|AB) for each choice of last party
    CHECK(shannon_entropy(p.marginal({0, 1})) + conditional_entropy(p, 2) == doctest::Approx(h).epsilon(1e-12));
    CHECK(shannon_entropy(p.marginal({1, 2})) + conditional_entropy(p, 0) == doctest::Approx(h).epsilon(1e-12));
    for (std::size_t axis = 0; axis < 3; ++axis) CHECK(conditional_entropy(p, axis) >= 0.0);
    // I(A:BC) via a reshaped two-axis table
    const DiscretePMF two(std::vector<double>(p.probabilities().begin(), p.probabilities().end()), {a, b * c});
    const double mi = mutual_information(two);
    CHECK(mi >= -1e-12);
    CHECK(mi <= std::log2(static_cast<double>(std::min(a, b * c))) + 1e-12);
    CHECK(h <= std::log2(static_cast<double>(a * b * c)) + 1e-12);
  }
}

TEST_CASE("property: coarse-graining never lowers the histogram estimate") {
  auto g = testgen::rng(77);
  std::uniform_real_distribution<double> width(0.01, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t bins = testgen::random_dim(g, 1, 40);
    const auto table = testgen::random_table(g, bins, 0.3);
    Histogram1D h{width(g), -1.0, std::vector<double>(table.begin(), table.end())};
    for (auto& x : h.counts) x *= 1000.0;
    double prev = differential_entropy_from_histogram(h);
    for (int level = 0; level < 4; ++level) {
      h = coarsen_by_two(h);
      const double next = differential_entropy_from_histogram(h);
      CHECK(next >= prev - 1e-12);
      CHECK(next <= prev + 1.0 + 1e-12);
      prev = next;
    }
  }
}

}  // TEST_SUITE
