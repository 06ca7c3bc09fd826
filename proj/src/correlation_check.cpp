#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "parallel.hpp"
#include "tripent/entropy.hpp"
#include "tripent/error.hpp"
#include "tripent/random.hpp"
#include "tripent/witness.hpp"

namespace tripent {

namespace {

using Matrix = Eigen::MatrixXcd;

Matrix complex_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = {gauss(engine), gauss(engine)};
  }
  return m;
}

// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal folded into Q.
Matrix haar_unitary(std::size_t dim, std::mt19937_64& engine) {
  const Matrix z = complex_gaussian(dim, dim, engine);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

struct Trial {
  double violation;
  double mutual_information;
  double entanglement;
};

Trial run_trial(std::size_t dim, std::mt19937_64& engine) {
  // psi as a dim x dim amplitude matrix Psi(a, b)
  Matrix psi = complex_gaussian(dim, dim, engine);
  psi /= psi.norm();
  const Matrix ua = haar_unitary(dim, engine);
  const Matrix ub = haar_unitary(dim, engine);

  // <e_a| <f_b| psi> = (Ua^dagger Psi conj(Ub))(a, b)
  const Matrix amplitudes = ua.adjoint() * psi * ub.conjugate();
  std::vector<double> probs(dim * dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) probs[a * dim + b] = std::norm(amplitudes(a, b));
  }
  const double mi = mutual_information(DiscretePMF::from_counts(probs, {dim, dim}));

  const Matrix rho_a = psi * psi.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_a, Eigen::EigenvaluesOnly);
  double s_a = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double l = eig.eigenvalues()(i);
    if (l > 0.0) s_a -= l * std::log2(l);
  }
  // Pure joint state: S(AB) = 0, S(B) = S(A), E_F(AB) = S(A).
  const double entanglement = s_a;
  const double min_entropy = std::min({0.0, s_a, s_a});
  return {mi - entanglement - min_entropy, mi, entanglement};
}

}  // namespace

CorrelationCheckReport verify_correlation_relation(std::size_t dim, std::size_t trials, std::uint64_t seed) {
  if (dim < 2 || dim > 8) throw UsageError("verify_correlation_relation: dim must lie in [2, 8]");
  if (trials < 1) throw UsageError("verify_correlation_relation: trials must be >= 1");

  std::vector<Trial> results(trials);
  detail::parallel_for(trials, [&](std::size_t t) {
    auto engine = make_substream(seed, t);
    results[t] = run_trial(dim, engine);
  });

  CorrelationCheckReport report{dim, trials, seed, -std::numeric_limits<double>::infinity(), 0.0, 0.0, 0};
  for (const auto& r : results) {
    report.max_violation = std::max(report.max_violation, r.violation);
    report.mean_mutual_information += r.mutual_information / static_cast<double>(trials);
    report.mean_entanglement += r.entanglement / static_cast<double>(trials);
    if (r.violation > 1e-9) ++report.violations_above_tolerance;
  }
  return report;
}

}  // namespace tripent
