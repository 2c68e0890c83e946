#include "sciwb/kernels.hpp"

#include <algorithm>
#include <limits>

#include "sciwb/errors.hpp"

namespace sciwb::kernels {

void parallel_for(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

namespace {

double nearest(const std::complex<double>& p, std::span<const std::complex<double>> to) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : to) best = std::min(best, std::abs(p - q));
  return best;
}

}  // namespace

double directed_hausdorff(std::span<const std::complex<double>> from,
                          std::span<const std::complex<double>> to, Execution exec) {
  if (from.empty() || to.empty()) throw Error(Errc::EmptySet, "Hausdorff distance needs nonempty sets");
  double worst = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(from.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) worst = std::max(worst, nearest(from[i], to));
    return worst;
  }
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) worst = std::max(worst, nearest(from[i], to));
  return worst;
}

double hausdorff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                 Execution exec) {
  return std::max(directed_hausdorff(a, b, exec), directed_hausdorff(b, a, exec));
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

std::vector<double> smallest_singular_values(const Eigen::MatrixXcd& m,
                                             std::span<const std::complex<double>> shifts, Execution exec) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "smallest_singular_values needs a square matrix");
  std::vector<double> out(shifts.size());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  parallel_for(shifts.size(), exec, [&](std::size_t i) { out[i] = smallest_singular_value(m - shifts[i] * id); });
  return out;
}

}  // namespace sciwb::kernels
