#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sciwb {

/// Data-parallel kernels run under OpenMP when Parallel is requested; the
/// Serial path is the reference implementation the tests compare against.
enum class Execution { Serial, Parallel };

namespace kernels {

/// Calls body(i) for i in [0, n). Bodies must write only to index-owned slots.
void parallel_for(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

/// sup_{p in from} min_{q in to} |p - q|. Throws EmptySet on empty input.
double directed_hausdorff(std::span<const std::complex<double>> from,
                          std::span<const std::complex<double>> to, Execution exec);

/// max of the two directed distances.
double hausdorff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                 Execution exec);

/// Smallest singular value of (m - zI) for every z. m must be square.
std::vector<double> smallest_singular_values(const Eigen::MatrixXcd& m,
                                             std::span<const std::complex<double>> shifts, Execution exec);

/// Smallest singular value of a single square matrix.
double smallest_singular_value(const Eigen::MatrixXcd& m);

}  // namespace kernels
}  // namespace sciwb
