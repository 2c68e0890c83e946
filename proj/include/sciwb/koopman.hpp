#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sciwb/kernels.hpp"
#include "sciwb/tower.hpp"

namespace sciwb::koopman {

/// X = {x_1, ..., x_N} with positive weights; point coding iota(x_i) = i.
struct FiniteSpace {
  int n = 1;
  std::vector<Rational> weights;

  /// Uniform weights when w is empty. Throws InvalidArgument on N < 1 or nonpositive weights.
  explicit FiniteSpace(int size, std::vector<Rational> w = {});
};

/// F(i) for i = 1..N, 1-based.
using MapTable = std::vector<int>;

/// Throws InvalidArgument unless table is a total map on 1..N.
void check_table(const MapTable& table, int n);

/// M[i, F(i)] = 1, else 0 (0-based storage of the 1-based table).
Eigen::MatrixXcd koopman_matrix(const MapTable& table);

/// Smallest singular value of W^{1/2}(M - zI)W^{-1/2}.
double sigma_inf(const Eigen::MatrixXcd& m, std::complex<double> z, const std::vector<Rational>& weights);

/// e^{2 pi i p/q}, with the quarter points snapped to exact +-1, +-i.
std::complex<double> root_of_unity(std::int64_t p, std::int64_t q);

/// Lengths of the cycles of F and whether some point is not on a cycle.
struct CycleStructure {
  std::vector<int> cycle_lengths;
  bool has_transient = false;
};
CycleStructure cycle_structure(const MapTable& table);

/// Exact sigma_ap(K_F): all L-th roots of unity per cycle length L, plus 0 when
/// some point is transient. Points in canonical order (0 first, then by angle in [0, 2pi)).
PointSet sigma_ap(const MapTable& table);



/// Axis-aligned grid of points k * spacing inside [re_lo, re_hi] x [im_lo, im_hi].
struct Grid {
  double re_lo = -2, re_hi = 2, im_lo = -2, im_hi = 2;
  double spacing = 0.025;

  std::vector<std::complex<double>> points() const;
};

/// Grid points with sigma_inf <= eps (plus the eigenvalues). Each point of the true
/// set lies within the grid spacing of the sample when spacing <= eps/4.
/// Throws GridTooCoarse if spacing > eps/4 or the grid misses sigma_ap + eps.
PointSet sigma_ap_eps(const MapTable& table, const std::vector<Rational>& weights, double eps, const Grid& grid,
                      Execution exec = Execution::Parallel);

/// Throws EmptySet.
double hausdorff(const PointSet& a, const PointSet& b, Execution exec = Execution::Serial);

struct Target {
  enum class Kind { Ap, ApEps };
  Kind kind = Kind::Ap;
  double eps = 0.1;
  Grid grid;

  std::string to_string() const;
};

class MapInput final : public Input {
 public:
  explicit MapInput(MapTable t) : table_(std::move(t)) {}
  const MapTable& table() const { return table_; }
  std::string describe() const override;

 private:
  MapTable table_;
};

QueryId ev(int i);

/// sigma_ap or sigma_ap,eps of K_F from the point evaluations ev_{x_i}(F) = iota(F(x_i)).
class KoopmanProblem final : public Problem {
 public:
  /// Catalog: the given maps, else all N^N maps when N^N <= 256, else 100 seeded random maps.
  KoopmanProblem(FiniteSpace space, Target target, std::vector<MapTable> maps = {});

  const FiniteSpace& space() const { return space_; }
  const Target& target_kind() const { return target_; }
  Point compute(const MapTable& table) const;

  std::string id() const override;
  const OutputSpace& output_space() const override { return space_metric_; }
  std::vector<InputPtr> catalog() const override { return catalog_; }
  InputPtr sample_input(std::mt19937_64& rng) const override;
  Point target(const Input& in) const override;
  bool has_query(const QueryId& q) const override;
  Value evaluate(const QueryId& q, const Input& in) const override;
  std::vector<QueryId> sample_queries(std::mt19937_64& rng, std::size_t count) const override;
  std::optional<QueryId> first_query() const override { return ev(1); }
  std::vector<QueryId> probe_queries(const Input& a, const Input& b) const override;

 private:
  FiniteSpace space_;
  Target target_;
  OutputSpace space_metric_;
  std::vector<InputPtr> catalog_;
};

std::vector<MapTable> all_maps(int n);
MapTable random_map(std::mt19937_64& rng, int n);

/// Height-0 tower: queries ev_1..ev_N, rebuilds F and computes the target.
/// Built through finite_query_factorization, so the catalog is checked first.
Tower height0_algorithm(const std::shared_ptr<const KoopmanProblem>& problem);

/// Recorded worst-case heights of the full Koopman families, for the classifier.
struct RecordedHeight {
  std::string family;
  std::string target;
  int height;
};
std::vector<RecordedHeight> recorded_family_heights();

}  // namespace sciwb::koopman
