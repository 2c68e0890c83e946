#include "sciwb/koopman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace sciwb::koopman {

FiniteSpace::FiniteSpace(int size, std::vector<Rational> w) : n(size), weights(std::move(w)) {
  if (n < 1) throw Error(Errc::InvalidArgument, "a finite space needs N >= 1");
  if (weights.empty()) weights.assign(static_cast<std::size_t>(n), Rational(1));
  if (static_cast<int>(weights.size()) != n)
    throw Error(Errc::InvalidArgument, "expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()));
  for (const auto& x : weights)
    if (x <= 0) throw Error(Errc::InvalidArgument, "weights must be positive, got " + sciwb::to_string(x));
}

void check_table(const MapTable& table, int n) {
  if (static_cast<int>(table.size()) != n)
    throw Error(Errc::InvalidArgument, "map has " + std::to_string(table.size()) + " entries, expected " + std::to_string(n));
  for (int v : table)
    if (v < 1 || v > n) throw Error(Errc::InvalidArgument, "map value " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

Eigen::MatrixXcd koopman_matrix(const MapTable& table) {
  const auto n = static_cast<Eigen::Index>(table.size());
  check_table(table, static_cast<int>(n));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, table[static_cast<std::size_t>(i)] - 1) = 1.0;
  return m;
}

namespace {

Eigen::MatrixXcd similarity(const Eigen::MatrixXcd& m, const std::vector<Rational>& weights) {
  if (static_cast<Eigen::Index>(weights.size()) != m.rows())
    throw Error(Errc::InvalidArgument, "weight count does not match the matrix size");
  Eigen::MatrixXcd s = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      s(i, j) *= std::sqrt(to_double(weights[static_cast<std::size_t>(i)])) /
                 std::sqrt(to_double(weights[static_cast<std::size_t>(j)]));
  return s;
}

}  // namespace

double sigma_inf(const Eigen::MatrixXcd& m, std::complex<double> z, const std::vector<Rational>& weights) {
  const Eigen::MatrixXcd s = similarity(m, weights);
  return kernels::smallest_singular_value(s - z * Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

std::complex<double> root_of_unity(std::int64_t p, std::int64_t q) {
  if (q < 1) throw Error(Errc::InvalidArgument, "root of unity needs q >= 1");
  p %= q;
  if (p < 0) p += q;
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p == 0) return {1.0, 0.0};
  if (q == 2) return {-1.0, 0.0};
  if (q == 4) return p == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

CycleStructure cycle_structure(const MapTable& table) {
  const int n = static_cast<int>(table.size());
  check_table(table, n);
  CycleStructure out;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int start = 1; start <= n; ++start) {
    // F^n(start) lies on a cycle.
    int x = start;
    for (int k = 0; k < n; ++k) x = table[static_cast<std::size_t>(x - 1)];
    if (seen[static_cast<std::size_t>(x - 1)]) continue;
    int length = 0;
    int y = x;
    do {
      seen[static_cast<std::size_t>(y - 1)] = true;
      y = table[static_cast<std::size_t>(y - 1)];
      ++length;
    } while (y != x);
    out.cycle_lengths.push_back(length);
  }
  out.has_transient = std::find(seen.begin(), seen.end(), false) != seen.end();
  std::sort(out.cycle_lengths.begin(), out.cycle_lengths.end());
  return out;
}

PointSet sigma_ap(const MapTable& table) {
  const CycleStructure cs = cycle_structure(table);
  std::set<Rational> angles;  // fractions of a full turn, in [0, 1)
  for (int length : cs.cycle_lengths)
    for (int p = 0; p < length; ++p) angles.insert(Rational(p, length));
  PointSet out;
  if (cs.has_transient) out.points.emplace_back(0.0, 0.0);
  for (const auto& a : angles)
    out.points.push_back(root_of_unity(boost::multiprecision::numerator(a).convert_to<std::int64_t>(),
                                       boost::multiprecision::denominator(a).convert_to<std::int64_t>()));
  return out;
}

std::vector<std::complex<double>> Grid::points() const {
  if (!(spacing > 0)) throw Error(Errc::InvalidArgument, "grid spacing must be positive");
  const auto k0 = static_cast<long>(std::ceil(re_lo / spacing - 1e-9));
  const auto k1 = static_cast<long>(std::floor(re_hi / spacing + 1e-9));
  const auto l0 = static_cast<long>(std::ceil(im_lo / spacing - 1e-9));
  const auto l1 = static_cast<long>(std::floor(im_hi / spacing + 1e-9));
  std::vector<std::complex<double>> out;
  for (long k = k0; k <= k1; ++k)
    for (long l = l0; l <= l1; ++l)
      out.emplace_back(static_cast<double>(k) * spacing, static_cast<double>(l) * spacing);
  return out;
}

PointSet sigma_ap_eps(const MapTable& table, const std::vector<Rational>& weights, double eps, const Grid& grid,
                      Execution exec) {
  if (!(eps > 0)) throw Error(Errc::InvalidArgument, "epsilon must be positive");
  if (grid.spacing > eps / 4)
    throw Error(Errc::GridTooCoarse, "grid spacing " + std::to_string(grid.spacing) + " exceeds eps/4");
  const PointSet eigen = sigma_ap(table);
  for (const auto& z : eigen.points)
    if (z.real() - eps < grid.re_lo || z.real() + eps > grid.re_hi || z.imag() - eps < grid.im_lo ||
        z.imag() + eps > grid.im_hi)
      throw Error(Errc::GridTooCoarse, "grid does not cover the eps-neighbourhood of the spectrum");

  const Eigen::MatrixXcd s = similarity(koopman_matrix(table), weights);
  const auto pts = grid.points();
  const auto values = kernels::smallest_singular_values(s, pts, exec);
  PointSet out;
  out.resolution = grid.spacing;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (values[i] <= eps + 1e-12) out.points.push_back(pts[i]);
  for (const auto& z : eigen.points)
    if (std::find(out.points.begin(), out.points.end(), z) == out.points.end()) out.points.push_back(z);
  return out;
}

double hausdorff(const PointSet& a, const PointSet& b, Execution exec) {
  return kernels::hausdorff(a.points, b.points, exec);
}

std::string Target::to_string() const {
  if (kind == Kind::Ap) return "ap";
  std::ostringstream os;
  os << "apeps(eps=" << eps << ",h=" << grid.spacing << ",[" << grid.re_lo << "," << grid.re_hi << "]x[" << grid.im_lo
     << "," << grid.im_hi << "])";
  return os.str();
}

std::string MapInput::describe() const {
  std::string out = "F=[";
  for (std::size_t i = 0; i < table_.size(); ++i) out += (i ? "," : "") + std::to_string(table_[i]);
  return out + "]";
}

QueryId ev(int i) { return QueryId("ev", {Rational(i)}); }

std::vector<MapTable> all_maps(int n) {
  std::vector<MapTable> out;
  MapTable t(static_cast<std::size_t>(n), 1);
  for (;;) {
    out.push_back(t);
    std::size_t k = 0;
    while (k < t.size() && t[k] == n) t[k++] = 1;
    if (k == t.size()) return out;
    ++t[k];
  }
}

MapTable random_map(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(1, n);
  MapTable t(static_cast<std::size_t>(n));
  for (auto& v : t) v = pick(rng);
  return t;
}

KoopmanProblem::KoopmanProblem(FiniteSpace space, Target target, std::vector<MapTable> maps)
    : space_(std::move(space)), target_(target), space_metric_(OutputSpace::hyperspace()) {
  if (maps.empty()) {
    if (std::pow(space_.n, space_.n) <= 256) {
      maps = all_maps(space_.n);
    } else {
      std::mt19937_64 rng(0);
      for (int i = 0; i < 100; ++i) maps.push_back(random_map(rng, space_.n));
    }
  }
  for (auto& t : maps) {
    check_table(t, space_.n);
    catalog_.push_back(std::make_shared<const MapInput>(std::move(t)));
  }
}

Point KoopmanProblem::compute(const MapTable& table) const {
  if (target_.kind == Target::Kind::Ap) return sigma_ap(table);
  return sigma_ap_eps(table, space_.weights, target_.eps, target_.grid);
}

std::string KoopmanProblem::id() const {
  std::string w;
  for (std::size_t i = 0; i < space_.weights.size(); ++i) w += (i ? "," : "") + sciwb::to_string(space_.weights[i]);
  return "koopman-finite(N=" + std::to_string(space_.n) + ";w=" + w + ";" + target_.to_string() + ")";
}

InputPtr KoopmanProblem::sample_input(std::mt19937_64& rng) const {
  return std::make_shared<const MapInput>(random_map(rng, space_.n));
}

Point KoopmanProblem::target(const Input& in) const { return compute(input_as<MapInput>(in).table()); }

bool KoopmanProblem::has_query(const QueryId& q) const {
  return q.head == "ev" && q.params.size() == 1 && q.args.empty() &&
         boost::multiprecision::denominator(q.params[0]) == 1 && q.params[0] >= 1 && q.params[0] <= space_.n;
}

Value KoopmanProblem::evaluate(const QueryId& q, const Input& in) const {
  if (!has_query(q)) throw Error(Errc::UnknownQuery, q.to_string() + " is not a point evaluation of " + id());
  const auto& t = input_as<MapInput>(in).table();
  return Value(t.at(static_cast<std::size_t>(q.int_param(0) - 1)));
}

std::vector<QueryId> KoopmanProblem::sample_queries(std::mt19937_64& rng, std::size_t count) const {
  std::uniform_int_distribution<int> pick(1, space_.n);
  std::vector<QueryId> out;
  for (std::size_t c = 0; c < count; ++c) out.push_back(ev(pick(rng)));
  return out;
}

std::vector<QueryId> KoopmanProblem::probe_queries(const Input&, const Input&) const {
  std::vector<QueryId> out;
  for (int i = 1; i <= space_.n; ++i) out.push_back(ev(i));
  return out;
}

Tower height0_algorithm(const std::shared_ptr<const KoopmanProblem>& problem) {
  std::vector<QueryId> queries;
  for (int i = 1; i <= problem->space().n; ++i) queries.push_back(ev(i));
  return finite_query_factorization(
      *problem, std::move(queries),
      [problem](std::span<const Value> values) {
        MapTable t;
        t.reserve(values.size());
        for (const auto& v : values) {
          const Rational& x = v.re.exact();
          if (boost::multiprecision::denominator(x) != 1)
            throw Error(Errc::InvalidArgument, "point code " + sciwb::to_string(x) + " is not an index");
          t.push_back(boost::multiprecision::numerator(x).convert_to<int>());
        }
        return problem->compute(t);
      },
      "finite-collapse(" + problem->id() + ")");
}

std::vector<RecordedHeight> recorded_family_heights() {
  return {
      {"ns", "ap_eps", 2}, {"ns", "ap", 3},          {"m", "ap_eps", 2},     {"m", "ap", 3},
      {"alpha_m", "ap_eps", 1}, {"alpha_m", "ap", 2}, {"alpha", "ap_eps", 1}, {"alpha", "ap", 2},
      {"finite", "ap_eps", 0}, {"finite", "ap", 0},
  };
}

}  // namespace sciwb::koopman
