#include "hypersparse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "hypersparse/linalg.hpp"
#include "hypersparse/potential.hpp"
#include "hypersparse/rng.hpp"

namespace hsp {

namespace {

struct RatioTracker {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<double> worst;
  double worst_dev = -1.0;
  std::uint64_t count = 0;

  void add(double q, double q_sparse, const std::vector<double>& x) {
    if (q == 0.0 && q_sparse == 0.0) return;
    const double ratio =
        q == 0.0 ? std::numeric_limits<double>::infinity() : q_sparse / q;
    ++count;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    const double dev = std::abs(ratio - 1.0);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst = x;
    }
  }
};

std::vector<std::uint64_t> edge_masks(const Hypergraph& h) {
  std::vector<std::uint64_t> masks;
  masks.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    std::uint64_t m = 0;
    for (Vertex v : e.vertices) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  return masks;
}

double cut_weight(const std::vector<std::uint64_t>& masks, const Hypergraph& h,
                  std::uint64_t side) {
  double w = 0.0;
  for (std::size_t e = 0; e < masks.size(); ++e) {
    const std::uint64_t inside = masks[e] & side;
    if (inside != 0 && inside != masks[e]) w += h.edges()[e].weight;
  }
  return w;
}

}  // namespace

double VerificationReport::worst_over() const {
  return cut ? std::max(max_over_ratio, cut->max_ratio) : max_over_ratio;
}

double VerificationReport::worst_under() const {
  return cut ? std::min(min_under_ratio, cut->min_ratio) : min_under_ratio;
}

VerificationReport probe_check(const Hypergraph& h, const Hypergraph& sparse,
                               double eps, const ProbeOptions& options,
                               std::uint64_t seed) {
  const std::size_t n = h.num_vertices();
  if (sparse.num_vertices() != n) {
    throw InputError("hypergraphs must share the vertex count");
  }
  RatioTracker tracker;
  std::vector<double> x(n);
  auto probe = [&]() { tracker.add(hyper_energy(h, x), hyper_energy(sparse, x), x); };

  auto gen = rng::engine(seed, rng::tag("probe"));
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < options.gaussian; ++k) {
    for (auto& xi : x) xi = normal(gen);
    probe();
  }
  std::bernoulli_distribution coin;
  for (std::size_t k = 0; k < options.rademacher; ++k) {
    for (auto& xi : x) xi = coin(gen) ? 1.0 : -1.0;
    probe();
  }
  if (n >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < options.two_sparse; ++k) {
      std::fill(x.begin(), x.end(), 0.0);
      const std::size_t a = pick(gen);
      std::size_t b = pick(gen);
      while (b == a) b = pick(gen);
      x[a] = 1.0;
      x[b] = -1.0;
      probe();
    }
  }
  if (options.coordinates) {
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(x.begin(), x.end(), 0.0);
      x[i] = 1.0;
      probe();
    }
  }

  VerificationReport report;
  report.eps = eps;
  report.seed = seed;
  report.probes = tracker.count;
  report.max_over_ratio = tracker.count ? tracker.hi : 1.0;
  report.min_under_ratio = tracker.count ? tracker.lo : 1.0;
  report.worst_probe = tracker.worst;
  if (n <= options.cuts_max_n && n <= kMaxCutVertices && n >= 2) {
    report.cut = cut_check(h, sparse);
    report.cuts = report.cut->cuts;
  }
  report.pass = report.worst_under() >= 1.0 - eps &&
                report.worst_over() <= 1.0 + eps;
  return report;
}

CutReport cut_check(const Hypergraph& h, const Hypergraph& sparse) {
  const std::size_t n = h.num_vertices();
  if (n > kMaxCutVertices) {
    throw GuardError("cut enumeration limited to " +
                     std::to_string(kMaxCutVertices) + " vertices");
  }
  if (sparse.num_vertices() != n) {
    throw InputError("hypergraphs must share the vertex count");
  }
  CutReport report;
  if (n < 2) return report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  const auto masks = edge_masks(h);
  const auto sparse_masks = edge_masks(sparse);
  double worst_dev = -1.0;
  // Vertex n-1 always stays outside S, so each cut is visited once.
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t side = 1; side < limit; ++side) {
    const double w = cut_weight(masks, h, side);
    const double ws = cut_weight(sparse_masks, sparse, side);
    if (w == 0.0 && ws == 0.0) continue;
    const double ratio =
        w == 0.0 ? std::numeric_limits<double>::infinity() : ws / w;
    ++report.cuts;
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (std::abs(ratio - 1.0) > worst_dev) {
      worst_dev = std::abs(ratio - 1.0);
      report.worst_cut = side;
    }
  }
  if (report.cuts == 0) report.min_ratio = report.max_ratio = 1.0;
  return report;
}

PencilRange pencil_ratio(const WeightedGraph& g, const WeightedGraph& sparse) {
  if (g.num_vertices() != sparse.num_vertices()) {
    throw InputError("graphs must share the vertex count");
  }
  if (!is_connected(g)) throw ConnectivityError("reference graph is disconnected");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (n <= 1) return {};
  // Both quadratic forms vanish on constants, so fixing x_0 = 0 restricts the
  // pencil to a complement of the all-ones vector.
  const Eigen::MatrixXd a = laplacian(sparse).bottomRightCorner(n - 1, n - 1);
  const Eigen::MatrixXd b = laplacian(g).bottomRightCorner(n - 1, n - 1);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, b, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw ConditioningError("generalized eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double brute_resistance(const WeightedGraph& g, Vertex u, Vertex v) {
  const std::size_t n = g.num_vertices();
  if (n > 64) throw GuardError("brute_resistance limited to 64 vertices");
  if (u >= n || v >= n) throw InputError("vertex id out of range");
  if (u == v) return 0.0;
  if (!is_connected(g)) throw ConnectivityError("graph is disconnected");
  // Ground v, inject unit current at u; the potential at u is R(u, v).
  std::vector<Eigen::Index> index(n, -1);
  Eigen::Index next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (a != v) index[a] = next++;
  }
  const Eigen::MatrixXd lap = laplacian(g);
  Eigen::MatrixXd reduced(next, next);
  for (std::size_t a = 0; a < n; ++a) {
    if (index[a] < 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (index[b] >= 0) reduced(index[a], index[b]) = lap(a, b);
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(next);
  rhs(index[u]) = 1.0;
  const Eigen::VectorXd y = reduced.fullPivLu().solve(rhs);
  return y(index[u]);
}

double variational_resistance_bound(const WeightedGraph& g, Vertex u, Vertex v,
                                    const std::vector<double>& x) {
  const double q = graph_quadratic(g, x);
  const double d = x.at(u) - x.at(v);
  return d * d / q;
}

double brute_tree_sum(const WeightedGraph& g) {
  return spanning_tree_sum_enumerated(g);
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "worst_over = " << r.worst_over() << '\n'
      << "worst_under = " << r.worst_under() << '\n'
      << "probe_max_ratio = " << r.max_over_ratio << '\n'
      << "probe_min_ratio = " << r.min_under_ratio << '\n';
  if (r.cut) {
    out << "cut_max_ratio = " << r.cut->max_ratio << '\n'
        << "cut_min_ratio = " << r.cut->min_ratio << '\n';
  }
  out << "probes = " << r.probes << '\n'
      << "cuts = " << r.cuts << '\n'
      << "eps = " << r.eps << '\n'
      << "seed = " << r.seed << '\n'
      << "pass = " << (r.pass ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace hsp
