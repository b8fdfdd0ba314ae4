#include "hypersparse/potential.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "hypersparse/linalg.hpp"
#include "union_find.hpp"

namespace hsp {

double st_potential(const WeightedGraph& g) {
  if (!is_connected(g)) {
    throw ConnectivityError("spanning-tree potential needs a connected graph");
  }
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (n <= 1) return 0.0;  // the empty tree
  const Eigen::MatrixXd lap = laplacian(g);
  Eigen::LLT<Eigen::MatrixXd> llt(lap.bottomRightCorner(n - 1, n - 1));
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("reduced Laplacian is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

namespace {

// Include/exclude recursion over edges, pruned whenever a chosen edge would
// close a cycle or too few edges remain. Each spanning tree is visited once.
class TreeEnumerator {
 public:
  explicit TreeEnumerator(const WeightedGraph& g)
      : g_(g), needed_(g.num_vertices() - 1) {}

  double run() {
    std::vector<std::size_t> chosen;
    recurse(0, chosen, 1.0);
    return total_;
  }

 private:
  void recurse(std::size_t next, std::vector<std::size_t>& chosen,
               double product) {
    if (chosen.size() == needed_) {
      total_ += product;
      return;
    }
    const std::size_t m = g_.num_edges();
    if (m - next < needed_ - chosen.size()) return;
    const Edge& e = g_.edge(next);
    if (e.weight > 0.0 && joins_components(chosen, e)) {
      chosen.push_back(next);
      recurse(next + 1, chosen, product * e.weight);
      chosen.pop_back();
    }
    recurse(next + 1, chosen, product);
  }

  bool joins_components(const std::vector<std::size_t>& chosen,
                        const Edge& e) const {
    detail::UnionFind uf(g_.num_vertices());
    for (std::size_t i : chosen) uf.unite(g_.edge(i).u, g_.edge(i).v);
    return uf.find(e.u) != uf.find(e.v);
  }

  const WeightedGraph& g_;
  std::size_t needed_;
  double total_ = 0.0;
};

}  // namespace

double spanning_tree_sum_enumerated(const WeightedGraph& g) {
  if (g.num_vertices() > kMaxEnumerationVertices) {
    throw GuardError("spanning tree enumeration limited to " +
                     std::to_string(kMaxEnumerationVertices) + " vertices");
  }
  if (g.num_vertices() <= 1) return 1.0;
  return TreeEnumerator(g).run();
}

double st_potential_brute(const WeightedGraph& g) {
  const double total = spanning_tree_sum_enumerated(g);
  if (!(total > 0.0)) {
    throw ConnectivityError("graph has no spanning tree");
  }
  return std::log(total);
}

double update_delta(double resistance, double lambda) {
  const double t = lambda * resistance;
  if (!(1.0 + t > 0.0)) {
    throw DomainError("1 + lambda * R must be positive");
  }
  return std::log1p(t);
}

}  // namespace hsp
