#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cheeger {

struct Offset {
  int dx;
  int dy;
};

// Highest-label push-relabel with global relabelling on a lattice graph whose
// arcs come from a fixed, negation-closed offset set. Node n = j*width + i;
// arc n*K + k runs from n to n + offsets[k]. The caller pads the lattice so
// nodes with capacities sit at least max|offset| cells from the edge.
//
// Only the first phase runs (maximum preflow), which is all a minimum cut
// needs: the nodes that cannot reach the sink form the largest source side.
class GridMaxflow {
public:
  GridMaxflow(int width, int height, std::span<const Offset> offsets);

  int node(int i, int j) const { return j * width_ + i; }
  void set_arc(int n, int k, double cap) { rcap_[arc(n, k)] = cap; }
  // Only the difference of the two terminal capacities matters for the cut.
  void add_terminal(int n, double source, double sink);

  // Returns the cut value.
  double solve();

  std::vector<std::uint8_t> maximal_source_side() const;

private:
  std::size_t arc(int n, int k) const { return static_cast<std::size_t>(n) * K_ + k; }
  int head(int n, int k) const { return n + delta_[k]; }
  std::size_t sister(int n, int k) const { return arc(head(n, k), opposite_[k]); }

  void global_relabel();
  void activate(int n);
  void discharge(int n);

  int width_;
  int height_;
  int K_;
  int inf_label_;
  std::vector<int> delta_;
  std::vector<int> opposite_;

  std::vector<double> rcap_;
  std::vector<double> excess_;
  std::vector<double> sink_cap_;
  std::vector<int> label_;
  std::vector<std::uint8_t> current_;
  std::vector<std::vector<int>> buckets_;
  int top_ = 0;
  double base_flow_ = 0.0;
  double sink_flow_ = 0.0;
  long long work_ = 0;
};

}  // namespace cheeger
