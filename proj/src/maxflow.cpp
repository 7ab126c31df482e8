#include "cheeger/maxflow.hpp"

#include <algorithm>

#include "cheeger/error.hpp"

namespace cheeger {

GridMaxflow::GridMaxflow(int width, int height, std::span<const Offset> offsets)
    : width_(width), height_(height), K_(static_cast<int>(offsets.size())) {
  for (const auto& o : offsets) delta_.push_back(o.dy * width + o.dx);
  for (const auto& o : offsets) {
    const auto it = std::find_if(offsets.begin(), offsets.end(),
                                 [&](const Offset& p) { return p.dx == -o.dx && p.dy == -o.dy; });
    if (it == offsets.end()) throw Error(Errc::unsupported_order, "offset set is not closed under negation");
    opposite_.push_back(static_cast<int>(it - offsets.begin()));
  }
  const auto n = static_cast<std::size_t>(width) * height;
  inf_label_ = static_cast<int>(n) + 1;
  rcap_.assign(n * K_, 0.0);
  excess_.assign(n, 0.0);
  sink_cap_.assign(n, 0.0);
  label_.assign(n, 0);
  current_.assign(n, 0);
}

void GridMaxflow::add_terminal(int n, double source, double sink) {
  const double common = std::min(source, sink);
  base_flow_ += common;
  excess_[n] += source - common;
  sink_cap_[n] += sink - common;
}

void GridMaxflow::activate(int n) {
  const int d = label_[n];
  if (d >= inf_label_) return;
  if (static_cast<std::size_t>(d) >= buckets_.size()) buckets_.resize(static_cast<std::size_t>(d) + 1);
  buckets_[d].push_back(n);
  top_ = std::max(top_, d);
}

// Exact distances to the sink in the residual graph; unreachable nodes are
// parked at the infinite label.
void GridMaxflow::global_relabel() {
  const int n = width_ * height_;
  std::fill(label_.begin(), label_.end(), inf_label_);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (sink_cap_[v] > 0.0) {
      label_[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int v = queue[q];
    for (int k = 0; k < K_; ++k) {
      // Residual u -> v is the sister of v -> u.
      if (rcap_[sister(v, k)] <= 0.0) continue;
      const int u = head(v, k);
      if (label_[u] != inf_label_) continue;
      label_[u] = label_[v] + 1;
      queue.push_back(u);
    }
  }
  for (auto& b : buckets_) b.clear();
  top_ = 0;
  std::fill(current_.begin(), current_.end(), std::uint8_t{0});
  for (int v = 0; v < n; ++v) {
    if (excess_[v] > 0.0) activate(v);
  }
  work_ = 0;
}

void GridMaxflow::discharge(int v) {
  while (excess_[v] > 0.0) {
    const int d = label_[v];
    if (d == 1 && sink_cap_[v] > 0.0) {
      const double delta = std::min(excess_[v], sink_cap_[v]);
      excess_[v] -= delta;
      sink_cap_[v] -= delta;
      sink_flow_ += delta;
      if (excess_[v] <= 0.0) return;
    }
    for (int k = current_[v]; k < K_; ++k) {
      const std::size_t a = arc(v, k);
      if (rcap_[a] <= 0.0) continue;
      const int u = head(v, k);
      if (label_[u] != d - 1) continue;
      const double delta = std::min(excess_[v], rcap_[a]);
      rcap_[a] -= delta;
      rcap_[sister(v, k)] += delta;
      const bool was_idle = excess_[u] <= 0.0;
      excess_[u] += delta;
      excess_[v] -= delta;
      if (was_idle) activate(u);
      if (excess_[v] <= 0.0) {
        current_[v] = static_cast<std::uint8_t>(k);
        return;
      }
    }
    // Relabel.
    int next = sink_cap_[v] > 0.0 ? 1 : inf_label_;
    for (int k = 0; k < K_; ++k) {
      if (rcap_[arc(v, k)] > 0.0) next = std::min(next, label_[head(v, k)] + 1);
    }
    work_ += K_ + 12;
    label_[v] = next;
    current_[v] = 0;
    if (next >= inf_label_) return;
  }
}

double GridMaxflow::solve() {
  const long long n = static_cast<long long>(width_) * height_;
  global_relabel();
  for (;;) {
    while (top_ >= 0 && (static_cast<std::size_t>(top_) >= buckets_.size() || buckets_[top_].empty())) --top_;
    if (top_ < 0) break;
    const int v = buckets_[top_].back();
    buckets_[top_].pop_back();
    // Stale entries: relabelled or already drained.
    if (label_[v] != top_ || excess_[v] <= 0.0) continue;
    discharge(v);
    if (excess_[v] > 0.0) activate(v);
    if (work_ > 6 * n + 1000) global_relabel();
  }
  return base_flow_ + sink_flow_;
}

std::vector<std::uint8_t> GridMaxflow::maximal_source_side() const {
  const int n = width_ * height_;
  std::vector<std::uint8_t> reaches(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (sink_cap_[v] > 0.0) {
      reaches[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int k = 0; k < K_; ++k) {
      if (rcap_[sister(v, k)] <= 0.0) continue;
      const int u = head(v, k);
      if (!reaches[u]) {
        reaches[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) side[v] = reaches[v] ? 0 : 1;
  return side;
}

}  // namespace cheeger
