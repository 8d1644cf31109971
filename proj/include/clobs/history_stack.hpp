#pragma once

// Recorded data for concurrent learning. Each DataPoint satisfies
//   P = F_hat + G_hat^T theta + (error)
// and the stack keeps the Gram matrix sum_i G_hat_i G_hat_i^T, whose
// smallest eigenvalue measures how well the stored data excites theta.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "clobs/numerics.hpp"

namespace clobs {

struct DataPoint {
  Vec P;
  Vec F_hat;
  /// param_count x n
  Mat G_hat;
  double recorded_at = 0.0;
};

struct InsertOutcome {
  bool accepted = false;
  /// Slot written: the appended index or the replaced index.
  std::optional<std::size_t> slot;
  bool replaced = false;
  double smin_before = 0.0;
  double smin_after = 0.0;
};

class HistoryStack {
 public:
  HistoryStack(std::size_t capacity, std::size_t param_count, std::size_t state_dim);

  /// A full stack whose points are all zero (the usual cold start).
  static HistoryStack zero_filled(std::size_t capacity, std::size_t param_count,
                                  std::size_t state_dim);

  std::size_t capacity() const { return capacity_; }
  std::size_t param_count() const { return param_count_; }
  std::size_t state_dim() const { return state_dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool full() const { return points_.size() == capacity_; }

  const std::vector<DataPoint>& points() const { return points_; }
  const Mat& gram() const { return gram_; }
  double min_singular_value() const;

  /// Appends while there is room. Once full, replaces the slot j for which
  ///   s_min(gram - G_j G_j^T + G_j G_j^T) < s_min(gram - G_j G_j^T + G* G*^T) / (1 + zeta)
  /// holds and the resulting s_min is largest (lowest index on ties).
  /// Leaves the stack unchanged when no slot qualifies.
  InsertOutcome try_insert(DataPoint candidate, double zeta);

  void clear();

  /// sum_i G_i G_i^T from scratch, for checking the cached gram.
  Mat recompute_gram() const;

 private:
  void check_dims(const DataPoint& point) const;

  std::size_t capacity_;
  std::size_t param_count_;
  std::size_t state_dim_;
  std::vector<DataPoint> points_;
  Mat gram_;
};

/// True iff s_min(gram) > c_lower.
bool is_full_rank(const HistoryStack& stack, double c_lower);

struct PurgeSettings {
  /// tau1 + tau2: candidates this soon after a purge are ignored.
  double window_deadtime = 0.8;
  /// Minimum time between purges.
  double dwell_time = 1.6;
  /// Threshold fraction in (0, 1].
  double xi = 0.95;
  double zeta = 0.0;
  /// Lower bound for the full-rank test applied to the transient stack.
  double c_lower = 1e-6;
  /// T0; also the initial "last purge" time.
  double start_time = 0.0;
  /// Also require the transient stack to hold its full capacity of points.
  bool require_full_transient = false;

  void validate() const;
};

enum class StackEventKind { kIgnored, kAppended, kReplaced, kRejected, kPurged };

std::string_view to_string(StackEventKind kind);

struct StackEvent {
  double time = 0.0;
  StackEventKind kind = StackEventKind::kIgnored;
  /// Transient-stack slot for appends and replacements.
  std::optional<std::size_t> slot;
  /// Appends, replacements, rejections: transient s_min before/after.
  /// Purges: main s_min before/after the swap.
  double smin_before = 0.0;
  double smin_after = 0.0;

  friend bool operator==(const StackEvent&, const StackEvent&) = default;
};

struct PurgeTick {
  bool purged = false;
  std::vector<StackEvent> events;
};

/// Dual-stack purging with dwell time. New data goes into the transient
/// stack; once that stack is rich enough (full rank, and s_min at least
/// xi times the best s_min seen at a purge) and the dwell time has passed,
/// it replaces the main stack and recording starts over.
class PurgeController {
 public:
  PurgeController(HistoryStack main, std::size_t transient_capacity, PurgeSettings settings);

  /// Processes one time instant. A candidate is only considered when
  /// t > last_purge_time + window_deadtime.
  PurgeTick tick(double t, std::optional<DataPoint> candidate);

  /// False while candidates at t would be ignored.
  bool accepts_candidates_at(double t) const;

  const HistoryStack& main() const { return main_; }
  const HistoryStack& transient() const { return transient_; }
  double last_purge_time() const { return last_purge_time_; }
  double best_smin() const { return best_smin_; }
  const PurgeSettings& settings() const { return settings_; }

 private:
  HistoryStack main_;
  HistoryStack transient_;
  PurgeSettings settings_;
  double last_purge_time_;
  double best_smin_ = 0.0;
};

}  // namespace clobs
