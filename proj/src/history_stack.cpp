#include "clobs/history_stack.hpp"

#include <stdexcept>
#include <string>

namespace clobs {

namespace {

// Slack for comparing simulation times built from integer step counts.
constexpr double kTimeTol = 1e-9;

}  // namespace

HistoryStack::HistoryStack(std::size_t capacity, std::size_t param_count, std::size_t state_dim)
    : capacity_(capacity),
      param_count_(param_count),
      state_dim_(state_dim),
      gram_(param_count, param_count) {
  if (capacity == 0) throw std::invalid_argument("HistoryStack: capacity must be positive");
  if (param_count == 0 || state_dim == 0) {
    throw std::invalid_argument("HistoryStack: dimensions must be positive");
  }
  points_.reserve(capacity);
}

HistoryStack HistoryStack::zero_filled(std::size_t capacity, std::size_t param_count,
                                       std::size_t state_dim) {
  HistoryStack stack(capacity, param_count, state_dim);
  const DataPoint zero{Vec(state_dim), Vec(state_dim), Mat(param_count, state_dim), 0.0};
  stack.points_.assign(capacity, zero);
  return stack;
}

double HistoryStack::min_singular_value() const { return clobs::min_singular_value(gram_); }

void HistoryStack::check_dims(const DataPoint& point) const {
  if (point.P.size() != state_dim_ || point.F_hat.size() != state_dim_ ||
      point.G_hat.rows() != param_count_ || point.G_hat.cols() != state_dim_) {
    throw DimensionError("HistoryStack: data point shape does not match a " +
                         std::to_string(param_count_) + "x" + std::to_string(state_dim_) +
                         " stack");
  }
}

InsertOutcome HistoryStack::try_insert(DataPoint candidate, double zeta) {
  check_dims(candidate);
  InsertOutcome out;
  out.smin_before = min_singular_value();

  const Mat candidate_gram = gram_of(candidate.G_hat);
  if (!full()) {
    gram_ += candidate_gram;
    points_.push_back(std::move(candidate));
    out.accepted = true;
    out.slot = points_.size() - 1;
    out.smin_after = min_singular_value();
    return out;
  }

  std::optional<std::size_t> best_slot;
  Mat best_gram;
  double best_smin = 0.0;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const Mat slot_gram = gram_of(points_[j].G_hat);
    const Mat others = gram_ - slot_gram;
    // Both sides are formed from the same `others` so that an identical
    // candidate compares exactly equal.
    const double current = clobs::min_singular_value(others + slot_gram);
    Mat proposed = others + candidate_gram;
    const double improved = clobs::min_singular_value(proposed);
    if (current < improved / (1.0 + zeta) && (!best_slot || improved > best_smin)) {
      best_slot = j;
      best_smin = improved;
      best_gram = std::move(proposed);
    }
  }

  if (!best_slot) {
    out.smin_after = out.smin_before;
    return out;
  }
  points_[*best_slot] = std::move(candidate);
  gram_ = symmetrized(best_gram);
  out.accepted = true;
  out.replaced = true;
  out.slot = best_slot;
  out.smin_after = min_singular_value();
  return out;
}

void HistoryStack::clear() {
  points_.clear();
  gram_ = Mat(param_count_, param_count_);
}

Mat HistoryStack::recompute_gram() const {
  Mat g(param_count_, param_count_);
  for (const auto& point : points_) g += gram_of(point.G_hat);
  return g;
}

bool is_full_rank(const HistoryStack& stack, double c_lower) {
  return stack.min_singular_value() > c_lower;
}

void PurgeSettings::validate() const {
  if (!(window_deadtime > 0.0)) throw std::invalid_argument("purge: window deadtime must be > 0");
  if (!(dwell_time >= 0.0)) throw std::invalid_argument("purge: dwell time must be >= 0");
  if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("purge: xi must lie in (0, 1]");
  if (!(zeta >= 0.0)) throw std::invalid_argument("purge: zeta must be >= 0");
  if (!(c_lower > 0.0)) throw std::invalid_argument("purge: c_lower must be > 0");
}

std::string_view to_string(StackEventKind kind) {
  switch (kind) {
    case StackEventKind::kIgnored:
      return "ignored";
    case StackEventKind::kAppended:
      return "appended";
    case StackEventKind::kReplaced:
      return "replaced";
    case StackEventKind::kRejected:
      return "rejected";
    case StackEventKind::kPurged:
      return "purged";
  }
  return "unknown";
}

PurgeController::PurgeController(HistoryStack main, std::size_t transient_capacity,
                                 PurgeSettings settings)
    : main_(std::move(main)),
      transient_(transient_capacity, main_.param_count(), main_.state_dim()),
      settings_(settings),
      last_purge_time_(settings.start_time) {
  settings_.validate();
}

bool PurgeController::accepts_candidates_at(double t) const {
  return t > last_purge_time_ + settings_.window_deadtime + kTimeTol;
}

PurgeTick PurgeController::tick(double t, std::optional<DataPoint> candidate) {
  PurgeTick result;
  if (!candidate) return result;
  if (!accepts_candidates_at(t)) {
    const double s = transient_.min_singular_value();
    result.events.push_back({t, StackEventKind::kIgnored, std::nullopt, s, s});
    return result;
  }

  const InsertOutcome outcome = transient_.try_insert(std::move(*candidate), settings_.zeta);
  StackEventKind kind = StackEventKind::kRejected;
  if (outcome.accepted) kind = outcome.replaced ? StackEventKind::kReplaced
                                                : StackEventKind::kAppended;
  result.events.push_back({t, kind, outcome.slot, outcome.smin_before, outcome.smin_after});

  const double transient_smin = outcome.smin_after;
  const bool rich_enough = transient_smin >= settings_.xi * best_smin_ &&
                           transient_smin > settings_.c_lower &&
                           (!settings_.require_full_transient || transient_.full());
  const bool dwell_elapsed = t - last_purge_time_ >= settings_.dwell_time - kTimeTol;
  if (rich_enough && dwell_elapsed) {
    const double main_before = main_.min_singular_value();
    main_ = transient_;
    transient_.clear();
    last_purge_time_ = t;
    if (best_smin_ < transient_smin) best_smin_ = transient_smin;
    result.purged = true;
    result.events.push_back({t, StackEventKind::kPurged, std::nullopt, main_before,
                             main_.min_singular_value()});
  }
  return result;
}

}  // namespace clobs
