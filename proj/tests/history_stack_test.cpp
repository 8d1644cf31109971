#include <doctest.h>

#include <random>

#include "clobs/history_stack.hpp"

using namespace clobs;

namespace {

DataPoint scalar_point(double g, double t = 0.0) {
  return DataPoint{Vec{0.0}, Vec{0.0}, Mat{{g}}, t};
}

DataPoint random_point(std::mt19937_64& rng, std::size_t p, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DataPoint d{Vec(n), Vec(n), Mat(p, n), 0.0};
  for (std::size_t i = 0; i < n; ++i) d.P[i] = u(rng);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < n; ++j) d.G_hat(i, j) = u(rng);
  return d;
}

PurgeSettings scripted_settings() {
  PurgeSettings s;
  s.window_deadtime = 1.0;
  s.dwell_time = 3.0;
  s.xi = 0.5;
  s.zeta = 0.0;
  s.c_lower = 0.5;
  s.start_time = 0.0;
  return s;
}

}  // namespace

TEST_CASE("stack appends while there is room") {
  HistoryStack stack(3, 2, 1);
  const auto out = stack.try_insert(DataPoint{Vec{1.0}, Vec{0.0}, Mat{{1.0}, {0.0}}, 0.0}, 0.0);
  CHECK(out.accepted);
  CHECK_FALSE(out.replaced);
  CHECK(out.slot == 0u);
  CHECK(stack.size() == 1);
  CHECK(stack.min_singular_value() == 0.0);
  stack.try_insert(DataPoint{Vec{1.0}, Vec{0.0}, Mat{{0.0}, {2.0}}, 0.0}, 0.0);
  CHECK(stack.min_singular_value() == doctest::Approx(1.0));
}

TEST_CASE("zero-filled stack accepts an identity candidate") {
  HistoryStack stack = HistoryStack::zero_filled(3, 2, 2);
  CHECK(stack.full());
  const auto out = stack.try_insert(DataPoint{Vec(2), Vec(2), Mat::identity(2), 0.0}, 0.0);
  CHECK(out.accepted);
  CHECK(out.replaced);
  CHECK(out.slot == 0u);
  CHECK(out.smin_before == 0.0);
  CHECK(out.smin_after == doctest::Approx(1.0));
}

TEST_CASE("identical candidate is rejected with zeta = 0") {
  HistoryStack stack(2, 1, 1);
  stack.try_insert(scalar_point(1.0), 0.0);
  stack.try_insert(scalar_point(2.0), 0.0);
  const auto out = stack.try_insert(scalar_point(1.0), 0.0);
  CHECK_FALSE(out.accepted);
  CHECK(out.smin_after == out.smin_before);
  CHECK(stack.points()[0].G_hat(0, 0) == 1.0);
}

TEST_CASE("replacement picks the slot with the largest resulting s_min") {
  HistoryStack stack(2, 1, 1);
  stack.try_insert(scalar_point(1.0), 0.0);
  stack.try_insert(scalar_point(0.5), 0.0);
  // Replacing slot 1 gives 1 + 4, slot 0 gives 0.25 + 4.
  const auto out = stack.try_insert(scalar_point(2.0), 0.0);
  CHECK(out.replaced);
  CHECK(out.slot == 1u);
  CHECK(out.smin_after == 5.0);
}

TEST_CASE("zeta demands a relative improvement") {
  HistoryStack stack(1, 1, 1);
  stack.try_insert(scalar_point(1.0), 0.0);
  CHECK_FALSE(stack.try_insert(scalar_point(1.2), 0.5).accepted);  // 1.44 / 1.5 < 1
  CHECK(stack.try_insert(scalar_point(1.3), 0.5).accepted);        // 1.69 / 1.5 > 1
}

TEST_CASE("is_full_rank examples") {
  HistoryStack stack(2, 2, 2);
  stack.try_insert(DataPoint{Vec(2), Vec(2), Mat::identity(2), 0.0}, 0.0);
  CHECK(is_full_rank(stack, 0.5));
  CHECK_FALSE(is_full_rank(stack, 1.0));
  CHECK_FALSE(is_full_rank(HistoryStack::zero_filled(2, 2, 2), 1e-12));
}

TEST_CASE("shape mismatches are rejected") {
  HistoryStack stack(2, 2, 1);
  CHECK_THROWS_AS(stack.try_insert(scalar_point(1.0), 0.0), DimensionError);
  CHECK_THROWS_AS(HistoryStack(0, 1, 1), std::invalid_argument);
}

TEST_CASE("cached gram tracks the stored points and s_min never drops") {
  std::mt19937_64 rng(42);
  HistoryStack stack(20, 4, 2);
  double last = 0.0;
  for (int i = 0; i < 10000; ++i) {
    stack.try_insert(random_point(rng, 4, 2), 0.0);
    const double now = stack.min_singular_value();
    REQUIRE(now >= last - 1e-12);
    last = now;
    if (i % 97 == 0) REQUIRE(frobenius_norm(stack.gram() - stack.recompute_gram()) <= 1e-10);
  }
  CHECK(frobenius_norm(stack.gram() - stack.recompute_gram()) <= 1e-10);
}

TEST_CASE("purge controller ignores candidates inside the dead time") {
  PurgeController pc(HistoryStack::zero_filled(2, 1, 1), 2, scripted_settings());
  CHECK_FALSE(pc.accepts_candidates_at(1.0));
  CHECK(pc.accepts_candidates_at(1.05));
  const PurgeTick tick = pc.tick(0.5, scalar_point(1.0));
  REQUIRE(tick.events.size() == 1);
  CHECK(tick.events[0].kind == StackEventKind::kIgnored);
  CHECK(pc.transient().empty());
  CHECK(pc.tick(2.0, std::nullopt).events.empty());
}

TEST_CASE("purge needs the dwell time, the xi threshold and c_lower") {
  PurgeController pc(HistoryStack::zero_filled(2, 1, 1), 2, scripted_settings());
  // Rich enough but inside the dwell time.
  CHECK_FALSE(pc.tick(1.5, scalar_point(2.0)).purged);
  // Dwell time elapsed.
  const PurgeTick tick = pc.tick(3.0, scalar_point(0.1));
  CHECK(tick.purged);
  CHECK(pc.main().min_singular_value() == doctest::Approx(4.01));
  CHECK(pc.transient().empty());
  CHECK(pc.last_purge_time() == 3.0);
  CHECK(pc.best_smin() == doctest::Approx(4.01));
}

TEST_CASE("purge waits for s_min above c_lower") {
  PurgeController pc(HistoryStack::zero_filled(2, 1, 1), 2, scripted_settings());
  CHECK_FALSE(pc.tick(3.5, scalar_point(0.5)).purged);  // 0.25 <= 0.5
  CHECK(pc.tick(4.0, scalar_point(0.6)).purged);        // 0.61 > 0.5
}

TEST_CASE("purge can be made to wait for a full transient stack") {
  PurgeSettings s = scripted_settings();
  s.require_full_transient = true;
  PurgeController pc(HistoryStack::zero_filled(2, 1, 1), 2, s);
  CHECK_FALSE(pc.tick(3.5, scalar_point(2.0)).purged);
  CHECK(pc.tick(4.0, scalar_point(2.0)).purged);
}

TEST_CASE("purge settings are validated") {
  PurgeSettings s = scripted_settings();
  s.xi = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = scripted_settings();
  s.c_lower = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("purge controller invariants under random candidates") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution has_candidate(0.8);
  PurgeSettings s;
  s.window_deadtime = 0.2;
  s.dwell_time = 0.6;
  s.xi = 0.9;
  s.c_lower = 1e-3;
  PurgeController pc(HistoryStack::zero_filled(8, 3, 2), 8, s);
  double best = 0.0;
  std::optional<double> previous_purge;
  for (int k = 1; k <= 10000; ++k) {
    const double t = 0.01 * k;
    const Mat transient_gram = pc.transient().gram();
    std::optional<DataPoint> candidate;
    if (has_candidate(rng)) candidate = random_point(rng, 3, 2);
    const PurgeTick tick = pc.tick(t, candidate);
    REQUIRE(pc.best_smin() >= best);
    best = pc.best_smin();
    if (tick.purged) {
      REQUIRE(pc.transient().empty());
      REQUIRE(pc.main().min_singular_value() > s.c_lower);
      if (previous_purge) REQUIRE(t - *previous_purge >= s.dwell_time - 1e-9);
      previous_purge = t;
    } else if (!candidate || !pc.accepts_candidates_at(t)) {
      REQUIRE(pc.transient().gram() == transient_gram);
    }
  }
  CHECK(previous_purge.has_value());
}
