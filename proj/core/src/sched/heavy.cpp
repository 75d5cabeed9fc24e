// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sched/heavy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "fdran/common/error.hpp"

namespace fdran {
namespace {

struct QueueItem {
  double weight;
  int user_id;
  bool tail;
  std::size_t user_index;
  std::int64_t units;
};

// Max-heap order: larger weight, then lower user id, then head before tail.
struct QueueLess {
  bool operator()(const QueueItem& a, const QueueItem& b) const {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.user_id != b.user_id) return a.user_id > b.user_id;
    return a.tail && !b.tail;
  }
};

std::priority_queue<QueueItem, std::vector<QueueItem>, QueueLess> build_queue(
    const std::vector<UserDemand>& users, const std::vector<std::int64_t>& mandatory) {
  std::priority_queue<QueueItem, std::vector<QueueItem>, QueueLess> q;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const UserDemand& u = users[i];
    const std::int64_t kd = u.required_subcarriers();
    const GreedyWeights w = greedy_weight(u);
    const std::int64_t head_left = std::max<std::int64_t>(0, (kd - 1) - mandatory[i]);
    const std::int64_t tail_left = mandatory[i] < kd ? 1 : 0;
    if (head_left > 0) q.push({w.head, u.user_id, false, i, head_left});
    if (tail_left > 0) q.push({w.tail, u.user_id, true, i, tail_left});
  }
  return q;
}

}  // namespace

std::int64_t UserDemand::required_subcarriers() const {
  if (rate_per_subcarrier <= 0) throw Error(ErrorCode::kInvalidArgument, "rate_per_subcarrier must be > 0");
  if (demand_rate <= 0) return 0;
  return (demand_rate + rate_per_subcarrier - 1) / rate_per_subcarrier;
}

void UserDemand::validate() const {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorCode::kInvalidArgument, "user " + std::to_string(user_id) + ": weight must be > 0");
  }
  if (demand_rate <= 0) throw Error(ErrorCode::kInvalidArgument, "user " + std::to_string(user_id) + ": demand must be > 0");
  if (rate_per_subcarrier <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "user " + std::to_string(user_id) + ": rate_per_subcarrier must be > 0");
  }
}

GreedyWeights greedy_weight(const UserDemand& u) {
  u.validate();
  const double ratio = static_cast<double>(u.rate_per_subcarrier) / static_cast<double>(u.demand_rate);
  const std::int64_t kd = u.required_subcarriers();
  GreedyWeights w;
  w.head = u.weight * ratio;
  w.tail = u.weight * (1.0 - static_cast<double>(kd - 1) * ratio);
  return w;
}

double satisfaction_rate(const UserDemand& u, std::int64_t x) {
  if (u.demand_rate <= 0) return 1.0;
  const double eta = static_cast<double>(x) * static_cast<double>(u.rate_per_subcarrier) /
                     static_cast<double>(u.demand_rate);
  return std::min(eta, 1.0);
}

std::vector<std::int64_t> fairness_preallocate(const std::vector<UserDemand>& users, double eta_min, std::int64_t k) {
  if (!(eta_min >= 0.0 && eta_min <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "eta_min must be in [0, 1]");
  std::vector<std::int64_t> k0(users.size(), 0);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    users[i].validate();
    const double need = eta_min * static_cast<double>(users[i].demand_rate) /
                        static_cast<double>(users[i].rate_per_subcarrier);
    const auto units = static_cast<std::int64_t>(std::ceil(need - 1e-9));
    k0[i] = std::clamp<std::int64_t>(units, 0, users[i].required_subcarriers());
    total += k0[i];
  }
  if (total > k) {
    throw Error(ErrorCode::kFairnessInfeasible,
                "mandatory units " + std::to_string(total) + " exceed " + std::to_string(k) + " subcarriers");
  }
  return k0;
}

std::vector<GreedySegment> greedy_segments(const std::vector<UserDemand>& users,
                                           const std::vector<std::int64_t>& mandatory) {
  auto q = build_queue(users, mandatory);
  std::vector<GreedySegment> out;
  while (!q.empty()) {
    const QueueItem it = q.top();
    q.pop();
    out.push_back({it.user_id, it.weight, it.units});
  }
  return out;
}

HeavyAllocation greedy_schedule(const std::vector<UserDemand>& users, std::int64_t k, double eta_min) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative subcarrier count");
  for (std::size_t i = 0; i < users.size(); ++i) {
    for (std::size_t j = i + 1; j < users.size(); ++j) {
      if (users[i].user_id == users[j].user_id) throw Error(ErrorCode::kInvalidArgument, "duplicate user id");
    }
  }
  HeavyAllocation out;
  out.mandatory = fairness_preallocate(users, eta_min, k);
  out.subcarriers = out.mandatory;
  std::int64_t remaining = k;
  for (auto v : out.mandatory) remaining -= v;

  auto q = build_queue(users, out.mandatory);
  while (remaining > 0 && !q.empty()) {
    const QueueItem it = q.top();
    q.pop();
    const std::int64_t take = std::min(it.units, remaining);
    out.subcarriers[it.user_index] += take;
    remaining -= take;
  }
  out.satisfaction.resize(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    out.satisfaction[i] = satisfaction_rate(users[i], out.subcarriers[i]);
    out.objective += users[i].weight * out.satisfaction[i];
  }
  return out;
}

}  // namespace fdran
