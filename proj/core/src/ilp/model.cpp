// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/ilp/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "common/int128.hpp"
#include "fdran/common/error.hpp"

namespace fdran {

std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::kCapacity: return "capacity";
    case RowKind::kLinking: return "linking";
    case RowKind::kCompatibility: return "compat";
    case RowKind::kAtMostOne: return "atmostone";
    case RowKind::kDemand: return "demand";
  }
  return "?";
}

std::vector<CoopSet> enumerate_coop_sets(int m) {
  if (m < 1 || m > 16) throw Error(ErrorCode::kInvalidArgument, "M must be in 1..16");
  std::vector<CoopSet> out;
  for (CoopMask mask = 1; mask < (1u << m); ++mask) out.push_back({mask, std::popcount(mask)});
  std::stable_sort(out.begin(), out.end(), [](const CoopSet& a, const CoopSet& b) {
    return a.size != b.size ? a.size < b.size : a.mask < b.mask;
  });
  return out;
}

int IlpModel::set_position(CoopMask mask) const {
  for (int s = 0; s < num_sets(); ++s) {
    if (sets[static_cast<std::size_t>(s)].mask == mask) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown cooperation mask");
}

std::int64_t IlpModel::rate(int set, int user) const {
  return users[static_cast<std::size_t>(user)].rates[sets[static_cast<std::size_t>(set)].mask - 1];
}

IlpModel build_ilp(const std::vector<LightUser>& users, int m, std::int64_t k, double power, double lambda) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  if (lambda < static_cast<double>(k)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= K");
  if (!(power > 0.0)) throw Error(ErrorCode::kInvalidArgument, "power must be > 0");
  IlpModel model;
  model.m = m;
  model.k = k;
  model.power = power;
  model.lambda_config = lambda;
  model.lambda = std::min(lambda, static_cast<double>(k));
  model.sets = enumerate_coop_sets(m);
  model.users = users;
  const std::size_t set_count = model.sets.size();
  for (const auto& u : users) {
    if (u.rates.size() != set_count) {
      throw Error(ErrorCode::kIncompleteRateMap, "user " + std::to_string(u.user_id) + " lacks rates for some sets");
    }
    for (auto r : u.rates) {
      if (r < 0) throw Error(ErrorCode::kIncompleteRateMap, "negative rate for user " + std::to_string(u.user_id));
    }
    if (u.demand < 0) throw Error(ErrorCode::kInvalidArgument, "negative demand");
  }
  const int n = model.num_users();
  const int s_count = model.num_sets();
  model.vars.resize(static_cast<std::size_t>(2 * s_count * n));
  model.objective.assign(model.vars.size(), 0.0);
  for (int s = 0; s < s_count; ++s) {
    for (int u = 0; u < n; ++u) {
      model.vars[static_cast<std::size_t>(model.select_index(s, u))] = {VarKind::kSelect, u, s, 0.0, 1.0};
      model.vars[static_cast<std::size_t>(model.alloc_index(s, u))] = {VarKind::kAlloc, u, s, 0.0,
                                                                        static_cast<double>(k)};
      model.objective[static_cast<std::size_t>(model.alloc_index(s, u))] =
          power * model.sets[static_cast<std::size_t>(s)].size;
    }
  }
  auto add = [&](RowKind kind, std::vector<std::pair<int, double>> coefs, Sense sense, double rhs) {
    model.rows.push_back({kind, LinearRow{std::move(coefs), sense, rhs}});
  };
  {
    std::vector<std::pair<int, double>> c;
    for (int s = 0; s < s_count; ++s) {
      for (int u = 0; u < n; ++u) c.emplace_back(model.alloc_index(s, u), 1.0);
    }
    add(RowKind::kCapacity, std::move(c), Sense::kLe, static_cast<double>(k));
  }
  for (int s = 0; s < s_count; ++s) {
    for (int u = 0; u < n; ++u) {
      add(RowKind::kLinking, {{model.alloc_index(s, u), 1.0}, {model.select_index(s, u), -model.lambda}}, Sense::kLe,
          0.0);
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int s = 0; s < s_count; ++s) {
      const CoopSet& b = model.sets[static_cast<std::size_t>(s)];
      for (int t = 0; t < s_count; ++t) {
        const CoopSet& bp = model.sets[static_cast<std::size_t>(t)];
        if (bp.size < b.size && (bp.mask & ~b.mask) != 0) {
          add(RowKind::kCompatibility, {{model.select_index(s, u), 1.0}, {model.select_index(t, u), 1.0}}, Sense::kLe,
              1.0);
        }
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int q = 1; q <= m; ++q) {
      std::vector<std::pair<int, double>> c;
      for (int s = 0; s < s_count; ++s) {
        if (model.sets[static_cast<std::size_t>(s)].size == q) c.emplace_back(model.select_index(s, u), 1.0);
      }
      add(RowKind::kAtMostOne, std::move(c), Sense::kLe, 1.0);
    }
  }
  for (int u = 0; u < n; ++u) {
    std::vector<std::pair<int, double>> c;
    for (int s = 0; s < s_count; ++s) {
      const auto r = model.rate(s, u);
      if (r > 0) c.emplace_back(model.alloc_index(s, u), static_cast<double>(r));
    }
    add(RowKind::kDemand, std::move(c), Sense::kGe, static_cast<double>(users[static_cast<std::size_t>(u)].demand));
  }
  return model;
}

std::string IlpModel::dump() const {
  std::ostringstream os;
  for (const auto& r : rows) os << to_string(r.kind) << ' ' << format_row(r.row) << '\n';
  return os.str();
}

LpProblem IlpModel::relaxation() const {
  LpProblem lp;
  lp.objective = objective;
  for (const auto& v : vars) {
    lp.lower.push_back(v.lower);
    lp.upper.push_back(v.upper);
  }
  for (const auto& r : rows) {
    LinearRow row = r.row;
    if (r.kind == RowKind::kDemand) {
      double scale = 0.0;
      for (const auto& [j, a] : row.coefs) scale = std::max(scale, std::fabs(a));
      if (scale > 0.0) {
        for (auto& [j, a] : row.coefs) a /= scale;
        row.rhs /= scale;
      }
    }
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

CheckResult check_assignment(const IlpModel& model, const IntAssignment& a) {
  if (a.values.size() != model.vars.size()) throw Error(ErrorCode::kDimensionMismatch, "assignment size mismatch");
  CheckResult res;
  res.bounds_ok = true;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    const auto v = static_cast<double>(a.values[j]);
    if (v < model.vars[j].lower || v > model.vars[j].upper) res.bounds_ok = false;
  }
  // All model coefficients and right-hand sides are integers; check exactly.
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const LinearRow& row = model.rows[i].row;
    i128 lhs = 0;
    for (const auto& [j, c] : row.coefs) {
      lhs += static_cast<i128>(std::llround(c)) * a.values[static_cast<std::size_t>(j)];
    }
    const auto rhs = static_cast<i128>(std::llround(row.rhs));
    bool ok = true;
    switch (row.sense) {
      case Sense::kLe: ok = lhs <= rhs; break;
      case Sense::kGe: ok = lhs >= rhs; break;
      case Sense::kEq: ok = lhs == rhs; break;
    }
    if (!ok) res.violated_rows.push_back(static_cast<int>(i));
  }
  res.feasible = res.bounds_ok && res.violated_rows.empty();
  return res;
}

std::int64_t energy_units(const IlpModel& model, const IntAssignment& a) {
  std::int64_t units = 0;
  for (int s = 0; s < model.num_sets(); ++s) {
    for (int u = 0; u < model.num_users(); ++u) {
      units += model.sets[static_cast<std::size_t>(s)].size * a.values[static_cast<std::size_t>(model.alloc_index(s, u))];
    }
  }
  return units;
}

double energy(const IlpModel& model, const IntAssignment& a) {
  return model.power * static_cast<double>(energy_units(model, a));
}

IntAssignment jt_all_assignment(const IlpModel& model) {
  IntAssignment a;
  a.values.assign(model.vars.size(), 0);
  const int full = model.num_sets() - 1;
  for (int u = 0; u < model.num_users(); ++u) {
    const std::int64_t d = model.users[static_cast<std::size_t>(u)].demand;
    if (d <= 0) continue;
    const std::int64_t r = model.rate(full, u);
    if (r <= 0) throw Error(ErrorCode::kInvalidArgument, "user has no JT-of-all rate");
    a.values[static_cast<std::size_t>(model.select_index(full, u))] = 1;
    a.values[static_cast<std::size_t>(model.alloc_index(full, u))] = (d + r - 1) / r;
  }
  return a;
}

std::vector<std::vector<std::pair<CoopMask, std::int64_t>>> assignment_segments(const IlpModel& model,
                                                                               const IntAssignment& a) {
  std::vector<std::vector<std::pair<CoopMask, std::int64_t>>> out(static_cast<std::size_t>(model.num_users()));
  for (int u = 0; u < model.num_users(); ++u) {
    for (int s = 0; s < model.num_sets(); ++s) {
      const auto o = a.values[static_cast<std::size_t>(model.alloc_index(s, u))];
      if (o > 0) out[static_cast<std::size_t>(u)].emplace_back(model.sets[static_cast<std::size_t>(s)].mask, o);
    }
  }
  return out;
}

IntAssignment assignment_from_segments(const IlpModel& model,
                                       const std::vector<std::vector<std::pair<CoopMask, std::int64_t>>>& segs) {
  if (segs.size() != static_cast<std::size_t>(model.num_users())) {
    throw Error(ErrorCode::kDimensionMismatch, "one segment list per user required");
  }
  IntAssignment a;
  a.values.assign(model.vars.size(), 0);
  for (int u = 0; u < model.num_users(); ++u) {
    for (const auto& [mask, count] : segs[static_cast<std::size_t>(u)]) {
      const int s = model.set_position(mask);
      a.values[static_cast<std::size_t>(model.select_index(s, u))] = 1;
      a.values[static_cast<std::size_t>(model.alloc_index(s, u))] += count;
    }
  }
  return a;
}

}  // namespace fdran
