// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/miesm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fdran/common/error.hpp"

namespace fdran {
namespace {

#include "bicm_table.inc"

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStepDb = 0.25;
constexpr double kDbToLn = std::numbers::ln10 / 10.0;

// Capacity C is kept as ln C below the half-capacity knot and as
// ln(Theta - C) above it, so both ends of the curve keep full precision.
class BicmCurve {
 public:
  template <std::size_t N>
  BicmCurve(int order, const double (&rows)[N][3]) : n_(static_cast<int>(N)) {
    theta_ = order;
    ln_theta_ = std::log(theta_);
    x_.resize(N);
    ln_c_.resize(N);
    ln_d_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      x_[i] = rows[i][0];
      ln_c_[i] = rows[i][1];
      ln_d_[i] = rows[i][2];
    }
    slope_c_ = pchip_slopes(ln_c_);
    slope_d_ = pchip_slopes(ln_d_);
    mid_ = 0;
    while (mid_ < n_ - 1 && ln_c_[static_cast<std::size_t>(mid_)] < ln_theta_ - std::numbers::ln2) ++mid_;
    const double s1 = db_to_lin(x_[N - 2]);
    const double s2 = db_to_lin(x_[N - 1]);
    tail_rate_ = (ln_d_[N - 2] - ln_d_[N - 1]) / (s2 - s1);
  }

  double theta() const { return theta_; }

  // ln C and ln D of one linear SNR.
  void eval(double s, double& ln_c, double& ln_d) const {
    if (!(s > 0.0)) {
      ln_c = -kInf;
      ln_d = ln_theta_;
      return;
    }
    if (std::isinf(s)) {
      ln_c = ln_theta_;
      ln_d = -kInf;
      return;
    }
    const double x = 10.0 * std::log10(s);
    if (x <= x_mid()) {
      ln_c = ln_c_at(x);
      ln_d = ln_theta_ + std::log1p(-std::exp(ln_c - ln_theta_));
    } else {
      ln_d = ln_d_at(x, s);
      ln_c = ln_theta_ + std::log1p(-std::exp(ln_d - ln_theta_));
    }
  }

  // Linear SNR whose capacity has the given (ln C, ln D) pair.
  double invert(double ln_c, double ln_d) const {
    if (ln_c <= ln_c_[static_cast<std::size_t>(mid_)]) {
      if (ln_c == -kInf) return 0.0;
      if (ln_c < ln_c_.front()) return db_to_lin(x_.front() + (ln_c - ln_c_.front()) / kDbToLn);
      const double x = bisect([&](double v) { return ln_c_at(v) < ln_c; }, x_.front(), x_mid());
      return db_to_lin(x);
    }
    if (ln_d == -kInf) return kInf;
    if (ln_d < ln_d_.back()) return db_to_lin(x_.back()) + (ln_d_.back() - ln_d) / tail_rate_;
    const double x = bisect([&](double v) { return ln_d_at(v, db_to_lin(v)) > ln_d; }, x_mid(), x_.back());
    return db_to_lin(x);
  }

 private:
  static double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

  double x_mid() const { return x_[static_cast<std::size_t>(mid_)]; }

  // Smallest x in [lo, hi] with below(x) false, to ~1e-13 dB.
  template <typename Pred>
  static double bisect(Pred below, double lo, double hi) {
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
      const double m = 0.5 * (lo + hi);
      if (below(m)) {
        lo = m;
      } else {
        hi = m;
      }
    }
    return 0.5 * (lo + hi);
  }

  static std::vector<double> pchip_slopes(const std::vector<double>& y) {
    const std::size_t n = y.size();
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / kStepDb;
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] > 0.0) d[i] = 2.0 / (1.0 / delta[i - 1] + 1.0 / delta[i]);
    }
    auto edge = [](double d0, double d1) {
      double v = (3.0 * d0 - d1) / 2.0;
      if (v * d0 <= 0.0) return 0.0;
      if (d0 * d1 < 0.0 && std::fabs(v) > 3.0 * std::fabs(d0)) return 3.0 * d0;
      return v;
    };
    d[0] = edge(delta[0], delta[1]);
    d[n - 1] = edge(delta[n - 2], delta[n - 3]);
    return d;
  }

  double hermite(const std::vector<double>& y, const std::vector<double>& d, double x) const {
    const double pos = (x - x_.front()) / kStepDb;
    auto k = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(n_ - 2)));
    const double t = pos - static_cast<double>(k);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[k] + (t3 - 2 * t2 + t) * kStepDb * d[k] + (-2 * t3 + 3 * t2) * y[k + 1] +
           (t3 - t2) * kStepDb * d[k + 1];
  }

  double ln_c_at(double x) const {
    if (x < x_.front()) return ln_c_.front() + (x - x_.front()) * kDbToLn;
    return hermite(ln_c_, slope_c_, x);
  }

  double ln_d_at(double x, double s) const {
    if (x > x_.back()) return ln_d_.back() - tail_rate_ * (s - db_to_lin(x_.back()));
    return hermite(ln_d_, slope_d_, x);
  }

  int n_;
  double theta_ = 0.0;
  double ln_theta_ = 0.0;
  std::vector<double> x_, ln_c_, ln_d_, slope_c_, slope_d_;
  int mid_ = 0;
  double tail_rate_ = 0.0;
};

const BicmCurve& curve(int modulation_order) {
  static const BicmCurve qpsk(2, kQpskTable);
  static const BicmCurve qam16(4, kQam16Table);
  static const BicmCurve qam64(6, kQam64Table);
  switch (modulation_order) {
    case 2: return qpsk;
    case 4: return qam16;
    case 6: return qam64;
    default: throw Error(ErrorCode::kInvalidArgument, "unsupported modulation order");
  }
}

// ln(mean(exp(v))) without overflow.
double log_mean_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (m == -kInf) return -kInf;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - m);
  return m + std::log(sum / static_cast<double>(v.size()));
}

}  // namespace

double bicm_capacity(double snr_linear, int modulation_order) {
  double ln_c, ln_d;
  curve(modulation_order).eval(snr_linear, ln_c, ln_d);
  return std::exp(ln_c);
}

double bicm_capacity_inverse(double capacity, int modulation_order) {
  const BicmCurve& c = curve(modulation_order);
  if (capacity < 0.0 || capacity > c.theta()) throw Error(ErrorCode::kInvalidArgument, "capacity out of range");
  return c.invert(std::log(capacity), std::log(c.theta() - capacity));
}

double effective_snr(std::span<const double> sinrs, double alpha, int modulation_order) {
  if (sinrs.empty()) throw Error(ErrorCode::kEmptyInput, "effective_snr needs at least one SINR");
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  const BicmCurve& c = curve(modulation_order);
  std::vector<double> ln_c(sinrs.size()), ln_d(sinrs.size());
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < sinrs.size(); ++i) {
    const double s = sinrs[i];
    if (std::isnan(s) || s < 0.0) throw Error(ErrorCode::kInvalidArgument, "SINR must be >= 0");
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    c.eval(s / alpha, ln_c[i], ln_d[i]);
  }
  const double s = alpha * c.invert(log_mean_exp(ln_c), log_mean_exp(ln_d));
  return std::clamp(s, lo, hi);
}

int determine_cqi(std::span<const double> sinrs, double alpha, const CqiTable& table) {
  double snr_db[7];
  bool have[7] = {false, false, false, false, false, false, false};
  for (int cqi = table.max_index(); cqi >= 1; --cqi) {
    const CqiEntry& e = table.at(cqi);
    const int q = e.modulation_order;
    if (!have[q]) {
      const double s = effective_snr(sinrs, alpha, q);
      snr_db[q] = s > 0.0 ? 10.0 * std::log10(s) : -kInf;
      have[q] = true;
    }
    if (snr_db[q] >= e.snr_threshold_db) return cqi;
  }
  return 0;
}

}  // namespace fdran
