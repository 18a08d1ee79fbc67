#include "oscq/quadrature.hpp"

#include <map>

namespace oscq {

TanhSinhTable::TanhSinhTable(prec_t prec) : prec_(prec) {
  center_weight_ = BigReal::pi(prec) / 2L;
  // Endpoint singularities up to |x|^(-0.9) still leave a tail below 2^(-prec)
  // when the nodes stop at this distance from a zero endpoint.
  min_dist_ = BigReal::pow2(-10 * prec - 16, prec);
}

const std::vector<TanhSinhTable::Node>& TanhSinhTable::level(int k) {
  while (static_cast<int>(levels_.size()) <= k) {
    int lev = static_cast<int>(levels_.size());
    std::vector<Node> nodes;
    BigReal h = BigReal::pow2(-lev, prec_);
    BigReal half_pi = BigReal::pi(prec_) / 2L;
    for (long j = 1;; ++j) {
      if (lev > 0 && j % 2 == 0) continue;
      BigReal t = h * j;
      BigReal u = half_pi * sinh(t);
      BigReal e2u = exp(u * 2L);
      BigReal dist = BigReal(2L, prec_) / (e2u + 1L);
      if (dist < min_dist_) break;
      BigReal ch = cosh(u);
      BigReal w = half_pi * cosh(t) / (ch * ch);
      nodes.push_back({std::move(dist), std::move(w)});
    }
    levels_.push_back(std::move(nodes));
  }
  return levels_[k];
}

TanhSinhTable& TanhSinhTable::for_prec(prec_t prec) {
  thread_local std::map<prec_t, std::unique_ptr<TanhSinhTable>> cache;
  auto& slot = cache[prec];
  if (!slot) slot = std::make_unique<TanhSinhTable>(prec);
  return *slot;
}

}  // namespace oscq

namespace oscq {

FixedRule tanh_sinh_rule(const std::vector<BigReal>& points, int level, prec_t prec) {
  TanhSinhTable& table = TanhSinhTable::for_prec(prec);
  FixedRule rule;
  BigReal h = BigReal::pow2(-level, prec);
  for (std::size_t p = 0; p + 1 < points.size(); ++p) {
    BigReal a = points[p].with_prec(prec), b = points[p + 1].with_prec(prec);
    BigReal half = (b - a) / 2L;
    BigReal scale = h * half;
    auto too_close = [&](const BigReal& d, const BigReal& endpoint) {
      if (endpoint.is_zero()) return false;
      return d.exponent() < endpoint.exponent() - prec + 8;
    };
    rule.x.push_back(a + half);
    rule.w.push_back(table.center_weight() * scale);
    rule.dist.push_back(half);
    for (int k = 0; k <= level; ++k) {
      for (const auto& nd : table.level(k)) {
        BigReal d = half * nd.dist;
        BigReal w = nd.weight * scale;
        if (!too_close(d, a)) {
          rule.x.push_back(a + d);
          rule.w.push_back(w);
          rule.dist.push_back(d);
        }
        if (!too_close(d, b)) {
          rule.x.push_back(b - d);
          rule.w.push_back(w);
          rule.dist.push_back(d);
        }
      }
    }
  }
  return rule;
}

}  // namespace oscq
