#include "oscq/parametrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscq/errors.hpp"
#include "oscq/quadrature.hpp"
#include "oscq/special.hpp"
#include "oscq/zeros.hpp"

namespace oscq {

namespace {

bool on_interval(const BigComplex& z) { return z.im().is_zero() && abs(z.re()) <= 1L; }

void require_off_interval(const BigComplex& z, const char* what) {
  if (on_interval(z)) throw DomainError(std::string(what) + ": z lies on the cut [-1,1]");
}

BigReal sqrt2n(long n, prec_t p) { return sqrt(BigReal(2 * n, p)); }

}  // namespace

BigComplex sqrt_z2m1(const BigComplex& z) {
  // the two cuts of the factors cancel on (-inf,-1)
  return sqrt(z - 1L) * sqrt(z + 1L);
}

BigComplex conformal_f(const BigComplex& z) { return z + sqrt_z2m1(z); }

BigComplex beta_fn(const BigComplex& z) {
  require_off_interval(z, "beta");
  return pow((z - 1L) / (z + 1L), BigReal::ratio(1, 4, z.prec()));
}

BigComplex w_weight(const BigComplex& z, long n, const BigReal& nu, prec_t prec) {
  if (z.re().is_zero()) throw DomainError("W_n is cut along the imaginary axis; use w_weight_imag_axis");
  BigComplex arg = z.with_prec(prec) * (BigReal::pi(prec) * n);
  if (z.re().sign() < 0) arg = -arg;
  return bessel_k_scaled(nu, arg, prec) * sqrt2n(n, prec);
}

BigComplex w_weight_imag_axis(const BigReal& y, Side side, long n, const BigReal& nu, prec_t prec) {
  if (y.is_zero()) throw DomainError("W_n on the imaginary axis needs y != 0");
  // Plus: continuation from Re z < 0, argument -n pi z; Minus: from Re z > 0
  BigReal t = y.with_prec(prec) * BigReal::pi(prec) * n;
  if (side == Side::Plus) t = -t;
  return bessel_k_scaled(nu, BigComplex(BigReal(prec), t), prec) * sqrt2n(n, prec);
}

BigReal log_w_weight(const BigReal& x, long n, const BigReal& nu, prec_t prec) {
  if (x.is_zero()) throw DomainError("log W_n is singular at 0");
  BigReal t = abs(x.with_prec(prec)) * BigReal::pi(prec) * n;
  return log(BigReal(2 * n, prec)) / 2L + log(bessel_k_scaled(nu, t, prec));
}

BigComplex szego_power(const BigComplex& z, const BigReal& alpha) {
  require_off_interval(z, "szego_power");
  if (!(alpha > -1L)) throw DomainError("szego_power needs alpha > -1");
  if (alpha.is_zero()) return BigComplex(BigReal(1L, z.prec()));
  return exp(log(z / conformal_f(z)) * (alpha / 2L));
}

// ---------------------------------------------------------------- D1

SzegoD1::SzegoD1(long n, const BigReal& nu, const D1Options& opt) : n_(n), nu_(nu), opt_(opt) {
  if (n < 1) throw DomainError("D1 needs n >= 1");
  if (!(opt.y_min > 0 && opt.y_min < 0.25)) throw DomainError("D1 needs 0 < y_min < 1/4");
  const prec_t p = opt_.prec;
  y_min_ = BigReal(opt.y_min, p);
  const long tol = opt_.tol_bits > 0 ? opt_.tol_bits : p - 24;

  struct Node {
    BigReal x, w, f;
    int level;
  };
  std::vector<Node> nodes;
  TanhSinhTable& table = TanhSinhTable::for_prec(p);
  BigReal prune = BigReal::pow2(-(p + 24), p);
  auto pts = mesh();

  auto add_level = [&](int k) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const BigReal& a = pts[i];
      const BigReal& b = pts[i + 1];
      BigReal half = (b - a) / 2L;
      bool last = (b == 1L);
      if (k == 0) {
        BigReal x = a + half;
        nodes.push_back({x, table.center_weight() * half, integrand(x, last ? half : 1L - x), 0});
      }
      for (const auto& nd : table.level(k)) {
        if (nd.weight < prune) continue;
        BigReal d = half * nd.dist;
        BigReal w = nd.weight * half;
        if (a.is_zero() || d.exponent() >= a.exponent() - p + 8) {
          BigReal x = a + d;
          nodes.push_back({x, w, integrand(x, 1L - x), k});
        }
        if (d.exponent() >= b.exponent() - p + 8) {
          BigReal x = b - d;
          nodes.push_back({x, w, integrand(x, last ? d : 1L - x), k});
        }
      }
    }
  };

  // probes: the plain integral and the kernel y/(x^2+y^2) at a few scales
  std::vector<BigReal> probes{y_min_ * 2L, BigReal(1L, p) / (BigReal::pi(p) * n), BigReal(0.3, p)};
  // and 1/(z^2-x^2) at the closest points the table is trusted with (see uses_table)
  std::vector<BigComplex> cprobes{BigComplex(BigReal(1L, p), BigReal(0.25, p))};
  for (int j = 0; j < 8; ++j) {
    BigReal u = BigReal(0.75, p) * BigReal::pow2(-j, p);
    cprobes.emplace_back(u, u / 4L);
  }
  auto probe_sums = [&](int max_lvl) {
    std::vector<BigReal> s(probes.size() + 2 * cprobes.size() + 1, BigReal(p));
    for (const auto& nd : nodes) {
      if (nd.level > max_lvl) continue;
      BigReal wf = nd.w * nd.f;
      s[0] += wf;
      for (std::size_t j = 0; j < probes.size(); ++j) s[j + 1] += wf * probes[j] / (nd.x * nd.x + probes[j] * probes[j]);
      for (std::size_t j = 0; j < cprobes.size(); ++j) {
        BigComplex q = wf / ((cprobes[j] - nd.x) * (cprobes[j] + nd.x));
        s[probes.size() + 1 + 2 * j] += q.re();
        s[probes.size() + 2 + 2 * j] += q.im();
      }
    }
    return s;
  };

  int k = 0;
  bool converged = false;
  for (; k <= opt_.max_level; ++k) {
    add_level(k);
    if (k < std::max(opt_.min_level, 1)) continue;
    auto now = probe_sums(k);
    auto prev = probe_sums(k - 1);
    converged = true;
    for (std::size_t j = 0; j < now.size(); ++j) {
      // level k-1 has twice the step of level k
      BigReal diff = abs(now[j] - prev[j] * 2L) / 2L;
      BigReal scale = max(abs(now[j]), BigReal(1L, p));
      if (diff > scale * BigReal::pow2(-(tol / 2 + 2), p)) converged = false;
    }
    if (converged) break;
  }
  if (!converged)
    throw QuadratureError("D1 node table did not converge", 0.0);
  level_ = k;
  BigReal h = BigReal::pow2(-level_, p);
  x_.reserve(nodes.size());
  wf_.reserve(nodes.size());
  BigReal total(p);
  for (const auto& nd : nodes) {
    x_.push_back(nd.x);
    wf_.push_back(nd.w * nd.f * h);
    total += wf_.back();
  }
  d_infty_ = exp(total / BigReal::pi(p));
}

std::vector<BigReal> SzegoD1::mesh() const {
  const prec_t p = opt_.prec;
  long depth = static_cast<long>(std::ceil(std::log2(1.0 / opt_.y_min)));
  std::vector<BigReal> pts{BigReal(p)};
  for (long k = depth; k >= 1; --k) pts.push_back(BigReal::pow2(-k, p));
  pts.emplace_back(1L, p);
  // scale break where n pi x = 1
  BigReal xs = BigReal(1L, p) / (BigReal::pi(p) * n_);
  auto it = std::lower_bound(pts.begin(), pts.end(), xs);
  bool near = false;
  if (it != pts.end() && abs(*it - xs) < xs / 8L) near = true;
  if (it != pts.begin() && abs(*(it - 1) - xs) < xs / 8L) near = true;
  if (!near) pts.insert(it, xs);
  return pts;
}

BigReal SzegoD1::integrand(const BigReal& x, const BigReal& one_minus_x) const {
  return log_w_weight(x, n_, nu_, opt_.prec) / sqrt(one_minus_x * (x + 1L));
}

bool SzegoD1::uses_table(const BigComplex& z) const {
  BigReal u = abs(z.re()), v = abs(z.im());
  BigReal dd = u <= 1L ? v : hypot(u - 1L, v);
  BigReal need = max(min(u, BigReal(1L, u.prec())) / 4L, y_min_ * 2L);
  return dd >= need;
}

BigComplex SzegoD1::exponent_table(const BigComplex& z) const {
  const prec_t p = opt_.prec;
  BigReal pi = BigReal::pi(p);
  if (z.re().is_zero()) {
    // z = iy: y sqrt(1+y^2)/pi * int_0^1 F(x)/(x^2+y^2), real
    BigReal y = z.im().with_prec(p);
    BigReal y2 = y * y;
    BigReal s(p);
    for (std::size_t i = 0; i < x_.size(); ++i) s += wf_[i] / (x_[i] * x_[i] + y2);
    return BigComplex(s * y * sqrt(y2 + 1L) / pi, BigReal(p));
  }
  BigComplex zw = z.with_prec(p);
  BigComplex s(p);
  for (std::size_t i = 0; i < x_.size(); ++i) s = s + wf_[i] / ((zw - x_[i]) * (zw + x_[i]));
  return sqrt_z2m1(zw) * zw * s / pi;
}

BigComplex SzegoD1::exponent_adaptive(const BigComplex& z) const {
  const prec_t p = opt_.prec;
  QuadOptions q;
  q.prec = p;
  q.tol_bits = opt_.tol_bits > 0 ? opt_.tol_bits : p - 24;
  q.max_level = 14;
  q.keep_endpoint_nodes = true;  // every distance below is exact
  BigComplex zw = z.with_prec(p);
  BigReal u = abs(zw.re()), v = abs(zw.im());
  // fold into the first quadrant: D1(-z) = D1(z), D1(conj z) = conj D1(z)
  BigComplex zq(u, v);
  auto pts = mesh();
  if (u > 0L && u < 1L) {
    pts.push_back(u);
    BigReal step = v;
    for (int j = 0; j < 200 && step < 1L; ++j, step *= 2L) {
      if (u - step > 0L) pts.push_back(u - step);
      if (u + step < 1L) pts.push_back(u + step);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](const BigReal& a, const BigReal& b) { return a == b; }),
            pts.end());
  const BigReal& last = pts[pts.size() - 2];
  BigComplex sum(p);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    // u - x from the exact offset inside the piece; z^2 - x^2 in factored form.
    // Both matter when z hugs the interval.
    BigReal ua = u - pts[i];
    auto r = tanh_sinh<BigComplex>(
        [&](const BigReal& x, const BigReal& da, const BigReal& db) {
          BigComplex zmx(ua - da, v);
          return integrand(x, x > last ? db : 1L - x) / (zmx * (zq + x));
        },
        pts[i], pts[i + 1], q);
    sum = sum + r.value;
  }
  BigComplex e = sqrt_z2m1(zq) * zq * sum / BigReal::pi(p);
  // second and fourth quadrants map to the first through a conjugation
  return zw.im().sign() * zw.re().sign() < 0 ? conj(e) : e;
}

BigComplex SzegoD1::operator()(const BigComplex& z) const {
  require_off_interval(z, "D1");
  return exp(uses_table(z) ? exponent_table(z) : exponent_adaptive(z));
}

BigComplex SzegoD1::boundary(const BigReal& x, Side side) const {
  const prec_t p = opt_.prec;
  BigReal xw = x.with_prec(p);
  BigReal a = abs(xw);
  if (a.is_zero() || a >= 1L) throw DomainError("D1 boundary values need 0 < |x| < 1");
  QuadOptions q;
  q.prec = p;
  q.tol_bits = opt_.tol_bits > 0 ? opt_.tol_bits : p - 24;
  q.max_level = 14;
  q.keep_endpoint_nodes = true;  // 1/sqrt(1-t) at t = 1 needs the nodes next to it
  auto pts = mesh();
  pts.insert(std::lower_bound(pts.begin(), pts.end(), a), a);
  pts.erase(std::unique(pts.begin(), pts.end(), [](const BigReal& l, const BigReal& r) { return l == r; }),
            pts.end());
  BigReal fa = integrand(a, 1L - a);
  const BigReal& last = pts[pts.size() - 2];
  // the difference quotient is pure rounding noise this close to a; use -F'(a) there
  BigReal h = BigReal::pow2(-static_cast<long>(p / 3), p);
  BigReal near = h * h;
  BigReal slope = (integrand(a - h, 1L - a + h) - integrand(a + h, 1L - a - h)) / (h * 2L);
  // PV int_0^1 F(t) 2a/(a^2-t^2) dt = int (F(t)-F(a))/(a-t) + F(a) log(a/(1-a)) + int F(t)/(a+t)
  auto r = tanh_sinh_pieces<BigReal>(
      [&](const BigReal& t, const BigReal&, const BigReal& dr) {
        BigReal ft = integrand(t, t > last ? dr : 1L - t);
        BigReal gap = a - t;
        BigReal sub = abs(gap) < near ? slope : (ft - fa) / gap;
        return sub + ft / (a + t);
      },
      pts, q);
  BigReal pv = r.value + fa * log(a / (1L - a));
  if (xw.sign() < 0) pv = -pv;
  BigReal root = sqrt((1L - a) * (a + 1L));
  BigReal im = root * pv / (BigReal::pi(p) * 2L);
  if (side == Side::Minus) im = -im;
  BigReal re = fa * root / 2L;  // (1/2) log W_n(x)
  return exp(BigComplex(re, im));
}

BigComplex d1n(const BigComplex& z, long n, const BigReal& nu, prec_t prec) {
  D1Options o;
  o.prec = prec;
  return SzegoD1(n, nu, o)(z);
}

BigReal d_infty_n(long n, const BigReal& nu, prec_t prec) {
  D1Options o;
  o.prec = prec;
  return SzegoD1(n, nu, o).d_infty();
}

// ---------------------------------------------------------------- D2

namespace {

// (s-i)/(s+i) = z^2/(s+i)^2 = (s-i)^2/z^2 with s^2 = z^2-1; the larger of s+-i
// is used so nothing cancels near z = 0
BigComplex d2_base(const BigComplex& z) {
  BigComplex s = sqrt_z2m1(z);
  BigComplex i = BigComplex::i(z.prec());
  BigComplex tp = s + i, tm = s - i;
  if (norm(tp) >= norm(tm)) return z * z / (tp * tp);
  return tm * tm / (z * z);
}

}  // namespace

BigComplex d2(const BigComplex& z, const BigReal& nu) {
  require_off_interval(z, "D2");
  const prec_t p = z.prec();
  if (nu.is_zero()) return BigComplex(BigReal(1L, p));
  // (s-i)/(s+i) avoids (-inf,0] off the cut, so the principal power is the analytic branch
  return exp(log(d2_base(z)) * (nu.with_prec(p) / 4L));
}

BigComplex d2_boundary(const BigReal& x, Side side, const BigReal& nu) {
  const prec_t p = x.prec();
  BigReal a = abs(x);
  if (a.is_zero() || a >= 1L) throw DomainError("D2 boundary values need 0 < |x| < 1");
  BigReal root = sqrt((1L - a) * (a + 1L));
  // s_+- = +-i root; w = (s-i)/(s+i) is negative real with arg -pi sgn(x) from either side
  BigReal w = side == Side::Plus ? (1L - root) / (root + 1L) : (root + 1L) / (1L - root);
  BigReal th = BigReal::pi(p);
  if (x.sign() > 0) th = -th;
  BigReal q = nu.with_prec(p) / 4L;
  return BigComplex::polar(pow(w, q), th * q);
}

BigReal d2_psi_consistency(const BigComplex& z, const BigReal& nu) {
  if (z.re().is_zero() || z.im().is_zero()) throw DomainError("d2_psi_consistency needs z off both axes");
  const prec_t p = z.prec();
  BigReal nuw = nu.with_prec(p);
  BigReal pi = BigReal::pi(p);
  BigComplex lhs(p);
  if (!nu.is_zero()) {
    lhs = log(d2_base(z)) * (nuw / 4L);
  }
  BigComplex psi = z.re().sign() > 0 ? psi_complex(z) : psi_complex(-z);
  BigComplex rhs = psi * (nuw * pi / 2L);
  if (z.im().sign() > 0) rhs = -rhs;
  BigReal ph = nuw * pi / 4L;
  rhs = rhs + BigComplex(BigReal(p), z.re().sign() > 0 ? -ph : ph);
  return abs(lhs - rhs);
}

// ---------------------------------------------------------------- N0

namespace {

Mat2 n0_from_beta(const BigComplex& b) {
  BigComplex bi = BigComplex(BigReal(1L, b.prec())) / b;
  BigComplex c = (b + bi) / 2L;
  BigComplex d = times_i(bi - b) / 2L;  // (b - 1/b)/(2i)
  return {{{c, d}, {-d, c}}};
}

}  // namespace

Mat2 n0_matrix(const BigComplex& z) { return n0_from_beta(beta_fn(z)); }

Mat2 n0_matrix_f(const BigComplex& z) {
  require_off_interval(z, "N0");
  const prec_t p = z.prec();
  BigComplex s = sqrt_z2m1(z);
  BigComplex f = z + s;
  // f^{1/2}/(z^2-1)^{1/4} = (f/s)^{1/2}; Re(f/s) > 1 off the cut
  BigComplex a = sqrt(f / s) / sqrt(BigReal(2L, p));
  BigComplex off = times_i(a / f);
  return {{{a, off}, {-off, a}}};
}

Mat2 n0_boundary(const BigReal& x, Side side) {
  const prec_t p = x.prec();
  if (abs(x) >= 1L) throw DomainError("N0 boundary values need |x| < 1");
  // (z-1)/(z+1) -> (x-1)/(x+1) < 0 with arg +pi from above, -pi from below
  BigReal r = (1L - x) / (x + 1L);
  BigReal th = BigReal::pi(p) / 4L;
  if (side == Side::Minus) th = -th;
  return n0_from_beta(BigComplex::polar(pow(r, BigReal::ratio(1, 4, p)), th));
}

BigComplex det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

BigReal max_abs_diff(const Mat2& a, const Mat2& b) {
  BigReal m(a[0][0].prec());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = max(m, abs(a[i][j] - b[i][j]));
  return m;
}

// ---------------------------------------------------------------- asymptotics

const char* to_string(Regime r) { return r == Regime::Outer ? "outer" : "inner"; }

namespace {

BigReal distance_to_interval(const BigComplex& z) {
  BigReal u = abs(z.re()), v = abs(z.im());
  return u <= 1L ? v : hypot(u - 1L, v);
}

}  // namespace

AsymptoticPrediction outer_eval(const BigComplex& z, long n, const BigReal& nu, prec_t prec, double min_dist) {
  BigComplex zw = z.with_prec(prec);
  if (distance_to_interval(zw) < min_dist)
    throw DomainError("outer_eval: z is closer than " + std::to_string(min_dist) + " to [-1,1]");
  EquilibriumContext ctx;
  ctx.prec = prec;
  // e^{n g} is continuous across (-inf,-1): the jump of g there is 2 pi i
  BigComplex g = (zw.im().is_zero() && zw.re() < -1L) ? g_boundary(zw.re(), Side::Plus, ctx) : g_fn(zw, ctx);
  BigComplex s = sqrt_z2m1(zw);
  BigComplex f = zw + s;
  BigReal quarter = BigReal::ratio(1, 4, prec);
  BigComplex root = pow(zw / s, quarter) * pow(f / s, quarter) / pow(BigReal(2L, prec), quarter);
  AsymptoticPrediction out;
  out.regime = Regime::Outer;
  out.value = exp(g * n) * root / d2(zw, nu);
  out.error_scale = BigReal(epsilon_n(n, nu.to_double()), prec);
  return out;
}

AsymptoticPrediction inner_eval(const BigComplex& z, long n, const BigReal& nu, double delta) {
  if (z.re().is_zero()) throw DomainError("inner_eval: z on the imaginary axis");
  if (z.re().sign() < 0) {
    AsymptoticPrediction r = inner_eval(-conj(z), n, nu, delta);
    r.value = conj(r.value);
    r.prefactor = conj(r.prefactor);
    if (n % 2 != 0) {
      r.value = -r.value;
      r.prefactor = -r.prefactor;
    }
    r.term1 = conj(r.term1);
    r.term2 = conj(r.term2);
    return r;
  }
  const prec_t p = z.prec();
  if (!(z.re() < 1L) || abs(z.im()) > kInnerBoxHeight)
    throw DomainError("inner_eval: z outside the box 0 < Re z < 1, |Im z| <= 0.1");
  BigComplex one(BigReal(1L, p));
  if (abs(z) < delta || abs(z - one) < delta) throw DomainError("inner_eval: z within delta of 0 or 1");
  BigReal pi = BigReal::pi(p);
  BigReal nuw = nu.with_prec(p);
  BigReal quarter = BigReal::ratio(1, 4, p);
  BigComplex psi = psi_complex(z);
  BigComplex th = theta_n(z, n);
  BigComplex a = psi * (nuw * pi / 2L) + times_i(th);
  AsymptoticPrediction out;
  out.regime = Regime::Inner;
  out.term1 = exp(a);
  out.term2 = exp(-a);
  BigReal log2e = BigReal(1L, p) + BigReal::ln2(p);
  BigComplex lp = log(z) * quarter + BigComplex(BigReal(p), nuw * pi / 4L) + z * (pi * n / 2L) -
                  BigComplex(BigReal::ln2(p) * quarter + log2e * n) - log(one - z * z) * quarter;
  out.prefactor = exp(lp);
  out.value = out.prefactor * (out.term1 + out.term2);
  double dn = static_cast<double>(n);
  out.error_scale = BigReal(std::log(dn) / dn + epsilon_n(n, nu.to_double()), p);
  return out;
}

BigReal zero_condition_defect(const BigComplex& z, long n, const BigReal& nu) {
  if (z.re().sign() <= 0) throw DomainError("zero_condition_defect needs Re z > 0");
  const prec_t p = z.prec();
  BigReal lhs = psi_complex(z).re() * nu.with_prec(p) * BigReal::pi(p) / 2L;
  return abs(lhs - theta_n(z, n).im());
}

}  // namespace oscq
