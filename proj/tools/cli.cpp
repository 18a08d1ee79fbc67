#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oscq/equilibrium.hpp"
#include "oscq/errors.hpp"
#include "oscq/moments.hpp"
#include "oscq/parametrix.hpp"
#include "oscq/rh_smallnorm.hpp"
#include "oscq/zeros.hpp"

namespace oscq::cli {

using nlohmann::json;

namespace {

long parse_long(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_n(long n, bool allow_long) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > kDeskCeiling && !allow_long)
    throw DomainError("n = " + std::to_string(n) + " exceeds the desk-scale ceiling " +
                      std::to_string(kDeskCeiling) + "; pass --allow-long");
}

}  // namespace

std::vector<long> parse_n_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_long(item));
    } else {
      long a = parse_long(trim(item.substr(0, dots))), b = parse_long(trim(item.substr(dots + 2)));
      if (b < a) throw DomainError("empty range '" + item + "'");
      for (long k = a; k <= b; ++k) out.push_back(k);
    }
  }
  if (out.empty()) throw DomainError("empty n list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.front() < 1) throw DomainError("n values must be >= 1");
  return out;
}

double NuArg::value() const { return BigReal(text, 64).to_double(); }

NuArg parse_nu(const std::string& s) {
  NuArg a{trim(s)};
  BigReal v;
  try {
    v = a.at(64);
  } catch (const std::exception&) {
    throw DomainError("nu is not a number: '" + s + "'");
  }
  if (!v.is_finite() || v < 0L || !(v < 1L)) throw DomainError("nu must lie in [0, 1)");
  return a;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string csv_number(const BigReal& x, prec_t prec) {
  return x.with_prec(prec).to_string(BigReal::roundtrip_digits(prec));
}

// ------------------------------------------------------------------ zeros

int cmd_zeros(const ZerosArgs& a, std::ostream& log) {
  auto t0 = std::chrono::steady_clock::now();
  check_n(a.n, a.allow_long);
  if (a.out.empty()) throw DomainError("--out is required");
  if (!(a.delta > 0)) throw DomainError("delta must be > 0");
  BigReal nu = a.nu.at(kNuPrec);

  AdaptiveOp op;
  if (a.prec) {
    if (*a.prec < kMinPrec) throw DomainError("prec must be >= " + std::to_string(kMinPrec));
    op.poly = monic_op(a.n, nu, *a.prec);
    op.prec_used = *a.prec;
    op.attempts = 1;
  } else {
    op = monic_op_adaptive(a.n, nu);
  }
  const prec_t wp = op.prec_used;
  MonicPolynomial tilde = rescale_to_tilde(op.poly, a.n);
  ZeroSet zs = find_zeros(tilde);

  std::ostringstream csv;
  csv << "index,re,im,re_w,im_w,residual\r\n";
  BigReal max_re(wp);
  for (std::size_t k = 0; k < zs.roots.size(); ++k) {
    const BigComplex& w = zs.roots[k];
    BigComplex x = raw_from_tilde(w, a.n);
    max_re = max(max_re, abs(x.re()));
    csv << k << ',' << csv_number(x.re(), wp) << ',' << csv_number(x.im(), wp) << ',' << csv_number(w.re(), wp)
        << ',' << csv_number(w.im(), wp) << ',' << csv_number(zs.residuals[k], wp) << "\r\n";
  }

  ZeroLineStats line = zero_line_stats(zs, a.n, a.nu.value(), a.delta);
  json m;
  m["command"] = a.command_line;
  m["subcommand"] = "zeros";
  m["nu"] = a.nu.text;
  m["n"] = a.n;
  m["prec_bits"] = wp;
  m["prec_mode"] = a.prec ? "fixed" : "auto";
  m["prec_attempts"] = op.attempts;
  m["delta"] = a.delta;
  m["eps"] = kDefaultEps;
  m["rho"] = kRho;
  m["chi_profile"] = CutoffChi::kProfile;
  m["quadrature_level"] = nullptr;
  m["csv"] = std::filesystem::path(a.out).filename().string();
  m["rows"] = zs.roots.size();
  json r;
  r["max_newton_residual_w"] = zs.max_residual().to_double();
  r["aberth_sweeps"] = zs.sweeps;
  r["hankel_log2_condition"] = op.log2_condition;
  r["moment_log2_residual"] = op.log2_residual;
  r["vieta_sum_defect"] = vieta_sum_defect(tilde, zs).to_double();
  r["vieta_product_defect"] = vieta_product_defect(tilde, zs).to_double();
  r["reflection_defect"] = reflection_defect(zs).to_double();
  m["residuals"] = r;
  json zl;
  zl["line"] = a.nu.value() * M_PI / 2;
  zl["epsilon_n"] = line.epsilon_n;
  zl["zeros_considered"] = line.zeros_considered;
  if (line.max_dev) {
    zl["max_dev"] = *line.max_dev;
    zl["max_dev_over_epsilon_n"] = *line.max_dev / line.epsilon_n;
  } else {
    zl["max_dev"] = nullptr;
    zl["max_dev_over_epsilon_n"] = nullptr;
  }
  m["zero_line"] = zl;
  m["max_abs_re_x"] = max_re.to_double();
  m["ks_distance"] = ecdf_vs_psi(zs).to_double();
  m["wall_time_s"] = seconds_since(t0);

  write_atomic(a.out, csv.str());
  write_atomic(a.out + ".manifest.json", m.dump(2) + "\n");
  log << "wrote " << zs.roots.size() << " zeros to " << a.out << " (prec " << wp << " bits)\n";
  return kOk;
}

// ------------------------------------------------------------ asymptotics

std::vector<BigComplex> read_points(const std::string& spec, prec_t prec) {
  std::vector<BigComplex> pts;
  if (spec.rfind("grid:", 0) == 0) {
    std::vector<std::string> f;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(trim(item));
    if (f.size() != 5) throw DomainError("grid spec is grid:RE0,IM0,RE1,IM1,COUNT");
    long count = parse_long(f[4]);
    if (count < 1) throw DomainError("grid count must be >= 1");
    BigComplex p0(BigReal(f[0], prec), BigReal(f[1], prec));
    BigComplex p1(BigReal(f[2], prec), BigReal(f[3], prec));
    for (long k = 0; k < count; ++k) {
      BigReal t = count == 1 ? BigReal(prec) : BigReal::ratio(k, count - 1, prec);
      pts.push_back(p0 + (p1 - p0) * t);
    }
    return pts;
  }
  std::ifstream in(spec);
  if (!in) throw DomainError("cannot read points file '" + spec + "'");
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string re, im;
    if (!(ls >> re)) continue;
    if (!(ls >> im)) im = "0";
    try {
      pts.emplace_back(BigReal(re, prec), BigReal(im, prec));
    } catch (const std::exception&) {
      throw DomainError("bad point '" + line + "'");
    }
    if (!pts.back().is_finite()) throw DomainError("bad point '" + line + "'");
  }
  if (pts.empty()) throw DomainError("no points in '" + spec + "'");
  return pts;
}

int cmd_asymptotics(const AsymptoticsArgs& a, std::ostream& out, std::ostream& log) {
  check_n(a.n, a.allow_long);
  if (a.n < 2) throw DomainError("asymptotics needs n >= 2");
  if (a.regime != "outer" && a.regime != "inner") throw DomainError("regime must be outer or inner");
  if (a.prec < kMinPrec) throw DomainError("prec must be >= " + std::to_string(kMinPrec));
  const prec_t p = a.prec;
  BigReal nu = a.nu.at(p);
  std::vector<BigComplex> pts = read_points(a.points, p);

  // predictions first: a point outside the regime stops the run before the expensive part
  std::vector<AsymptoticPrediction> pred;
  for (const auto& z : pts)
    pred.push_back(a.regime == "outer" ? outer_eval(z, a.n, nu, p, a.min_dist) : inner_eval(z, a.n, nu, a.delta));

  AdaptiveOp op = monic_op_adaptive(a.n, a.nu.at(kNuPrec));
  MonicPolynomial tilde = rescale_to_tilde(op.poly, a.n);
  std::ostringstream csv;
  csv << "z_re,z_im,pred_re,pred_im,actual_re,actual_im,rel_err,error_scale\r\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    BigComplex actual = tilde.eval(pts[k].with_prec(tilde.prec())).with_prec(p);
    const auto& q = pred[k];
    BigReal rel = q.regime == Regime::Outer
                      ? abs(actual / q.value - BigComplex(BigReal(1L, p)))
                      : abs(actual - q.value) / (abs(q.prefactor) * (abs(q.term1) + abs(q.term2)));
    csv << csv_number(pts[k].re(), p) << ',' << csv_number(pts[k].im(), p) << ',' << csv_number(q.value.re(), p)
        << ',' << csv_number(q.value.im(), p) << ',' << csv_number(actual.re(), p) << ','
        << csv_number(actual.im(), p) << ',' << csv_number(rel, p) << ',' << csv_number(q.error_scale, p)
        << "\r\n";
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_atomic(a.out, csv.str());
    log << "wrote " << pts.size() << " rows to " << a.out << " (P~_n at " << op.prec_used << " bits)\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- verify

json check_to_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["n"] = c.n ? json(*c.n) : json(nullptr);
  j["measured"] = std::isfinite(c.measured) ? json(c.measured) : json(std::to_string(c.measured));
  j["threshold"] = std::isfinite(c.threshold) ? json(c.threshold) : json(std::to_string(c.threshold));
  j["pass"] = c.pass;
  return j;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& log) {
  auto t0 = std::chrono::steady_clock::now();
  for (long n : a.n_list) check_n(n, a.allow_long);
  std::vector<Check> checks;
  json extra;
  if (a.suite == "equilibrium") {
    checks = suite_equilibrium(a.prec ? a.prec : 256);
  } else if (a.suite == "parametrix") {
    checks = suite_parametrix(a.nu, a.n_list.empty() ? std::vector<long>{25, 50, 100, 200} : a.n_list,
                              a.prec ? a.prec : 128);
  } else if (a.suite == "smallnorm") {
    checks = suite_smallnorm(a.nu, a.n_list.empty() ? std::vector<long>{16, 32, 64, 128} : a.n_list,
                             a.prec ? a.prec : 128);
  } else if (a.suite == "quadrature") {
    checks = suite_quadrature(a.nu, a.n_list.empty() ? parse_n_list("1..10") : a.n_list, a.prec ? a.prec : 512);
  } else if (a.suite == "zeros") {
    checks = suite_zeros(a.nu, a.n_list.empty() ? std::vector<long>{16, 32, 64} : a.n_list, a.prec);
  } else {
    throw DomainError("unknown suite '" + a.suite + "'");
  }
  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back(check_to_json(c));
    log << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (c.n) log << " n=" << *c.n;
    log << "  measured=" << c.measured << " threshold=" << c.threshold << "\n";
  }
  json rep;
  rep["command"] = a.command_line;
  rep["suite"] = a.suite;
  rep["nu"] = a.nu.text;
  rep["n_list"] = a.n_list;
  rep["prec_bits"] = a.prec;
  rep["checks"] = arr;
  rep["passed"] = all;
  rep["wall_time_s"] = seconds_since(t0);
  if (a.report.empty())
    out << rep.dump(2) << "\n";
  else
    write_atomic(a.report, rep.dump(2) + "\n");
  return all ? kOk : kInvariantFailed;
}

}  // namespace oscq::cli
