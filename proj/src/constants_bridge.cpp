// Copyright 2026 The liou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liou/constants_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "liou/error.hpp"

namespace liou {

double reciprocal(double x) {
  if (x == 0.0) return kInfinity;
  if (std::isinf(x)) return 0.0;
  return 1.0 / x;
}

double lambda_from_psi(double psi, std::size_t k) {
  if (k == 0) throw DomainError("k must be positive");
  if (std::isnan(psi) || psi < -1.0) throw DomainError("psi must be at least -1");
  if (psi == -1.0) return kInfinity;
  const double kd = static_cast<double>(k);
  return (kd + 1.0) / (kd * (1.0 + psi)) - 1.0;
}

double psi_from_lambda(double lambda, std::size_t k) {
  if (k == 0) throw DomainError("k must be positive");
  if (std::isnan(lambda) || lambda < 0.0) throw DomainError("lambda must be non-negative");
  if (std::isinf(lambda)) return -1.0;
  const double kd = static_cast<double>(k);
  return (kd + 1.0) / (kd * (1.0 + lambda)) - 1.0;
}

SpectrumEstimates SpectrumEstimates::from_extremes(std::size_t k, std::vector<double> psi_lower,
                                                   std::vector<double> psi_upper,
                                                   std::string source) {
  if (psi_lower.size() != k + 1 || psi_upper.size() != k + 1) {
    throw DomainError("extremes must have k+1 entries");
  }
  SpectrumEstimates e;
  e.k = k;
  for (std::size_t j = 0; j <= k; ++j) {
    e.lambda.push_back(lambda_from_psi(std::max(psi_lower[j], -1.0), k));
    e.lambda_hat.push_back(lambda_from_psi(std::max(psi_upper[j], -1.0), k));
  }
  e.psi_lower = std::move(psi_lower);
  e.psi_upper = std::move(psi_upper);
  e.source = std::move(source);
  return e;
}

SpectrumEstimates SpectrumEstimates::from_trajectory(const Trajectory& t) {
  if (!t.has_extremes()) throw DomainError("trajectory has no extremes");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s tail=%.3g from sample %zu", t.target_id.c_str(),
                t.tail_fraction, t.tail_start);
  return from_extremes(t.k, t.psi_lower, t.psi_upper, buf);
}

SpectrumEstimates linear_form_constants(SpectrumEstimates est) {
  const std::size_t k = est.k;
  if (est.lambda.size() != k + 1 || est.lambda_hat.size() != k + 1) {
    throw DomainError("lambda fields are not populated");
  }
  est.w.assign(k + 1, 0.0);
  est.w_hat.assign(k + 1, 0.0);
  for (std::size_t j = 1; j <= k + 1; ++j) {
    std::size_t mirror = k + 2 - j;  // 1-based
    est.w[j - 1] = reciprocal(est.lambda_hat[mirror - 1]);
    est.w_hat[j - 1] = reciprocal(est.lambda[mirror - 1]);
  }
  return est;
}

double to_double(const ExtRational& v) { return v ? v->get_d() : kInfinity; }

std::string to_string(const ExtRational& v) { return v ? v->get_str() : "inf"; }

SpectrumBounds bounds_table(std::size_t k) {
  if (k == 0) throw DomainError("k must be positive");
  SpectrumBounds b;
  b.k = k;
  const Rational inv_k(1, static_cast<unsigned long>(k));
  for (std::size_t j = 1; j <= k + 1; ++j) {
    b.chi.push_back(j <= 2 ? ExtRational(inv_k) : ExtRational(Rational(0)));
    b.phi.push_back(j == 1 ? ExtRational(inv_k) : ExtRational(Rational(0)));
    b.lambda_upper.push_back(j == 1 ? ExtRational() : ExtRational(Rational(1, j - 1)));
    b.lambda_hat_upper.push_back(j <= k ? ExtRational(Rational(1, j)) : ExtRational(inv_k));
  }
  b.uniform_cap = Rational(1, (k + 1) / 2);
  return b;
}

// ---------------------------------------------------------------- reports --

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Warn: return "warn";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

bool CheckReport::passed() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const CheckEntry& e) { return e.status == CheckStatus::Fail; });
}

std::size_t CheckReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

const CheckEntry* CheckReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string CheckReport::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.id + " " + to_string(e.status) + " " + num(e.lhs) + " " + num(e.rhs);
    if (!e.note.empty()) out += " # " + e.note;
    out += "\n";
  }
  out += "verdict " + std::string(passed() ? "pass" : "fail") + "\n";
  return out;
}

std::string CheckReport::to_keyvalue() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.id + ".status=" + to_string(e.status) + "\n";
    out += e.id + ".lhs=" + num(e.lhs) + "\n";
    out += e.id + ".rhs=" + num(e.rhs) + "\n";
    out += e.id + ".tolerance=" + num(e.tolerance) + "\n";
    out += e.id + ".hard=" + (e.hard ? "true" : "false") + "\n";
  }
  out += "verdict=" + std::string(passed() ? "pass" : "fail") + "\n";
  return out;
}

void CheckReport::append(const CheckReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

namespace {

// Amount by which `lhs <= rhs` is violated; inf <= inf holds.
double excess(double lhs, double rhs) {
  if (lhs == rhs) return 0.0;
  return lhs - rhs;
}

struct Builder {
  CheckReport report;
  double tol;

  // One rule made of several `lhs <= rhs` comparisons; the worst one is
  // recorded.
  void rule(const std::string& id, const std::vector<std::pair<double, double>>& pairs, bool hard,
            std::string note = {}) {
    CheckEntry e;
    e.id = id;
    e.hard = hard;
    e.tolerance = tol;
    e.note = std::move(note);
    if (pairs.empty()) {
      e.status = CheckStatus::NotApplicable;
      report.entries.push_back(std::move(e));
      return;
    }
    double worst = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [l, r] = pairs[i];
      double x = excess(l, r);
      if (std::isnan(x)) x = kInfinity;
      if (i == 0 || x > worst) {
        worst = x;
        e.lhs = l;
        e.rhs = r;
      }
    }
    if (worst <= tol) {
      e.status = CheckStatus::Pass;
    } else if (!hard && worst <= kWarnSlack) {
      e.status = CheckStatus::Warn;
    } else {
      e.status = CheckStatus::Fail;
    }
    report.entries.push_back(std::move(e));
  }

  void not_applicable(const std::string& id, bool hard, std::string note) {
    CheckEntry e;
    e.id = id;
    e.hard = hard;
    e.tolerance = tol;
    e.status = CheckStatus::NotApplicable;
    e.note = std::move(note);
    report.entries.push_back(std::move(e));
  }
};

std::string ks(std::size_t k) { return ".k" + std::to_string(k); }

}  // namespace

CheckReport check_inequality_suite(const std::map<std::size_t, SpectrumEstimates>& estimates,
                                   const std::vector<std::size_t>& k_set, SuiteMode mode) {
  Builder b{{}, kSuiteTolerance};
  std::vector<std::size_t> sorted_k = k_set;
  std::sort(sorted_k.begin(), sorted_k.end());
  sorted_k.erase(std::unique(sorted_k.begin(), sorted_k.end()), sorted_k.end());
  const SpectrumEstimates* one = estimates.count(1) ? &estimates.at(1) : nullptr;

  for (std::size_t k : sorted_k) {
    auto it = estimates.find(k);
    if (it == estimates.end()) {
      const char* ids[] = {"lambda-chain", "lambda-hat-chain", "ordinary-vs-uniform", "dirichlet", "lambda-range", "lambda-hat-range",
                           "lambda-hat-last", "uniform-cap", "k1-uniform-cap", "k1-transfer-equality", "lambda-from-uniform"};
      for (const char* id : ids) b.not_applicable(id + ks(k), false, "no estimates for this k");
      if (mode == SuiteMode::LiouvilleTarget) {
        for (const char* id : {"liouville-infinite", "liouville-hat1", "liouville-hatj", "liouville-box"}) {
          b.not_applicable(id + ks(k), false, "no estimates for this k");
        }
      }
      continue;
    }
    const auto& e = it->second;
    const auto bounds = bounds_table(k);
    const double inv_k = 1.0 / static_cast<double>(k);
    const auto& lam = e.lambda;
    const auto& hat = e.lambda_hat;

    std::vector<std::pair<double, double>> p;
    for (std::size_t j = 0; j < k; ++j) p.emplace_back(lam[j + 1], lam[j]);
    p.emplace_back(0.0, lam[k]);
    b.rule("lambda-chain" + ks(k), p, true, "lambda chain non-increasing, >= 0");

    p.clear();
    for (std::size_t j = 0; j < k; ++j) p.emplace_back(hat[j + 1], hat[j]);
    p.emplace_back(0.0, hat[k]);
    b.rule("lambda-hat-chain" + ks(k), p, true, "lambda_hat chain non-increasing, >= 0");

    p.clear();
    for (std::size_t j = 0; j <= k; ++j) p.emplace_back(hat[j], lam[j]);
    b.rule("ordinary-vs-uniform" + ks(k), p, true, "lambda_hat <= lambda");

    b.rule("dirichlet" + ks(k), {{hat[0], lam[0]}, {inv_k, hat[0]}}, true, "Dirichlet: lambda_hat_1 >= 1/k");

    p.clear();
    for (std::size_t j = 0; j <= k; ++j) {
      p.emplace_back(to_double(bounds.chi[j]), lam[j]);
      p.emplace_back(lam[j], to_double(bounds.lambda_upper[j]));
    }
    b.rule("lambda-range" + ks(k), p, false, "chi_j <= lambda_j <= 1/(j-1)");

    p.clear();
    for (std::size_t j = 0; j < k; ++j) {
      p.emplace_back(to_double(bounds.phi[j]), hat[j]);
      p.emplace_back(hat[j], to_double(bounds.lambda_hat_upper[j]));
    }
    b.rule("lambda-hat-range" + ks(k), p, false, "phi_j <= lambda_hat_j <= 1/j");

    b.rule("lambda-hat-last" + ks(k),
           {{to_double(bounds.phi[k]), hat[k]}, {hat[k], to_double(bounds.lambda_hat_upper[k])}},
           false, "phi_{k+1} <= lambda_hat_{k+1} <= 1/k");

    b.rule("uniform-cap" + ks(k), {{hat[0], bounds.uniform_cap.get_d()}}, false,
           "lambda_hat_1 <= 1/ceil(k/2)");

    if (one) {
      double rhs = std::max(reciprocal(one->lambda[0]), inv_k);
      b.rule("k1-uniform-cap" + ks(k), {{hat[0], rhs}}, false,
             "lambda_hat_{k,1} <= max(1/lambda_{1,1}, 1/k)");
    } else {
      b.not_applicable("k1-uniform-cap" + ks(k), false, "needs k=1 estimates");
    }

    // Equality clause, only where the estimate is clearly above 1.
    if (!one) {
      b.not_applicable("k1-transfer-equality" + ks(k), false, "needs k=1 estimates");
    } else if (!(lam[0] > 1.1)) {
      b.not_applicable("k1-transfer-equality" + ks(k), false, "lambda_{k,1} estimate <= 1.1");
    } else if (mode == SuiteMode::LiouvilleTarget) {
      // Both sides are infinite for Liouville numbers: threshold comparison.
      b.rule("k1-transfer-equality" + ks(k), {{1.1, lam[0]}, {1.1, one->lambda[0]}}, false,
             "both sides predicted infinite; compared against threshold 1.1");
    } else {
      const double kd = static_cast<double>(k);
      double rhs = kd * lam[0] + kd - 1.0;
      b.rule("k1-transfer-equality" + ks(k), {{one->lambda[0], rhs}, {rhs, one->lambda[0]}}, false,
             "lambda_{1,1} = k lambda_{k,1} + k - 1");
    }

    if (k < 2) {
      b.not_applicable("lambda-from-uniform" + ks(k), false, "defined for k >= 2");
    } else if (!(hat[0] < 1.0)) {
      b.not_applicable("lambda-from-uniform" + ks(k), false, "lambda_hat_1 >= 1");
    } else {
      const double kd = static_cast<double>(k);
      double h = hat[0];
      double rhs = (h * h + (kd - 2.0) * h) / ((kd - 1.0) * (1.0 - h));
      b.rule("lambda-from-uniform" + ks(k), {{rhs, lam[0]}}, false, "lambda_1 >= (h^2+(k-2)h)/((k-1)(1-h))");
    }

    if (mode == SuiteMode::LiouvilleTarget) {
      const double threshold = inv_k + 1.0;
      b.rule("liouville-infinite" + ks(k), {{threshold, lam[0]}}, false,
             "lambda_{k,1} = inf, compared as >= 1/k + 1");
      b.rule("liouville-hat1" + ks(k), {{hat[0], inv_k}, {inv_k, hat[0]}}, false,
             "lambda_hat_{k,1} = 1/k");
      p.clear();
      for (std::size_t j = 1; j <= k; ++j) p.emplace_back(hat[j], 0.0);
      b.rule("liouville-hatj" + ks(k), p, false, "lambda_hat_{k,j} = 0 for j >= 2");
      p.clear();
      for (std::size_t j = 1; j <= k; ++j) {
        p.emplace_back(inv_k, lam[j]);
        p.emplace_back(lam[j], 1.0 / static_cast<double>(j));
      }
      b.rule("liouville-box" + ks(k), p, false, "1/k <= lambda_{k,j} <= 1/(j-1) for j >= 2");
    }
  }

  // lambda_{mn,1} >= (lambda_{n,1} - m + 1)/m for m >= 2.
  for (std::size_t n : sorted_k) {
    for (std::size_t k : sorted_k) {
      if (k <= n || k % n != 0) continue;
      const std::size_t m = k / n;
      std::string id = "degree-multiple.m" + std::to_string(m) + ".n" + std::to_string(n);
      auto a = estimates.find(k);
      auto c = estimates.find(n);
      if (a == estimates.end() || c == estimates.end()) {
        b.not_applicable(id, false, "missing estimates");
        continue;
      }
      double lhs = a->second.lambda[0];
      double base = c->second.lambda[0];
      if (std::isinf(lhs) || std::isinf(base)) {
        b.not_applicable(id, false, "infinite estimate");
        continue;
      }
      const double md = static_cast<double>(m);
      b.rule(id, {{(base - md + 1.0) / md, lhs}}, false, "lambda_{mn,1} >= (lambda_{n,1}-m+1)/m");
    }
  }

  // Monotonicity in k for fixed j.
  std::size_t max_j = sorted_k.empty() ? 0 : sorted_k.back() + 1;
  for (std::size_t j = 1; j <= max_j; ++j) {
    std::vector<std::pair<double, double>> pl, ph;
    const SpectrumEstimates* prev = nullptr;
    for (std::size_t k : sorted_k) {
      auto it = estimates.find(k);
      if (it == estimates.end() || j > k + 1) continue;
      if (prev) {
        pl.emplace_back(it->second.lambda[j - 1], prev->lambda[j - 1]);
        ph.emplace_back(it->second.lambda_hat[j - 1], prev->lambda_hat[j - 1]);
      }
      prev = &it->second;
    }
    b.rule("lambda-monotone-in-k.j" + std::to_string(j), pl, false, "lambda_{k,j} non-increasing in k");
    b.rule("lambda-hat-monotone-in-k.j" + std::to_string(j), ph, false, "lambda_hat_{k,j} non-increasing in k");
  }
  return b.report;
}

CheckReport psi_level_suite(std::size_t k, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
  if (lo.size() != k + 1 || hi.size() != k + 1) throw DomainError("extremes must have k+1 entries");
  Builder b{{}, kPsiTolerance};
  const double kd = static_cast<double>(k);
  const std::string kk = ".k" + std::to_string(k);

  std::vector<std::pair<double, double>> p;
  p.emplace_back(-1.0, lo[0]);
  for (std::size_t j = 0; j < k; ++j) p.emplace_back(lo[j], lo[j + 1]);
  p.emplace_back(lo[k], 1.0 / kd);
  b.rule("psi-lower-chain" + kk, p, true, "-1 <= psi_lower chain <= 1/k");

  p.clear();
  p.emplace_back(-1.0, hi[0]);
  for (std::size_t j = 0; j < k; ++j) p.emplace_back(hi[j], hi[j + 1]);
  p.emplace_back(hi[k], 1.0 / kd);
  b.rule("psi-upper-chain" + kk, p, true, "-1 <= psi_upper chain <= 1/k");

  p.clear();
  for (std::size_t j = 0; j <= k; ++j) p.emplace_back(lo[j], hi[j]);
  b.rule("lower-vs-upper" + kk, p, true, "psi_lower <= psi_upper");

  b.rule("psi1-nonpositive" + kk, {{hi[0], 0.0}}, true, "psi_upper_1 <= 0");

  for (std::size_t j = 0; j <= k; ++j) {
    const double jd = static_cast<double>(j);
    b.rule("psi-lower1-upperj" + kk + ".j" + std::to_string(j), {{jd * lo[0] + (kd + 1.0 - jd) * hi[j], 0.0}},
           false, "j psi_lower_1 + (k+1-j) psi_upper_{j+1} <= 0");
    b.rule("psi-upper1-lowerj" + kk + ".j" + std::to_string(j), {{jd * hi[0] + (kd + 1.0 - jd) * lo[j], 0.0}},
           false, "j psi_upper_1 + (k+1-j) psi_lower_{j+1} <= 0");
  }
  b.rule("psi-first-last" + kk, {{0.0, hi[0] + kd * lo[k]}}, false, "psi_upper_1 + k psi_lower_{k+1} >= 0");
  double sum = lo[0];
  for (std::size_t j = 1; j <= k; ++j) sum += hi[j];
  b.rule("psi-sum" + kk, {{0.0, sum}}, false, "psi_lower_1 + sum_{j>=2} psi_upper_j >= 0");
  return b.report;
}

CheckReport psi_level_suite(const Trajectory& t) {
  if (!t.has_extremes()) throw DomainError("trajectory has no extremes");
  return psi_level_suite(t.k, t.psi_lower, t.psi_upper);
}

IrrationalityEstimate irrationality_exponent(const RationalTruncation& t, std::size_t depth) {
  if (depth == 0) throw DomainError("depth must be positive");
  if (t.value.get_den() == 1) throw DomainError("irrationality exponent of an integer");
  // Continued fraction of value, convergents p_n/q_n.
  Integer num = t.value.get_num();
  Integer den = t.value.get_den();
  std::vector<Integer> quotients;
  while (den != 0 && quotients.size() < depth + 1) {
    Integer a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    quotients.push_back(a);
    num = den;
    den = r;
  }
  IrrationalityEstimate best;
  best.estimate = -kInfinity;
  Integer p_prev = 1, q_prev = 0, p = quotients[0], q = 1;
  for (std::size_t n = 0; n + 1 < quotients.size() && n < depth; ++n) {
    if (q > 1 && q <= t.reliable_denominator) {
      ++best.convergents_used;
      double est = 2.0 + log_ratio(Rational(quotients[n + 1]), Rational(q));
      if (est > best.estimate) {
        best.estimate = est;
        best.best_p = p;
        best.best_q = q;
      }
    }
    const Integer& a = quotients[n + 1];
    Integer pn = a * p + p_prev;
    Integer qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  if (best.convergents_used == 0) {
    throw DomainError("no convergent with 1 < q <= reliable denominator and a successor");
  }
  Rational gap = abs(t.value - Rational(best.best_p, best.best_q));
  best.gap_exponent = log_ratio(Rational(1) / gap, Rational(best.best_q));
  return best;
}

}  // namespace liou
