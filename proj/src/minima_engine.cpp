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

#include "liou/minima_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "liou/error.hpp"

namespace liou {

// ---------------------------------------------------------------- QValue --

QValue QValue::of(const Rational& q) {
  if (q <= 1) throw DomainError("Q must exceed 1, got " + q.get_str());
  QValue v;
  v.radicand_ = q;
  v.radicand_.canonicalize();
  v.root_ = 1;
  return v;
}

QValue QValue::power(const Rational& base, const Rational& exponent) {
  if (base <= 1) throw DomainError("Q base must exceed 1");
  if (exponent <= 0) throw DomainError("Q exponent must be positive");
  Rational e = exponent;
  e.canonicalize();
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p()) {
    throw DomainError("Q exponent too large");
  }
  QValue v;
  v.radicand_ = pow(base, e.get_num().get_ui());
  v.root_ = e.get_den().get_ui();
  return v;
}

double QValue::log() const { return validated_log(radicand_) / static_cast<double>(root_); }

std::string QValue::str() const {
  if (root_ == 1) return radicand_.get_str();
  return "(" + radicand_.get_str() + ")^(1/" + std::to_string(root_) + ")";
}

int QValue::compare(const QValue& other) const {
  Rational a = pow(radicand_, other.root_);
  Rational b = pow(other.radicand_, root_);
  return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0);
}

// ---------------------------------------------------------- ApproxTarget --

ApproxTarget ApproxTarget::from_truncation(const RationalTruncation& t, std::size_t k) {
  return ApproxTarget{powers(t, k), t.source + "/k=" + std::to_string(k)};
}

ApproxTarget ApproxTarget::from_rational(const Rational& zeta, std::size_t k) {
  auto t = RationalTruncation::from_rational(zeta, Rational(0), Integer(1), "rational:" + zeta.get_str());
  return from_truncation(t, k);
}

IntVector LatticePoint::coordinates() const {
  IntVector v;
  v.reserve(y.size() + 1);
  v.push_back(x);
  v.insert(v.end(), y.begin(), y.end());
  return v;
}

const char* to_string(MinimaMode m) {
  return m == MinimaMode::ExactEnumeration ? "exact-enumeration" : "witness-upper-bound";
}

// ----------------------------------------------------------------- keys --

namespace {

constexpr double kScreenMargin = 1e-9;

// Precomputed pieces of K(v) for one (target, Q).
struct Keyer {
  std::size_t k;
  unsigned long s;
  unsigned long ks;
  Rational radicand;
  Rational radicand_k;  // R^k
  std::vector<Integer> num;
  std::vector<Integer> den;

  Keyer(const ApproxTarget& target, const QValue& q)
      : k(target.k()), s(q.root()), ks(target.k() * q.root()), radicand(q.radicand()) {
    if (k == 0) throw DomainError("target dimension must be positive");
    radicand_k = pow(radicand, static_cast<unsigned long>(k));
    for (const auto& z : target.zeta_powers.entries) {
      num.push_back(z.get_num());
      den.push_back(z.get_den());
    }
  }

  Rational x_part(const Integer& x_abs) const {
    if (x_abs == 0) return 0;
    Rational r(pow(x_abs, ks));
    return r / radicand_k;
  }

  Rational e_part(const Rational& e) const {
    if (e == 0) return 0;
    return radicand * pow(e, ks);
  }

  Rational error(const Integer& x, std::span<const Integer> y, std::size_t j) const {
    Integer n = num[j] * x - y[j] * den[j];
    Rational e(abs(n), den[j]);
    e.canonicalize();
    return e;
  }

  Rational key(std::span<const Integer> v) const {
    if (v.size() != k + 1) throw DomainError("vector length must be k+1");
    if (std::all_of(v.begin(), v.end(), [](const Integer& z) { return z == 0; })) {
      throw DomainError("the zero vector has no exponent");
    }
    Rational e = 0;
    for (std::size_t j = 0; j < k; ++j) e = std::max(e, error(v[0], v.subspan(1), j));
    return std::max(x_part(abs(v[0])), e_part(e));
  }
};

struct Candidate {
  Integer x;
  IntVector y;
  Rational key;
  double nu_approx = 0;

  IntVector coordinates() const {
    IntVector v{x};
    v.insert(v.end(), y.begin(), y.end());
    return v;
  }
};

// Strict total order: key, then |x|, then y lexicographically.
bool before(const Candidate& a, const Candidate& b) {
  int c = cmp(a.key, b.key);
  if (c != 0) return c < 0;
  c = cmp(abs(a.x), abs(b.x));
  if (c != 0) return c < 0;
  return std::lexicographical_compare(a.y.begin(), a.y.end(), b.y.begin(), b.y.end());
}

// Sign normalization under v -> -v: x >= 0, and first nonzero y positive
// when x = 0.
void normalize(Integer& x, IntVector& y) {
  bool flip = x < 0;
  if (x == 0) {
    for (const auto& c : y) {
      if (c != 0) {
        flip = c < 0;
        break;
      }
    }
  }
  if (flip) {
    x = -x;
    for (auto& c : y) c = -c;
  }
}

// Minimum-weight independent set of size <= k+1, updated one element at a
// time. The set of a prefix plus a new element determines the set of the
// extended prefix, so feeding candidates in any order reproduces the greedy
// selection over the sorted list.
class OnlineBasis {
 public:
  OnlineBasis(std::size_t dim, double log_radicand_k) : dim_(dim), log_rk_(log_radicand_k) {}

  bool full() const { return elems_.size() == dim_; }
  const Candidate& heaviest() const { return elems_.back(); }
  double heaviest_nu() const { return elems_.back().nu_approx; }

  void offer(Candidate c) {
    c.nu_approx = approx_log(c.key) / log_rk_;
    if (full() && !before(c, heaviest())) return;
    std::vector<Candidate> pool = elems_;
    pool.push_back(std::move(c));
    std::sort(pool.begin(), pool.end(), before);
    IntegerBasis basis(dim_);
    std::vector<Candidate> kept;
    for (auto& p : pool) {
      auto coords = p.coordinates();
      if (basis.add(coords)) kept.push_back(std::move(p));
      if (kept.size() == dim_) break;
    }
    elems_ = std::move(kept);
  }

  const std::vector<Candidate>& elements() const { return elems_; }

 private:
  std::size_t dim_;
  double log_rk_;
  std::vector<Candidate> elems_;
};

MinimaResult finish(const std::vector<Candidate>& chosen, const QValue& q, std::size_t k,
                    MinimaMode mode) {
  MinimaResult res;
  res.q = q;
  res.mode = mode;
  for (const auto& c : chosen) {
    LatticePoint p;
    p.x = c.x;
    p.y = c.y;
    p.key = c.key;
    p.nu = exponent_from_key(c.key, q, k);
    res.psi.push_back(p.nu);
    res.witnesses.push_back(std::move(p));
  }
  while (res.psi.size() < k + 1) res.psi.push_back(kInfinity);
  return res;
}

}  // namespace

Rational exponent_key(const ApproxTarget& target, const QValue& q, std::span<const Integer> v) {
  return Keyer(target, q).key(v);
}

double exponent_from_key(const Rational& key, const QValue& q, std::size_t k) {
  if (key <= 0) throw DomainError("exponent key must be positive");
  return log_ratio(key, pow(q.radicand(), static_cast<unsigned long>(k)), 1e-13);
}

double point_exponent(const ApproxTarget& target, const QValue& q, std::span<const Integer> v) {
  return exponent_from_key(exponent_key(target, q, v), q, target.k());
}

double certified_point_exponent(const ApproxTarget& target, const QValue& q,
                                std::span<const Integer> v) {
  Keyer keyer(target, q);
  if (v.size() != keyer.k + 1) throw DomainError("vector length must be k+1");
  Rational e = 0;
  for (std::size_t j = 0; j < keyer.k; ++j) {
    Rational ej = keyer.error(v[0], v.subspan(1), j) + abs(Rational(v[0])) * target.zeta_powers.tail_bounds[j];
    e = std::max(e, ej);
  }
  Rational key = std::max(keyer.x_part(abs(v[0])), keyer.e_part(e));
  if (key == 0) throw DomainError("the zero vector has no exponent");
  return exponent_from_key(key, q, keyer.k);
}

Integer enumeration_size(const ApproxTarget& target, const QValue& q) {
  const std::size_t k = target.k();
  // x^{ks} <= R^{k+1}  <=>  x <= Q^{1+1/k}
  Integer bound = floor(pow(q.radicand(), static_cast<unsigned long>(k + 1)));
  Integer x_max;
  mpz_root(x_max.get_mpz_t(), bound.get_mpz_t(), k * q.root());
  return x_max + 1;
}

MinimaResult successive_minima_enumerate(const ApproxTarget& target, const QValue& q,
                                         const EnumerationOptions& options) {
  const std::size_t k = target.k();
  Keyer keyer(target, q);
  const Integer count = enumeration_size(target, q);
  if (count > Integer(static_cast<unsigned long>(options.budget))) {
    throw ResourceError("exact enumeration at Q=" + q.str() + " needs " + count.get_str() +
                        " x values, budget is " + std::to_string(options.budget) +
                        "; use witness mode");
  }
  const std::uint64_t x_max = Integer(count - 1).get_ui();
  const double log_r = approx_log(q.radicand());
  const double log_q = log_r / static_cast<double>(q.root());
  const double inv_k = 1.0 / static_cast<double>(k);
  OnlineBasis basis(k + 1, static_cast<double>(k) * log_r);

  // x = 0: y in {-1,0,1}^k \ {0}, up to sign; every such vector has e = 1.
  {
    std::vector<int> digits(k, -1);
    for (;;) {
      bool nonzero = false;
      bool positive_lead = false;
      for (int d : digits) {
        if (d != 0) {
          nonzero = true;
          positive_lead = d > 0;
          break;
        }
      }
      if (nonzero && positive_lead) {
        Candidate c;
        c.x = 0;
        for (int d : digits) c.y.emplace_back(d);
        c.key = keyer.radicand;
        basis.offer(std::move(c));
      }
      std::size_t i = 0;
      while (i < k && digits[i] == 1) digits[i++] = -1;
      if (i == k) break;
      ++digits[i];
    }
  }

  std::vector<Integer> whole(k), frac(k), r(k), fl(k);
  std::vector<double> log_den(k);
  for (std::size_t j = 0; j < k; ++j) {
    mpz_fdiv_qr(whole[j].get_mpz_t(), frac[j].get_mpz_t(), keyer.num[j].get_mpz_t(),
                keyer.den[j].get_mpz_t());
    r[j] = 0;
    fl[j] = 0;
    log_den[j] = approx_log(keyer.den[j]);
  }

  struct Option {
    int offset;
    double log_e;  // -inf when e = 0
  };
  std::vector<std::vector<Option>> opts(k);
  std::vector<std::size_t> idx(k);
  Integer tmp;

  for (std::uint64_t x = 1; x <= x_max; ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      fl[j] += whole[j];
      r[j] += frac[j];
      if (r[j] >= keyer.den[j]) {
        r[j] -= keyer.den[j];
        fl[j] += 1;
      }
    }
    const double x_term = std::log(static_cast<double>(x)) / log_q - 1.0;
    const bool full = basis.full();
    const double ceiling = full ? basis.heaviest_nu() : kInfinity;
    if (full && x_term > ceiling + kScreenMargin) break;
    if (full && x_term >= ceiling - kScreenMargin) {
      // Later x lose every tie on |x|, so >= suffices.
      if (keyer.x_part(Integer(static_cast<unsigned long>(x))) >= basis.heaviest().key) break;
    }
    // Offsets >= 1 away from the nearest integers have e >= 1, i.e. nu >= 1/k.
    const bool far_needed = !full || ceiling >= inv_k - kScreenMargin;
    for (std::size_t j = 0; j < k; ++j) {
      auto& o = opts[j];
      o.clear();
      const bool exact = r[j] == 0;
      o.push_back({0, exact ? -kInfinity : approx_log(r[j]) - log_den[j]});
      if (!exact) {
        tmp = keyer.den[j] - r[j];
        o.push_back({1, approx_log(tmp) - log_den[j]});
      }
      if (far_needed) {
        tmp = keyer.den[j] + r[j];
        o.push_back({-1, approx_log(tmp) - log_den[j]});
        if (!exact) {
          tmp = 2 * keyer.den[j] - r[j];
          o.push_back({2, approx_log(tmp) - log_den[j]});
        } else {
          o.push_back({1, 0.0});
        }
      }
    }
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      double worst = -kInfinity;
      for (std::size_t j = 0; j < k; ++j) worst = std::max(worst, opts[j][idx[j]].log_e);
      double nu = std::max(x_term, worst / log_q + inv_k);
      bool keep = !basis.full() || nu <= basis.heaviest_nu() + kScreenMargin;
      if (keep) {
        Candidate c;
        c.x = static_cast<unsigned long>(x);
        c.y.resize(k);
        for (std::size_t j = 0; j < k; ++j) c.y[j] = fl[j] + opts[j][idx[j]].offset;
        c.key = keyer.key(c.coordinates());
        basis.offer(std::move(c));
      }
      std::size_t i = 0;
      while (i < k && idx[i] + 1 == opts[i].size()) idx[i++] = 0;
      if (i == k) break;
      ++idx[i];
    }
  }
  if (!basis.full()) throw InternalError("enumeration ended without k+1 independent vectors");
  return finish(basis.elements(), q, k, MinimaMode::ExactEnumeration);
}

MinimaResult psi_upper_bounds_from_witnesses(const ApproxTarget& target, const QValue& q,
                                             const std::vector<IntVector>& candidates) {
  if (candidates.empty()) throw DomainError("witness mode needs at least one candidate");
  const std::size_t k = target.k();
  Keyer keyer(target, q);
  std::vector<Candidate> pool;
  pool.reserve(candidates.size());
  for (const auto& v : candidates) {
    if (v.size() != k + 1) throw DomainError("candidate length must be k+1");
    Candidate c;
    c.x = v[0];
    c.y.assign(v.begin() + 1, v.end());
    normalize(c.x, c.y);
    c.key = keyer.key(c.coordinates());
    pool.push_back(std::move(c));
  }
  std::sort(pool.begin(), pool.end(), before);
  IntegerBasis basis(k + 1);
  std::vector<Candidate> chosen;
  for (auto& c : pool) {
    if (basis.add(c.coordinates())) chosen.push_back(c);
    if (chosen.size() == k + 1) break;
  }
  return finish(chosen, q, k, MinimaMode::WitnessUpperBound);
}

std::vector<IntVector> default_witness_candidates(const ApproxTarget& target) {
  const std::size_t k = target.k();
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < k; ++j) {
    IntVector v(k + 1, Integer(0));
    v[j + 1] = 1;
    out.push_back(std::move(v));
  }
  IntVector one{Integer(1)};
  for (const auto& z : target.zeta_powers.entries) one.push_back(round(z));
  out.push_back(std::move(one));
  return out;
}

// ------------------------------------------------------------ trajectory --

namespace {

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void Trajectory::set_tail_window(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("tail fraction must lie in (0, 1]");
  tail_fraction = fraction;
  psi_lower.clear();
  psi_upper.clear();
  const std::size_t n = samples.size();
  auto window = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  tail_start = n - std::min(n, window);
  std::vector<double> lo(k + 1, kInfinity), hi(k + 1, -kInfinity);
  bool any = false;
  for (std::size_t i = tail_start; i < n; ++i) {
    // Upper-bound samples say nothing about the extremes.
    if (!samples[i].result || samples[i].result->mode != MinimaMode::ExactEnumeration) continue;
    any = true;
    for (std::size_t j = 0; j <= k; ++j) {
      lo[j] = std::min(lo[j], samples[i].result->psi[j]);
      hi[j] = std::max(hi[j], samples[i].result->psi[j]);
    }
  }
  if (any) {
    psi_lower = std::move(lo);
    psi_upper = std::move(hi);
  }
}

double Trajectory::min_psi(std::size_t j) const {
  if (j == 0 || j > k + 1) throw DomainError("psi index out of range");
  double m = kInfinity;
  for (const auto& s : samples) {
    if (s.result) m = std::min(m, s.result->psi[j - 1]);
  }
  return m;
}

std::string Trajectory::to_csv() const {
  std::string out = "logQ";
  for (std::size_t j = 1; j <= k + 1; ++j) out += ",psi_" + std::to_string(j);
  out += ",mode\n";
  for (const auto& s : samples) {
    out += fmt12(s.log_q);
    for (std::size_t j = 0; j <= k; ++j) {
      out += ",";
      out += s.result ? fmt12(s.result->psi[j]) : "nan";
    }
    out += ",";
    out += s.result ? to_string(s.result->mode) : "missing";
    out += "\n";
  }
  return out;
}

std::string Trajectory::witness_dump() const {
  std::string out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].result) continue;
    const auto& w = samples[i].result->witnesses;
    for (std::size_t j = 0; j < w.size(); ++j) {
      out += std::to_string(i) + " " + std::to_string(j + 1) + " ";
      auto c = w[j].coordinates();
      for (std::size_t m = 0; m < c.size(); ++m) {
        if (m) out += ",";
        out += c[m].get_str();
      }
      out += "\n";
    }
  }
  return out;
}

Trajectory psi_trajectory(const ApproxTarget& target, const std::vector<QValue>& grid,
                          const TrajectoryOptions& options) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw DomainError("Q grid must be strictly increasing");
  }
  Trajectory traj;
  traj.target_id = target.id;
  traj.k = target.k();
  traj.samples.resize(grid.size());

  auto candidates = default_witness_candidates(target);
  candidates.insert(candidates.end(), options.witness_candidates.begin(),
                    options.witness_candidates.end());

  auto compute = [&](std::size_t i) {
    auto& s = traj.samples[i];
    s.q = grid[i];
    try {
      s.log_q = grid[i].log();
      if (enumeration_size(target, grid[i]) <= Integer(static_cast<unsigned long>(options.budget))) {
        s.result = successive_minima_enumerate(target, grid[i], {options.budget});
      } else {
        s.result = psi_upper_bounds_from_witnesses(target, grid[i], candidates);
      }
    } catch (const std::exception& e) {
      s.result.reset();
      s.error = e.what();
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) compute(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  if (!grid.empty()) traj.set_tail_window(options.tail_fraction);
  else traj.tail_fraction = options.tail_fraction;
  return traj;
}

std::vector<QValue> log_uniform_grid(double log10_min, double log10_max, std::size_t points) {
  if (points == 0) return {};
  if (!(log10_min > 0.0) || log10_max < log10_min) {
    throw DomainError("log-uniform grid needs 0 < log10(Q_min) <= log10(Q_max)");
  }
  std::vector<QValue> out;
  for (std::size_t i = 0; i < points; ++i) {
    double e = points == 1 ? log10_min
                           : log10_min + (log10_max - log10_min) * static_cast<double>(i) /
                                             static_cast<double>(points - 1);
    double re = std::round(e);
    if (std::fabs(e - re) < 1e-12) {
      out.push_back(QValue::of(Rational(pow(Integer(10), static_cast<unsigned long>(re)))));
      continue;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", std::pow(10.0, e));
    out.push_back(QValue::of(parse_rational(buf)));
  }
  return merge_grids(std::move(out), {});
}

std::vector<QValue> transition_samples(const QSequenceSpec& spec, const QValue& lo,
                                       const QValue& hi) {
  std::vector<QValue> out;
  const double log_hi = hi.log();
  const Rational alphas[] = {Rational(1, 2), Rational(1), Rational(3, 2)};
  for (std::size_t l = 1;; ++l) {
    if (auto avail = spec.available(); avail && l > *avail) break;
    const double log_q = spec.log_term(l);
    if (0.5 * log_q > log_hi + 1e-9) break;
    Integer q = spec.term(l);
    for (const auto& a : alphas) {
      auto v = QValue::power(Rational(q), a);
      if (v.compare(lo) >= 0 && v.compare(hi) <= 0) out.push_back(v);
    }
  }
  return out;
}

std::vector<QValue> merge_grids(std::vector<QValue> a, const std::vector<QValue>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace liou
