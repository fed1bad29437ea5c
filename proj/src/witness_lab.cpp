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

#include "liou/witness_lab.hpp"

#include <cstdio>

#include "liou/error.hpp"

namespace liou {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string show(const Integer& z, bool compact) {
  if (!compact) return to_string(z);
  return "<" + std::to_string(decimal_digits(z)) + " digits>";
}

}  // namespace

bool admissible(const QSequenceSpec& spec, std::size_t k, std::size_t n) {
  if (auto avail = spec.available(); avail && *avail < n + 2) return false;
  if (spec.kind() == SequenceKind::BasePower) {
    return spec.exponent(n + 2) > Integer(static_cast<unsigned long>(k + 1)) * spec.exponent(n + 1);
  }
  return spec.term(n + 2) > pow(spec.term(n + 1), k + 1);
}

WitnessFamily build_family(const QSequenceSpec& spec, std::size_t k, std::size_t n) {
  if (k == 0) throw DomainError("k must be positive");
  if (n == 0) throw DomainError("n must be positive");
  auto avail = spec.available();
  if (avail && *avail < n + 1) {
    throw ValidationError("spec has " + std::to_string(*avail) + " terms, family needs " +
                          std::to_string(n + 1));
  }
  const auto q = q_terms(spec, n + 1);
  WitnessFamily f;
  f.spec_id = spec.id();
  f.k = k;
  f.n = n;
  f.U = q[n - 1];
  f.V = q[n];
  Rational partial = 0;
  for (std::size_t l = 0; l < n; ++l) partial += Rational(Integer(1), q[l]);
  Rational a = partial * Rational(f.U);
  a.canonicalize();
  if (a.get_den() != 1) throw InternalError("A = q_n * sum 1/q_l is not an integer");
  f.A = a.get_num();

  // Powers reused across entries.
  std::vector<Integer> u_pow(k + 1), a_pow(k + 1), v_pow(k + 1);
  for (std::size_t e = 0; e <= k; ++e) {
    u_pow[e] = pow(f.U, e);
    a_pow[e] = pow(f.A, e);
    v_pow[e] = pow(f.V, e);
  }
  const Rational a_over_u(f.A, f.U);
  const Rational inv_v(Integer(1), f.V);
  f.E.assign(k + 1, std::vector<Integer>(k + 1));
  for (std::size_t j = 1; j <= k + 1; ++j) {
    for (std::size_t m = 1; m <= k + 1; ++m) {
      Integer sum = 0;
      Rational closed = 0;
      const std::size_t top = std::min(m - 1, j - 1);
      for (std::size_t i = 0; i <= top; ++i) {
        Integer c = binomial(m - 1, i);
        sum += c * u_pow[k - (m - 1 - i)] * a_pow[m - 1 - i] * v_pow[j - 1 - i];
        closed += Rational(c) * pow(a_over_u, m - 1 - i) * pow(inv_v, i);
      }
      closed *= Rational(u_pow[k] * v_pow[j - 1]);
      if (closed.get_den() != 1 || closed.get_num() != sum) {
        throw InternalError("closed form of E is not integral");
      }
      f.E[j - 1][m - 1] = sum;
    }
  }
  f.c_achieved = log_ratio(Rational(f.V), Rational(f.U));
  return f;
}

std::size_t witness_depth(const WitnessFamily& f, std::size_t n_extra) {
  return f.n + 1 + n_extra;
}

namespace {

// Shared evaluation of the error table; throws PrecisionError on ambiguity.
std::vector<ErrorEntry> error_table(const WitnessFamily& f, const QSequenceSpec& spec,
                                    std::size_t n_extra, std::size_t& depth_out) {
  const std::size_t k = f.k;
  const std::size_t depth = witness_depth(f, n_extra);
  auto avail = spec.available();
  if (avail && *avail < depth) {
    throw PrecisionError("truncation depth " + std::to_string(depth) + " exceeds the " +
                         std::to_string(*avail) + " available terms");
  }
  const auto t = truncate(spec, depth);
  const auto pw = powers(t, k);
  const Rational half(1, 2);
  const Rational scale_unit(pow(f.U, k), f.V);  // U^k / V
  std::vector<ErrorEntry> out;
  Integer vj = 1;
  for (std::size_t j = 1; j <= k + 1; ++j) {
    const Integer row_scale = pow(f.U, k) * vj;
    for (std::size_t m = 1; m <= k + 1; ++m) {
      ErrorEntry e;
      e.j = j;
      e.m = m;
      Rational target = m == 1 ? Rational(row_scale) : Rational(row_scale) * pw.entries[m - 2];
      Rational slack = m == 1 ? Rational(0) : Rational(row_scale) * pw.tail_bounds[m - 2];
      e.error = abs(Rational(f.E[j - 1][m - 1]) - target);
      if (e.error + slack < half) {
        e.nearest = true;
      } else if (e.error - slack >= half) {
        e.nearest = false;
      } else {
        throw PrecisionError("rounding of E_{" + std::to_string(j) + "," + std::to_string(m) +
                             "} is ambiguous at depth " + std::to_string(depth) +
                             "; raise the extra depth");
      }
      Rational r = e.error / scale_unit;
      e.ratio = r.get_d();
      out.push_back(std::move(e));
    }
    vj *= f.V;
  }
  depth_out = depth;
  return out;
}

}  // namespace

std::vector<std::vector<bool>> verify_round(const WitnessFamily& f, const QSequenceSpec& spec,
                                            std::size_t n_extra) {
  std::size_t depth = 0;
  const auto table = error_table(f, spec, n_extra, depth);
  std::vector<std::vector<bool>> ok(f.k + 1, std::vector<bool>(f.k + 1));
  for (const auto& e : table) ok[e.j - 1][e.m - 1] = e.nearest;
  return ok;
}

bool Certificate::independent() const {
  if (conclusive && residue_matches && residue != 0) return true;
  return has_determinant && det_exact != 0;
}

Certificate det_certificate(const WitnessFamily& f) {
  Certificate c;
  const std::size_t k = f.k;
  const Integer uk = pow(f.U, k);
  const Integer power = pow(f.U, k * (k + 1));
  c.expected = power % f.V;
  c.conclusive = power > 0 && power < f.V;

  std::vector<std::vector<Integer>> reduced = f.E;
  c.triangular = true;
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t m = 0; m <= k; ++m) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), f.E[j][m].get_mpz_t(), f.V.get_mpz_t());
      reduced[j][m] = r;
      if (m < j && r != 0) c.triangular = false;
      if (m == j && r != uk % f.V) c.triangular = false;
    }
  }
  Integer det_mod = determinant(reduced);
  mpz_fdiv_r(c.residue.get_mpz_t(), det_mod.get_mpz_t(), f.V.get_mpz_t());
  c.residue_matches = c.residue == c.expected;
  if (c.conclusive && (!c.residue_matches || c.residue == 0)) {
    throw InternalError("determinant residue disagrees with U^{k(k+1)} mod V");
  }
  c.det_exact = determinant(f.E);
  c.has_determinant = true;
  return c;
}

Certificate error_and_exponents(const WitnessFamily& f, const QSequenceSpec& spec,
                                std::size_t n_extra) {
  Certificate c;
  c.errors = error_table(f, spec, n_extra, c.depth);
  c.has_errors = true;
  const std::size_t k = f.k;
  for (const auto& e : c.errors) {
    if (e.m > 1) c.max_ratio = std::max(c.max_ratio, e.ratio);
  }
  // Best exponent of each row: min over m >= 2 of -ln err / ln E_{j,1}, then
  // running minimum over rows i <= j.
  auto row_exponent = [&](std::size_t i, const Integer& height) {
    double worst = kInfinity;
    for (const auto& e : c.errors) {
      if (e.j != i || e.m == 1 || e.error == 0) continue;
      worst = std::min(worst, log_ratio(Rational(1) / e.error, Rational(height)));
    }
    return worst;
  };
  for (std::size_t j = 1; j <= k + 1; ++j) {
    const Integer& height = f.E[j - 1][0];
    double eta = kInfinity;
    for (std::size_t i = 1; i <= j; ++i) eta = std::min(eta, row_exponent(i, height));
    c.eta.push_back(eta);
    c.eta_target.push_back(j == 1 ? kInfinity : 1.0 / static_cast<double>(j - 1));
  }
  return c;
}

Certificate certify(const WitnessFamily& f, const QSequenceSpec& spec, std::size_t n_extra) {
  Certificate c = det_certificate(f);
  for (std::size_t extra = n_extra;; ++extra) {
    try {
      Certificate e = error_and_exponents(f, spec, extra);
      c.depth = e.depth;
      c.errors = std::move(e.errors);
      c.max_ratio = e.max_ratio;
      c.eta = std::move(e.eta);
      c.eta_target = std::move(e.eta_target);
      c.has_errors = true;
      return c;
    } catch (const PrecisionError&) {
      if (extra >= n_extra + 4) throw;
    }
  }
}

std::string certificate_text(const WitnessFamily& f, const Certificate& c, bool compact) {
  std::string out;
  out += "spec=" + f.spec_id + "\n";
  out += "k=" + std::to_string(f.k) + "\n";
  out += "n=" + std::to_string(f.n) + "\n";
  out += "U=" + show(f.U, compact) + "\n";
  out += "V=" + show(f.V, compact) + "\n";
  out += "A=" + show(f.A, compact) + "\n";
  out += "C_achieved=" + fmt(f.c_achieved) + "\n";
  for (std::size_t j = 0; j <= f.k; ++j) {
    for (std::size_t m = 0; m <= f.k; ++m) {
      out += "E." + std::to_string(j + 1) + "." + std::to_string(m + 1) + "=" +
             show(f.E[j][m], compact) + "\n";
    }
  }
  if (c.has_determinant) {
    out += "det_residue_mod_V=" + show(c.residue, compact) + "\n";
    out += "expected_residue=" + show(c.expected, compact) + "\n";
    out += "conclusive=" + std::string(c.conclusive ? "true" : "false") + "\n";
    out += "residue_matches=" + std::string(c.residue_matches ? "true" : "false") + "\n";
    out += "triangular_mod_V=" + std::string(c.triangular ? "true" : "false") + "\n";
    out += "det_exact=" + show(c.det_exact, compact) + "\n";
    out += "independent=" + std::string(c.independent() ? "true" : "false") + "\n";
  }
  if (c.has_errors) {
    out += "truncation_depth=" + std::to_string(c.depth) + "\n";
    for (const auto& e : c.errors) {
      if (e.m == 1) continue;
      std::string key = "error." + std::to_string(e.j) + "." + std::to_string(e.m);
      out += key + ".nearest=" + (e.nearest ? "true" : "false") + "\n";
      out += key + ".ratio=" + fmt(e.ratio) + "\n";
      if (!compact) out += key + ".value=" + to_string(e.error) + "\n";
    }
    out += "max_ratio=" + fmt(c.max_ratio) + "\n";
    for (std::size_t j = 0; j < c.eta.size(); ++j) {
      std::string key = "eta." + std::to_string(j + 1);
      out += key + "=" + fmt(c.eta[j]) + "\n";
      out += key + ".target=" + fmt(c.eta_target[j]) + "\n";
    }
  }
  return out;
}

std::vector<IntVector> chain_candidates(const QSequenceSpec& spec, const RationalTruncation& t,
                                        std::size_t k) {
  std::vector<IntVector> out;
  if (t.depth < 2) return out;
  const auto pw = powers(t, k);
  const auto q = q_terms(spec, t.depth - 1);
  auto rounded = [&](const Integer& x) {
    IntVector v{x};
    for (std::size_t j = 0; j < k; ++j) v.push_back(round(Rational(x) * pw.entries[j]));
    return v;
  };
  for (const auto& ql : q) {
    Integer x = 1;
    for (std::size_t e = 1; e <= k; ++e) {
      x *= ql;
      out.push_back(rounded(x));
    }
  }
  for (std::size_t n = 1; n + 2 <= t.depth; ++n) {
    auto f = build_family(spec, k, n);
    for (const auto& row : f.E) out.push_back(row);
  }
  return out;
}

EtaSequence lambda_lower_bounds(const std::vector<WitnessFamily>& families,
                                const std::vector<Certificate>& certificates, std::size_t j) {
  if (families.size() != certificates.size()) {
    throw DomainError("one certificate per family is required");
  }
  EtaSequence s;
  s.j = j;
  s.target = j <= 1 ? kInfinity : 1.0 / static_cast<double>(j - 1);
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    const auto& c = certificates[i];
    if (i > 0 && (f.spec_id != families[0].spec_id || f.k != families[0].k)) {
      throw DomainError("families must share spec and k");
    }
    if (j == 0 || j > f.k + 1) continue;
    if (!c.independent()) {
      s.rejected.push_back("n=" + std::to_string(f.n) + ": rows not shown independent");
      continue;
    }
    if (!c.has_errors) throw DomainError("certificate lacks the exponent table");
    double eta = c.eta[j - 1];
    if (!s.eta.empty() && eta < s.eta.back()) s.non_decreasing = false;
    if (eta > s.target) s.below_target = false;
    s.n.push_back(f.n);
    s.eta.push_back(eta);
  }
  return s;
}

}  // namespace liou
