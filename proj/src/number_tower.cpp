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

#include "liou/number_tower.hpp"

#include <cmath>
#include <sstream>

#include "liou/error.hpp"

namespace liou {
namespace {

std::vector<Integer> parse_integer_list(const std::string& text, const std::string& what) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError(what + ": empty list entry");
    item = item.substr(b, e - b + 1);
    Integer z;
    if (z.set_str(item, 10) != 0) throw ValidationError(what + ": bad integer '" + item + "'");
    out.push_back(z);
  }
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

unsigned long parse_ulong(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(text, &pos);
    if (pos != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(what + ": expected a positive integer, got '" + text + "'");
  }
}

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out;
}

}  // namespace

QSequenceSpec QSequenceSpec::explicit_list(std::vector<Integer> terms) {
  QSequenceSpec s;
  s.kind_ = SequenceKind::ExplicitList;
  s.values_ = std::move(terms);
  s.validate_list();
  return s;
}

void QSequenceSpec::validate_list() const {
  if (values_.empty()) throw ValidationError("explicit-list: no terms");
  if (values_[0] < 2) {
    throw ValidationError("explicit-list: term 1 must be at least 2 (got " + values_[0].get_str() + ")");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const auto& prev = values_[i - 1];
    const auto& cur = values_[i];
    if (cur <= prev) {
      throw ValidationError("explicit-list: term " + std::to_string(i + 1) + " (" + cur.get_str() +
                            ") is not larger than term " + std::to_string(i));
    }
    if (cur % prev != 0) {
      throw ValidationError("explicit-list: term " + std::to_string(i + 1) + " (" + cur.get_str() +
                            ") is not divisible by term " + std::to_string(i) + " (" +
                            prev.get_str() + ")");
    }
  }
}

QSequenceSpec QSequenceSpec::factorial(unsigned long base) {
  if (base < 2) throw ValidationError("base-power: base must be at least 2");
  QSequenceSpec s;
  s.kind_ = SequenceKind::BasePower;
  s.base_ = base;
  s.rule_ = ExponentRule::Factorial;
  return s;
}

QSequenceSpec QSequenceSpec::geometric(unsigned long base, unsigned long ratio) {
  if (base < 2) throw ValidationError("base-power: base must be at least 2");
  if (ratio < 2) throw ValidationError("base-power: geometric ratio must be at least 2");
  QSequenceSpec s = factorial(base);
  s.rule_ = ExponentRule::Geometric;
  s.ratio_ = ratio;
  return s;
}

QSequenceSpec QSequenceSpec::exponent_list(unsigned long base, std::vector<Integer> exponents) {
  if (base < 2) throw ValidationError("base-power: base must be at least 2");
  if (exponents.empty()) throw ValidationError("base-power: empty exponent list");
  if (exponents[0] < 1) throw ValidationError("base-power: exponent 1 must be positive");
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw ValidationError("base-power: exponent " + std::to_string(i + 1) +
                            " is not strictly larger than exponent " + std::to_string(i));
    }
  }
  QSequenceSpec s = factorial(base);
  s.rule_ = ExponentRule::List;
  s.values_ = std::move(exponents);
  return s;
}

QSequenceSpec QSequenceSpec::parse(std::string_view text) {
  auto doc = KeyValueDoc::parse(text);
  for (const auto& [key, value] : doc.entries()) {
    if (key != "kind" && key != "base" && key != "exponent_rule" && key != "terms") {
      throw ValidationError("spec: unknown key '" + key + "'");
    }
  }
  return from_fields(doc);
}

QSequenceSpec QSequenceSpec::from_fields(const KeyValueDoc& doc) {
  const std::string& kind = doc.require("kind");
  if (kind == "explicit-list") {
    if (doc.has("base") || doc.has("exponent_rule")) {
      throw ValidationError("explicit-list spec takes only 'terms'");
    }
    return explicit_list(parse_integer_list(doc.require("terms"), "terms"));
  }
  if (kind != "base-power") throw ValidationError("spec: unknown kind '" + kind + "'");
  if (doc.has("terms")) throw ValidationError("base-power spec does not take 'terms'");
  unsigned long base = parse_ulong(doc.require("base"), "base");
  const std::string& rule = doc.require("exponent_rule");
  if (rule == "factorial") return factorial(base);
  if (rule.rfind("geometric:", 0) == 0) {
    return geometric(base, parse_ulong(rule.substr(10), "geometric ratio"));
  }
  if (rule.rfind("list:", 0) == 0) {
    return exponent_list(base, parse_integer_list(rule.substr(5), "exponent list"));
  }
  throw ValidationError("spec: unknown exponent_rule '" + rule + "'");
}

std::string QSequenceSpec::serialize() const {
  if (kind_ == SequenceKind::ExplicitList) {
    return "kind=explicit-list\nterms=" + join(values_) + "\n";
  }
  std::string out = "kind=base-power\nbase=" + std::to_string(base_) + "\nexponent_rule=";
  switch (rule_) {
    case ExponentRule::Factorial: out += "factorial"; break;
    case ExponentRule::Geometric: out += "geometric:" + std::to_string(ratio_); break;
    case ExponentRule::List: out += "list:" + join(values_); break;
  }
  return out + "\n";
}

std::string QSequenceSpec::id() const {
  if (kind_ == SequenceKind::ExplicitList) return "explicit-list:" + join(values_);
  std::string out = "base-power:" + std::to_string(base_) + ":";
  switch (rule_) {
    case ExponentRule::Factorial: return out + "factorial";
    case ExponentRule::Geometric: return out + "geometric" + std::to_string(ratio_);
    case ExponentRule::List: return out + "list" + join(values_);
  }
  return out;
}

std::optional<std::size_t> QSequenceSpec::available() const {
  if (kind_ == SequenceKind::ExplicitList) return values_.size();
  if (rule_ == ExponentRule::List) return values_.size();
  return std::nullopt;
}

Integer QSequenceSpec::exponent(std::size_t l) const {
  if (l == 0) throw DomainError("sequence indices start at 1");
  if (kind_ != SequenceKind::BasePower) throw DomainError("explicit-list specs have no exponents");
  switch (rule_) {
    case ExponentRule::Factorial: {
      Integer r;
      mpz_fac_ui(r.get_mpz_t(), l);
      return r;
    }
    case ExponentRule::Geometric:
      return pow(Integer(ratio_), static_cast<unsigned long>(l));
    case ExponentRule::List:
      if (l > values_.size()) {
        throw ValidationError("exponent list has only " + std::to_string(values_.size()) + " entries");
      }
      return values_[l - 1];
  }
  throw InternalError("unreachable exponent rule");
}

double QSequenceSpec::log_term(std::size_t l) const {
  if (kind_ == SequenceKind::ExplicitList) return approx_log(term(l));
  return exponent(l).get_d() * std::log(static_cast<double>(base_));
}

Integer QSequenceSpec::term(std::size_t l) const {
  if (l == 0) throw DomainError("sequence indices start at 1");
  if (kind_ == SequenceKind::ExplicitList) {
    if (l > values_.size()) {
      throw ValidationError("explicit-list has only " + std::to_string(values_.size()) + " terms");
    }
    return values_[l - 1];
  }
  Integer a = exponent(l);
  double bits = a.get_d() * std::log2(static_cast<double>(base_));
  if (!a.fits_ulong_p() || bits > kMaxTermBits) {
    throw ResourceError("q_" + std::to_string(l) + " = " + std::to_string(base_) + "^" + a.get_str() +
                        " exceeds the materialization limit");
  }
  return pow(Integer(base_), a.get_ui());
}

std::vector<Integer> q_terms(const QSequenceSpec& spec, std::size_t count) {
  if (count == 0) throw DomainError("q_terms: N must be positive");
  std::vector<Integer> out;
  out.reserve(count);
  for (std::size_t l = 1; l <= count; ++l) out.push_back(spec.term(l));
  return out;
}

RationalTruncation RationalTruncation::from_rational(Rational value, Rational tail_bound,
                                                     Integer reliable_denominator,
                                                     std::string source) {
  if (tail_bound < 0) throw DomainError("tail bound must be non-negative");
  RationalTruncation t;
  t.value = std::move(value);
  t.value.canonicalize();
  t.depth = 0;
  t.tail_bound = std::move(tail_bound);
  t.reliable_denominator = std::move(reliable_denominator);
  t.source = std::move(source);
  return t;
}

RationalTruncation truncate(const QSequenceSpec& spec, std::size_t depth) {
  auto q = q_terms(spec, depth);
  const Integer& qn = q.back();
  Integer numer = 0;
  for (const auto& ql : q) numer += qn / ql;
  RationalTruncation t;
  t.value = Rational(numer, qn);
  t.value.canonicalize();
  t.depth = depth;
  auto avail = spec.available();
  if (avail && *avail <= depth) {
    // q_{N+1} >= 2 q_N, so the tail is at most 2/q_{N+1} <= 1/q_N.
    t.tail_bound = Rational(1, qn);
  } else {
    t.tail_bound = Rational(Integer(2), spec.term(depth + 1));
  }
  t.tail_bound.canonicalize();
  t.reliable_denominator = depth >= 2 ? q[depth - 2] : Integer(1);
  t.source = spec.id() + "@N=" + std::to_string(depth);
  return t;
}

PowerVector powers(const RationalTruncation& t, std::size_t k) {
  if (k == 0) throw DomainError("powers: k must be positive");
  PowerVector pv;
  Rational cur = t.value;
  Rational upper = t.value + t.tail_bound;
  Rational upper_pow = 1;
  for (std::size_t m = 1; m <= k; ++m) {
    pv.entries.push_back(cur);
    Rational tb = Rational(static_cast<unsigned long>(m)) * upper_pow * t.tail_bound;
    tb.canonicalize();
    pv.tail_bounds.push_back(tb);
    cur *= t.value;
    upper_pow *= upper;
  }
  return pv;
}

std::optional<GrowthWitness> check_growth(const QSequenceSpec& spec, std::size_t k,
                                          const Rational& C, std::size_t n_max) {
  if (C <= 0) throw DomainError("check_growth: C must be positive");
  if (k == 0) throw DomainError("check_growth: k must be positive");
  std::size_t last = n_max;
  if (auto avail = spec.available()) {
    if (*avail < 3) return std::nullopt;
    last = std::min(last, *avail - 2);
  }
  const Rational kp1(static_cast<unsigned long>(k + 1));
  for (std::size_t n = 1; n <= last; ++n) {
    if (spec.kind() == SequenceKind::BasePower) {
      Rational r1(spec.exponent(n + 1), spec.exponent(n));
      Rational r2(spec.exponent(n + 2), spec.exponent(n + 1));
      r1.canonicalize();
      r2.canonicalize();
      if (r1 > C && r2 > kp1) {
        return GrowthWitness{n, r1.get_d(), r2.get_d(), r1, r2};
      }
      continue;
    }
    // ln b / ln a > p/r  <=>  b^r > a^p for integers a, b > 1.
    Integer qn = spec.term(n), qn1 = spec.term(n + 1), qn2 = spec.term(n + 2);
    const Integer& p = C.get_num();
    const Integer& r = C.get_den();
    if (!p.fits_ulong_p() || !r.fits_ulong_p()) throw DomainError("check_growth: C too large");
    bool first = pow(qn1, r.get_ui()) > pow(qn, p.get_ui());
    bool second = qn2 > pow(qn1, static_cast<unsigned long>(k + 1));
    if (first && second) {
      GrowthWitness w;
      w.n = n;
      w.ratio1 = log_ratio(Rational(qn1), Rational(qn));
      w.ratio2 = log_ratio(Rational(qn2), Rational(qn1));
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace liou
