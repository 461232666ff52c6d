#include "alphatrace/alpha_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace alphatrace {

AlphaPoly::AlphaPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

AlphaPoly::AlphaPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {
  trim();
}

AlphaPoly AlphaPoly::constant(const Rational& c) { return AlphaPoly({c}); }

AlphaPoly AlphaPoly::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return AlphaPoly(std::move(v));
}

AlphaPoly AlphaPoly::alpha_beta(std::size_t a, std::size_t b) {
  // binomial expansion of (1 - alpha)^b, shifted by alpha^a
  std::vector<Rational> v(a + b + 1);
  Integer binom = 1;
  for (std::size_t j = 0; j <= b; ++j) {
    v[a + j] = (j % 2 == 0) ? Rational(binom) : Rational(-binom);
    binom = binom * static_cast<unsigned long>(b - j) / static_cast<unsigned long>(j + 1);
  }
  return AlphaPoly(std::move(v));
}

void AlphaPoly::trim() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational AlphaPoly::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational AlphaPoly::evaluate(const Rational& alpha) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * alpha + *it;
  }
  return acc;
}

AlphaPoly AlphaPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  }
  return AlphaPoly(std::move(v));
}

AlphaPoly& AlphaPoly::operator+=(const AlphaPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

AlphaPoly& AlphaPoly::operator-=(const AlphaPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

AlphaPoly& AlphaPoly::operator*=(const AlphaPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

AlphaPoly& AlphaPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

AlphaPoly AlphaPoly::operator-() const {
  AlphaPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

void AlphaPoly::divmod(const AlphaPoly& divisor, AlphaPoly& quotient,
                       AlphaPoly& remainder) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size();
  std::vector<Rational> quo(rem.size() >= dd ? rem.size() - dd + 1 : 0);
  const Rational& lead = divisor.coeffs_.back();
  for (std::size_t i = rem.size(); i-- >= dd;) {
    if (rem[i] == 0) continue;
    Rational q = rem[i] / lead;
    quo[i - dd + 1] = q;
    for (std::size_t j = 0; j < dd; ++j) rem[i - dd + 1 + j] -= q * divisor.coeffs_[j];
  }
  quotient = AlphaPoly(std::move(quo));
  remainder = AlphaPoly(std::move(rem));
}

std::string AlphaPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (!unit || i == 0) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << "a";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

AlphaPoly poly_gcd(AlphaPoly a, AlphaPoly b) {
  while (!b.is_zero()) {
    AlphaPoly q, r;
    a.divmod(b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a *= Rational(1) / a.leading();
  return a;
}

namespace {

AlphaPoly square_free(const AlphaPoly& p) {
  AlphaPoly g = poly_gcd(p, p.derivative());
  AlphaPoly q, r;
  p.divmod(g, q, r);
  return q;
}

// Removes a simple root at x (q must be square-free).
AlphaPoly deflate_if_root(const AlphaPoly& q, const Rational& x) {
  if (q.evaluate(x) != 0) return q;
  AlphaPoly quo, rem;
  q.divmod(AlphaPoly({-x, Rational(1)}), quo, rem);
  return quo;
}

std::vector<AlphaPoly> sturm_chain(const AlphaPoly& q) {
  std::vector<AlphaPoly> chain{q, q.derivative()};
  while (!chain.back().is_zero()) {
    AlphaPoly quo, rem;
    chain[chain.size() - 2].divmod(chain.back(), quo, rem);
    if (rem.is_zero()) break;
    chain.push_back(-rem);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<AlphaPoly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(p.evaluate(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

std::size_t count_open_squarefree(const AlphaPoly& sf, const Rational& lo,
                                  const Rational& hi) {
  if (!(lo < hi)) return 0;
  AlphaPoly q = deflate_if_root(deflate_if_root(sf, lo), hi);
  if (q.degree() <= 0) return 0;
  auto chain = sturm_chain(q);
  return static_cast<std::size_t>(sign_variations(chain, lo) - sign_variations(chain, hi));
}

void isolate(const AlphaPoly& sf, const Rational& lo, const Rational& hi,
             std::vector<RootInterval>& out) {
  std::size_t c = count_open_squarefree(sf, lo, hi);
  if (c == 0) return;
  if (c == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(sf, lo, mid, out);
  if (sf.evaluate(mid) == 0) out.push_back({mid, mid});
  isolate(sf, mid, hi, out);
}

}  // namespace

std::size_t count_roots_open(const AlphaPoly& p, const Rational& lo,
                             const Rational& hi) {
  if (p.degree() <= 0) return 0;
  return count_open_squarefree(square_free(p), lo, hi);
}

SignReport sign_on_unit_interval(const AlphaPoly& p) {
  SignReport report;
  if (p.is_zero()) return report;
  if (p.degree() > 0) {
    isolate(square_free(p), Rational(0), Rational(1), report.roots);
  }
  if (!report.roots.empty()) {
    report.sign = IntervalSign::Mixed;
  } else {
    report.sign = p.evaluate(Rational(1, 2)) > 0 ? IntervalSign::Positive
                                                 : IntervalSign::Negative;
  }
  return report;
}

}  // namespace alphatrace
