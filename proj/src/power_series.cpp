#include "swolff/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace swolff {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& m1, const Monomial& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m1[i] > m[i]) return false;
  }
  return true;
}

Monomial unit_monomial(int nvars, int var, int degree) {
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(var)] = degree;
  return m;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

namespace {

void extend(Monomial& cur, std::size_t var, int left, std::vector<Monomial>& out, std::size_t cap) {
  if (var + 1 == cur.size()) {
    cur[var] = left;
    out.push_back(cur);
    if (out.size() > cap) {
      throw Error(ErrorCode::TooManyMonomials, "more than " + std::to_string(cap) + " monomials");
    }
    return;
  }
  for (int d = left; d >= 0; --d) {
    cur[var] = d;
    extend(cur, var + 1, left - d, out, cap);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(int nvars, int order, std::size_t cap) {
  std::vector<Monomial> out;
  if (nvars <= 0) return out;
  Monomial cur(static_cast<std::size_t>(nvars), 0);
  for (int d = 0; d <= order; ++d) extend(cur, 0, d, out, cap);
  return out;
}

OperatorSeries::OperatorSeries(int nvars, int order, Eigen::Index dim)
    : nvars_(nvars), order_(order), dim_(dim) {}

void OperatorSeries::add(const Monomial& m, const Matrix& x) {
  if (total_degree(m) > order_) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, x);
  } else {
    it->second += x;
  }
}

void OperatorSeries::set(const Monomial& m, const Matrix& x) {
  if (total_degree(m) > order_) return;
  terms_[m] = x;
}

Matrix OperatorSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return Matrix::Zero(dim_, dim_);
  return it->second;
}

void OperatorSeries::check_compatible(const OperatorSeries& o) const {
  if (o.nvars_ != nvars_ || o.dim_ != dim_) {
    throw Error(ErrorCode::DimMismatch, "series with different variables or dimension");
  }
}

OperatorSeries OperatorSeries::operator+(const OperatorSeries& o) const {
  check_compatible(o);
  OperatorSeries out(nvars_, std::min(order_, o.order_), dim_);
  for (const auto& [m, x] : terms_) out.add(m, x);
  for (const auto& [m, x] : o.terms_) out.add(m, x);
  return out;
}

OperatorSeries OperatorSeries::operator-(const OperatorSeries& o) const { return *this + o.scaled(-1.0); }

OperatorSeries OperatorSeries::operator*(const OperatorSeries& o) const {
  check_compatible(o);
  OperatorSeries out(nvars_, std::min(order_, o.order_), dim_);
  for (const auto& [ma, xa] : terms_) {
    const int da = total_degree(ma);
    for (const auto& [mb, xb] : o.terms_) {
      if (da + total_degree(mb) > out.order_) continue;
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add(m, xa * xb);
    }
  }
  return out;
}

OperatorSeries OperatorSeries::scaled(Complex c) const {
  OperatorSeries out = *this;
  for (auto& [m, x] : out.terms_) x *= c;
  return out;
}

OperatorSeries OperatorSeries::constant(int nvars, int order, const Matrix& x) {
  OperatorSeries out(nvars, order, x.rows());
  out.set(Monomial(static_cast<std::size_t>(nvars), 0), x);
  return out;
}

OperatorSeries OperatorSeries::exp() const {
  const Monomial zero(static_cast<std::size_t>(nvars_), 0);
  if (contains(zero) && coefficient(zero).norm() > 0.0) {
    throw Error(ErrorCode::ValidationError, "series exp needs a vanishing constant term");
  }
  // Every term has degree >= 1, so powers above the order vanish.
  OperatorSeries out = constant(nvars_, order_, identity(dim_));
  OperatorSeries power = out;
  for (int k = 1; k <= order_; ++k) {
    power = (power * *this).scaled(1.0 / k);
    out = out + power;
  }
  return out;
}

OperatorSeries OperatorSeries::log() const {
  const Monomial zero(static_cast<std::size_t>(nvars_), 0);
  if ((coefficient(zero) - identity(dim_)).norm() > tol::structural * static_cast<double>(dim_)) {
    throw Error(ErrorCode::ValidationError, "series log needs an identity constant term");
  }
  OperatorSeries y = *this - constant(nvars_, order_, identity(dim_));
  y.terms_.erase(zero);
  OperatorSeries out(nvars_, order_, dim_);
  OperatorSeries power = y;
  for (int k = 1; k <= order_; ++k) {
    out = out + power.scaled((k % 2 == 1 ? 1.0 : -1.0) / k);
    power = power * y;
  }
  return out;
}

std::vector<Matrix> OperatorSeries::specialize() const {
  std::vector<Matrix> out(static_cast<std::size_t>(order_) + 1, Matrix::Zero(dim_, dim_));
  for (const auto& [m, x] : terms_) out[static_cast<std::size_t>(total_degree(m))] += x;
  return out;
}

Matrix OperatorSeries::evaluate(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != nvars_) {
    throw Error(ErrorCode::DimMismatch, "series evaluated with the wrong number of variables");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& [m, x] : terms_) {
    double w = 1.0;
    for (std::size_t i = 0; i < m.size(); ++i) w *= std::pow(values[i], m[i]);
    out += w * x;
  }
  return out;
}

}  // namespace swolff
