// Copyright 2026 The dncircle Authors
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

#include "dncircle/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dncircle/errors.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::specfun {

Jet2::Jet2(int order_x, int order_y) : order_x_(order_x), order_y_(order_y) {
  if (order_x < 0 || order_y < 0) throw UsageError("Jet2: negative order");
  coeffs_.assign(static_cast<std::size_t>(order_x + 1) * static_cast<std::size_t>(order_y + 1),
                 value_type(0.0));
}

Jet2 Jet2::constant(value_type c, int order_x, int order_y) {
  Jet2 j(order_x, order_y);
  j.coeffs_[0] = c;
  return j;
}

Jet2 Jet2::variable(Variable which, int order_x, int order_y) {
  Jet2 j = constant(1.0, order_x, order_y);
  if (which == Variable::x && order_x >= 1) j.coeff(1, 0) = 1.0;
  if (which == Variable::y && order_y >= 1) j.coeff(0, 1) = 1.0;
  return j;
}

Jet2::value_type Jet2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > order_x_ || j > order_y_) {
    throw UsageError("Jet2: coefficient (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside orders (" + std::to_string(order_x_) + ", " +
                     std::to_string(order_y_) + ")");
  }
  return coeffs_[index(i, j)];
}

Jet2::value_type& Jet2::coeff(int i, int j) {
  if (i < 0 || j < 0 || i > order_x_ || j > order_y_) {
    throw UsageError("Jet2: coefficient (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside orders (" + std::to_string(order_x_) + ", " +
                     std::to_string(order_y_) + ")");
  }
  return coeffs_[index(i, j)];
}

Jet2::value_type Jet2::derivative(int i, int j) const {
  return coeff(i, j) * std::exp(log_factorial(i) + log_factorial(j));
}

bool Jet2::all_finite() const noexcept {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

void Jet2::require_same_orders(const Jet2& other) const {
  if (!same_orders(other)) {
    throw UsageError("Jet2: order mismatch (" + std::to_string(order_x_) + ", " +
                     std::to_string(order_y_) + ") vs (" + std::to_string(other.order_x_) +
                     ", " + std::to_string(other.order_y_) + ")");
  }
}

Jet2& Jet2::operator+=(const Jet2& rhs) {
  require_same_orders(rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) {
  require_same_orders(rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet2& Jet2::operator+=(value_type c) noexcept {
  coeffs_[0] += c;
  return *this;
}

Jet2& Jet2::operator-=(value_type c) noexcept {
  coeffs_[0] -= c;
  return *this;
}

Jet2& Jet2::operator*=(value_type c) noexcept {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

Jet2& Jet2::operator/=(value_type c) noexcept {
  for (auto& v : coeffs_) v /= c;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  a.require_same_orders(b);
  Jet2 out(a.order_x_, a.order_y_);
  for (int i1 = 0; i1 <= a.order_x_; ++i1) {
    for (int j1 = 0; j1 <= a.order_y_; ++j1) {
      const auto av = a.coeffs_[a.index(i1, j1)];
      if (av == Jet2::value_type(0.0)) continue;
      for (int i2 = 0; i2 + i1 <= a.order_x_; ++i2) {
        for (int j2 = 0; j2 + j1 <= a.order_y_; ++j2) {
          out.coeffs_[out.index(i1 + i2, j1 + j2)] += av * b.coeffs_[b.index(i2, j2)];
        }
      }
    }
  }
  return out;
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

Jet2 compose_series(const Jet2& a, std::span<const std::complex<double>> taylor) {
  const int order = a.order_x() + a.order_y();
  Jet2 h = a;
  h.coeff(0, 0) = 0.0;
  // Horner in h, highest retained power first.
  const int top = std::min<int>(order, static_cast<int>(taylor.size()) - 1);
  Jet2 acc = Jet2::constant(top >= 0 ? taylor[top] : 0.0, a.order_x(), a.order_y());
  for (int k = top - 1; k >= 0; --k) {
    acc = acc * h;
    acc += taylor[k];
  }
  return acc;
}

Jet2 exp(const Jet2& a) {
  const int order = a.order_x() + a.order_y();
  std::vector<std::complex<double>> t(static_cast<std::size_t>(order) + 1);
  const auto e0 = std::exp(a.value());
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    t[k] = e0 / fact;
  }
  return compose_series(a, t);
}

Jet2 reciprocal(const Jet2& a) {
  const auto a0 = a.value();
  if (a0 == std::complex<double>(0.0) || !std::isfinite(std::abs(1.0 / a0))) {
    throw SingularJetError(a0);
  }
  const int order = a.order_x() + a.order_y();
  std::vector<std::complex<double>> t(static_cast<std::size_t>(order) + 1);
  const auto inv = 1.0 / a0;
  std::complex<double> p = inv;
  for (int k = 0; k <= order; ++k) {
    t[k] = p;
    p *= -inv;
  }
  return compose_series(a, t);
}

Jet2 bessel_i0(const Jet2& a) {
  const auto t = bessel_i0_taylor(a.value(), a.order_x() + a.order_y());
  return compose_series(a, t);
}

Jet2 pow(const Jet2& a, int k) {
  if (k < 0) throw UsageError("Jet2 pow: negative exponent");
  Jet2 result = Jet2::constant(1.0, a.order_x(), a.order_y());
  Jet2 base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Jet2 laguerre(int n, double alpha, const Jet2& a) {
  const auto c = laguerre_coefficients(n, alpha);
  Jet2 acc = Jet2::constant(c[n], a.order_x(), a.order_y());
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * a;
    acc += c[k];
  }
  return acc;
}

}  // namespace dncircle::specfun
