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

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dncircle::specfun {

/// Bivariate truncated Taylor expansion about (x, y) = (1, 1).
///
/// Entry (i, j) holds (1 / (i! j!)) d^{i+j} f / dx^i dy^j at the expansion
/// point, for i <= order_x and j <= order_y. Products and compositions drop
/// every coefficient outside that rectangle; the retained ones are exact.
class Jet2 {
 public:
  using value_type = std::complex<double>;
  enum class Variable { x, y };

  Jet2() : Jet2(0, 0) {}
  Jet2(int order_x, int order_y);

  static Jet2 constant(value_type c, int order_x, int order_y);
  /// Jet of f(x, y) = x (or y): constant term 1, unit first derivative.
  static Jet2 variable(Variable which, int order_x, int order_y);

  int order_x() const noexcept { return order_x_; }
  int order_y() const noexcept { return order_y_; }

  value_type coeff(int i, int j) const;
  value_type& coeff(int i, int j);
  value_type value() const noexcept { return coeffs_[0]; }

  /// Mixed partial derivative d^{i+j} f / dx^i dy^j at (1, 1), i.e. i! j! coeff(i, j).
  value_type derivative(int i, int j) const;

  bool all_finite() const noexcept;
  bool same_orders(const Jet2& other) const noexcept {
    return order_x_ == other.order_x_ && order_y_ == other.order_y_;
  }

  Jet2& operator+=(const Jet2& rhs);
  Jet2& operator-=(const Jet2& rhs);
  Jet2& operator*=(const Jet2& rhs);
  Jet2& operator+=(value_type c) noexcept;
  Jet2& operator-=(value_type c) noexcept;
  Jet2& operator*=(value_type c) noexcept;
  Jet2& operator/=(value_type c) noexcept;

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(Jet2 a) { return a *= -1.0; }

  friend Jet2 operator+(Jet2 a, value_type c) { return a += c; }
  friend Jet2 operator+(value_type c, Jet2 a) { return a += c; }
  friend Jet2 operator-(Jet2 a, value_type c) { return a -= c; }
  friend Jet2 operator-(value_type c, Jet2 a) { return (a *= -1.0) += c; }
  friend Jet2 operator*(Jet2 a, value_type c) { return a *= c; }
  friend Jet2 operator*(value_type c, Jet2 a) { return a *= c; }
  friend Jet2 operator/(Jet2 a, value_type c) { return a /= c; }

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(order_y_ + 1) +
           static_cast<std::size_t>(j);
  }
  void require_same_orders(const Jet2& other) const;

  int order_x_;
  int order_y_;
  std::vector<value_type> coeffs_;
};

/// f(a) where f is given by its Taylor coefficients about a.value():
/// f(a0 + h) = sum_k taylor[k] h^k. Coefficients beyond order_x + order_y are
/// never needed because h has no constant term.
Jet2 compose_series(const Jet2& a, std::span<const std::complex<double>> taylor);

Jet2 exp(const Jet2& a);
/// 1 / a; throws SingularJetError when the constant term vanishes.
Jet2 reciprocal(const Jet2& a);
/// I_0(a) through the Taylor expansion of I_0 about a.value().
Jet2 bessel_i0(const Jet2& a);
/// a^k for integer k >= 0 by repeated squaring.
Jet2 pow(const Jet2& a, int k);
/// L_n^(alpha)(a) as the explicit degree-n polynomial (Horner form).
Jet2 laguerre(int n, double alpha, const Jet2& a);

}  // namespace dncircle::specfun
