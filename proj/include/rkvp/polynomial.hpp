#pragma once

#include <cstddef>
#include <vector>

#include "rkvp/rational.hpp"

namespace rkvp {

/// Dense univariate polynomial over a commutative ring T; coefficient i
/// multiplies Y^i and trailing zeros are trimmed.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(T v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(std::size_t degree, T v) {
        std::vector<T> c(degree + 1, T(0));
        c[degree] = v;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    Polynomial scaled(T s) const {
        std::vector<T> c(c_);
        for (auto& v : c) v = v * s;
        return Polynomial(std::move(c));
    }

    /// d/dY.
    Polynomial derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<T> c(c_.size() - 1, T(0));
        for (std::size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = c_[i] * T(static_cast<long long>(i));
        return Polynomial(std::move(c));
    }

    T eval(T y) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
        return acc;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.c_ == b.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using YPolynomial = Polynomial<double>;
using RationalPoly = Polynomial<Rational>;

}  // namespace rkvp
