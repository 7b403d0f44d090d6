#pragma once

/**
 * @file rational.hpp
 * @brief Exact rationals over arbitrary-size integers, always in lowest terms.
 */

#include <compare>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kloos/error.hpp"

namespace kloos {

using bigint = boost::multiprecision::cpp_int;

class ExactRational {
public:
    ExactRational() : num_(0), den_(1) {}
    ExactRational(bigint num) : num_(std::move(num)), den_(1) {} // NOLINT: implicit by design

    ExactRational(bigint num, bigint den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw error(errc::invalid_argument, "zero denominator");
        normalize();
    }

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }

    double to_double() const {
        // scale so the quotient keeps full double precision even for huge operands
        const long shift = static_cast<long>(msb(num_)) - static_cast<long>(msb(den_));
        if (shift > 900 || shift < -900) return num_.convert_to<double>() / den_.convert_to<double>();
        return static_cast<double>(num_.convert_to<long double>() / den_.convert_to<long double>());
    }

    std::string to_string() const { return num_.str() + "/" + den_.str(); }

    friend ExactRational operator*(const ExactRational& x, const ExactRational& y) {
        return {x.num_ * y.num_, x.den_ * y.den_};
    }
    friend ExactRational operator+(const ExactRational& x, const ExactRational& y) {
        return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
    }
    friend ExactRational operator-(const ExactRational& x, const ExactRational& y) {
        return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
    }

    friend bool operator==(const ExactRational& x, const ExactRational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend std::strong_ordering operator<=>(const ExactRational& x, const ExactRational& y) {
        const bigint l = x.num_ * y.den_, r = y.num_ * x.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static unsigned msb(const bigint& v) {
        return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(abs(v)));
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const bigint g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    bigint num_;
    bigint den_;
};

} // namespace kloos
