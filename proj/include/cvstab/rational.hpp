#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cvstab/intmath.hpp"

namespace cvstab {

// Exact fraction over int64, always in lowest terms with positive
// denominator. Overflow throws instead of wrapping.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num_, b.den_),
                                    checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num_, b.num_),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checked_mul(a.num_, b.den_),
                        checked_mul(a.den_, b.num_));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) {
        return !(a == b);
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // "3", "-1/2", "+5/4". Anything else (including "1/0") is an error.
    static Rational parse(const std::string& text) {
        std::size_t slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return Rational(n);
            }
            std::int64_t n = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            std::int64_t d = std::stoll(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1)
                throw std::invalid_argument(text);
            return Rational(n, d);
        } catch (const std::out_of_range&) {
            throw std::overflow_error("rational literal out of range: " + text);
        }
    }

  private:
    struct raw_tag {};
    Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace cvstab
