#include "gwloc/rational.hpp"

#include <limits>
#include <stdexcept>

namespace gwloc {

namespace {

mpz_class parse_integer(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (digits.empty()) {
        throw std::invalid_argument("empty integer in rational literal");
    }
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("invalid digit in rational literal: " + std::string(text));
        }
    }
    std::string owned(text.front() == '+' ? text.substr(1) : text);
    return mpz_class(owned, 10);
}

}  // namespace

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator)
    : value_(numerator, denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    const mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in rational literal");
    }
    return Rational(parse_integer(text.substr(0, slash)), den);
}

std::optional<std::int64_t> Rational::to_int64() const {
    if (!is_integer()) {
        return std::nullopt;
    }
    const mpz_class& num = value_.get_num();
    static const mpz_class lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const mpz_class hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    if (num < lo || num > hi) {
        return std::nullopt;
    }
    return std::stoll(num.get_str());
}

std::string Rational::to_string() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    Rational out;
    mpz_pow_ui(out.value_.get_num_mpz_t(), value_.get_num_mpz_t(),
               static_cast<unsigned long>(exponent));
    mpz_pow_ui(out.value_.get_den_mpz_t(), value_.get_den_mpz_t(),
               static_cast<unsigned long>(exponent));
    return out;
}

Rational Rational::inverse() const {
    if (is_zero()) {
        throw std::domain_error("inverse of zero");
    }
    Rational out;
    mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& other) {
    if (other.is_zero()) {
        throw std::domain_error("division by zero");
    }
    value_ /= other.value_;
    return *this;
}

Rational Rational::operator-() const {
    Rational out;
    mpq_neg(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
    return os << value.to_string();
}

}  // namespace gwloc
