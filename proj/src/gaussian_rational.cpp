#include "drazin/gaussian_rational.hpp"

#include <cctype>
#include <ostream>

namespace drazin {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::from_fraction(long num, long den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q);
}

GaussianRational GaussianRational::reciprocal() const {
    if (is_zero()) {
        throw std::domain_error("reciprocal of zero");
    }
    if (is_real()) {
        return GaussianRational(mpq_class(1 / re_));
    }
    mpq_class norm = re_ * re_ + im_ * im_;
    return {mpq_class(re_ / norm), mpq_class(-im_ / norm)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs) {
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs) {
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs) {
    if (is_real() && rhs.is_real()) {
        re_ *= rhs.re_;
        return *this;
    }
    mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
    mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs) {
    if (rhs.is_real()) {
        if (sgn(rhs.re_) == 0) {
            throw std::domain_error("division by zero");
        }
        re_ /= rhs.re_;
        im_ /= rhs.re_;
        return *this;
    }
    return *this *= rhs.reciprocal();
}

std::string GaussianRational::to_string() const {
    if (is_real()) {
        return format_rational(re_);
    }
    std::string im = format_rational(im_) + "i";
    if (sgn(re_) == 0) {
        return im;
    }
    return format_rational(re_) + (sgn(im_) > 0 ? "+" : "") + im;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z.to_string();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    std::string_view num = body;
    std::string_view den = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    // Only the numerator may carry a sign; the denominator must be a plain
    // positive integer.
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (sgn(d) == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    if (negative) {
        n = -n;
    }
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const mpq_class& q) {
    // mpq_class::get_str already omits "/1".
    return q.get_str(10);
}

}  // namespace drazin
