#ifndef DRAZIN_GAUSSIAN_RATIONAL_HPP
#define DRAZIN_GAUSSIAN_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace drazin {

/// Exact complex scalar re + im*i with arbitrary-precision rational parts.
///
/// Both parts are kept in lowest terms with a positive denominator after
/// every operation, so structural equality is numeric equality.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT: implicit by design of literals
    GaussianRational(mpq_class re, mpq_class im = 0);

    /// Builds re = num/den (im = 0). Throws std::domain_error on den == 0.
    static GaussianRational from_fraction(long num, long den);

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// Multiplicative inverse; throws std::domain_error for zero.
    GaussianRational reciprocal() const;

    GaussianRational& operator+=(const GaussianRational& rhs);
    GaussianRational& operator-=(const GaussianRational& rhs);
    GaussianRational& operator*=(const GaussianRational& rhs);
    GaussianRational& operator/=(const GaussianRational& rhs);

    friend GaussianRational operator+(GaussianRational lhs, const GaussianRational& rhs) { return lhs += rhs; }
    friend GaussianRational operator-(GaussianRational lhs, const GaussianRational& rhs) { return lhs -= rhs; }
    friend GaussianRational operator*(GaussianRational lhs, const GaussianRational& rhs) { return lhs *= rhs; }
    friend GaussianRational operator/(GaussianRational lhs, const GaussianRational& rhs) { return lhs /= rhs; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "re+im*i"-style human form, e.g. "1/2", "-3i", "1/2+2/3i".
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Parses a signed rational "p", "p/q", "-p/q" with q > 0 into canonical form.
/// Throws std::invalid_argument on anything else ("-4/-6", "1/0", "3/x", "").
mpq_class parse_rational(std::string_view text);

/// Canonical text of a rational: "p" when the denominator is 1, else "p/q".
std::string format_rational(const mpq_class& q);

}  // namespace drazin

#endif  // DRAZIN_GAUSSIAN_RATIONAL_HPP
