#ifndef FINLOC_RATIONAL_HPP
#define FINLOC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "finloc/core.hpp"

namespace finloc {

/// Exact rational scalar. No floating point is used anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/**
 * Complex number with exact rational real and imaginary parts.
 * Covers every scalar the library needs: valuation values, measure values,
 * algebra element coordinates, and predual weights.
 */
struct CRat {
  Rat re{0};
  Rat im{0};

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}  // NOLINT: implicit from real
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  CRat(long r) : re(r) {}  // NOLINT
  CRat(int r) : re(r) {}   // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CRat conj() const { return {re, -im}; }
  Rat modulus_squared() const { return re * re + im * im; }

  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
  CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
  /// Lexicographic order; used only for deterministic containers, not as a
  /// field order.
  friend bool operator<(const CRat& a, const CRat& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  }
};

/// Canonical form: "0", "3/2", "-1/3i", "1+2i", "1-1/2i".
inline std::string to_string(const CRat& z) {
  if (z.im == 0) return to_string(z.re);
  std::string imag = to_string(z.im) + "i";
  if (z.re == 0) return imag;
  if (z.im > 0) return to_string(z.re) + "+" + imag;
  return to_string(z.re) + imag;  // sign carried by the imaginary part
}

/// Parses "p", "p/q", with optional sign. Empty optional on malformed input.
inline std::optional<Rat> parse_rat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
  boost::multiprecision::cpp_int num = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    num = num * 10 + (s[pos] - '0');
    ++pos;
  }
  boost::multiprecision::cpp_int den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
    den = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      den = den * 10 + (s[pos] - '0');
      ++pos;
    }
    if (den == 0) return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  Rat q(num, den);
  return neg ? Rat(-q) : q;
}

/// Parses the canonical complex form produced by to_string(CRat).
inline std::optional<CRat> parse_crat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // Pure imaginary or pure real fast paths.
  if (s.back() == 'i') {
    // Split at the last '+' or '-' that is not the leading sign and not after '/'.
    std::string_view body = s.substr(0, s.size() - 1);
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
        auto re = parse_rat(body.substr(0, i));
        std::string_view imtok = body.substr(i);
        if (imtok == "+") imtok = "+1";
        if (imtok == "-") imtok = "-1";
        auto im = parse_rat(imtok);
        if (re && im) return CRat{*re, *im};
        return std::nullopt;
      }
    }
    if (body.empty() || body == "+") return CRat{Rat(0), Rat(1)};
    if (body == "-") return CRat{Rat(0), Rat(-1)};
    auto im = parse_rat(body);
    if (im) return CRat{Rat(0), *im};
    return std::nullopt;
  }
  auto re = parse_rat(s);
  if (re) return CRat{*re};
  return std::nullopt;
}

}  // namespace finloc

#endif  // FINLOC_RATIONAL_HPP
