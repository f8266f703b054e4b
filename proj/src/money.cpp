#include "walras/money.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace walras {

Money::Money(long num, long den) {
  if (den == 0) throw std::domain_error("Money: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Money Money::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("Money: empty number");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("Money: malformed fraction '" + std::string(text) + "'");
    mpz_class d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("Money: zero denominator in '" + std::string(text) + "'");
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else {
    auto dot = body.find('.');
    auto int_part = body.substr(0, dot);
    std::string_view frac_part;
    if (dot != std::string_view::npos) frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("Money: malformed number '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (dot != std::string_view::npos && frac_part.empty()))
      throw std::invalid_argument("Money: malformed number '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num{digits.empty() ? std::string("0") : digits, 10};
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    q = mpq_class(num, den);
  }
  q.canonicalize();
  if (negative) q = -q;
  return Money(q);
}

Money& Money::operator/=(const Money& o) {
  if (o.is_zero()) throw std::domain_error("Money: division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Money::to_fraction_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Money::to_string() const {
  if (is_integer()) return q_.get_num().get_str();

  // Terminating iff the denominator has no prime factors other than 2 and 5.
  mpz_class den = q_.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return to_fraction_string();

  unsigned places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = q_.get_num() * scale / q_.get_den();  // exact
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::ostream& operator<<(std::ostream& os, const Money& m) { return os << m.to_string(); }

Money min(const Money& a, const Money& b) { return b < a ? b : a; }
Money max(const Money& a, const Money& b) { return a < b ? b : a; }
Money abs(const Money& a) { return a.is_negative() ? -a : a; }

Money rational_gcd(const Money& a, const Money& b) {
  if (a.is_zero()) return abs(b);
  if (b.is_zero()) return abs(a);
  mpz_class num_gcd, den_lcm;
  mpz_gcd(num_gcd.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
  mpz_lcm(den_lcm.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  return Money(mpq_class(num_gcd, den_lcm));
}

const Money& ExtendedMoney::value() const {
  if (infinite_) throw std::logic_error("ExtendedMoney: value() of infinity");
  return value_;
}

}  // namespace walras
