#include "spectra/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("invalid integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("invalid denominator in '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty()) int_part = "0";
    if (frac_part.empty()) frac_part = "0";
    if (!all_digits(int_part) || !all_digits(frac_part)) {
      throw ParseError("invalid decimal '" + std::string(text) + "'");
    }
    mpz_class whole(std::string(int_part), 10);
    mpz_class frac(std::string(frac_part), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational q(whole * scale + frac, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational best_rational(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite value");
  if (max_denominator < 1) max_denominator = 1;
  const Rational target = from_double(x);

  // Convergents h/k of the continued fraction of `target`.
  mpz_class h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  Rational rest = target;
  const mpz_class bound = max_denominator;
  Rational best;
  bool have_best = false;

  for (int step = 0; step < 200; ++step) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (k > bound) {
      // Largest admissible semiconvergent versus the last convergent.
      mpz_class t = (bound - k_prev2) / k_prev;
      Rational semi(t * h_prev + h_prev2, t * k_prev + k_prev2);
      semi.canonicalize();
      Rational last(h_prev, k_prev);
      last.canonicalize();
      best = abs(semi - target) < abs(last - target) ? semi : last;
      have_best = true;
      break;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Rational frac = rest - Rational(a);
    if (frac == 0) {
      best = Rational(h, k);
      best.canonicalize();
      have_best = true;
      break;
    }
    rest = 1 / frac;
  }
  if (!have_best) {
    best = Rational(h_prev, k_prev);
    best.canonicalize();
  }
  return best;
}

}  // namespace spectra
