// SPDX-License-Identifier: Apache-2.0
#include "slf/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace slf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  Rat out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den) || den.front() == '0') bad(text);
    out = Rat(mpz_class(std::string(num)), mpz_class(std::string(den)));
    out.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad(text);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    out = Rat(mpz_class(std::string(whole) + std::string(frac)), den);
    out.canonicalize();
  } else {
    if (!all_digits(s)) bad(text);
    out = Rat(mpz_class(std::string(s)));
  }
  if (neg) out = -out;
  return out;
}

std::string to_string(const Rat& r) { return r.get_str(); }

double to_double(const Rat& r) { return r.get_d(); }

mpz_class floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

mpz_class ceil_rat(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::int64_t ceil_inverse(const Rat& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("ceil_inverse: eps must be positive");
  Rat inv = 1 / eps;
  return ceil_rat(inv).get_si();
}

}  // namespace slf
