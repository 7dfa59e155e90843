#include "cyclepart/params.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclepart {

namespace {
using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
  if (v > i128(9'000'000'000'000'000'000LL) ||
      v < -i128(9'000'000'000'000'000'000LL))
    throw std::overflow_error(std::string("Frac overflow in ") + what);
  return static_cast<long long>(v);
}

i128 ipow(i128 base, int exp) {
  i128 out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}
}  // namespace

Frac Frac::ratio(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Frac: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Frac f;
  f.num = n;
  f.den = d;
  return f;
}

Frac Frac::operator+(const Frac& o) const {
  i128 n = i128(num) * o.den + i128(o.num) * den;
  i128 d = i128(den) * o.den;
  return ratio(checked_ll(n, "+"), checked_ll(d, "+"));
}

Frac Frac::operator-(const Frac& o) const {
  i128 n = i128(num) * o.den - i128(o.num) * den;
  i128 d = i128(den) * o.den;
  return ratio(checked_ll(n, "-"), checked_ll(d, "-"));
}

Frac Frac::operator*(const Frac& o) const {
  // Cross-reduce before multiplying to keep magnitudes small.
  long long a = num, b = den, c = o.num, d = o.den;
  long long g1 = std::gcd(a < 0 ? -a : a, d);
  if (g1 > 1) {
    a /= g1;
    d /= g1;
  }
  long long g2 = std::gcd(c < 0 ? -c : c, b);
  if (g2 > 1) {
    c /= g2;
    b /= g2;
  }
  return ratio(checked_ll(i128(a) * c, "*"), checked_ll(i128(b) * d, "*"));
}

Frac Frac::operator/(const Frac& o) const {
  if (o.num == 0) throw std::invalid_argument("Frac: division by zero");
  Frac inv;
  inv.num = o.den;
  inv.den = o.num;
  if (inv.den < 0) {
    inv.num = -inv.num;
    inv.den = -inv.den;
  }
  return *this * inv;
}

Frac Frac::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Frac: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return ratio(n, d);
  }
  // Decimal with optional exponent: [-]digits[.digits][e[-]digits]
  std::string body = s;
  long long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stoll(s.substr(epos + 1));
    body = s.substr(0, epos);
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    neg = body[i] == '-';
    ++i;
  }
  i128 mant = 0;
  long long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < body.size(); ++i) {
    char c = body[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("Frac: bad number " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      mant = mant * 10 + (c - '0');
      if (mant > i128(1'000'000'000'000'000'000LL))
        throw std::invalid_argument("Frac: too many digits in " + s);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("Frac: bad character in " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("Frac: no digits in " + s);
  long long e = exp10 - frac_digits;
  i128 num = neg ? -mant : mant;
  i128 den = 1;
  while (e > 0) {
    num *= 10;
    --e;
  }
  while (e < 0) {
    den *= 10;
    ++e;
  }
  return ratio(checked_ll(num, "parse"), checked_ll(den, "parse"));
}

std::string Frac::str() const {
  std::ostringstream ss;
  ss << num;
  if (den != 1) ss << '/' << den;
  return ss.str();
}

double Frac::dbl() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

int cmp(const Frac& a, const Frac& b) {
  i128 l = i128(a.num) * b.den;
  i128 r = i128(b.num) * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

int cmp_scaled(long long value, const Frac& f, long long scale) {
  i128 l = i128(value) * f.den;
  i128 r = i128(f.num) * scale;
  return l < r ? -1 : (l > r ? 1 : 0);
}

int cmp_root_scaled(long long value, const Frac& coeff, const Frac& x,
                    int root, long long scale) {
  if (value < 0 || scale < 0 || coeff.num < 0 || x.num < 0)
    throw std::invalid_argument("cmp_root_scaled: negative input");
  // value >= c * x^(1/root) * s  <=>  value^root * c_den^root * x_den
  //                                   >= c_num^root * x_num * s^root.
  i128 l = ipow(value, root) * ipow(coeff.den, root) * x.den;
  i128 r = ipow(coeff.num, root) * x.num * ipow(scale, root);
  return l < r ? -1 : (l > r ? 1 : 0);
}

namespace {
std::string ineq_str(const Frac& lhs, const char* rel, const Frac& rhs) {
  return lhs.str() + " " + rel + " " + rhs.str();
}
}  // namespace

ParameterLedger ParameterLedger::make(const Frac& nu, const Frac& mu,
                                      const Frac& d, const Frac& eps, int r,
                                      long long n, int m_hint,
                                      LedgerMode mode) {
  ParameterLedger pl;
  pl.mode = mode;
  pl.nu = nu;
  pl.mu = mu;
  pl.d = d;
  pl.eps = eps;
  pl.r = r;
  pl.n = n;
  pl.m_hint = m_hint;
  bool strict = (mode == LedgerMode::kStrict);

  auto row = [&](const std::string& name, const std::string& req,
                 const std::string& act, bool sat, bool gate) {
    pl.rows.push_back({name, req, act, sat, strict ? true : gate});
  };

  Frac thousandth = Frac::ratio(1, 1000);
  row("nu-upper", "nu < 1/1000", ineq_str(nu, "<", thousandth),
      cmp(nu, thousandth) < 0, true);
  Frac mu20 = mu * Frac(20);
  row("mu-vs-nu", "20*mu <= nu", ineq_str(mu20, "<=", nu),
      cmp(mu20, nu) <= 0, true);
  Frac mu_abs = Frac::ratio(1, 700000);
  row("mu-absolute", "mu < 1/700000", ineq_str(mu, "<", mu_abs),
      cmp(mu, mu_abs) < 0, false);
  Frac mu_over_r = mu / Frac(r);
  row("d-vs-mu", "d <= mu/r", ineq_str(d, "<=", mu_over_r),
      cmp(d, mu_over_r) <= 0, true);
  row("eps-vs-d", "eps < d", ineq_str(eps, "<", d), cmp(eps, d) < 0, true);
  Frac mu_half = mu / Frac(2);
  row("eps-vs-mu", "eps <= mu/2", ineq_str(eps, "<=", mu_half),
      cmp(eps, mu_half) <= 0, true);
  // Absolute eps ceilings; their constants come from asymptotic lemmas.
  i128 r6 = 1;
  for (int i = 0; i < 6; ++i) r6 *= r;
  {
    // eps < 1/(10^13 r^6)  <=>  eps.num * 10^13 * r^6 < eps.den
    i128 lhs = i128(eps.num) * ipow(10, 13) * r6;
    bool sat = lhs < i128(eps.den);
    std::ostringstream act;
    act << eps.str() << " < 1/(10^13*" << r << "^6)";
    row("eps-ceiling-colour", "eps < 1/(10^13 r^6)", act.str(), sat, false);
  }
  // e < base^pow / divisor, cross-multiplied in 128 bits. The caps keep every
  // product under i128 range; beyond them (absurd denominators) the result is
  // settled in long double, which only these recorded-only rows rely on.
  auto below_power_cap = [](const Frac& e, const Frac& base, int pow,
                            long long divisor) {
    long long abs_bn = base.num < 0 ? -base.num : base.num;
    bool fits = e.num >= 0 && e.num <= 1'000'000'000LL &&
                (pow == 2 ? base.den <= 2'000'000'000LL
                          : base.den <= 700'000LL && abs_bn <= 1'000LL);
    if (fits) {
      i128 bn = 1, bd = 1;
      for (int i = 0; i < pow; ++i) {
        bn *= base.num;
        bd *= base.den;
      }
      return i128(e.num) * bd * divisor < i128(e.den) * bn;
    }
    long double cap = 1.0L;
    for (int i = 0; i < pow; ++i) cap *= (long double)base.num / base.den;
    return (long double)e.num / e.den < cap / divisor;
  };
  row("eps-ceiling-mu4", "eps < mu^4/20^4",
      eps.str() + " < (" + mu.str() + ")^4/160000",
      below_power_cap(eps, mu, 4, 160000), false);
  row("eps-ceiling-d2", "eps < d^2/4000",
      eps.str() + " < (" + d.str() + ")^2/4000",
      below_power_cap(eps, d, 2, 4000), false);
  row("eps-vs-n", "1/n < eps",
      "1/" + std::to_string(n) + " < " + eps.str(),
      cmp_scaled(1, eps, n) < 0, false);
  // The true n-floor involves regularity-lemma tower constants; no runnable
  // n satisfies it. Recorded as unsatisfied; a softened generator floor
  // (n >= 100 m / eps) is recorded alongside.
  row("n-floor-tower", "n > (4/eps) * M(eps,r,2)^4",
      "unsatisfiable at runnable scale (tower-type constant)", false, false);
  if (m_hint > 0) {
    bool sat = cmp_scaled(n, Frac(100 * m_hint) / eps, 1) >= 0;
    std::ostringstream act;
    act << n << " >= 100*" << m_hint << "/" << eps.str();
    row("n-floor-generator", "n >= 100*m/eps", act.str(), sat, false);
  }

  pl.gating_ok = true;
  for (const auto& c : pl.rows)
    if (c.gating && !c.satisfied) pl.gating_ok = false;
  return pl;
}

const ClauseRow* ParameterLedger::find(const std::string& name) const {
  for (const auto& c : rows)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace cyclepart
