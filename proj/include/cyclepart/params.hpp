#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace cyclepart {

// Exact rational with 64-bit numerator/denominator, always normalized with
// den > 0. All threshold comparisons in the library go through exact integer
// cross-multiplication (128-bit intermediates), never floating point.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long integer) : num(integer), den(1) {}
  static Frac ratio(long long n, long long d);

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  bool is_zero() const { return num == 0; }

  // Accepts "3", "-3", "0.25", "5e-6", "1.5e3" and "a/b".
  static Frac parse(const std::string& s);
  std::string str() const;
  double dbl() const;
};

// Sign of a - b.
int cmp(const Frac& a, const Frac& b);
// Sign of value - f*scale (value, scale integers).
int cmp_scaled(long long value, const Frac& f, long long scale);
// Sign of value - coeff * x^(1/root) * scale, for value, scale, coeff, x all
// nonnegative. Exact: compares value^root against coeff^root * x * scale^root.
int cmp_root_scaled(long long value, const Frac& coeff, const Frac& x,
                    int root, long long scale);

inline bool ge_scaled(long long v, const Frac& f, long long s) {
  return cmp_scaled(v, f, s) >= 0;
}
inline bool le_scaled(long long v, const Frac& f, long long s) {
  return cmp_scaled(v, f, s) <= 0;
}

// One recorded inequality. `gating` rows decide overall acceptance; the rest
// are evaluated and reported only (they encode the asymptotic regime that no
// runnable instance can reach, and the reports keep them visible).
struct ClauseRow {
  std::string name;
  std::string requirement;
  std::string actual;
  bool satisfied = false;
  bool gating = true;
};

enum class LedgerMode { kStrict, kDesk };

// The parameter chain nu > mu > d > eps with its absolute caps. Strict mode
// gates every clause; desk mode gates the relative chain and the nu cap,
// while the absolute caps (whose constants come from asymptotic arguments)
// are evaluated and recorded but do not gate. Every report carries all rows.
struct ParameterLedger {
  LedgerMode mode = LedgerMode::kDesk;
  Frac nu, mu, d, eps;
  int r = 2;
  long long n = 0;
  int m_hint = 0;  // expected cluster count, 0 if unknown
  std::vector<ClauseRow> rows;
  bool gating_ok = false;

  static ParameterLedger make(const Frac& nu, const Frac& mu, const Frac& d,
                              const Frac& eps, int r, long long n, int m_hint,
                              LedgerMode mode);

  const ClauseRow* find(const std::string& name) const;
};

}  // namespace cyclepart
