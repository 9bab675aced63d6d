#include "tcsep/integer.hpp"

#include <functional>

namespace tcsep {

Int parse_int(const std::string& s) {
  Int v;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || v.set_str(t, 10) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

std::string to_string(const Int& v) { return v.get_str(10); }

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str(10);
  }
  return s + ")";
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int r;
  Int babs = abs(b);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), babs.get_mpz_t());
  return r;
}

bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

Int gcd_ext(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

long vp(const Int& a, unsigned long p) {
  if (a == 0) return kInfiniteValuation;
  Int t = abs(a);
  long e = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++e;
  }
  return e;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int binomial(const Int& n, unsigned long k) {
  Int num = 1;
  for (unsigned long i = 0; i < k; ++i) num *= (n - Int(i));
  Int den;
  mpz_fac_ui(den.get_mpz_t(), k);
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVec zeros(std::size_t n) { return IntVec(n, Int(0)); }

Int max_abs(const IntVec& v) {
  Int m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec scale(const IntVec& a, const Int& s) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

std::size_t IntVecHash::operator()(const IntVec& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& x : v) {
    const mpz_srcptr z = x.get_mpz_t();
    std::size_t limb = z->_mp_size == 0 ? 0 : static_cast<std::size_t>(z->_mp_d[0]);
    std::size_t w = limb ^ (static_cast<std::size_t>(static_cast<long>(z->_mp_size)) << 56);
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace tcsep
