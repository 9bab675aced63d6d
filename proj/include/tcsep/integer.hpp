#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcsep {

using Int = mpz_class;
using IntVec = std::vector<Int>;

Int parse_int(const std::string& s);
std::string to_string(const Int& v);
std::string to_string(const IntVec& v);

// Floor division and nonnegative remainder for any nonzero divisor.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);
bool divides(const Int& d, const Int& a);

// Returns g = gcd(a,b) >= 0 with u*a + v*b = g.
Int gcd_ext(const Int& a, const Int& b, Int& u, Int& v);

// p-adic valuation; v_p(0) is reported as a large sentinel.
long vp(const Int& a, unsigned long p);
constexpr long kInfiniteValuation = 1L << 40;

bool is_prime(unsigned long n);
Int ipow(const Int& base, unsigned long e);
Int binomial(const Int& n, unsigned long k);  // generalized: n may be negative

bool is_zero(const IntVec& v);
IntVec zeros(std::size_t n);
Int max_abs(const IntVec& v);
Int content(const IntVec& v);  // gcd of entries, 0 for the zero vector

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Int& s);

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept;
};

}  // namespace tcsep
