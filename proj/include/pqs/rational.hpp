#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace boost {

// The installed Boost recurses forever when comparing rational<long> with a
// plain int; these exact overloads win overload resolution.
#define PQS_RATIONAL_CMP(op)                                                                   \
  inline bool operator op(const rational<std::int64_t>& a, int b) { return a op rational<std::int64_t>(b); } \
  inline bool operator op(int a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) op b; }
PQS_RATIONAL_CMP(==)
PQS_RATIONAL_CMP(!=)
PQS_RATIONAL_CMP(<)
PQS_RATIONAL_CMP(<=)
PQS_RATIONAL_CMP(>)
PQS_RATIONAL_CMP(>=)
#undef PQS_RATIONAL_CMP

}  // namespace boost

namespace pqs {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
  return s;
}

}  // namespace pqs
