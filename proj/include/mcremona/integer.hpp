#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcremona {

/// Arbitrary-size signed integer used for every exponent and matrix entry.
using Integer = boost::multiprecision::cpp_int;
/// Exact rational, only used by the cone-membership feasibility solver.
using Rational = boost::multiprecision::cpp_rational;

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is well-formed but violates an operation's precondition.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A post-construction invariant failed. Never expected for valid input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Narrowing conversion for indices and counts; throws when out of range.
inline std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw ContractError("integer out of 64-bit range: " + x.str());
    return x.convert_to<std::int64_t>();
}

} // namespace mcremona
