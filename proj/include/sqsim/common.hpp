#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace sqsim {

using BitVec = boost::dynamic_bitset<uint64_t>;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Input text could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A structural invariant was violated (bad qubit index, invalid decomposition, ...).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exhaustive solver or enumerator was asked to exceed its size cap.
class ResourceCapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

/// omega_r^e, the e-th power of the primitive r-th root of unity.
inline Complex root_of_unity(int r, long long e) {
  long long m = ((e % r) + r) % r;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / static_cast<double>(r));
}

}  // namespace sqsim
