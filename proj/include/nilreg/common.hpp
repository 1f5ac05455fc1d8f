#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace nilreg {

// Exact scalars. Matrix entries grow polynomially in word length (degree up
// to the nilpotency class), so the carrier is arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMat = DenseMat<Int>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

enum class ErrorKind {
  Structural,    // mismatched shapes, bad adjacency, malformed input
  Precondition,  // a stated operation precondition does not hold
  Validation,    // a verification check failed (named clause)
  Budget,        // step/memory/coset budget exhausted
  Numeric,       // bracketing/iteration failure in the numerics
  Dependency,    // a required precomputed object is missing
  Lookup,        // unknown catalog name
  Config,        // inconsistent configuration (e.g. |l(g,v)| >= A_v)
  Domain,        // argument outside the mathematical domain
  Statistical,   // all retries of a stochastic procedure failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline std::int64_t to_i64(const Int& v) {
  return static_cast<std::int64_t>(v);
}

// FNV-1a, used for store sharding and content hashes; stable across platforms.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(s.data(), s.size());
}

}  // namespace nilreg
