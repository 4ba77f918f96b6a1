#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace abc {

// All election arithmetic is exact: weights, scores, credit/load states and
// event times are mpq rationals, so simultaneity and ties are decided without
// epsilon comparisons.
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// usage-style error (bad input, malformed options); CLI maps it to exit 1
struct usage_error : error {
  using error::error;
};

// computation-style error (budget exceeded, stalled process, infeasible); exit 2
struct computation_error : error {
  using error::error;
};

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", or "p/q" with integer p, q.
inline std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class num(s);
      return Rat(num);
    }
    std::string ns = s.substr(0, slash);
    std::string ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty()) return std::nullopt;
    mpz_class num(ns), den(ds);
    if (den == 0) return std::nullopt;
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline mpz_class rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline mpz_class rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace abc
