#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tamestrata/error.hpp"

namespace ts {

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

// F_p[x]/(modulus). An element is coded as the integer sum c_i p^i, where c_i
// is the coefficient of x^i, so codes run over 0 .. q-1 and 0 codes zero.
// Multiplication goes through log/antilog tables built once at construction.
class FqField {
public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  // Throws NotPrime, BadDegree, ReducibleModulus.
  static FieldPtr make(int p, int f, const std::vector<int>& modulus);

  int p() const { return p_; }
  int f() const { return f_; }
  std::uint32_t order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }
  // Class of x; for f = 1 this is the constant -modulus[0].
  std::uint32_t x() const { return xclass_; }
  // Smallest code of multiplicative order q - 1.
  std::uint32_t primitive() const { return prim_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // DivisionByZero
  std::uint32_t pow(std::uint32_t a, long long k) const;

  // a^(p^(base_degree*k)). Throws BadDegree unless base_degree | f.
  std::uint32_t frob(std::uint32_t a, int base_degree, long long k) const;
  // Size of the orbit of a under x -> x^(p^base_degree).
  int orbit_size(std::uint32_t a, int base_degree) const;
  // Multiplicative order of a nonzero a.
  std::uint32_t mult_order(std::uint32_t a) const;
  // Discrete log to base primitive(); a != 0.
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(long long k) const;

  std::uint32_t from_int(long long v) const;
  std::uint32_t from_coeffs(const std::vector<int>& c) const;
  std::vector<int> coeffs(std::uint32_t a) const;
  // Human form, e.g. "3+w" or "w^7" style is left to callers; this prints
  // the coefficient polynomial in w.
  std::string str(std::uint32_t a) const;

  bool same_as(const FqField& o) const {
    return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_;
  }

private:
  FqField() = default;
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;

  int p_ = 0;
  int f_ = 0;
  std::uint32_t q_ = 0;
  std::vector<int> modulus_;  // monic, low to high, length f+1, entries in [0,p)
  std::uint32_t xclass_ = 0;
  std::uint32_t prim_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

// Value type pairing a field with an element code.
struct FqElem {
  FieldPtr field;
  std::uint32_t code = 0;

  bool is_zero() const { return code == 0; }
  std::vector<int> coeffs() const { return field->coeffs(code); }
  bool operator==(const FqElem& o) const {
    return code == o.code && (field == o.field || field->same_as(*o.field));
  }
};

enum class FfOp { Add, Mul, Neg, Inv, Pow };

FieldPtr ff_make_field(int p, int f, const std::vector<int>& modulus);
// Binary ops take b as element; Pow takes the integer exponent. FieldMismatch
// if the operands live in different fields, DivisionByZero for inv(0).
FqElem ff_arith(FfOp op, const FqElem& a, const FqElem& b);
FqElem ff_arith(FfOp op, const FqElem& a, long long k);
FqElem ff_frobenius(const FqElem& a, int base_degree, long long k);
bool ff_generates(const FqElem& a, int base_degree);

bool is_prime(long long n);
std::vector<long long> prime_factors(long long n);

}  // namespace ts
