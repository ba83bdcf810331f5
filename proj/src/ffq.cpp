#include "tamestrata/ffq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ts {

namespace {

using Poly = std::vector<int>;

int modp(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  long long r = 1, b = a, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Remainder of a modulo monic-or-not m over F_p.
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = static_cast<int>(1LL * a.back() * lead_inv % p);
    for (int i = 0; i <= dm; ++i) a[i + shift] = modp(a[i + shift] - 1LL * c * m[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = modp(r[i + j] + 1LL * a[i] * b[j], p);
  return poly_mod(r, m, p);
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr FqField::make(int p, int f, const std::vector<int>& modulus) {
  if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  if (f < 1) fail("BadDegree", "extension degree must be >= 1");
  if (static_cast<int>(modulus.size()) != f + 1)
    fail("BadDegree", "modulus must have f+1 coefficients");
  Poly m(modulus.size());
  for (size_t i = 0; i < modulus.size(); ++i) m[i] = modp(modulus[i], p);
  if (m.back() != 1) fail("BadDegree", "modulus must be monic");

  long long q = 1;
  for (int i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxOrder) fail("BadDegree", "field too large for table arithmetic");
  }

  // x^(p^k) - x must be coprime to m for k < f.
  Poly h = {0, 1};
  for (int k = 1; k < f; ++k) {
    Poly acc = {1};
    Poly base = h;
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
    }
    h = acc;
    Poly d = h;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = modp(d[1] - 1, p);
    Poly g = poly_gcd(m, d, p);
    if (g.size() > 1) fail("ReducibleModulus", "modulus has a factor of degree dividing " + std::to_string(k));
  }

  std::shared_ptr<FqField> F(new FqField());
  F->p_ = p;
  F->f_ = f;
  F->q_ = static_cast<std::uint32_t>(q);
  F->modulus_ = m;
  F->xclass_ = F->from_coeffs(poly_mod({0, 1}, m, p));

  const std::uint32_t n = F->q_ - 1;
  const auto factors = prime_factors(n);
  auto slow_pow = [&](std::uint32_t a, long long k) {
    std::uint32_t r = 1;
    while (k > 0) {
      if (k & 1) r = F->slow_mul(r, a);
      a = F->slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };
  for (std::uint32_t c = 1; c < F->q_; ++c) {
    bool ok = true;
    for (long long r : factors)
      if (slow_pow(c, n / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      F->prim_ = c;
      break;
    }
  }
  if (n == 0) F->prim_ = 1;  // unreachable, q >= 2
  F->exp_.assign(n, 0);
  F->log_.assign(F->q_, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    F->exp_[i] = cur;
    F->log_[cur] = i;
    cur = F->slow_mul(cur, F->prim_);
  }
  return F;
}

std::uint32_t FqField::slow_mul(std::uint32_t a, std::uint32_t b) const {
  return from_coeffs(poly_mulmod(coeffs(a), coeffs(b), modulus_, p_));
}

std::uint32_t FqField::from_coeffs(const std::vector<int>& c) const {
  Poly r = c;
  if (static_cast<int>(r.size()) > f_) r = poly_mod(r, modulus_, p_);
  std::uint32_t code = 0, w = 1;
  for (int i = 0; i < f_; ++i) {
    int v = i < static_cast<int>(r.size()) ? modp(r[i], p_) : 0;
    code += static_cast<std::uint32_t>(v) * w;
    w *= static_cast<std::uint32_t>(p_);
  }
  return code;
}

std::vector<int> FqField::coeffs(std::uint32_t a) const {
  std::vector<int> c(f_);
  for (int i = 0; i < f_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

std::uint32_t FqField::from_int(long long v) const {
  return static_cast<std::uint32_t>(modp(v, p_));
}

std::uint32_t FqField::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  std::uint32_t r = 0, w = 1;
  const std::uint32_t P = p_;
  while (a || b) {
    std::uint32_t d = a % P + b % P;
    if (d >= P) d -= P;
    r += d * w;
    w *= P;
    a /= P;
    b /= P;
  }
  return r;
}

std::uint32_t FqField::neg(std::uint32_t a) const {
  std::uint32_t r = 0, w = 1;
  const std::uint32_t P = p_;
  while (a) {
    std::uint32_t d = a % P;
    r += (d ? P - d : 0) * w;
    w *= P;
    a /= P;
  }
  return r;
}

std::uint32_t FqField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FqField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
  const std::uint32_t n = q_ - 1;
  if (s >= n) s -= n;
  return exp_[s];
}

std::uint32_t FqField::inv(std::uint32_t a) const {
  if (a == 0) fail("DivisionByZero", "inverse of zero");
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

std::uint32_t FqField::exp(long long k) const {
  const long long n = q_ - 1;
  long long r = k % n;
  if (r < 0) r += n;
  return exp_[r];
}

std::uint32_t FqField::pow(std::uint32_t a, long long k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) fail("DivisionByZero", "negative power of zero");
    return 0;
  }
  const long long n = q_ - 1;
  long long e = k % n;
  if (e < 0) e += n;
  return exp_[(static_cast<unsigned long long>(log_[a]) * e) % n];
}

std::uint32_t FqField::frob(std::uint32_t a, int base_degree, long long k) const {
  if (base_degree < 1 || f_ % base_degree != 0) fail("BadDegree", "base degree must divide f");
  const long long period = f_ / base_degree;
  long long j = k % period;
  if (j < 0) j += period;
  // exponent p^(base_degree*j) reduced mod q-1
  const long long n = q_ - 1;
  long long e = 1 % n;
  for (long long i = 0; i < base_degree * j; ++i) e = e * p_ % n;
  if (n == 1) return a;
  return pow(a, e);
}

int FqField::orbit_size(std::uint32_t a, int base_degree) const {
  if (base_degree < 1 || f_ % base_degree != 0) fail("BadDegree", "base degree must divide f");
  int size = 1;
  std::uint32_t b = frob(a, base_degree, 1);
  while (b != a) {
    b = frob(b, base_degree, 1);
    ++size;
  }
  return size;
}

std::uint32_t FqField::mult_order(std::uint32_t a) const {
  if (a == 0) fail("DivisionByZero", "order of zero");
  const std::uint32_t n = q_ - 1;
  return n / static_cast<std::uint32_t>(std::gcd<long long, long long>(log_[a], n));
}

std::string FqField::str(std::uint32_t a) const {
  auto c = coeffs(a);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < f_; ++i) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c[i];
    } else {
      if (c[i] != 1) os << c[i] << "*";
      os << "w";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

FieldPtr ff_make_field(int p, int f, const std::vector<int>& modulus) {
  return FqField::make(p, f, modulus);
}

namespace {
void same_field(const FqElem& a, const FqElem& b) {
  if (!a.field || !b.field) fail("FieldMismatch", "element without field");
  if (a.field != b.field && !a.field->same_as(*b.field))
    fail("FieldMismatch", "operands live in different fields");
}
}  // namespace

FqElem ff_arith(FfOp op, const FqElem& a, const FqElem& b) {
  const auto& F = *a.field;
  switch (op) {
    case FfOp::Add:
      same_field(a, b);
      return {a.field, F.add(a.code, b.code)};
    case FfOp::Mul:
      same_field(a, b);
      return {a.field, F.mul(a.code, b.code)};
    case FfOp::Neg:
      return {a.field, F.neg(a.code)};
    case FfOp::Inv:
      return {a.field, F.inv(a.code)};
    case FfOp::Pow:
      break;
  }
  fail("FieldMismatch", "pow takes an integer exponent");
}

FqElem ff_arith(FfOp op, const FqElem& a, long long k) {
  if (op == FfOp::Pow) return {a.field, a.field->pow(a.code, k)};
  if (op == FfOp::Neg) return {a.field, a.field->neg(a.code)};
  if (op == FfOp::Inv) return {a.field, a.field->inv(a.code)};
  return ff_arith(op, a, FqElem{a.field, a.field->from_int(k)});
}

FqElem ff_frobenius(const FqElem& a, int base_degree, long long k) {
  return {a.field, a.field->frob(a.code, base_degree, k)};
}

bool ff_generates(const FqElem& a, int base_degree) {
  return a.field->orbit_size(a.code, base_degree) == a.field->f() / base_degree;
}

}  // namespace ts
