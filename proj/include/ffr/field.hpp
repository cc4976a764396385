#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffr/common.hpp"

namespace ffr {

// Element of F_q, identified by its canonical index in [0, q).
// index = sum c_i p^i encodes the coefficient vector (c_0,...,c_{n-1})
// of the residue class sum c_i a^i, a a root of the field modulus.
struct Elt {
  std::uint16_t v = 0;
  Elt() = default;
  explicit constexpr Elt(std::uint16_t value) : v(value) {}
  friend constexpr bool operator==(Elt, Elt) = default;
  friend constexpr auto operator<=>(Elt, Elt) = default;
};

// Exact arithmetic in F_q, q = p^n, p an odd prime, with the trace map,
// the canonical additive character chi(x) = exp(2*pi*i*Tr(x)/p) and the
// quadratic character eta. All tables are precomputed at construction;
// instances are immutable and safe to share across threads.
class Field {
 public:
  struct BuildOptions {
    std::uint32_t max_q = 1024;  // desk-scale limit
  };

  // Builds F_{p^n} with the lexicographically smallest monic irreducible
  // modulus (coefficient lists compared constant term first). Rejects even
  // or composite p and q over the limit.
  static std::shared_ptr<const Field> build(int p, int n);
  static std::shared_ptr<const Field> build(int p, int n, const BuildOptions& opt);

  int p() const { return p_; }
  int n() const { return n_; }
  std::uint32_t q() const { return q_; }
  // length n+1, constant term first, leading coefficient 1
  const std::vector<int>& modulus() const { return modulus_; }

  Elt zero() const { return Elt(0); }
  Elt one() const { return Elt(1); }
  // embeds an integer via reduction mod p (constant polynomial)
  Elt from_int(long long value) const;
  // coefficient vector (c_0,...,c_{n-1}) of an element
  std::vector<int> coeffs(Elt x) const;

  Elt add(Elt a, Elt b) const { return Elt(add_[idx(a, b)]); }
  Elt sub(Elt a, Elt b) const { return Elt(sub_[idx(a, b)]); }
  Elt mul(Elt a, Elt b) const { return Elt(mul_[idx(a, b)]); }
  Elt neg(Elt a) const { return Elt(neg_[check(a)]); }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const;
  Elt square(Elt a) const { return Elt(sq_[check(a)]); }
  // square-and-multiply
  Elt pow(Elt base, std::uint64_t e) const;

  // Tr(x) = x + x^p + ... + x^{p^(n-1)}, as the prime-subfield
  // representative in [0, p)
  int trace(Elt x) const { return trace_[check(x)]; }

  // chi(x) = exp(2*pi*i*Tr(x)/p); cached
  std::complex<double> chi(Elt x) const { return chi_[check(x)]; }
  // chi(-x), i.e. the conjugate
  std::complex<double> chi_neg(Elt x) const { return std::conj(chi_[check(x)]); }

  // quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise
  int eta(Elt x) const { return eta_[check(x)]; }

  // smallest element of multiplicative order q-1
  Elt generator() const { return generator_; }

  // smallest i with i^2 = -1; requires q = 1 (mod 4)
  Elt sqrt_minus_one() const;

  bool same_field(const Field& other) const { return p_ == other.p_ && n_ == other.n_; }

  // printable representation of an element, e.g. "3" or "1+2a"
  std::string to_string(Elt x) const;

 private:
  Field() = default;

  std::uint32_t check(Elt a) const {
    if (a.v >= q_) throw std::invalid_argument("element index out of range for F_" + std::to_string(q_));
    return a.v;
  }
  std::size_t idx(Elt a, Elt b) const { return static_cast<std::size_t>(check(a)) * q_ + check(b); }

  int p_ = 0, n_ = 0;
  std::uint32_t q_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint16_t> add_, sub_, mul_;  // q*q
  std::vector<std::uint16_t> neg_, inv_, sq_;   // q
  std::vector<int> trace_;
  std::vector<std::int8_t> eta_;
  std::vector<std::complex<double>> chi_;
  Elt generator_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace ffr
