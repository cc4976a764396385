#include "ffr/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ffr {
namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int f = 2; static_cast<long long>(f) * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

// dense coefficient vectors over F_p, constant term first
using Poly = std::vector<int>;

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

// remainder of a by monic b, in place
void mod_by(Poly& a, const Poly& b, int p) {
  int db = degree(b);
  for (int i = degree(a); i >= db && i >= 0; i = degree(a)) {
    int c = a[i];
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      int k = i - db + j;
      a[k] = ((a[k] - c * b[j]) % p + p) % p;
    }
  }
}

bool is_zero(const Poly& a) { return degree(a) < 0; }

// exhaustive trial division by every monic polynomial of degree 1..n/2
bool is_irreducible(const Poly& mod, int p, int n) {
  for (int deg = 1; deg <= n / 2; ++deg) {
    std::uint64_t count = 1;
    for (int i = 0; i < deg; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly div(deg + 1, 0);
      std::uint64_t t = idx;
      for (int i = 0; i < deg; ++i) {
        div[i] = static_cast<int>(t % p);
        t /= p;
      }
      div[deg] = 1;
      Poly r = mod;
      mod_by(r, div, p);
      if (is_zero(r)) return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const Field> Field::build(int p, int n) { return build(p, n, BuildOptions{}); }

std::shared_ptr<const Field> Field::build(int p, int n, const BuildOptions& opt) {
  if (p % 2 == 0) throw std::invalid_argument("even characteristic rejected: p = " + std::to_string(p));
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q64 = 1;
  for (int i = 0; i < n; ++i) {
    q64 *= static_cast<std::uint64_t>(p);
    if (q64 > opt.max_q)
      throw std::invalid_argument("q = " + std::to_string(p) + "^" + std::to_string(n) +
                                  " exceeds the field-size limit " + std::to_string(opt.max_q));
  }
  const auto q = static_cast<std::uint32_t>(q64);

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->n_ = n;
  f->q_ = q;

  // modulus: lexicographically smallest monic irreducible, constant term
  // compared first. For n = 1 the modulus is x and arithmetic is plain mod p.
  if (n == 1) {
    f->modulus_ = {0, 1};
  } else {
    // odometer over (c_0,...,c_{n-1}) with c_{n-1} fastest gives ascending
    // lexicographic order on the constant-first coefficient list
    std::vector<int> c(n, 0);
    bool found = false;
    for (;;) {
      Poly cand(c.begin(), c.end());
      cand.push_back(1);
      if (is_irreducible(cand, p, n)) {
        f->modulus_ = cand;
        found = true;
        break;
      }
      int i = n - 1;
      while (i >= 0 && ++c[i] == p) c[i--] = 0;
      if (i < 0) break;
    }
    if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
  }

  auto decode = [&](std::uint32_t idx) {
    Poly c(n, 0);
    for (int i = 0; i < n; ++i) {
      c[i] = static_cast<int>(idx % p);
      idx /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    std::uint32_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = v * p + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return v;
  };

  f->add_.resize(static_cast<std::size_t>(q) * q);
  f->sub_.resize(static_cast<std::size_t>(q) * q);
  f->mul_.resize(static_cast<std::size_t>(q) * q);
  f->neg_.resize(q);
  f->inv_.assign(q, 0);
  f->sq_.resize(q);

  for (std::uint32_t a = 0; a < q; ++a) {
    Poly ca = decode(a);
    Poly na(n);
    for (int i = 0; i < n; ++i) na[i] = (p - ca[i]) % p;
    f->neg_[a] = static_cast<std::uint16_t>(encode(na));
    for (std::uint32_t b = 0; b < q; ++b) {
      Poly cb = decode(b);
      Poly s(n);
      for (int i = 0; i < n; ++i) s[i] = (ca[i] + cb[i]) % p;
      f->add_[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint16_t>(encode(s));
      Poly prod(2 * n - 1, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      if (n > 1) mod_by(prod, f->modulus_, p);
      f->mul_[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint16_t>(encode(prod));
    }
  }
  for (std::uint32_t a = 0; a < q; ++a) {
    f->sq_[a] = f->mul_[static_cast<std::size_t>(a) * q + a];
    for (std::uint32_t b = 0; b < q; ++b) {
      std::uint16_t nb = f->neg_[b];
      f->sub_[static_cast<std::size_t>(a) * q + b] = f->add_[static_cast<std::size_t>(a) * q + nb];
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (f->mul_[static_cast<std::size_t>(a) * q + b] == 1) {
        f->inv_[a] = static_cast<std::uint16_t>(b);
        break;
      }

  // trace via Frobenius iterates; must land in the prime subfield
  f->trace_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Elt acc(0), frob(static_cast<std::uint16_t>(a));
    for (int i = 0; i < n; ++i) {
      acc = f->add(acc, frob);
      frob = f->pow(frob, static_cast<std::uint64_t>(p));
    }
    if (acc.v >= static_cast<std::uint32_t>(p))
      throw std::logic_error("trace left the prime subfield");  // cannot happen
    f->trace_[a] = acc.v;
  }

  f->chi_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    double angle = 2.0 * std::numbers::pi * f->trace_[a] / p;
    f->chi_[a] = {std::cos(angle), std::sin(angle)};
  }

  // eta from the explicit square table, verified against x^((q-1)/2)
  f->eta_.assign(q, -1);
  f->eta_[0] = 0;
  for (std::uint32_t a = 1; a < q; ++a) f->eta_[f->sq_[a]] = 1;
  Elt minus_one = f->neg(f->one());
  for (std::uint32_t a = 1; a < q; ++a) {
    Elt e = f->pow(Elt(static_cast<std::uint16_t>(a)), (q - 1) / 2);
    int via_pow = (e == f->one()) ? 1 : (e == minus_one ? -1 : 2);
    if (via_pow != f->eta_[a])
      throw std::logic_error("quadratic character disagrees with the square table");  // cannot happen
  }

  for (std::uint32_t a = 2; a < q; ++a) {
    Elt x(static_cast<std::uint16_t>(a));
    Elt acc = x;
    std::uint32_t order = 1;
    while (acc != f->one()) {
      acc = f->mul(acc, x);
      ++order;
    }
    if (order == q - 1) {
      f->generator_ = x;
      break;
    }
  }

  return f;
}

Elt Field::from_int(long long value) const {
  long long r = value % p_;
  if (r < 0) r += p_;
  return Elt(static_cast<std::uint16_t>(r));
}

std::vector<int> Field::coeffs(Elt x) const {
  std::uint32_t v = check(x);
  std::vector<int> c(n_);
  for (int i = 0; i < n_; ++i) {
    c[i] = static_cast<int>(v % p_);
    v /= p_;
  }
  return c;
}

Elt Field::inv(Elt a) const {
  if (a.v == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
  return Elt(inv_[check(a)]);
}

Elt Field::div(Elt a, Elt b) const { return mul(a, inv(b)); }

Elt Field::pow(Elt base, std::uint64_t e) const {
  check(base);
  Elt acc = one();
  Elt b = base;
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

Elt Field::sqrt_minus_one() const {
  if (q_ % 4 != 1)
    throw std::invalid_argument("-1 is not a square in F_" + std::to_string(q_) +
                                " (q = 3 mod 4)");
  Elt minus_one = neg(one());
  for (std::uint32_t a = 1; a < q_; ++a) {
    Elt x(static_cast<std::uint16_t>(a));
    if (square(x) == minus_one) return x;
  }
  throw std::logic_error("square root of -1 not found");  // cannot happen
}

std::string Field::to_string(Elt x) const {
  if (n_ == 1) return std::to_string(x.v);
  auto c = coeffs(x);
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) {
      if (c[i] != 1) out += "*";
      out += "a";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace ffr
