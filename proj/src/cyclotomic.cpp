#include "supergrade/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace supergrade {

long lcm_long(long a, long b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm of nonpositive values");
  return a / std::gcd(a, b) * b;
}

long euler_phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

using ZPoly = std::vector<BigInt>;  // ascending degree

// Exact division of polynomials over Z; both operands with integer
// coefficients, divisor monic or at least dividing exactly.
ZPoly zpoly_divide_exact(const ZPoly& num, const ZPoly& den) {
  ZPoly rem = num;
  ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, BigInt(0));
  long dd = static_cast<long>(den.size()) - 1;
  for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
    if (rem[i] == 0) continue;
    BigInt q = rem[i] / den[dd];
    quot[i - dd] = q;
    for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= q * den[j];
  }
  for (const auto& c : rem)
    if (c != 0) throw std::logic_error("inexact polynomial division");
  return quot;
}

std::map<long, ZPoly> g_cyclo_cache;
std::mutex g_cyclo_mutex;

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo_cache.find(n);
  if (it != g_cyclo_cache.end()) return it->second;

  // Compute recursively without re-locking.
  std::vector<long> todo = {n};
  while (!todo.empty()) {
    long m = todo.back();
    if (g_cyclo_cache.count(m)) {
      todo.pop_back();
      continue;
    }
    bool ready = true;
    for (long d = 1; d < m; ++d)
      if (m % d == 0 && !g_cyclo_cache.count(d)) {
        todo.push_back(d);
        ready = false;
      }
    if (!ready) continue;
    todo.pop_back();
    if (m == 1) {
      g_cyclo_cache[1] = ZPoly{BigInt(-1), BigInt(1)};  // x - 1
      continue;
    }
    ZPoly xn_minus_1(m + 1, BigInt(0));
    xn_minus_1[0] = -1;
    xn_minus_1[m] = 1;
    ZPoly acc{BigInt(1)};
    for (long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      const ZPoly& f = g_cyclo_cache.at(d);
      ZPoly next(acc.size() + f.size() - 1, BigInt(0));
      for (size_t i = 0; i < acc.size(); ++i)
        for (size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
      acc = std::move(next);
    }
    g_cyclo_cache[m] = zpoly_divide_exact(xn_minus_1, acc);
  }
  return g_cyclo_cache.at(n);
}

void Cyclo::reduce_() {
  const ZPoly& phi = cyclotomic_polynomial(order_);
  const size_t deg = phi.size() - 1;  // euler_phi(order_)
  // Reduce modulo the monic polynomial phi.
  for (long i = static_cast<long>(coeffs_.size()) - 1; i >= static_cast<long>(deg); --i) {
    Rational c = coeffs_[i];
    if (c == 0) continue;
    coeffs_[i] = 0;
    for (size_t j = 0; j < deg; ++j)
      coeffs_[i - deg + j] -= c * Rational(phi[j]);
  }
  coeffs_.resize(deg, Rational(0));
}

Cyclo Cyclo::zeta(long order, long power) {
  if (order < 1) throw std::invalid_argument("zeta order must be positive");
  power %= order;
  if (power < 0) power += order;
  Cyclo r;
  r.order_ = order;
  r.coeffs_.assign(static_cast<size_t>(power) + 1, Rational(0));
  r.coeffs_[static_cast<size_t>(power)] = 1;
  r.reduce_();
  return r;
}

Cyclo Cyclo::rational_in(long order, const Rational& v) {
  Cyclo r;
  r.order_ = order;
  r.coeffs_.assign(euler_phi(order), Rational(0));
  r.coeffs_[0] = v;
  r.coeffs_[0].canonicalize();
  return r;
}

Cyclo Cyclo::from_coeffs(long order, std::vector<Rational> coeffs) {
  Cyclo r;
  r.order_ = order;
  r.coeffs_ = std::move(coeffs);
  if (r.coeffs_.empty()) r.coeffs_.assign(1, Rational(0));
  for (auto& c : r.coeffs_) c.canonicalize();
  r.reduce_();
  return r;
}

bool Cyclo::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c == 0; });
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Cyclo::rational_value() const {
  if (!is_rational()) throw std::logic_error("scalar is not rational");
  return coeffs_[0];
}

Cyclo Cyclo::promoted(long new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0)
    throw FieldMismatchError("cannot embed Q(zeta_" + std::to_string(order_) +
                             ") into Q(zeta_" + std::to_string(new_order) + ")");
  const long stretch = new_order / order_;
  std::vector<Rational> big(static_cast<size_t>((coeffs_.size() - 1) * stretch) + 1,
                            Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) big[i * stretch] = coeffs_[i];
  return from_coeffs(new_order, std::move(big));
}

void align(Cyclo& a, Cyclo& b) {
  if (a.order() == b.order()) return;
  if (b.order() % a.order() == 0) {
    a = a.promoted(b.order());
  } else if (a.order() % b.order() == 0) {
    b = b.promoted(a.order());
  } else {
    throw FieldMismatchError("ambient orders " + std::to_string(a.order()) +
                             " and " + std::to_string(b.order()) +
                             " are incompatible");
  }
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  Cyclo b = o;
  align(*this, b);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  Cyclo b = o;
  align(*this, b);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  Cyclo b = o;
  align(*this, b);
  std::vector<Rational> prod(2 * coeffs_.size(), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * b.coeffs_[j];
    }
  }
  coeffs_ = std::move(prod);
  reduce_();
  return *this;
}

namespace {

using QPoly = std::vector<Rational>;

void qpoly_trim(QPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qpoly_trim(a);
  return a;
}

// a = q*b + r with deg r < deg b
std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
  qpoly_trim(a);
  long db = static_cast<long>(b.size()) - 1;
  if (static_cast<long>(a.size()) - 1 < db) return {QPoly{Rational(0)}, a};
  QPoly q(a.size() - db, Rational(0));
  for (long i = static_cast<long>(a.size()) - 1; i >= db; --i) {
    if (a[i] == 0) continue;
    Rational f = a[i] / b[db];
    q[i - db] = f;
    for (long j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
  }
  qpoly_trim(a);
  qpoly_trim(q);
  return {q, a};
}

bool qpoly_is_zero(const QPoly& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& c) { return c == 0; });
}

}  // namespace

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw DivisionByZeroError("inversion of zero scalar");
  // Extended Euclid in Q[x] against Phi_order.
  const ZPoly& phi_i = cyclotomic_polynomial(order_);
  QPoly r0(phi_i.size());
  for (size_t i = 0; i < phi_i.size(); ++i) r0[i] = Rational(phi_i[i]);
  QPoly r1 = coeffs_;
  qpoly_trim(r1);
  QPoly s0{Rational(0)}, s1{Rational(1)};
  while (!qpoly_is_zero(r1)) {
    auto [q, r2] = qpoly_divmod(r0, r1);
    QPoly s2 = qpoly_sub(s0, qpoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd (a nonzero constant since Phi is irreducible), s0 * this = r0 mod Phi.
  if (r0.size() != 1 || r0[0] == 0)
    throw std::logic_error("gcd with cyclotomic polynomial is not constant");
  Rational inv_c = 1 / r0[0];
  for (auto& c : s0) c *= inv_c;
  return from_coeffs(order_, std::move(s0));
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inverse(); }

bool operator==(const Cyclo& a, const Cyclo& b) {
  Cyclo x = a, y = b;
  align(x, y);
  return x.coeffs_ == y.coeffs_;
}

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  Cyclo x = a, y = b;
  align(x, y);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    int c = cmp(x.coeffs_[i], y.coeffs_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i].get_str();
    if (i >= 1) {
      os << "*z" << order_;
      if (i >= 2) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.str(); }

Cyclo Cyclo::parse(const std::string& text, long order_hint) {
  // Determine order from the first "z<digits>" occurrence.
  long order = order_hint;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == 'z' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      order = std::stol(text.substr(i + 1));
      break;
    }
  }
  if (order < 1) order = 1;
  std::vector<Rational> coeffs(euler_phi(order) + 2, Rational(0));
  // Split on '+' (unary minus lives inside coefficient tokens).
  size_t pos = 0;
  while (pos < text.size()) {
    size_t plus = text.find('+', pos);
    std::string term = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
    pos = plus == std::string::npos ? text.size() : plus + 1;
    // trim
    size_t b = term.find_first_not_of(" \t");
    size_t e = term.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    term = term.substr(b, e - b + 1);
    Rational coeff(1);
    long power = 0;
    size_t zpos = term.find('z');
    std::string coeff_part = zpos == std::string::npos ? term : term.substr(0, zpos);
    if (!coeff_part.empty() && coeff_part.back() == '*') coeff_part.pop_back();
    if (coeff_part.empty())
      coeff = 1;
    else if (coeff_part == "-")
      coeff = -1;
    else {
      coeff = Rational(coeff_part);
      coeff.canonicalize();
    }
    if (zpos != std::string::npos) {
      size_t caret = term.find('^', zpos);
      power = caret == std::string::npos ? 1 : std::stol(term.substr(caret + 1));
    }
    power %= order;
    if (power < 0) power += order;
    if (static_cast<size_t>(power) >= coeffs.size()) coeffs.resize(power + 1, Rational(0));
    coeffs[power] += coeff;
  }
  return from_coeffs(order, std::move(coeffs));
}

std::optional<std::pair<Rational, long>> monomial_form(const Cyclo& c) {
  const long n = c.order();
  for (long k = 0; k < n; ++k) {
    Cyclo w = c * Cyclo::zeta(n, n - k);
    if (w.is_rational()) return std::make_pair(w.rational_value(), k % n);
  }
  return std::nullopt;
}

std::optional<Rational> rational_nth_root(const Rational& q, long n) {
  if (q == 0) return Rational(0);
  bool neg = q < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  BigInt num = abs(q.get_num()), den = q.get_den();
  BigInt rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)))
    return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)))
    return std::nullopt;
  Rational r(neg ? -rn : rn, rd);
  r.canonicalize();
  return r;
}

std::vector<Cyclo> nth_roots_in_field(const Cyclo& c, long n, long field_order) {
  std::vector<Cyclo> roots;
  const long N = field_order;
  Cyclo cc = c.promoted(N % c.order() == 0 ? N : c.order());
  if (cc.order() != N) return roots;  // field does not contain c
  for (long j = 0; j < N; ++j) {
    long e = (j * n) % N;
    Cyclo w = cc * Cyclo::zeta(N, (N - e) % N);
    if (!w.is_rational()) continue;
    auto r = rational_nth_root(w.rational_value(), n);
    if (!r) {
      // even n: a negative rational part may still admit -r with (-r)^n = |w|
      continue;
    }
    for (const Rational& cand : {*r, Rational(-*r)}) {
      Cyclo z = Cyclo::rational_in(N, cand) * Cyclo::zeta(N, j);
      Cyclo zn = z;
      for (long t = 1; t < n; ++t) zn *= z;
      if (zn == cc) {
        bool dup = false;
        for (const auto& known : roots)
          if (known == z) dup = true;
        if (!dup) roots.push_back(z);
      }
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Cyclo& a, const Cyclo& b) { return Cyclo::compare(a, b) < 0; });
  return roots;
}

std::optional<RootLift> nth_root_enlarging(const Cyclo& c, long n) {
  auto mono = monomial_form(c);
  if (!mono) return std::nullopt;
  auto [q, k] = *mono;
  long N = c.order();
  if (q < 0) {
    // fold the sign into the root-of-unity part
    if (N % 2 != 0) {
      N *= 2;
      k *= 2;
    }
    q = -q;
    k = (k + N / 2) % N;
  }
  auto r = rational_nth_root(q, n);
  if (!r) return std::nullopt;
  long L = N * n;
  Cyclo z = Cyclo::rational_in(L, *r) * Cyclo::zeta(L, k);
  Cyclo zn = z;
  for (long t = 1; t < n; ++t) zn *= z;
  if (zn != c.promoted(L)) return std::nullopt;
  return RootLift{z, L};
}

}  // namespace supergrade
