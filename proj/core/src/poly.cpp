#include "bethe/poly.hpp"

#include <sstream>
#include <stdexcept>

#include "bethe/errors.hpp"

namespace bethe {

Rat parse_rat(const std::string& text) {
  Rat r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rat& c, int k) {
  if (c == 0) return {};
  std::vector<Rat> v(static_cast<std::size_t>(k) + 1, Rat(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(i)];
}

const Rat& Poly::lc() const {
  static const Rat zero(0);
  return c_.empty() ? zero : c_.back();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::antiderivative(const Rat& c) const {
  std::vector<Rat> a(c_.size() + 1);
  a[0] = c;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    a[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
  }
  return Poly(std::move(a));
}

Rat Poly::eval(const Rat& at) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::compose(const Poly& f) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * f + Poly(*it);
  return acc;
}

Poly Poly::taylor_coeff(int k) const {
  if (k < 0) return {};
  if (k >= static_cast<int>(c_.size())) return {};
  // p^{(k)}/k! has coefficients binom(i, k) c_i at x^{i-k}.
  std::vector<Rat> out(c_.size() - static_cast<std::size_t>(k));
  Int binom = 1;  // binom(i, k) starting at i = k
  for (std::size_t i = static_cast<std::size_t>(k); i < c_.size(); ++i) {
    out[i - static_cast<std::size_t>(k)] = c_[i] * Rat(binom);
    // binom(i+1, k) = binom(i, k) * (i+1) / (i+1-k)
    binom = binom * static_cast<unsigned long>(i + 1) / static_cast<unsigned long>(i + 1 - static_cast<std::size_t>(k));
  }
  return Poly(std::move(out));
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  Rat inv = 1 / c_.back();
  return *this * inv;
}

Rat Poly::content() const {
  if (c_.empty()) return Rat(1);
  Int num_gcd = 0;
  Int den_lcm = 1;
  for (const auto& c : c_) {
    if (c == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rat r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

Poly Poly::primitive() const {
  if (c_.empty()) return *this;
  Poly p = *this * (1 / content());
  if (p.lc() < 0) p *= Rat(-1);
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

namespace {

// Coefficients times the lcm of their denominators.
std::vector<Int> scaled_integers(const std::vector<Rat>& c, Int& den) {
  den = 1;
  for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Int> out;
  out.reserve(c.size());
  for (const auto& v : c) {
    Int t = den / v.get_den();
    out.push_back(t * v.get_num());
  }
  return out;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  if (a.c_.size() * b.c_.size() > 16) {
    // Multiply over Z to avoid a gcd per coefficient product.
    Int da, db;
    const auto ia = scaled_integers(a.c_, da);
    const auto ib = scaled_integers(b.c_, db);
    std::vector<Int> acc(ia.size() + ib.size() - 1, Int(0));
    for (std::size_t i = 0; i < ia.size(); ++i) {
      if (ia[i] == 0) continue;
      for (std::size_t j = 0; j < ib.size(); ++j) mpz_addmul(acc[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    }
    const Int den = da * db;
    std::vector<Rat> out;
    out.reserve(acc.size());
    for (auto& v : acc) {
      Rat r(v, den);
      r.canonicalize();
      out.push_back(std::move(r));
    }
    return Poly(std::move(out));
  }
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db) + 1, Rat(0));
  Rat inv = 1 / b.lc();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rat t = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) {
    throw InexactDivision("inexact division of " + to_string(a) + " by " + to_string(b));
  }
  return q;
}

bool divides(const Poly& b, const Poly& a) { return rem(a, b).is_zero(); }

namespace {

using ZPoly = std::vector<Int>;

void trim_z(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void make_primitive(ZPoly& a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZPoly to_z(const Poly& p) {
  const Rat c = p.content();
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    Rat q = v / c;
    out.push_back(q.get_num());
  }
  return out;
}

// lc(b)^e a = q b + r with deg r < deg b; only r is kept.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const Int& lb = b.back();
  while (a.size() >= b.size()) {
    const Int la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] -= la * b[j];
    trim_z(a);
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  // Primitive remainder sequence over Z.
  ZPoly u = to_z(a), v = to_z(b);
  if (u.size() < v.size()) std::swap(u, v);
  while (v.size() > 1) {
    ZPoly r = pseudo_rem(u, v);
    if (r.empty()) break;
    make_primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  if (v.size() <= 1) return Poly(1);
  std::vector<Rat> out(v.begin(), v.end());
  return Poly(std::move(out)).monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {Poly(), Poly(), Poly()};
  Rat inv = 1 / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Poly pow(const Poly& p, int n) {
  if (n < 0) throw std::domain_error("negative polynomial power");
  Poly result(1), base = p;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  Poly f = p.monic();
  Poly d = f.derivative();
  Poly a = gcd(f, d);
  Poly b = exact_div(f, a);
  Poly c = exact_div(d, a) - b.derivative();
  while (b.degree() > 0) {
    Poly g = gcd(b, c);
    out.push_back(g);
    b = exact_div(b, g);
    c = exact_div(c, g) - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) return {};
  Poly acc(1);
  for (const auto& f : squarefree_decomposition(p)) acc *= f;
  return acc;
}

bool is_squarefree(const Poly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace bethe
