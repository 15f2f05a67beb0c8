#include "solenoidk/polynomial.hpp"

#include "solenoidk/error.hpp"

namespace solenoidk {

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::from_integers(const IntVector& coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (const auto& x : coefficients) c.emplace_back(x);
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> m = c_;
  const Rational lead = m.back();
  for (auto& x : m) x /= lead;
  return Polynomial(std::move(m));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  std::vector<Rational> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= q * b.c_[static_cast<std::size_t>(i)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial Polynomial::squarefree() const {
  if (degree() < 1) return *this;
  return divmod(*this, gcd(*this, derivative())).first;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  IntVector c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix shifted = a * m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
    m = shifted;
    const IntMatrix am = a * m;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    Integer coeff = -trace;
    mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = coeff;
  }
  return Polynomial::from_integers(c);
}

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) return;
  chain_.push_back(p);
  chain_.push_back(p.derivative());
  while (!chain_.back().is_zero()) {
    const Polynomial r = Polynomial::divmod(chain_[chain_.size() - 2], chain_.back()).second;
    chain_.push_back(Polynomial() - r);
  }
  chain_.pop_back();
}

std::size_t SturmSequence::sign_changes(const Rational& x) const {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::size_t SturmSequence::roots_in(const Rational& a, const Rational& b) const {
  const std::size_t va = sign_changes(a), vb = sign_changes(b);
  return va >= vb ? va - vb : 0;
}

}  // namespace solenoidk
