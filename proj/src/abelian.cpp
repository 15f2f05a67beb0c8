#include "solenoidk/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "solenoidk/error.hpp"

namespace solenoidk {

namespace {

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& m) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& m) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return q;
}

IntMatrix negated(const IntMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = -m(i, j);
  return r;
}

void require_shape(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, std::string("matrix shape mismatch in ") + what);
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require_shape(r.size() == cols_, "initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::scalar(long value) {
  IntMatrix m(1, 1);
  m(0, 0) = value;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_shape(rows[i].size() == cols, "from_rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_shape(columns[j].size() == rows, "from_columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::power(unsigned exponent) const {
  require_shape(is_square(), "power");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  require_shape(r0 <= r1 && r1 <= rows_ && c0 <= c1 && c1 <= cols_, "block");
  IntMatrix b(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
  return b;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& right) const {
  require_shape(rows_ == right.rows_, "hconcat");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& below) const {
  require_shape(cols_ == below.cols_, "vconcat");
  IntMatrix m(rows_ + below.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = below(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x >= 0; });
}

bool IntMatrix::is_positive() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x > 0; });
}

std::size_t IntMatrix::rank() const { return smith_normal_form(*this).rank; }

Integer IntMatrix::determinant() const {
  require_shape(is_square(), "determinant");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool IntMatrix::is_unimodular() const {
  if (!is_square()) return false;
  Integer d = determinant();
  return d == 1 || d == -1;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  require_shape(v.size() == cols_, "apply");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_shape(a.cols_ == b.rows_, "multiply");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "add");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "subtract");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Tracks P A Q = S together with U = P^{-1}, V = Q^{-1} under elementary moves.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& a)
      : s_(a),
        p_(IntMatrix::identity(a.rows())),
        u_(IntMatrix::identity(a.rows())),
        q_(IntMatrix::identity(a.cols())),
        v_(IntMatrix::identity(a.cols())) {}

  SmithForm run() {
    const std::size_t m = s_.rows(), n = s_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_min_pivot(t)) break;
      for (;;) {
        clear_column(t);
        clear_row(t);
        if (!column_clear(t)) continue;
        if (!fix_divisibility(t)) break;
      }
      if (s_(t, t) < 0) negate_row(t);
    }
    SmithForm f{u_, s_, v_, p_, q_, t};
    return f;
  }

 private:
  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < s_.rows(); ++i)
      if (s_(i, t) != 0) return false;
    return true;
  }

  bool move_min_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < s_.rows(); ++i)
      for (std::size_t j = t; j < s_.cols(); ++j) {
        const Integer& x = s_(i, j);
        if (x == 0) continue;
        if (!found || abs(x) < best) {
          best = abs(x);
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);
    return true;
  }

  void clear_column(std::size_t t) {
    for (std::size_t i = t + 1; i < s_.rows(); ++i) {
      while (s_(i, t) != 0) {
        Integer q = trunc_div(s_(i, t), s_(t, t));
        if (q != 0) add_row(i, t, -q);
        if (s_(i, t) != 0) swap_rows(i, t);
      }
    }
  }

  void clear_row(std::size_t t) {
    for (std::size_t j = t + 1; j < s_.cols(); ++j) {
      while (s_(t, j) != 0) {
        Integer q = trunc_div(s_(t, j), s_(t, t));
        if (q != 0) add_col(j, t, -q);
        if (s_(t, j) != 0) swap_cols(j, t);
      }
    }
  }

  // Returns true when a non-divisible entry was folded into row t.
  bool fix_divisibility(std::size_t t) {
    const Integer& d = s_(t, t);
    for (std::size_t i = t + 1; i < s_.rows(); ++i)
      for (std::size_t j = t + 1; j < s_.cols(); ++j)
        if (floor_mod(s_(i, j), d) != 0) {
          add_row(t, i, 1);
          return true;
        }
    return false;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < s_.cols(); ++c) std::swap(s_(i, c), s_(j, c));
    for (std::size_t c = 0; c < p_.cols(); ++c) std::swap(p_(i, c), p_(j, c));
    for (std::size_t r = 0; r < u_.rows(); ++r) std::swap(u_(r, i), u_(r, j));
  }

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < s_.cols(); ++k) s_(i, k) += c * s_(j, k);
    for (std::size_t k = 0; k < p_.cols(); ++k) p_(i, k) += c * p_(j, k);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, j) -= c * u_(r, i);
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < s_.cols(); ++k) s_(i, k) = -s_(i, k);
    for (std::size_t k = 0; k < p_.cols(); ++k) p_(i, k) = -p_(i, k);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, i) = -u_(r, i);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < s_.rows(); ++r) std::swap(s_(r, i), s_(r, j));
    for (std::size_t r = 0; r < q_.rows(); ++r) std::swap(q_(r, i), q_(r, j));
    for (std::size_t c = 0; c < v_.cols(); ++c) std::swap(v_(i, c), v_(j, c));
  }

  // col_j += c * col_i
  void add_col(std::size_t j, std::size_t i, const Integer& c) {
    for (std::size_t r = 0; r < s_.rows(); ++r) s_(r, j) += c * s_(r, i);
    for (std::size_t r = 0; r < q_.rows(); ++r) q_(r, j) += c * q_(r, i);
    for (std::size_t k = 0; k < v_.cols(); ++k) v_(i, k) -= c * v_(j, k);
  }

  IntMatrix s_, p_, u_, q_, v_;
};

}  // namespace

IntVector SmithForm::diagonal() const {
  IntVector d(std::min(S.rows(), S.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) { return SmithReducer(a).run(); }

IntMatrix hermite_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
  };
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < n; ++k) a(i, k) += c * a(j, k);
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // Euclid on the column until a single nonzero entry sits at `row`.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i)
        if (a(i, col) != 0 && (best == m || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best == m) break;
      if (best != row) swap_rows(best, row);
      bool reduced = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (a(i, col) == 0) continue;
        add_row(i, row, -trunc_div(a(i, col), a(row, col)));
        if (a(i, col) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0)
      for (std::size_t k = 0; k < n; ++k) a(row, k) = -a(row, k);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(a(i, col), a(row, col));
      if (q != 0) add_row(i, row, -q);
    }
    ++row;
  }
  return a.block(0, row, 0, n);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  const std::size_t n = a.cols();
  if (f.rank == n) return IntMatrix(n, 0);
  IntMatrix basis = f.Q.block(0, n, f.rank, n);
  IntMatrix h = hermite_normal_form(basis.transpose());
  return h.transpose();
}

std::size_t kernel_rank(const IntMatrix& a) { return a.cols() - a.rank(); }

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  require_shape(b.size() == a.rows(), "solve_integer");
  const SmithForm f = smith_normal_form(a);
  const IntVector c = f.P.apply(b);
  IntVector y(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), f.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / f.S(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return f.Q.apply(y);
}

// ---------------------------------------------------------------------------
// FgGroup

FgGroup::FgGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank) {
  // Normalize an arbitrary list of cyclic orders into the invariant-factor chain.
  std::vector<Integer> nontrivial;
  for (auto& d : torsion) {
    Integer a = abs(d);
    if (a == 0) {
      ++free_rank_;
    } else if (a != 1) {
      nontrivial.push_back(a);
    }
  }
  if (nontrivial.empty()) return;
  IntMatrix diag(nontrivial.size(), nontrivial.size());
  for (std::size_t i = 0; i < nontrivial.size(); ++i) diag(i, i) = nontrivial[i];
  for (const auto& d : smith_normal_form(diag).diagonal())
    if (d != 1) torsion_.push_back(d);
}

FgGroup FgGroup::cyclic(const Integer& order) {
  if (order == 0) return free(1);
  return FgGroup(0, {order});
}

std::optional<Integer> FgGroup::order() const {
  if (free_rank_) return std::nullopt;
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

IntMatrix FgGroup::relations() const {
  IntMatrix r(generator_count(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r(i, i) = torsion_[i];
  return r;
}

IntVector FgGroup::reduce(IntVector v) const {
  for (std::size_t i = 0; i < torsion_.size() && i < v.size(); ++i) v[i] = floor_mod(v[i], torsion_[i]);
  return v;
}

bool FgGroup::is_zero(const IntVector& v) const {
  const IntVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

bool FgGroup::admits_endomorphism(const IntMatrix& h) const {
  const std::size_t n = generator_count();
  if (h.rows() != n || h.cols() != n) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    IntVector image = h.column(i);
    for (auto& x : image) x *= torsion_[i];
    if (!is_zero(image)) return false;
  }
  return true;
}

std::string FgGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
  return s;
}

FgGroup cokernel(const IntMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < f.rank; ++i) torsion.push_back(f.S(i, i));
  return FgGroup(a.rows() - f.rank, torsion);
}

// ---------------------------------------------------------------------------
// Presentations

Presentation Presentation::of(const FgGroup& g) { return {g.generator_count(), g.relations()}; }

CanonicalForm canonicalize(const Presentation& p) {
  const std::size_t n = p.generators;
  IntMatrix rel = p.relations.rows() == n ? p.relations : IntMatrix(n, 0);
  const SmithForm f = smith_normal_form(rel);
  std::vector<std::size_t> keep;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.S(i, i) != 1) {
      keep.push_back(i);
      torsion.push_back(f.S(i, i));
    }
  for (std::size_t i = f.rank; i < n; ++i) keep.push_back(i);

  CanonicalForm c;
  c.group = FgGroup(n - f.rank, torsion);
  c.to_canonical = IntMatrix(keep.size(), n);
  c.from_canonical = IntMatrix(n, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      c.to_canonical(k, j) = f.P(keep[k], j);
      c.from_canonical(j, k) = f.U(j, keep[k]);
    }
  return c;
}

FgGroup subgroup_structure(const IntMatrix& gens, const IntMatrix& relations) {
  if (gens.cols() == 0) return FgGroup::trivial();
  const IntMatrix k = kernel_basis(gens.hconcat(negated(relations)));
  return cokernel(k.block(0, gens.cols(), 0, k.cols()));
}

KernelPresentation kernel_of(const IntMatrix& f, const Presentation& source,
                             const Presentation& target) {
  const std::size_t n = source.generators;
  require_shape(f.cols() == n && f.rows() == target.generators, "kernel_of");
  const IntMatrix pre = f.rows() ? kernel_basis(f.hconcat(negated(target.relations)))
                                 : IntMatrix::identity(n);
  IntMatrix x = pre.block(0, n, 0, pre.cols());
  // Re-basis the projected lattice so generators are independent.
  const IntMatrix gens = hermite_normal_form(x.transpose()).transpose();
  IntMatrix rel(gens.cols(), 0);
  if (gens.cols() > 0) {
    IntMatrix k = kernel_basis(gens.hconcat(negated(source.relations)));
    rel = k.block(0, gens.cols(), 0, k.cols());
  }
  return {{gens.cols(), rel}, gens};
}

// ---------------------------------------------------------------------------
// Colimits

namespace {

IntMatrix reduce_rows(const FgGroup& g, IntMatrix h) {
  for (std::size_t i = 0; i < g.torsion_count(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = floor_mod(h(i, j), g.torsion()[i]);
  return h;
}

bool is_scalar(const IntMatrix& m, Integer& c) {
  if (!m.is_square() || m.rows() == 0) return false;
  c = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? c : Integer(0))) return false;
  return true;
}

FgGroup torsion_eventual_image(const FgGroup& base, const IntMatrix& h) {
  const std::size_t t = base.torsion_count();
  if (t == 0) return FgGroup::trivial();
  FgGroup tors(0, base.torsion());
  const IntMatrix rel = tors.relations();
  const IntMatrix htt = h.block(0, t, 0, t);
  IntMatrix power = IntMatrix::identity(t);
  FgGroup current = subgroup_structure(power, rel);
  for (;;) {
    power = reduce_rows(tors, htt * power);
    FgGroup next = subgroup_structure(power, rel);
    if (*next.order() == *current.order()) return next;
    current = next;
  }
}

bool is_diagonal(const IntMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

// Product of the distinct primes of |c|; c itself when trial division gets too long.
Integer radical(Integer c) {
  c = abs(c);
  Integer out = 1;
  Integer rest = c;
  for (Integer p = 2; p * p <= rest; ++p) {
    if (p > 1000000) return c;
    if (rest % p == 0) {
      out *= p;
      while (rest % p == 0) rest /= p;
    }
  }
  return rest > 1 ? Integer(out * rest) : out;
}

std::string localization_name(const Integer& c) {
  const Integer rad = radical(c);
  return rad == 1 ? "Z" : "Z[1/" + rad.get_str() + "]";
}

std::size_t kernel_stabilization(const FgGroup& base, const IntMatrix& h) {
  const Presentation p = Presentation::of(base);
  IntMatrix hm = IntMatrix::identity(base.generator_count());
  for (std::size_t m = 0;; ++m) {
    const IntMatrix hm1 = reduce_rows(base, h * hm);
    const KernelPresentation k = kernel_of(hm1, p, p);
    bool contained = true;
    for (std::size_t j = 0; j < k.generators.cols() && contained; ++j)
      contained = base.is_zero(hm.apply(k.generators.column(j)));
    if (contained) return m;
    hm = hm1;
  }
}

}  // namespace

ColimitGroup colimit(const FgGroup& base, const IntMatrix& h) {
  if (!base.admits_endomorphism(h))
    throw Error(ErrorCode::IncompatibleEndo,
                "endomorphism " + h.to_string() + " is not well defined on " + base.to_string());
  ColimitGroup g;
  g.base_ = base;
  g.endo_ = reduce_rows(base, h);
  g.torsion_limit_ = torsion_eventual_image(base, g.endo_);
  g.stabilization_ = kernel_stabilization(base, g.endo_);

  const std::size_t t = base.torsion_count(), n = base.generator_count(), r = base.free_rank();
  const IntMatrix hff = g.endo_.block(t, n, t, n);
  g.free_rank_ = r == 0 ? 0 : hff.power(static_cast<unsigned>(r)).rank();

  std::optional<std::string> free_name;
  bool free_fg = false;
  Integer c;
  if (g.free_rank_ == 0) {
    free_name = "";
    free_fg = true;
  } else if (hff.is_unimodular()) {
    free_name = FgGroup::free(r).to_string();
    free_fg = true;
  } else if (is_scalar(hff, c)) {
    const std::string ring = localization_name(c);
    free_name = r == 1 ? ring : ring + "^" + std::to_string(r);
  } else if (is_diagonal(hff)) {
    // Zero entries die in the limit; the rest localize one coordinate each.
    std::map<std::string, std::size_t> parts;
    for (std::size_t i = 0; i < r; ++i)
      if (hff(i, i) != 0) ++parts[localization_name(hff(i, i))];
    std::string name;
    for (const auto& [ring, k] : parts) {
      if (!name.empty()) name += " ⊕ ";
      name += k == 1 ? ring : ring + "^" + std::to_string(k);
    }
    free_name = name;
  }
  g.fg_free_ = free_fg && g.torsion_limit_.is_trivial();
  if (free_name) {
    std::string name = *free_name;
    if (!g.torsion_limit_.is_trivial())
      name = name.empty() ? g.torsion_limit_.to_string() : name + " ⊕ " + g.torsion_limit_.to_string();
    g.pretty_ = name.empty() ? "0" : name;
  }
  return g;
}

ColimitGroup colimit(const FgGroup& base) {
  return colimit(base, IntMatrix::identity(base.generator_count()));
}

ColimitGroup colimit(const Presentation& base, const IntMatrix& h) {
  const std::size_t n = base.generators;
  if (h.rows() != n || h.cols() != n)
    throw Error(ErrorCode::IncompatibleEndo, "endomorphism shape does not match presentation");
  for (std::size_t j = 0; j < base.relations.cols(); ++j) {
    if (!solve_integer(base.relations, h.apply(base.relations.column(j))))
      throw Error(ErrorCode::IncompatibleEndo,
                  "endomorphism " + h.to_string() + " does not preserve the relations");
  }
  const CanonicalForm c = canonicalize(base);
  return colimit(c.group, c.to_canonical * h * c.from_canonical);
}

std::string ColimitGroup::name() const {
  if (pretty_) return *pretty_;
  return "colim(" + base_.to_string() + ", " + endo_.to_string() + ")";
}

bool colim_element_eq(const ColimitGroup& g, const IntVector& v, std::size_t j,
                      const IntVector& w, std::size_t k) {
  const FgGroup& b = g.base();
  if (v.size() != b.generator_count() || w.size() != b.generator_count())
    throw Error(ErrorCode::InvalidArgument, "element size does not match the base group");
  const std::size_t stage = std::max(j, k);
  IntVector x = v, y = w;
  for (std::size_t i = j; i < stage; ++i) x = b.reduce(g.endo().apply(x));
  for (std::size_t i = k; i < stage; ++i) y = b.reduce(g.endo().apply(y));
  IntVector d(x.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x[i] - y[i];
  for (std::size_t i = 0; i < g.stabilization_index(); ++i) d = b.reduce(g.endo().apply(d));
  return b.is_zero(d);
}

std::pair<ColimitGroup, ColimitGroup> induced_ker_coker(const ColimitGroup& g,
                                                        const IntMatrix& b) {
  const FgGroup& base = g.base();
  if (!base.admits_endomorphism(b))
    throw Error(ErrorCode::IncompatibleEndo, "map " + b.to_string() + " is not well defined on " +
                                                 base.to_string());
  const IntMatrix comm = b * g.endo() - g.endo() * b;
  for (std::size_t j = 0; j < comm.cols(); ++j)
    if (!base.is_zero(comm.column(j)))
      throw Error(ErrorCode::NonCommuting,
                  "map " + b.to_string() + " does not commute with " + g.endo().to_string());

  const Presentation p = Presentation::of(base);
  const KernelPresentation k = kernel_of(b, p, p);
  const IntMatrix lhs = k.generators.hconcat(p.relations);
  IntMatrix hk(k.generators.cols(), k.generators.cols());
  for (std::size_t i = 0; i < k.generators.cols(); ++i) {
    auto sol = solve_integer(lhs, g.endo().apply(k.generators.column(i)));
    if (!sol) throw Error(ErrorCode::NonCommuting, "kernel is not invariant under the endomorphism");
    for (std::size_t r = 0; r < hk.rows(); ++r) hk(r, i) = (*sol)[r];
  }
  ColimitGroup ker = colimit(k.presentation, hk);
  ColimitGroup coker = colimit(Presentation{p.generators, p.relations.hconcat(b)}, g.endo());
  return {ker, coker};
}

ColimitGroup direct_sum(const ColimitGroup& a, const ColimitGroup& b) {
  const Presentation pa = Presentation::of(a.base()), pb = Presentation::of(b.base());
  Presentation p{pa.generators + pb.generators, block_diagonal(pa.relations, pb.relations)};
  return colimit(p, block_diagonal(a.endo(), b.endo()));
}

}  // namespace solenoidk
