#include "solenoidk/substitution.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "solenoidk/polynomial.hpp"

namespace solenoidk {

SubstitutionSystem::SubstitutionSystem(std::vector<std::string> edges, std::vector<Word> images)
    : edges_(std::move(edges)), images_(std::move(images)) {
  if (edges_.empty()) throw Error(ErrorCode::InvalidArgument, "a rose needs at least one edge");
  if (images_.size() != edges_.size())
    throw Error(ErrorCode::InvalidArgument, "one image word is required per edge");
  std::set<std::string> seen;
  for (const auto& e : edges_) {
    if (e.empty()) throw Error(ErrorCode::InvalidArgument, "edge names must be nonempty");
    if (!seen.insert(e).second) throw Error(ErrorCode::InvalidArgument, "duplicate edge name '" + e + "'");
    if (e.size() != 1) single_char_ = false;
  }
  for (const auto& w : images_)
    for (EdgeId x : w)
      if (x >= edges_.size()) throw Error(ErrorCode::UnknownEdge, "image letter index out of range");
}

SubstitutionSystem SubstitutionSystem::from_strings(const std::vector<std::string>& edges,
                                                    const std::vector<std::string>& images) {
  bool single = std::all_of(edges.begin(), edges.end(), [](const std::string& e) { return e.size() == 1; });
  auto lookup = [&](const std::string& name) -> EdgeId {
    auto it = std::find(edges.begin(), edges.end(), name);
    if (it == edges.end()) throw Error(ErrorCode::UnknownEdge, "unknown edge '" + name + "' in substitution word");
    return static_cast<EdgeId>(it - edges.begin());
  };
  std::vector<Word> words;
  for (const auto& text : images) {
    Word w;
    const bool spaced = std::any_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
    if (spaced || !single) {
      std::istringstream in(text);
      std::string token;
      while (in >> token) w.push_back(lookup(token));
    } else {
      for (char c : text) w.push_back(lookup(std::string(1, c)));
    }
    words.push_back(std::move(w));
  }
  return SubstitutionSystem(edges, std::move(words));
}

EdgeId SubstitutionSystem::edge_id(const std::string& name) const {
  auto it = std::find(edges_.begin(), edges_.end(), name);
  if (it == edges_.end()) throw Error(ErrorCode::UnknownEdge, "unknown edge '" + name + "'");
  return static_cast<EdgeId>(it - edges_.begin());
}

std::string SubstitutionSystem::word_string(const Word& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single_char_) s += ' ';
    s += edges_.at(w[i]);
  }
  return s;
}

SubstitutionSystem SubstitutionSystem::compose(const SubstitutionSystem& inner) const {
  std::vector<Word> out;
  out.reserve(edges_.size());
  for (const auto& w : inner.images_) {
    Word composed;
    for (EdgeId x : w) composed.insert(composed.end(), images_[x].begin(), images_[x].end());
    out.push_back(std::move(composed));
  }
  return SubstitutionSystem(edges_, std::move(out));
}

SubstitutionSystem SubstitutionSystem::power(unsigned n) const {
  std::vector<Word> id;
  for (EdgeId e = 0; e < edges_.size(); ++e) id.push_back({e});
  SubstitutionSystem result(edges_, std::move(id));
  for (unsigned i = 0; i < n; ++i) result = compose(result);
  return result;
}

SubstitutionSystem SubstitutionSystem::relabel(const std::vector<EdgeId>& perm) const {
  const std::size_t n = edges_.size();
  if (perm.size() != n) throw Error(ErrorCode::InvalidArgument, "relabel needs a permutation of the edges");
  std::vector<EdgeId> inverse(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || inverse[perm[i]] != n)
      throw Error(ErrorCode::InvalidArgument, "relabel needs a permutation of the edges");
    inverse[perm[i]] = i;
  }
  std::vector<std::string> names(n);
  std::vector<Word> words(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = edges_[perm[i]];
    for (EdgeId x : images_[perm[i]]) words[i].push_back(inverse[x]);
  }
  return SubstitutionSystem(std::move(names), std::move(words));
}

ValidationReport validate(const SubstitutionSystem& system) {
  ValidationReport report;
  const std::size_t n = system.edge_count();
  auto issue = [&](ErrorCode code, EdgeId e, const std::string& what) {
    report.issues.push_back({code, e, what + " (edge '" + system.edge_name(e) + "')"});
  };

  bool has_empty = false;
  for (EdgeId e = 0; e < n; ++e)
    if (system.image(e).empty()) {
      issue(ErrorCode::EmptyImage, e, "image word is empty");
      has_empty = true;
    }

  std::vector<bool> hit(n, false);
  for (const auto& w : system.images())
    for (EdgeId x : w) hit[x] = true;
  for (EdgeId e = 0; e < n; ++e)
    if (!hit[e]) issue(ErrorCode::NonSurjective, e, "edge occurs in no image word");

  if (has_empty) return report;

  // |g^k(e)| for k = 1..n through the length recursion.
  std::vector<Integer> len(n, 1);
  std::vector<bool> grows(n, false);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Integer> next(n, 0);
    for (EdgeId e = 0; e < n; ++e)
      for (EdgeId x : system.image(e)) next[e] += len[x];
    len = std::move(next);
    for (EdgeId e = 0; e < n; ++e)
      if (len[e] >= 2) grows[e] = true;
  }
  bool flagged = false;
  for (EdgeId e = 0; e < n; ++e)
    if (!grows[e]) {
      issue(ErrorCode::NonExpanding, e, "word length never reaches 2 within |edges| iterations");
      flagged = true;
    }
  if (!flagged && !spectral_radius_exceeds_one(substitution_matrix(system)))
    issue(ErrorCode::NonExpanding, 0, "spectral radius of the substitution matrix is at most 1");
  return report;
}

void require_valid(const SubstitutionSystem& system) {
  const ValidationReport r = validate(system);
  if (!r.ok()) throw Error(r.issues.front().code, r.issues.front().message);
}

IntMatrix substitution_matrix(const SubstitutionSystem& system) {
  const std::size_t n = system.edge_count();
  IntMatrix m(n, n);
  for (EdgeId f = 0; f < n; ++f)
    for (EdgeId e : system.image(f)) m(e, f) += 1;
  return m;
}

Word iterate_word(const SubstitutionSystem& system, EdgeId e, unsigned n) {
  Word w{e};
  for (unsigned i = 0; i < n; ++i) {
    Word next;
    for (EdgeId x : w) next.insert(next.end(), system.image(x).begin(), system.image(x).end());
    w = std::move(next);
  }
  return w;
}

std::vector<bool> iterate_support(const SubstitutionSystem& system, EdgeId e, unsigned n) {
  std::vector<bool> s(system.edge_count(), false);
  s[e] = true;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<bool> next(system.edge_count(), false);
    for (EdgeId x = 0; x < s.size(); ++x)
      if (s[x])
        for (EdgeId y : system.image(x)) next[y] = true;
    s = std::move(next);
  }
  return s;
}

std::size_t wielandt_bound(std::size_t dim) { return dim == 0 ? 0 : (dim - 1) * (dim - 1) + 1; }

bool is_mixing(const SubstitutionSystem& system) {
  const std::size_t n = system.edge_count();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
  for (EdgeId f = 0; f < n; ++f)
    for (EdgeId e : system.image(f)) base[e][f] = true;
  auto power = base;
  for (std::size_t k = 1; k <= wielandt_bound(n); ++k) {
    bool positive = true;
    for (const auto& row : power)
      for (bool b : row) positive = positive && b;
    if (positive) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n && !next[i][j]; ++l) next[i][j] = power[i][l] && base[l][j];
    power = std::move(next);
  }
  return false;
}

namespace {

Integer max_column_sum(const IntMatrix& m) {
  Integer best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j);
    best = std::max(best, s);
  }
  return best;
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

  Rational exact() const {
    Integer z;
    const mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), v_);
    Rational q(z);
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
  }

 private:
  mpfr_t v_;
};

constexpr mpfr_prec_t kLogPrecision = 256;

Rational log_bound(const Rational& x, mpfr_rnd_t rnd) {
  MpfrValue v(kLogPrecision);
  mpfr_set_q(v.get(), x.get_mpq_t(), rnd);
  mpfr_log(v.get(), v.get(), rnd);
  return v.exact();
}

std::string decimal_of(const Rational& x) {
  MpfrValue v(kLogPrecision);
  mpfr_set_q(v.get(), x.get_mpq_t(), MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.15Rf", v.get());
  std::string s = buf ? buf : "";
  mpfr_free_str(buf);
  return s;
}

}  // namespace

bool spectral_radius_exceeds_one(const IntMatrix& m) {
  const Polynomial p = characteristic_polynomial(m).squarefree();
  const Rational hi = Rational(max_column_sum(m) + 1);
  // The Perron root is a real root, and every root has modulus at most hi.
  return SturmSequence(p).roots_in(Rational(1), hi) > 0;
}

EntropyEnclosure entropy(const SubstitutionSystem& system, const Rational& max_width) {
  require_valid(system);
  const Rational min_width(Integer(1), Integer(1) << 200);
  if (max_width <= 0 || max_width < min_width)
    throw Error(ErrorCode::PrecisionUnreachable, "requested entropy width is below 2^-200");

  const IntMatrix m = substitution_matrix(system);
  const Polynomial p = characteristic_polynomial(m).squarefree();
  const SturmSequence sturm(p);
  // Invariant: the Perron root is the largest real root and lies in (lo, hi].
  Rational lo(1), hi(max_column_sum(m));
  Rational lambda_width = max_width / 4;
  for (;;) {
    while (p(hi) != 0 && (hi - lo > lambda_width || sturm.roots_in(lo, hi) != 1)) {
      const Rational mid = (lo + hi) / 2;
      if (sturm.roots_in(mid, hi) >= 1) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (p(hi) == 0) lo = hi;
    EntropyEnclosure out;
    out.lambda_lo = lo;
    out.lambda_hi = hi;
    out.log_lo = log_bound(lo, MPFR_RNDD);
    out.log_hi = log_bound(hi, MPFR_RNDU);
    if (out.log_hi - out.log_lo <= max_width) {
      out.decimal = decimal_of((out.log_lo + out.log_hi) / 2);
      return out;
    }
    lambda_width /= 2;
  }
}

}  // namespace solenoidk
