#include "classpoly/lattice.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "classpoly/errors.hpp"

namespace classpoly {

IntegerLattice::IntegerLattice(std::vector<IntVector> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw RankError("lattice needs at least one row");
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) throw RankError("lattice rows differ in length");
  }
}

IntegerLattice IntegerLattice::identity(std::size_t n) {
  std::vector<IntVector> rows(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return IntegerLattice(std::move(rows));
}

mpz_class dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Integral LLL state. Indices are 1-based to follow the usual presentation:
// d[0] = 1, d[i] = Gram determinant of the first i rows, lambda[k][j] = d[j] mu[k][j].
class IntegralLll {
 public:
  IntegralLll(std::vector<IntVector> rows, const mpq_class& delta)
      : n_(rows.size()),
        b_(n_ + 1),
        h_(n_ + 1, IntVector(n_, 0)),
        d_(n_ + 1, 0),
        lambda_(n_ + 1, IntVector(n_ + 1, 0)),
        p_(delta.get_num()),
        q_(delta.get_den()) {
    for (std::size_t i = 1; i <= n_; ++i) {
      b_[i] = std::move(rows[i - 1]);
      h_[i][i - 1] = 1;
    }
  }

  LllResult run() {
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) throw RankError("lattice rows are linearly dependent");
    std::size_t k = 2, kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      for (;;) {
        reduce(k, k - 1);
        const mpz_class lhs = q_ * (d_[k] * d_[k - 2] + lambda_[k][k - 1] * lambda_[k][k - 1]);
        const mpz_class rhs = p_ * d_[k - 1] * d_[k - 1];
        if (lhs < rhs) {
          swap(k, kmax);
          k = std::max<std::size_t>(2, k - 1);
          continue;
        }
        for (std::size_t l = k - 2; l >= 1; --l) reduce(k, l);
        ++k;
        break;
      }
    }
    LllResult out;
    std::vector<IntVector> rows(b_.begin() + 1, b_.end());
    out.basis = IntegerLattice(std::move(rows));
    out.transform.assign(h_.begin() + 1, h_.end());
    return out;
  }

 private:
  void gram_schmidt_row(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      mpz_class u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) {
        u = d_[i] * u - lambda_[k][i] * lambda_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lambda_[k][j] = u;
      } else {
        if (u == 0) throw RankError("lattice rows are linearly dependent");
        d_[k] = u;
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    const mpz_class twice = 2 * lambda_[k][l];
    if (mpz_cmpabs(twice.get_mpz_t(), d_[l].get_mpz_t()) <= 0) return;
    // nearest integer to lambda / d
    mpz_class q;
    const mpz_class num = twice + d_[l];
    const mpz_class den = 2 * d_[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t i = 0; i < b_[k].size(); ++i) b_[k][i] -= q * b_[l][i];
    for (std::size_t i = 0; i < n_; ++i) h_[k][i] -= q * h_[l][i];
    lambda_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    std::swap(h_[k], h_[k - 1]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const mpz_class lam = lambda_[k][k - 1];
    mpz_class big_b = d_[k - 2] * d_[k] + lam * lam;
    mpz_divexact(big_b.get_mpz_t(), big_b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lambda_[i][k];
      mpz_class a = d_[k] * lambda_[i][k - 1] - lam * t;
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d_[k - 1].get_mpz_t());
      lambda_[i][k] = a;
      mpz_class c = big_b * t + lam * lambda_[i][k];
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d_[k].get_mpz_t());
      lambda_[i][k - 1] = c;
    }
    d_[k - 1] = big_b;
  }

  std::size_t n_;
  std::vector<IntVector> b_;
  std::vector<IntVector> h_;
  IntVector d_;
  std::vector<IntVector> lambda_;
  mpz_class p_, q_;
};

}  // namespace

LllResult lll_reduce(const IntegerLattice& lattice, const mpq_class& delta) {
  if (!(delta > mpq_class(1, 4) && delta < 1)) throw DomainError("LLL delta must lie in (1/4, 1)");
  if (lattice.rank() == 0) throw RankError("empty lattice");
  if (lattice.rank() == 1) {
    if (dot(lattice.row(0), lattice.row(0)) == 0) throw RankError("zero row");
    return LllResult{lattice, {IntVector{1}}};
  }
  return IntegralLll(lattice.rows(), delta).run();
}

double algdep_height_bound_log2(int degree, Precision p) {
  return static_cast<double>(p.bits() - kGuardBits) / (2.0 * (degree + 1));
}

IntPolynomial algdep(const Real& x, int degree, Precision p) {
  if (degree < 1) throw DomainError("algdep degree must be at least 1");
  if (x.precision() < p) throw DomainError("algdep input carries less precision than requested");
  const std::size_t dim = static_cast<std::size_t>(degree) + 1;
  const Precision work = p.plus(kGuardBits);
  const Real scale = pow2(p.bits() - kGuardBits, work);

  std::vector<IntVector> rows(dim, IntVector(dim + 1, 0));
  Real power(1L, work);
  const Real xw = x.rounded_to(work);
  for (std::size_t i = 0; i < dim; ++i) {
    rows[i][i] = 1;
    rows[i][dim] = nearest_integer(scale * power);
    power *= xw;
  }
  const LllResult reduced = lll_reduce(IntegerLattice(std::move(rows)));

  const double height_bound = algdep_height_bound_log2(degree, p);
  const Real residual_bound = pow2(-(p.bits() / 2), work);
  auto is_relation = [&](const IntPolynomial& q) {
    if (q.is_zero()) return false;
    for (const auto& c : q.coefficients()) {
      if (c != 0 && static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)) > height_bound) return false;
    }
    return abs(q.evaluate(xw, work)) < residual_bound;
  };

  IntPolynomial combined;
  for (const auto& row : reduced.basis.rows()) {
    IntPolynomial q(IntVector(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dim)));
    if (is_relation(q)) combined = primitive_gcd(combined, q);
  }
  if (combined.is_zero() || combined.degree() < 1 || !is_relation(combined)) {
    throw PrecisionError("no integer relation of degree <= " + std::to_string(degree) + " at " +
                         std::to_string(p.bits()) + " bits");
  }
  return combined;
}

}  // namespace classpoly
