// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classpoly/construct.hpp"
#include "classpoly/dataset.hpp"
#include "classpoly/errors.hpp"
#include "classpoly/lattice.hpp"
#include "classpoly/modfunc.hpp"
#include "classpoly/quadform.hpp"
#include "classpoly/verify.hpp"

using namespace classpoly;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(CLASSPOLY_CLI) + " " + args + " 2>/dev/null";
  CliRun r{-1, {}};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

IntPolynomial polynomial_from_json_strings(const json& coefficients) {
  std::vector<mpz_class> cs;
  for (const auto& c : coefficients) cs.emplace_back(c.get<std::string>());
  return IntPolynomial(cs);
}

const ExpectedDataset& data() { return ExpectedDataset::embedded(); }

// One pipeline per table row, shared by criteria 2 to 6 and 8.
struct Sweep {
  std::map<long, Pipeline> pipes;
  std::map<long, VerificationReport> reports;
  double seconds = 0;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    const auto start = Clock::now();
    for (const auto& [n, row] : data().rows()) {
      out.pipes.emplace(n, run_pipeline(n));
      out.reports.emplace(n, build_report(out.pipes.at(n), &data()));
    }
    out.seconds = seconds_since(start);
    return out;
  }();
  return s;
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

Outcome table1() {
  Outcome o;
  const auto start = Clock::now();
  for (const auto& [n, expected] : data().ramanujan_table()) {
    const CliRun r = cli("ramanujan " + std::to_string(n) + " --json");
    if (r.code != 0) {
      o.fail("ramanujan " + std::to_string(n) + " exited " + std::to_string(r.code));
      continue;
    }
    const IntPolynomial got = polynomial_from_json_strings(json::parse(r.out)["coefficients"]);
    if (got != expected) o.fail("P_" + std::to_string(n) + " = " + got.to_string());
  }
  const double t = seconds_since(start);
  if (t >= 5.0) o.fail("took " + fmt_seconds(t));
  if (o.pass) o.detail = "5 polynomials exact in " + fmt_seconds(t);
  return o;
}

Outcome table2() {
  Outcome o;
  const Sweep& s = sweep();
  if (s.reports.size() != 42) o.fail(std::to_string(s.reports.size()) + " rows");
  for (const auto& [n, r] : s.reports) {
    for (const auto& [field, ok] : r.table_match) {
      if (!ok) o.fail("n = " + std::to_string(n) + " " + field);
    }
    if (r.table_match.size() != 4) o.fail("n = " + std::to_string(n) + " not compared");
    if (!r.disc_ramanujan.complete()) o.fail("n = " + std::to_string(n) + " factorization incomplete");
  }
  if (s.seconds >= 600) o.fail("took " + fmt_seconds(s.seconds));
  if (o.pass) o.detail = "42/42 rows (h, sign, factorization, Cl) in " + fmt_seconds(s.seconds) + " single-threaded";
  return o;
}

Outcome worked_example() {
  Outcome o;
  const auto start = Clock::now();
  const WorkedExample& w = data().worked_example();
  const Pipeline pipe = run_pipeline(227);
  if (pipe.hilbert.polynomial != w.hilbert) o.fail("H_227 differs");
  if (pipe.ramanujan.polynomial != w.ramanujan) o.fail("P_227 differs");
  const SquareQuotient q = square_quotient(pipe);
  if (!q.holds()) o.fail("quotient not a square of matching sign");
  if (q.disc_hilbert_factored != w.discriminant_hilbert) o.fail("Δ(H_227) = " + q.disc_hilbert_factored.to_string());
  if (pipe.disc_ramanujan_factored != w.discriminant_ramanujan) o.fail("Δ(P_227) differs");
  if (q.index_factored != w.index) o.fail("index = " + q.index_factored.magnitude_string());
  const DormanCheck d = dorman_check(pipe);
  if (d.field_discriminant != w.field_discriminant) o.fail("field discriminant " + d.field_discriminant.to_string());
  if (!d.divides) o.fail("field discriminant does not divide Δ(P_227)");
  const double t = seconds_since(start);
  if (t >= 30) o.fail("took " + fmt_seconds(t));
  if (o.pass) {
    o.detail = "H_227, Δ(H_227), index " + q.index_factored.magnitude_string() + ", 227^2 | Δ(P_227) in " +
               fmt_seconds(t);
  }
  return o;
}

Outcome square_quotients() {
  Outcome o;
  for (const auto& [n, r] : sweep().reports) {
    if (!r.quotient.divides) o.fail("n = " + std::to_string(n) + " does not divide");
    else if (!r.quotient.is_square) o.fail("n = " + std::to_string(n) + " quotient not square");
    if (r.quotient.sign_hilbert != r.quotient.sign_ramanujan) o.fail("n = " + std::to_string(n) + " signs differ");
  }
  if (o.pass) o.detail = "Δ(P_n) | Δ(H_n), square quotient, equal signs for all 42 rows";
  return o;
}

Outcome signs() {
  Outcome o;
  int squarefree = 0, cyclic = 0;
  for (const auto& [n, r] : sweep().reports) {
    const std::string tag = "n = " + std::to_string(n);
    if (r.sign.predicted != r.sign.actual) o.fail(tag + " predicted sign wrong");
    if (is_squarefree(n)) {
      ++squarefree;
      if (!r.sign.genus_count || *r.sign.genus_count != r.two_torsion) o.fail(tag + " genus count differs");
    }
    if (r.invariant_factors.size() == 1) {
      ++cyclic;
      if (!r.sign.cyclic_predicted || *r.sign.cyclic_predicted != r.sign.actual) o.fail(tag + " cyclic rule wrong");
    }
  }
  if (o.pass) {
    o.detail = "42/42 signs; 2^(t-1) rule on " + std::to_string(squarefree) + " squarefree rows; h mod 4 rule on " +
               std::to_string(cyclic) + " cyclic rows";
  }
  return o;
}

Outcome three() {
  Outcome o;
  for (const auto& [n, r] : sweep().reports) {
    if (!r.three.holds()) o.fail("n = " + std::to_string(n));
  }
  long count = 0;
  for (long n = 11; n <= 10007; n += 24) {
    ++count;
    if (kronecker_minus_n_mod3(n) != SplittingType::kSplit) o.fail("3 not split for n = " + std::to_string(n));
  }
  if (o.pass) o.detail = "3 ∤ Δ(P_n) for 42 rows; 3 splits for " + std::to_string(count) + " n up to 10007";
  return o;
}

Outcome remarks() {
  Outcome o;
  for (const auto& [n, expected] : data().class_group_remarks()) {
    const std::vector<long> got = class_group(n).invariant_factors();
    if (got != expected || got != std::vector<long>{2, 6}) o.fail("Cl(" + std::to_string(n) + ") differs");
  }
  if (o.pass) o.detail = "Cl(1235) = Cl(2555) = Z/2 x Z/6";
  return o;
}

// Exact Gram-Schmidt check of size reduction and the Lovasz condition.
bool lovasz_holds(const IntegerLattice& l, const mpq_class& delta) {
  const std::size_t k = l.rank(), d = l.dimension();
  std::vector<std::vector<mpq_class>> star(k, std::vector<mpq_class>(d));
  std::vector<mpq_class> norms(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < d; ++c) star[i][c] = l.row(i)[c];
    mpq_class last_mu = 0;
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (std::size_t c = 0; c < d; ++c) num += mpq_class(l.row(i)[c]) * star[j][c];
      const mpq_class mu = num / norms[j];
      if (abs(mu) > mpq_class(1, 2)) return false;
      for (std::size_t c = 0; c < d; ++c) star[i][c] -= mu * star[j][c];
      last_mu = mu;
    }
    norms[i] = 0;
    for (std::size_t c = 0; c < d; ++c) norms[i] += star[i][c] * star[i][c];
    if (i > 0 && norms[i] < (delta - last_mu * last_mu) * norms[i - 1]) return false;
  }
  return true;
}

mpz_class root_product_discriminant(const IntPolynomial& p) {
  const Precision prec(512);
  const std::vector<Complex> roots = complex_roots(p, prec);
  Complex acc(powi(Real(p.leading(), prec), 2 * p.degree() - 2));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Complex d = roots[i] - roots[j];
      acc *= d * d;
    }
  }
  return round_to_integer(acc.re(), Real(0.25, prec));
}

Outcome properties() {
  Outcome o;
  std::vector<std::string> parts;

  // (a) reality criterion
  {
    int points = 0;
    for (const auto& [n, row] : data().rows()) {
      const Precision p(estimate_bits_hilbert(n));
      const Real threshold = exp_real(Real(-static_cast<double>(p.digits() / 2) * std::log(10.0), p), p);
      const ClassGroup G(n);
      for (std::size_t i = 0; i < G.order(); ++i) {
        ++points;
        const Complex j = j_invariant(cm_point(G.elements()[i], p).tau, p);
        const bool torsion = G.compose_index(i, i) == G.identity_index();
        if ((abs(j.im()) < threshold) != torsion) o.fail("(a) n = " + std::to_string(n) + " form " + G.elements()[i].to_string());
      }
    }
    parts.push_back("(a) " + std::to_string(points) + " CM points");
  }

  // (b) real roots of P_n land on real roots of H_n, (c) real-root counts
  {
    int roots_checked = 0;
    for (const auto& [n, pipe] : sweep().pipes) {
      const Precision p(std::max(512L, 2 * pipe.hilbert.bits));
      const Real tol = exp_real(Real(-20.0 * std::log(10.0), p), p);
      std::vector<Real> hilbert_real;
      for (const QuadForm& f : enumerate_reduced(n)) {
        if (f.is_ambiguous()) hilbert_real.push_back(j_invariant(cm_point(f, p).tau, p).re());
      }
      for (const Complex& r : complex_roots(pipe.ramanujan.polynomial, p)) {
        if (abs(r.im()) > pow2(-(p.bits() / 2), p)) continue;
        ++roots_checked;
        const Real image = transform_t_to_j(r.re());
        bool hit = false;
        for (const Real& j : hilbert_real) hit = hit || abs(image - j) < tol;
        if (!hit) o.fail("(b) n = " + std::to_string(n));
      }
      const VerificationReport& rep = sweep().reports.at(n);
      if (!rep.real_roots_hold()) o.fail("(c) n = " + std::to_string(n));
    }
    parts.push_back("(b) " + std::to_string(roots_checked) + " real roots within 1e-20");
    parts.push_back("(c) 42 rows");
  }

  // (d) LLL and algdep
  {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> c(-1000, 1000);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<IntVector> rows(4 + trial % 3, IntVector(6));
      for (auto& r : rows) {
        for (auto& x : r) x = c(rng);
      }
      try {
        if (!lovasz_holds(lll_reduce(IntegerLattice(rows)).basis, mpq_class(99, 100))) o.fail("(d) Lovasz");
      } catch (const RankError&) {
      }
    }
    std::uniform_int_distribution<long> coeff(-100, 100);
    const Precision p = Precision::from_digits(120);
    int recovered = 0;
    while (recovered < 100) {
      const int d = 1 + static_cast<int>(rng() % 5);
      std::vector<mpz_class> cs;
      for (int i = 0; i < d; ++i) cs.emplace_back(coeff(rng));
      cs.emplace_back(1);
      const IntPolynomial gen(cs);
      if (discriminant(gen) == 0 || real_root_count(gen) == 0) continue;
      Real root(p);
      for (const Complex& z : complex_roots(gen, p.plus(32))) {
        if (abs(z.im()) < pow2(-p.bits(), p.plus(32))) {
          root = z.re();
          break;
        }
      }
      const IntPolynomial q = algdep(root, d, p);
      try {
        divide_exact(gen, q);
      } catch (const std::exception&) {
        o.fail("(d) algdep on a root of " + gen.to_string() + " gave " + q.to_string());
      }
      ++recovered;
    }
    parts.push_back("(d) Lovasz on 30 lattices, 100 algdep round trips");
  }

  // (e) discriminants two ways
  for (const auto& [n, poly] : data().ramanujan_table()) {
    if (discriminant(poly) != root_product_discriminant(poly)) o.fail("(e) n = " + std::to_string(n));
  }
  parts.push_back("(e) 5 polynomials");

  // (f) doubling precision
  for (const auto& [n, pipe] : sweep().pipes) {
    const IntPolynomial h = hilbert_class_poly(n, Precision(2 * pipe.hilbert.bits)).polynomial;
    const IntPolynomial r = ramanujan_poly(n, Precision(2 * pipe.ramanujan.bits), &h).polynomial;
    if (h != pipe.hilbert.polynomial || r != pipe.ramanujan.polynomial) o.fail("(f) n = " + std::to_string(n));
  }
  parts.push_back("(f) 42 rows");

  if (o.pass) {
    for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
  }
  return o;
}

Outcome negative_controls() {
  Outcome o;
  json j = json::parse(embedded_dataset_text());
  for (auto& row : j["table2"]) {
    if (row["n"] == 227) row["discriminant"]["factors"][0][1] = "6";
  }
  const auto path = std::filesystem::temp_directory_path() / ("perturbed_" + std::to_string(::getpid()) + ".json");
  std::ofstream(path) << j.dump();
  const int perturbed = cli("verify 227 --dataset " + path.string()).code;
  std::filesystem::remove(path);
  const int clean = cli("verify 227").code;
  const int bad_n = cli("ramanujan 13").code;
  if (perturbed != 2) o.fail("perturbed verify exited " + std::to_string(perturbed));
  if (clean != 0) o.fail("clean verify exited " + std::to_string(clean));
  if (bad_n != 1) o.fail("ramanujan 13 exited " + std::to_string(bad_n));
  if (o.pass) o.detail = "perturbed verify -> 2, clean verify -> 0, ramanujan 13 -> 1";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Table 1 reproduction", table1},
      {"Table 2 reproduction", table2},
      {"n = 227 worked example", worked_example},
      {"square quotient of discriminants", square_quotients},
      {"sign of the discriminant", signs},
      {"3 never divides the discriminant", three},
      {"non-cyclic class groups", remarks},
      {"property suites", properties},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
