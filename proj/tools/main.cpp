// classpoly: class groups, Hilbert and Ramanujan class polynomials and
// discriminant checks for n = 11 (mod 24).

#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <mpfr.h>

#include "classpoly/construct.hpp"
#include "classpoly/dataset.hpp"
#include "classpoly/document.hpp"
#include "classpoly/errors.hpp"
#include "classpoly/quadform.hpp"
#include "classpoly/verify.hpp"

using namespace classpoly;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerification = 2, kPrecision = 3 };
enum class Format { kText, kJson, kCsv };

struct Options {
  long n = 0;
  long from = 11;
  long to = 995;
  bool json = false;
  bool csv = false;
  bool text = false;
  long precision_bits = 0;
  std::string cache_dir;
  unsigned jobs = 1;
  bool strict = false;
  std::string dataset_path;

  Format format() const { return json ? Format::kJson : csv ? Format::kCsv : Format::kText; }
};

struct Context {
  Options opt;
  std::optional<ResultCache> cache;
  std::optional<ExpectedDataset> dataset_override;

  const ExpectedDataset& dataset() const {
    return dataset_override ? *dataset_override : ExpectedDataset::embedded();
  }
  PipelineOptions pipeline_options() const {
    PipelineOptions p;
    if (opt.precision_bits) p.precision = Precision(opt.precision_bits);
    p.cache = cache ? &*cache : nullptr;
    return p;
  }
};

std::string join(const std::vector<long>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

json forms_json(const std::vector<QuadForm>& forms) {
  json out = json::array();
  for (const auto& f : forms) out.push_back({f.a, f.b, f.c});
  return out;
}

// ---- classgroup ----

int cmd_classgroup(const Context& ctx) {
  const long n = ctx.opt.n;
  require_supported_n(n);
  const ClassGroup group(n);
  const long two = two_torsion_count(group);
  switch (ctx.opt.format()) {
    case Format::kJson:
      std::cout << json{{"n", n},
                        {"h", group.order()},
                        {"invariant_factors", group.invariant_factors()},
                        {"two_torsion", two},
                        {"forms", forms_json(group.elements())}}
                       .dump(2)
                << '\n';
      break;
    case Format::kCsv:
      std::cout << "n,h,invariant_factors,two_torsion\n"
                << n << ',' << group.order() << ',' << join(group.invariant_factors(), "x") << ',' << two << '\n';
      break;
    case Format::kText:
      std::cout << "n = " << n << "\nh = " << group.order() << "\nCl(n) = Z/"
                << join(group.invariant_factors(), " + Z/") << "\n|Cl(n)[2]| = " << two << "\nforms:\n";
      for (const auto& f : group.elements()) std::cout << "  " << f.to_string() << '\n';
      break;
  }
  return kOk;
}

// ---- hilbert / ramanujan ----

ResultDocument polynomial_document(const Context& ctx, PolynomialKind kind, long n) {
  if (ctx.cache) {
    if (auto doc = ctx.cache->load(kind, n)) return *doc;
  }
  const std::optional<Precision> fixed =
      ctx.opt.precision_bits ? std::optional<Precision>(Precision(ctx.opt.precision_bits)) : std::nullopt;
  const ClassGroup group(n);
  ResultDocument doc;
  if (kind == PolynomialKind::kHilbert) {
    const ClassPolynomialResult r = hilbert_class_poly(n, fixed);
    doc = make_document(r, factorize(discriminant(r.polynomial), trial_bound_for(n)), group.invariant_factors());
    doc.verification = {{"monic", r.polynomial.is_monic()}, {"degree_equals_h", r.polynomial.degree() == static_cast<long>(group.order())}};
  } else {
    const ClassPolynomialResult h = hilbert_class_poly(n);
    const ClassPolynomialResult r = ramanujan_poly(n, fixed, &h.polynomial);
    const RamanujanCheck check = verify_ramanujan_poly(r.polynomial, n, h.polynomial, Precision(r.bits));
    doc = make_document(r, factorize(discriminant(r.polynomial), trial_bound_for(n)), group.invariant_factors());
    doc.verification = {{"degree_equals_h", check.degree_ok},
                        {"unit_constant_term", check.constant_ok},
                        {"roots_map_to_hilbert_roots", check.roots_map_ok},
                        {"vanishes_at_t", check.value_ok}};
  }
  if (ctx.cache) ctx.cache->store(doc);
  return doc;
}

int cmd_polynomial(const Context& ctx, PolynomialKind kind) {
  const long n = ctx.opt.n;
  require_supported_n(n);
  const ResultDocument doc = polynomial_document(ctx, kind, n);
  const std::string name = (kind == PolynomialKind::kHilbert ? "H_" : "P_") + std::to_string(n);
  switch (ctx.opt.format()) {
    case Format::kJson:
      std::cout << to_json(doc).dump(2) << '\n';
      break;
    case Format::kCsv: {
      std::cout << "n,kind,degree,coefficients,precision_bits\n"
                << n << ',' << to_string(kind) << ',' << doc.degree << ',';
      for (std::size_t i = 0; i < doc.coefficients.size(); ++i) std::cout << (i ? " " : "") << doc.coefficients[i];
      std::cout << ',' << doc.precision_bits << '\n';
      break;
    }
    case Format::kText:
      std::cout << name << "(z) = " << doc.polynomial().to_string("z") << '\n';
      if (doc.discriminant) std::cout << "Δ(" << name << ") = " << doc.discriminant->to_string() << '\n';
      std::cout << "precision: " << doc.precision_bits << " bits\n";
      break;
  }
  for (const auto& [flag, ok] : doc.verification) {
    if (!ok) {
      std::cerr << "verification flag " << flag << " is false\n";
      return kVerification;
    }
  }
  return kOk;
}

// ---- disc ----

int cmd_disc(const Context& ctx) {
  const long n = ctx.opt.n;
  const Pipeline pipe = run_pipeline(n, ctx.pipeline_options());
  const SquareQuotient q = square_quotient(pipe);
  const std::string ns = std::to_string(n);
  switch (ctx.opt.format()) {
    case Format::kJson:
      std::cout << json{{"n", n},
                        {"disc_ramanujan", factored_to_json(pipe.disc_ramanujan_factored)},
                        {"disc_hilbert", q.is_square ? factored_to_json(q.disc_hilbert_factored) : json(nullptr)},
                        {"quotient_divides", q.divides},
                        {"quotient_is_square", q.is_square},
                        {"index", q.is_square ? factored_to_json(q.index_factored) : json(nullptr)}}
                       .dump(2)
                << '\n';
      break;
    case Format::kCsv:
      std::cout << "n,disc_ramanujan,disc_hilbert,index\n"
                << n << ',' << pipe.disc_ramanujan_factored.to_string("×") << ','
                << (q.is_square ? q.disc_hilbert_factored.to_string("×") : "") << ','
                << (q.is_square ? q.index_factored.magnitude_string("×") : "") << '\n';
      break;
    case Format::kText:
      std::cout << "Δ(P_" << ns << ") = " << pipe.disc_ramanujan_factored.to_string() << '\n';
      if (q.is_square) {
        std::cout << "Δ(H_" << ns << ") = " << q.disc_hilbert_factored.to_string() << '\n'
                  << "Δ(H_" << ns << ")/Δ(P_" << ns << ") = index^2, index = " << q.index_factored.magnitude_string()
                  << '\n';
      } else {
        std::cout << "Δ(H_" << ns << ") = " << (pipe.disc_hilbert > 0 ? "+" : "") << pipe.disc_hilbert.get_str()
                  << "\nquotient is " << (q.divides ? "not a square" : "not integral") << '\n';
      }
      break;
  }
  return q.holds() ? kOk : kVerification;
}

// ---- verify ----

json report_json(const VerificationReport& r) {
  json j{{"n", r.n},
         {"h", r.h},
         {"invariant_factors", r.invariant_factors},
         {"two_torsion", r.two_torsion},
         {"hilbert", coefficients_to_strings(r.hilbert)},
         {"ramanujan", coefficients_to_strings(r.ramanujan)},
         {"precision_bits", {{"hilbert", r.hilbert_bits}, {"ramanujan", r.ramanujan_bits}}},
         {"disc_ramanujan", factored_to_json(r.disc_ramanujan)},
         {"disc_hilbert", factored_to_json(r.disc_hilbert)}};
  j["square_quotient"] = {{"divides", r.quotient.divides},
                          {"quotient", r.quotient.divides ? r.quotient.quotient.get_str() : ""},
                          {"is_square", r.quotient.is_square},
                          {"index", r.quotient.is_square ? factored_to_json(r.quotient.index_factored) : json(nullptr)},
                          {"sign_hilbert", r.quotient.sign_hilbert},
                          {"sign_ramanujan", r.quotient.sign_ramanujan},
                          {"holds", r.quotient.holds()}};
  j["sign"] = {{"predicted", sign_char(r.sign.predicted)},
               {"actual", sign_char(r.sign.actual)},
               {"genus_count", r.sign.genus_count ? json(*r.sign.genus_count) : json(nullptr)},
               {"cyclic_predicted", r.sign.cyclic_predicted ? json(sign_char(*r.sign.cyclic_predicted)) : json(nullptr)},
               {"holds", r.sign.holds()}};
  if (r.dorman) {
    j["field_discriminant"] = {{"d0", r.dorman->d0},
                               {"d1", r.dorman->d1},
                               {"t", r.dorman->primes},
                               {"value", factored_to_json(r.dorman->field_discriminant)},
                               {"divides", r.dorman->divides},
                               {"quotient", r.dorman->divides ? r.dorman->quotient.get_str() : ""},
                               {"quotient_square", r.dorman->quotient_square},
                               {"holds", r.dorman->holds()}};
  } else {
    j["field_discriminant"] = {{"skipped", r.dorman_skipped}};
  }
  j["three"] = {{"divides_disc", r.three.three_divides_disc},
                {"divides_n", r.three.three_divides_n},
                {"splitting", to_string(r.three.splitting)},
                {"holds", r.three.holds()}};
  j["real_roots"] = {{"hilbert", r.real_roots_hilbert},
                     {"ramanujan", r.real_roots_ramanujan},
                     {"two_torsion", r.two_torsion},
                     {"holds", r.real_roots_hold()}};
  j["literal_square"] = r.literal_square;
  j["table_match"] = r.table_match;
  j["seconds"] = r.seconds;
  return j;
}

void print_report_text(const VerificationReport& r) {
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  std::cout << "n = " << r.n << "  h = " << r.h << "  Cl(n) = Z/" << join(r.invariant_factors, " + Z/")
            << "  |Cl[2]| = " << r.two_torsion << '\n'
            << "P_" << r.n << "(z) = " << r.ramanujan.to_string("z") << '\n'
            << "Δ(P) = " << r.disc_ramanujan.to_string() << '\n'
            << "Δ(H) = " << r.disc_hilbert.to_string() << '\n';
  std::cout << "square quotient: " << mark(r.quotient.holds());
  if (r.quotient.is_square) std::cout << "  index = " << r.quotient.index_factored.magnitude_string();
  std::cout << "\nsign: predicted " << sign_char(r.sign.predicted) << ", actual " << sign_char(r.sign.actual);
  if (r.sign.genus_count) std::cout << ", 2^(t-1) = " << *r.sign.genus_count;
  if (r.sign.cyclic_predicted) std::cout << ", cyclic rule " << sign_char(*r.sign.cyclic_predicted);
  std::cout << "  " << mark(r.sign.holds()) << '\n';
  if (r.dorman) {
    std::cout << "field discriminant: " << r.dorman->field_discriminant.to_string() << " (D0 = " << r.dorman->d0
              << ", D1 = " << r.dorman->d1 << "), divides Δ(P) with square quotient: " << mark(r.dorman->holds())
              << '\n';
  } else {
    std::cout << "field discriminant: skipped (" << r.dorman_skipped << ")\n";
  }
  std::cout << "3 does not divide Δ(P), 3 splits: " << mark(r.three.holds()) << '\n'
            << "real roots: H " << r.real_roots_hilbert << ", P " << r.real_roots_ramanujan << "  "
            << mark(r.real_roots_hold()) << '\n'
            << "Δ(P) a perfect square (diagnostic): " << (r.literal_square ? "yes" : "no") << '\n';
  if (!r.table_match.empty()) {
    std::cout << "table:";
    for (const auto& [field, ok] : r.table_match) std::cout << ' ' << field << '=' << mark(ok);
    std::cout << '\n';
  }
}

int cmd_verify(const Context& ctx) {
  require_supported_n(ctx.opt.n);
  const Pipeline pipe = run_pipeline(ctx.opt.n, ctx.pipeline_options());
  const VerificationReport r = build_report(pipe, &ctx.dataset());
  switch (ctx.opt.format()) {
    case Format::kJson:
      std::cout << report_json(r).dump(2) << '\n';
      break;
    case Format::kCsv:
      std::cout << "n,h,sign,factorization,invariant_factors,match\n"
                << r.n << ',' << r.h << ',' << sign_char(r.sign.actual) << ','
                << r.disc_ramanujan.magnitude_string("×") << ',' << join(r.invariant_factors, "x") << ','
                << (r.table_match.empty() ? "-" : r.table_matches() ? "yes" : "no") << '\n';
      break;
    case Format::kText:
      print_report_text(r);
      break;
  }
  const std::vector<std::string> failed = r.failures(ctx.opt.strict);
  if (!failed.empty()) {
    std::cerr << "verification failed for n = " << r.n << ":";
    for (const auto& f : failed) std::cerr << ' ' << f;
    std::cerr << '\n';
    return kVerification;
  }
  return kOk;
}

// ---- table ----

struct RowOutcome {
  std::optional<VerificationReport> report;
  bool from_cache = false;
  std::exception_ptr error;
};

// Recomputes one cached entry from scratch and compares.
int spot_check_cache(const Context& ctx, const std::vector<long>& cached) {
  if (cached.empty()) return kOk;
  std::mt19937_64 rng(std::random_device{}());
  const long n = cached[std::uniform_int_distribution<std::size_t>(0, cached.size() - 1)(rng)];
  const auto h = ctx.cache->load(PolynomialKind::kHilbert, n);
  const auto p = ctx.cache->load(PolynomialKind::kRamanujan, n);
  PipelineOptions fresh = ctx.pipeline_options();
  fresh.cache = nullptr;
  const Pipeline pipe = run_pipeline(n, fresh);
  const bool same = h && p && h->polynomial() == pipe.hilbert.polynomial && p->polynomial() == pipe.ramanujan.polynomial;
  std::cerr << "cache spot check n = " << n << ": " << (same ? "identical" : "MISMATCH") << '\n';
  return same ? kOk : kVerification;
}

void store_in_cache(const Context& ctx, const VerificationReport& r) {
  ClassPolynomialResult h;
  h.n = r.n;
  h.kind = PolynomialKind::kHilbert;
  h.polynomial = r.hilbert;
  h.bits = r.hilbert_bits;
  h.verified = true;
  ClassPolynomialResult p = h;
  p.kind = PolynomialKind::kRamanujan;
  p.polynomial = r.ramanujan;
  p.bits = r.ramanujan_bits;
  ctx.cache->store(make_document(h, r.disc_hilbert, r.invariant_factors));
  ctx.cache->store(make_document(p, r.disc_ramanujan, r.invariant_factors));
}

int cmd_table(const Context& ctx) {
  if (ctx.opt.from > ctx.opt.to) throw UnsupportedError("--from must not exceed --to");
  std::vector<long> ns;
  for (long n = std::max(ctx.opt.from, 11L); n <= ctx.opt.to; ++n) {
    if (is_supported_n(n)) ns.push_back(n);
  }
  std::vector<RowOutcome> rows(ns.size());
  std::atomic<std::size_t> next{0};
  std::mutex cache_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) {
      try {
        const Pipeline pipe = run_pipeline(ns[i], ctx.pipeline_options());
        rows[i].report = build_report(pipe, &ctx.dataset());
        rows[i].from_cache = pipe.from_cache;
        if (ctx.cache && !pipe.from_cache) {
          std::lock_guard lock(cache_mutex);
          store_in_cache(ctx, *rows[i].report);
        }
      } catch (...) {
        rows[i].error = std::current_exception();
      }
    }
  };
  unsigned jobs = std::max(1U, std::min<unsigned>(ctx.opt.jobs, static_cast<unsigned>(ns.size())));
  if (jobs > 1 && !mpfr_buildopt_tls_p()) {
    std::cerr << "MPFR is not thread-safe in this build; running single-threaded\n";
    jobs = 1;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = kOk;
  std::vector<long> cached;
  json all = json::array();
  if (ctx.opt.format() == Format::kCsv) std::cout << "n,h,sign,factorization,invariant_factors,match\n";
  if (ctx.opt.format() == Format::kText) {
    std::cout << "    n   h  sign  |Δ(P_n)|  Cl(n)  match\n";
  }
  std::size_t matched = 0, with_row = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (rows[i].error) {
      try {
        std::rethrow_exception(rows[i].error);
      } catch (const PrecisionExhaustedError& e) {
        std::cerr << "n = " << ns[i] << ": " << e.what() << '\n';
        status = std::max(status, static_cast<int>(kPrecision));
      } catch (const std::exception& e) {
        std::cerr << "n = " << ns[i] << ": " << e.what() << '\n';
        if (status != kPrecision) status = kVerification;
      }
      continue;
    }
    const VerificationReport& r = *rows[i].report;
    if (rows[i].from_cache) cached.push_back(r.n);
    const std::string match = r.table_match.empty() ? "-" : r.table_matches() ? "yes" : "no";
    if (!r.table_match.empty()) {
      ++with_row;
      if (r.table_matches()) ++matched;
    }
    const std::vector<std::string> failed = r.failures(ctx.opt.strict);
    if (!failed.empty()) {
      std::cerr << "n = " << r.n << " failed:";
      for (const auto& f : failed) std::cerr << ' ' << f;
      std::cerr << '\n';
      if (status == kOk) status = kVerification;
    }
    switch (ctx.opt.format()) {
      case Format::kCsv:
        std::cout << r.n << ',' << r.h << ',' << sign_char(r.sign.actual) << ','
                  << r.disc_ramanujan.magnitude_string("×") << ',' << join(r.invariant_factors, "x") << ',' << match
                  << '\n';
        break;
      case Format::kJson:
        all.push_back(report_json(r));
        break;
      case Format::kText: {
        std::ostringstream line;
        line << std::string(r.n < 100 ? 3 : 2, ' ') << r.n << std::string(r.h < 10 ? 3 : 2, ' ') << r.h << "  "
             << sign_char(r.sign.actual) << "  " << r.disc_ramanujan.magnitude_string() << "  Z/"
             << join(r.invariant_factors, "+Z/") << "  " << match;
        std::cout << line.str() << '\n';
        break;
      }
    }
  }
  if (ctx.opt.format() == Format::kJson) std::cout << all.dump(2) << '\n';
  if (ctx.opt.format() == Format::kText) {
    std::cout << matched << '/' << with_row << " rows match the expected table\n";
  }
  if (ctx.cache) {
    const int spot = spot_check_cache(ctx, cached);
    if (spot != kOk && status == kOk) status = spot;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class groups, Hilbert and Ramanujan class polynomials for n = 11 (mod 24)"};
  app.require_subcommand(1);
  Context ctx;
  Options& o = ctx.opt;

  auto add_common = [&](CLI::App* sub) {
    auto* fj = sub->add_flag("--json", o.json, "JSON output");
    auto* fc = sub->add_flag("--csv", o.csv, "CSV output");
    auto* ft = sub->add_flag("--text", o.text, "plain text output (default)");
    fj->excludes(fc)->excludes(ft);
    fc->excludes(ft);
    sub->add_option("--precision-bits", o.precision_bits, "fixed working precision instead of the automatic policy");
    sub->add_option("--cache", o.cache_dir, "directory for cached result documents");
    sub->add_option("--jobs", o.jobs, "parallel width of the table sweep")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", o.strict, "treat diagnostic flags as failures");
    sub->add_option("--dataset", o.dataset_path, "expected-values JSON replacing the built-in copy");
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("n", o.n, "discriminant parameter")->required(); };

  auto* classgroup = app.add_subcommand("classgroup", "reduced forms, class number and invariant factors");
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert class polynomial H_n");
  auto* ramanujan = app.add_subcommand("ramanujan", "Ramanujan polynomial P_n");
  auto* disc = app.add_subcommand("disc", "both discriminants, factored, with the index");
  auto* verify = app.add_subcommand("verify", "full verification report");
  auto* table = app.add_subcommand("table", "sweep all n = 11 (mod 24) in a range");
  for (auto* sub : {classgroup, hilbert, ramanujan, disc, verify}) {
    add_n(sub);
    add_common(sub);
  }
  add_common(table);
  table->add_option("--from", o.from, "first n");
  table->add_option("--to", o.to, "last n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (o.precision_bits) Precision(o.precision_bits);
    if (!o.cache_dir.empty()) ctx.cache.emplace(o.cache_dir);
    if (!o.dataset_path.empty()) ctx.dataset_override = ExpectedDataset::load(o.dataset_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*classgroup) return cmd_classgroup(ctx);
    if (*hilbert) return cmd_polynomial(ctx, PolynomialKind::kHilbert);
    if (*ramanujan) return cmd_polynomial(ctx, PolynomialKind::kRamanujan);
    if (*disc) {
      require_supported_n(o.n);
      return cmd_disc(ctx);
    }
    if (*verify) return cmd_verify(ctx);
    if (*table) return cmd_table(ctx);
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const PrecisionExhaustedError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerification;
  }
  return kUsage;
}
