#include "kummerconst/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kummerconst/closedforms.hpp"
#include "kummerconst/engine.hpp"
#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"
#include "kummerconst/kummer.hpp"
#include "kummerconst/oracle.hpp"
#include "kummerconst/serre.hpp"

namespace kummerconst::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kDefaultTarget = "1/1000000";

struct Globals {
  bool text = false;
  std::string target = kDefaultTarget;
  std::uint64_t pmax = closedforms::kDefaultClosedFormPmax;
  std::optional<std::uint64_t> budget;
};

// A result that should still be printed, but with a non-zero exit code.
struct Outcome {
  Json body;
  int code = kOk;
};

std::string frac(const Rational& q) { return to_fraction_string(q); }

Json enclosure_json(const Enclosure& e) {
  Json j;
  j["lo"] = frac(e.lo());
  j["hi"] = frac(e.hi());
  j["decimal"] = e.decimal();
  return j;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json levels_json(const std::map<std::uint64_t, unsigned>& levels) {
  Json j = Json::object();
  for (const auto& [p, l] : levels) j[std::to_string(p)] = l;
  return j;
}

std::string case_name(kummer::KummerCase c) {
  switch (c) {
    case kummer::KummerCase::OddExponent: return "odd_exponent";
    case kummer::KummerCase::Square: return "square";
    case kummer::KummerCase::Twisted: return "twisted";
  }
  return "?";
}

Rational target_of(const Globals& g) {
  const Rational t = parse_rational(g.target);
  if (t <= 0) throw SpecError("--target-error must be positive");
  return t;
}

engine::GFamily family_of(const std::string& choice) {
  if (choice == "mu" || choice == "moebius") return engine::builtin_family(engine::BuiltinKind::Moebius);
  if (choice == "one") return engine::builtin_family(engine::BuiltinKind::One);
  if (choice == "laxton") return engine::builtin_family(engine::BuiltinKind::Laxton);
  if (choice.rfind("power:", 0) == 0) return engine::builtin_family(engine::BuiltinKind::Power, parse_rational(choice.substr(6)));
  if (choice.rfind("file:", 0) == 0) return engine::family_from_file(choice.substr(5));
  throw SpecError("unknown family '" + choice + "' (expected mu, one, power:<z>, laxton or file:<path>)");
}

std::function<Rational(std::uint64_t)> scan_function(const std::string& name) {
  if (name == "divisor")
    return [](std::uint64_t i) {
      std::uint64_t count = 1;
      for (const auto& pk : factorize(Integer(i)).factors) count *= pk.exponent + 1;
      return Rational(Integer(std::to_string(count)));
    };
  if (name == "primitive") return [](std::uint64_t i) { return Rational(i == 1 ? 1 : 0); };
  if (name == "one") return [](std::uint64_t) { return Rational(1); };
  if (name == "inverse") return [](std::uint64_t i) -> Rational { return 1 / Rational(Integer(std::to_string(i))); };
  throw SpecError("unknown scan function '" + name + "' (expected divisor, primitive, one or inverse)");
}

serre::SerreInput serre_input_of(const std::optional<std::string>& delta, const std::optional<std::string>& weier) {
  if (delta.has_value() == weier.has_value()) throw SpecError("give exactly one of --delta and --weierstrass");
  if (delta) {
    const Rational d = parse_rational(*delta);
    if (d.get_den() != 1) throw SpecError("--delta must be an integer");
    return serre::serre_profile(d.get_num());
  }
  std::vector<Integer> coeffs;
  std::stringstream ss(*weier);
  for (std::string item; std::getline(ss, item, ',');) {
    const Rational c = parse_rational(item);
    if (c.get_den() != 1) throw SpecError("Weierstrass coefficients must be integers");
    coeffs.push_back(c.get_num());
  }
  if (coeffs.size() != 5) throw SpecError("--weierstrass needs five coefficients a1,a2,a3,a4,a6");
  return serre::serre_profile(serre::weierstrass_discriminant(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]));
}

Json serre_input_json(const serre::SerreInput& in) {
  Json j;
  j["delta"] = in.delta.get_str();
  j["D"] = in.D.get_str();
  j["levels"] = levels_json(in.levels);
  j["n_E"] = in.n_E.get_str();
  return j;
}

Json correction_outcome_json(const engine::CorrectionOutcome& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["value"] = c.exact ? Json(frac(*c.exact)) : Json(nullptr);
  if (c.kind == engine::CorrectionKind::Enclosed && c.enclosure) j["enclosure"] = enclosure_json(*c.enclosure);
  return j;
}

Outcome constant_outcome(Json head, const engine::ConstantResult& r) {
  Json j = std::move(head);
  j["lo"] = frac(r.value.lo());
  j["hi"] = frac(r.value.hi());
  j["decimal"] = r.value.decimal();
  j["correction"] = r.correction ? Json(frac(*r.correction)) : Json(nullptr);
  j["finite_part"] = enclosure_json(r.finite_part);
  j["bracket"] = enclosure_json(r.bracket);
  j["tail_bound"] = frac(r.tail_bound);
  j["P_used"] = r.P_used;
  j["vanishing"] = r.vanishing ? Json(r.vanishing->tag()) : Json(nullptr);
  j["precision_reached"] = r.precision_reached;
  return {std::move(j), r.precision_reached ? kOk : kPrecision};
}

// --- subcommand bodies ------------------------------------------------------

Outcome do_decompose(std::int64_t a) {
  const auto dec = kummer::decompose(a);
  const auto prof = kummer::entanglement_profile(dec);
  Json j;
  j["a0"] = dec.a0;
  j["e"] = dec.e;
  j["h"] = dec.h;
  j["case"] = case_name(dec.kase);
  j["s"] = dec.s;
  j["D"] = prof.D;
  j["levels"] = levels_json(prof.levels);
  j["n_a"] = integer_json(prof.n_a);
  return {j};
}

Outcome do_constant(const Globals& g, std::int64_t a, const std::string& fam_choice) {
  const engine::GFamily fam = family_of(fam_choice);
  const engine::KummerTower tower(a);
  const auto res = engine::evaluate_constant(fam, tower, engine::EvaluationOptions{target_of(g), g.pmax});
  Json head;
  head["a"] = a;
  head["g"] = fam.name;
  Outcome out = constant_outcome(std::move(head), res);
  out.body["correction_factor"] = correction_outcome_json(engine::correction_factor(fam, tower));
  return out;
}

Outcome do_artin(const Globals& g, std::int64_t a) {
  const auto dec = kummer::decompose(a);
  const auto prof = kummer::entanglement_profile(dec);
  const Rational target = target_of(g);
  const std::int64_t sf = closedforms::a_sf(a);
  Json j;
  j["a"] = a;
  j["a_sf"] = sf;
  j["h"] = dec.h;
  j["A"] = enclosure_json(closedforms::artin_A(dec, target, g.pmax));
  const bool corrected = ((sf % 4) + 4) % 4 == 1;
  j["E"] = corrected ? Json(frac(closedforms::artin_E(a))) : Json(nullptr);
  Json product_form = nullptr;
  try {
    product_form = frac(closedforms::artin_E_product_form(dec, prof));
  } catch (const DomainError&) {
  }
  j["E_product_form"] = product_form;
  j["delta"] = enclosure_json(closedforms::artin_delta(dec, target, g.pmax));
  return {j};
}

Outcome do_titchmarsh(const Globals& g, std::int64_t a) {
  const auto dec = kummer::decompose(a);
  const auto prof = kummer::entanglement_profile(dec);
  Json head;
  head["a"] = a;
  return constant_outcome(std::move(head), closedforms::titchmarsh_closed(dec, prof, target_of(g), g.pmax));
}

Outcome do_serre(const Globals& g, const serre::SerreInput& in, const std::string& fam_choice) {
  const engine::GFamily fam = family_of(fam_choice);
  const serre::SerreTower tower(in);
  Json head = serre_input_json(in);
  head["g"] = fam.name;
  const auto res = engine::evaluate_constant(fam, tower, engine::EvaluationOptions{target_of(g), g.pmax});
  Outcome out = constant_outcome(std::move(head), res);
  out.body["correction_factor"] = correction_outcome_json(engine::correction_factor(fam, tower));
  return out;
}

Outcome do_partial_sum(const Globals& g, const std::optional<std::int64_t>& a, const std::optional<std::string>& delta,
                       const std::string& fam_choice, std::uint64_t N) {
  const engine::GFamily fam = family_of(fam_choice);
  const std::uint64_t budget = g.budget.value_or(oracle::kPartialSumBudget);
  Json j;
  oracle::PartialSum ps;
  if (a.has_value() == delta.has_value()) throw SpecError("give exactly one of --a and --delta");
  if (a) {
    j["a"] = *a;
    ps = oracle::partial_sum(fam, engine::KummerTower(*a), N, budget);
  } else {
    const auto in = serre_input_of(delta, std::nullopt);
    j["delta"] = in.delta.get_str();
    ps = oracle::partial_sum(fam, serre::SerreTower(in), N, budget);
  }
  j["g"] = fam.name;
  j["N"] = N;
  j["value"] = enclosure_json(ps.value);
  j["tail"] = frac(ps.tail);
  j["with_tail"] = enclosure_json(ps.with_tail());
  return {j};
}

Outcome do_scan(const Globals& g, std::int64_t a, const std::string& f, std::uint64_t x) {
  const auto res = oracle::prime_scan(scan_function(f), a, x, g.budget.value_or(oracle::kScanBudget));
  Json j;
  j["a"] = a;
  j["f"] = f;
  j["x"] = res.x;
  j["primes_scanned"] = res.primes_scanned;
  j["excluded"] = res.excluded;
  j["sum"] = frac(res.sum);
  j["ratio"] = enclosure_json(res.ratio);
  return {j};
}

Outcome do_enumerate(const Globals& g, std::int64_t a, std::uint64_t p, unsigned k) {
  const auto dec = kummer::decompose(a);
  const auto elems = oracle::enumerate_A(dec, p, k, g.budget.value_or(oracle::kEnumerationBudget));
  Json j;
  j["a"] = a;
  j["p"] = p;
  j["k"] = k;
  j["modulus"] = elems.empty() ? 0 : elems.front().modulus;
  j["size"] = elems.size();
  Json list = Json::array();
  for (const auto& e : elems) list.push_back(Json::array({e.b, e.d}));
  j["elements"] = std::move(list);
  return {j};
}

Outcome do_verify_group(const Globals& g, std::int64_t a, std::uint64_t p, unsigned k) {
  const auto rep = oracle::verify_group(kummer::decompose(a), p, k, g.budget.value_or(oracle::kEnumerationBudget));
  Json j;
  j["a"] = a;
  j["p"] = rep.p;
  j["k"] = rep.k;
  j["size"] = rep.size;
  j["expected"] = integer_json(rep.expected);
  j["size_ok"] = rep.size_ok;
  j["identity"] = rep.identity;
  j["inverses"] = rep.inverses;
  j["closure"] = rep.closure;
  j["reduction_surjective"] = rep.reduction_surjective;
  j["fiber_size"] = rep.fiber_size;
  j["generators"] = rep.generators;
  j["checked_products"] = rep.sampled_products;
  return {j};
}

// --- output -----------------------------------------------------------------

void print_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      print_text(value, out, prefix + key + ".");
    } else if (value.is_string()) {
      out << prefix << key << ": " << value.get<std::string>() << "\n";
    } else {
      out << prefix << key << ": " << value.dump() << "\n";
    }
  }
}

void emit(const Json& j, const Globals& g, std::ostream& out) {
  if (g.text) print_text(j, out);
  else out << j.dump() << "\n";
}

int fail(const Globals& g, std::ostream& out, std::ostream& err, int code, const std::string& kind, const std::string& msg,
         const std::optional<Enclosure>& best = std::nullopt) {
  err << "error: " << msg << "\n";
  Json j;
  j["error"] = kind;
  j["message"] = msg;
  if (best) j["best"] = enclosure_json(*best);
  emit(j, g, out);
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Euler products and correction factors for Kummer and Serre-curve families"};
  app.name("kummerconst");
  app.require_subcommand(1);
  app.fallthrough();
  auto* json_flag = app.add_flag("--json", "JSON output (default)");
  auto* text_flag = app.add_flag("--text", g.text, "Plain text output");
  json_flag->excludes(text_flag);
  app.add_option("--target-error", g.target, "Maximal enclosure width, e.g. 1e-8 or 1/1000");
  app.add_option("--pmax", g.pmax, "Largest prime cutoff for Euler products");
  app.add_option("--budget", g.budget, "Work limit for oracles (p^k, N or x)");

  std::int64_t a = 0;
  std::optional<std::int64_t> a_opt;
  std::string fam = "one";
  std::optional<std::string> delta, weier;
  std::uint64_t p = 0, x = 0, N = 0;
  unsigned k = 0;
  std::string f = "divisor";

  auto* decompose = app.add_subcommand("decompose", "a = +-a0^e, discriminant, levels and n_a");
  decompose->add_option("--a", a, "Integer a not in {0, 1, -1}")->required();

  auto* constant = app.add_subcommand("constant", "sum g(n)/[K_n:Q] through the entangled Euler product");
  constant->add_option("--a", a)->required();
  constant->add_option("--g", fam, "mu | one | power:<z> | laxton | file:<path>");

  auto* artin = app.add_subcommand("artin", "Artin constant, Hooley correction and density");
  artin->add_option("--a", a)->required();

  auto* titch = app.add_subcommand("titchmarsh", "Closed-form sum 1/[K_n:Q]");
  titch->add_option("--a", a)->required();

  auto* serre_cmd = app.add_subcommand("serre", "Constants for the division fields of a Serre curve");
  serre_cmd->add_option("--delta", delta, "Discriminant of a Weierstrass model");
  serre_cmd->add_option("--weierstrass", weier, "a1,a2,a3,a4,a6");
  serre_cmd->add_option("--g", fam);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force cross-checks");
  oracle_cmd->require_subcommand(1);
  auto* psum = oracle_cmd->add_subcommand("partial-sum", "sum_{n<=N} g(n)/#G(n) with a rigorous tail");
  psum->add_option("--a", a_opt);
  psum->add_option("--delta", delta);
  psum->add_option("--g", fam);
  psum->add_option("--n", N)->required();
  auto* scan = oracle_cmd->add_subcommand("scan", "sum over p <= x of f(i_a(p)) against li(x)");
  scan->add_option("--a", a)->required();
  scan->add_option("--f", f, "divisor | primitive | one | inverse");
  scan->add_option("--x", x)->required();
  auto* enumerate = oracle_cmd->add_subcommand("enumerate", "List the matrix group A(p^k)");
  enumerate->add_option("--a", a)->required();
  enumerate->add_option("--p", p)->required();
  enumerate->add_option("--k", k)->required();
  auto* verify = oracle_cmd->add_subcommand("verify-group", "Check A(p^k) against card_A and the group axioms");
  verify->add_option("--a", a)->required();
  verify->add_option("--p", p)->required();
  verify->add_option("--k", k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Outcome o;
    if (*decompose) o = do_decompose(a);
    else if (*constant) o = do_constant(g, a, fam);
    else if (*artin) o = do_artin(g, a);
    else if (*titch) o = do_titchmarsh(g, a);
    else if (*serre_cmd) o = do_serre(g, serre_input_of(delta, weier), fam);
    else if (*psum) o = do_partial_sum(g, a_opt, delta, fam, N);
    else if (*scan) o = do_scan(g, a, f, x);
    else if (*enumerate) o = do_enumerate(g, a, p, k);
    else if (*verify) o = do_verify_group(g, a, p, k);
    else throw SpecError("no subcommand");
    emit(o.body, g, out);
    if (o.code == kPrecision) err << "warning: target error not reached by P_max\n";
    return o.code;
  } catch (const PrecisionNotReached& e) {
    return fail(g, out, err, kPrecision, "PrecisionNotReached", e.what(), e.best());
  } catch (const SpecError& e) {
    return fail(g, out, err, kUsage, "SpecError", e.what());
  } catch (const DomainError& e) {
    return fail(g, out, err, kDomain, "DomainError", e.what());
  } catch (const ResourceLimit& e) {
    return fail(g, out, err, kResource, "ResourceLimit", e.what());
  } catch (const VerificationFailure& e) {
    return fail(g, out, err, kInternal, "VerificationFailure", e.what());
  } catch (const std::exception& e) {
    return fail(g, out, err, kInternal, "InternalError", e.what());
  }
}

}  // namespace kummerconst::cli
