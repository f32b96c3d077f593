#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "kummerconst/bigfloat.hpp"
#include "kummerconst/engine.hpp"
#include "kummerconst/errors.hpp"
#include "kummerconst/factor.hpp"

namespace kummerconst::engine {

namespace {

Enclosure interval_power(const Enclosure& base, unsigned k) {
  Enclosure out = Enclosure::point(1);
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

Enclosure inverse_power_enclosure(std::uint64_t p, const Rational& z) {
  if (z.get_den() == 1) return Enclosure::point(1 / ipow(Rational(p), z.get_num().get_ui()));
  return Enclosure(pow_bound(Rational(p), -z, MPFR_RNDD), pow_bound(Rational(p), -z, MPFR_RNDU));
}

Rational json_rational(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<std::int64_t>())));
  throw SpecError(std::string("family file: ") + what + " must be an integer or a \"num/den\" string");
}

}  // namespace

Enclosure LocalSeries::value(unsigned k) const {
  if (k < head.size()) return Enclosure::point(head[k]);
  if (!geometric) throw SpecError("g(p^" + std::to_string(k) + ") is not tabulated");
  return interval_power(geometric->ratio, k) * geometric->coef;
}

Enclosure GFamily::at_prime_power(std::uint64_t p, unsigned k) const { return series(p).value(k); }

Enclosure GFamily::at(std::uint64_t n) const {
  if (n == 0) throw DomainError("g(0) is undefined");
  Enclosure out = Enclosure::point(1);
  for (const auto& pk : factorize(Integer(n)).factors) out *= at_prime_power(pk.prime.get_ui(), pk.exponent);
  return out;
}

GFamily builtin_family(BuiltinKind kind, const Rational& z) {
  GFamily fam;
  fam.growth = GrowthBound{1, 0};
  switch (kind) {
    case BuiltinKind::Moebius:
      fam.name = "moebius";
      fam.series = [](std::uint64_t) {
        return LocalSeries{{1, -1}, GeometricTail{0, Enclosure::point(0)}};
      };
      break;
    case BuiltinKind::One:
      fam.name = "one";
      fam.series = [](std::uint64_t) {
        return LocalSeries{{1}, GeometricTail{1, Enclosure::point(1)}};
      };
      break;
    case BuiltinKind::Power:
      if (z <= 0) throw SpecError("power family requires z > 0, got " + to_string(z));
      fam.name = "power:" + to_string(z);
      fam.series = [z](std::uint64_t p) {
        return LocalSeries{{1}, GeometricTail{1, inverse_power_enclosure(p, z)}};
      };
      break;
    case BuiltinKind::Laxton:
      fam.name = "laxton";
      fam.series = [](std::uint64_t p) {
        const Rational q(p);
        return LocalSeries{{1}, GeometricTail{1 - q, Enclosure::point(1 / q)}};
      };
      break;
  }
  return fam;
}

GFamily mobius_inverse_family(std::string name, std::function<Rational(std::uint64_t p, unsigned k)> f_local,
                              std::optional<GrowthBound> growth, unsigned terms) {
  if (!growth) throw SpecError("mobius_inverse_family: a growth bound for g is required");
  if (growth->C <= 0) throw SpecError("mobius_inverse_family: growth constant C must be positive");
  GFamily fam;
  fam.name = std::move(name);
  fam.growth = *growth;
  fam.series = [f = std::move(f_local), terms](std::uint64_t p) {
    if (f(p, 0) != 1) throw SpecError("mobius_inverse_family: f(1) must be 1");
    LocalSeries s;
    s.head.reserve(terms + 1);
    s.head.push_back(1);
    Rational prev = 1;
    for (unsigned k = 1; k <= terms; ++k) {
      Rational cur = f(p, k);
      s.head.push_back(cur - prev);
      prev = std::move(cur);
    }
    return s;
  };
  return fam;
}

GFamily family_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("family file: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("family file: top level must be an object");
  for (const char* key : {"name", "growth", "values"})
    if (!doc.contains(key)) throw SpecError(std::string("family file: missing \"") + key + "\"");
  if (!doc["name"].is_string()) throw SpecError("family file: name must be a string");

  const auto& growth = doc["growth"];
  if (!growth.is_object() || !growth.contains("C") || !growth.contains("alpha"))
    throw SpecError("family file: growth needs C and alpha");
  GrowthBound gb{json_rational(growth["C"], "growth.C"), json_rational(growth["alpha"], "growth.alpha")};
  if (gb.C <= 0) throw SpecError("family file: growth.C must be positive");

  if (!doc["values"].is_array() || doc["values"].empty()) throw SpecError("family file: values must be a non-empty array");
  std::map<std::uint64_t, std::map<unsigned, Rational>> table;
  for (const auto& entry : doc["values"]) {
    if (!entry.is_object() || !entry.contains("p") || !entry.contains("k") || !entry.contains("g"))
      throw SpecError("family file: each value needs p, k and g");
    if (!entry["p"].is_number_unsigned() || !entry["k"].is_number_unsigned())
      throw SpecError("family file: p and k must be positive integers");
    const auto p = entry["p"].get<std::uint64_t>();
    const auto k = entry["k"].get<std::uint64_t>();
    if (!is_prime(p)) throw SpecError("family file: " + std::to_string(p) + " is not prime");
    if (k < 1 || k > 4096) throw SpecError("family file: k must be in 1..4096");
    Rational g = json_rational(entry["g"], "g");
    if (!table[p].emplace(static_cast<unsigned>(k), g).second)
      throw SpecError("family file: duplicate entry for p = " + std::to_string(p) + ", k = " + std::to_string(k));
    // |g| <= C p^(alpha k)
    if (abs(g) > gb.C * pow_bound(Rational(p), gb.alpha * Rational(k), MPFR_RNDU))
      throw SpecError("family file: g(" + std::to_string(p) + "^" + std::to_string(k) + ") violates the growth bound");
  }

  const std::uint64_t p_tab = table.rbegin()->first;
  auto heads = std::make_shared<std::map<std::uint64_t, std::vector<Rational>>>();
  for (std::uint64_t q = 2; q <= p_tab; ++q) {
    if (!is_prime(q)) continue;
    auto it = table.find(q);
    if (it == table.end()) throw SpecError("family file: prime " + std::to_string(q) + " <= " + std::to_string(p_tab) + " is missing");
    std::vector<Rational> head{1};
    for (const auto& [k, g] : it->second) {
      if (k != head.size()) throw SpecError("family file: exponents for p = " + std::to_string(q) + " are not 1..K contiguous");
      head.push_back(g);
    }
    (*heads)[q] = std::move(head);
  }

  GFamily fam;
  fam.name = doc["name"].get<std::string>();
  fam.growth = gb;
  fam.table_bound = p_tab;
  fam.series = [heads](std::uint64_t p) {
    auto it = heads->find(p);
    if (it == heads->end()) return LocalSeries{{1}, std::nullopt};
    return LocalSeries{it->second, std::nullopt};
  };
  return fam;
}

GFamily family_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open family file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return family_from_json(buf.str());
}

}  // namespace kummerconst::engine
