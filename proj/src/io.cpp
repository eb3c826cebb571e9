#include "ateich/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ateich {

namespace {

template <class T>
T get_checked(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

Rational rational_from(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ValidationError(std::string("malformed rational: ") + e.what());
  }
  throw ValidationError("expected a rational as integer or \"n/d\" string");
}

int int_from_env(const char* name, const char* text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != std::string(text).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("environment variable ") + name + " is not an integer");
  }
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>)
          return v;
        else if constexpr (std::is_same_v<T, double>)
          return fmt17(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return std::to_string(v);
      },
      c);
}

std::string cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return json(*s).dump();
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return json(fmt17(*d)).dump();
    return fmt17(*d);
  }
  return cell_text(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

json matrix_json(const Mat2i& g) { return json::array({g.a, g.b, g.c, g.d}); }

Mat2i matrix_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ValidationError("matrix must be [a, b, c, d]");
  Mat2i g{j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(), j[3].get<std::int64_t>()};
  if (g.det() != 1) throw ValidationError("monodromy matrix is not in SL2(Z)");
  return g;
}

}  // namespace

void Config::validate() const {
  try {
    (void)NumberField::parse(field);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("field: ") + e.what());
  }
  if (hahn_cap <= Rational(0) || hahn_cap > Rational(64)) throw ValidationError("hahn_cap must lie in (0, 64]");
  if (coeff_k < 1 || coeff_k > 16) throw ValidationError("coeff_k must lie in [1, 16]");
  if (padic_precision < 1 || padic_precision > 64) throw ValidationError("padic_precision must lie in [1, 64]");
  if (witt_length < 1 || witt_length > 3) throw ValidationError("witt_length must lie in [1, 3]");
  if (grid < 64 || grid > (1 << 20)) throw ValidationError("grid must lie in [64, 2^20]");
  if (format != "json" && format != "csv" && format != "table")
    throw ValidationError("format must be json, csv or table");
}

Config config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const char* known[] = {"field", "hahn_cap", "coeff_k", "padic_precision", "witt_length", "grid", "seed",
                                "format"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw ValidationError("unknown config key '" + key + "'");
  }
  Config c;
  if (j.contains("field")) c.field = get_checked<std::string>(j, "field");
  if (j.contains("hahn_cap")) c.hahn_cap = rational_from(j.at("hahn_cap"));
  if (j.contains("coeff_k")) c.coeff_k = get_checked<int>(j, "coeff_k");
  if (j.contains("padic_precision")) c.padic_precision = get_checked<int>(j, "padic_precision");
  if (j.contains("witt_length")) c.witt_length = get_checked<int>(j, "witt_length");
  if (j.contains("grid")) c.grid = get_checked<int>(j, "grid");
  if (j.contains("seed")) c.seed = get_checked<std::uint64_t>(j, "seed");
  if (j.contains("format")) c.format = get_checked<std::string>(j, "format");
  c.validate();
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Config load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

void apply_env_overrides(Config& c, const std::function<const char*(const char*)>& getenv) {
  if (const char* v = getenv("ATEICH_HAHN_CAP")) {
    try {
      c.hahn_cap = Rational::parse(v);
    } catch (const std::exception&) {
      throw ValidationError("ATEICH_HAHN_CAP is not a rational");
    }
  }
  if (const char* v = getenv("ATEICH_COEFF_K")) c.coeff_k = int_from_env("ATEICH_COEFF_K", v);
  if (const char* v = getenv("ATEICH_PADIC_PRECISION")) c.padic_precision = int_from_env("ATEICH_PADIC_PRECISION", v);
  if (const char* v = getenv("ATEICH_WITT_LENGTH")) c.witt_length = int_from_env("ATEICH_WITT_LENGTH", v);
  if (const char* v = getenv("ATEICH_GRID")) c.grid = int_from_env("ATEICH_GRID", v);
  if (const char* v = getenv("ATEICH_SEED")) {
    try {
      c.seed = std::stoull(v);
    } catch (const std::exception&) {
      throw ValidationError("ATEICH_SEED is not an unsigned integer");
    }
  }
  c.validate();
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Output::render(const std::string& format) const {
  std::ostringstream os;
  if (format == "json") {
    os << "{\"command\":" << json(command).dump();
    if (seed) os << ",\"seed\":" << *seed;
    os << ",\"summary\":{";
    for (std::size_t i = 0; i < summary.size(); ++i)
      os << (i ? "," : "") << json(summary[i].first).dump() << ":" << cell_json(summary[i].second);
    os << "},\"rows\":[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << (r ? "," : "") << "{";
      for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << json(columns[i]).dump() << ":" << cell_json(rows[r][i]);
      os << "}";
    }
    os << "]}\n";
  } else if (format == "csv") {
    os << "# command=" << command;
    if (seed) os << " seed=" << *seed;
    os << "\n";
    for (const auto& [k, v] : summary) os << "# " << k << "=" << cell_text(v) << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
    if (!columns.empty()) os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i]));
      os << "\n";
    }
  } else {
    os << command;
    if (seed) os << "  (seed " << *seed << ")";
    os << "\n";
    std::size_t kw = 0;
    for (const auto& [k, v] : summary) kw = std::max(kw, k.size());
    for (const auto& [k, v] : summary) os << "  " << k << std::string(kw - k.size(), ' ') << "  " << cell_text(v) << "\n";
    if (!columns.empty()) {
      std::vector<std::size_t> w(columns.size());
      for (std::size_t i = 0; i < columns.size(); ++i) w[i] = columns[i].size();
      for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], cell_text(row[i]).size());
      auto line = [&](const std::vector<std::string>& cells) {
        os << " ";
        for (std::size_t i = 0; i < cells.size(); ++i) os << " " << cells[i] << std::string(w[i] - cells[i].size(), ' ');
        os << "\n";
      };
      line(columns);
      std::vector<std::string> rule;
      for (auto x : w) rule.emplace_back(x, '-');
      line(rule);
      for (const auto& row : rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(cell_text(c));
        line(cells);
      }
    }
  }
  return os.str();
}

json place_to_json(const Place& v) {
  return {{"place", v.str()}, {"prime", v.p}, {"e", v.e}, {"f", v.f}, {"conjugate_index", v.conjugate_index}};
}

Place place_from_json(const NumberField& field, const json& j) {
  try {
    if (j.is_string()) return parse_place(field, j.get<std::string>());
    if (j.is_number_integer()) return parse_place(field, std::to_string(j.get<std::int64_t>()));
    if (j.is_object()) {
      auto p = j.at("prime").get<std::int64_t>();
      if (p == 0) return Place::archimedean(field);
      int conj = j.value("conjugate_index", 0);
      return parse_place(field, std::to_string(p) + ":" + std::to_string(conj));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("place: ") + e.what());
  }
  throw ValidationError("place must be a string, integer or {prime, conjugate_index}");
}

json hahn_to_json(const HahnSeries& a) {
  json terms = json::array();
  for (const auto& [e, c] : a.terms()) terms.push_back({{"exponent", e.str()}, {"coeff", c.coeffs()}});
  return terms;
}

HahnSeries hahn_from_json(const json& j, const FiniteField* field, const Rational& cap) {
  if (!j.is_array()) throw ValidationError("Hahn series must be an array of terms");
  HahnSeries a(field, cap);
  for (const auto& t : j) {
    Rational e = rational_from(t.at("exponent"));
    auto c = t.at("coeff").get<std::vector<std::int64_t>>();
    if (static_cast<int>(c.size()) > field->k()) throw ValidationError("coefficient longer than the field degree");
    c.resize(static_cast<std::size_t>(field->k()), 0);
    for (auto& x : c) x = ((x % field->p()) + field->p()) % field->p();
    a = a + HahnSeries::monomial(Fq(field, c), e, cap);
  }
  return a;
}

json arithmeticoid_to_json(const Arithmeticoid& y) {
  json dev = json::array();
  for (const auto& [v, pt] : y.deviations()) {
    json d{{"place", v.str()}};
    d[v.is_archimedean() ? "s" : "e"] = pt.exponent.str();
    if (pt.concrete) d["hahn"] = hahn_to_json(*pt.concrete);
    dev.push_back(d);
  }
  return {{"field", y.field().spec()}, {"label", y.label()}, {"deviations", dev},
          {"frobenius_shift", y.frobenius_shift()}};
}

Arithmeticoid arithmeticoid_from_json(const json& j, int coeff_k, const Rational& cap) {
  static const char* known[] = {"field", "label", "deviations", "frobenius_shift"};
  for (const auto& [key, value] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw ValidationError("unknown arithmeticoid key '" + key + "'");
  try {
    auto field = NumberField::parse(j.value("field", std::string("Q")));
    Arithmeticoid y(field, j.value("label", std::string("y")));
    y.set_frobenius_shift(j.value("frobenius_shift", 0));
    for (const auto& d : j.value("deviations", json::array())) {
      Place v = place_from_json(field, d.at("place"));
      if (v.is_archimedean()) {
        y.set_point(archimedean_point(v, rational_from(d.at("s"))));
      } else if (d.contains("hahn")) {
        auto ff = FiniteField::get(v.p, coeff_k);
        y.set_point(concrete_point(v, hahn_from_json(d.at("hahn"), ff.get(), cap)));
      } else {
        y.set_point(finite_point(v, rational_from(d.at("e"))));
      }
    }
    return y;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("arithmeticoid: ") + e.what());
  }
}

json kummer_to_json(const KummerClass& c) {
  return {{"place", c.place.str()}, {"precision", c.precision}, {"order_part", c.order_part.get_str()},
          {"unit_tag", c.unit_tag.str()}};
}

json adelic_class_to_json(const AdelicClass& c) {
  json fin = json::array();
  for (const auto& [v, k] : c.finite) fin.push_back(kummer_to_json(k));
  return {{"field", c.field.spec()},
          {"precision", c.precision},
          {"finite", fin},
          {"arch_q", {fmt17(c.arch_q.real()), fmt17(c.arch_q.imag())}}};
}

AdelicClass adelic_class_from_json(const json& j) {
  try {
    AdelicClass c;
    c.field = NumberField::parse(j.value("field", std::string("Q")));
    c.precision = j.value("precision", 1);
    if (j.contains("arch_q")) {
      const auto& q = j.at("arch_q");
      auto num = [](const json& x) { return x.is_string() ? std::stod(x.get<std::string>()) : x.get<double>(); };
      c.arch_q = {num(q.at(0)), num(q.at(1))};
    }
    for (const auto& k : j.value("finite", json::array())) {
      Place v = place_from_json(c.field, k.at("place"));
      KummerClass kc{v, c.precision, mpz_class(k.at("order_part").get<std::string>()),
                     FieldElement::parse(c.field, k.value("unit_tag", std::string("1")))};
      kc.order_part %= kc.modulus();
      if (kc.order_part < 0) kc.order_part += kc.modulus();
      c.finite.emplace(v, kc);
    }
    return c;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("adelic class: ") + e.what());
  }
}

std::pair<std::string, Transform> transform_from_json(const NumberField& field, const json& j) {
  try {
    Transform t;
    if (j.contains("place") && !j.at("place").is_null()) t.place = place_from_json(field, j.at("place"));
    if (j.contains("unit_scale")) {
      const auto& u = j.at("unit_scale");
      t.unit_scale = u.is_string() ? mpz_class(u.get<std::string>()) : mpz_class(u.get<long>());
    }
    t.frobenius_shift = j.value("frobenius_shift", 0);
    if (j.contains("unit_factor")) t.unit_factor = FieldElement::parse(field, j.at("unit_factor").get<std::string>());
    return {j.at("label").get<std::string>(), t};
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("transform: ") + e.what());
  }
}

json monodromy_to_json(const MonodromyDatum& d) {
  json a = json::array(), b = json::array(), p = json::array();
  for (const auto& g : d.a) a.push_back(matrix_json(g));
  for (const auto& g : d.b) b.push_back(matrix_json(g));
  for (const auto& g : d.punctures) p.push_back(matrix_json(g));
  return {{"genus", d.genus}, {"a", a}, {"b", b}, {"punctures", p}};
}

MonodromyDatum monodromy_from_json(const json& j) {
  try {
    MonodromyDatum d;
    d.genus = j.value("genus", 0);
    for (const auto& g : j.value("a", json::array())) d.a.push_back(matrix_from(g));
    for (const auto& g : j.value("b", json::array())) d.b.push_back(matrix_from(g));
    for (const auto& g : j.at("punctures")) d.punctures.push_back(matrix_from(g));
    if (static_cast<int>(d.a.size()) != d.genus || static_cast<int>(d.b.size()) != d.genus)
      throw ValidationError("monodromy: need genus many a_j and b_j");
    if (d.punctures.empty()) throw ValidationError("monodromy: need at least one puncture");
    if (!d.relation_holds()) throw ValidationError("monodromy: surface relation fails");
    return d;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("monodromy: ") + e.what());
  }
}

}  // namespace ateich
