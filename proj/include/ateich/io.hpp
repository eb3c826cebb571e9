#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ateich/cohomology.hpp"
#include "ateich/szpiro.hpp"

namespace ateich {

using json = nlohmann::json;

/// Raised for malformed input files or out-of-range knobs (exit code 1).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Knobs shared by all subcommands. Precedence: defaults, then the config
/// file, then ATEICH_* environment variables, then command-line flags.
struct Config {
  std::string field = "Q";
  Rational hahn_cap{8};       // (0, 64]
  int coeff_k = 12;           // [1, 16]
  int padic_precision = 20;   // [1, 64]
  int witt_length = 3;        // [1, 3]
  int grid = 4096;            // [64, 2^20]
  std::uint64_t seed = 1;
  std::string format = "table";  // json | csv | table

  void validate() const;
};

/// Keys: field, hahn_cap, coeff_k, padic_precision, witt_length, grid, seed, format.
Config config_from_json(const json& j);
Config load_config(const std::string& path);
/// ATEICH_HAHN_CAP, ATEICH_COEFF_K, ATEICH_PADIC_PRECISION, ATEICH_WITT_LENGTH,
/// ATEICH_GRID, ATEICH_SEED.
void apply_env_overrides(Config& c, const std::function<const char*(const char*)>& getenv);

/// %.17g.
std::string fmt17(double x);

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// A subcommand result: summary fields plus one table, rendered identically
/// as json, csv or an aligned text table.
struct Output {
  explicit Output(std::string cmd = {}) : command(std::move(cmd)) {}

  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::string key, Cell value) { summary.emplace_back(std::move(key), std::move(value)); }
  std::string render(const std::string& format) const;
};

json place_to_json(const Place& v);
/// Accepts "inf", "p", "p:k" or {prime, conjugate_index}.
Place place_from_json(const NumberField& field, const json& j);

json hahn_to_json(const HahnSeries& a);
/// [{exponent: "n/d", coeff: [c0, c1, ...]}]
HahnSeries hahn_from_json(const json& j, const FiniteField* field, const Rational& cap);

json arithmeticoid_to_json(const Arithmeticoid& y);
/// {field, label, deviations: [{place, e | s, hahn?}], frobenius_shift}.
Arithmeticoid arithmeticoid_from_json(const json& j, int coeff_k, const Rational& cap);

json kummer_to_json(const KummerClass& c);
json adelic_class_to_json(const AdelicClass& c);
AdelicClass adelic_class_from_json(const json& j);
/// {label, place?, unit_scale, frobenius_shift, unit_factor?}
std::pair<std::string, Transform> transform_from_json(const NumberField& field, const json& j);

json monodromy_to_json(const MonodromyDatum& d);
MonodromyDatum monodromy_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace ateich
