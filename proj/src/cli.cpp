#include "ateich/cli.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ateich/io.hpp"
#include "ateich/witt.hpp"
#include "ateich/zp_series.hpp"

namespace ateich {

namespace {

/// Residual tolerance for the floating archimedean part of the product formula.
constexpr double kProductFormulaTol = 1e-9;

struct PropertyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
}

std::complex<double> parse_complex(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw ValidationError("expected a complex number as re,im");
  return {std::stod(parts[0]), std::stod(parts[1])};
}

Mat2 parse_matrix(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw ValidationError("expected a matrix as a,b,c,d");
  return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3])};
}

std::string splitting_name(Splitting s) {
  switch (s) {
    case Splitting::Rational: return "rational";
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
    case Splitting::Archimedean: return "archimedean";
  }
  return "?";
}

// Options shared by every subcommand; a flag only overrides when given.
struct Flags {
  std::string config_path;
  std::string field;
  std::string format;
  std::string cap;
  int k = 0, precision = 0, witt_length = 0, grid = 0;
  std::uint64_t seed = 0;
  CLI::Option* o_field = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_cap = nullptr;
  CLI::Option* o_k = nullptr;
  CLI::Option* o_precision = nullptr;
  CLI::Option* o_witt = nullptr;
  CLI::Option* o_grid = nullptr;
  CLI::Option* o_seed = nullptr;
};

Config resolve_config(const Flags& f, const std::function<const char*(const char*)>& getenv) {
  Config c = f.config_path.empty() ? Config{} : load_config(f.config_path);
  apply_env_overrides(c, getenv);
  if (f.o_field->count()) c.field = f.field;
  if (f.o_format->count()) c.format = f.format;
  if (f.o_cap->count()) {
    try {
      c.hahn_cap = Rational::parse(f.cap);
    } catch (const std::exception&) {
      throw ValidationError("--cap is not a rational");
    }
  }
  if (f.o_k->count()) c.coeff_k = f.k;
  if (f.o_precision->count()) c.padic_precision = f.precision;
  if (f.o_witt->count()) c.witt_length = f.witt_length;
  if (f.o_grid->count()) c.grid = f.grid;
  if (f.o_seed->count()) c.seed = f.seed;
  c.validate();
  return c;
}

Arithmeticoid arithmeticoid_arg(const Config& c, const std::string& path, int m) {
  Arithmeticoid y = path.empty() ? Arithmeticoid::standard(NumberField::parse(c.field))
                                 : arithmeticoid_from_json(read_json_file(path), c.coeff_k, c.hahn_cap);
  if (!path.empty() && !(y.field() == NumberField::parse(c.field)) && c.field != "Q")
    throw ValidationError("arithmeticoid field differs from --field");
  return m == 0 ? y : global_frobenius(y, m);
}

FieldElement element_arg(const NumberField& K, const std::string& text, const char* name) {
  if (text.empty()) throw ValidationError(std::string("missing --") + name);
  return FieldElement::parse(K, text);
}

std::vector<WittVector> random_witt(const FiniteField* F, std::mt19937_64& rng, int n, int length,
                                    const Rational& cap) {
  std::vector<WittVector> out;
  for (int i = 0; i < n; ++i) {
    std::vector<HahnSeries> comps;
    for (int j = 0; j < length; ++j) comps.push_back(HahnSeries::random(F, rng, 2, Rational(0), Rational(2), 4, cap));
    out.emplace_back(comps);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::function<const char*(const char*)>& getenv) {
  CLI::App app{"Arithmetic Teichmueller laboratory", "ateich"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config_path, "JSON config file");
  f.o_field = app.add_option("--field", f.field, "Q, Q(i) or Q(sqrt(-d))");
  f.o_format = app.add_option("--format", f.format, "json | csv | table");
  f.o_cap = app.add_option("--cap", f.cap, "Hahn precision cap");
  f.o_k = app.add_option("--k", f.k, "coefficient field degree over F_p");
  f.o_precision = app.add_option("--precision", f.precision, "p-adic precision");
  f.o_witt = app.add_option("--witt-length", f.witt_length, "Witt vector length");
  f.o_grid = app.add_option("--grid", f.grid, "height_q grid size");
  f.o_seed = app.add_option("--seed", f.seed, "RNG seed");

  std::function<Output(const Config&)> action;
  auto sub = [&](CLI::App* parent, const char* name, const char* help) {
    auto* s = parent->add_subcommand(name, help);
    return s;
  };

  // places
  std::int64_t bound = 30;
  auto* places = sub(&app, "places", "list places in canonical order");
  places->add_option("--bound", bound, "largest rational prime");
  places->callback([&] {
    action = [&](const Config& c) {
      auto K = NumberField::parse(c.field);
      Output o{"places"};
      o.add("field", K.spec());
      o.columns = {"place", "prime", "e", "f", "splitting", "conjugate_index", "canonical_index"};
      for (const auto& v : places_up_to(K, bound))
        o.rows.push_back({v.str(), v.p, std::int64_t{v.e}, std::int64_t{v.f}, splitting_name(v.splitting),
                          std::int64_t{v.conjugate_index}, static_cast<std::int64_t>(canonical_index(K, v))});
      return o;
    };
  });

  // height
  std::string z_text, point_text, y_path;
  int frob_m = 0;
  auto* height_cmd = sub(&app, "height", "deformed height h_y(P)");
  height_cmd->add_option("--z", z_text, "affine coordinate z, P = (1 : z)");
  height_cmd->add_option("--point", point_text, "projective point x0,x1,...");
  height_cmd->add_option("--arithmeticoid", y_path, "arithmeticoid JSON file (default y0)");
  height_cmd->add_option("--frobenius", frob_m, "apply the global Frobenius m times");
  height_cmd->callback([&] {
    action = [&](const Config& c) {
      auto y = arithmeticoid_arg(c, y_path, frob_m);
      const auto& K = y.field();
      HeightReport r;
      if (!point_text.empty()) {
        std::vector<FieldElement> P;
        for (const auto& s : split(point_text, ',')) P.push_back(FieldElement::parse(K, s));
        r = height(y, P);
      } else {
        r = height(y, element_arg(K, z_text, "z"));
      }
      Output o{"height"};
      o.add("arithmeticoid", y.label());
      o.add("total", r.total.str());
      o.add("total_value", r.value());
      o.columns = {"place", "alpha", "contribution", "value"};
      for (const auto& pc : r.places)
        o.rows.push_back({pc.place.str(), pc.alpha.str(), pc.contribution.str(), pc.contribution.value()});
      return o;
    };
  });

  // stabilized-height
  std::int64_t prime_bound = 50;
  int factors = 3;
  auto* stab = sub(&app, "stabilized-height", "sampled L*-stabilized height (a lower bound)");
  stab->add_option("--z", z_text, "element z");
  stab->add_option("--arithmeticoid", y_path, "arithmeticoid JSON file (default y0)");
  stab->add_option("--frobenius", frob_m, "apply the global Frobenius m times");
  stab->add_option("--prime-bound", prime_bound, "sample primes up to this bound");
  stab->add_option("--factors", factors, "products of at most this many sample generators");
  stab->callback([&] {
    action = [&](const Config& c) {
      auto y = arithmeticoid_arg(c, y_path, frob_m);
      auto z = element_arg(y.field(), z_text, "z");
      auto sample = default_stabilizer_sample(y.field(), prime_bound, factors);
      auto s = stabilized_height(y, z, sample);
      Output o{"stabilized-height"};
      o.add("height", s.base.str());
      o.add("height_value", s.base.value());
      o.add("stabilized", s.value.str());
      o.add("stabilized_value", s.value.value());
      o.add("argmax", s.argmax.str());
      o.add("strict", s.strict);
      o.add("sample_size", static_cast<std::int64_t>(s.sample_size));
      if (s.value.value() < s.base.value() - 1e-12) throw PropertyFailure("stabilized height below height");
      return o;
    };
  });

  // orbit
  std::string x_text;
  std::int64_t scan = -1;
  auto* orbit = sub(&app, "orbit", "L* and Frobenius action on an arithmeticoid");
  orbit->add_option("--x", x_text, "acting element");
  orbit->add_option("--arithmeticoid", y_path, "arithmeticoid JSON file (default y0)");
  orbit->add_option("--frobenius", frob_m, "apply the global Frobenius m times first");
  orbit->add_option("--scan", scan, "list all integral elements with coordinates bounded by this acting trivially");
  orbit->callback([&] {
    action = [&](const Config& c) {
      auto y = arithmeticoid_arg(c, y_path, frob_m);
      Output o{"orbit"};
      if (scan >= 0) {
        auto fixed = stabilizer_scan(y, scan);
        o.add("bound", scan);
        o.add("trivial_action_count", static_cast<std::int64_t>(fixed.size()));
        o.columns = {"element"};
        for (const auto& x : fixed) o.rows.push_back({x.str()});
        return o;
      }
      auto x = element_arg(y.field(), x_text, "x");
      auto xy = lstar_act(x, y);
      o.add("x", x.str());
      o.add("stabilizer", stabilizer_check(x, y));
      std::vector<Place> vs{Place::archimedean(y.field())};
      for (const auto& [v, k] : divisor(x)) vs.push_back(v);
      for (const auto& [v, pt] : y.deviations())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      std::sort(vs.begin(), vs.end());
      o.columns = {"place", "exponent_before", "exponent_after"};
      for (const auto& v : vs) o.rows.push_back({v.str(), y.point(v).exponent.str(), xy.point(v).exponent.str()});
      return o;
    };
  });

  // product-formula
  std::size_t random_count = 0;
  auto* pf = sub(&app, "product-formula", "check prod_v |x|_v = 1");
  pf->add_option("--x", x_text, "element");
  pf->add_option("--random", random_count, "check this many random elements instead");
  pf->callback([&] {
    action = [&](const Config& c) {
      auto K = NumberField::parse(c.field);
      Output o{"product-formula"};
      if (random_count > 0) {
        o.seed = c.seed;
        auto b = product_formula_batch(K, random_count, c.seed);
        o.add("count", static_cast<std::int64_t>(b.count));
        o.add("exact", static_cast<std::int64_t>(b.exact));
        o.add("max_residual", b.max_residual);
        o.add("tolerance", kProductFormulaTol);
        if (b.exact != b.count || !(b.max_residual < kProductFormulaTol))
          throw PropertyFailure("product formula violated");
        return o;
      }
      auto x = element_arg(K, x_text, "x");
      auto r = product_formula_check(x);
      o.add("x", x.str());
      o.add("archimedean_log", r.archimedean_log);
      o.add("residual", r.residual);
      o.add("exact_cancellation", r.exact_cancellation);
      o.columns = {"prime", "finite_exponent_sum", "archimedean_coeff"};
      std::set<std::int64_t> primes;
      for (const auto& [p, e] : r.finite_exponent_sum) primes.insert(p);
      for (const auto& [p, e] : r.archimedean_coeff) primes.insert(p);
      for (auto p : primes) {
        auto fe = r.finite_exponent_sum.count(p) ? r.finite_exponent_sum.at(p) : Rational(0);
        auto ae = r.archimedean_coeff.count(p) ? r.archimedean_coeff.at(p) : Rational(0);
        o.rows.push_back({p, fe.str(), ae.str()});
      }
      if (!r.exact_cancellation || !(r.residual < kProductFormulaTol))
        throw PropertyFailure("product formula violated");
      return o;
    };
  });

  // distance
  std::string y1_path, y2_path;
  int dist_m = 1;
  std::size_t terms = 64;
  auto* dist = sub(&app, "distance", "metric on arithmeticoids");
  dist->add_option("--y1", y1_path, "first arithmeticoid (default y0)");
  dist->add_option("--y2", y2_path, "second arithmeticoid (default phi^m y0)");
  dist->add_option("--m", dist_m, "Frobenius power for the default second point");
  dist->add_option("--terms", terms, "places always included");
  dist->callback([&] {
    action = [&](const Config& c) {
      auto y1 = arithmeticoid_arg(c, y1_path, 0);
      auto y2 = y2_path.empty() ? global_frobenius(Arithmeticoid::standard(y1.field()), dist_m)
                                : arithmeticoid_arg(c, y2_path, 0);
      Output o{"distance"};
      o.add("y1", y1.label());
      o.add("y2", y2_path.empty() ? "phi^" + std::to_string(dist_m) + " y0" : y2.label());
      o.add("distance", distance(y1, y2, terms));
      return o;
    };
  });

  // period-map
  std::int64_t pm_bound = 20;
  auto* period = sub(&app, "period-map", "normalization coordinates and the product-formula hyperplane");
  period->add_option("--arithmeticoid", y_path, "arithmeticoid JSON file (default y0)");
  period->add_option("--frobenius", frob_m, "apply the global Frobenius m times");
  period->add_option("--bound", pm_bound, "list alpha at places over primes up to this bound");
  period->add_option("--x", x_text, "check the hyperplane equation at x");
  period->callback([&] {
    action = [&](const Config& c) {
      auto y = arithmeticoid_arg(c, y_path, frob_m);
      auto P = period_map(y);
      Output o{"period-map"};
      o.add("frobenius_shift", std::int64_t{P.alpha().frobenius_shift()});
      o.add("equals_standard", P == period_map(Arithmeticoid::standard(y.field())));
      if (!x_text.empty()) {
        auto pairing = hyperplane_pairing(y, FieldElement::parse(y.field(), x_text));
        o.add("pairing", pairing.str());
        if (!pairing.exact_is_zero() || std::abs(pairing.real()) > kProductFormulaTol)
          throw PropertyFailure("hyperplane equation fails");
      }
      o.columns = {"place", "alpha"};
      std::vector<Place> vs = places_up_to(y.field(), pm_bound);
      for (const auto& [v, a] : P.alpha().special())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      std::sort(vs.begin(), vs.end());
      for (const auto& v : vs) o.rows.push_back({v.str(), P.alpha().alpha(v).str()});
      return o;
    };
  });

  // frobenioid
  std::string mode_text = "integer";
  std::optional<int> pullback;
  auto* frob = sub(&app, "frobenioid", "divisors, perfection and Frobenius pullback");
  frob->add_option("--x", x_text, "element whose effective divisor is used");
  frob->add_option("--mode", mode_text, "integer | perfection | realified");
  frob->add_option("--pullback", pullback, "pull back along phi^m");
  frob->callback([&] {
    action = [&](const Config& c) {
      auto K = NumberField::parse(c.field);
      auto d = effective_part(principal_divisor(element_arg(K, x_text, "x")));
      if (mode_text == "perfection" || mode_text == "realified") d = perfection(d);
      else if (mode_text != "integer") throw ValidationError("unknown mode " + mode_text);
      if (pullback) d = frobenius_pullback(d, *pullback);
      if (mode_text == "realified") d = realify(d);
      Output o{"frobenioid"};
      o.add("mode", mode_text);
      o.add("admitted_by_field", frobenioid_of(K).admits(d));
      o.columns = {"place", "exponent", "value"};
      if (mode_text == "realified") {
        for (const auto& [v, e] : d.real_exponents) o.rows.push_back({v.str(), fmt17(e), e});
      } else {
        for (const auto& [v, e] : d.exponents) o.rows.push_back({v.str(), e.str(), e.to_double()});
      }
      return o;
    };
  });

  // degree
  std::string orders_text, arch_text;
  auto* degree = sub(&app, "degree", "arithmetic degree of an ideloid");
  degree->add_option("--x", x_text, "multiply by the principal ideloid of x");
  degree->add_option("--orders", orders_text, "place:order list, e.g. 5:1,7:-2 (use 5:1:k for split places)");
  degree->add_option("--arithmeticoid", y_path, "arithmeticoid JSON file (default y0)");
  degree->add_option("--frobenius", frob_m, "apply the global Frobenius m times");
  degree->callback([&] {
    action = [&](const Config& c) {
      auto y = arithmeticoid_arg(c, y_path, frob_m);
      Ideloid I;
      for (const auto& item : split(orders_text, ',')) {
        auto pos = item.rfind(':');
        if (pos == std::string::npos) throw ValidationError("orders entries are place:order");
        I.orders[parse_place(y.field(), item.substr(0, pos))] += Rational::parse(item.substr(pos + 1));
      }
      if (!x_text.empty()) I = ideloid_mul(I, principal_ideloid(FieldElement::parse(y.field(), x_text)));
      auto deg = arithmetic_degree(y, I);
      Output o{"degree"};
      o.add("degree", deg.str());
      o.add("degree_value", deg.value());
      o.columns = {"place", "order"};
      for (const auto& [v, e] : I.orders) o.rows.push_back({v.str(), e.str()});
      return o;
    };
  });

  // cohomology
  auto* coh = sub(&app, "cohomology", "Kummer classes, Tate classes, collation");
  coh->require_subcommand(1);
  std::string place_text, q_text, tau_text = "0,1", input_path;
  int kummer_n = 3;
  auto* kummer = sub(coh, "kummer", "Kummer class of x at a finite place");
  kummer->add_option("--x", x_text, "element");
  kummer->add_option("--place", place_text, "finite place");
  kummer->add_option("--n", kummer_n, "precision n (classes mod p^n)");
  kummer->callback([&] {
    action = [&](const Config& c) {
      auto K = NumberField::parse(c.field);
      auto k = kummer_class(element_arg(K, x_text, "x"), parse_place(K, place_text), kummer_n);
      Output o{"cohomology kummer"};
      o.add("place", k.place.str());
      o.add("precision", std::int64_t{k.precision});
      o.add("order_part", k.order_part.get_str());
      o.add("unit_tag", k.unit_tag.str());
      return o;
    };
  });
  auto* tate = sub(coh, "tate-class", "class of the Tate parameters");
  tate->add_option("--q", q_text, "place=q list separated by ';', e.g. 7=686");
  tate->add_option("--tau", tau_text, "archimedean tau as re,im");
  tate->add_option("--n", kummer_n, "precision n");
  tate->callback([&] {
    action = [&](const Config& c) {
      auto K = NumberField::parse(c.field);
      std::map<Place, FieldElement> qs;
      for (const auto& item : split(q_text, ';')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("--q entries are place=q");
        qs.emplace(parse_place(K, item.substr(0, eq)), FieldElement::parse(K, item.substr(eq + 1)));
      }
      auto cls = tate_class(K, qs, schottky(parse_complex(tau_text)), kummer_n);
      Output o{"cohomology tate-class"};
      o.add("arch_q_re", cls.arch_q.real());
      o.add("arch_q_im", cls.arch_q.imag());
      o.add("bloch_kato", bloch_kato_member(cls));
      o.columns = {"place", "order_part", "unit_tag"};
      for (const auto& [v, k] : cls.finite) o.rows.push_back({v.str(), k.order_part.get_str(), k.unit_tag.str()});
      return o;
    };
  });
  auto* collate_cmd = sub(coh, "collate", "union of transformed classes");
  collate_cmd->add_option("--input", input_path, "JSON {classes: {label: class}, transforms: [...]}")->required();
  collate_cmd->callback([&] {
    action = [&](const Config& c) {
      auto j = read_json_file(input_path);
      std::map<std::string, AdelicClass> classes;
      std::map<std::string, std::vector<Transform>> isos;
      auto K = NumberField::parse(c.field);
      for (const auto& [label, cj] : j.at("classes").items()) {
        classes.emplace(label, adelic_class_from_json(cj));
        K = classes.at(label).field;
      }
      for (const auto& tj : j.at("transforms")) {
        auto [label, t] = transform_from_json(K, tj);
        isos[label].push_back(t);
      }
      std::size_t total = 0;
      for (const auto& [label, ts] : isos) total += classes.count(label) ? ts.size() : 0;
      auto result = collate(classes, isos);
      Output o{"cohomology collate"};
      o.add("inputs", static_cast<std::int64_t>(classes.size()));
      o.add("images", static_cast<std::int64_t>(total));
      o.add("distinct", static_cast<std::int64_t>(result.size()));
      o.columns = {"index", "bloch_kato", "class"};
      std::int64_t i = 0;
      for (const auto& cls : result)
        o.rows.push_back({i++, bloch_kato_member(cls), adelic_class_to_json(cls).dump()});
      return o;
    };
  });

  // tilt
  auto* tilt = sub(&app, "tilt", "Hahn series, Artin-Hasse, Witt vectors");
  tilt->require_subcommand(1);
  std::int64_t p = 2;
  std::string a_text = R"([{"exponent":"1/2","coeff":[1]}])";
  int ah_degree = 60, trials = 50;
  auto* teval = sub(tilt, "eval", "AH(a) for a Hahn series a of positive valuation");
  teval->add_option("--p", p, "prime");
  teval->add_option("--a", a_text, "Hahn series as JSON terms");
  teval->callback([&] {
    action = [&](const Config& c) {
      auto F = FiniteField::get(p, c.coeff_k);
      auto a = hahn_from_json(json::parse(a_text), F.get(), c.hahn_cap);
      if (a.is_zero() || a.valuation() <= Rational(0)) throw ValidationError("a must have positive valuation");
      int deg = static_cast<int>((c.hahn_cap / a.valuation()).floor()) + 1;
      auto v = evaluate_series(artin_hasse(p, deg, 1), a);
      Output o{"tilt eval"};
      o.add("a", a.str());
      o.add("cap", v.cap().str());
      o.columns = {"exponent", "coeff"};
      for (const auto& [e, cf] : v.terms()) o.rows.push_back({e.str(), cf.str()});
      return o;
    };
  });
  auto* tah = sub(tilt, "artin-hasse", "Artin-Hasse coefficients mod p^precision");
  tah->add_option("--p", p, "prime");
  tah->add_option("--degree", ah_degree, "largest degree");
  tah->callback([&] {
    action = [&](const Config& c) {
      ZpSeries s;
      try {
        s = artin_hasse(p, ah_degree, c.padic_precision);
      } catch (const std::logic_error& e) {
        throw PropertyFailure(e.what());
      }
      Output o{"tilt artin-hasse"};
      o.add("p", p);
      o.add("precision", std::int64_t{c.padic_precision});
      o.add("p_integral", true);
      o.columns = {"n", "coefficient"};
      for (int n = 0; n <= s.max_degree(); ++n) o.rows.push_back({std::int64_t{n}, s.coeffs[n].get_str()});
      return o;
    };
  });
  auto* twitt = sub(tilt, "witt-check", "ring identities of truncated Witt vectors");
  twitt->add_option("--p", p, "prime");
  twitt->add_option("--trials", trials, "random triples");
  twitt->callback([&] {
    action = [&](const Config& c) {
      auto F = FiniteField::get(p, std::min(c.coeff_k, 4));
      std::mt19937_64 rng(c.seed);
      const Rational cap(3);
      int bad_sub = 0, bad_dist = 0, bad_teich = 0;
      for (int t = 0; t < trials; ++t) {
        auto v = random_witt(F.get(), rng, 3, c.witt_length, cap);
        if (!(witt_sub(witt_add(v[0], v[1]), v[1]) == v[0])) ++bad_sub;
        if (!(witt_mul(v[0], witt_add(v[1], v[2])) == witt_add(witt_mul(v[0], v[1]), witt_mul(v[0], v[2]))))
          ++bad_dist;
        const auto& a = v[1][0];
        const auto& b = v[2][0];
        if (!(witt_mul(teichmueller_lift(a, c.witt_length), teichmueller_lift(b, c.witt_length)) ==
              teichmueller_lift(a * b, c.witt_length)))
          ++bad_teich;
      }
      Output o{"tilt witt-check"};
      o.seed = c.seed;
      o.add("p", p);
      o.add("length", std::int64_t{c.witt_length});
      o.add("trials", std::int64_t{trials});
      o.columns = {"identity", "failures"};
      o.rows = {{std::string("(x+y)-y = x"), std::int64_t{bad_sub}},
                {std::string("x(y+z) = xy+xz"), std::int64_t{bad_dist}},
                {std::string("[a][b] = [ab]"), std::int64_t{bad_teich}}};
      if (bad_sub + bad_dist + bad_teich > 0) throw PropertyFailure("Witt identity failed");
      return o;
    };
  });
  auto* tadd = sub(tilt, "additivity", "empirical AH(a+b) = AH(a)AH(b) report");
  tadd->add_option("--p", p, "prime");
  tadd->add_option("--trials", trials, "random pairs");
  tadd->callback([&] {
    action = [&](const Config& c) {
      auto r = artin_hasse_additivity(p, std::min(c.coeff_k, 4), trials, c.seed, c.hahn_cap);
      Output o{"tilt additivity"};
      o.seed = c.seed;
      o.add("p", p);
      o.add("trials", std::int64_t{r.trials});
      o.add("identity_holds", std::int64_t{r.holds});
      o.add("worst_defect_valuation", r.worst_defect ? r.worst_defect->str() : std::string("none"));
      return o;
    };
  });

  // szpiro
  auto* sz = sub(&app, "szpiro", "universal cover of SL2(R), heights, Theta-links");
  sz->require_subcommand(1);
  std::string matrix_text = "1,0,0,1";
  int winding = 0, pairs = 1000, ell = 5, punctures = 3, count = 1;
  std::optional<int> genus;
  std::string datum_path, n_range = "0:3", m_range = "-2:2";
  auto* szh = sub(sz, "height", "h of a lifted SL2(R) element");
  szh->add_option("--matrix", matrix_text, "a,b,c,d");
  szh->add_option("--winding", winding, "lift winding");
  szh->callback([&] {
    action = [&](const Config& c) {
      auto e = lift(parse_matrix(matrix_text), winding);
      auto h = height_q(e, c.grid);
      Output o{"szpiro height"};
      o.add("lift0", e.lift0);
      o.add("height", h.value);
      o.add("error", h.error);
      o.add("argmax", h.argmax);
      return o;
    };
  });
  auto* szs = sub(sz, "subadd", "subadditivity on random pairs");
  szs->add_option("--pairs", pairs, "number of pairs");
  szs->callback([&] {
    action = [&](const Config& c) {
      std::mt19937_64 rng(c.seed);
      int violations = 0;
      double worst = -1e300;
      for (int t = 0; t < pairs; ++t) {
        auto a = random_cover_element(rng), b = random_cover_element(rng);
        auto ha = height_q(a, c.grid), hb = height_q(b, c.grid), hab = height_q(compose(a, b), c.grid);
        double excess = hab.value - (ha.value + hb.value + ha.error + hb.error);
        worst = std::max(worst, excess);
        if (excess > 0) ++violations;
      }
      Output o{"szpiro subadd"};
      o.seed = c.seed;
      o.add("pairs", std::int64_t{pairs});
      o.add("violations", std::int64_t{violations});
      o.add("max_excess", worst);
      if (violations) throw PropertyFailure("subadditivity violated");
      return o;
    };
  });
  auto* szt = sub(sz, "theta", "Schottky parameter and theta-value tuple");
  szt->add_option("--tau", tau_text, "re,im");
  szt->add_option("--ell", ell, "prime >= 5");
  szt->callback([&] {
    action = [&](const Config&) {
      auto tau = parse_complex(tau_text);
      auto q = schottky(tau);
      auto ex = theta_exponents(ell);
      auto vals = theta_values(tau, ell);
      Output o{"szpiro theta"};
      o.add("q_re", q.real());
      o.add("q_im", q.imag());
      o.columns = {"j", "exponent", "re", "im", "abs"};
      for (std::size_t j = 0; j < vals.size(); ++j)
        o.rows.push_back({static_cast<std::int64_t>(j + 1), ex[j].str(), vals[j].real(), vals[j].imag(),
                          std::abs(vals[j])});
      return o;
    };
  });
  auto* szc = sub(sz, "cor312", "theta-link chain lhs >= mid >= rhs on monodromy data");
  szc->add_option("--ell", ell, "prime >= 5");
  szc->add_option("--punctures", punctures, "number of punctures");
  szc->add_option("--genus", genus, "genus (default: seed mod 3)");
  szc->add_option("--count", count, "consecutive seeds to run");
  szc->add_option("--datum", datum_path, "monodromy datum JSON instead of random data");
  szc->callback([&] {
    action = [&](const Config& c) {
      Output o{"szpiro cor312"};
      o.seed = c.seed;
      o.columns = {"seed", "genus", "punctures", "lhs", "mid", "rhs", "tolerance", "pass"};
      std::vector<Cor312Row> rows;
      if (!datum_path.empty()) {
        auto d = monodromy_from_json(read_json_file(datum_path));
        rows.push_back({c.seed, d.genus, static_cast<int>(d.punctures.size()), ell, corollary312_check(d, ell, {}, c.grid)});
      } else {
        for (int i = 0; i < count; ++i) {
          std::uint64_t s = c.seed + static_cast<std::uint64_t>(i);
          int g = genus ? *genus : static_cast<int>(s % 3);
          auto d = monodromy_generate(g, punctures, s);
          rows.push_back({s, g, punctures, ell, corollary312_check(d, ell, {}, c.grid)});
        }
      }
      int passed = 0;
      for (const auto& r : rows) {
        passed += r.report.pass;
        o.rows.push_back({static_cast<std::int64_t>(r.seed), std::int64_t{r.genus}, std::int64_t{r.punctures},
                          r.report.lhs, r.report.mid, r.report.rhs, r.report.tolerance, r.report.pass});
      }
      o.add("ell", std::int64_t{ell});
      o.add("passed", std::int64_t{passed});
      o.add("runs", static_cast<std::int64_t>(rows.size()));
      if (passed != static_cast<int>(rows.size())) throw PropertyFailure("theta-link chain failed");
      return o;
    };
  });
  auto* szl = sub(sz, "lattice", "log-theta lattice labels and heights");
  szl->add_option("--n", n_range, "n range a:b");
  szl->add_option("--m", m_range, "m range a:b");
  szl->callback([&] {
    action = [&](const Config& c) {
      auto [n0, n1] = parse_range(n_range);
      auto [m0, m1] = parse_range(m_range);
      auto L = log_theta_lattice(n0, n1, m0, m1, c.seed, c.grid);
      Output o{"szpiro lattice"};
      o.seed = c.seed;
      o.columns = {"label", "n", "m", "projection", "lift0", "height"};
      for (const auto& e : L.entries)
        o.rows.push_back({"theta_" + std::to_string(e.n) + "," + std::to_string(e.m), std::int64_t{e.n},
                          std::int64_t{e.m}, "theta_" + std::to_string(LogThetaLattice::project(e)), e.elt.lift0,
                          e.height});
      return o;
    };
  });

  // mutate
  std::string symbols_text;
  int r_count = 0;
  auto* mut = sub(&app, "mutate", "toy arithmetic mutation sigma(q_j) = q_j^{-1}, j <= r");
  mut->add_option("--symbols", symbols_text, "name=|q| list, e.g. q1=1/5,q2=1/7")->required();
  mut->add_option("--r", r_count, "number of independent parameters mutated");
  mut->callback([&] {
    action = [&](const Config&) {
      std::vector<TateSymbol> params;
      for (const auto& item : split(symbols_text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("--symbols entries are name=value");
        params.push_back({item.substr(0, eq), Rational::parse(item.substr(eq + 1))});
      }
      auto rep = mutate_tate_parameters(params, r_count);
      Output o{"mutate"};
      o.add("flagged", std::int64_t{rep.flagged});
      o.add("requires_fresh_parameters", rep.requires_fresh_parameters);
      o.columns = {"name", "abs_before", "abs_after", "mutated", "admissible_after"};
      for (const auto& e : rep.entries)
        o.rows.push_back({e.name, e.abs_before.str(), e.abs_after.str(), e.mutated, e.admissible_after});
      return o;
    };
  });

  // abc
  std::int64_t abc_bound = 50;
  auto* abc = sub(&app, "abc", "tabulate heights against log rad(abc) for a + b = c");
  abc->add_option("--bound", abc_bound, "largest c");
  abc->callback([&] {
    action = [&](const Config&) {
      Output o{"abc"};
      o.columns = {"a", "b", "c", "h_standard", "h_moved", "log_radical", "log_c"};
      for (std::int64_t cc = 2; cc <= abc_bound; ++cc)
        for (std::int64_t a = 1; 2 * a <= cc; ++a) {
          if (std::gcd(a, cc) != 1) continue;
          auto row = abc_row(a, cc - a);
          o.rows.push_back({row.a, row.b, row.c, row.h_standard, row.h_moved, row.log_radical, row.log_c});
        }
      return o;
    };
  });

  // j-invert
  std::string j_text;
  auto* jinv = sub(&app, "j-invert", "Tate parameter q with j(q) = j for v_p(j) < 0");
  jinv->add_option("--p", p, "prime");
  jinv->add_option("--j", j_text, "rational j")->required();
  jinv->callback([&] {
    action = [&](const Config& c) {
      auto coeffs = load_j_coefficients();
      auto t = invert_j_series(p, Rational::parse(j_text), c.padic_precision, coeffs);
      Output o{"j-invert"};
      o.add("p", t.p);
      o.add("valuation", std::int64_t{t.valuation});
      o.add("precision", std::int64_t{t.precision});
      o.add("j_precision", std::int64_t{t.j_precision});
      o.add("q", t.residue.get_str());
      o.add("coefficients", coeffs.source);
      return o;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ateich: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }
  Config c;
  try {
    c = resolve_config(f, getenv);
    out << action(c).render(c.format);
    return kExitOk;
  } catch (const PropertyFailure& e) {
    err << "ateich: property check failed: " << e.what() << "\n";
    return kExitPropertyFailure;
  } catch (const std::exception& e) {
    err << "ateich: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace ateich
