#include "kusuoka/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kusuoka/gasket.hpp"
#include "kusuoka/io.hpp"
#include "kusuoka/kernels.hpp"
#include "kusuoka/measure.hpp"
#include "kusuoka/procspace.hpp"
#include "kusuoka/spectral.hpp"

namespace kusuoka::cli {
namespace {

const std::set<std::string> kCommands = {
    "validate", "theta1",  "ck",      "theta2",  "measure", "gfun",   "sample",      "correlate",
    "mixing-bound", "gasket", "dilation", "qdecay", "report", "renormalize"};

struct Options {
  std::string command;
  std::string builtin;
  std::string input;
  std::string backend = "exact";
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultWordBudget;

  std::size_t k = 1;
  std::size_t kmax = 2;
  std::size_t depth = 1;
  std::string word;
  bool word_given = false;
  std::string prefix;
  std::size_t length = 10;
  std::size_t count = 1;
  std::string alpha = "0";
  std::string beta = "0";
  long nmax = 12;
  std::string rate;
  int n = 3;
  std::string cylinder_file;
  std::size_t level = 3;
  std::size_t jmax = 6;
  std::size_t trials = 100;
  double schatten = 0.0;
};

// Rows of scalars rendered as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;

  std::string csv() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ",";
        if (row[i].is_string()) s += row[i].get<std::string>();
        else if (row[i].is_number_float()) s += Field<double>::str(row[i].get<double>());
        else s += row[i].dump();
      }
      s += "\n";
    }
    return s;
  }

  Json json() const {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    return arr;
  }

  std::string render(const std::string& format) const {
    return format == "json" ? json().dump(2) + "\n" : csv();
  }
};

Json certified_json(const Certified& c) {
  return c.is_exact() ? Json(c.exact->str()) : Json(c.value);
}

std::string certified_line(const Certified& c) {
  return c.str() + (c.is_exact() ? " (exact)" : " (float)");
}

Json validation_json(const ValidationReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["energy_residual"] = r.energy_residual;
  j["identity_residual"] = r.identity_residual;
  j["trace_residual"] = r.trace_residual;
  j["min_energy_eigenvalue"] = r.min_energy_eigenvalue;
  j["energy_symmetric"] = r.energy_symmetric;
  j["injective"] = r.injective;
  j["singular_maps"] = r.singular_maps;
  return j;
}

std::vector<mpq_class> parse_probabilities(const std::string& list) {
  std::vector<mpq_class> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Surd v = Surd::parse(item);
    if (!v.is_rational()) throw ConfigError("bernoulli probabilities must be rational");
    out.push_back(v.rational());
  }
  if (out.empty()) throw ConfigError("bernoulli needs at least one probability");
  return out;
}

template <class T>
MatrixSystem<T> convert(const MatrixSystem<Surd>& sys) {
  if constexpr (Field<T>::exact) return sys;
  else return to_float(sys);
}

template <class T>
MatrixSystem<T> load_builtin(const std::string& name) {
  if (name == "sg") return builtin_sg<T>();
  if (name == "sg3") return convert<T>(generate_system(3));
  if (name == "sg4") return convert<T>(generate_system(4));
  if (name == "sg5") return convert<T>(generate_system(5));
  if (name.rfind("bernoulli:", 0) == 0)
    return builtin_bernoulli<T>(parse_probabilities(name.substr(10)));
  throw ConfigError("unknown builtin '" + name + "' (sg, sg3, sg4, sg5, bernoulli:p1,p2,...)");
}

template <class T>
MatrixSystem<T> load_system(const Options& o) {
  if (o.builtin.empty() == o.input.empty())
    throw ConfigError("give exactly one of --builtin and --in");
  if (!o.builtin.empty()) return load_builtin<T>(o.builtin);
  try {
    return system_from_json<T>(read_json_file(o.input));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(o.input + ": " + e.what());
  }
}

template <class T>
T parse_scalar(const std::string& text, const char* what) {
  try {
    return Field<T>::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad ") + what + " '" + text + "': " + e.what());
  }
}

Word parse_word(const Alphabet& a, const std::string& text) {
  try {
    return a.parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("bad word '" + text + "': " + e.what());
  }
}

template <class T>
void require_valid(const MatrixSystem<T>& sys) {
  auto r = validate(sys);
  if (!r.passed()) throw ValidationError("system fails validation: " + validation_json(r).dump());
}

template <class T>
T default_rate(const MatrixSystem<T>& sys, const Options& o) {
  if (!o.rate.empty()) return parse_scalar<T>(o.rate, "rate");
  auto t = theta1(sys);
  if constexpr (Field<T>::exact) {
    if (!t.theta1.is_exact())
      throw ConfigError("theta1 is not rational for this system; pass --rate");
    return *t.theta1.exact;
  } else {
    return t.theta1.value;
  }
}

template <class T>
Json report(const MatrixSystem<T>& sys, const Options& o) {
  Json j;
  j["system"] = o.builtin.empty() ? o.input : o.builtin;
  j["backend"] = Field<T>::name;
  j["dim"] = sys.dim();
  j["symbols"] = sys.size();
  auto v = validate(sys);
  j["validation"] = validation_json(v);
  if (!v.passed()) return j;

  auto t1 = theta1(sys);
  j["theta1"] = certified_json(t1.theta1);
  j["theta1_exact"] = t1.theta1.is_exact();
  Json rational = Json::array();
  for (const auto& q : t1.rational_eigenvalues) rational.push_back(q.get_str());
  j["rational_eigenvalues_of_M"] = std::move(rational);

  auto t2 = theta2(sys, o.kmax, o.budget);
  Json c = Json::array();
  for (std::size_t k = 0; k < t2.c.size(); ++k) {
    Json row;
    row["k"] = k + 1;
    row["applicable"] = t2.c[k].applicable;
    row["value"] = certified_json(t2.c[k].value);
    c.push_back(std::move(row));
  }
  j["c_k"] = std::move(c);
  j["theta2_thm"] = certified_json(t2.theta2_thm);
  j["theta2_lemma"] = certified_json(t2.theta2_lemma);
  if (!t2.note.empty()) j["theta2_note"] = t2.note;

  KusuokaMeasure<T> m(sys);
  Json nu = Json::object();
  for (const auto& w : enumerate(sys.size(), 1, o.budget))
    nu[sys.alphabet().format(w)] = scalar_to_json(m.nu(w));
  j["nu_level1"] = std::move(nu);

  if (t1.theta1.is_exact() || !Field<T>::exact) {
    T rate = default_rate(sys, o);
    Json rows = Json::array();
    bool all_ok = true;
    for (const auto& r : mixing_bound_check(m, 1, o.nmax, rate, o.budget)) {
      Json row;
      row["n"] = r.n;
      row["max_gap"] = scalar_to_json(r.max_gap);
      row["bound"] = scalar_to_json(r.gap_bound);
      row["ok"] = r.gap_ok && r.pointwise_ok;
      all_ok = all_ok && r.gap_ok && r.pointwise_ok;
      rows.push_back(std::move(row));
    }
    j["mixing_rate"] = scalar_to_json(rate);
    j["mixing"] = std::move(rows);
    j["mixing_ok"] = all_ok;
  }
  return j;
}

template <class T>
std::string execute(const Options& o) {
  const std::string& cmd = o.command;
  const std::string fmt = o.format;

  if (cmd == "gasket") {
    auto sys = convert<T>(generate_system(o.n));
    return system_to_json(sys).dump(2) + "\n";
  }
  if (cmd == "renormalize") {
    if (o.input.empty()) throw ConfigError("renormalize needs --in");
    Json raw = read_json_file(o.input);
    if (!raw.contains("energy") && raw.contains("dim") && raw["dim"].is_number_unsigned()) {
      const auto d = raw["dim"].get<std::size_t>();
      Json rows = Json::array();
      for (std::size_t i = 0; i < d; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < d; ++k) row.push_back(i == k ? 1 : 0);
        rows.push_back(row);
      }
      raw["energy"] = rows;
    }
    auto src = system_from_json<T>(raw);
    auto r = renormalize<T>(src.alphabet(), src.maps());
    return system_to_json(r.system).dump(2) + "\n";
  }

  const auto sys = load_system<T>(o);
  if (cmd == "validate") {
    auto r = validate(sys);
    if (fmt == "json") {
      auto text = validation_json(r).dump(2) + "\n";
      if (!r.passed()) throw ValidationError(text);
      return text;
    }
    if (!r.passed()) throw ValidationError("fail: " + validation_json(r).dump());
    return "pass\n";
  }
  if (cmd == "report") return report(sys, o).dump(2) + "\n";

  require_valid(sys);
  if (cmd == "theta1") {
    Certified c = o.schatten > 0 ? theta1_schatten(sys, o.schatten) : theta1(sys).theta1;
    if (fmt == "json") {
      Json j;
      j["theta1"] = certified_json(c);
      j["exact"] = c.is_exact();
      if (o.schatten > 0) j["schatten_p"] = o.schatten;
      return j.dump(2) + "\n";
    }
    return certified_line(c) + "\n";
  }
  if (cmd == "ck") {
    auto r = c_k(sys, o.k, o.budget);
    if (!r.applicable) return fmt == "json" ? "{\"applicable\": false}\n" : "not applicable (d = 1)\n";
    if (fmt == "json") {
      Json j;
      j["k"] = o.k;
      j["c_k"] = certified_json(r.value);
      j["exact"] = r.value.is_exact();
      return j.dump(2) + "\n";
    }
    return certified_line(r.value) + "\n";
  }
  if (cmd == "theta2") {
    auto r = theta2(sys, o.kmax, o.budget);
    if (fmt == "json") {
      Json j;
      j["theta2_thm"] = certified_json(r.theta2_thm);
      j["theta2_lemma"] = certified_json(r.theta2_lemma);
      j["irreducible"] = r.irreducible;
      if (!r.note.empty()) j["note"] = r.note;
      return j.dump(2) + "\n";
    }
    std::string s = "theta2_thm " + certified_line(r.theta2_thm) + "\ntheta2_lemma " +
                    certified_line(r.theta2_lemma) + "\n";
    if (!r.note.empty()) s += "note: " + r.note + "\n";
    return s;
  }

  KusuokaMeasure<T> m(sys);
  const Alphabet& ab = sys.alphabet();
  if (cmd == "measure") {
    Table t{{"word", "nu"}, {}};
    if (o.word_given) {
      Word w = parse_word(ab, o.word);
      t.rows.push_back({ab.format(w), scalar_to_json(m.nu(w))});
    } else {
      auto words = enumerate(sys.size(), o.depth, o.budget);
      auto nus = kernels::nu_table(sys, kernels::word_matrix_table(sys, o.depth, o.budget));
      for (std::size_t i = 0; i < words.size(); ++i)
        t.rows.push_back({ab.format(words[i]), scalar_to_json(nus[i])});
    }
    return t.render(fmt);
  }
  if (cmd == "gfun") {
    Word w = parse_word(ab, o.prefix);
    T g = m.g_approx(w);
    if (fmt == "json") {
      Json j;
      j["prefix"] = o.prefix;
      j["g"] = scalar_to_json(g);
      return j.dump(2) + "\n";
    }
    return Field<T>::str(g) + "\n";
  }
  if (cmd == "sample") {
    Sampler<T> sampler(m, o.seed);
    std::string s;
    Json arr = Json::array();
    for (std::size_t i = 0; i < o.count; ++i) {
      auto w = ab.format(sampler.draw(o.length));
      s += w + "\n";
      arr.push_back(w);
    }
    return fmt == "json" ? arr.dump(2) + "\n" : s;
  }
  if (cmd == "correlate") {
    Word a = parse_word(ab, o.alpha), b = parse_word(ab, o.beta);
    T rate = default_rate(sys, o);
    T bound = T(static_cast<long>(sys.dim()));
    Table t{{"n", "alpha", "beta", "gap", "bound"}, {}};
    for (long n = 0; n <= o.nmax; ++n) {
      t.rows.push_back({n, ab.format(a), ab.format(b), scalar_to_json(m.correlation_gap(a, b, n)),
                        scalar_to_json(bound)});
      bound *= rate;
    }
    return t.render(fmt);
  }
  if (cmd == "mixing-bound") {
    T rate = default_rate(sys, o);
    Table t{{"n", "max_gap", "bound", "gap_ok", "max_pointwise", "pointwise_ok"}, {}};
    for (const auto& r : mixing_bound_check(m, o.k, o.nmax, rate, o.budget))
      t.rows.push_back({r.n, scalar_to_json(r.max_gap), scalar_to_json(r.gap_bound), r.gap_ok,
                        r.max_pointwise, r.pointwise_ok});
    return t.render(fmt);
  }
  if (cmd == "dilation") {
    if (o.cylinder_file.empty()) throw ConfigError("dilation needs --f");
    auto f = cylinder_from_json<T>(read_json_file(o.cylinder_file), ab);
    auto r = dilation_check(m, f, o.k, o.level, o.budget);
    if (fmt == "json") {
      Json j;
      j["k"] = o.k;
      j["level"] = o.level;
      j["max_abs_residual"] = r.max_abs_diff;
      j["exact_zero"] = r.exact_zero;
      return j.dump(2) + "\n";
    }
    return "residual " + Field<double>::str(r.max_abs_diff) +
           (r.exact_zero ? " (exact zero)" : "") + "\n";
  }
  if (cmd == "qdecay") {
    auto c1 = c_k(sys, 1, o.budget);
    if (!c1.applicable) throw MathError("qdecay needs d >= 2");
    T c1v;
    if constexpr (Field<T>::exact) {
      if (!c1.value.is_exact()) throw MathError("c1 is irrational; use --backend float");
      c1v = *c1.value.exact;
    } else {
      c1v = c1.value.value;
    }
    Table t{{"j", "max_ratio", "bound", "ok"}, {}};
    for (const auto& r : q_decay_check(m, o.k, o.jmax, o.trials, o.seed, c1v, o.budget))
      t.rows.push_back({r.j, r.max_ratio, r.bound, r.ok});
    return t.render(fmt);
  }
  throw ConfigError("unhandled command " + cmd);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--builtin", o.builtin, "sg, sg3, sg4, sg5 or bernoulli:p1,p2,...");
  sub->add_option("--in", o.input, "system JSON file");
  sub->add_option("--backend", o.backend, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--out", o.output, "write the result to this file");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--budget-k", o.budget, "maximum number of words |S|^k enumerated")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (argc < 2 || (argv[1][0] != '-' && !kCommands.count(argv[1]))) {
    err << "unknown subcommand" << (argc < 2 ? "" : std::string(" '") + argv[1] + "'")
        << "; expected one of:";
    for (const auto& c : kCommands) err << " " << c;
    err << "\n";
    return kExitUnknownCommand;
  }

  Options o;
  CLI::App app{"Kusuoka measures from matrix restriction systems", "kusuoka"};
  app.require_subcommand(1);
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&o, name] { o.command = name; });
    return sub;
  };
  add("validate", "check the fixed-point equations, trace and injectivity");
  add("theta1", "spectral radius of M off the identity")
      ->add_option("--schatten", o.schatten, "Schatten p-norm contraction constant instead");
  add("ck", "irreducibility constant c_k")->add_option("--k", o.k)->check(CLI::PositiveNumber);
  add("theta2", "decay constant from c_1..c_kmax")
      ->add_option("--kmax", o.kmax)
      ->check(CLI::PositiveNumber);
  {
    auto* s = add("measure", "nu on all words of a given length, or on one word");
    s->add_option("--depth", o.depth);
    s->add_option("--word", o.word)->each([&o](const std::string&) { o.word_given = true; });
  }
  add("gfun", "finite-prefix approximation of g")->add_option("--prefix", o.prefix)->required();
  {
    auto* s = add("sample", "draw words from the measure");
    s->add_option("--length", o.length);
    s->add_option("--count", o.count);
  }
  {
    auto* s = add("correlate", "correlation gap of two cylinders");
    s->add_option("--alpha", o.alpha);
    s->add_option("--beta", o.beta);
    s->add_option("--nmax", o.nmax)->check(CLI::NonNegativeNumber);
    s->add_option("--rate", o.rate, "decay rate (default theta1)");
  }
  {
    auto* s = add("mixing-bound", "check |gap| <= d rate^n over all cylinder pairs");
    s->add_option("--k", o.k)->check(CLI::PositiveNumber);
    s->add_option("--nmax", o.nmax)->check(CLI::NonNegativeNumber);
    s->add_option("--rate", o.rate, "decay rate (default theta1)");
  }
  add("gasket", "generate the SG_n system")->add_option("--n", o.n)->check(CLI::Range(2, 6));
  {
    auto* s = add("dilation", "compare Q L^k Phi(f) with the conditional expectations of L^k f");
    s->add_option("--k", o.k);
    s->add_option("--f", o.cylinder_file, "cylinder function JSON")->required();
    s->add_option("--level", o.level);
  }
  {
    auto* s = add("qdecay", "decay of martingale components of Q G for random G");
    s->add_option("--k", o.k);
    s->add_option("--jmax", o.jmax);
    s->add_option("--trials", o.trials);
  }
  {
    auto* s = add("report", "validation, constants and mixing table in one JSON document");
    s->add_option("--kmax", o.kmax)->check(CLI::PositiveNumber);
    s->add_option("--nmax", o.nmax)->check(CLI::NonNegativeNumber);
  }
  add("renormalize", "rescale raw maps into a validated system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadConfig;
  }

  try {
    const std::string text = o.backend == "float" ? execute<double>(o) : execute<Surd>(o);
    if (o.output.empty()) out << text;
    else write_text_file(o.output, text);
    return kExitOk;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  } catch (const NotPositiveDefinite& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ConfigError& e) {
    err << "bad configuration: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const UnknownSymbol& e) {
    err << "bad configuration: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMathError;
  }
}

}  // namespace kusuoka::cli
