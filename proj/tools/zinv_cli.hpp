#pragma once

// Command-line front end: invert, table, compare, identities.
// Exit codes: 0 success, 1 numerical failure, 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zinv/zinv.hpp"

namespace zinv::cli {

inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string expression;
  std::string batch_file;
  int n_max = 50;
  std::string method = "proposed";
  std::string format = "text";
  double tol = CompareOptions{}.tol;
  int fuzz = 0;
  std::uint64_t seed = kDefaultSeed;
  bool latex = false;
  bool tol_set = false;
};

/// One batch entry: a plain expression or a JSON object with an "input" key.
struct BatchEntry {
  int line;
  std::string expression;
};

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::vector<BatchEntry> read_batch(std::istream& in) {
  std::vector<BatchEntry> out;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    std::string text = trim(raw);
    if (!text.empty() && text.front() == '{') {
      const json j = json::parse(text, nullptr, false);
      if (j.is_discarded() || !j.contains("input") || !j["input"].is_string())
        throw ParseError("JSON batch line needs a string \"input\" field", line, 1);
      out.push_back({line, j["input"].get<std::string>()});
      continue;
    }
    if (const auto hash = text.find('#'); hash != std::string::npos) text = trim(text.substr(0, hash));
    if (!text.empty()) out.push_back({line, text});
  }
  return out;
}

inline json to_json(const ClosedFormTerm& term) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Impulse>) {
          return {{"kind", "impulse"}, {"amp", t.amp}, {"index", t.index}};
        } else if constexpr (std::is_same_v<T, RealPole>) {
          return {{"kind", "real_pole"}, {"A", t.A}, {"r", t.r}, {"k", t.k}};
        } else {
          return {{"kind", "quad_pole"}, {"A1", t.A1},           {"A0", t.A0},
                  {"a", t.a},            {"b", t.b},             {"k", t.k},
                  {"r", std::hypot(t.a, t.b)}, {"theta", std::atan2(t.b, t.a)}};
        }
      },
      term);
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int invert_one(const std::string& text) {
    const ParsedRational p = parse_rational_expr(text);
    const ClosedFormExpr e = p.factored ? invert(p.rational, *p.factored) : invert(p.rational);
    const std::string formula = render(e, cfg_.latex ? RenderFormat::latex : RenderFormat::text);
    if (cfg_.format == "json") {
      json j{{"input", text}, {"poly_part", json::array()}, {"terms", json::array()}, {"warnings", e.warnings}};
      for (const auto& t : e.terms) {
        if (const auto* imp = std::get_if<Impulse>(&t); imp && imp->index < 0) {
          j["poly_part"].push_back({{"power", -imp->index}, {"coeff", imp->amp}});
          continue;
        }
        j["terms"].push_back(to_json(t));
      }
      j["formula"] = formula;
      out_ << j.dump() << "\n";
    } else {
      out_ << formula << "\n";
      for (const auto& w : e.warnings) err_ << "warning: " << w << "\n";
    }
    return kOk;
  }

  int table_one(const std::string& text) {
    const ParsedRational p = parse_rational_expr(text);
    const auto factors = [&] { return p.factored ? *p.factored : detail::factor_or_empty(p.rational); };
    const std::vector<std::string> all{"proposed", "longdiv", "moreira", "juric", "residue"};
    const std::vector<std::string> names = cfg_.method == "all" ? all : std::vector<std::string>{cfg_.method};
    std::vector<SequenceTable> tables;
    for (const auto& m : names) {
      if (m == "proposed") {
        const ClosedFormExpr e = invert(p.rational, factors());
        for (const auto& w : e.warnings) err_ << "warning: " << w << "\n";
        tables.push_back(eval_sequence(e, cfg_.n_max));
      }
      else if (m == "longdiv") tables.push_back(longdiv_series(p.rational, cfg_.n_max));
      else if (m == "moreira") tables.push_back(moreira_invert(p.rational, factors(), cfg_.n_max));
      else if (m == "juric") tables.push_back(juric_invert(p.rational, factors(), cfg_.n_max));
      else tables.push_back(residue_series(p.rational, factors(), cfg_.n_max));
    }

    if (cfg_.format == "json") {
      json j{{"input", text}, {"n_max", cfg_.n_max}, {"methods", json::object()}};
      for (const auto& t : tables) j["methods"][t.method_tag] = t.values;
      out_ << j.dump() << "\n";
    } else if (cfg_.format == "csv") {
      out_ << "n";
      if (tables.size() == 1)
        out_ << ",x";
      else
        for (const auto& t : tables) out_ << "," << t.method_tag;
      out_ << "\n";
      for (int n = 0; n <= cfg_.n_max; ++n) {
        out_ << n;
        for (const auto& t : tables) out_ << "," << format_exact(t.values[static_cast<std::size_t>(n)]);
        out_ << "\n";
      }
    } else {
      out_ << "n";
      for (const auto& t : tables) out_ << "\t" << t.method_tag;
      out_ << "\n";
      for (int n = 0; n <= cfg_.n_max; ++n) {
        out_ << n;
        for (const auto& t : tables) out_ << "\t" << format_general(t.values[static_cast<std::size_t>(n)], 12);
        out_ << "\n";
      }
    }
    return kOk;
  }

  int compare_one(const std::string& text, const RationalFunction& x, const std::optional<FactoredDenominator>& f) {
    CompareOptions opt;
    opt.tol = cfg_.tol;
    const ComparisonReport rep = compare_methods(x, f, cfg_.n_max, opt);
    if (cfg_.format == "json") {
      json j{{"input", text},
             {"n_max", cfg_.n_max},
             {"tol", cfg_.tol},
             {"scaled_tolerance", rep.scaled_tolerance},
             {"anchor", rep.anchor},
             {"methods", json::array()},
             {"pairs", json::array()},
             {"residues", json::array()},
             {"pass", rep.pass}};
      for (const auto& m : rep.methods)
        j["methods"].push_back({{"method", m.method}, {"ok", m.error.empty()}, {"error", m.error}, {"millis", m.millis}});
      for (const auto& p : rep.pairs)
        j["pairs"].push_back({{"first", p.first}, {"second", p.second}, {"max_dev", p.max_dev}});
      for (const auto& r : rep.residues)
        j["residues"].push_back({{"n", r.n}, {"value", r.value}, {"anchor", r.anchor}, {"deviation", r.deviation}});
      if (!rep.residue_error.empty()) j["residue_error"] = rep.residue_error;
      out_ << j.dump() << "\n";
    } else if (cfg_.format == "csv") {
      out_ << "input,first,second,max_dev,pass\n";
      for (const auto& p : rep.pairs)
        out_ << quote(text) << "," << p.first << "," << p.second << "," << format_exact(p.max_dev) << ","
             << (p.max_dev <= rep.scaled_tolerance ? "true" : "false") << "\n";
    } else {
      out_ << "input: " << text << "\n";
      for (const auto& m : rep.methods) {
        out_ << "  " << pad(m.method, 10) << pad(format_general(m.millis, 3) + " ms", 14);
        out_ << (m.error.empty() ? "ok" : "error: " + m.error) << "\n";
      }
      for (const auto& p : rep.pairs)
        out_ << "  " << pad(p.first + " vs " + p.second, 24) << "max dev " << format_general(p.max_dev, 3) << "\n";
      for (const auto& r : rep.residues)
        out_ << "  residue n=" << pad(std::to_string(r.n), 4) << "dev " << format_general(r.deviation, 3) << "\n";
      if (!rep.residue_error.empty()) out_ << "  residue error: " << rep.residue_error << "\n";
      out_ << "  tolerance " << format_general(rep.scaled_tolerance, 3) << " (scaled)\n";
      out_ << (rep.pass ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass ? kOk : kFail;
  }

  int compare_text(const std::string& text) {
    const ParsedRational p = parse_rational_expr(text);
    return compare_one(text, p.rational, p.factored);
  }

  int fuzz() {
    int worst = kOk;
    int failures = 0;
    const auto corpus = generate_corpus(cfg_.seed, cfg_.fuzz);
    std::ostringstream sink;
    for (const auto& c : corpus) {
      const bool verbose = cfg_.format != "text";
      Runner inner(cfg_, verbose ? out_ : sink, err_);
      const int code = inner.compare_one(c.text, c.x, c.f);
      if (code != kOk) {
        ++failures;
        if (!verbose) out_ << "FAIL " << c.text << "\n";
      }
      worst = std::max(worst, code);
    }
    if (cfg_.format == "text")
      out_ << "fuzz: " << corpus.size() << " cases, seed " << cfg_.seed << ", " << failures << " failures\n"
           << (failures == 0 ? "PASS" : "FAIL") << "\n";
    return worst;
  }

  int identities() {
    const IdentityReport sums = sweep_internal_summation(6, 40);
    const IdentityReport surj = sweep_surjection(10);
    const IdentityReport conv = sweep_convolution(4, 40, cfg_.tol_set ? cfg_.tol : 1e-9);
    const std::vector<std::pair<const IdentityReport*, std::string>> reports{
        {&sums, "k≤6, n≤40"}, {&surj, "σ≤10"}, {&conv, "k≤4, n≤40"}};
    bool ok = true;
    json j = json::array();
    for (const auto& [r, scope] : reports) {
      ok = ok && r->failures == 0;
      if (cfg_.format == "json") {
        j.push_back({{"name", r->name},
                     {"cases", r->cases},
                     {"failures", r->failures},
                     {"max_deviation", r->max_deviation},
                     {"counterexamples", r->counterexamples}});
        continue;
      }
      out_ << r->name << ": " << r->failures << " failures (" << scope << ")";
      if (r == &conv) out_ << ", max dev " << format_general(r->max_deviation, 3);
      out_ << "\n";
      for (const auto& c : r->counterexamples) out_ << "  counterexample: " << c << "\n";
    }
    if (cfg_.format == "json") out_ << j.dump() << "\n";
    return ok ? kOk : kFail;
  }

  /// Runs `fn` on the single expression or every batch entry; returns the worst exit code.
  int each_input(const std::function<int(const std::string&)>& fn) {
    std::vector<BatchEntry> entries;
    if (!cfg_.batch_file.empty()) {
      std::ifstream in(cfg_.batch_file);
      if (!in) {
        err_ << "error: cannot open batch file " << cfg_.batch_file << "\n";
        return kUsage;
      }
      try {
        entries = read_batch(in);
      } catch (const ParseError& e) {
        err_ << cfg_.batch_file << ":" << e.what() << "\n";
        return kUsage;
      }
    } else {
      entries.push_back({0, cfg_.expression});
    }
    int worst = kOk;
    for (const auto& entry : entries) {
      const std::string where = entry.line > 0 ? cfg_.batch_file + ":" + std::to_string(entry.line) + ": " : "";
      try {
        worst = std::max(worst, fn(entry.expression));
      } catch (const ParseError& e) {
        err_ << where << "parse error: " << e.what() << "\n";
        worst = std::max(worst, kUsage);
      } catch (const std::exception& e) {
        err_ << where << "error: " << e.what() << "\n";
        worst = std::max(worst, kFail);
      }
    }
    return worst;
  }

 private:
  static std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s + " ";
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse Z-transform of rational functions by real partial fractions"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("expr", cfg.expression, "rational function of z, e.g. \"1/(z^2+1)\"");
    sub->add_option("--batch", cfg.batch_file, "file with one expression per line ('#' starts a comment)");
  };
  const auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(allowed))->capture_default_str();
  };

  CLI::App* inv = app.add_subcommand("invert", "closed-form x[n]");
  add_input(inv);
  add_format(inv, {"text", "json"});
  inv->add_flag("--latex", cfg.latex, "render the formula as LaTeX");

  CLI::App* tab = app.add_subcommand("table", "tabulate x[0..n]");
  add_input(tab);
  add_format(tab, {"text", "json", "csv"});
  tab->add_option("--n", cfg.n_max, "largest index")->check(CLI::NonNegativeNumber)->capture_default_str();
  tab->add_option("--method", cfg.method, "inversion method")
      ->check(CLI::IsMember({"proposed", "longdiv", "moreira", "juric", "residue", "all"}))
      ->capture_default_str();

  CLI::App* cmp = app.add_subcommand("compare", "cross-check every method");
  add_input(cmp);
  add_format(cmp, {"text", "json", "csv"});
  cmp->add_option("--n", cfg.n_max, "largest index")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmp->add_option("--tol", cfg.tol, "tolerance, scaled by max(1, max |x[n]|)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp->add_option("--fuzz", cfg.fuzz, "compare on N seeded random rationals")->check(CLI::PositiveNumber);
  cmp->add_option("--seed", cfg.seed, "seed for --fuzz")->capture_default_str();

  CLI::App* ids = app.add_subcommand("identities", "run the combinatorial identity sweeps");
  add_format(ids, {"text", "json"});
  ids->add_option("--tol", cfg.tol, "absolute tolerance of the convolution sweep")
      ->check(CLI::PositiveNumber)
      ->default_str("1e-09");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  cfg.tol_set = ids->count("--tol") > 0;
  Runner runner(cfg, out, err);
  if (*ids) return runner.identities();

  const bool has_input = !cfg.expression.empty() || !cfg.batch_file.empty();
  if (*cmp && cfg.fuzz > 0) {
    if (has_input) {
      err << "error: --fuzz takes no expression or batch file\n";
      return kUsage;
    }
    return runner.fuzz();
  }
  if (!has_input) {
    err << "error: an expression or --batch FILE is required\n";
    return kUsage;
  }
  if (!cfg.expression.empty() && !cfg.batch_file.empty()) {
    err << "error: give an expression or --batch FILE, not both\n";
    return kUsage;
  }
  if (*inv) return runner.each_input([&](const std::string& s) { return runner.invert_one(s); });
  if (*tab) return runner.each_input([&](const std::string& s) { return runner.table_one(s); });
  return runner.each_input([&](const std::string& s) { return runner.compare_text(s); });
}

}  // namespace zinv::cli
