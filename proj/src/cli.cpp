#include "cogrowth/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "cogrowth/engine.hpp"
#include "cogrowth/grammar.hpp"
#include "cogrowth/io.hpp"
#include "cogrowth/semilinear.hpp"

namespace cogrowth {

namespace {

std::size_t parse_count(const std::string& name, std::string_view digits) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw std::invalid_argument("bad number in '" + name + "'");
  return v;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

GroupDatum resolve_group(const std::string& name) {
  if (name == "dihedral") return dihedral_infinite();
  if (starts_with(name, "z:")) return free_abelian(parse_count(name, std::string_view(name).substr(2)));
  if (starts_with(name, "free:")) return free_group(parse_count(name, std::string_view(name).substr(5)));
  if (starts_with(name, "bs:")) return bs_group(parse_count(name, std::string_view(name).substr(3)));
  if (starts_with(name, "file:")) return load_group(name.substr(5));
  throw std::invalid_argument("unknown group '" + name + "' (z:<n>, free:<m>, bs:<N>, dihedral, file:<path>)");
}

std::pair<Dfa, std::string> resolve_language(const std::string& name, const GroupDatum& g) {
  if (name == "all") return {dfa_all_words(g.generator_names()), name};
  if (name == "reduced") return {dfa_reduced_words(g), name};
  if (starts_with(name, "dfa:")) {
    Dfa d = load_dfa(name.substr(4));
    if (d.alphabet() != g.generator_names())
      throw std::invalid_argument("language " + name + " is not over the generators of " + g.id());
    return {std::move(d), name};
  }
  throw std::invalid_argument("unknown language '" + name + "' (all, reduced, dfa:<path>)");
}

namespace {

struct Emitter {
  std::ostream& fallback;
  std::optional<std::ofstream> file;

  Emitter(std::ostream& out, const std::optional<std::string>& path) : fallback(out) {
    if (path) {
      file.emplace(*path);
      if (!*file) throw ParseError(*path, 0, "cannot open output file");
    }
  }
  std::ostream& stream() { return file ? *file : fallback; }
};

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "engine failure: " << e.what() << '\n';
    return kExitDisagree;
  }
}

// Resolves and validates the group; nullopt after reporting a failure.
std::optional<GroupDatum> checked_group(const RunConfig& config, std::ostream& err) {
  GroupDatum g = resolve_group(config.group);
  if (config.dump) {
    std::ofstream f(*config.dump);
    if (!f) throw ParseError(*config.dump, 0, "cannot open dump file");
    f << write_group(g);
  }
  const ValidationReport report = validate(g);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (!report.ok()) {
    err << "group " << g.id() << " failed validation:\n" << report.to_string();
    return std::nullopt;
  }
  return g;
}

const std::vector<std::string> kEngines{"oracle", "dp", "theorem-a", "theorem-b"};

CogrowthReport run_engine(const std::string& tag, const GroupDatum& g, const Dfa& R, std::size_t N,
                          const EngineOptions& options) {
  if (tag == "oracle") return cogrowth_oracle(g, R, N, options);
  if (tag == "dp") return cogrowth_dp(g, R, N, options);
  if (tag == "theorem-a") return theorem_a_pipeline(g, R, N, options);
  if (tag == "theorem-b") return theorem_b_pipeline(g, R, N, options);
  throw std::invalid_argument("unknown engine '" + tag + "' (oracle, dp, theorem-a, theorem-b, all)");
}

bool oracle_feasible(const GroupDatum& g, std::size_t N) {
  return static_cast<double>(N) * std::log2(static_cast<double>(std::max<std::size_t>(g.generator_count(), 1))) <= 30;
}

EngineOptions options_for(const RunConfig& config, const std::string& language_id) {
  EngineOptions o;
  o.language_id = language_id;
  o.max_configurations = config.max_configurations;
  o.literal_degree = config.literal_degree;
  return o;
}

// Prints a table when the reports disagree on a common degree.
bool agree(const std::vector<CogrowthReport>& reports, std::ostream& os) {
  if (reports.empty()) return true;
  std::size_t top = reports.front().faithful_degree;
  for (const auto& r : reports) top = std::min(top, r.faithful_degree);
  bool same = true;
  for (std::size_t n = 0; n <= top; ++n)
    for (const auto& r : reports) same = same && r.coefficients[n] == reports.front().coefficients[n];
  if (same) return true;
  os << "n";
  for (const auto& r : reports) os << '\t' << r.engine;
  os << '\n';
  for (std::size_t n = 0; n <= top; ++n) {
    bool row_same = true;
    for (const auto& r : reports) row_same = row_same && r.coefficients[n] == reports.front().coefficients[n];
    os << n;
    for (const auto& r : reports) os << '\t' << r.coefficients[n];
    if (!row_same) os << "\t<- differs";
    os << '\n';
  }
  return false;
}

}  // namespace

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto g = checked_group(config, err);
    if (!g) return kExitInput;
    auto [R, language_id] = resolve_language(config.language, *g);
    std::vector<std::string> tags;
    if (config.engine == "all") {
      for (const auto& t : kEngines)
        if (t != "theorem-b" || g->free_rank() == 0) tags.push_back(t);
    } else {
      if (std::find(kEngines.begin(), kEngines.end(), config.engine) == kEngines.end())
        throw std::invalid_argument("unknown engine '" + config.engine + "' (oracle, dp, theorem-a, theorem-b, all)");
      if (config.engine == "theorem-b" && g->free_rank() != 0)
        throw std::invalid_argument("engine theorem-b needs m = 0, group " + g->id() + " has m = " +
                                    std::to_string(g->free_rank()));
      tags.push_back(config.engine);
    }
    const EngineOptions options = options_for(config, language_id);
    std::vector<CogrowthReport> reports;
    for (const auto& t : tags) reports.push_back(run_engine(t, *g, R, config.max_len, options));
    Emitter emit(out, config.output);
    for (const auto& r : reports) emit.stream() << format_report(r);
    return agree(reports, err) ? kExitOk : kExitDisagree;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto g = checked_group(config, err);
    if (!g) return kExitInput;
    auto [R, language_id] = resolve_language(config.language, *g);
    const EngineOptions options = options_for(config, language_id);
    std::vector<CogrowthReport> reports;
    for (const auto& t : kEngines) {
      if (t == "theorem-b" && g->free_rank() != 0) continue;
      if (t == "oracle" && !oracle_feasible(*g, config.max_len)) {
        err << "note: oracle skipped, " << g->generator_count() << "^" << config.max_len << " words\n";
        continue;
      }
      reports.push_back(run_engine(t, *g, R, config.max_len, options));
    }
    Emitter emit(out, config.output);
    std::ostream& os = emit.stream();
    const bool ok = agree(reports, os);
    os << "# group=" << g->id() << " language=" << language_id << " max-len=" << config.max_len << " engines=";
    for (std::size_t k = 0; k < reports.size(); ++k) os << (k ? "," : "") << reports[k].engine;
    os << (ok ? " agree\n" : " DISAGREE\n");
    if (ok && !reports.empty())
      for (std::size_t n = 0; n <= config.max_len; ++n) os << n << '\t' << reports.front().coefficients[n] << '\n';
    return ok ? kExitOk : kExitDisagree;
  });
}

int cmd_semilinear(const SemilinearConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.system.has_value() == config.group.has_value())
      throw std::invalid_argument("give exactly one of --system and --group");
    const DioSystem sys =
        config.system ? load_system(*config.system) : sigma_system(sigma_alphabet(resolve_group(*config.group)));
    Emitter emit(out, config.output);
    std::ostream& os = emit.stream();
    const auto basis = hilbert_basis(sys);
    os << "# hilbert basis: " << basis.size() << " elements\n";
    for (const auto& b : basis) os << "basis " << format_vector(b) << '\n';
    SemilinearDecomposition dec;
    try {
      dec = simple_decomposition(sys, config.degree);
    } catch (const std::logic_error& e) {
      err << "verification failed: " << e.what() << '\n';
      return kExitDisagree;
    }
    os << "# decomposition: " << dec.parts.size() << " parts, verified to degree " << dec.verified_degree << '\n';
    os << write_decomposition(dec);
    std::vector<std::string> names;
    for (std::size_t c = 0; c < sys.cols(); ++c) names.push_back("y" + std::to_string(c + 1));
    os << "series " << nrational_of(dec).to_string(names) << '\n';
    return kExitOk;
  });
}

int cmd_grammar(const GrammarConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Cfg g = [&] {
      if (starts_with(config.grammar, "free:"))
        return free_trivial_grammar(parse_count(config.grammar, std::string_view(config.grammar).substr(5)));
      if (starts_with(config.grammar, "cancellation:"))
        return free_cancellation_grammar(parse_count(config.grammar, std::string_view(config.grammar).substr(13)));
      if (starts_with(config.grammar, "file:")) return load_grammar(config.grammar.substr(5));
      throw std::invalid_argument("unknown grammar '" + config.grammar + "' (free:<m>, cancellation:<m>, file:<path>)");
    }();
    Emitter emit(out, config.output);
    std::ostream& os = emit.stream();
    if (config.word) {
      os << count_derivations(g, g.parse_word(*config.word)) << '\n';
      return kExitOk;
    }
    const auto L = static_cast<Exponent>(config.max_len);
    const TruncatedSeries s = grammar_series(g, L);
    const auto counts = filtered_diagonal_sum(s, [](std::span<const Exponent>) { return true; }, L);
    os << "# grammar=" << config.grammar << " engine=grammar faithful=" << config.max_len << '\n';
    for (std::size_t n = 0; n < counts.size(); ++n) os << n << '\t' << counts[n] << '\n';
    return kExitOk;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Cogrowth series of groups containing Z^n x F_m with finite index"};
  app.require_subcommand(1);

  RunConfig run;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--group", run.group, "z:<n> | free:<m> | bs:<N> | dihedral | file:<path>");
    sub->add_option("--language", run.language, "all | reduced | dfa:<path>");
    sub->add_option("--max-len", run.max_len, "largest word length N");
    sub->add_option("--output", run.output, "write the report here instead of stdout");
    sub->add_option("--dump", run.dump, "write the group datum file here");
    sub->add_option("--literal-degree", run.literal_degree, "length up to which theorem-a forms the literal diagonal");
    sub->add_option("--max-configurations", run.max_configurations, "layer size budget for the layered engines");
  };
  auto* compute = app.add_subcommand("compute", "compute cogrowth coefficients c_0..c_N");
  add_run_flags(compute);
  compute->add_option("--engine", run.engine, "oracle | dp | theorem-a | theorem-b | all");
  auto* verify = app.add_subcommand("verify", "run every applicable engine and compare");
  add_run_flags(verify);

  SemilinearConfig semi;
  auto* semilinear = app.add_subcommand("semilinear", "Hilbert basis and simple decomposition of A z = 0");
  semilinear->add_option("--system", semi.system, "system file");
  semilinear->add_option("--group", semi.group, "use the letter system of this group");
  semilinear->add_option("--degree", semi.degree, "verification degree bound");
  semilinear->add_option("--output", semi.output, "write here instead of stdout");

  GrammarConfig gram;
  auto* grammar = app.add_subcommand("grammar", "letter-count series of a context-free grammar");
  grammar->add_option("--grammar", gram.grammar, "free:<m> | cancellation:<m> | file:<path>");
  grammar->add_option("--max-len", gram.max_len, "largest word length");
  grammar->add_option("--word", gram.word, "count derivation trees of this space-separated word instead");
  grammar->add_option("--output", gram.output, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  if (compute->parsed()) return cmd_compute(run, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(run, std::cout, std::cerr);
  if (semilinear->parsed()) return cmd_semilinear(semi, std::cout, std::cerr);
  return cmd_grammar(gram, std::cout, std::cerr);
}

}  // namespace cogrowth
