#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smallcancel/antichain.hpp"
#include "smallcancel/dehn.hpp"
#include "smallcancel/encoding.hpp"
#include "smallcancel/filtration.hpp"
#include "smallcancel/gamma_closure.hpp"
#include "smallcancel/tower.hpp"

namespace smallcancel {

// One batch run per invocation. Reports are line-oriented "key: value" text
// closed by a "RESULT: PASS|FAIL" trailer; identical configs produce
// byte-identical reports. Exit codes: 0 all checks pass, 1 check failure,
// 2 parse or usage error, 3 resource guard tripped.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> positional;
  std::optional<std::string> group_file, spec_file, relator_file, out_file;
  Rational eta = Rational(1, 6);
  std::optional<long long> depth, count;
  long long max_relators = 200000;
  long long max_word_len = 1000000;
};

namespace detail {

inline long long cli_int(const std::string& flag, const std::string& value) {
  try {
    size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError(flag + " expects an integer, got '" + value + "'");
  }
}

inline Rational cli_eta(const std::string& value) {
  size_t slash = value.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == value.size())
    throw ParseError("--eta expects <p/q>, got '" + value + "'");
  long long p = cli_int("--eta", value.substr(0, slash));
  long long q = cli_int("--eta", value.substr(slash + 1));
  if (p < 1 || q < 1) throw ParseError("--eta expects positive numerator and denominator");
  if (!(p < q)) throw ParseError("--eta must lie strictly between 0 and 1");
  return Rational(p, q);
}

}  // namespace detail

inline RunConfig parse_cli_args(const std::vector<std::string>& args) {
  if (args.empty())
    throw ParseError(
        "usage: <check-c16|build-extension|solve-word|gamma-chain|dominate|filtration> "
        "[flags...]");
  RunConfig cfg;
  cfg.subcommand = args[0];
  const std::vector<std::string> known = {"check-c16", "build-extension", "solve-word",
                                          "gamma-chain", "dominate", "filtration"};
  if (std::find(known.begin(), known.end(), cfg.subcommand) == known.end())
    throw ParseError("unknown subcommand '" + cfg.subcommand + "'");
  for (size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      cfg.positional.push_back(a);
      continue;
    }
    if (i + 1 >= args.size()) throw ParseError(a + " is missing its value");
    const std::string& v = args[++i];
    if (a == "--group")
      cfg.group_file = v;
    else if (a == "--spec")
      cfg.spec_file = v;
    else if (a == "--relators")
      cfg.relator_file = v;
    else if (a == "--out")
      cfg.out_file = v;
    else if (a == "--eta")
      cfg.eta = detail::cli_eta(v);
    else if (a == "--depth")
      cfg.depth = detail::cli_int(a, v);
    else if (a == "--count")
      cfg.count = detail::cli_int(a, v);
    else if (a == "--max-relators")
      cfg.max_relators = detail::cli_int(a, v);
    else if (a == "--max-word-len")
      cfg.max_word_len = detail::cli_int(a, v);
    else
      throw ParseError("unknown flag '" + a + "'");
  }
  if (cfg.depth && *cfg.depth < 1) throw ParseError("--depth must be at least 1");
  if (cfg.count && *cfg.count < 1) throw ParseError("--count must be at least 1");
  if (cfg.max_relators < 1) throw ParseError("--max-relators must be at least 1");
  if (cfg.max_word_len < 1) throw ParseError("--max-word-len must be at least 1");
  return cfg;
}

// A relator file names its factor group (path relative to the file) and
// lists one relator word per `word` line, in the standard token syntax.
struct RelatorInput {
  FreeProductContext ctx;
  std::vector<NormalForm> gamma;
};

inline RelatorInput parse_relator_text(const std::string& text,
                                       const std::filesystem::path& base_dir) {
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_end = false;
  std::optional<FreeProductContext> ctx;
  std::vector<NormalForm> gamma;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (saw_end)
      throw ParseError("relator line " + std::to_string(lineno) + ": content after end");
    if (!saw_header) {
      if (word != "relators")
        throw ParseError("relator line " + std::to_string(lineno) +
                         ": expected relators header");
      saw_header = true;
      continue;
    }
    if (word == "end") {
      saw_end = true;
      continue;
    }
    if (word == "group") {
      std::string path, junk;
      if (!(ls >> path) || (ls >> junk))
        throw ParseError("relator line " + std::to_string(lineno) + ": group expects one path");
      if (ctx)
        throw ParseError("relator line " + std::to_string(lineno) + ": duplicate group line");
      std::filesystem::path p(path);
      if (p.is_relative()) p = base_dir / p;
      ctx = FreeProductContext::with_cyclic(parse_group_file(p.string()));
      continue;
    }
    if (word != "word")
      throw ParseError("relator line " + std::to_string(lineno) +
                       ": expected group, word, or end, got " + word);
    if (!ctx)
      throw ParseError("relator line " + std::to_string(lineno) +
                       ": word before the group line");
    std::string rest;
    std::getline(ls, rest);
    Word w = parse_word(*ctx, rest);
    if (w.empty())
      throw ParseError("relator line " + std::to_string(lineno) + ": empty relator word");
    gamma.push_back(normalize(*ctx, w));
  }
  if (!saw_header) throw ParseError("relator text has no header");
  if (!saw_end) throw ParseError("relator text has no end");
  if (!ctx) throw ParseError("relator text has no group line");
  if (gamma.empty()) throw ParseError("relator text has no word lines");
  return RelatorInput{std::move(*ctx), std::move(gamma)};
}

inline RelatorInput parse_relator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open relator file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_relator_text(buf.str(), std::filesystem::path(path).parent_path());
}

namespace detail {

inline std::string word_or_identity(const FreeProductContext& ctx, const NormalForm& w) {
  return w.size() == 0 ? std::string("1") : format_word(ctx, w);
}

// Symmetrized sets grow by at most 2*(len+1) members per relator; guard
// before doing the quadratic piece scan.
inline void guard_symmetrized_size(const std::vector<NormalForm>& gamma, long long cap) {
  long long bound = 0;
  for (const NormalForm& w : gamma) bound += 2 * (length(w) + 1);
  if (bound > cap)
    throw ResourceError("up to " + std::to_string(bound) +
                        " symmetrized relators, cap is " + std::to_string(cap) +
                        " (raise --max-relators)");
}

inline int cli_check_c16(const RunConfig& cfg, std::ostream& rep) {
  if (!cfg.relator_file) throw ParseError("check-c16 requires --relators <file>");
  RelatorInput in = parse_relator_file(*cfg.relator_file);
  rep << "group: " << in.ctx.factor(1).name() << "\n";
  rep << "relators: " << in.gamma.size() << "\n";
  guard_symmetrized_size(in.gamma, cfg.max_relators);
  SymmetrizedSet sym = symmetrize(in.ctx, in.gamma);
  if (static_cast<long long>(sym.relators.size()) > cfg.max_relators)
    throw ResourceError("symmetrized set has " + std::to_string(sym.relators.size()) +
                        " relators, cap is " + std::to_string(cfg.max_relators));
  rep << "symmetrized-count: " << sym.relators.size() << "\n";
  rep << "eta: " << cfg.eta.numerator() << "/" << cfg.eta.denominator() << "\n";
  CPrimeOutcome out = check_cprime(in.ctx, sym, cfg.eta);
  if (out.ok()) {
    rep << "min-relator-length: " << out.certificate->min_relator_length << "\n";
    rep << "max-piece-length: " << out.certificate->max_piece_length << "\n";
    rep << "verdict: certified\n";
    return 0;
  }
  rep << "violation: " << out.violation->message << "\n";
  rep << "verdict: violated\n";
  return 1;
}

inline int cli_build_extension(const RunConfig& cfg, std::ostream& rep) {
  if (!cfg.spec_file) throw ParseError("build-extension requires --spec <file>");
  EncodingSpec spec = parse_encoding_spec_file(*cfg.spec_file);
  rep << "group: " << spec.g.name() << "\n";
  rep << "order: " << spec.g.order() << "\n";
  rep << "n: " << spec.n << "\n";
  rep << "k: " << spec.k << "\n";
  long long tuples = encoding_tuple_count(spec.g, spec.n);
  rep << "tuples: " << tuples << "\n";
  // Each tuple contributes one relator of at most 2nk+1 letters.
  if (tuples * 2 * (2 * spec.n * spec.k + 2) > cfg.max_relators)
    throw ResourceError("the symmetrized set could reach " +
                        std::to_string(tuples * 2 * (2 * spec.n * spec.k + 2)) +
                        " relators, cap is " + std::to_string(cfg.max_relators) +
                        " (raise --max-relators)");
  ExtensionGroup ext = build_extension(spec, cfg.eta);
  rep << "relators: " << ext.build.gamma.size() << "\n";
  rep << "duplicate-relators: " << ext.build.duplicates.size() << "\n";
  rep << "case-general: " << ext.build.count_f_other << "\n";
  rep << "case-trivial: " << ext.build.count_f_trivial << "\n";
  rep << "case-merged: " << ext.build.count_f_last << "\n";
  long long min_len = 0, max_len = 0;
  for (const NormalForm& w : ext.build.gamma) {
    long long l = length(w);
    if (min_len == 0 || l < min_len) min_len = l;
    if (l > max_len) max_len = l;
  }
  rep << "min-relator-length: " << min_len << "\n";
  rep << "max-relator-length: " << max_len << "\n";
  rep << "symmetrized-count: " << ext.relators.relators.size() << "\n";
  rep << "symmetrized-min-length: " << ext.relators.eta_certificate->min_relator_length
      << "\n";
  rep << "max-piece-length: " << ext.relators.eta_certificate->max_piece_length << "\n";
  rep << "eta: " << cfg.eta.numerator() << "/" << cfg.eta.denominator() << "\n";
  rep << "certified: yes\n";
  DehnOptions opts;
  opts.max_word_letters = cfg.max_word_len;
  Lemma24Report ver = verify_lemma24(ext, opts);
  rep << "embedding-pairs: " << ver.pair_checks << "\n";
  rep << "embedding-check: " << (ver.embedding_ok ? "pass" : "fail") << "\n";
  rep << "fresh-generator-checks: " << ver.c_checks << "\n";
  rep << "fresh-generator-check: " << (ver.c_fresh_ok ? "pass" : "fail") << "\n";
  rep << "encoding-tuples: " << ver.tuple_checks << "\n";
  rep << "encoding-check: " << (ver.encodes_ok ? "pass" : "fail") << "\n";
  for (const std::string& f : ver.failures) rep << "failure: " << f << "\n";
  return ver.ok() ? 0 : 1;
}

inline int cli_solve_word(const RunConfig& cfg, std::ostream& rep) {
  if (!cfg.relator_file) throw ParseError("solve-word requires --relators <file>");
  RelatorInput in = parse_relator_file(*cfg.relator_file);
  std::string joined;
  for (const std::string& p : cfg.positional) {
    if (!joined.empty()) joined += ' ';
    joined += p;
  }
  Word raw = parse_word(in.ctx, joined);
  guard_symmetrized_size(in.gamma, cfg.max_relators);
  SymmetrizedSet sym = symmetrize_and_certify(in.ctx, in.gamma, cfg.eta);
  rep << "relators: " << sym.relators.size() << "\n";
  DehnOptions opts;
  opts.max_word_letters = cfg.max_word_len;
  DehnSolver solver(in.ctx, sym, opts);
  NormalForm w = normalize(in.ctx, raw);
  rep << "input: " << word_or_identity(in.ctx, w) << "\n";
  rep << "input-length: " << length(w) << "\n";
  NormalForm red = solver.reduce(w);
  rep << "reduced: " << word_or_identity(in.ctx, red) << "\n";
  rep << "reduced-length: " << length(red) << "\n";
  rep << "identity: " << (solver.is_identity(w) ? "yes" : "no") << "\n";
  return 0;
}

inline int cli_gamma_chain(const RunConfig& cfg, std::ostream& rep) {
  if (!cfg.group_file) throw ParseError("gamma-chain requires --group <file>");
  FactorGroup g = parse_group_file(*cfg.group_file);
  ElementSet seed;
  for (const std::string& name : cfg.positional) {
    auto idx = g.element_index(name);
    if (!idx) throw ParseError("'" + name + "' is not an element of " + g.name());
    seed.insert(*idx);
  }
  rep << "group: " << g.name() << "\n";
  auto names = [&](const ElementSet& s) {
    if (s.empty()) return std::string("(empty)");
    std::string out;
    for (int e : s) {
      if (!out.empty()) out += ' ';
      out += g.element_name(e);
    }
    return out;
  };
  rep << "seed: " << names(seed) << "\n";
  GammaChain chain = gamma_chain(g, seed);
  for (size_t i = 0; i < chain.levels.size(); ++i)
    rep << "level-" << i << ": " << names(chain.levels[i]) << "\n";
  rep << "stabilized-at: " << *chain.stabilized_at << "\n";
  rep << "closure-size: " << chain.fixpoint().size() << "\n";
  return 0;
}

inline int cli_dominate(const RunConfig& cfg, std::ostream& rep) {
  if (cfg.positional.size() != 1)
    throw ParseError("dominate expects one tower rule: interval-tower, constant-tower, or a "
                     "tower file path");
  if (!cfg.depth) throw ParseError("dominate requires --depth <n>");
  const std::string& rule = cfg.positional[0];
  ChTower tower = rule == "interval-tower"   ? ChTower::interval()
                  : rule == "constant-tower" ? ChTower::constant()
                                             : parse_tower_file(rule);
  rep << "tower: " << rule << "\n";
  rep << "depth: " << *cfg.depth << "\n";
  DominationReport dom = verify_domination(tower, *cfg.depth);
  rep << "g-table:";
  for (long long v : dom.g) rep << " " << v;
  rep << "\n";
  rep << "walks-checked: " << dom.branches_checked << "\n";
  if (!dom.ok) rep << "failure: " << dom.failure << "\n";
  rep << "domination: " << (dom.ok ? "pass" : "fail") << "\n";
  return dom.ok ? 0 : 1;
}

inline int cli_filtration(const RunConfig& cfg, std::ostream& rep) {
  if (cfg.positional.size() != 1 || cfg.positional[0] != "support-filtration")
    throw ParseError("filtration expects the instance name support-filtration");
  long long depth = cfg.depth.value_or(8);
  if (depth > 12) throw ParseError("--depth for the filtration check is capped at 12");
  long long count = cfg.count.value_or(5);
  rep << "instance: support-filtration\n";
  rep << "levels-checked: " << depth << "\n";
  FiltrationCheck fc = check_support_filtration(depth);
  for (const std::string& v : fc.violations) rep << "violation: " << v << "\n";
  rep << "filtration-valid: " << (fc.proper_filtration ? "yes" : "no") << "\n";
  rep << "count: " << count << "\n";
  AntichainResult res = extract_antichain(cofinite_oracle, count);
  for (size_t i = 0; i < res.antichain.size(); ++i)
    rep << "antichain-" << i << ": " << format_fincof(res.antichain[i]) << "\n";
  rep << "antichain-levels:";
  for (const FinCofSet& s : res.antichain)
    rep << " " << SupportFiltration::induced_f(s);
  rep << "\n";
  bool disjoint = true;
  for (size_t i = 0; i < res.antichain.size(); ++i)
    for (size_t j = i + 1; j < res.antichain.size(); ++j)
      if (!(fincof_meet(res.antichain[i], res.antichain[j]) == fincof_bottom()))
        disjoint = false;
  bool increasing = true;
  for (size_t i = 0; i + 1 < res.antichain.size(); ++i)
    if (!(SupportFiltration::induced_f(res.antichain[i]) <
          SupportFiltration::induced_f(res.antichain[i + 1])))
      increasing = false;
  rep << "disjoint: " << (disjoint ? "pass" : "fail") << "\n";
  rep << "increasing: " << (increasing ? "pass" : "fail") << "\n";
  return (fc.proper_filtration && disjoint && increasing) ? 0 : 1;
}

inline int cli_dispatch(const RunConfig& cfg, std::ostream& rep) {
  rep << "command: " << cfg.subcommand << "\n";
  if (cfg.subcommand == "check-c16") return cli_check_c16(cfg, rep);
  if (cfg.subcommand == "build-extension") return cli_build_extension(cfg, rep);
  if (cfg.subcommand == "solve-word") return cli_solve_word(cfg, rep);
  if (cfg.subcommand == "gamma-chain") return cli_gamma_chain(cfg, rep);
  if (cfg.subcommand == "dominate") return cli_dominate(cfg, rep);
  return cli_filtration(cfg, rep);
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  std::ostringstream rep;
  int code = 0;
  std::optional<std::ofstream> out_file;
  try {
    RunConfig cfg = parse_cli_args(args);
    if (cfg.out_file) {
      out_file.emplace(*cfg.out_file);
      if (!*out_file) throw ParseError("cannot open output file " + *cfg.out_file);
    }
    code = detail::cli_dispatch(cfg, rep);
  } catch (const ParseError& e) {
    rep << "error: " << e.what() << "\n";
    code = 2;
  } catch (const ResourceError& e) {
    rep << "error: " << e.what() << "\n";
    code = 3;
  } catch (const CheckError& e) {
    rep << "error: " << e.what() << "\n";
    code = 1;
  }
  rep << "RESULT: " << (code == 0 ? "PASS" : "FAIL") << "\n";
  const std::string text = rep.str();
  out << text;
  if (out_file && *out_file) *out_file << text;
  return code;
}

}  // namespace smallcancel
