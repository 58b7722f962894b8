#include "orelco/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "orelco/complex_io.hpp"
#include "orelco/covers.hpp"
#include "orelco/dehn.hpp"
#include "orelco/error.hpp"
#include "orelco/folding.hpp"
#include "orelco/harness.hpp"
#include "orelco/orbicomplex.hpp"
#include "orelco/pipeline.hpp"
#include "orelco/stacking.hpp"
#include "orelco/text.hpp"

namespace orelco {

namespace {

struct Options {
  std::string format = "text";
  std::string out_path;
  std::optional<std::uint64_t> seed;

  std::string group_path;
  std::string gens_names;
  std::string relator;
  std::uint32_t branch = 0;

  std::string word;
  std::string threshold = "half";
  bool diagram = false;

  std::uint32_t max_degree = 8;
  std::string quotient_path;

  std::string subgroup_gens;
  std::size_t max_word_len = 12;
  std::size_t max_stages = 200;
  std::size_t max_steps = 1000000;
  std::size_t max_candidates = 500000;

  std::string complex_path;
  bool permissive = false;
  bool campaign = false;
  std::size_t trials = 1000;
  std::size_t cover_trials = 50;
  std::uint32_t max_vertices = 6;
  double cell_prob = 0.7;
  std::string suites = "wcycles,folding,covers";

  std::string source_path;
  std::string target_path;
  std::string morphism_path;
  std::string order = "lowest";
  std::string trace_path;

  std::string what = "complex";
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("ORELCO_SEED")) return parse_uint(env, "ORELCO_SEED");
  return 1;
}

class Session {
 public:
  Session(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  void config(const std::string& key, const std::string& value) {
    out_ << "# " << key << ": " << value << '\n';
  }

  // Primary artifact: to --out when given, otherwise to stdout.
  void emit(const std::string& text) {
    if (o_.out_path.empty())
      out_ << text;
    else
      write_file(o_.out_path, text);
  }

  std::ostream& out() { return out_; }

 private:
  const Options& o_;
  std::ostream& out_;
};

OrbicomplexRef load_group(const Options& o) {
  if (o.group_path.empty())
    throw Error(ErrorKind::precondition, "missing_group", "--group is required");
  return std::make_shared<const OneRelatorOrbicomplex>(parse_orbicomplex(read_file(o.group_path)));
}

std::vector<Word> parse_generator_list(const std::string& text, const Alphabet& alphabet) {
  std::vector<Word> out;
  std::size_t from = 0;
  for (;;) {
    const std::size_t comma = text.find(',', from);
    const std::string part = text.substr(from, comma == std::string::npos ? comma : comma - from);
    if (!trim(part).empty()) out.push_back(parse_word(part, alphabet));
    if (comma == std::string::npos) break;
    from = comma + 1;
  }
  return out;
}

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string describe(const OneRelatorOrbicomplex& x) {
  std::ostringstream s;
  s << "# vertices " << x.gamma.vertex_count() << " edges " << x.gamma.edge_count()
    << " relator_length " << x.relator_length() << " branch " << x.branch << '\n';
  return s.str();
}

int group_define(const Options& o, Session& s) {
  OneRelatorOrbicomplex x;
  if (!o.group_path.empty()) {
    s.config("group", o.group_path);
    x = *load_group(o);
  } else {
    if (o.gens_names.empty() || o.relator.empty() || o.branch == 0)
      throw Error(ErrorKind::precondition, "missing_group",
                  "give --group, or --generators, --relator and --branch");
    s.config("generators", o.gens_names);
    s.config("relator", o.relator);
    s.config("branch", std::to_string(o.branch));
    const std::vector<std::string> names = split_ws(o.gens_names);
    x = rose_orbicomplex(names, parse_word(o.relator, Alphabet(names)), o.branch);
  }
  s.out() << describe(x);
  s.emit(format_orbicomplex(x));
  return exit_ok;
}

int word_solve(const Options& o, Session& s) {
  const OrbicomplexRef x = load_group(o);
  s.config("group", o.group_path);
  s.config("word", o.word);
  s.config("threshold", o.threshold);
  const Alphabet alphabet = rose_alphabet(x->gamma);
  const Word u = parse_word(o.word, alphabet);
  const DehnThreshold t = o.threshold == "newman" ? DehnThreshold::newman : DehnThreshold::half;
  const DehnResult r = dehn_solve(u, *x, t);
  std::ostringstream text;
  text << (r.trivial ? "trivial" : "nontrivial") << '\n';
  text << "steps " << r.trace.size() << '\n';
  text << format_dehn_trace(r.trace);
  if (!r.trivial) text << "remnant " << format_word(r.remnant, alphabet) << '\n';
  if (r.trivial && o.diagram) {
    const VanKampenDiagram d = build_reduced_diagram(u, x);
    text << "# diagram\n" << format_complex(d.diagram);
  }
  s.emit(text.str());
  return exit_ok;
}

int cover_build(const Options& o, Session& s) {
  const OrbicomplexRef x = load_group(o);
  const Alphabet alphabet = rose_alphabet(x->gamma);
  const std::uint64_t seed = resolve_seed(o);
  s.config("group", o.group_path);
  FiniteQuotient q;
  if (!o.quotient_path.empty()) {
    s.config("quotient", o.quotient_path);
    q = parse_quotient(read_file(o.quotient_path), alphabet);
  } else {
    s.config("max_degree", std::to_string(o.max_degree));
    s.config("seed", std::to_string(seed));
    q = find_exponent_n_quotient(*x, o.max_degree, seed);
  }
  const UnwrappedCover c = build_unwrapped_cover(x, q);
  const CoverReport r = verify_cover(c);
  for (const std::string& line : split_lines(format_quotient(q, alphabet)))
    s.out() << "# " << line << '\n';
  s.out() << "# chi " << rational_text(r.chi) << " expected " << rational_text(r.expected) << '\n';
  s.out() << "# verify " << (r.pass ? "pass" : "fail") << '\n';
  for (const std::string& f : r.failures) s.out() << "# failure: " << f << '\n';
  s.emit(format_cover(c));
  return r.pass ? exit_ok : exit_violation;
}

int subgroup_present(const Options& o, Session& s) {
  const OrbicomplexRef x = load_group(o);
  const Alphabet alphabet = rose_alphabet(x->gamma);
  PipelineBudget b;
  b.max_word_length = o.max_word_len;
  b.max_stages = o.max_stages;
  b.max_steps = o.max_steps;
  b.max_candidates = o.max_candidates;
  b.max_degree = o.max_degree;
  b.seed = resolve_seed(o);
  s.config("group", o.group_path);
  s.config("gens", o.subgroup_gens);
  s.config("max_word_len", std::to_string(b.max_word_length));
  s.config("max_stages", std::to_string(b.max_stages));
  s.config("max_steps", std::to_string(b.max_steps));
  s.config("max_degree", std::to_string(b.max_degree));
  s.config("seed", std::to_string(b.seed));

  const PipelineResult r = present_subgroup(parse_generator_list(o.subgroup_gens, alphabet), x, b);
  std::ostringstream text;
  text << format_presentation(r.presentation) << '\n';
  text << "status " << (r.stabilized ? "stabilized" : "inconclusive") << '\n';
  text << "certificate_level " << r.certificate_level << '\n';
  text << "stage " << r.stage << " sweeps " << r.sweeps << " steps " << r.steps << " candidates "
       << r.candidate_count << '\n';
  for (std::size_t i = 0; i < r.generator_images.size(); ++i)
    text << "image " << r.presentation.generators[i] << " = "
         << format_word(r.generator_images[i], alphabet) << '\n';
  for (const Word& k : r.kernel_generators) text << "kernel " << format_word(k, alphabet) << '\n';
  for (const std::string& n : r.notes) text << "note " << n << '\n';
  if (o.format == "csv") {
    text << format_stage_table(r.history);
  } else {
    for (const StageRecord& h : r.history)
      text << "stage " << h.stage << ": chi1 " << h.chi1 << " chi2 " << h.chi2 << " cells "
           << h.cells << " free_edges " << h.free_edges << " core_cells " << h.core_cells
           << " cursor " << h.cursor << '\n';
  }
  s.emit(text.str());
  return r.stabilized ? exit_ok : exit_inconclusive;
}

int audit_wcycles(const Options& o, Session& s) {
  const OrbicomplexRef x = load_group(o);
  s.config("group", o.group_path);
  if (!o.campaign) {
    if (o.complex_path.empty())
      throw Error(ErrorKind::precondition, "missing_complex", "--complex or --campaign is required");
    s.config("complex", o.complex_path);
    s.config("mode", o.permissive ? "permissive" : "strict");
    const ComplexRef y = share(parse_complex(read_file(o.complex_path)));
    const OrbiMorphism m = derive_orbi_morphism(y, x);
    const WcyclesReport r =
        wcycles_audit(m, o.permissive ? AuditMode::permissive : AuditMode::strict);
    std::ostringstream text;
    if (o.format == "csv") {
      text << wcycles_csv_header() << '\n' << wcycles_csv_row(o.complex_path, r) << '\n';
    } else {
      text << "chi1 " << r.chi1 << " deg " << r.deg << " slack1 " << r.slack1 << '\n';
      text << "chi2 " << r.chi2 << " cells " << r.cells << " slack2 " << r.slack2 << '\n';
      text << "irreducible " << (r.irreducible ? "yes" : "no") << '\n';
      text << (r.pass ? "pass" : "fail") << '\n';
    }
    s.emit(text.str());
    return r.pass ? exit_ok : exit_violation;
  }

  CampaignConfig cfg;
  cfg.master_seed = resolve_seed(o);
  cfg.trials = o.trials;
  cfg.cover_trials = o.cover_trials;
  cfg.x = x;
  cfg.params.max_vertices = o.max_vertices;
  cfg.params.cell_probability = o.cell_prob;
  cfg.suites.clear();
  std::string list = o.suites;
  for (char& ch : list)
    if (ch == ',') ch = ' ';
  for (const std::string& name : split_ws(list)) {
    if (name == "wcycles")
      cfg.suites.push_back(Suite::wcycles);
    else if (name == "folding")
      cfg.suites.push_back(Suite::folding);
    else if (name == "covers")
      cfg.suites.push_back(Suite::covers);
    else
      throw Error(ErrorKind::precondition, "unknown_suite", name);
  }
  s.config("campaign", o.suites);
  s.config("trials", std::to_string(cfg.trials));
  s.config("cover_trials", std::to_string(cfg.cover_trials));
  s.config("max_vertices", std::to_string(cfg.params.max_vertices));
  std::ostringstream prob;
  prob << cfg.params.cell_probability;
  s.config("cell_prob", prob.str());
  s.config("seed", std::to_string(cfg.master_seed));
  const CampaignReport r = run_property_campaign(cfg);
  s.emit(o.format == "csv" ? campaign_csv(r) : campaign_summary(r));
  return r.pass ? exit_ok : exit_violation;
}

int fold_command(const Options& o, Session& s) {
  if (o.source_path.empty() || o.target_path.empty() || o.morphism_path.empty())
    throw Error(ErrorKind::precondition, "missing_input", "--source, --target and --morphism are required");
  s.config("source", o.source_path);
  s.config("target", o.target_path);
  s.config("morphism", o.morphism_path);
  s.config("order", o.order);
  const ComplexRef a = share(parse_complex(read_file(o.source_path)));
  const ComplexRef b = share(parse_complex(read_file(o.target_path)));
  const CellMorphism m = parse_morphism(read_file(o.morphism_path), a, b);
  const FoldResult f = fold(m, o.order == "highest" ? FoldOrder::highest_first : FoldOrder::lowest_first);
  s.out() << "# steps " << f.trace.size() << '\n';
  s.out() << "# map " << to_string(classify_map(f.immersion).kind) << '\n';
  if (!o.trace_path.empty()) write_file(o.trace_path, format_fold_trace(f.trace));
  s.emit(format_complex(*f.folded) + format_morphism(f.immersion));
  return exit_ok;
}

int stacking_check(const Options& o, Session& s) {
  if (o.complex_path.empty())
    throw Error(ErrorKind::precondition, "missing_complex", "--complex is required");
  s.config("complex", o.complex_path);
  s.config("branch", std::to_string(o.branch == 0 ? 1 : o.branch));
  const Stacking st = parse_stacking(read_file(o.complex_path));
  const StackingReport r = check_good_stacking(st);
  std::ostringstream text;
  text << to_string(r.verdict) << '\n';
  if (!r.witness.empty()) text << "witness " << r.witness << '\n';
  text << "branched " << (branched_good_stacking(r, o.branch) ? "yes" : "no") << '\n';
  s.emit(text.str());
  return r.verdict == StackingVerdict::good ? exit_ok : exit_violation;
}

int export_dot_command(const Options& o, Session& s) {
  s.config("what", o.what);
  TwoComplex c;
  if (o.what == "complex") {
    if (o.complex_path.empty())
      throw Error(ErrorKind::precondition, "missing_complex", "--complex is required");
    s.config("complex", o.complex_path);
    c = parse_complex(read_file(o.complex_path));
  } else if (o.what == "presentation") {
    s.config("group", o.group_path);
    c = presentation_complex(*load_group(o));
  } else if (o.what == "cover") {
    const OrbicomplexRef x = load_group(o);
    const std::uint64_t seed = resolve_seed(o);
    s.config("group", o.group_path);
    s.config("max_degree", std::to_string(o.max_degree));
    s.config("seed", std::to_string(seed));
    c = *build_unwrapped_cover(x, find_exponent_n_quotient(*x, o.max_degree, seed)).cover;
  } else {
    throw Error(ErrorKind::precondition, "unknown_export", o.what);
  }
  s.emit(export_dot(c));
  return exit_ok;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
    case ErrorKind::invalid_input:
    case ErrorKind::precondition: return exit_usage;
    case ErrorKind::budget_exhausted: return exit_inconclusive;
    case ErrorKind::invariant_breach:
    case ErrorKind::internal: return exit_violation;
  }
  return exit_violation;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"orelco: one-relator orbicomplexes, covers and subgroup presentations", "orelco"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--out", o.out_path, "write the primary output here");
  auto seed_option = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { o.seed = v; },
                                          "seed (default: ORELCO_SEED, then 1)");
  };
  auto group_option = [&](CLI::App* c) { c->add_option("--group", o.group_path, "group file"); };

  CLI::App* group = app.add_subcommand("group", "one-relator orbicomplexes");
  group->require_subcommand(1);
  CLI::App* define = group->add_subcommand("define", "parse or build a group file and validate it");
  group_option(define);
  define->add_option("--generators", o.gens_names, "generator names, space separated");
  define->add_option("--relator", o.relator, "relator word w");
  define->add_option("--branch", o.branch, "cone order n");

  CLI::App* word = app.add_subcommand("word", "words in the group");
  word->require_subcommand(1);
  CLI::App* solve = word->add_subcommand("solve", "Dehn's algorithm");
  group_option(solve);
  solve->add_option("--word", o.word, "word, e.g. \"a b a~\"")->required();
  solve->add_option("--threshold", o.threshold)->check(CLI::IsMember({"half", "newman"}));
  solve->add_flag("--diagram", o.diagram, "print a reduced van Kampen diagram");

  CLI::App* cover = app.add_subcommand("cover", "unwrapped covers");
  cover->require_subcommand(1);
  CLI::App* build = cover->add_subcommand("build", "quotient search, cover and verification");
  group_option(build);
  build->add_option("--max-degree", o.max_degree);
  build->add_option("--quotient", o.quotient_path, "use this quotient instead of searching");
  seed_option(build);

  CLI::App* subgroup = app.add_subcommand("subgroup", "finitely generated subgroups");
  subgroup->require_subcommand(1);
  CLI::App* present = subgroup->add_subcommand("present", "finite presentation of a subgroup");
  group_option(present);
  present->add_option("--gens", o.subgroup_gens, "comma separated generators")->required();
  present->add_option("--max-word-len", o.max_word_len);
  present->add_option("--max-stages", o.max_stages);
  present->add_option("--max-steps", o.max_steps);
  present->add_option("--max-candidates", o.max_candidates);
  present->add_option("--max-degree", o.max_degree);
  seed_option(present);

  CLI::App* audit = app.add_subcommand("audit", "property audits");
  audit->require_subcommand(1);
  CLI::App* wcycles = audit->add_subcommand("wcycles", "w-cycles inequalities");
  group_option(wcycles);
  wcycles->add_option("--complex", o.complex_path, "labeled complex over the group");
  wcycles->add_flag("--permissive", o.permissive, "audit reducible complexes as given");
  wcycles->add_flag("--campaign", o.campaign, "random campaign instead of a single complex");
  wcycles->add_option("--trials", o.trials);
  wcycles->add_option("--cover-trials", o.cover_trials);
  wcycles->add_option("--max-vertices", o.max_vertices);
  wcycles->add_option("--cell-prob", o.cell_prob);
  wcycles->add_option("--suites", o.suites, "comma separated: wcycles,folding,covers");
  seed_option(wcycles);

  CLI::App* fold_cmd = app.add_subcommand("fold", "fold a morphism to an immersion");
  fold_cmd->add_option("--source", o.source_path);
  fold_cmd->add_option("--target", o.target_path);
  fold_cmd->add_option("--morphism", o.morphism_path);
  fold_cmd->add_option("--order", o.order)->check(CLI::IsMember({"lowest", "highest"}));
  fold_cmd->add_option("--trace", o.trace_path, "write the fold trace here");

  CLI::App* stacking = app.add_subcommand("stacking", "stackings");
  stacking->require_subcommand(1);
  CLI::App* check = stacking->add_subcommand("check", "embedding and goodness");
  check->add_option("--complex", o.complex_path, "complex with h lines")->required();
  check->add_option("--branch", o.branch, "cone order of every cell");

  CLI::App* exporter = app.add_subcommand("export", "exports");
  exporter->require_subcommand(1);
  CLI::App* dot = exporter->add_subcommand("dot", "graphviz rendering");
  dot->add_option("--what", o.what)->check(CLI::IsMember({"complex", "presentation", "cover"}));
  dot->add_option("--complex", o.complex_path);
  group_option(dot);
  dot->add_option("--max-degree", o.max_degree);
  seed_option(dot);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: usage\n# " << e.what() << '\n';
    return exit_usage;
  }

  Session s(o, out);
  try {
    std::string command;
    for (CLI::App* sub = app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
      command += (command.empty() ? "" : " ") + sub->get_name();
    s.config("command", command);
    if (define->parsed()) return group_define(o, s);
    if (solve->parsed()) return word_solve(o, s);
    if (build->parsed()) return cover_build(o, s);
    if (present->parsed()) return subgroup_present(o, s);
    if (wcycles->parsed()) return audit_wcycles(o, s);
    if (fold_cmd->parsed()) return fold_command(o, s);
    if (check->parsed()) return stacking_check(o, s);
    if (dot->parsed()) return export_dot_command(o, s);
  } catch (const Error& e) {
    err << "error: " << e.reason() << '\n';
    for (const std::string& line : split_lines(e.what())) err << "# " << line << '\n';
    return exit_for(e.kind());
  }
  err << "error: usage\n";
  return exit_usage;
}

}  // namespace orelco
