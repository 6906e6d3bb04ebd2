#include "pretrans/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "pretrans/decide.hpp"
#include "pretrans/filtration.hpp"
#include "pretrans/formula.hpp"
#include "pretrans/io.hpp"
#include "pretrans/kernels.hpp"
#include "pretrans/kripke.hpp"
#include "pretrans/paths.hpp"
#include "pretrans/validity.hpp"

namespace pretrans::cli {

namespace {

using nlohmann::json;

constexpr const char* kExitHelp =
    "Exit status: 0 success / valid / found / inclusion holds, 1 negative result (invalid, not found, "
    "reducible, counterexample to an inclusion), 2 usage or input error.";

/// Input errors reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Formula formula_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return formula_from_json(json::parse(text));
  return parse(text);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
}

std::string json_set(const WorldSet& s) { return json(s.to_vector()).dump(); }

LogicSpec logic_arg(const std::string& name, const std::string& file) {
  if (!file.empty()) return logic_from_json(read_json_file(file));
  if (name.empty()) throw UsageError("a logic is required (--logic NAME or --logic-file FILE)");
  return catalog::resolve(name);
}

struct Globals {
  bool json = false;
  std::size_t threads = 0;
};

// ---------------------------------------------------------------------------

struct ParseCmd {
  std::string text, in;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("parse", "Parse a formula and print its canonical tree");
    c->add_option("--text", text, "Formula in the text syntax");
    c->add_option("--in", in, "Formula JSON file");
  }

  int run(const Globals& g, std::ostream& out) const {
    if (text.empty() == in.empty()) throw UsageError("parse needs exactly one of --text or --in");
    const Formula f = in.empty() ? parse(text) : formula_from_json(read_json_file(in));
    const auto a = analyze(f);
    if (g.json) {
      json occ = json::object();
      for (const auto& [p, ds] : a.occ_depths) occ[p] = std::vector<std::size_t>(ds.begin(), ds.end());
      json psi = json::array();
      for (const auto& x : a.psi_set) psi.push_back(render(x));
      out << json{{"tree", to_json(f)},
                  {"text", render(f)},
                  {"core", render(f, RenderMode::Core)},
                  {"depth", a.depth},
                  {"occ_depths", occ},
                  {"psi_set", psi},
                  {"strictly_positive_in", a.strictly_positive_in}}
                 .dump()
          << "\n";
    } else {
      out << to_json(f).dump() << "\n";
    }
    return kOk;
  }
};

struct EvalCmd {
  std::string model, formula;
  std::optional<std::size_t> world;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("eval", "Evaluate a formula in a model");
    c->add_option("--model", model, "Model JSON file")->required();
    c->add_option("--formula", formula, "Formula (text or JSON)")->required();
    c->add_option("--world", world, "Report truth at this world; exit 1 when false");
  }

  int run(const Globals& g, std::ostream& out) const {
    const Model m = model_from_json(read_json_file(model));
    const Formula f = formula_arg(formula);
    const WorldSet s = eval(m, f);
    if (world && *world >= m.frame.size()) throw UsageError("--world out of range");
    const bool holds = world ? s.test(*world) : true;
    if (g.json) {
      json j{{"formula", render(f)}, {"true_at", s.to_vector()}};
      if (world) j["holds"] = holds;
      out << j.dump() << "\n";
    } else {
      out << "true at " << json_set(s) << "\n";
      if (world) out << (holds ? "true" : "false") << " at world " << *world << "\n";
    }
    return holds ? kOk : kNegative;
  }
};

struct FrameCheckCmd {
  std::string frame, logic, logic_file, dot;
  std::size_t n = 1;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("frame-check", "Closure, skeleton and frame-class report");
    c->add_option("--frame", frame, "Frame or model JSON file")->required();
    c->add_option("--n", n, "n for the n-transitivity check")->check(CLI::PositiveNumber);
    c->add_option("--logic", logic, "Also test membership in a catalog logic; exit 1 when not a frame of it");
    c->add_option("--logic-file", logic_file, "Logic JSON file");
    c->add_option("--dot", dot, "Write a Graphviz drawing");
  }

  int run(const Globals& g, std::ostream& out) const {
    const json j = read_json_file(frame);
    const Frame f = frame_from_json(j);
    const FrameClass fc = frame_class_checks(f, n);
    const Skeleton sk = skeleton(f);
    std::optional<bool> member;
    std::string logic_name;
    if (!logic.empty() || !logic_file.empty()) {
      const LogicSpec spec = logic_arg(logic, logic_file);
      logic_name = spec.name;
      member = is_lambda_frame(f, spec);
    }
    if (!dot.empty()) write_file(dot, to_dot(f, {names_from_json(j), {}, nullptr}));
    json clusters = json::array();
    for (const auto& c : sk.clusters) clusters.push_back(c.to_vector());
    if (g.json) {
      json r{{"worlds", f.size()},
             {"n", n},
             {"n_transitive", fc.n_transitive},
             {"conversely_well_founded", fc.conversely_well_founded},
             {"irreflexive", fc.irreflexive},
             {"clusters", clusters}};
      if (member) r["logic"] = {{"name", logic_name}, {"frame_of", *member}};
      out << r.dump() << "\n";
    } else {
      out << "worlds: " << f.size() << "\n"
          << n << "-transitive: " << (fc.n_transitive ? "yes" : "no") << "\n"
          << "conversely well-founded: " << (fc.conversely_well_founded ? "yes" : "no") << "\n"
          << "irreflexive: " << (fc.irreflexive ? "yes" : "no") << "\n"
          << "clusters: " << clusters.dump() << "\n";
      if (member) out << logic_name << "-frame: " << (*member ? "yes" : "no") << "\n";
    }
    return member.value_or(true) ? kOk : kNegative;
  }
};

struct ValidCmd {
  std::string frame, scheme_name, gamma, beta, formula, logic, logic_file;
  std::size_t n = 1;
  std::size_t cap = kDefaultBruteforceCap;
  bool brute = false;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("valid", "Frame validity of a scheme, formula or logic");
    c->add_option("--frame", frame, "Frame or model JSON file")->required();
    c->add_option("--scheme", scheme_name, "Scheme name (Trans, wTrans, A4, Aw4, ALob, ...)");
    c->add_option("--n", n, "Scheme parameter n")->check(CLI::PositiveNumber);
    c->add_option("--gamma", gamma, "Antecedent for A4 / Aw4");
    c->add_option("--beta", beta, "Parameter for ALob");
    c->add_option("--formula", formula, "Arbitrary formula (checked over all valuations)");
    c->add_option("--logic", logic, "Catalog logic name");
    c->add_option("--logic-file", logic_file, "Logic JSON file");
    c->add_option("--cap", cap, "Cap on size x variables for valuation sweeps");
    c->add_flag("--brute", brute, "Check the scheme instance over all valuations instead of the fast path");
  }

  int run(const Globals& g, std::ostream& out) const {
    const Frame f = frame_from_json(read_json_file(frame));
    const int given = !scheme_name.empty() + !formula.empty() + (!logic.empty() || !logic_file.empty());
    if (given != 1) throw UsageError("valid needs exactly one of --scheme, --formula, --logic/--logic-file");
    bool ok = false;
    std::string what;
    if (!scheme_name.empty()) {
      const auto s = scheme_from_name(scheme_name);
      if (!s) throw UsageError("unknown scheme '" + scheme_name + "'");
      SchemeId id{*s, n, std::nullopt};
      if (!gamma.empty()) id.param = formula_arg(gamma);
      if (!beta.empty()) id.param = formula_arg(beta);
      validate(id);
      what = describe(id);
      ok = brute ? valid_bruteforce(f, scheme(id), cap) : valid_axiom(f, id, cap);
    } else if (!formula.empty()) {
      const Formula phi = formula_arg(formula);
      what = render(phi);
      ok = valid_bruteforce(f, phi, cap);
    } else {
      const LogicSpec spec = logic_arg(logic, logic_file);
      what = spec.name;
      ok = is_lambda_frame(f, spec, cap);
    }
    if (g.json)
      out << json{{"checked", what}, {"valid", ok}}.dump() << "\n";
    else
      out << (ok ? "valid" : "invalid") << "\n";
    return ok ? kOk : kNegative;
  }
};

struct FilterCmd {
  std::string model, formula, variant = "k4", trace, out_file, dot;
  std::size_t n = 1;
  std::optional<std::size_t> root;
  bool no_validate = false;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("filter", "Extract a finite selective submodel refuting a formula");
    c->add_option("--model", model, "Model JSON file")->required();
    c->add_option("--formula", formula, "The formula zeta")->required();
    c->add_option("--variant", variant, "k4 or gl")->check(CLI::IsMember({"k4", "gl"}));
    c->add_option("--n", n, "Pretransitivity degree of the class")->check(CLI::PositiveNumber);
    c->add_option("--root", root, "Root world (default: the variant's choice among worlds refuting zeta)");
    c->add_flag("--no-validate", no_validate, "Skip the frame-class check and the guarantee checks");
    c->add_option("--trace", trace, "Write the layer trace as JSON");
    c->add_option("--out", out_file, "Write the kept model as JSON");
    c->add_option("--dot", dot, "Write a Graphviz drawing of the kept model");
  }

  int run(const Globals& g, std::ostream& out) const {
    const Model big = model_from_json(read_json_file(model));
    const Formula zeta = formula_arg(formula);
    const bool gl = variant == "gl";
    std::optional<World> x = root;
    if (!x) x = gl ? choose_root_gl(big, zeta) : choose_root_k4(big, zeta);
    if (!x) {
      out << (g.json ? json{{"verdict", "no_refuting_world"}}.dump() : std::string("no world refutes the formula"))
          << "\n";
      return kNegative;
    }
    const ExtractOptions opts{!no_validate};
    const Extraction e = gl ? extract_gl(big, *x, zeta, n, opts) : extract_k4(big, *x, zeta, n, opts);
    if (!trace.empty()) write_file(trace, to_json(e.trace).dump(2) + "\n");
    WorldNames names;
    for (std::size_t i = 0; i < e.embedding.size(); ++i) names[i] = std::to_string(e.embedding[i]);
    const json kept = model_to_json(e.model, names);
    if (!out_file.empty()) write_file(out_file, kept.dump(2) + "\n");
    if (!dot.empty()) {
      std::vector<std::pair<World, World>> links;
      auto small_id = [&](World w) {
        return static_cast<World>(std::lower_bound(e.embedding.begin(), e.embedding.end(), w) - e.embedding.begin());
      };
      for (const auto& [a, b] : e.trace.link_rel) links.emplace_back(small_id(a), small_id(b));
      write_file(dot, to_dot(e.model.frame, {names, links, &e.model}));
    }
    if (g.json) {
      out << json{{"root", *x}, {"model", kept}, {"trace", to_json(e.trace)}}.dump() << "\n";
    } else {
      out << "root: " << *x << "\n"
          << "kept worlds: " << json(e.embedding).dump() << "\n"
          << "layers: " << e.trace.layers.size() << ", |Psi| = " << e.trace.psi_size
          << ", C = " << e.trace.bound_C << "\n";
    }
    return kOk;
  }
};

struct BudgetFlags {
  SearchBudget budget;

  void attach(CLI::App* c) {
    c->add_option("--max-worlds", budget.max_worlds, "Largest frame size")->check(CLI::PositiveNumber);
    c->add_option("--exhaustive-up-to", budget.exhaustive_up_to, "Scan every frame up to this size");
    c->add_option("--max-frames", budget.max_frames, "Random frames after the exhaustive phase");
    c->add_option("--cap", budget.bruteforce_cap, "Cap on size x variables for valuation sweeps");
  }
};

struct SearchCmd {
  std::string logic, logic_file, formula, out_file;
  BudgetFlags flags;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("search", "Bounded countermodel search");
    c->add_option("--logic", logic, "Catalog logic name");
    c->add_option("--logic-file", logic_file, "Logic JSON file");
    c->add_option("--formula", formula, "Formula to refute")->required();
    c->add_option("--out", out_file, "Write the result envelope as JSON");
    flags.attach(c);
  }

  int run(const Globals& g, std::ostream& out, std::uint64_t seed) const {
    const LogicSpec spec = logic_arg(logic, logic_file);
    const Formula zeta = formula_arg(formula);
    SearchBudget b = flags.budget;
    b.seed = seed;
    const SearchResult r = countermodel_search(spec, zeta, b);
    json env{{"verdict", r.countermodel ? "found" : "not_found"},
             {"logic", spec.name},
             {"formula", render(zeta)},
             {"budget_used", to_json(r.stats)},
             {"seed", seed}};
    if (r.countermodel) {
      env["model"] = model_to_json(r.countermodel->model);
      env["world"] = r.countermodel->world;
    } else {
      env["note"] = "absence within the budget is not a derivability proof";
      const auto psi = analyze(zeta).psi_set.size();
      const auto C = [&]() -> json {
        try {
          const Bounds bd = bounds(spec.pretrans_degree, std::max<std::size_t>(psi, 1));
          return spec.requires_cwf ? bd.C_gl : bd.C_k4;
        } catch (const std::overflow_error&) {
          return "overflow";
        }
      }();
      env["completeness_threshold"] = {{"psi_size", psi}, {"C", C}, {"reached", false}};
    }
    if (!out_file.empty()) write_file(out_file, env.dump(2) + "\n");
    if (g.json) {
      out << env.dump() << "\n";
    } else if (r.countermodel) {
      out << "found: " << r.countermodel->model.frame.size() << " worlds, refuted at world " << r.countermodel->world
          << "\n"
          << model_to_json(r.countermodel->model).dump() << "\n";
    } else {
      out << "not found (" << r.stats.frames_scanned << " frames scanned)\n";
    }
    return r.countermodel ? kOk : kNegative;
  }
};

struct IncludeCmd {
  std::string weak, strong, weak_file, strong_file;
  BudgetFlags flags;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("include", "Probe whether weak is included in strong");
    c->add_option("--weak", weak, "Catalog name of the smaller logic");
    c->add_option("--strong", strong, "Catalog name of the larger logic");
    c->add_option("--weak-file", weak_file, "Logic JSON file");
    c->add_option("--strong-file", strong_file, "Logic JSON file");
    flags.attach(c);
  }

  int run(const Globals& g, std::ostream& out, std::uint64_t seed) const {
    const LogicSpec w = logic_arg(weak, weak_file);
    const LogicSpec s = logic_arg(strong, strong_file);
    SearchBudget b = flags.budget;
    b.seed = seed;
    const InclusionVerdict v = inclusion_probe(w, s, b);
    json env{{"verdict", v.counterexample ? "counterexample" : "no_counterexample"},
             {"weak", w.name},
             {"strong", s.name},
             {"budget_used", to_json(v.stats)}};
    if (v.counterexample) {
      env["frame"] = frame_to_json(*v.frame);
      env["refuted"] = to_json(*v.refuted);
    }
    if (g.json) {
      out << env.dump() << "\n";
    } else if (v.counterexample) {
      out << "counterexample: " << frame_to_json(*v.frame).dump() << " refutes " << describe(*v.refuted) << "\n";
    } else {
      out << "no_counterexample (" << v.stats.frames_scanned << " frames scanned)\n";
    }
    return v.counterexample ? kNegative : kOk;
  }
};

struct PathsCmd {
  std::string model, path, labels, lines;
  std::optional<std::size_t> start;
  std::size_t length = 0;
  std::size_t n = 1;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("paths", "Labeled paths: reducibility, greedy optimal paths, zigzag links");
    c->add_option("--model", model, "Model JSON file")->required();
    c->add_option("--path", path, "Labeled path JSON file; exit 1 when reducible");
    c->add_option("--start", start, "Generate a greedy optimal path from this world");
    c->add_option("--labels", labels, "Labels for --start, separated by ';'");
    c->add_option("--length", length, "Length for --start");
    c->add_option("--lines", lines, "JSON file with an array of world paths for a zigzag link");
    c->add_option("--n", n, "Path length n for --lines")->check(CLI::PositiveNumber);
  }

  int run(const Globals& g, std::ostream& out) const {
    const Model m = model_from_json(read_json_file(model));
    const int given = !path.empty() + start.has_value() + !lines.empty();
    if (given != 1) throw UsageError("paths needs exactly one of --path, --start, --lines");
    if (!path.empty()) {
      const LabeledPath p = path_from_json(read_json_file(path));
      const bool opt = is_optimal(m, p);
      const auto red = find_reduction(m, p);
      if (g.json) {
        json j{{"length", p.length()}, {"optimal", opt}, {"reducible", red.has_value()}};
        if (red) j["reduction"] = {red->first, red->second};
        out << j.dump() << "\n";
      } else {
        out << "length " << p.length() << ", " << (opt ? "optimal" : "not optimal") << ", ";
        if (red)
          out << "reducible at (" << red->first << ", " << red->second << ")\n";
        else
          out << "irreducible\n";
      }
      return red ? kNegative : kOk;
    }
    if (start) {
      std::vector<Formula> ls;
      std::size_t pos = 0;
      while (pos <= labels.size()) {
        const auto next = labels.find(';', pos);
        const auto piece = labels.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (piece.find_first_not_of(' ') != std::string::npos) ls.push_back(formula_arg(piece));
        if (next == std::string::npos) break;
        pos = next + 1;
      }
      if (ls.empty()) throw UsageError("--start needs --labels");
      if (*start >= m.frame.size()) throw UsageError("--start out of range");
      const LabeledPath p = greedy_optimal_path(m, *start, ls, length);
      out << to_json(p).dump() << "\n";
      return p.length() == length ? kOk : kNegative;
    }
    const json lj = read_json_file(lines);
    const auto grid = lj.get<std::vector<std::vector<World>>>();
    const ZigzagLink l = find_zigzag_link(m.frame, n, grid);
    if (g.json)
      out << json{{"i", l.i}, {"i2", l.i2}, {"j", l.j}}.dump() << "\n";
    else
      out << "link: line " << l.i << " step " << l.j << " -> line " << l.i2 << " step " << l.j + 1 << "\n";
    return kOk;
  }
};

struct BoundsCmd {
  std::uint64_t n = 1, psi = 1;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("bounds", "The constants N, M, C_k4, C_gl");
    c->add_option("--n", n, "Pretransitivity degree")->required()->check(CLI::PositiveNumber);
    c->add_option("--psi", psi, "Size of Psi")->required()->check(CLI::PositiveNumber);
  }

  int run(const Globals& g, std::ostream& out) const {
    const Bounds b = bounds(n, psi);
    if (g.json)
      out << json{{"n", b.n}, {"psi", b.psi_size}, {"N", b.N}, {"M", b.M}, {"C_k4", b.C_k4}, {"C_gl", b.C_gl}}.dump()
          << "\n";
    else
      out << "N=" << b.N << " M=" << b.M << " C_k4=" << b.C_k4 << " C_gl=" << b.C_gl << "\n";
    return kOk;
  }
};

struct CatalogCmd {
  std::string name;

  void attach(CLI::App& app) {
    auto* c = app.add_subcommand("catalog", "List the built-in logics or show one");
    c->add_option("--name", name, "Show this logic as JSON");
  }

  int run(const Globals& g, std::ostream& out) const {
    if (!name.empty()) {
      const LogicSpec s = catalog::resolve(name);
      out << (g.json ? to_json(s).dump() : to_json(s).dump(2)) << "\n";
      return kOk;
    }
    if (g.json) {
      json j = json::array();
      for (const auto& [k, v] : catalog::entries()) j.push_back({{"name", k}, {"description", v}});
      out << j.dump() << "\n";
    } else {
      for (const auto& [k, v] : catalog::entries()) out << k << "  " << v << "\n";
    }
    return kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for pretransitive modal logics on finite Kripke structures", "pretrans"};
  app.footer(kExitHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed = 0;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--threads", g.threads, "Worker threads (default: PRETRANS_THREADS or all cores)");
  app.add_option("--seed", seed, "Seed for random search phases");

  ParseCmd parse_cmd;
  EvalCmd eval_cmd;
  FrameCheckCmd frame_cmd;
  ValidCmd valid_cmd;
  FilterCmd filter_cmd;
  SearchCmd search_cmd;
  IncludeCmd include_cmd;
  PathsCmd paths_cmd;
  BoundsCmd bounds_cmd;
  CatalogCmd catalog_cmd;
  parse_cmd.attach(app);
  eval_cmd.attach(app);
  frame_cmd.attach(app);
  valid_cmd.attach(app);
  filter_cmd.attach(app);
  search_cmd.attach(app);
  include_cmd.attach(app);
  paths_cmd.attach(app);
  bounds_cmd.attach(app);
  catalog_cmd.attach(app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    if (const auto subs = app.get_subcommands(); !subs.empty())
      err << subs.front()->help();
    else
      err << app.help();
    return kUsage;
  }

  const std::size_t previous_threads = thread_count();
  if (g.threads > 0) set_thread_count(g.threads);
  struct Restore {
    std::size_t n;
    ~Restore() { set_thread_count(n); }
  } restore{previous_threads};

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "parse") return parse_cmd.run(g, out);
    if (verb == "eval") return eval_cmd.run(g, out);
    if (verb == "frame-check") return frame_cmd.run(g, out);
    if (verb == "valid") return valid_cmd.run(g, out);
    if (verb == "filter") return filter_cmd.run(g, out);
    if (verb == "search") return search_cmd.run(g, out, seed);
    if (verb == "include") return include_cmd.run(g, out, seed);
    if (verb == "paths") return paths_cmd.run(g, out);
    if (verb == "bounds") return bounds_cmd.run(g, out);
    if (verb == "catalog") return catalog_cmd.run(g, out);
  } catch (const std::logic_error& e) {
    // invalid_argument (and PreconditionError) are input errors; other logic
    // errors are broken internal guarantees.
    if (dynamic_cast<const std::invalid_argument*>(&e) == nullptr && dynamic_cast<const std::out_of_range*>(&e) == nullptr) {
      err << "internal error: " << e.what() << "\n";
      return 3;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: unknown command " << verb << "\n";
  return kUsage;
}

}  // namespace pretrans::cli
