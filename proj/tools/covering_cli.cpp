// Command-line front end: one subcommand per library operation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "covering/errors.hpp"
#include "covering/harness.hpp"
#include "covering/io.hpp"

using namespace covering;
using covering::io::Json;

namespace {

bool g_json = false;

void emit(const Json& j) {
  if (g_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << io::text_record(j);
}

std::uint64_t default_budget() {
  if (const char* s = std::getenv("COVERING_BUDGET")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError(std::string("COVERING_BUDGET is not a number: ") + s);
    }
  }
  return harness::kMaxExhaustive;
}

LatticeShape parse_shape(const std::string& s) {
  std::vector<int> dims;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      dims.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("bad shape \"" + s + "\"");
    }
  }
  return LatticeShape(std::span<const int>(dims));
}

Json to_json(const harness::VerificationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"instance", x.instance}, {"points", x.points}, {"relation", x.relation}, {"observed", x.observed}});
  return {{"suite", r.suite},
          {"frame", r.frame},
          {"seed", r.seed},
          {"instances_checked", r.instances_checked},
          {"skipped", r.skipped},
          {"partial", r.partial},
          {"violations", v},
          {"runtime_seconds", r.runtime_seconds}};
}

struct Common {
  std::string input;
  std::string family = "slices";
  std::size_t max_points = 64;
  std::uint64_t node_limit = 0;

  SolverOptions solver() const { return {max_points, node_limit}; }
  void add(CLI::App* app, bool needs_input = true) {
    auto* in = app->add_option("--input", input, "instance JSON file");
    if (needs_input) in->required();
    app->add_option("--family", family, "slices, points, lines, full, inline JSON or a family file")
        ->capture_default_str();
    app->add_option("--max-points", max_points, "largest |A| for the exact solvers")->capture_default_str();
    app->add_option("--node-limit", node_limit, "branch-and-bound node limit, 0 for none");
  }
};

struct Frame {
  std::string kind = "random";
  std::string shape;
  std::size_t count = 100;
  double density = 0.3;
  std::uint64_t seed = 1;
  std::vector<std::string> inputs;

  void add(CLI::App* app) {
    app->add_option("--generator", kind, "exhaustive, random, diagonal, antichain or custom")->capture_default_str();
    app->add_option("--shape", shape, "box extents, e.g. 3,3,3");
    app->add_option("--count", count, "instances (random, antichain) or largest l (diagonal)")->capture_default_str();
    app->add_option("--density", density, "inclusion probability")->capture_default_str();
    app->add_option("--seed", seed, "generator seed")->capture_default_str();
    app->add_option("--instances", inputs, "instance files for the custom generator");
  }

  harness::GeneratorSpec spec() const {
    harness::GeneratorSpec g;
    g.kind = harness::generator_kind(kind);
    g.count = count;
    g.density = density;
    g.seed = seed;
    for (const auto& f : inputs) g.custom.push_back(io::read_instance(f).subset);
    if (!shape.empty())
      g.shape = parse_shape(shape);
    else if (!g.custom.empty())
      g.shape = g.custom.front().shape();
    else
      throw PreconditionError("--shape is required");
    return g;
  }
};

int run_cover(const Common& c, bool greedy, bool enumerate, std::size_t cap) {
  const auto in = io::read_instance(c.input);
  const auto m = io::parse_family(c.family, in.subset.shape().order());
  Json j;
  if (enumerate) {
    j = io::to_json(enumerate_min_decompositions(in.subset, m, cap, c.solver()));
  } else {
    const auto r = greedy ? covering_number_greedy(in.subset, m) : covering_number_exact(in.subset, m, c.solver());
    j = io::to_json(r);
    j["method"] = greedy ? "greedy" : "exact";
  }
  if (in.duplicates) j["duplicates_dropped"] = in.duplicates;
  emit(j);
  return 0;
}

int run_independence(const Common& c, bool exact) {
  const auto in = io::read_instance(c.input);
  const auto m = io::parse_family(c.family, in.subset.shape().order());
  emit(io::to_json(exact ? independence_exact(in.subset, m, c.solver()) : independence_greedy(in.subset, m)));
  return 0;
}

int run_restrict(const Common& c, const std::string& theorem, std::optional<std::int64_t> l,
                 std::optional<std::uint64_t> seed, const std::string& tree_file) {
  if (!tree_file.empty() && theorem != "same-cover") throw PreconditionError("--emit-tree needs --theorem same-cover");
  const auto a = io::read_instance(c.input).subset;
  const auto m = io::parse_family(c.family, a.shape().order());
  const auto opts = c.solver();
  Json j;
  if (theorem == "linear") {
    const auto k = l.value_or(covering_number_exact(a, m, opts).value / static_cast<std::int64_t>(m.size()));
    j = io::to_json(restrict_linear(a, m, k, opts));
  } else if (theorem == "offdiag") {
    std::int64_t k = 0;
    if (l) {
      k = *l;
    } else {
      const int d = a.shape().order();
      std::int64_t per = static_cast<std::int64_t>(m.size());
      for (int i = 0; i < d; ++i) per *= d;
      const auto off = without_repeated_coordinates(a);
      while (covering_at_least(off, m, per * (k + 1), opts)) ++k;
    }
    j = io::to_json(restrict_offdiagonal(a, m, k, opts));
  } else if (theorem == "same-cover") {
    const auto r = restrict_same_cover(a, m, l, opts);
    j = io::to_json(r.certificate);
    j["size_bound"] = static_cast<double>(r.size_bound);
    j["exact_match"] = r.exact_match;
    j["trimmed_size"] = r.trimmed.size();
    j["tree_nodes"] = r.tree.node_count();
    if (!tree_file.empty()) {
      std::ofstream out(tree_file);
      if (!out) throw ParseError("cannot write " + tree_file);
      out << io::to_json(r.tree).dump(2) << '\n';
    }
  } else if (theorem == "coloring") {
    j = io::to_json(seed ? disjoint_coloring_sampled(a, *seed) : disjoint_coloring(a));
  } else {
    throw PreconditionError("unknown theorem " + theorem);
  }
  emit(j);
  return 0;
}

int run_slicerank(const std::string& input, bool bridge, const std::string& corollary, std::int64_t l,
                  const SolverOptions& opts) {
  const auto t = io::read_tensor(input);
  if (!corollary.empty()) {
    const auto mode = corollary == "linear"    ? CorollaryMode::linear
                      : corollary == "offdiag" ? CorollaryMode::offdiag
                      : corollary == "same-cover"
                          ? CorollaryMode::same_cover
                          : throw PreconditionError("unknown corollary mode " + corollary);
    const auto r = corollary_pipeline(t, mode, l, opts);
    Json j = io::to_json(r.certificate);
    j["restricted_slice_rank"] = r.restricted_slice_rank;
    j["restricted"] = io::to_json(r.restricted);
    emit(j);
    return 0;
  }
  emit(io::to_json(bridge ? slice_rank_antichain(t, opts) : slice_rank_oracle(t)));
  return 0;
}

std::vector<PatternFamily> families(const std::vector<std::string>& specs, int d) {
  std::vector<PatternFamily> out;
  for (const auto& s : specs) out.push_back(io::parse_family(s, d));
  return out;
}

int run_verify(const std::string& suite, const Frame& f, const std::vector<std::string>& fams,
               const harness::SuiteOptions& opts) {
  const auto g = f.spec();
  const auto ms = families(fams, g.shape.order());
  std::vector<std::string> names;
  if (suite == "all")
    names = harness::suite_names();
  else
    names.push_back(suite);
  Json reports = Json::array();
  std::size_t violations = 0;
  for (const auto& n : names) {
    const auto r = harness::verify_suite(n, g, ms, opts);
    violations += r.violations.size();
    reports.push_back(to_json(r));
  }
  if (g_json)
    emit(names.size() == 1 ? reports.front() : reports);
  else
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << '\n';
      emit(reports[i]);
    }
  return violations ? 1 : 0;
}

int run_search(const Frame& f, const std::string& fam, const harness::SuiteOptions& opts) {
  const auto g = f.spec();
  const auto r = harness::search_constant(io::parse_family(fam, g.shape.order()), g, opts);
  Json j{{"frame", harness::describe(g)}, {"found", r.found}};
  if (r.found) {
    j["c_min"] = harness::to_string(r.c_min);
    j["witness"] = io::to_json(r.witness)["points"];
  }
  j["examined"] = r.examined;
  j["skipped"] = r.skipped;
  j["exhaustive"] = r.exhaustive;
  emit(j);
  return 0;
}

int run_hunt(const Frame& f, const std::string& fam, const harness::HuntTarget& target,
             const harness::SuiteOptions& opts) {
  const auto g = f.spec();
  const auto r = harness::counterexample_hunt(io::parse_family(fam, g.shape.order()), g, target, opts);
  Json found = Json::array();
  for (const auto& a : r.findings) found.push_back(io::to_json(a)["points"]);
  emit({{"frame", harness::describe(g)},
        {"examined", r.examined},
        {"skipped", r.skipped},
        {"partial", r.partial},
        {"findings", found}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering numbers of lattice subsets by coordinate subspaces"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "machine-readable output");

  harness::SuiteOptions sopts;
  std::uint64_t budget = 0;
  try {
    budget = default_budget();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  Common cover_c;
  bool greedy = false, exact = false, enumerate = false;
  std::size_t cap = 10;
  auto* cover = app.add_subcommand("cover", "M-covering number");
  cover_c.add(cover);
  auto* fg = cover->add_flag("--greedy", greedy, "greedy upper bound");
  cover->add_flag("--exact", exact, "exact branch and bound (default)")->excludes(fg);
  cover->add_flag("--enumerate", enumerate, "list minimum decompositions");
  cover->add_option("--cap", cap, "decompositions to print")->capture_default_str();

  Common ind_c;
  bool ind_exact = false;
  auto* ind = app.add_subcommand("independence", "M-independence number (greedy unless --exact)");
  ind_c.add(ind);
  ind->add_flag("--exact", ind_exact, "exact maximum independent set");

  Common dec_c;
  std::size_t dec_cap = 10;
  auto* dec = app.add_subcommand("decomps", "count minimum decompositions");
  dec_c.add(dec);
  dec->add_option("--cap", dec_cap, "decompositions to print")->capture_default_str();

  Common res_c;
  std::string theorem;
  std::optional<std::int64_t> res_l;
  std::optional<std::uint64_t> res_seed;
  std::string tree_file;
  auto* res = app.add_subcommand("restrict", "extract a sub-box keeping the covering number");
  res_c.add(res);
  res->add_option("--theorem", theorem, "linear, offdiag, same-cover or coloring")->required();
  res->add_option("--l", res_l, "target value (default: the largest certified one)");
  res->add_option("--seed", res_seed, "sampled instead of derandomized coloring");
  res->add_option("--emit-tree", tree_file, "write the same-cover descent tree as JSON");

  std::string sr_input, corollary;
  bool sr_oracle = false, sr_bridge = false;
  std::int64_t sr_l = 1;
  std::size_t sr_max_points = 64;
  auto* sr = app.add_subcommand("slicerank", "slice rank of a tensor over F_p");
  sr->add_option("--input", sr_input, "tensor JSON file")->required();
  auto* fo = sr->add_flag("--oracle", sr_oracle, "exact oracle (default)");
  sr->add_flag("--bridge", sr_bridge, "slice covering number of an antichain support")->excludes(fo);
  sr->add_option("--corollary", corollary, "restriction pipeline: linear, offdiag or same-cover");
  sr->add_option("--l", sr_l, "restriction target")->capture_default_str();
  sr->add_option("--max-points", sr_max_points, "largest support for the exact solvers")->capture_default_str();

  Frame ver_f;
  std::string suite;
  std::vector<std::string> ver_fams;
  auto* ver = app.add_subcommand("verify", "run verification suites; exit status 1 on any violation");
  ver->add_option("--suite", suite, "suite name or all")->required();
  ver_f.add(ver);
  ver->add_option("--family", ver_fams, "pattern families (repeatable; default slices)");
  ver->add_option("--budget", budget, "frame and search budget (default from COVERING_BUDGET)");
  ver->add_option("--p", sopts.p, "field for the sawin-tao suite")->capture_default_str();

  Frame sc_f;
  std::string sc_fam = "slices";
  auto* sc = app.add_subcommand("search-c", "smallest I_M(A)/Mc(A) over a frame");
  sc_f.add(sc);
  sc->add_option("--family", sc_fam, "pattern family")->capture_default_str();
  sc->add_option("--budget", budget, "frame budget");

  Frame h_f;
  std::string h_fam = "slices";
  harness::HuntTarget target;
  auto* hunt = app.add_subcommand("hunt", "sets whose small restrictions all lose covering number");
  h_f.add(hunt);
  hunt->add_option("--family", h_fam, "pattern family")->capture_default_str();
  hunt->add_option("--v", target.full_value, "Mc(A) >= v")->required();
  hunt->add_option("--s", target.cap_size, "restrictions with |X_j| <= s")->required();
  hunt->add_option("--r", target.restricted_cap, "all have Mc <= r")->required();
  hunt->add_option("--budget", budget, "frame and search budget");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", g_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);
  sopts.budget = budget;

  try {
    if (*cover) return run_cover(cover_c, greedy, enumerate, cap);
    if (*ind) return run_independence(ind_c, ind_exact);
    if (*dec) return run_cover(dec_c, false, true, dec_cap);
    if (*res) return run_restrict(res_c, theorem, res_l, res_seed, tree_file);
    if (*sr) return run_slicerank(sr_input, sr_bridge, corollary, sr_l, {sr_max_points, 0});
    if (*ver) return run_verify(suite, ver_f, ver_fams, sopts);
    if (*sc) return run_search(sc_f, sc_fam, sopts);
    if (*hunt) return run_hunt(h_f, h_fam, target, sopts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
