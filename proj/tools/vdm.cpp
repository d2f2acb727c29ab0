// Command-line front end: every subcommand wraps one library operation and
// emits a self-describing JSON report. Exit codes: 0 the property holds or
// the computation finished, 1 the property fails (certificate in the
// report), 2 malformed input.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "vdm/json_io.hpp"
#include "vdm/presets.hpp"
#include "vdm/version.hpp"

namespace {

using nlohmann::json;
using namespace vdm;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_input(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void emit(const json& report, const std::string& output) {
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw InputError("cannot open output file: " + output);
  out << text;
}

json envelope(const std::string& command, json input, json result) {
  return json{{"version", kVersion},
              {"command", command},
              {"input", std::move(input)},
              {"result", std::move(result)}};
}

template <typename Fn>
void parallel_for(int jobs, int count, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  int jobs = 1;
  int min_len = 3;
  std::string mode = "exhaustive";
};

int cmd_check(const Options& opt) {
  const json in = load_input(opt.input);
  const SubsetFunction p = io::subset_function_from_json(in);
  const CheckerResult res = is_valuated_delta_matroid(p);
  emit(envelope("check", io::subset_function_to_json(p), io::checker_result_to_json(res)),
       opt.output);
  return res.valuated ? 0 : 1;
}

int cmd_edges(const Options& opt) {
  const json in = load_input(opt.input);
  const SubsetFunction p = io::subset_function_from_json(in);
  const auto dom = p.domain();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = i + 1; j < dom.size(); ++j)
      if (hamming(dom[i], dom[j]) >= opt.min_len) pairs.emplace_back(dom[i], dom[j]);

  std::vector<char> is_edge(pairs.size(), 0);
  parallel_for(opt.jobs, static_cast<int>(pairs.size()),
               [&](int k) { is_edge[k] = pair_is_cell(p, pairs[k].first, pairs[k].second); });

  json edges = json::array();
  for (size_t k = 0; k < pairs.size(); ++k)
    if (is_edge[k])
      edges.push_back(json{{"s", Subset(pairs[k].first, p.n()).to_string()},
                           {"t", Subset(pairs[k].second, p.n()).to_string()}});
  emit(envelope("edges", io::subset_function_to_json(p),
                json{{"min-len", opt.min_len}, {"edges", edges}}),
       opt.output);
  return 0;
}

int cmd_cells(const Options& opt) {
  const json in = load_input(opt.input);
  const SubsetFunction p = io::subset_function_from_json(in);
  MaximalCellsOptions mco;
  if (opt.mode == "exhaustive")
    mco.mode = CellMode::exhaustive;
  else if (opt.mode == "bfs")
    mco.mode = CellMode::bfs;
  else
    throw InputError("--mode must be 'exhaustive' or 'bfs'");
  const std::vector<Cell> cells = maximal_cells(p, mco);
  json out = json::array();
  for (const Cell& c : cells) out.push_back(io::cell_to_json(c, p.n()));
  emit(envelope("cells", io::subset_function_to_json(p),
                json{{"mode", opt.mode}, {"maximal-cells", out}}),
       opt.output);
  return 0;
}

int cmd_cone_dim(const Options& opt) {
  const json in = load_input(opt.input);
  const SubsetFunction p = io::subset_function_from_json(in);
  const int dim = cone_dimension(p);
  emit(envelope("cone-dim", io::subset_function_to_json(p),
                json{{"dim", dim}, {"codim", (1 << p.n()) - dim}}),
       opt.output);
  return 0;
}

int cmd_dom_check(const Options& opt) {
  const json in = load_input(opt.input);
  const BasisFamily f = io::basis_family_from_json(in);
  const auto violation = delta_matroid_violation(f);
  json result{{"delta-matroid", !violation.has_value()}};
  if (violation) {
    result["violation"] = json{{"A", violation->a_set.to_string()},
                               {"B", violation->b_set.to_string()},
                               {"a", violation->element}};
  } else {
    result["even"] = is_even(f);
  }
  emit(envelope("dom-check", io::basis_family_to_json(f), result), opt.output);
  return violation ? 1 : 0;
}

int cmd_rank(const Options& opt) {
  const json in = load_input(opt.input);
  const BasisFamily f = io::basis_family_from_json(in);
  const RankTable table = rank_function(f);
  const SubsetFunction p = neg_rank_as_valuation(f);
  const CheckerResult res = is_valuated_delta_matroid(p);
  emit(envelope("rank", io::basis_family_to_json(f),
                json{{"rank", io::rank_table_to_json(table)},
                     {"neg-rank", io::subset_function_to_json(p)},
                     {"neg-rank-verdict", io::checker_result_to_json(res)}}),
       opt.output);
  return 0;
}

int cmd_minors(const Options& opt) {
  const json in = load_input(opt.input);
  const FieldMatrix m = io::matrix_from_json(in);
  const SubsetFunction p = principal_minor_valuations(m);
  const CheckerResult res = is_valuated_delta_matroid(p);
  emit(envelope("minors", io::matrix_to_json(m),
                json{{"p", io::subset_function_to_json(p)},
                     {"verdict", io::checker_result_to_json(res)}}),
       opt.output);
  return 0;
}

std::vector<std::vector<FieldElem>> vectors_from_input(const json& in, const FieldMatrix& m) {
  std::vector<std::vector<FieldElem>> vectors;
  if (in.contains("vectors")) {
    for (const auto& row : in.at("vectors")) {
      std::vector<FieldElem> v;
      for (const auto& e : row) v.push_back(parse_field_elem(e.get<std::string>(), m.spec()));
      if (static_cast<int>(v.size()) != m.size())
        throw InputError("vectors must have the matrix dimension");
      vectors.push_back(std::move(v));
    }
  } else {
    for (int i = 0; i < m.size(); ++i) {
      std::vector<FieldElem> e(m.size(), FieldElem::zero(m.spec()));
      e[i] = FieldElem::one(m.spec());
      vectors.push_back(std::move(e));
    }
  }
  return vectors;
}

int cmd_rayleigh(const Options& opt) {
  const json in = load_input(opt.input);
  const FieldMatrix m = io::matrix_from_json(in.at("matrix"));
  const int i = in.at("i").get<int>(), j = in.at("j").get<int>();
  const auto vectors = vectors_from_input(in, m);
  const MultiAffinePoly f = det_poly(m, vectors);
  const SmallPoly delta = rayleigh(f, i, j);
  json input = json{{"matrix", io::matrix_to_json(m)}, {"i", i}, {"j", j}};
  emit(envelope("rayleigh", std::move(input),
                json{{"f", io::multiaffine_to_json(f)}, {"delta", io::small_poly_to_json(delta)}}),
       opt.output);
  return 0;
}

int cmd_factorize(const Options& opt) {
  const json in = load_input(opt.input);
  const FieldMatrix m = io::matrix_from_json(in.at("matrix"));
  const int i = in.at("i").get<int>(), j = in.at("j").get<int>();
  const auto vectors = vectors_from_input(in, m);
  const FactorizationReport rep = verify_factorization(m, vectors, i, j);
  json input = json{{"matrix", io::matrix_to_json(m)}, {"i", i}, {"j", j}};
  emit(envelope("factorize", std::move(input),
                json{{"pass", rep.pass},
                     {"sigma", rep.sigma},
                     {"dependent-route", rep.dependent_route},
                     {"g", io::multiaffine_to_json(rep.g)}}),
       opt.output);
  return rep.pass ? 0 : 1;
}

int cmd_realize3(const Options& opt) {
  const json in = load_input(opt.input);
  const SubsetFunction p = io::subset_function_from_json(in);
  const Realize3Report rep = realize3(p);
  emit(envelope("realize3", io::subset_function_to_json(p), io::realize3_report_to_json(rep, p)),
       opt.output);
  return rep.ok ? 0 : 1;
}

int cmd_isotropic(const Options& opt) {
  const json in = load_input(opt.input);
  const FormKind kind = form_from_name(in.at("form").get<std::string>());
  const FieldMatrix m = io::matrix_from_json(in.at("matrix"));
  std::optional<FieldElem> alpha;
  std::optional<std::vector<FieldElem>> v;
  if (in.contains("alpha")) alpha = parse_field_elem(in.at("alpha").get<std::string>(), m.spec());
  if (in.contains("v")) {
    std::vector<FieldElem> vec;
    for (const auto& e : in.at("v")) vec.push_back(parse_field_elem(e.get<std::string>(), m.spec()));
    v = std::move(vec);
  }
  const IsotropicReport rep = isotropic_rep(kind, m, alpha, v);
  json input = json{{"form", form_name(kind)}, {"matrix", io::matrix_to_json(m)}};
  if (alpha) input["alpha"] = to_string(*alpha);
  if (v) {
    json vv = json::array();
    for (const auto& e : *v) vv.push_back(to_string(e));
    input["v"] = vv;
  }
  emit(envelope("isotropic", std::move(input), io::isotropic_report_to_json(rep)), opt.output);
  return rep.verdict.valuated && rep.minors_agree ? 0 : 1;
}

int cmd_circuits(const Options& opt) {
  const json in = load_input(opt.input);
  const int n = in.at("n").get<int>();
  const auto circuits = center_circuits(n);
  json list = json::array();
  for (const auto& c : circuits) list.push_back(io::circuit_to_json(c));
  emit(envelope("circuits", json{{"n", n}}, json{{"count", circuits.size()}, {"circuits", list}}),
       opt.output);
  return 0;
}

int cmd_search(const Options& opt) {
  const json in = load_input(opt.input);
  ConjectureSearchConfig config;
  const std::string shape = in.at("shape").get<std::string>();
  if (shape == "skew-hermitian-plus-rank-one")
    config.shape = ConjectureShape::skew_hermitian_plus_rank_one;
  else if (shape == "char2-omega-rank-one")
    config.shape = ConjectureShape::char2_omega_rank_one;
  else
    throw InputError("unknown search shape: " + shape);
  config.spec = io::field_spec_from_json(in.at("spec"));
  config.n = in.value("n", 3);
  config.trials = opt.trials > 0 ? opt.trials : in.value("trials", 100);
  config.seed = opt.seed;
  config.jobs = opt.jobs;
  const ConjectureSearchReport rep = conjecture_search(config);
  json input = json{{"shape", shape},
                    {"spec", io::field_spec_to_json(*config.spec)},
                    {"n", config.n}};
  json report = envelope("search", std::move(input), io::search_report_to_json(rep));
  report["seed"] = config.seed;
  report["trials"] = config.trials;
  emit(report, opt.output);
  return rep.counterexamples.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with valuated Delta-matroids: regular subdivisions "
               "of the 0-1 cube, local certificates, and principal-minor representability "
               "over valued fields."};
  app.require_subcommand(1);

  Options opt;
  struct Cmd {
    CLI::App* sub;
    int (*run)(const Options&);
  };
  std::vector<Cmd> cmds;

  auto add = [&](const std::string& name, const std::string& desc, int (*fn)(const Options&),
                 bool needs_seed = false) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--input", opt.input, "input JSON file ('-' for stdin)")->required();
    sub->add_option("--output", opt.output, "write the report here instead of stdout");
    sub->add_option("--jobs", opt.jobs, "worker threads for independent subtasks");
    auto* seed = sub->add_option("--seed", opt.seed, "seed for randomized commands");
    if (needs_seed) seed->required();
    cmds.push_back({sub, fn});
    return sub;
  };

  add("check", "decide whether p is a valuated Delta-matroid", cmd_check);
  auto* edges = add("edges", "1-cells of the subdivision at Hamming length >= --min-len", cmd_edges);
  edges->add_option("--min-len", opt.min_len, "minimum Hamming length (default 3)");
  auto* cells = add("cells", "inclusion-maximal cells of the subdivision", cmd_cells);
  cells->add_option("--mode", opt.mode, "exhaustive (n<=4) or bfs (n<=6)");
  add("cone-dim", "dimension of the secondary cone's linear span", cmd_cone_dim);
  add("dom-check", "symmetric exchange axiom for a basis family", cmd_dom_check);
  add("rank", "rank function and the induced -r valuation", cmd_rank);
  add("minors", "valuations of the principal minors of a matrix", cmd_minors);
  add("rayleigh", "Rayleigh difference of the determinantal polynomial", cmd_rayleigh);
  add("factorize", "verify the sigma-factorization of the Rayleigh difference", cmd_factorize);
  add("realize3", "realize a valuated p on [3] by a Hermitian matrix over Q(t)", cmd_realize3);
  add("isotropic", "minors of a maximal isotropic subspace by form type", cmd_isotropic);
  add("circuits", "convex circuit representations of the cube's centre", cmd_circuits);
  add("search", "seeded random search over a conjectured representability shape", cmd_search,
      /*needs_seed=*/true)
      ->add_option("--trials", opt.trials, "number of trials (overrides the input file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // keep --help at 0, fold usage errors into 2
  }

  try {
    for (const Cmd& c : cmds)
      if (c.sub->parsed()) return c.run(opt);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
