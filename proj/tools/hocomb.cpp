#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "hocomb/hocomb.hpp"

using namespace hocomb;

namespace {

constexpr int kUsage = 2;
constexpr int kFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int n = 2;
  std::string format;
  int cap = -1;
  unsigned jobs = 1;
  std::string out;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

/// Reads JSON from a file, or treats the argument as inline JSON when it
/// starts with '{'.
json load_json(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json(arg);
  return parse_json(read_input(arg));
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw UsageError("--grid expects MxN, got '" + s + "'");
  }
}

void require_n(const Globals& g, int max = 1 << 20) {
  if (g.n < 0) throw UsageError("--n must be non-negative");
  if (g.n > max) throw UsageError("--n must be at most " + std::to_string(max) + " here");
}

std::string classify(const ModelStructure& m) {
  if (m.is_trivial()) return "trivial";
  if (m.is_contractible()) return "contractible";
  return "other";
}

std::string model_line(const ModelStructure& m) {
  return to_string(interval_partition_of(m)) + "\tAF " + to_string(m.af()) + "\tF " + to_string(m.f());
}

// ---- subcommands ---------------------------------------------------------

int cmd_count(const Globals& g, const std::string& what, const std::string& grid, std::ostream& os) {
  if (what == "saturated" && !grid.empty()) {
    const auto [a, b] = parse_grid(grid);
    os << count_saturated_grid(a, b) << "\n";
    return 0;
  }
  require_n(g);
  if (what == "models") os << count_models(g.n) << "\n";
  else if (what == "premodels") os << count_premodels(g.n) << "\n";
  else if (what == "transfer") os << catalan(g.n + 1) << "\n";
  else if (what == "saturated") os << count_saturated_chain(g.n) << "\n";
  return 0;
}

int cmd_enumerate(const Globals& g, std::ostream& os) {
  require_n(g, 12);
  const std::string fmt = g.format.empty() ? "text" : g.format;
  if (fmt == "json") {
    json arr = json::array();
    for_each_model(g.n, [&](const ModelStructure& m) { arr.push_back(model_to_json(m)); });
    os << arr.dump() << "\n";
  } else if (fmt == "jsonl") {
    for_each_model(g.n, [&](const ModelStructure& m) { os << model_to_json(m).dump() << "\n"; });
  } else if (fmt == "dot") {
    std::size_t i = 0;
    for_each_model(g.n, [&](const ModelStructure& m) {
      ExportConfig cfg;
      cfg.name = "M" + std::to_string(i++);
      os << model_to_dot(m, cfg);
    });
  } else if (fmt == "text") {
    std::size_t i = 0;
    for_each_model(g.n, [&](const ModelStructure& m) { os << i++ << "\t" << model_line(m) << "\n"; });
  } else {
    throw UsageError("enumerate supports --format text|json|jsonl|dot");
  }
  return 0;
}

int verify_one(const json& j, std::ostream& os) {
  if (j.is_object() && j.contains("rel")) {
    const auto l = lattice_from_json(detail::field<json>(j, "lattice"));
    const auto rel = arrows_from_json(l, detail::field<json>(j, "rel"));
    if (auto chk = is_transfer_system(l, rel)) {
      os << "VALID transfer system on " << l.label() << "\n";
      return 0;
    } else {
      os << "INVALID " << chk.describe() << "\n";
      return kFailure;
    }
  }
  const auto l = lattice_from_json(detail::field<json>(j, "lattice"));
  const auto w = arrows_from_json(l, detail::field<json>(j, "weq"));
  const auto c = arrows_from_json(l, detail::field<json>(j, "cof"));
  const auto f = arrows_from_json(l, detail::field<json>(j, "fib"));
  const auto d = verify_model(l, w, c, f);
  if (!d) {
    os << "INVALID " << d.describe() << "\n";
    return kFailure;
  }
  const ModelStructure m(w, c, f);
  os << "VALID " << classify(m);
  if (l.is_chain())
    os << " homotopy-category [" << homotopy_category(m).k << "]";
  else
    os << " homotopy-category " << weak_equivalence_classes(w).size() << " objects";
  os << "\n";
  return 0;
}

/// A single object, or an array of them as printed by `enumerate --format json`.
int cmd_verify(const std::string& input, std::ostream& os) {
  const auto j = load_json(input);
  if (!j.is_array()) return verify_one(j, os);
  int rc = 0;
  for (const auto& item : j) rc = std::max(rc, verify_one(item, os));
  return rc;
}

int cmd_triangle(const Globals& g, bool by_enumeration, std::ostream& os) {
  require_n(g, by_enumeration ? 9 : 200);
  CountTable t;
  if (by_enumeration) {
    for (int n = 0; n <= g.n; ++n) {
      const auto s = survey_models(n, g.jobs);
      std::vector<BigInt> row(s.histogram.begin(), s.histogram.end());
      t.rows.push_back(row);
    }
  } else {
    t = shapiro_table(g.n);
  }
  os << "n";
  for (int k = 0; k <= g.n; ++k) os << "\t" << k;
  os << "\tTotal\n";
  for (int n = 0; n <= g.n; ++n) {
    os << n;
    for (int k = 0; k <= g.n; ++k) {
      os << "\t";
      if (k <= n) os << t.rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
    os << "\t" << t.row_sum(static_cast<std::size_t>(n)) << "\n";
  }
  return 0;
}

int cmd_bijection(const Globals& g, bool check, const std::string& example, std::ostream& os) {
  if (!example.empty()) {
    if (example != "fig3") throw UsageError("unknown example '" + example + "'");
    const auto p = sample_path_322();
    const auto m = path_to_model(p);
    os << "path\t" << p.steps << "\n";
    os << "partition\t" << to_string(interval_partition_of(m)) << "\n";
    os << "crossings\t" << crossings(p) << "\n";
    os << "endo\t(" << to_string(path_to_endo(p)) << ")\n";
    return 0;
  }
  require_n(g, 10);
  if (!check) {
    for_each_model(g.n, [&](const ModelStructure& m) {
      os << to_string(interval_partition_of(m)) << "\t" << model_to_path(m).steps << "\t" << to_string(phi(m)) << "\n";
    });
    return 0;
  }
  std::set<Endo> image;
  std::uint64_t count = 0, bad_inverse = 0, bad_crossings = 0;
  for_each_model(g.n, [&](const ModelStructure& m) {
    ++count;
    const auto p = model_to_path(m);
    const auto e = path_to_endo(p);
    image.insert(e);
    if (!(phi_inverse(e) == m)) ++bad_inverse;
    if (crossings(p) + 1 != interval_partition_of(m).block_count()) ++bad_crossings;
  });
  const auto endos = monotone_endos(g.n);
  const bool onto = image == std::set<Endo>(endos.begin(), endos.end());
  const bool ok = onto && image.size() == count && bad_inverse == 0 && bad_crossings == 0;
  os << "structures\t" << count << "\n";
  os << "distinct images\t" << image.size() << "\n";
  os << "monotone maps\t" << endos.size() << "\n";
  os << "inverse failures\t" << bad_inverse << "\n";
  os << "crossing mismatches\t" << bad_crossings << "\n";
  os << (ok ? "BIJECTIVE" : "NOT BIJECTIVE") << "\n";
  return ok ? 0 : kFailure;
}

std::string word_text(const LocalizationWord& w) { return w.empty() ? "id" : to_string(w); }

int cmd_localize(const Globals& g, const std::string& target, const std::string& word, bool all, std::ostream& os) {
  if (!target.empty()) {
    const auto m = model_from_json(load_json(target));
    if (auto d = verify_model(m); !d) {
      os << "INVALID " << d.describe() << "\n";
      return kFailure;
    }
    if (!m.lattice().is_chain()) throw UsageError("localization needs a chain");
    os << word_text(zigzag_from_trivial(m)) << "\n";
    return 0;
  }
  require_n(g, 10);
  if (!word.empty()) {
    LocalizationWord w;
    try {
      w = parse_word(word);
      os << model_to_json(apply_word(trivial_model(g.n), w)).dump() << "\n";
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    return 0;
  }
  if (!all) throw UsageError("localize needs --target, --word or --all");
  std::vector<std::pair<LocalizationWord, ModelStructure>> rows;
  for (const auto& [m, w] : shortest_words(g.n)) rows.emplace_back(w, m);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  for (const auto& [w, m] : rows) os << word_text(w) << "\t" << model_line(m) << "\n";
  return 0;
}

GraphEdges parse_edges(const std::string& s) {
  if (s == "localization") return GraphEdges::Localization;
  if (s == "quillen") return GraphEdges::LeftQuillen;
  throw UsageError("--edges must be localization or quillen");
}

int cmd_graph(const Globals& g, const std::string& edges, std::ostream& os) {
  require_n(g, 7);
  const auto kind = parse_edges(edges);
  const auto graph = localization_graph(g.n);
  const std::string fmt = g.format.empty() ? "dot" : g.format;
  if (fmt == "dot") {
    os << graph_to_dot(graph, kind);
  } else if (fmt == "text") {
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) os << i << "\t" << model_line(graph.nodes[i]) << "\n";
    if (kind == GraphEdges::Localization) {
      for (const auto& e : graph.edges)
        if (e.from != e.to) os << e.from << " -> " << e.to << "\t" << to_string(e.step) << "\n";
    } else {
      for (const auto& [a, b] : quillen_edges(graph.nodes)) os << a << " -> " << b << "\n";
    }
  } else {
    throw UsageError("graph supports --format dot|text");
  }
  return 0;
}

ExportFormat parse_export_format(const std::string& s) {
  if (s.empty() || s == "dot") return ExportFormat::Dot;
  if (s == "tikz") return ExportFormat::Tikz;
  if (s == "json") return ExportFormat::Json;
  throw UsageError("export supports --format dot|tikz|json");
}

std::string render(const ModelStructure& m, const ExportConfig& cfg) {
  switch (cfg.format) {
    case ExportFormat::Dot: return model_to_dot(m, cfg);
    case ExportFormat::Tikz: return model_to_tikz(m, cfg);
    case ExportFormat::Json: return model_to_json(m).dump(2) + "\n";
  }
  return {};
}

const char* extension(ExportFormat f) {
  switch (f) {
    case ExportFormat::Dot: return ".dot";
    case ExportFormat::Tikz: return ".tex";
    case ExportFormat::Json: return ".json";
  }
  return "";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write to '" + p.string() + "' failed");
}

int cmd_export(const Globals& g, const std::string& input, bool graph, const std::string& edges, bool plain, bool markers,
               std::ostream& os) {
  ExportConfig cfg;
  cfg.format = parse_export_format(g.format);
  cfg.highlight_weak_equivalences = !plain;
  cfg.emphasize_bifibrant = !plain;
  cfg.class_markers = markers;
  if (graph) {
    require_n(g, 7);
    if (cfg.format != ExportFormat::Dot) throw UsageError("graph export is DOT only");
    const auto text = graph_to_dot(localization_graph(g.n), parse_edges(edges));
    if (g.out.empty()) os << text;
    else write_file(g.out, text);
    return 0;
  }
  std::vector<ModelStructure> models;
  if (!input.empty()) {
    models.push_back(model_from_json(load_json(input)));
  } else {
    require_n(g, 9);
    models = enumerate_models(g.n);
  }
  if (g.out.empty()) {
    for (std::size_t i = 0; i < models.size(); ++i) {
      cfg.name = "M" + std::to_string(i);
      os << render(models[i], cfg);
    }
    return 0;
  }
  if (models.size() == 1 && !input.empty()) {
    write_file(g.out, render(models.front(), cfg));
    return 0;
  }
  std::filesystem::create_directories(g.out);
  const int width = static_cast<int>(std::to_string(models.size()).size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    cfg.name = "M" + std::to_string(i);
    std::ostringstream name;
    name << "model_" << std::setw(width) << std::setfill('0') << i << extension(cfg.format);
    write_file(std::filesystem::path(g.out) / name.str(), render(models[i], cfg));
  }
  os << "wrote " << models.size() << " files to " << g.out << "\n";
  return 0;
}

int cmd_oracle(const Globals& g, const std::string& what, const std::string& grid, std::ostream& os) {
  FiniteLattice l = make_chain(0);
  if (!grid.empty()) {
    const auto [a, b] = parse_grid(grid);
    if (a < 0 || b < 0) throw UsageError("grid sides must be non-negative");
    l = make_grid(a, b);
  } else {
    require_n(g);
    l = make_chain(g.n);
  }
  std::size_t count = 0;
  if (what == "models") count = oracle_models(l, g.cap < 0 ? kDefaultModelCap : g.cap).size();
  else if (what == "wfs") count = oracle_wfs(l, g.cap < 0 ? kDefaultWfsCap : g.cap).size();
  else count = oracle_saturated(l).size();
  os << count << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model structures on finite lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--n", g.n, "Chain length: the lattice is [n]");
  app.add_option("--format", g.format, "Output format");
  app.add_option("--cap", g.cap, "Oracle cap on non-identity pairs");
  app.add_option("--jobs", g.jobs, "Worker threads for enumeration (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output file (or directory for multi-file export)");

  std::string what = "models", grid, input, target, word, edges = "localization", example;
  bool check = false, all = false, graph = false, plain = false, markers = false, by_enumeration = false;

  auto* count = app.add_subcommand("count", "Exact counts from closed formulas");
  count->add_option("--what", what)->check(CLI::IsMember({"models", "premodels", "transfer", "saturated"}));
  count->add_option("--grid", grid, "Saturated count on [M]x[N]");

  auto* enumerate = app.add_subcommand("enumerate", "List every model structure on [n]");

  auto* verify = app.add_subcommand("verify", "Check a model structure or transfer system given as JSON");
  verify->add_option("input", input, "JSON file, '-' for stdin, or inline JSON")->required();

  auto* triangle = app.add_subcommand("triangle", "Counts by homotopy category, rows 0..n");
  triangle->add_flag("--enumerate", by_enumeration, "Tally by enumeration instead of the closed formula");

  auto* bijection = app.add_subcommand("bijection", "Lattice paths and monotone maps");
  bijection->add_flag("--check", check, "Verify bijectivity on [n]");
  bijection->add_option("--example", example, "Worked example (fig3)");

  auto* localize = app.add_subcommand("localize", "Bousfield localization words");
  localize->add_option("--target", target, "Structure (JSON file or inline) to reach from the trivial one");
  localize->add_option("--word", word, "Apply a word such as 'L_2 R_0 L_1' to the trivial structure");
  localize->add_flag("--all", all, "Shortest word for every structure on [n]");

  auto* graph_cmd = app.add_subcommand("graph", "Localization digraph on [n]");
  graph_cmd->add_option("--edges", edges, "localization or quillen");

  auto* exp = app.add_subcommand("export", "Diagrams for structures or the localization graph");
  exp->add_option("--input", input, "Export a single structure from JSON");
  exp->add_flag("--graph", graph, "Export the localization graph on [n]");
  exp->add_option("--edges", edges, "Graph edges: localization or quillen");
  exp->add_flag("--plain", plain, "No weak-equivalence or bifibrant styling");
  exp->add_flag("--markers", markers, "Mark cofibrations and fibrations");

  auto* oracle = app.add_subcommand("oracle", "Brute-force scans");
  oracle->add_option("--what", what)->check(CLI::IsMember({"models", "wfs", "saturated"}));
  oracle->add_option("--grid", grid, "Scan [M]x[N] instead of [n]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!g.out.empty() && !exp->parsed()) {
    file.open(g.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << g.out << "'\n";
      return kUsage;
    }
    os = &file;
  }
  if (g.jobs == 0) g.jobs = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (count->parsed()) return cmd_count(g, what, grid, *os);
    if (enumerate->parsed()) return cmd_enumerate(g, *os);
    if (verify->parsed()) return cmd_verify(input, *os);
    if (triangle->parsed()) return cmd_triangle(g, by_enumeration, *os);
    if (bijection->parsed()) return cmd_bijection(g, check, example, *os);
    if (localize->parsed()) return cmd_localize(g, target, word, all, *os);
    if (graph_cmd->parsed()) return cmd_graph(g, edges, *os);
    if (exp->parsed()) return cmd_export(g, input, graph, edges, plain, markers, *os);
    if (oracle->parsed()) return cmd_oracle(g, what, grid, *os);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
