#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hocomb/localize.hpp"
#include "hocomb/model.hpp"
#include "hocomb/transfer.hpp"

namespace hocomb {

enum class ExportFormat { Dot, Tikz, Json };

struct ExportConfig {
  ExportFormat format = ExportFormat::Dot;
  /// Draw weak equivalences in orange.
  bool highlight_weak_equivalences = true;
  /// Enlarge bifibrant objects and colour them blue.
  bool emphasize_bifibrant = true;
  /// Tag cofibrations with a hooked tail and fibrations with a double head.
  bool class_markers = false;
  std::string name = "M";
};

/// Covering relations of the lattice, in canonical arrow order.
inline std::vector<Arrow> hasse_arrows(const FiniteLattice& l) {
  std::vector<Arrow> out;
  for (const auto& a : l.arrows()) {
    if (a.is_identity()) continue;
    bool cover = true;
    for (int z = 0; z < l.size() && cover; ++z)
      if (l.lt(a.src, z) && l.lt(z, a.dst)) cover = false;
    if (cover) out.push_back(a);
  }
  return out;
}

namespace detail {

inline std::string tikz_name(int x) { return "v" + std::to_string(x); }

}  // namespace detail

inline std::string model_to_dot(const ModelStructure& m, const ExportConfig& cfg = {}) {
  const auto& l = m.lattice();
  std::ostringstream os;
  os << "digraph " << cfg.name << " {\n  rankdir=BT;\n  node [shape=circle, width=0.15, label=\"\", style=filled, fillcolor=black];\n";
  for (int x = 0; x < l.size(); ++x) {
    os << "  " << x << " [xlabel=\"" << x << "\"";
    if (cfg.emphasize_bifibrant && m.is_bifibrant(x)) os << ", width=0.3, fillcolor=blue, color=blue";
    os << "];\n";
  }
  for (const auto& a : hasse_arrows(l)) {
    os << "  " << a.src << " -> " << a.dst;
    std::vector<std::string> attrs;
    if (cfg.highlight_weak_equivalences && m.w().contains(a)) attrs.push_back("color=orange, penwidth=2");
    if (cfg.class_markers) {
      if (m.c().contains(a)) attrs.push_back("dir=both, arrowtail=curve");
      if (m.f().contains(a)) attrs.push_back("arrowhead=normalnormal");
    }
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// A tikzpicture for a model structure on a chain, drawn left to right.
inline std::string model_to_tikz(const ModelStructure& m, const ExportConfig& cfg = {}) {
  const auto& l = m.lattice();
  std::ostringstream os;
  os << "\\begin{tikzpicture}\n";
  for (int x = 0; x < l.size(); ++x) {
    const bool big = cfg.emphasize_bifibrant && m.is_bifibrant(x);
    os << "\\node[circle, fill=" << (big ? "blue, minimum size=6pt" : "black, minimum size=3pt")
       << ", inner sep=0pt] (" << detail::tikz_name(x) << ") at (" << x << ",0) {};\n";
  }
  for (const auto& a : hasse_arrows(l)) {
    std::string style = "->";
    if (cfg.class_markers && m.c().contains(a)) style = "right hook" + style;
    if (cfg.class_markers && m.f().contains(a)) style += ">";
    if (cfg.highlight_weak_equivalences && m.w().contains(a)) style += ", orange, thick";
    os << "\\draw[" << style << "] (" << detail::tikz_name(a.src) << ") -- (" << detail::tikz_name(a.dst) << ");\n";
  }
  os << "\\end{tikzpicture}\n";
  return os.str();
}

/// Non-identity arrows of a transfer system.
inline std::string transfer_to_dot(const TransferSystem& t, const std::string& name = "R") {
  const auto& l = t.lattice();
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (int x = 0; x < l.size(); ++x) os << "  " << x << ";\n";
  for (const auto& a : t.rel().non_identity_arrows()) os << "  " << a.src << " -> " << a.dst << ";\n";
  os << "}\n";
  return os.str();
}

enum class GraphEdges { Localization, LeftQuillen };

/// Nodes are the model structures on [n] labelled by index and interval
/// partition; edges are either the one-step localizations (self-loops
/// dropped) or the left Quillen identity functors.
inline std::string graph_to_dot(const LocalizationGraph& g, GraphEdges kind = GraphEdges::Localization) {
  std::ostringstream os;
  os << "digraph Q" << g.n << " {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& m = g.nodes[i];
    os << "  " << i << " [label=\"" << i << ": " << to_string(interval_partition_of(m)) << "\\nAF "
       << to_string(m.af()) << "\\nF " << to_string(m.f()) << "\"";
    if (static_cast<int>(i) == g.trivial) os << ", shape=box";
    os << "];\n";
  }
  if (kind == GraphEdges::Localization) {
    for (const auto& e : g.edges)
      if (e.from != e.to) os << "  " << e.from << " -> " << e.to << " [label=\"" << to_string(e.step) << "\"];\n";
  } else {
    for (const auto& [a, b] : quillen_edges(g.nodes)) os << "  " << a << " -> " << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hocomb
