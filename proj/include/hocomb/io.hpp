#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hocomb/arrow_set.hpp"
#include "hocomb/lattice.hpp"
#include "hocomb/model.hpp"
#include "hocomb/transfer.hpp"

namespace hocomb {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json lattice_to_json(const FiniteLattice& l) {
  switch (l.kind()) {
    case FiniteLattice::Kind::Chain: return {{"kind", "chain"}, {"n", *l.chain_length()}};
    case FiniteLattice::Kind::Product: {
      json fs = json::array();
      for (const auto& f : l.factors()) fs.push_back(lattice_to_json(f));
      return {{"kind", "product"}, {"factors", fs}};
    }
    case FiniteLattice::Kind::Explicit: break;
  }
  json leq = json::array();
  for (const auto& a : l.arrows())
    if (!a.is_identity()) leq.push_back({a.src, a.dst});
  return {{"kind", "explicit"}, {"size", l.size()}, {"leq", leq}};
}

namespace detail {

inline Arrow arrow_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("arrow must be [src,dst], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline FiniteLattice lattice_from_json(const json& j) {
  const auto kind = detail::field<std::string>(j, "kind");
  try {
    if (kind == "chain") return make_chain(detail::field<int>(j, "n"));
    if (kind == "product") {
      const auto fs = detail::field<json>(j, "factors");
      if (!fs.is_array() || fs.empty()) throw ParseError("product needs a nonempty factor list");
      FiniteLattice acc = lattice_from_json(fs[0]);
      for (std::size_t i = 1; i < fs.size(); ++i) acc = make_product(acc, lattice_from_json(fs[i]));
      return acc;
    }
    if (kind == "explicit") {
      std::vector<Arrow> gens;
      for (const auto& a : detail::field<json>(j, "leq")) gens.push_back(detail::arrow_from_json(a));
      return make_explicit(detail::field<int>(j, "size"), gens);
    }
  } catch (const LatticeError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown lattice kind '" + kind + "'");
}

/// Sorted [src,dst] pairs; identities are written only when asked for.
inline json arrows_to_json(const ArrowSet& s, bool with_identities = false) {
  json out = json::array();
  s.for_each([&](const Arrow& a) {
    if (with_identities || !a.is_identity()) out.push_back({a.src, a.dst});
  });
  return out;
}

/// Reads an arrow list; identities are always added.
inline ArrowSet arrows_from_json(const FiniteLattice& l, const json& j) {
  if (!j.is_array()) throw ParseError("arrow list must be an array");
  ArrowSet s = ArrowSet::identities(l);
  for (const auto& a : j) {
    const Arrow arr = detail::arrow_from_json(a);
    if (arr.src < 0 || arr.dst < 0 || arr.src >= l.size() || arr.dst >= l.size() || !l.leq(arr.src, arr.dst))
      throw ParseError("arrow " + to_string(arr) + " is not comparable in " + l.label());
    s.insert(arr);
  }
  return s;
}

inline json model_to_json(const ModelStructure& m) {
  return {{"lattice", lattice_to_json(m.lattice())},
          {"weq", arrows_to_json(m.w())},
          {"cof", arrows_to_json(m.c())},
          {"fib", arrows_to_json(m.f())}};
}

inline ModelStructure model_from_json(const json& j) {
  const auto l = lattice_from_json(detail::field<json>(j, "lattice"));
  return ModelStructure(arrows_from_json(l, detail::field<json>(j, "weq")),
                        arrows_from_json(l, detail::field<json>(j, "cof")),
                        arrows_from_json(l, detail::field<json>(j, "fib")));
}

inline json transfer_to_json(const TransferSystem& t) {
  return {{"lattice", lattice_to_json(t.lattice())}, {"rel", arrows_to_json(t.rel())}};
}

/// Reads a relation and validates it as a transfer system.
inline TransferSystem transfer_from_json(const json& j) {
  const auto l = lattice_from_json(detail::field<json>(j, "lattice"));
  auto rel = arrows_from_json(l, detail::field<json>(j, "rel"));
  if (auto chk = is_transfer_system(l, rel); !chk) throw ParseError("not a transfer system: " + chk.describe());
  return TransferSystem::trusted(std::move(rel));
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace hocomb
