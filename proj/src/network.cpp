#include "vst/network.hpp"

#include <algorithm>
#include <json.hpp>

#include "vst/error.hpp"

namespace vst {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail_at(const std::string& path, const std::string& what, Errc code = Errc::parse) {
  throw Error(code, (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(path, "missing \"" + key + "\"");
  return *it;
}

std::uint32_t as_u32(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 0xFFFFFFFFll) {
    fail_at(path, "expected a non-negative integer");
  }
  return v.get<std::uint32_t>();
}

GroupKind parse_kind(const json& g, const std::string& path, std::vector<std::vector<Element>>& factor_gens);

Element parse_element(const GroupKind& kind, const json& v, const std::string& path) {
  return std::visit(
      [&](const auto& k) -> Element {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CyclicKind>) {
          auto r = as_u32(v, path);
          if (r >= k.modulus) fail_at(path, "residue out of range for Z_" + std::to_string(k.modulus), Errc::structural);
          return {r};
        } else if constexpr (std::is_same_v<K, PermutationKind>) {
          try {
            if (v.is_string()) return Permutation::from_cycles(v.get<std::string>(), k.degree).images();
            if (!v.is_array()) fail_at(path, "expected an image array or a cycle string");
            std::vector<std::uint32_t> images;
            for (std::size_t i = 0; i < v.size(); ++i) images.push_back(as_u32(v[i], path + "/" + std::to_string(i)));
            if (images.size() != k.degree) {
              fail_at(path, "image array has length " + std::to_string(images.size()) + ", degree is " +
                                std::to_string(k.degree), Errc::structural);
            }
            return Permutation(std::move(images)).images();
          } catch (const Error& e) {
            if (std::string_view(e.what()).starts_with(path)) throw;
            fail_at(path, e.what(), e.code());
          }
        } else {
          if (!v.is_array() || v.size() != k.factors.size()) {
            fail_at(path, "expected an array with one entry per factor");
          }
          Element out;
          for (std::size_t i = 0; i < v.size(); ++i) {
            auto part = parse_element(k.factors[i], v[i], path + "/" + std::to_string(i));
            out.insert(out.end(), part.begin(), part.end());
          }
          return out;
        }
      },
      kind.kind);
}

GroupKind parse_kind(const json& g, const std::string& path, std::vector<std::vector<Element>>& factor_gens) {
  if (!g.is_object()) fail_at(path, "expected an object");
  const auto& kind = member(g, "kind", path);
  if (!kind.is_string()) fail_at(path + "/kind", "expected a string");
  const auto name = kind.get<std::string>();
  GroupKind out;
  if (name == "cyclic") {
    auto m = as_u32(member(g, "modulus", path), path + "/modulus");
    if (m < 2) fail_at(path + "/modulus", "modulus must be at least 2", Errc::structural);
    out.kind = CyclicKind{m};
    factor_gens.emplace_back();
  } else if (name == "permutation") {
    auto deg = as_u32(member(g, "degree", path), path + "/degree");
    if (deg < 1) fail_at(path + "/degree", "degree must be at least 1", Errc::structural);
    out.kind = PermutationKind{deg};
    std::vector<Element> gens;
    if (auto it = g.find("generators"); it != g.end()) {
      if (!it->is_array()) fail_at(path + "/generators", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        gens.push_back(parse_element(out, (*it)[i], path + "/generators/" + std::to_string(i)));
      }
    }
    factor_gens.push_back(std::move(gens));
  } else if (name == "product") {
    const auto& factors = member(g, "factors", path);
    if (!factors.is_array() || factors.empty()) fail_at(path + "/factors", "expected a non-empty array", Errc::structural);
    ProductKind p;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::vector<std::vector<Element>> inner;
      p.factors.push_back(parse_kind(factors[i], path + "/factors/" + std::to_string(i), inner));
      // Each inner list already holds elements of the whole factor.
      std::vector<Element> merged;
      for (auto& list : inner) merged.insert(merged.end(), list.begin(), list.end());
      factor_gens.push_back(std::move(merged));
    }
    out.kind = std::move(p);
  } else {
    fail_at(path + "/kind", "unknown group kind \"" + name + "\"");
  }
  return out;
}

std::vector<Element> parse_elements(const Group& group, const json& doc, const std::string& key) {
  std::vector<Element> out;
  auto it = doc.find(key);
  if (it == doc.end()) return out;
  if (!it->is_array()) fail_at("/" + key, "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    out.push_back(parse_element(group.kind(), (*it)[i], "/" + key + "/" + std::to_string(i)));
  }
  return out;
}

Network parse_group_form(const json& doc, std::size_t cap) {
  std::vector<std::vector<Element>> factor_gens;
  GroupSpec spec;
  spec.kind = parse_kind(doc["group"], "/group", factor_gens);
  Group group(spec.kind);

  // Place each factor's own generators into the full element.
  if (std::holds_alternative<ProductKind>(spec.kind.kind)) {
    const auto& factors = std::get<ProductKind>(spec.kind.kind).factors;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto width = Group(factors[i]).width();
      for (const auto& e : factor_gens[i]) {
        auto full = group.identity();
        std::copy(e.begin(), e.end(), full.begin() + static_cast<std::ptrdiff_t>(offset));
        spec.group_generators.push_back(std::move(full));
      }
      offset += width;
    }
  } else {
    spec.group_generators = factor_gens.front();
  }

  if (!doc.contains("generators")) fail_at("", "missing \"generators\"");
  spec.generators = parse_elements(group, doc, "generators");
  if (spec.generators.empty()) fail_at("/generators", "at least one generator is required", Errc::structural);
  spec.subgroup = parse_elements(group, doc, "subgroup");
  auto sub_gens = parse_elements(group, doc, "subgroup_generators");
  if (!sub_gens.empty()) {
    auto closure = subgroup_closure(group, sub_gens, cap);
    spec.subgroup.insert(spec.subgroup.end(), closure.begin(), closure.end());
  }
  return Network(build_cayley_coset_graph(spec, cap));
}

Network parse_digraph_form(const json& doc) {
  const auto& g = doc["digraph"];
  if (!g.is_object()) fail_at("/digraph", "expected an object");
  Digraph out;
  out.n = as_u32(member(g, "n", "/digraph"), "/digraph/n");
  if (out.n == 0) fail_at("/digraph/n", "a digraph needs at least one vertex", Errc::structural);
  const auto& arcs = member(g, "arcs", "/digraph");
  if (!arcs.is_array()) fail_at("/digraph/arcs", "expected an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto p = "/digraph/arcs/" + std::to_string(i);
    if (!arcs[i].is_array() || arcs[i].size() != 2) fail_at(p, "expected [src, dst]");
    Vertex a = as_u32(arcs[i][0], p + "/0"), b = as_u32(arcs[i][1], p + "/1");
    if (a >= out.n || b >= out.n) fail_at(p, "endpoint out of range", Errc::structural);
    out.arcs.emplace_back(a, b);
  }
  out.require_regular();
  if (!strongly_connected(out)) throw Error(Errc::not_connected, "not connected: the digraph is not strongly connected");
  return Network(std::move(out));
}

}  // namespace

GroupSpec cyclic_spec(std::uint32_t modulus, std::vector<std::uint32_t> generators) {
  GroupSpec spec;
  spec.kind.kind = CyclicKind{modulus};
  for (auto g : generators) spec.generators.push_back({g % modulus});
  return spec;
}

GroupSpec hypercube_spec(std::uint32_t dimension) {
  GroupSpec spec;
  ProductKind p;
  for (std::uint32_t i = 0; i < dimension; ++i) p.factors.push_back(GroupKind{CyclicKind{2}});
  spec.kind.kind = std::move(p);
  for (std::uint32_t i = 0; i < dimension; ++i) {
    Element e(dimension, 0);
    e[i] = 1;
    spec.generators.push_back(std::move(e));
  }
  return spec;
}

Network::Network(CosetGraph g, std::string name)
    : coset_(std::move(g)), digraph_(as_digraph(*coset_)), degree_(coset_->degree()), name_(std::move(name)) {}

Network::Network(Digraph g, std::string name) : digraph_(std::move(g)), name_(std::move(name)) {
  degree_ = digraph_.require_regular();
}

const CosetGraph& Network::coset() const {
  if (!coset_) throw Error(Errc::unsupported_input, "a raw digraph has no group structure");
  return *coset_;
}

std::string Network::vertex_label(Vertex v) const {
  if (!coset_) return std::to_string(v);
  return coset_->group().format(coset_->representatives().at(v));
}

std::vector<std::string> Network::builtin_names() { return {"c4", "k4", "petersen", "q3", "z5-12", "z7-124"}; }

Network Network::builtin(std::string_view name) {
  if (name == "petersen") return Network(build_cayley_coset_graph(petersen_spec()), "petersen");
  if (name == "q3") return Network(build_cayley_coset_graph(hypercube_spec(3)), "q3");
  if (name == "z7-124") return Network(build_cayley_coset_graph(cyclic_spec(7, {1, 2, 4})), "z7-124");
  if (name == "z5-12") return Network(build_cayley_coset_graph(cyclic_spec(5, {1, 2})), "z5-12");
  if (name == "c4") return Network(build_cayley_coset_graph(cyclic_spec(4, {1})), "c4");
  if (name == "k4") return Network(build_cayley_coset_graph(cyclic_spec(4, {1, 2, 3})), "k4");
  throw Error(Errc::input, "unknown builtin \"" + std::string(name) + "\"");
}

Network Network::from_json(std::string_view text, std::size_t cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw Error(Errc::parse, "line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) fail_at("", "expected a JSON object");
  const bool group_form = doc.contains("group");
  const bool digraph_form = doc.contains("digraph");
  if (group_form == digraph_form) fail_at("", "exactly one of \"group\" or \"digraph\" must be present");
  try {
    return group_form ? parse_group_form(doc, cap) : parse_digraph_form(doc);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, e.what());
  }
}

}  // namespace vst
