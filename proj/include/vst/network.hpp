#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vst/coset_graph.hpp"
#include "vst/group.hpp"

namespace vst {

/// A validated input graph: either a Cayley coset graph built from a group
/// description or a raw regular digraph.
class Network {
 public:
  // JSON graph spec, group form or digraph form. Errors carry the JSON path.
  static Network from_json(std::string_view text, std::size_t cap = kDefaultEnumerationCap);
  // petersen, q3, z7-124, z5-12, c4, k4.
  static Network builtin(std::string_view name);
  static std::vector<std::string> builtin_names();

  explicit Network(CosetGraph g, std::string name = {});
  explicit Network(Digraph g, std::string name = {});

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] bool is_coset() const noexcept { return coset_.has_value(); }
  [[nodiscard]] bool is_cayley() const noexcept { return coset_ && coset_->is_cayley(); }
  [[nodiscard]] const CosetGraph& coset() const;
  [[nodiscard]] const Digraph& digraph() const noexcept { return digraph_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return digraph_.n; }
  [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
  [[nodiscard]] std::string vertex_label(Vertex v) const;

 private:
  std::optional<CosetGraph> coset_;
  Digraph digraph_;
  std::size_t degree_ = 0;
  std::string name_;
};

// Builtin group specs, also used by tests.
[[nodiscard]] GroupSpec cyclic_spec(std::uint32_t modulus, std::vector<std::uint32_t> generators);
[[nodiscard]] GroupSpec hypercube_spec(std::uint32_t dimension);

}  // namespace vst
