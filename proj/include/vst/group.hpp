#pragma once

/// Finite groups at desk scale: cyclic groups, permutation groups and direct
/// products of those, enumerated explicitly.
///
/// Composition convention: compose(a, b) is "a then b". For permutations the
/// result maps x to b(a(x)); for cyclic groups it is (a + b) mod m. Words are
/// therefore read left to right, and the edge (gH, g*delta*H) of a coset graph
/// is compose(g, delta).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace vst {

inline constexpr std::size_t kDefaultEnumerationCap = 100'000;

class Permutation {
 public:
  Permutation() = default;
  // Throws Errc::structural unless `images` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t degree);
  // Cycle notation with 1-based points: "(1 3)(2 4)", "(1,3)(2,4)" or, when
  // every point is a single digit, "(13)(24)". "()" is the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  [[nodiscard]] std::size_t degree() const noexcept { return images_.size(); }
  [[nodiscard]] const std::vector<std::uint32_t>& images() const noexcept { return images_; }
  [[nodiscard]] std::uint32_t operator()(std::uint32_t point) const { return images_.at(point); }

  // "this then next": result(x) = next(this(x)).
  [[nodiscard]] Permutation then(const Permutation& next) const;
  [[nodiscard]] Permutation inverse() const;
  [[nodiscard]] bool is_identity() const noexcept;
  [[nodiscard]] std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

[[nodiscard]] Permutation compose(const Permutation& a, const Permutation& b);

// A group element is stored flat: one residue per cyclic factor followed by
// the image array of each permutation factor, in factor order. Lexicographic
// comparison of this vector is the total order used for coset representatives.
using Element = std::vector<std::uint32_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

struct CyclicKind {
  std::uint32_t modulus = 0;
};
struct PermutationKind {
  std::uint32_t degree = 0;
};
struct GroupKind;
struct ProductKind {
  std::vector<GroupKind> factors;
};
struct GroupKind {
  std::variant<CyclicKind, PermutationKind, ProductKind> kind;
};

class Group {
 public:
  // Throws Errc::structural for modulus < 2, degree < 1 or an empty product.
  explicit Group(GroupKind kind);

  [[nodiscard]] const GroupKind& kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }

  [[nodiscard]] Element identity() const;
  [[nodiscard]] Element compose(const Element& a, const Element& b) const;
  [[nodiscard]] Element inverse(const Element& a) const;
  // Throws Errc::structural if `e` is not an element of this group.
  void check(const Element& e) const;
  [[nodiscard]] std::string format(const Element& e) const;

  struct Segment {
    bool cyclic = true;
    std::size_t offset = 0;
    std::uint32_t size = 0;  // modulus or degree
  };
  [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }

 private:
  GroupKind kind_;
  std::vector<Segment> segments_;
  std::size_t width_ = 0;
};

// Declarative description of G = (Gamma, Delta, H). Gamma is generated by
// Delta, H and any extra group generators.
struct GroupSpec {
  GroupKind kind;
  std::vector<Element> group_generators;
  std::vector<Element> generators;  // Delta, a multiset
  std::vector<Element> subgroup;    // all elements of H; empty means trivial
};

class ElementTable {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] const Element& operator[](std::size_t i) const { return elements_[i]; }
  [[nodiscard]] const std::vector<Element>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::size_t index_of(const Element& e) const;
  [[nodiscard]] std::size_t identity_index() const noexcept { return 0; }

  // Appends if absent; returns the index.
  std::size_t insert(const Element& e);

 private:
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

// Breadth-first closure of {identity} under right composition with
// `generators`, scanned in order. Throws Errc::capacity past `cap` elements.
[[nodiscard]] ElementTable enumerate_group(const Group& group, std::span<const Element> generators,
                                           std::size_t cap = kDefaultEnumerationCap);
// Generators are Delta, then the extra group generators, then H.
[[nodiscard]] ElementTable enumerate_group(const GroupSpec& spec,
                                           std::size_t cap = kDefaultEnumerationCap);

// Throws Errc::validation unless `h` contains the identity and is closed under
// composition. Returns the deduplicated element list (identity first).
std::vector<Element> validate_subgroup(const Group& group, std::span<const Element> h);

// All elements generated by `generators` (identity included).
[[nodiscard]] std::vector<Element> subgroup_closure(const Group& group,
                                                    std::span<const Element> generators,
                                                    std::size_t cap = kDefaultEnumerationCap);

// Lexicographically least element of the left coset gH. `h` must already be
// a validated subgroup.
[[nodiscard]] Element coset_canonicalize(const Group& group, const Element& g,
                                         std::span<const Element> h);

}  // namespace vst
