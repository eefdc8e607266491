#include "vst/group.hpp"

#include <algorithm>
#include <boost/container_hash/hash.hpp>
#include <cctype>
#include <deque>
#include <sstream>

#include "vst/error.hpp"

namespace vst {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error(Errc::structural, "image array is not a permutation of 0.." +
                                        std::to_string(images_.size() == 0 ? 0 : images_.size() - 1));
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<std::uint32_t>(i);
  std::vector<bool> used(degree, false);

  auto fail = [&](const std::string& why) {
    throw Error(Errc::parse, "bad cycle notation \"" + std::string(text) + "\": " + why);
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) fail("unbalanced parentheses");
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    std::vector<std::uint32_t> cycle;
    bool separated = body.find_first_of(" ,\t") != std::string_view::npos;
    if (separated) {
      std::string tmp(body);
      std::replace(tmp.begin(), tmp.end(), ',', ' ');
      std::istringstream in(tmp);
      std::string token;
      while (in >> token) {
        if (!std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          fail("non-numeric point '" + token + "'");
        }
        cycle.push_back(static_cast<std::uint32_t>(std::stoul(token)));
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(std::string("non-numeric point '") + c + "'");
        cycle.push_back(static_cast<std::uint32_t>(c - '0'));
      }
    }
    for (auto p : cycle) {
      if (p < 1 || p > degree) fail("point " + std::to_string(p) + " outside 1.." + std::to_string(degree));
      if (used[p - 1]) fail("point " + std::to_string(p) + " repeated");
      used[p - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) {
    throw Error(Errc::structural, "degree mismatch: " + std::to_string(degree()) + " vs " +
                                      std::to_string(next.degree()));
  }
  std::vector<std::uint32_t> out(degree());
  for (std::size_t x = 0; x < degree(); ++x) out[x] = next.images_[images_[x]];
  Permutation r;
  r.images_ = std::move(out);
  return r;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> out(degree());
  for (std::size_t x = 0; x < degree(); ++x) out[images_[x]] = static_cast<std::uint32_t>(x);
  Permutation r;
  r.images_ = std::move(out);
  return r;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(degree(), false);
  for (std::uint32_t start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    std::uint32_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) { return a.then(b); }

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  return boost::hash_range(e.begin(), e.end());
}

namespace {

void flatten(const GroupKind& kind, std::vector<Group::Segment>& out, std::size_t& width) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, CyclicKind>) {
          if (k.modulus < 2) throw Error(Errc::structural, "cyclic modulus must be >= 2");
          out.push_back({true, width, k.modulus});
          width += 1;
        } else if constexpr (std::is_same_v<T, PermutationKind>) {
          if (k.degree < 1) throw Error(Errc::structural, "permutation degree must be >= 1");
          out.push_back({false, width, k.degree});
          width += k.degree;
        } else {
          if (k.factors.empty()) throw Error(Errc::structural, "product group needs at least one factor");
          for (const auto& f : k.factors) flatten(f, out, width);
        }
      },
      kind.kind);
}

}  // namespace

Group::Group(GroupKind kind) : kind_(std::move(kind)) { flatten(kind_, segments_, width_); }

Element Group::identity() const {
  Element e(width_, 0);
  for (const auto& s : segments_) {
    if (!s.cyclic) {
      for (std::uint32_t i = 0; i < s.size; ++i) e[s.offset + i] = i;
    }
  }
  return e;
}

void Group::check(const Element& e) const {
  if (e.size() != width_) {
    throw Error(Errc::structural, "element width " + std::to_string(e.size()) +
                                      " does not match group width " + std::to_string(width_));
  }
  for (const auto& s : segments_) {
    if (s.cyclic) {
      if (e[s.offset] >= s.size) {
        throw Error(Errc::structural, "residue " + std::to_string(e[s.offset]) + " outside Z_" +
                                          std::to_string(s.size));
      }
    } else {
      std::vector<bool> seen(s.size, false);
      for (std::uint32_t i = 0; i < s.size; ++i) {
        auto x = e[s.offset + i];
        if (x >= s.size || seen[x]) throw Error(Errc::structural, "component is not a permutation");
        seen[x] = true;
      }
    }
  }
}

Element Group::compose(const Element& a, const Element& b) const {
  if (a.size() != width_ || b.size() != width_) {
    throw Error(Errc::structural, "cannot compose elements of widths " + std::to_string(a.size()) +
                                      " and " + std::to_string(b.size()) + " in a group of width " +
                                      std::to_string(width_));
  }
  Element out(width_);
  for (const auto& s : segments_) {
    if (s.cyclic) {
      out[s.offset] = static_cast<std::uint32_t>((std::uint64_t{a[s.offset]} + b[s.offset]) % s.size);
    } else {
      for (std::uint32_t x = 0; x < s.size; ++x) {
        out[s.offset + x] = b[s.offset + a[s.offset + x]];
      }
    }
  }
  return out;
}

Element Group::inverse(const Element& a) const {
  check(a);
  Element out(width_);
  for (const auto& s : segments_) {
    if (s.cyclic) {
      out[s.offset] = (s.size - a[s.offset]) % s.size;
    } else {
      for (std::uint32_t x = 0; x < s.size; ++x) out[s.offset + a[s.offset + x]] = x;
    }
  }
  return out;
}

std::string Group::format(const Element& e) const {
  std::string out;
  if (segments_.size() > 1) out += '(';
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (i) out += ", ";
    if (s.cyclic) {
      out += std::to_string(e[s.offset]);
    } else {
      std::vector<std::uint32_t> img(e.begin() + static_cast<std::ptrdiff_t>(s.offset),
                                     e.begin() + static_cast<std::ptrdiff_t>(s.offset + s.size));
      out += Permutation(std::move(img)).to_cycles();
    }
  }
  if (segments_.size() > 1) out += ')';
  return out;
}

std::size_t ElementTable::index_of(const Element& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? npos : it->second;
}

std::size_t ElementTable::insert(const Element& e) {
  auto [it, inserted] = index_.try_emplace(e, elements_.size());
  if (inserted) elements_.push_back(e);
  return it->second;
}

ElementTable enumerate_group(const Group& group, std::span<const Element> generators, std::size_t cap) {
  if (cap < 1) throw Error(Errc::capacity, "enumeration cap must be >= 1");
  for (const auto& g : generators) group.check(g);
  ElementTable table;
  table.insert(group.identity());
  for (std::size_t head = 0; head < table.size(); ++head) {
    for (const auto& g : generators) {
      auto next = group.compose(table[head], g);
      if (table.index_of(next) == ElementTable::npos) {
        if (table.size() >= cap) {
          throw Error(Errc::capacity, "group closure exceeds the enumeration cap of " + std::to_string(cap) +
                                          " elements");
        }
        table.insert(next);
      }
    }
  }
  return table;
}

ElementTable enumerate_group(const GroupSpec& spec, std::size_t cap) {
  Group group(spec.kind);
  std::vector<Element> gens = spec.generators;
  gens.insert(gens.end(), spec.group_generators.begin(), spec.group_generators.end());
  gens.insert(gens.end(), spec.subgroup.begin(), spec.subgroup.end());
  return enumerate_group(group, gens, cap);
}

std::vector<Element> validate_subgroup(const Group& group, std::span<const Element> h) {
  const Element id = group.identity();
  std::vector<Element> out{id};
  ElementTable members;
  members.insert(id);
  bool has_identity = false;
  for (const auto& e : h) {
    group.check(e);
    if (e == id) has_identity = true;
    if (members.index_of(e) == ElementTable::npos) {
      members.insert(e);
      out.push_back(e);
    }
  }
  if (!h.empty() && !has_identity) {
    throw Error(Errc::validation, "subgroup does not contain the identity");
  }
  for (const auto& a : out) {
    for (const auto& b : out) {
      if (members.index_of(group.compose(a, b)) == ElementTable::npos) {
        throw Error(Errc::validation, "subgroup is not closed: " + group.format(a) + " * " + group.format(b) +
                                          " is missing");
      }
    }
  }
  return out;
}

std::vector<Element> subgroup_closure(const Group& group, std::span<const Element> generators, std::size_t cap) {
  return enumerate_group(group, generators, cap).elements();
}

Element coset_canonicalize(const Group& group, const Element& g, std::span<const Element> h) {
  Element best = g;
  for (const auto& x : h) {
    auto candidate = group.compose(g, x);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

}  // namespace vst
