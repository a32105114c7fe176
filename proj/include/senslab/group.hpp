#pragma once

// Exact arithmetic for the finitely generated groups the lab supports:
// the integers, the lattices Z^d (d <= 4) and the infinite dihedral group
// Z ⋊ Z/2 = <a, b | b^2 = 1, bab = a^-1>.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace senslab {

enum class GroupKind { integers, lattice, semidirect };

std::string_view to_string(GroupKind kind);

inline constexpr std::size_t kMaxLatticeDim = 4;

class GroupElement {
 public:
  struct Int {
    std::int64_t k = 0;
    auto operator<=>(const Int&) const = default;
  };
  struct Vec {
    std::array<std::int64_t, kMaxLatticeDim> ks{};
    std::uint8_t dim = 0;
    auto operator<=>(const Vec&) const = default;
  };
  /// a^k b^flip
  struct Semi {
    std::int64_t k = 0;
    bool flip = false;
    auto operator<=>(const Semi&) const = default;
  };

  GroupElement() : rep_(Int{}) {}

  static GroupElement integer(std::int64_t k) { return GroupElement(Int{k}); }
  static GroupElement lattice(const std::vector<std::int64_t>& ks);
  static GroupElement semidirect(std::int64_t k, bool flip) { return GroupElement(Semi{k, flip}); }
  static GroupElement identity(GroupKind kind, std::size_t dim = 1);

  GroupKind kind() const;
  /// Lattice dimension; 1 for the other kinds.
  std::size_t dim() const;
  bool is_identity() const;

  const Int* as_int() const { return std::get_if<Int>(&rep_); }
  const Vec* as_vec() const { return std::get_if<Vec>(&rep_); }
  const Semi* as_semi() const { return std::get_if<Semi>(&rep_); }

  /// Integer value of an Int element. Throws KindMismatch otherwise.
  std::int64_t int_value() const;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;

 private:
  using Rep = std::variant<Int, Vec, Semi>;
  explicit GroupElement(Rep rep) : rep_(rep) {}
  Rep rep_;

  friend GroupElement multiply(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);
};

/// Exact product. Throws KindMismatch when kinds or lattice dimensions differ.
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
/// g^n for any integer n.
GroupElement power(const GroupElement& g, std::int64_t n);
/// g^-1 h^-1 g h
GroupElement commutator(const GroupElement& g, const GroupElement& h);

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) { return multiply(g, h); }

std::string to_string(const GroupElement& g);
std::ostream& operator<<(std::ostream& os, const GroupElement& g);

void to_json(nlohmann::json& j, const GroupElement& g);
void from_json(const nlohmann::json& j, GroupElement& g);

/// Word s_{i1}^{e1} ... s_{iN}^{eN} over an indexed generating set.
struct Word {
  struct Block {
    std::size_t gen = 0;
    std::int64_t exp = 0;
    bool operator==(const Block&) const = default;
  };
  std::vector<Block> blocks;

  std::size_t size() const { return blocks.size(); }
  bool empty() const { return blocks.empty(); }
  bool operator==(const Word&) const = default;
};

/// Membership of an element in a level of the derived series.
struct DerivedLevel {
  std::string description;
};

class GroupSpec {
 public:
  GroupSpec(GroupKind kind, std::vector<GroupElement> generators, std::vector<std::string> names = {},
            std::size_t dim = 1);

  static GroupSpec integers();
  static GroupSpec lattice(std::size_t dim);
  /// Z ⋊ Z/2 with generators given as names parsed by parse_semidirect
  /// (e.g. "a", "ab", "[a,ab]").
  static GroupSpec semidirect(const std::vector<std::string>& generator_names);

  GroupKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  const std::vector<std::string>& names() const { return names_; }
  GroupElement identity() const { return GroupElement::identity(kind_, dim_); }

  /// Same group, different generating set.
  GroupSpec with_generators(std::vector<GroupElement> generators, std::vector<std::string> names = {}) const;

  /// Number of nontrivial terms G^(0), ..., G^(n-1) of the derived series:
  /// 1 for abelian groups, 2 for Z ⋊ Z/2.
  std::size_t derived_length() const;
  /// Exact membership g ∈ G^(level).
  bool in_derived(const GroupElement& g, std::size_t level) const;
  std::vector<DerivedLevel> derived_series() const;

  /// Elements the generation check must reach (a, b for the dihedral group;
  /// unit vectors for lattices).
  std::vector<GroupElement> generation_witnesses() const;

  void check_kind(const GroupElement& g) const;

 private:
  GroupKind kind_;
  std::size_t dim_;
  std::vector<GroupElement> generators_;
  std::vector<std::string> names_;
};

/// Parses a dihedral element written in a, b, A (= a^-1), commutators
/// [x,y] and integer powers x^n, e.g. "ab", "a^-2", "[a,ab]".
GroupElement parse_semidirect(std::string_view text);

GroupElement evaluate(const Word& w, const GroupSpec& spec);

/// Elements of word length <= radius over S ∪ S^-1, ordered by word length
/// and then by element order. Includes the identity.
std::vector<GroupElement> ball(const GroupSpec& spec, std::size_t radius);

/// Word lengths over S ∪ S^-1 for every element of the ball of the given radius.
class WordLengthTable {
 public:
  WordLengthTable(const GroupSpec& spec, std::size_t radius);

  std::size_t radius() const { return radius_; }
  /// Word length, or nullopt when it exceeds the table radius.
  std::optional<std::size_t> find(const GroupElement& g) const;
  /// Word length; throws CapExceeded beyond the table radius.
  std::size_t at(const GroupElement& g) const;
  /// Elements in breadth-first order.
  const std::vector<GroupElement>& elements() const { return order_; }

 private:
  std::size_t radius_;
  std::vector<GroupElement> order_;
  std::vector<std::size_t> lengths_;  // parallel to sorted_
  std::vector<GroupElement> sorted_;
};

}  // namespace senslab
