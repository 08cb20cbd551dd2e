#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rbk {

/// A finite pre-ordered set over string ids: the reflexive-transitive closure
/// of a user-supplied relation set. Immutable; "mutation" returns a copy.
///
/// Convention used throughout: a relation (a, b) means a <= b, i.e. b is the
/// higher-ranked element. Mutual reachability makes elements equivalent.
class Preorder {
 public:
  Preorder() = default;
  /// Throws SemanticError on duplicate elements or relations naming unknown ids.
  explicit Preorder(std::vector<std::string> elements,
                    std::vector<std::pair<std::string, std::string>> relations = {});

  const std::vector<std::string>& elements() const { return ids_; }
  /// The user-supplied relation pairs, deduplicated and sorted. Not the closure.
  const std::vector<std::pair<std::string, std::string>>& relations() const { return edges_; }

  std::size_t size() const { return ids_.size(); }
  bool contains(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;  // throws SemanticError on unknown id

  bool leq(const std::string& a, const std::string& b) const;
  bool lt(const std::string& a, const std::string& b) const;  // leq(a,b) && !leq(b,a)
  bool equivalent(const std::string& a, const std::string& b) const;
  bool comparable(const std::string& a, const std::string& b) const;

  bool leq_idx(std::size_t a, std::size_t b) const { return closure_[a * ids_.size() + b] != 0; }
  bool lt_idx(std::size_t a, std::size_t b) const { return leq_idx(a, b) && !leq_idx(b, a); }

  /// Blocks of mutually-reachable elements; blocks and their members sorted by id.
  std::vector<std::vector<std::string>> equivalence_classes() const;

  /// Copy with one more relation a <= b. Closure is recomputed.
  Preorder with_relation(const std::string& a, const std::string& b) const;

  bool is_total() const;  // every pair comparable
  bool is_chain() const;  // total and no two distinct elements equivalent

 private:
  void rebuild_closure();

  std::vector<std::string> ids_;  // sorted
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::vector<std::uint8_t> closure_;  // n*n, row-major, reflexive-transitive
};

/// A map between two preorders, checked by is_embedding.
struct OrderMap {
  Preorder source;
  Preorder target;
  std::map<std::string, std::string> mapping;
};

/// True iff the map preserves <= and strict < on every source pair.
/// Throws SemanticError if the mapping is not total on source or maps outside target.
bool is_embedding(const OrderMap& m);

/// True iff identity is an embedding from `coarse` into `fine`.
/// Throws SemanticError if the element sets differ.
bool refines(const Preorder& coarse, const Preorder& fine);

}  // namespace rbk
