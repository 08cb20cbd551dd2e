#include "rbk/preorder.hpp"

#include <algorithm>

#include "rbk/error.hpp"

namespace rbk {

Preorder::Preorder(std::vector<std::string> elements,
                   std::vector<std::pair<std::string, std::string>> relations)
    : ids_(std::move(elements)), edges_(std::move(relations)) {
  std::sort(ids_.begin(), ids_.end());
  for (std::size_t i = 0; i + 1 < ids_.size(); ++i) {
    if (ids_[i] == ids_[i + 1]) throw SemanticError("duplicate element '" + ids_[i] + "'");
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
  for (const auto& [a, b] : edges_) {
    if (!contains(a)) throw SemanticError("relation endpoint '" + a + "' is not an element");
    if (!contains(b)) throw SemanticError("relation endpoint '" + b + "' is not an element");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  rebuild_closure();
}

void Preorder::rebuild_closure() {
  const std::size_t n = ids_.size();
  closure_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) closure_[i * n + i] = 1;
  for (const auto& [a, b] : edges_) closure_[index_.at(a) * n + index_.at(b)] = 1;
  // Warshall; n stays small (rule sets, candidate sets).
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!closure_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (closure_[k * n + j]) closure_[i * n + j] = 1;
      }
    }
  }
}

bool Preorder::contains(const std::string& id) const { return index_.count(id) != 0; }

std::size_t Preorder::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw SemanticError("unknown element '" + id + "'");
  return it->second;
}

bool Preorder::leq(const std::string& a, const std::string& b) const {
  return leq_idx(index_of(a), index_of(b));
}

bool Preorder::lt(const std::string& a, const std::string& b) const {
  return lt_idx(index_of(a), index_of(b));
}

bool Preorder::equivalent(const std::string& a, const std::string& b) const {
  const std::size_t i = index_of(a), j = index_of(b);
  return leq_idx(i, j) && leq_idx(j, i);
}

bool Preorder::comparable(const std::string& a, const std::string& b) const {
  const std::size_t i = index_of(a), j = index_of(b);
  return leq_idx(i, j) || leq_idx(j, i);
}

std::vector<std::vector<std::string>> Preorder::equivalence_classes() const {
  const std::size_t n = ids_.size();
  std::vector<std::vector<std::string>> classes;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::string> block;
    for (std::size_t j = i; j < n; ++j) {
      if (!seen[j] && leq_idx(i, j) && leq_idx(j, i)) {
        seen[j] = true;
        block.push_back(ids_[j]);
      }
    }
    classes.push_back(std::move(block));  // ids_ sorted, so blocks come out sorted
  }
  return classes;
}

Preorder Preorder::with_relation(const std::string& a, const std::string& b) const {
  index_of(a);
  index_of(b);
  auto edges = edges_;
  edges.emplace_back(a, b);
  return Preorder(ids_, std::move(edges));
}

bool Preorder::is_total() const {
  const std::size_t n = ids_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!leq_idx(i, j) && !leq_idx(j, i)) return false;
    }
  }
  return true;
}

bool Preorder::is_chain() const {
  const std::size_t n = ids_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ij = leq_idx(i, j), ji = leq_idx(j, i);
      if (ij == ji) return false;  // incomparable or equivalent
    }
  }
  return true;
}

bool is_embedding(const OrderMap& m) {
  for (const auto& e : m.source.elements()) {
    auto it = m.mapping.find(e);
    if (it == m.mapping.end()) throw SemanticError("mapping not defined for '" + e + "'");
    if (!m.target.contains(it->second)) {
      throw SemanticError("mapping image '" + it->second + "' is not a target element");
    }
  }
  for (const auto& a : m.source.elements()) {
    for (const auto& b : m.source.elements()) {
      const auto& fa = m.mapping.at(a);
      const auto& fb = m.mapping.at(b);
      if (m.source.leq(a, b) && !m.target.leq(fa, fb)) return false;
      if (m.source.lt(a, b) && !m.target.lt(fa, fb)) return false;
    }
  }
  return true;
}

bool refines(const Preorder& coarse, const Preorder& fine) {
  if (coarse.elements() != fine.elements()) {
    throw SemanticError("refines: element sets differ");
  }
  OrderMap identity{coarse, fine, {}};
  for (const auto& e : coarse.elements()) identity.mapping[e] = e;
  return is_embedding(identity);
}

}  // namespace rbk
