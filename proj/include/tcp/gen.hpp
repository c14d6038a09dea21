#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tcp/errors.hpp"

namespace tcp {

struct Simplex;
struct GenData;

/// Interned generator token.  A Gen names a basis element of some chain
/// group: a named cell, a bar-construction tuple, a nondegenerate cell of a
/// (twisted) cartesian product, or a tensor generator.  Equality is O(1);
/// ordering is structural and stable for the whole process run.
class Gen {
 public:
  Gen();  // the reserved empty atom

  bool operator==(const Gen& o) const { return idx_ == o.idx_; }
  bool operator!=(const Gen& o) const { return idx_ != o.idx_; }

  std::uint32_t id() const { return idx_; }
  const GenData& data() const;

  static Gen atom(std::string name);
  static Gen tuple(std::vector<long long> entries);
  static Gen cell_pair(Simplex x, Simplex y);
  static Gen tensor(Gen x, int xdeg, Gen y, int ydeg);

 private:
  explicit Gen(std::uint32_t i) : idx_(i) {}
  std::uint32_t idx_;
  friend class GenPool;
};

/// Simplex in canonical degeneracy form: strictly decreasing indices
/// (outermost first) applied to a nondegenerate core.  The empty list is
/// exactly the nondegenerate case (Eilenberg-Zilber lemma).
struct Simplex {
  std::vector<int> degs;
  Gen core;
  int core_dim = 0;

  Simplex() = default;
  Simplex(std::vector<int> d, Gen c, int cd)
      : degs(std::move(d)), core(c), core_dim(cd) {}

  int dim() const { return core_dim + static_cast<int>(degs.size()); }
  bool degenerate() const { return !degs.empty(); }

  bool operator==(const Simplex& o) const {
    return core == o.core && core_dim == o.core_dim && degs == o.degs;
  }
  bool operator!=(const Simplex& o) const { return !(*this == o); }
};

struct AtomNode {
  std::string name;
};
struct TupleNode {
  std::vector<long long> entries;
};
struct PairNode {
  Simplex x, y;  // fiber first, base second; no common degeneracy index
};
struct TensorNode {
  Gen x, y;
  int xdeg = 0, ydeg = 0;
};

using GenNode = std::variant<AtomNode, TupleNode, PairNode, TensorNode>;

struct GenData {
  GenNode node;
  std::size_t hash = 0;
};

namespace detail {

inline std::size_t hash_mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

inline std::size_t simplex_hash(const Simplex& s) {
  std::size_t h = std::hash<std::uint32_t>{}(s.core.id());
  h = hash_mix(h, static_cast<std::size_t>(s.core_dim));
  for (int j : s.degs) h = hash_mix(h, static_cast<std::size_t>(j + 1));
  return h;
}

inline std::size_t node_hash(const GenNode& n) {
  std::size_t h = n.index();
  if (const auto* a = std::get_if<AtomNode>(&n)) {
    h = hash_mix(h, std::hash<std::string>{}(a->name));
  } else if (const auto* t = std::get_if<TupleNode>(&n)) {
    for (long long e : t->entries)
      h = hash_mix(h, std::hash<long long>{}(e));
    h = hash_mix(h, t->entries.size());
  } else if (const auto* p = std::get_if<PairNode>(&n)) {
    h = hash_mix(h, simplex_hash(p->x));
    h = hash_mix(h, simplex_hash(p->y));
  } else if (const auto* w = std::get_if<TensorNode>(&n)) {
    h = hash_mix(h, w->x.id());
    h = hash_mix(h, w->y.id());
    h = hash_mix(h, static_cast<std::size_t>(w->xdeg));
    h = hash_mix(h, static_cast<std::size_t>(w->ydeg));
  }
  return h;
}

inline bool node_equal(const GenNode& a, const GenNode& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<AtomNode>(&a))
    return x->name == std::get<AtomNode>(b).name;
  if (const auto* x = std::get_if<TupleNode>(&a))
    return x->entries == std::get<TupleNode>(b).entries;
  if (const auto* x = std::get_if<PairNode>(&a)) {
    const auto& y = std::get<PairNode>(b);
    return x->x == y.x && x->y == y.y;
  }
  const auto& x = std::get<TensorNode>(a);
  const auto& y = std::get<TensorNode>(b);
  return x.x == y.x && x.y == y.y && x.xdeg == y.xdeg && x.ydeg == y.ydeg;
}

}  // namespace detail

class GenPool {
 public:
  static GenPool& instance() {
    static GenPool pool;
    return pool;
  }

  std::uint32_t intern(GenNode node) {
    GenData key{std::move(node), 0};
    key.hash = detail::node_hash(key.node);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(&key);
    if (it != index_.end()) return it->second;
    items_.push_back(std::move(key));
    std::uint32_t id = static_cast<std::uint32_t>(items_.size() - 1);
    index_.emplace(&items_.back(), id);
    return id;
  }

  const GenData& at(std::uint32_t i) const {
    std::lock_guard<std::mutex> lock(mu_);
    return items_[i];
  }

 private:
  struct Hash {
    std::size_t operator()(const GenData* d) const { return d->hash; }
  };
  struct Eq {
    bool operator()(const GenData* a, const GenData* b) const {
      return a->hash == b->hash && detail::node_equal(a->node, b->node);
    }
  };

  GenPool() { items_.push_back(GenData{AtomNode{""}, detail::node_hash(GenNode{AtomNode{""}})}); index_.emplace(&items_.back(), 0); }

  mutable std::mutex mu_;
  std::deque<GenData> items_;  // stable addresses
  std::unordered_map<const GenData*, std::uint32_t, Hash, Eq> index_;
};

inline Gen::Gen() : idx_(0) {}

inline const GenData& Gen::data() const { return GenPool::instance().at(idx_); }

inline Gen Gen::atom(std::string name) {
  return Gen(GenPool::instance().intern(AtomNode{std::move(name)}));
}
inline Gen Gen::tuple(std::vector<long long> entries) {
  return Gen(GenPool::instance().intern(TupleNode{std::move(entries)}));
}
inline Gen Gen::cell_pair(Simplex x, Simplex y) {
  return Gen(GenPool::instance().intern(PairNode{std::move(x), std::move(y)}));
}
inline Gen Gen::tensor(Gen x, int xdeg, Gen y, int ydeg) {
  return Gen(GenPool::instance().intern(TensorNode{x, y, xdeg, ydeg}));
}

int cmp(const Gen& a, const Gen& b);

inline int cmp(const Simplex& a, const Simplex& b) {
  if (a.core_dim != b.core_dim) return a.core_dim < b.core_dim ? -1 : 1;
  if (a.degs.size() != b.degs.size())
    return a.degs.size() < b.degs.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.degs.size(); ++i)
    if (a.degs[i] != b.degs[i]) return a.degs[i] < b.degs[i] ? -1 : 1;
  return cmp(a.core, b.core);
}

// Deterministic structural order; does not depend on interning order.
inline int cmp(const Gen& a, const Gen& b) {
  if (a == b) return 0;
  const GenNode& na = a.data().node;
  const GenNode& nb = b.data().node;
  if (na.index() != nb.index()) return na.index() < nb.index() ? -1 : 1;
  if (const auto* x = std::get_if<AtomNode>(&na)) {
    int c = x->name.compare(std::get<AtomNode>(nb).name);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (const auto* x = std::get_if<TupleNode>(&na)) {
    const auto& y = std::get<TupleNode>(nb);
    if (x->entries.size() != y.entries.size())
      return x->entries.size() < y.entries.size() ? -1 : 1;
    for (std::size_t i = 0; i < x->entries.size(); ++i)
      if (x->entries[i] != y.entries[i])
        return x->entries[i] < y.entries[i] ? -1 : 1;
    return 0;
  }
  if (const auto* x = std::get_if<PairNode>(&na)) {
    const auto& y = std::get<PairNode>(nb);
    if (int c = cmp(x->x, y.x)) return c;
    return cmp(x->y, y.y);
  }
  const auto& x = std::get<TensorNode>(na);
  const auto& y = std::get<TensorNode>(nb);
  if (x.xdeg != y.xdeg) return x.xdeg < y.xdeg ? -1 : 1;
  if (x.ydeg != y.ydeg) return x.ydeg < y.ydeg ? -1 : 1;
  if (int c = cmp(x.x, y.x)) return c;
  return cmp(x.y, y.y);
}

struct GenLess {
  bool operator()(const Gen& a, const Gen& b) const { return cmp(a, b) < 0; }
};

std::string to_string(const Gen& g);

inline std::string to_string(const Simplex& s) {
  std::ostringstream os;
  for (int j : s.degs) os << 's' << j << ' ';
  os << to_string(s.core);
  return os.str();
}

inline std::string to_string(const Gen& g) {
  const GenNode& n = g.data().node;
  if (const auto* a = std::get_if<AtomNode>(&n)) return a->name;
  if (const auto* t = std::get_if<TupleNode>(&n)) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < t->entries.size(); ++i) {
      if (i) os << '|';
      os << t->entries[i];
    }
    os << ']';
    return os.str();
  }
  if (const auto* p = std::get_if<PairNode>(&n)) {
    return "(" + to_string(p->x) + ", " + to_string(p->y) + ")";
  }
  const auto& w = std::get<TensorNode>(n);
  return to_string(w.x) + " (x) " + to_string(w.y);
}

}  // namespace tcp
