#pragma once

#include "cse/value.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cse {

/// One environment frame. Bindings keep insertion order.
struct Frame {
    std::vector<std::pair<std::string, Value>> bindings;
    std::optional<EnvId> parent;

    Value* find(const std::string& name);
    const Value* find(const std::string& name) const;
};

/// Identity-bearing environment graph. Frames are addressed by EnvId, so a
/// destructive update is seen by every closure, ENV instruction and
/// continuation that holds the id.
class EnvStore {
public:
    EnvId create(std::optional<EnvId> parent);

    const Frame& frame(EnvId id) const { return frames_.at(id.index); }
    Frame& frame(EnvId id) { return frames_.at(id.index); }
    std::size_t size() const { return frames_.size(); }

    /// Walks the parent chain from `from`. Null when unbound.
    const Value* lookup(EnvId from, const std::string& name) const;

    /// Appends a binding to `id`. The name must not already be bound there.
    void define(EnvId id, std::string name, Value value);

    /// Mutates the nearest binding of `name` along the chain from `from`, or
    /// creates it in `from` itself when the chain has none.
    void assign(EnvId from, const std::string& name, Value value);

private:
    std::vector<Frame> frames_;
};

struct PairCell {
    Value car;
    Value cdr;
};

class PairHeap {
public:
    PairId allocate(Value car, Value cdr);

    const PairCell& cell(PairId id) const { return cells_.at(id.index); }
    PairCell& cell(PairId id) { return cells_.at(id.index); }
    std::size_t size() const { return cells_.size(); }

    /// Builds a proper list from `items`.
    Value make_list(const std::vector<Value>& items);

private:
    std::vector<PairCell> cells_;
};

}  // namespace cse
