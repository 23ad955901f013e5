#include "cse/env.hpp"

#include <stdexcept>

namespace cse {

Value* Frame::find(const std::string& name) {
    for (auto& [key, value] : bindings) {
        if (key == name) {
            return &value;
        }
    }
    return nullptr;
}

const Value* Frame::find(const std::string& name) const {
    return const_cast<Frame*>(this)->find(name);
}

EnvId EnvStore::create(std::optional<EnvId> parent) {
    frames_.push_back(Frame{{}, parent});
    return EnvId{static_cast<std::uint32_t>(frames_.size() - 1)};
}

const Value* EnvStore::lookup(EnvId from, const std::string& name) const {
    std::optional<EnvId> cursor = from;
    while (cursor) {
        const Frame& f = frame(*cursor);
        if (const Value* v = f.find(name)) {
            return v;
        }
        cursor = f.parent;
    }
    return nullptr;
}

void EnvStore::define(EnvId id, std::string name, Value value) {
    Frame& f = frame(id);
    if (f.find(name)) {
        throw std::logic_error("duplicate binding '" + name + "' in one frame");
    }
    f.bindings.emplace_back(std::move(name), std::move(value));
}

void EnvStore::assign(EnvId from, const std::string& name, Value value) {
    std::optional<EnvId> cursor = from;
    while (cursor) {
        Frame& f = frame(*cursor);
        if (Value* slot = f.find(name)) {
            *slot = std::move(value);
            return;
        }
        cursor = f.parent;
    }
    frame(from).bindings.emplace_back(name, std::move(value));
}

PairId PairHeap::allocate(Value car, Value cdr) {
    cells_.push_back(PairCell{std::move(car), std::move(cdr)});
    return PairId{static_cast<std::uint32_t>(cells_.size() - 1)};
}

Value PairHeap::make_list(const std::vector<Value>& items) {
    if (items.empty()) {
        return Value(Nil{});
    }
    const PairId head = allocate(items.front(), Value(Nil{}));
    PairId last = head;
    for (std::size_t i = 1; i < items.size(); ++i) {
        const PairId next = allocate(items[i], Value(Nil{}));
        cell(last).cdr = Value(next);
        last = next;
    }
    return Value(head);
}

}  // namespace cse
