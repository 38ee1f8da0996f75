#pragma once

// Abstract indices. Free labels are user-supplied names (interned); dummy
// labels live in a reserved namespace and are renumbered on normalization.

#include <compare>
#include <cstdint>
#include <string>

namespace tracktor {

enum class IndexKind : uint8_t { Tensor, Tractor };

struct Index {
    int32_t label = 0;  // > 0: interned free name; < 0: dummy id (-1, -2, ...)
    IndexKind kind = IndexKind::Tensor;
    bool up = false;

    bool is_dummy() const { return label < 0; }
    Index flipped() const { return Index{label, kind, !up}; }

    auto operator<=>(const Index&) const = default;
};

// Free-label interning (stable across a process; thread-safe).
int32_t intern_label(const std::string& name);
const std::string& label_name(int32_t id);

// Convenience constructors.
inline Index free_tensor(const std::string& name, bool up = false) {
    return Index{intern_label(name), IndexKind::Tensor, up};
}
inline Index free_tractor(const std::string& name, bool up = false) {
    return Index{intern_label(name), IndexKind::Tractor, up};
}
inline Index dummy(int32_t id, IndexKind kind, bool up) {
    return Index{-id, kind, up};  // id >= 1
}

std::string index_str(const Index& ix);

}  // namespace tracktor
