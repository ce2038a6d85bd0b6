#pragma once

#include <array>
#include <string_view>

namespace tracecast {

/// Assertable element properties. The last three relate two elements.
enum class PropertyKind {
    checked,
    clickable,
    displayed,
    enabled,
    focus,
    focusable,
    text,
    child,
    parent,
    sibling,
};

inline constexpr std::array<PropertyKind, 10> all_properties{
    PropertyKind::checked, PropertyKind::clickable, PropertyKind::displayed,
    PropertyKind::enabled, PropertyKind::focus,     PropertyKind::focusable,
    PropertyKind::text,    PropertyKind::child,     PropertyKind::parent,
    PropertyKind::sibling,
};

constexpr bool is_relational(PropertyKind p) {
    return p == PropertyKind::child || p == PropertyKind::parent || p == PropertyKind::sibling;
}

std::string_view to_string(PropertyKind p);
// Throws ParseError.
PropertyKind property_from_string(std::string_view s);

} // namespace tracecast
