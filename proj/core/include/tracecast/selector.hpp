#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/ui_tree.hpp"

namespace tracecast {

struct ResourceIdSelector {
    std::string id;
    friend bool operator==(ResourceIdSelector const&, ResourceIdSelector const&) = default;
};

struct XPathSelector {
    std::string path;
    friend bool operator==(XPathSelector const&, XPathSelector const&) = default;
};

// Class plus optional displayed text. Used when the node reference is gone
// by the time the interaction is observed.
struct PropertySelector {
    std::string element_class;
    std::optional<std::string> element_text;
    friend bool operator==(PropertySelector const&, PropertySelector const&) = default;
};

/// Device-independent element reference. None of the variants carry screen
/// coordinates.
using Selector = std::variant<ResourceIdSelector, XPathSelector, PropertySelector>;

enum class SelectorKind { resource_id, xpath, property };

inline SelectorKind kind_of(Selector const& s) { return static_cast<SelectorKind>(s.index()); }

/// One `/Class[index]` step of an XPath selector. The index is 1-based and
/// counts same-class siblings only.
struct XPathStep {
    std::string class_name;
    std::optional<int> index;
    friend bool operator==(XPathStep const&, XPathStep const&) = default;
};

/// Grammar: ("/" ClassName ("[" positive-integer "]")?)+ with ClassName
/// matching [A-Za-z_][A-Za-z0-9_.]*. Throws ParseError.
std::vector<XPathStep> parse_xpath(std::string_view path);
std::string format_xpath(std::vector<XPathStep> const& steps);

bool is_valid_class_name(std::string_view name);

// Throws ParseError when the selector violates its invariants.
void check_well_formed(Selector const& sel);

class MatchResult {
public:
    enum class Kind { unique, not_found, ambiguous };

    static MatchResult unique(NodeId node) { return MatchResult(Kind::unique, std::move(node), 1); }
    static MatchResult not_found() { return MatchResult(Kind::not_found, {}, 0); }
    static MatchResult ambiguous(std::size_t count) {
        return MatchResult(Kind::ambiguous, {}, count);
    }

    Kind kind() const { return kind_; }
    bool is_unique() const { return kind_ == Kind::unique; }
    NodeId const& node() const { return node_; }
    // Number of matching nodes: 1 for unique, 0 for not-found.
    std::size_t count() const { return count_; }

    friend bool operator==(MatchResult const&, MatchResult const&) = default;

private:
    MatchResult(Kind k, NodeId node, std::size_t count)
        : kind_(k), node_(std::move(node)), count_(count) {}

    Kind kind_;
    NodeId node_;
    std::size_t count_;
};

std::string describe(Selector const& sel);
std::string describe(MatchResult const& m);

void to_json(nlohmann::json& j, Selector const& s);
void from_json(nlohmann::json const& j, Selector& s);

} // namespace tracecast
