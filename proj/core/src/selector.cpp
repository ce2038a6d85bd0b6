#include "tracecast/selector.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast {

namespace {

bool is_class_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_class_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
}

[[noreturn]] void fail(std::string_view path, std::size_t pos, std::string_view what) {
    throw ParseError("bad xpath '" + std::string(path) + "' at offset " + std::to_string(pos) +
                     ": " + std::string(what));
}

} // namespace

bool is_valid_class_name(std::string_view name) {
    if (name.empty() || !is_class_start(name.front())) {
        return false;
    }
    for (char c : name) {
        if (!is_class_char(c)) {
            return false;
        }
    }
    return true;
}

std::vector<XPathStep> parse_xpath(std::string_view path) {
    std::vector<XPathStep> steps;
    std::size_t pos = 0;
    if (path.empty()) {
        fail(path, 0, "empty path");
    }
    while (pos < path.size()) {
        if (path[pos] != '/') {
            fail(path, pos, "expected '/'");
        }
        ++pos;
        std::size_t start = pos;
        if (pos >= path.size() || !is_class_start(path[pos])) {
            fail(path, pos, "expected class name");
        }
        while (pos < path.size() && is_class_char(path[pos])) {
            ++pos;
        }
        XPathStep step{std::string(path.substr(start, pos - start)), std::nullopt};
        if (pos < path.size() && path[pos] == '[') {
            ++pos;
            std::size_t digits = pos;
            long long value = 0;
            while (pos < path.size() && std::isdigit(static_cast<unsigned char>(path[pos])) != 0) {
                value = value * 10 + (path[pos] - '0');
                if (value > 1'000'000'000) {
                    fail(path, pos, "index too large");
                }
                ++pos;
            }
            if (pos == digits) {
                fail(path, pos, "expected index");
            }
            if (path[digits] == '0') {
                fail(path, digits, "index must be a positive integer");
            }
            if (pos >= path.size() || path[pos] != ']') {
                fail(path, pos, "expected ']'");
            }
            ++pos;
            step.index = static_cast<int>(value);
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string format_xpath(std::vector<XPathStep> const& steps) {
    std::string out;
    for (auto const& step : steps) {
        out += '/';
        out += step.class_name;
        if (step.index) {
            out += '[' + std::to_string(*step.index) + ']';
        }
    }
    return out;
}

void check_well_formed(Selector const& sel) {
    if (auto const* x = std::get_if<XPathSelector>(&sel)) {
        parse_xpath(x->path);
    } else if (auto const* p = std::get_if<PropertySelector>(&sel)) {
        if (p->element_class.empty()) {
            throw ParseError("property selector needs a non-empty class");
        }
    } else if (std::get<ResourceIdSelector>(sel).id.empty()) {
        throw ParseError("resource-id selector needs a non-empty id");
    }
}

std::string describe(Selector const& sel) {
    return std::visit(
        [](auto const& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ResourceIdSelector>) {
                return "id:" + s.id;
            } else if constexpr (std::is_same_v<T, XPathSelector>) {
                return "xpath:" + s.path;
            } else {
                return "props:" + s.element_class + (s.element_text ? "=\"" + *s.element_text + "\"" : "");
            }
        },
        sel);
}

std::string describe(MatchResult const& m) {
    switch (m.kind()) {
    case MatchResult::Kind::unique:
        return "unique(" + m.node() + ")";
    case MatchResult::Kind::not_found:
        return "not found";
    case MatchResult::Kind::ambiguous:
        return "ambiguous(" + std::to_string(m.count()) + " matches)";
    }
    return "?";
}

void to_json(nlohmann::json& j, Selector const& s) {
    std::visit(
        [&](auto const& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ResourceIdSelector>) {
                j = nlohmann::json{{"type", "resourceId"}, {"value", v.id}};
            } else if constexpr (std::is_same_v<T, XPathSelector>) {
                j = nlohmann::json{{"type", "xpath"}, {"value", v.path}};
            } else {
                j = nlohmann::json{{"type", "property"}, {"class", v.element_class}};
                if (v.element_text) {
                    j["text"] = *v.element_text;
                }
            }
        },
        s);
}

void from_json(nlohmann::json const& j, Selector& s) {
    auto type = j.at("type").get<std::string>();
    if (type == "resourceId") {
        s = ResourceIdSelector{j.at("value").get<std::string>()};
    } else if (type == "xpath") {
        s = XPathSelector{j.at("value").get<std::string>()};
    } else if (type == "property") {
        PropertySelector p{j.at("class").get<std::string>(), std::nullopt};
        if (auto it = j.find("text"); it != j.end() && !it->is_null()) {
            p.element_text = it->get<std::string>();
        }
        s = std::move(p);
    } else {
        throw ParseError("unknown selector type '" + type + "'");
    }
    check_well_formed(s);
}

} // namespace tracecast
