#include "tracecast/trace.hpp"

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast {

std::string_view to_string(PropertyKind p) {
    switch (p) {
    case PropertyKind::checked:
        return "checked";
    case PropertyKind::clickable:
        return "clickable";
    case PropertyKind::displayed:
        return "displayed";
    case PropertyKind::enabled:
        return "enabled";
    case PropertyKind::focus:
        return "focus";
    case PropertyKind::focusable:
        return "focusable";
    case PropertyKind::text:
        return "text";
    case PropertyKind::child:
        return "child";
    case PropertyKind::parent:
        return "parent";
    case PropertyKind::sibling:
        return "sibling";
    }
    return "?";
}

PropertyKind property_from_string(std::string_view s) {
    for (auto p : all_properties) {
        if (to_string(p) == s) {
            return p;
        }
    }
    throw ParseError("unknown property '" + std::string(s) + "'");
}

std::int64_t timestamp_of(Action const& a) {
    return std::visit([](auto const& v) { return v.timestamp; }, a);
}

void check_well_formed(InteractionDef const& a) {
    check_well_formed(a.selector);
    if (a.type == InteractionType::type &&
        (a.props.size() != 1 || !std::holds_alternative<std::string>(a.props.front()))) {
        throw ParseError("type interaction must carry exactly one string");
    }
}

void check_well_formed(AssertionDef const& a) {
    check_well_formed(a.selector);
    if (is_relational(a.property)) {
        if (!a.related) {
            throw ParseError(std::string(to_string(a.property)) +
                             " assertion needs a second selector");
        }
        check_well_formed(*a.related);
        if (!a.values.empty()) {
            throw ParseError("relational assertion carries values");
        }
    } else if (a.related) {
        throw ParseError(std::string(to_string(a.property)) +
                         " assertion does not take a second selector");
    }
    if (a.threshold) {
        if (a.property != PropertyKind::displayed) {
            throw ParseError("threshold is only valid for displayed assertions");
        }
        if (*a.threshold < 1 || *a.threshold > 100) {
            throw ParseError("threshold must be a percentage in 1..100");
        }
    }
    if (a.property == PropertyKind::text &&
        (a.values.size() != 1 || !std::holds_alternative<std::string>(a.values.front()))) {
        throw ParseError("text assertion must carry exactly one string");
    }
}

void check_well_formed(RecordedTrace const& t) {
    std::int64_t last = 0;
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        auto const& a = t.actions[i];
        if (auto const* in = std::get_if<InteractionDef>(&a)) {
            check_well_formed(*in);
        } else if (auto const* as = std::get_if<AssertionDef>(&a)) {
            check_well_formed(*as);
        }
        auto ts = timestamp_of(a);
        if (i > 0 && ts < last) {
            throw ParseError("action " + std::to_string(i) + " goes back in time");
        }
        last = ts;
    }
}

std::string to_display(Scalar const& s) {
    return std::visit(
        [](auto const& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return nlohmann::json(v).dump();
            }
        },
        s);
}

void to_json(nlohmann::json& j, AssertionDef const& a) {
    j = nlohmann::json{{"kind", "assertion"},
                       {"type", to_string(a.property)},
                       {"selector", a.selector},
                       {"timestamp", a.timestamp},
                       {"props", a.values},
                       {"negated", a.negated}};
    if (a.related) {
        j["related"] = *a.related;
    }
    if (a.threshold) {
        j["threshold"] = *a.threshold;
    }
}

void from_json(nlohmann::json const& j, AssertionDef& a) {
    a.property = property_from_string(j.at("type").get<std::string>());
    a.selector = j.at("selector").get<Selector>();
    a.timestamp = j.at("timestamp").get<std::int64_t>();
    a.values = j.value("props", std::vector<Scalar>{});
    a.negated = j.value("negated", false);
    a.related.reset();
    a.threshold.reset();
    if (auto it = j.find("related"); it != j.end()) {
        a.related = it->get<Selector>();
    }
    if (auto it = j.find("threshold"); it != j.end()) {
        a.threshold = it->get<int>();
    }
}

void to_json(nlohmann::json& j, Action const& a) {
    std::visit(
        [&](auto const& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, InteractionDef>) {
                j = nlohmann::json{{"kind", "interaction"},
                                   {"type", to_string(v.type)},
                                   {"selector", v.selector},
                                   {"timestamp", v.timestamp},
                                   {"props", v.props}};
            } else if constexpr (std::is_same_v<T, AssertionDef>) {
                to_json(j, v);
            } else {
                j = nlohmann::json{
                    {"kind", "key"}, {"type", to_string(v.key)}, {"timestamp", v.timestamp}};
            }
        },
        a);
}

void from_json(nlohmann::json const& j, Action& a) {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "interaction") {
        InteractionDef in;
        in.type = interaction_type_from_string(j.at("type").get<std::string>());
        in.selector = j.at("selector").get<Selector>();
        in.timestamp = j.at("timestamp").get<std::int64_t>();
        in.props = j.value("props", std::vector<Scalar>{});
        a = std::move(in);
    } else if (kind == "assertion") {
        a = j.get<AssertionDef>();
    } else if (kind == "key") {
        a = KeyDef{key_type_from_string(j.at("type").get<std::string>()),
                   j.at("timestamp").get<std::int64_t>()};
    } else {
        throw ParseError("unknown action kind '" + kind + "'");
    }
}

void to_json(nlohmann::json& j, RecordedTrace const& t) {
    j = nlohmann::json{{"name", t.name},
                       {"package", t.package_name},
                       {"mainActivity", t.main_activity},
                       {"actions", t.actions}};
}

void from_json(nlohmann::json const& j, RecordedTrace& t) {
    t.name = j.value("name", std::string{});
    t.package_name = j.value("package", std::string{});
    t.main_activity = j.at("mainActivity").get<std::string>();
    t.actions = j.at("actions").get<std::vector<Action>>();
}

std::string serialize_trace(RecordedTrace const& t) { return nlohmann::json(t).dump(2) + "\n"; }

RecordedTrace parse_trace(std::string_view text) {
    RecordedTrace t;
    try {
        t = nlohmann::json::parse(text).get<RecordedTrace>();
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("trace: ") + e.what());
    }
    check_well_formed(t);
    return t;
}

} // namespace tracecast

namespace nlohmann {

void adl_serializer<tracecast::Scalar>::to_json(json& j, tracecast::Scalar const& s) {
    std::visit([&](auto const& v) { j = v; }, s);
}

void adl_serializer<tracecast::Scalar>::from_json(json const& j, tracecast::Scalar& s) {
    if (j.is_boolean()) {
        s = j.get<bool>();
    } else if (j.is_number_integer()) {
        s = j.get<std::int64_t>();
    } else if (j.is_number_float()) {
        s = j.get<double>();
    } else if (j.is_string()) {
        s = j.get<std::string>();
    } else {
        throw tracecast::ParseError("expected bool, number or string, got " + j.dump());
    }
}

} // namespace nlohmann
