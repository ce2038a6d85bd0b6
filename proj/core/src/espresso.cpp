#include <sstream>

#include "tracecast/testgen.hpp"

namespace tracecast::gen {

namespace {

constexpr std::string_view indent = "        ";
constexpr std::string_view continuation = "                ";

std::string java_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '\r':
            out += "\\r";
            break;
        default:
            out += c;
        }
    }
    return out + "\"";
}

std::string resource_name(std::string const& id) {
    auto slash = id.rfind('/');
    return slash == std::string::npos ? id : id.substr(slash + 1);
}

std::string matcher(Selector const& sel) {
    return std::visit(
        [](auto const& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ResourceIdSelector>) {
                return "withId(R.id." + resource_name(s.id) + ")";
            } else if constexpr (std::is_same_v<T, XPathSelector>) {
                return "withXPath(" + java_string(s.path) + ")";
            } else {
                auto cls = "withClassName(endsWith(" + java_string(s.element_class) + "))";
                if (!s.element_text) {
                    return cls;
                }
                return "allOf(" + cls + ", withText(" + java_string(*s.element_text) + "))";
            }
        },
        sel);
}

std::string property_matcher(ActionStmt const& a) {
    switch (*a.property) {
    case PropertyKind::checked:
        return "isChecked()";
    case PropertyKind::clickable:
        return "isClickable()";
    case PropertyKind::displayed:
        return a.threshold ? "isDisplayingAtLeast(" + std::to_string(*a.threshold) + ")"
                           : "isCompletelyDisplayed()";
    case PropertyKind::enabled:
        return "isEnabled()";
    case PropertyKind::focus:
        return "hasFocus()";
    case PropertyKind::focusable:
        return "isFocusable()";
    case PropertyKind::text:
        return "withText(" + java_string(a.params.empty() ? "" : to_display(a.params.front())) +
               ")";
    case PropertyKind::child:
        return "withParent(" + matcher(*a.related) + ")";
    case PropertyKind::parent:
        return "withChild(" + matcher(*a.related) + ")";
    case PropertyKind::sibling:
        return "hasSibling(" + matcher(*a.related) + ")";
    }
    return "anything()";
}

std::string view_action(ActionStmt const& a) {
    switch (a.op) {
    case Operation::click:
        return "click()";
    case Operation::long_click:
        return "longClick()";
    case Operation::type_text:
        return "typeText(" + java_string(a.params.empty() ? "" : to_display(a.params.front())) +
               ")";
    case Operation::select:
        return "select()";
    case Operation::scroll:
        return !a.params.empty() && to_display(a.params.front()) == "up" ? "scrollUp()"
                                                                         : "scrollDown()";
    default:
        return "";
    }
}

void emit_statement(std::ostringstream& out, Statement const& st) {
    if (auto const* p = std::get_if<PauseStmt>(&st)) {
        out << indent << "pauseTest(" << p->duration_ms << ");\n";
        return;
    }
    auto const& a = std::get<ActionStmt>(st);
    switch (a.op) {
    case Operation::press_ime_action:
        out << indent << "onView(hasFocus()).perform(pressImeActionButton());\n";
        return;
    case Operation::close_keyboard:
        out << indent << "closeSoftKeyboard();\n";
        return;
    case Operation::check: {
        auto m = property_matcher(a);
        if (a.negated) {
            m = "not(" + m + ")";
        }
        out << indent << "onView(" << matcher(*a.selector) << ")\n"
            << continuation << ".check(matches(" << m << "));\n";
        return;
    }
    default:
        out << indent << "onView(" << matcher(*a.selector) << ").perform(" << view_action(a)
            << ");\n";
    }
}

} // namespace

std::string emit_espresso(TestScript const& script) {
    auto id = identifier_from(script.name);
    std::ostringstream out;
    if (!script.package_name.empty()) {
        out << "package " << script.package_name << ";\n\n";
    }
    out << "import static android.support.test.espresso.Espresso.closeSoftKeyboard;\n"
           "import static android.support.test.espresso.Espresso.onView;\n"
           "import static android.support.test.espresso.action.ViewActions.*;\n"
           "import static android.support.test.espresso.assertion.ViewAssertions.matches;\n"
           "import static android.support.test.espresso.matcher.ViewMatchers.*;\n"
           "import static org.hamcrest.Matchers.*;\n"
           "import static tracecast.espresso.Extensions.*;\n"
           "\n"
           "import android.support.test.runner.AndroidJUnit4;\n"
           "import org.junit.Test;\n"
           "import org.junit.runner.RunWith;\n"
           "\n"
           "@RunWith(AndroidJUnit4.class)\n"
        << "public class " << id << "Test {\n"
        << "\n"
        << "    @Test\n"
        << "    public void test" << id << "() {\n"
        << indent << "launchActivity(" << identifier_from(script.launch_activity)
        << ".class);\n";
    for (auto const& st : script.steps) {
        emit_statement(out, st);
    }
    out << "    }\n"
        << "}\n";
    return out.str();
}

} // namespace tracecast::gen
