#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"
#include "tracecast/events.hpp"
#include "tracecast/oracle.hpp"
#include "tracecast/trace.hpp"

namespace tracecast::tools {

// {"t":..,"type":"assertAuto","x":..,"y":..}
struct AssertAuto {
    int x = 0;
    int y = 0;
    std::int64_t timestamp = 0;
};

// {"t":..,"type":"assertManual","x":..,"y":..,"property":"text","value":"5",
//  "negated":false,"threshold":50,"relatedX":..,"relatedY":..}
struct AssertManual {
    int x = 0;
    int y = 0;
    oracle::ManualChoice choice;
    std::optional<std::pair<int, int>> related_at;
    std::int64_t timestamp = 0;
};

// Text changed by app code, not the user; exercises the recorder's filter.
struct ProgrammaticText {
    Selector selector;
    std::string text;
    std::int64_t timestamp = 0;
};

using Command = std::variant<sim::Gesture, AssertAuto, AssertManual, ProgrammaticText>;

std::int64_t timestamp_of(Command const& c);

/// One JSON object per line; blank lines and lines starting with '#' are
/// skipped. Throws ParseError naming the offending line.
std::vector<Command> parse_gesture_log(std::istream& in);
std::vector<Command> load_gesture_log(std::string const& path);

struct RecordOptions {
    std::string name;
    oracle::PropertyRegistry registry = oracle::PropertyRegistry::builtin();
};

struct RecordOutcome {
    RecordedTrace trace;
    std::vector<std::string> warnings;
};

/// Replays the log on a fresh session with a recorder attached. Gestures and
/// assertion points outside the screen are skipped with a warning.
RecordOutcome record_headless(std::shared_ptr<sim::AppSpec const> app, sim::DeviceProfile device,
                              std::vector<Command> const& commands,
                              RecordOptions const& options = {});

} // namespace tracecast::tools
