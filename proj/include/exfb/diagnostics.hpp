#pragma once

#include <functional>
#include <string>

namespace exfb {

using WarningSink = std::function<void(const std::string&)>;

// Non-fatal accuracy notices go here. The default sink writes to stderr.
void warn(const std::string& message);

// Returns the previous sink. Passing an empty function silences warnings.
WarningSink set_warning_sink(WarningSink sink);

} // namespace exfb
