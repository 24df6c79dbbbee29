#include "exfb/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace exfb {

namespace {
std::mutex sink_lock;
WarningSink& sink() {
    static WarningSink s = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };
    return s;
}
} // namespace

void warn(const std::string& message) {
    std::lock_guard guard(sink_lock);
    if (sink()) sink()(message);
}

WarningSink set_warning_sink(WarningSink s) {
    std::lock_guard guard(sink_lock);
    WarningSink old = std::move(sink());
    sink() = std::move(s);
    return old;
}

} // namespace exfb
