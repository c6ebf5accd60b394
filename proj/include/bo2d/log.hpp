#pragma once

#include <functional>
#include <string>

namespace bo2d {

using WarningSink = std::function<void(const std::string&)>;

/// Routes library warnings; the default sink writes to std::clog. Returns
/// the previous sink.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace bo2d
