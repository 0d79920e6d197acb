#pragma once

namespace plcsense {

inline constexpr const char* kVersion = "0.1.0";

}
