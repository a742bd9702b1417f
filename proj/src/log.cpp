// Copyright 2026 The tempnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempnet/log.hpp"

#include <cstdlib>
#include <iostream>

namespace tempnet {

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("TEMPNET_LOG");
        if (!env) return LogLevel::Error;
        std::string v(env);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

void log_msg(LogLevel level, const std::string& msg) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    const char* tag = level == LogLevel::Error ? "error" : level == LogLevel::Info ? "info" : "debug";
    std::cerr << "[tempnet " << tag << "] " << msg << "\n";
}

}  // namespace tempnet
