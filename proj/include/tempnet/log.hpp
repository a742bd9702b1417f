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

#ifndef TEMPNET_LOG_HPP
#define TEMPNET_LOG_HPP

#include <string>

namespace tempnet {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level comes from TEMPNET_LOG in {error, info, debug}; default error.
LogLevel log_level();
void log_msg(LogLevel level, const std::string& msg);

inline void log_info(const std::string& msg) { log_msg(LogLevel::Info, msg); }
inline void log_debug(const std::string& msg) { log_msg(LogLevel::Debug, msg); }
inline void log_error(const std::string& msg) { log_msg(LogLevel::Error, msg); }

}  // namespace tempnet

#endif  // TEMPNET_LOG_HPP
