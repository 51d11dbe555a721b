// Copyright 2026 The ogsum Authors.
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

#ifndef OGSUM_CORE_LOG_H_
#define OGSUM_CORE_LOG_H_

#include <functional>
#include <iostream>
#include <mutex>
#include <string>

namespace ogsum {

enum class LogLevel { kInfo = 0, kWarning = 1 };

using LogSink = std::function<void(LogLevel, const std::string&)>;

namespace internal {

inline std::mutex& LogMutex() {
  static std::mutex m;
  return m;
}

}  // namespace internal

// Writes "[info] ..." / "[warn] ..." lines to stderr.
inline LogSink DefaultLogSink() {
  return [](LogLevel level, const std::string& msg) {
    std::cerr << (level == LogLevel::kWarning ? "[warn] " : "[info] ") << msg
              << '\n';
  };
}

namespace internal {

inline LogSink& Sink() {
  static LogSink sink = DefaultLogSink();
  return sink;
}

}  // namespace internal

// An empty sink silences logging.
inline void SetLogSink(LogSink sink) {
  std::lock_guard<std::mutex> lock(internal::LogMutex());
  internal::Sink() = std::move(sink);
}

inline void Log(LogLevel level, const std::string& msg) {
  std::lock_guard<std::mutex> lock(internal::LogMutex());
  if (internal::Sink()) internal::Sink()(level, msg);
}

inline void LogInfo(const std::string& msg) { Log(LogLevel::kInfo, msg); }
inline void LogWarning(const std::string& msg) { Log(LogLevel::kWarning, msg); }

}  // namespace ogsum

#endif  // OGSUM_CORE_LOG_H_
