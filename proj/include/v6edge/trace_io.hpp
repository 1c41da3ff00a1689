/* Copyright 2026-present the v6edge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef V6EDGE_TRACE_IO_HPP
#define V6EDGE_TRACE_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "v6edge/packet.hpp"

namespace v6edge {

/// Malformed trace record. `line` is 1-based when parsing a whole stream and
/// 0 when parsing a single record out of context.
class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// Parses one JSON-lines trace record. Unknown fields are rejected; every
/// malformed-address / range / missing-field case is a distinct error text.
Packet parse_trace_record(std::string_view record);

/// Serializes one packet as a single JSON line (no trailing newline). The
/// byte layout is fixed so traces are reproducible bit-exactly.
std::string serialize_trace_record(const Packet& pkt);

/// Reads a whole JSON-lines stream; blank lines are rejected (a trace is
/// dense by construction). Errors carry the 1-based line number.
std::vector<Packet> read_trace(std::istream& in);
std::vector<Packet> read_trace_file(const std::string& path);

void write_trace(const std::vector<Packet>& stream, std::ostream& out);
void write_trace_file(const std::vector<Packet>& stream, const std::string& path);

}  // namespace v6edge

#endif  // V6EDGE_TRACE_IO_HPP
