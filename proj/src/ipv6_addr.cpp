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

#include "v6edge/ipv6_addr.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace v6edge {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// One 16-bit group, 1..4 hex digits.
uint16_t parse_group(std::string_view g) {
  if (g.empty() || g.size() > 4) {
    throw std::invalid_argument("invalid IPv6 group '" + std::string(g) + "'");
  }
  uint32_t v = 0;
  for (char c : g) {
    int h = hex_value(c);
    if (h < 0) {
      throw std::invalid_argument("invalid IPv6 group '" + std::string(g) + "'");
    }
    v = (v << 4) | static_cast<uint32_t>(h);
  }
  return static_cast<uint16_t>(v);
}

// Dotted-quad tail (e.g. "::ffff:10.1.2.3") expands to two groups.
std::array<uint16_t, 2> parse_v4_tail(std::string_view s) {
  uint32_t octets[4];
  size_t idx = 0;
  size_t pos = 0;
  while (idx < 4) {
    size_t dot = s.find('.', pos);
    std::string_view part =
        dot == std::string_view::npos ? s.substr(pos) : s.substr(pos, dot - pos);
    if (part.empty() || part.size() > 3) {
      throw std::invalid_argument("invalid IPv4 tail in IPv6 address");
    }
    uint32_t v = 0;
    for (char c : part) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("invalid IPv4 tail in IPv6 address");
      }
      v = v * 10 + static_cast<uint32_t>(c - '0');
    }
    if (v > 255) {
      throw std::invalid_argument("invalid IPv4 tail in IPv6 address");
    }
    octets[idx++] = v;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (idx != 4 || s.find('.', pos) != std::string_view::npos) {
    throw std::invalid_argument("invalid IPv4 tail in IPv6 address");
  }
  return {static_cast<uint16_t>(octets[0] << 8 | octets[1]),
          static_cast<uint16_t>(octets[2] << 8 | octets[3])};
}

// Splits "a:b:c" into groups; the last group may be a dotted quad.
std::vector<uint16_t> parse_side(std::string_view s) {
  std::vector<uint16_t> groups;
  if (s.empty()) return groups;
  size_t pos = 0;
  while (true) {
    size_t colon = s.find(':', pos);
    std::string_view part = colon == std::string_view::npos
                                ? s.substr(pos)
                                : s.substr(pos, colon - pos);
    bool last = colon == std::string_view::npos;
    if (last && part.find('.') != std::string_view::npos) {
      auto tail = parse_v4_tail(part);
      groups.push_back(tail[0]);
      groups.push_back(tail[1]);
    } else {
      groups.push_back(parse_group(part));
    }
    if (last) break;
    pos = colon + 1;
  }
  return groups;
}

}  // namespace

Ipv6Addr Ipv6Addr::parse(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty IPv6 address");
  }
  size_t gap = text.find("::");
  std::vector<uint16_t> groups;
  if (gap == std::string_view::npos) {
    groups = parse_side(text);
    if (groups.size() != 8) {
      throw std::invalid_argument("IPv6 address '" + std::string(text) +
                                  "' must have 8 groups");
    }
  } else {
    if (text.find("::", gap + 1) != std::string_view::npos) {
      throw std::invalid_argument("IPv6 address '" + std::string(text) +
                                  "' has more than one '::'");
    }
    std::vector<uint16_t> left = parse_side(text.substr(0, gap));
    std::vector<uint16_t> right = parse_side(text.substr(gap + 2));
    if (left.size() + right.size() > 7) {
      throw std::invalid_argument("IPv6 address '" + std::string(text) +
                                  "' has too many groups around '::'");
    }
    groups = std::move(left);
    groups.resize(8 - right.size(), 0);
    groups.insert(groups.end(), right.begin(), right.end());
  }
  Ipv6Addr addr;
  for (size_t i = 0; i < 8; ++i) {
    addr.bytes[2 * i] = static_cast<uint8_t>(groups[i] >> 8);
    addr.bytes[2 * i + 1] = static_cast<uint8_t>(groups[i] & 0xFF);
  }
  return addr;
}

std::optional<Ipv6Addr> Ipv6Addr::try_parse(std::string_view text) {
  try {
    return parse(text);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string Ipv6Addr::to_string() const {
  uint16_t groups[8];
  for (size_t i = 0; i < 8; ++i) {
    groups[i] = static_cast<uint16_t>(bytes[2 * i] << 8 | bytes[2 * i + 1]);
  }
  // Longest run of >=2 zero groups, leftmost on tie (RFC 5952).
  int best_start = -1, best_len = 0;
  for (int i = 0; i < 8;) {
    if (groups[i] != 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j < 8 && groups[j] == 0) ++j;
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < 2) best_start = -1;

  char buf[8];
  std::string out;
  for (int i = 0; i < 8;) {
    if (i == best_start) {
      out += "::";
      i += best_len;
      continue;
    }
    if (!out.empty() && out.back() != ':') out += ':';
    std::snprintf(buf, sizeof(buf), "%x", groups[i]);
    out += buf;
    ++i;
  }
  return out;
}

}  // namespace v6edge
