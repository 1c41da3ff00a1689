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

#include "v6edge/trace_io.hpp"

#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace v6edge {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* name : allowed) {
      if (it.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw TraceParseError(0, std::string("unknown field '") + it.key() +
                                   "' in " + where);
    }
  }
}

const json& require(const json& obj, const char* name, const char* where) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw TraceParseError(0, std::string("missing required field '") + name +
                                 "' in " + where);
  }
  return *it;
}

uint64_t parse_u64(const json& v, const char* name, uint64_t max) {
  if (!v.is_number_integer() || v.is_number_float()) {
    throw TraceParseError(0, std::string("field '") + name +
                                 "' must be a non-negative integer");
  }
  int64_t raw = v.get<int64_t>();
  if (raw < 0 || static_cast<uint64_t>(raw) > max) {
    throw TraceParseError(0, std::string("field '") + name +
                                 "' out of range: " + std::to_string(raw));
  }
  return static_cast<uint64_t>(raw);
}

Ipv6Addr parse_addr(const json& v, const char* name) {
  if (!v.is_string()) {
    throw TraceParseError(0, std::string("field '") + name + "' must be a string");
  }
  auto addr = Ipv6Addr::try_parse(v.get<std::string>());
  if (!addr) {
    throw TraceParseError(0, std::string("malformed IPv6 address in '") + name +
                                 "': " + v.get<std::string>());
  }
  return *addr;
}

L4 parse_l4(const json& l4) {
  if (!l4.is_object()) {
    throw TraceParseError(0, "field 'l4' must be an object");
  }
  const json& kind = require(l4, "kind", "l4");
  if (!kind.is_string()) {
    throw TraceParseError(0, "l4 'kind' must be a string");
  }
  std::string k = kind.get<std::string>();
  if (k == "tcp") {
    reject_unknown_fields(l4, "l4(tcp)", {"kind", "src_port", "dst_port", "syn"});
    TcpHeader tcp;
    tcp.src_port = static_cast<uint16_t>(
        parse_u64(require(l4, "src_port", "l4(tcp)"), "src_port", 65535));
    tcp.dst_port = static_cast<uint16_t>(
        parse_u64(require(l4, "dst_port", "l4(tcp)"), "dst_port", 65535));
    const json& syn = require(l4, "syn", "l4(tcp)");
    if (!syn.is_boolean()) {
      throw TraceParseError(0, "l4 'syn' must be a boolean");
    }
    tcp.syn = syn.get<bool>();
    return tcp;
  }
  if (k == "udp") {
    reject_unknown_fields(l4, "l4(udp)", {"kind", "src_port", "dst_port"});
    UdpHeader udp;
    udp.src_port = static_cast<uint16_t>(
        parse_u64(require(l4, "src_port", "l4(udp)"), "src_port", 65535));
    udp.dst_port = static_cast<uint16_t>(
        parse_u64(require(l4, "dst_port", "l4(udp)"), "dst_port", 65535));
    return udp;
  }
  if (k == "icmpv6") {
    reject_unknown_fields(l4, "l4(icmpv6)", {"kind", "type", "ns_target"});
    Icmpv6Header icmp;
    icmp.type = static_cast<uint8_t>(
        parse_u64(require(l4, "type", "l4(icmpv6)"), "type", 255));
    if (auto it = l4.find("ns_target"); it != l4.end()) {
      icmp.ns_target = parse_addr(*it, "ns_target");
    }
    return icmp;
  }
  if (k == "other") {
    reject_unknown_fields(l4, "l4(other)", {"kind"});
    return OtherL4{};
  }
  throw TraceParseError(0, "unknown l4 kind '" + k + "'");
}

GroundTruth parse_truth(const json& truth) {
  if (!truth.is_object()) {
    throw TraceParseError(0, "field 'truth' must be an object");
  }
  reject_unknown_fields(truth, "truth", {"label", "vector"});
  const json& label = require(truth, "label", "truth");
  if (!label.is_string()) {
    throw TraceParseError(0, "truth 'label' must be a string");
  }
  std::string l = label.get<std::string>();
  auto vec_it = truth.find("vector");
  if (l == "benign") {
    if (vec_it != truth.end()) {
      throw TraceParseError(0, "benign truth must not carry a vector");
    }
    return GroundTruth{};
  }
  if (l != "attack") {
    throw TraceParseError(0, "unknown truth label '" + l + "'");
  }
  if (vec_it == truth.end() || !vec_it->is_string()) {
    throw TraceParseError(0, "attack truth requires a string 'vector'");
  }
  std::string v = vec_it->get<std::string>();
  auto vec = attack_vector_from_name(v);
  if (!vec) throw TraceParseError(0, "unknown attack vector '" + v + "'");
  return GroundTruth{*vec};
}

}  // namespace

Packet parse_trace_record(std::string_view record) {
  json root = json::parse(record, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw TraceParseError(0, "record is not a JSON object");
  }
  reject_unknown_fields(root, "record",
                        {"ts_ns", "port", "src", "dst", "hl", "l4", "truth"});
  Packet pkt;
  pkt.ts_ns = parse_u64(require(root, "ts_ns", "record"), "ts_ns",
                        std::numeric_limits<int64_t>::max());
  pkt.ingress_port = static_cast<uint16_t>(
      parse_u64(require(root, "port", "record"), "port", 65535));
  pkt.src = parse_addr(require(root, "src", "record"), "src");
  pkt.dst = parse_addr(require(root, "dst", "record"), "dst");
  pkt.hop_limit = static_cast<uint8_t>(
      parse_u64(require(root, "hl", "record"), "hl", 255));
  pkt.l4 = parse_l4(require(root, "l4", "record"));
  if (auto it = root.find("truth"); it != root.end()) {
    pkt.truth = parse_truth(*it);
  }
  validate_packet(pkt);
  return pkt;
}

std::string serialize_trace_record(const Packet& pkt) {
  // Hand-built for a fixed byte layout. All string payloads are addresses or
  // enum words, so no JSON escaping is required.
  std::string out;
  out.reserve(160);
  out += "{\"ts_ns\":";
  out += std::to_string(pkt.ts_ns);
  out += ",\"port\":";
  out += std::to_string(pkt.ingress_port);
  out += ",\"src\":\"";
  out += pkt.src.to_string();
  out += "\",\"dst\":\"";
  out += pkt.dst.to_string();
  out += "\",\"hl\":";
  out += std::to_string(pkt.hop_limit);
  out += ",\"l4\":{";
  if (const auto* tcp = std::get_if<TcpHeader>(&pkt.l4)) {
    out += "\"kind\":\"tcp\",\"src_port\":";
    out += std::to_string(tcp->src_port);
    out += ",\"dst_port\":";
    out += std::to_string(tcp->dst_port);
    out += ",\"syn\":";
    out += tcp->syn ? "true" : "false";
  } else if (const auto* udp = std::get_if<UdpHeader>(&pkt.l4)) {
    out += "\"kind\":\"udp\",\"src_port\":";
    out += std::to_string(udp->src_port);
    out += ",\"dst_port\":";
    out += std::to_string(udp->dst_port);
  } else if (const auto* icmp = std::get_if<Icmpv6Header>(&pkt.l4)) {
    out += "\"kind\":\"icmpv6\",\"type\":";
    out += std::to_string(icmp->type);
    if (icmp->ns_target) {
      out += ",\"ns_target\":\"";
      out += icmp->ns_target->to_string();
      out += '"';
    }
  } else {
    out += "\"kind\":\"other\"";
  }
  out += '}';
  if (pkt.truth) {
    if (pkt.truth->is_attack()) {
      out += ",\"truth\":{\"label\":\"attack\",\"vector\":\"";
      out += attack_vector_name(*pkt.truth->vector);
      out += "\"}";
    } else {
      out += ",\"truth\":{\"label\":\"benign\"}";
    }
  }
  out += '}';
  return out;
}

std::vector<Packet> read_trace(std::istream& in) {
  std::vector<Packet> stream;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      throw TraceParseError(lineno, "blank line in trace");
    }
    try {
      stream.push_back(parse_trace_record(line));
    } catch (const TraceParseError& e) {
      throw TraceParseError(lineno, e.what());
    } catch (const std::invalid_argument& e) {
      throw TraceParseError(lineno, e.what());
    }
  }
  return stream;
}

std::vector<Packet> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open trace file: " + path);
  }
  return read_trace(in);
}

void write_trace(const std::vector<Packet>& stream, std::ostream& out) {
  for (const Packet& pkt : stream) {
    out << serialize_trace_record(pkt) << '\n';
  }
}

void write_trace_file(const std::vector<Packet>& stream, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open trace file for writing: " + path);
  }
  write_trace(stream, out);
  out.flush();
  if (!out) {
    throw std::ios_base::failure("short write to trace file: " + path);
  }
}

}  // namespace v6edge
