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

#include <doctest.h>

#include <sstream>

#include "v6edge/hash.hpp"
#include "v6edge/packet.hpp"
#include "v6edge/trace_io.hpp"

using namespace v6edge;

namespace {

Packet dad_ns(const char* target, uint16_t port = 101) {
  Packet p;
  p.ts_ns = 0;
  p.ingress_port = port;
  p.src = Ipv6Addr{};
  p.dst = Ipv6Addr::parse("ff02::1:ff00:10");
  p.hop_limit = 255;
  p.l4 = Icmpv6Header{kIcmpv6NeighborSolicitation, Ipv6Addr::parse(target)};
  return p;
}

Packet tcp_syn(const char* src, const char* dst) {
  Packet p;
  p.src = Ipv6Addr::parse(src);
  p.dst = Ipv6Addr::parse(dst);
  p.hop_limit = 64;
  p.l4 = TcpHeader{1234, 80, true};
  return p;
}

// Valid-by-construction random packet for round-trip properties.
Packet random_packet(SplitMix64& rng) {
  Packet p;
  p.ts_ns = rng.next() >> 16;
  p.ingress_port = static_cast<uint16_t>(rng.bounded(65536));
  for (auto& b : p.src.bytes) b = static_cast<uint8_t>(rng.next());
  for (auto& b : p.dst.bytes) b = static_cast<uint8_t>(rng.next());
  p.hop_limit = static_cast<uint8_t>(rng.bounded(256));
  switch (rng.bounded(4)) {
    case 0:
      p.l4 = TcpHeader{static_cast<uint16_t>(rng.bounded(65536)),
                       static_cast<uint16_t>(rng.bounded(65536)),
                       rng.bounded(2) == 0};
      break;
    case 1:
      p.l4 = UdpHeader{static_cast<uint16_t>(rng.bounded(65536)),
                       static_cast<uint16_t>(rng.bounded(65536))};
      break;
    case 2: {
      if (rng.bounded(2) == 0) {
        Ipv6Addr target;
        for (auto& b : target.bytes) b = static_cast<uint8_t>(rng.next());
        p.l4 = Icmpv6Header{kIcmpv6NeighborSolicitation, target};
      } else {
        uint8_t type = static_cast<uint8_t>(rng.bounded(256));
        if (type == kIcmpv6NeighborSolicitation) type = kIcmpv6NeighborAdvertisement;
        p.l4 = Icmpv6Header{type, std::nullopt};
      }
      break;
    }
    default:
      p.l4 = OtherL4{};
  }
  switch (rng.bounded(3)) {
    case 0: break;  // unlabeled
    case 1: p.truth = GroundTruth{}; break;
    default:
      p.truth = GroundTruth{static_cast<AttackVector>(rng.bounded(4))};
  }
  return p;
}

}  // namespace

TEST_SUITE("packet_model") {
  TEST_CASE("is_dad_ns") {
    CHECK(is_dad_ns(dad_ns("fd00::10")));

    Packet non_dad = dad_ns("fd00::10");
    non_dad.src = Ipv6Addr::parse("fd00::10");  // NUD-style NS, not DAD
    CHECK(!is_dad_ns(non_dad));

    CHECK(!is_dad_ns(tcp_syn("fd00::10", "fd00::100")));

    Packet no_target = dad_ns("fd00::10");
    no_target.l4 = Icmpv6Header{kIcmpv6NeighborAdvertisement, std::nullopt};
    CHECK(!is_dad_ns(no_target));
  }

  TEST_CASE("registered_address projects the NS target") {
    CHECK(registered_address(dad_ns("fd00::10")) == Ipv6Addr::parse("fd00::10"));
    CHECK(registered_address(dad_ns("fd00::a:b")) == Ipv6Addr::parse("fd00::a:b"));
    CHECK_THROWS_AS(registered_address(tcp_syn("fd00::1", "fd00::2")),
                    std::logic_error);
  }

  TEST_CASE("flow key is direction-sensitive and port-free") {
    Packet ab = tcp_syn("fd00::a", "fd00::b");
    Packet ba = tcp_syn("fd00::b", "fd00::a");
    CHECK(flow_key(ab) == (FlowKey{ab.src, ab.dst}));
    CHECK(flow_key(ab) != flow_key(ba));

    Packet other_ports = ab;
    other_ports.l4 = TcpHeader{9999, 443, false};
    CHECK(flow_key(ab) == flow_key(other_ports));

    auto bytes = flow_key(ab).bytes();
    CHECK(bytes.size() == 32);
    CHECK(bytes[15] == 0x0a);
    CHECK(bytes[31] == 0x0b);
  }

  TEST_CASE("validate_packet enforces the ns_target coupling") {
    CHECK_NOTHROW(validate_packet(dad_ns("fd00::10")));
    Packet bad = dad_ns("fd00::10");
    bad.l4 = Icmpv6Header{kIcmpv6NeighborSolicitation, std::nullopt};
    CHECK_THROWS_AS(validate_packet(bad), std::invalid_argument);
    bad.l4 = Icmpv6Header{kIcmpv6EchoRequest, Ipv6Addr::parse("fd00::1")};
    CHECK_THROWS_AS(validate_packet(bad), std::invalid_argument);
  }

  TEST_CASE("packet view hides ground truth") {
    Packet p = tcp_syn("fd00::1", "fd00::2");
    p.truth = GroundTruth{AttackVector::IntFlood};
    PacketView view(p);
    CHECK(view.src() == p.src);
    CHECK(view.hop_limit() == 64);
    // The view type exposes no truth accessor; nothing further to observe.
  }
}

TEST_SUITE("trace_io") {
  TEST_CASE("parses a full record") {
    Packet p = parse_trace_record(
        R"({"ts_ns":12,"port":3,"src":"2001:db8::1","dst":"fd00::100","hl":64,)"
        R"("l4":{"kind":"tcp","src_port":1024,"dst_port":80,"syn":true},)"
        R"("truth":{"label":"attack","vector":"ext_spoof"}})");
    CHECK(p.ts_ns == 12);
    CHECK(p.ingress_port == 3);
    CHECK(p.hop_limit == 64);
    CHECK(std::get<TcpHeader>(p.l4).syn);
    CHECK(p.truth->vector == AttackVector::ExtSpoof);
  }

  TEST_CASE("distinct parse errors") {
    // hop limit out of range
    CHECK_THROWS_WITH_AS(
        parse_trace_record(
            R"({"ts_ns":0,"port":1,"src":"::1","dst":"::2","hl":300,"l4":{"kind":"other"}})"),
        doctest::Contains("out of range"), TraceParseError);
    // malformed address
    CHECK_THROWS_WITH_AS(
        parse_trace_record(
            R"({"ts_ns":0,"port":1,"src":"2001:::1","dst":"::2","hl":1,"l4":{"kind":"other"}})"),
        doctest::Contains("malformed IPv6 address"), TraceParseError);
    // missing required field
    CHECK_THROWS_WITH_AS(
        parse_trace_record(R"({"ts_ns":0,"port":1,"src":"::1","hl":1,"l4":{"kind":"other"}})"),
        doctest::Contains("missing required field 'dst'"), TraceParseError);
    // unknown fields are rejected
    CHECK_THROWS_WITH_AS(
        parse_trace_record(
            R"({"ts_ns":0,"port":1,"src":"::1","dst":"::2","hl":1,"l4":{"kind":"other"},"bogus":1})"),
        doctest::Contains("unknown field 'bogus'"), TraceParseError);
    // benign truth must not carry a vector
    CHECK_THROWS_AS(
        parse_trace_record(
            R"({"ts_ns":0,"port":1,"src":"::1","dst":"::2","hl":1,"l4":{"kind":"other"},)"
            R"("truth":{"label":"benign","vector":"int_flood"}})"),
        TraceParseError);
    // not JSON at all
    CHECK_THROWS_AS(parse_trace_record("not json"), TraceParseError);
  }

  TEST_CASE("serialize then parse is identity") {
    SplitMix64 rng(0x7EAC);
    for (int i = 0; i < 2000; ++i) {
      Packet p = random_packet(rng);
      Packet back = parse_trace_record(serialize_trace_record(p));
      CHECK(back == p);
    }
  }

  TEST_CASE("stream errors carry line numbers") {
    std::istringstream in(
        R"({"ts_ns":0,"port":1,"src":"::1","dst":"::2","hl":1,"l4":{"kind":"other"}})"
        "\n"
        R"({"ts_ns":1,"port":1,"src":"::1","dst":"::2","hl":999,"l4":{"kind":"other"}})"
        "\n");
    try {
      read_trace(in);
      FAIL("expected TraceParseError");
    } catch (const TraceParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("round trip through a stream") {
    SplitMix64 rng(0x51EA);
    std::vector<Packet> stream;
    for (int i = 0; i < 50; ++i) stream.push_back(random_packet(rng));
    std::ostringstream out;
    write_trace(stream, out);
    std::istringstream in(out.str());
    CHECK(read_trace(in) == stream);
  }
}
