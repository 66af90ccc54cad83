#include <doctest.h>

#include "lrdkit/errors.hpp"
#include "lrdkit/ingest.hpp"
#include "lrdkit/link.hpp"

using namespace lrdkit;

namespace {

LinkDescriptor link(int tx, int rx, NodePosition rx_pos) {
  return {tx, NodePosition::LeftHip, rx, rx_pos};
}

ChannelTrace tiny_trace(const LinkDescriptor& l) {
  ChannelTrace t;
  t.link = l;
  t.samples = Eigen::ArrayXd::Constant(4, -60.0);
  return t;
}

}  // namespace

TEST_CASE("classify_link maps descriptors to classes") {
  CHECK(classify_link(link(3, 3, NodePosition::RightUpperArm)) == LinkClass::OnBodyLhRa);
  CHECK(classify_link(link(3, 3, NodePosition::LeftWrist)) == LinkClass::OnBodyLhLw);
  CHECK(classify_link(link(3, 7, NodePosition::LeftHip)) == LinkClass::B2bLhLh);
  CHECK(classify_link(link(3, 7, NodePosition::RightUpperArm)) == LinkClass::B2bLhRa);
  CHECK(classify_link(link(3, 7, NodePosition::LeftWrist)) == LinkClass::B2bLhLw);
}

TEST_CASE("classify_link is total over all valid descriptors") {
  for (int tx = 1; tx <= 10; ++tx) {
    for (int rx = 1; rx <= 10; ++rx) {
      for (NodePosition pos : {NodePosition::LeftHip, NodePosition::RightUpperArm,
                               NodePosition::LeftWrist}) {
        const LinkDescriptor l = link(tx, rx, pos);
        if (tx == rx && pos == NodePosition::LeftHip) {
          CHECK_THROWS_AS(validate_link(l), ArgumentError);
          continue;
        }
        validate_link(l);
        const LinkClass cls = classify_link(l);
        if (tx == rx)
          CHECK((cls == LinkClass::OnBodyLhRa || cls == LinkClass::OnBodyLhLw));
        else
          CHECK((cls == LinkClass::B2bLhLh || cls == LinkClass::B2bLhRa ||
                 cls == LinkClass::B2bLhLw));
      }
    }
  }
}

TEST_CASE("validate_link rejects bad descriptors") {
  CHECK_THROWS_AS(validate_link({0, NodePosition::LeftHip, 1, NodePosition::LeftWrist}),
                  ArgumentError);
  CHECK_THROWS_AS(validate_link({1, NodePosition::LeftHip, 11, NodePosition::LeftWrist}),
                  ArgumentError);
  CHECK_THROWS_AS(validate_link({1, NodePosition::LeftWrist, 2, NodePosition::LeftHip}),
                  ArgumentError);
  CHECK_THROWS_AS(validate_link({4, NodePosition::LeftHip, 4, NodePosition::LeftHip}),
                  ArgumentError);
}

TEST_CASE("node position parsing round-trips and rejects junk") {
  for (NodePosition pos : {NodePosition::LeftHip, NodePosition::RightUpperArm,
                           NodePosition::LeftWrist})
    CHECK(parse_node_position(to_string(pos)) == pos);
  CHECK_THROWS_AS(parse_node_position("XX"), ArgumentError);
  CHECK_THROWS_AS(parse_node_position("lh"), ArgumentError);
}

TEST_CASE("group_traces partitions by class with all classes present") {
  std::vector<ChannelTrace> traces;
  traces.push_back(tiny_trace(link(1, 1, NodePosition::RightUpperArm)));
  traces.push_back(tiny_trace(link(2, 2, NodePosition::RightUpperArm)));
  traces.push_back(tiny_trace(link(1, 2, NodePosition::LeftHip)));

  auto groups = group_traces(std::move(traces));
  CHECK(groups.size() == 5);
  CHECK(groups[LinkClass::OnBodyLhRa].size() == 2);
  CHECK(groups[LinkClass::B2bLhLh].size() == 1);
  CHECK(groups[LinkClass::OnBodyLhLw].empty());
  CHECK(groups[LinkClass::B2bLhRa].empty());
  CHECK(groups[LinkClass::B2bLhLw].empty());
}

TEST_CASE("group_traces on empty input yields five empty groups") {
  auto groups = group_traces({});
  CHECK(groups.size() == 5);
  for (const auto& [cls, list] : groups) CHECK(list.empty());
}

TEST_CASE("full directed hip-to-hip mesh over 10 subjects has 90 traces") {
  std::vector<ChannelTrace> traces;
  for (int tx = 1; tx <= 10; ++tx)
    for (int rx = 1; rx <= 10; ++rx)
      if (tx != rx) traces.push_back(tiny_trace(link(tx, rx, NodePosition::LeftHip)));
  CHECK(traces.size() == 90);  // 10 * 9 ordered pairs
  auto groups = group_traces(std::move(traces));
  CHECK(groups[LinkClass::B2bLhLh].size() == 90);
}
