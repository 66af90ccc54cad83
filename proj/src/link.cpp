#include "lrdkit/link.hpp"

#include <format>

#include "lrdkit/errors.hpp"

namespace lrdkit {

void validate_link(const LinkDescriptor& link) {
  auto subject_ok = [](int s) { return s >= kSubjectMin && s <= kSubjectMax; };
  if (!subject_ok(link.tx_subject) || !subject_ok(link.rx_subject))
    throw ArgumentError(std::format("subject ids must be in {}..{} (got tx={}, rx={})",
                                    kSubjectMin, kSubjectMax, link.tx_subject,
                                    link.rx_subject));
  if (link.tx_pos != NodePosition::LeftHip)
    throw ArgumentError("transmitter position must be LH (the hub)");
  if (link.on_body() && link.rx_pos == NodePosition::LeftHip)
    throw ArgumentError("an on-body receiver cannot sit at the hub position LH");
}

LinkClass classify_link(const LinkDescriptor& link) {
  if (link.on_body()) {
    return link.rx_pos == NodePosition::RightUpperArm ? LinkClass::OnBodyLhRa
                                                      : LinkClass::OnBodyLhLw;
  }
  switch (link.rx_pos) {
    case NodePosition::LeftHip: return LinkClass::B2bLhLh;
    case NodePosition::RightUpperArm: return LinkClass::B2bLhRa;
    case NodePosition::LeftWrist: return LinkClass::B2bLhLw;
  }
  throw ArgumentError("unreachable: invalid receiver position");
}

std::string_view to_string(NodePosition pos) {
  switch (pos) {
    case NodePosition::LeftHip: return "LH";
    case NodePosition::RightUpperArm: return "RA";
    case NodePosition::LeftWrist: return "LW";
  }
  return "??";
}

std::string_view to_string(LinkClass cls) {
  switch (cls) {
    case LinkClass::OnBodyLhRa: return "onbody_lh_ra";
    case LinkClass::OnBodyLhLw: return "onbody_lh_lw";
    case LinkClass::B2bLhLh: return "b2b_lh_lh";
    case LinkClass::B2bLhRa: return "b2b_lh_ra";
    case LinkClass::B2bLhLw: return "b2b_lh_lw";
  }
  return "??";
}

NodePosition parse_node_position(std::string_view text) {
  if (text == "LH") return NodePosition::LeftHip;
  if (text == "RA") return NodePosition::RightUpperArm;
  if (text == "LW") return NodePosition::LeftWrist;
  throw ArgumentError(std::format("unknown node position '{}'; expected LH, RA or LW", text));
}

std::string describe(const LinkDescriptor& link) {
  return std::format("{}/{}->{}/{}", link.tx_subject, to_string(link.tx_pos),
                     link.rx_subject, to_string(link.rx_pos));
}

}  // namespace lrdkit
