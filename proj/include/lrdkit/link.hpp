#pragma once

#include <string>
#include <string_view>

namespace lrdkit {

/// Wearable node placement. The hub transmitter is always at the left hip;
/// the two sensors sit at the right upper arm and the left wrist.
enum class NodePosition { LeftHip, RightUpperArm, LeftWrist };

/// Directed radio link between a hub and a receiver, possibly on another body.
/// Subjects are numbered 1..10; the transmitter position is always LeftHip.
struct LinkDescriptor {
  int tx_subject = 1;
  NodePosition tx_pos = NodePosition::LeftHip;
  int rx_subject = 1;
  NodePosition rx_pos = NodePosition::RightUpperArm;

  /// True when transmitter and receiver are worn by the same subject.
  bool on_body() const { return tx_subject == rx_subject; }
};

/// Channel category derived from a LinkDescriptor.
enum class LinkClass {
  OnBodyLhRa,
  OnBodyLhLw,
  B2bLhLh,
  B2bLhRa,
  B2bLhLw,
};

inline constexpr int kLinkClassCount = 5;
inline constexpr int kSubjectMin = 1;
inline constexpr int kSubjectMax = 10;

/// Validates subject range, hub placement, and the on-body receiver rule
/// (an on-body receiver cannot sit at the hip). Throws ArgumentError.
void validate_link(const LinkDescriptor& link);

/// Total, deterministic mapping from a valid descriptor to its class.
LinkClass classify_link(const LinkDescriptor& link);

std::string_view to_string(NodePosition pos);
std::string_view to_string(LinkClass cls);

/// Parses "LH" / "RA" / "LW"; throws ArgumentError on anything else.
NodePosition parse_node_position(std::string_view text);

std::string describe(const LinkDescriptor& link);

}  // namespace lrdkit
