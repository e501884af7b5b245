#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "trustfire/graph.hpp"

namespace trustfire {

// Edge-list text format shared by social and trustee networks:
//   * one edge per line, two whitespace-separated non-negative integer ids;
//   * lines whose first non-blank character is '#' are comments, except an
//     optional "# nodes N" directive that fixes the node count (so trailing
//     isolated nodes survive a round trip);
//   * blank lines are skipped; LF and CRLF line endings are accepted.
// Trustee-network lines read "v u": v is a trustee of u.

struct EdgeListOptions {
  // Compact sparse external ids onto 0..N-1 in ascending external-id order.
  bool remap_ids = false;
};

struct LoadedSocialNetwork {
  SocialNetwork graph;
  BuildStats stats;
  // external_ids[internal] when remapped; empty otherwise.
  std::vector<std::uint64_t> external_ids;
};

struct LoadedTrusteeNetwork {
  TrusteeNetwork network;
  BuildStats stats;
};

LoadedSocialNetwork parse_social_network(std::string_view text, const std::string& source,
                                         const EdgeListOptions& options = {});
LoadedSocialNetwork load_social_network(const std::filesystem::path& path,
                                        const EdgeListOptions& options = {});

LoadedTrusteeNetwork parse_trustee_network(std::string_view text, const std::string& source);
LoadedTrusteeNetwork load_trustee_network(const std::filesystem::path& path);

void write_trustee_network(std::ostream& out, const TrusteeNetwork& gt);
void write_trustee_network(const std::filesystem::path& path, const TrusteeNetwork& gt);

void write_social_network(const std::filesystem::path& path, const SocialNetwork& g);

// One node id per line; '#' comments allowed.
std::vector<NodeId> parse_node_list(std::string_view text, const std::string& source);
std::vector<NodeId> load_node_list(const std::filesystem::path& path);
void write_node_list(const std::filesystem::path& path, const std::vector<NodeId>& nodes);

// Sidecar for remapped ids: "internal external" per line.
void write_id_map(const std::filesystem::path& path, const std::vector<std::uint64_t>& external_ids);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace trustfire
