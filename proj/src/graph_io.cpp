#include "trustfire/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "trustfire/errors.hpp"

namespace trustfire {

namespace {

struct RawEdges {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::optional<std::uint64_t> declared_nodes;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Calls fn(line_number, trimmed_line) for every non-blank line.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty()) fn(line_no, line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

std::uint64_t parse_id(std::string_view token, const std::string& source, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw RangeError(source + ":" + std::to_string(line_no) + ": node id '" + std::string(token) +
                     "' overflows");
  }
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(source, line_no, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  if (value > kMaxNodeId) {
    throw RangeError(source + ":" + std::to_string(line_no) + ": node id " + std::string(token) +
                     " exceeds the supported maximum " + std::to_string(kMaxNodeId));
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = line.size();
    tokens.push_back(line.substr(start, stop - start));
    pos = stop;
  }
  return tokens;
}

// Recognizes "# nodes N"; any other comment yields nullopt.
std::optional<std::uint64_t> node_directive(std::string_view line, const std::string& source,
                                            std::size_t line_no) {
  auto tokens = split_ws(trim(line.substr(1)));
  if (tokens.size() == 2 && tokens[0] == "nodes") {
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
    if (ec != std::errc{} || ptr != tokens[1].data() + tokens[1].size()) {
      throw ParseError(source, line_no, "malformed '# nodes' directive");
    }
    if (n > std::uint64_t{kMaxNodeId} + 1) {
      throw RangeError(source + ":" + std::to_string(line_no) + ": declared node count too large");
    }
    return n;
  }
  return std::nullopt;
}

RawEdges parse_edge_lines(std::string_view text, const std::string& source) {
  RawEdges raw;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') {
      if (auto n = node_directive(line, source, line_no)) raw.declared_nodes = *n;
      return;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError(source, line_no,
                       "expected two node ids, found " + std::to_string(tokens.size()) + " fields");
    }
    raw.edges.emplace_back(parse_id(tokens[0], source, line_no), parse_id(tokens[1], source, line_no));
  });
  return raw;
}

std::size_t resolve_node_count(const RawEdges& raw, const std::string& source) {
  std::uint64_t max_id_plus_one = 0;
  for (auto [a, b] : raw.edges) max_id_plus_one = std::max({max_id_plus_one, a + 1, b + 1});
  if (raw.declared_nodes) {
    if (max_id_plus_one > *raw.declared_nodes) {
      throw ValidationError(source + ": node id " + std::to_string(max_id_plus_one - 1) +
                            " is outside the declared node count " +
                            std::to_string(*raw.declared_nodes));
    }
    return static_cast<std::size_t>(*raw.declared_nodes);
  }
  return static_cast<std::size_t>(max_id_plus_one);
}

void append_uint(std::string& out, std::uint64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

LoadedSocialNetwork parse_social_network(std::string_view text, const std::string& source,
                                         const EdgeListOptions& options) {
  auto raw = parse_edge_lines(text, source);
  LoadedSocialNetwork loaded;
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.edges.size());
  std::size_t node_count = 0;
  if (options.remap_ids) {
    auto& ids = loaded.external_ids;
    ids.reserve(raw.edges.size() * 2);
    for (auto [a, b] : raw.edges) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index_of = [&](std::uint64_t x) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    for (auto [a, b] : raw.edges) edges.emplace_back(index_of(a), index_of(b));
    node_count = ids.size();
  } else {
    node_count = resolve_node_count(raw, source);
    for (auto [a, b] : raw.edges) edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  loaded.graph = SocialNetwork::from_edges(node_count, edges, &loaded.stats);
  return loaded;
}

LoadedSocialNetwork load_social_network(const std::filesystem::path& path, const EdgeListOptions& options) {
  return parse_social_network(read_file(path), path.string(), options);
}

LoadedTrusteeNetwork parse_trustee_network(std::string_view text, const std::string& source) {
  auto raw = parse_edge_lines(text, source);
  const auto node_count = resolve_node_count(raw, source);
  std::vector<TrustEdge> edges;
  edges.reserve(raw.edges.size());
  for (auto [v, u] : raw.edges) edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(u)});
  LoadedTrusteeNetwork loaded;
  loaded.network = TrusteeNetwork::from_edges(node_count, edges, &loaded.stats);
  return loaded;
}

LoadedTrusteeNetwork load_trustee_network(const std::filesystem::path& path) {
  return parse_trustee_network(read_file(path), path.string());
}

void write_trustee_network(std::ostream& out, const TrusteeNetwork& gt) {
  std::string text = "# nodes ";
  append_uint(text, gt.node_count());
  text += '\n';
  for (const auto& e : gt.edges()) {
    append_uint(text, e.trustee);
    text += ' ';
    append_uint(text, e.user);
    text += '\n';
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_trustee_network(const std::filesystem::path& path, const TrusteeNetwork& gt) {
  std::ostringstream out;
  write_trustee_network(out, gt);
  write_file(path, out.str());
}

void write_social_network(const std::filesystem::path& path, const SocialNetwork& g) {
  std::string text = "# nodes ";
  append_uint(text, g.node_count());
  text += '\n';
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (v < u) continue;
      append_uint(text, u);
      text += ' ';
      append_uint(text, v);
      text += '\n';
    }
  }
  write_file(path, text);
}

std::vector<NodeId> parse_node_list(std::string_view text, const std::string& source) {
  std::vector<NodeId> nodes;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    const auto tokens = split_ws(line);
    if (tokens.size() != 1) throw ParseError(source, line_no, "expected one node id per line");
    nodes.push_back(static_cast<NodeId>(parse_id(tokens[0], source, line_no)));
  });
  return nodes;
}

std::vector<NodeId> load_node_list(const std::filesystem::path& path) {
  return parse_node_list(read_file(path), path.string());
}

void write_node_list(const std::filesystem::path& path, const std::vector<NodeId>& nodes) {
  std::string text;
  for (NodeId u : nodes) {
    append_uint(text, u);
    text += '\n';
  }
  write_file(path, text);
}

void write_id_map(const std::filesystem::path& path, const std::vector<std::uint64_t>& external_ids) {
  std::string text = "# internal external\n";
  for (std::size_t i = 0; i < external_ids.size(); ++i) {
    append_uint(text, i);
    text += ' ';
    append_uint(text, external_ids[i]);
    text += '\n';
  }
  write_file(path, text);
}

}  // namespace trustfire
