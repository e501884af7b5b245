#include "trustfire/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <functional>
#include <map>
#include <fmt/format.h>

#include "trustfire/errors.hpp"
#include "trustfire/graph_io.hpp"
#include "trustfire/parallel.hpp"

namespace trustfire {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  return fmt::format("invalid value '{}' for {} (expected {})", value, key, expected);
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view value) {
  value = trim(value);
  Int out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) throw ValidationError(bad_value(key, value, "a non-negative integer"));
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  value = trim(value);
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ValidationError(bad_value(key, value, "a number"));
  }
  return out;
}

double parse_probability(std::string_view key, std::string_view value) {
  const double p = parse_double(key, value);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(bad_value(key, value, "a probability in [0,1]"));
  return p;
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError(bad_value(key, value, "true or false"));
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string join_ids(const std::vector<NodeId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

struct Key {
  std::string name;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Key>& key_table() {
  using C = ExperimentConfig;
  using V = std::string_view;
  static const std::vector<Key> table = {
      {"social_graph", [](C& c, V v) { c.social_graph = trim(v); }, [](const C& c) { return c.social_graph; }},
      {"remap_ids", [](C& c, V v) { c.remap_ids = parse_bool("remap_ids", v); },
       [](const C& c) { return std::string(c.remap_ids ? "true" : "false"); }},
      {"trustee_network", [](C& c, V v) { c.trustee_network = trim(v); },
       [](const C& c) { return c.trustee_network; }},
      {"seeds", [](C& c, V v) { c.seeds = trim(v); }, [](const C& c) { return c.seeds; }},
      {"spoof_table", [](C& c, V v) { c.spoof_table = trim(v); }, [](const C& c) { return c.spoof_table; }},
      {"output_dir", [](C& c, V v) { c.output_dir = trim(v); }, [](const C& c) { return c.output_dir; }},
      {"rng_seed",
       [](C& c, V v) {
         const auto seed = parse_integer<std::uint64_t>("rng_seed", v);
         c.rng_seed = seed;
         c.trustee.rng_seed = seed;
         c.seed.rng_seed = seed;
         c.attack.rng_seed = seed;
         c.synthetic.rng_seed = seed;
       },
       [](const C& c) { return std::to_string(c.rng_seed); }},
      {"min_degree",
       [](C& c, V v) {
         c.min_degree = parse_integer<std::size_t>("min_degree", v);
         if (c.min_degree == 0) throw ValidationError("min_degree must be at least 1");
       },
       [](const C& c) { return std::to_string(c.min_degree); }},
      {"trustee_strategy", [](C& c, V v) { c.trustee.kind = parse_trustee_strategy(trim(v)); },
       [](const C& c) { return std::string(to_string(c.trustee.kind)); }},
      {"m",
       [](C& c, V v) {
         c.trustee.m = parse_integer<std::size_t>("m", v);
         if (c.trustee.m == 0) throw ValidationError("m must be at least 1");
       },
       [](const C& c) { return std::to_string(c.trustee.m); }},
      {"tie_break",
       [](C& c, V v) {
         v = trim(v);
         if (v == "random") c.trustee.tie_break = DegreeTieBreak::Random;
         else if (v == "id") c.trustee.tie_break = DegreeTieBreak::AscendingId;
         else throw ValidationError(bad_value("tie_break", v, "random or id"));
       },
       [](const C& c) { return std::string(c.trustee.tie_break == DegreeTieBreak::Random ? "random" : "id"); }},
      {"seed_strategy", [](C& c, V v) { c.seed.kind = parse_seed_strategy(trim(v)); },
       [](const C& c) { return std::string(to_string(c.seed.kind)); }},
      {"n_s", [](C& c, V v) { c.seed.n_s = parse_integer<std::size_t>("n_s", v); },
       [](const C& c) { return std::to_string(c.seed.n_s); }},
      {"alpha", [](C& c, V v) { c.seed.alpha = parse_probability("alpha", v); },
       [](const C& c) { return format_number(c.seed.alpha); }},
      {"closeness_samples",
       [](C& c, V v) {
         c.seed.sample_count = parse_integer<std::size_t>("closeness_samples", v);
         if (c.seed.sample_count == 0) throw ValidationError("closeness_samples must be at least 1");
       },
       [](const C& c) { return std::to_string(c.seed.sample_count); }},
      {"closeness_exact_threshold",
       [](C& c, V v) { c.seed.closeness_exact_threshold = parse_integer<std::size_t>("closeness_exact_threshold", v); },
       [](const C& c) { return std::to_string(c.seed.closeness_exact_threshold); }},
      {"closeness_direction", [](C& c, V v) { c.seed.closeness_direction = parse_closeness_direction(trim(v)); },
       [](const C& c) { return std::string(to_string(c.seed.closeness_direction)); }},
      {"greedy_budget", [](C& c, V v) { c.seed.greedy_budget = parse_integer<std::size_t>("greedy_budget", v); },
       [](const C& c) { return std::to_string(c.seed.greedy_budget); }},
      {"k",
       [](C& c, V v) {
         c.attack.k = parse_integer<std::size_t>("k", v);
         if (c.attack.k == 0) throw ValidationError("k must be at least 1");
       },
       [](const C& c) { return std::to_string(c.attack.k); }},
      {"n", [](C& c, V v) { c.attack.iterations = parse_integer<std::size_t>("n", v); },
       [](const C& c) { return std::to_string(c.attack.iterations); }},
      {"p_s", [](C& c, V v) { c.attack.p_s = parse_probability("p_s", v); },
       [](const C& c) { return format_number(c.attack.p_s); }},
      {"p_r", [](C& c, V v) { c.attack.p_r = parse_probability("p_r", v); },
       [](const C& c) { return format_number(c.attack.p_r); }},
      {"c_I",
       [](C& c, V v) {
         c.attack.c_I = parse_double("c_I", v);
         if (c.attack.c_I < 0.0) throw ValidationError("c_I must be non-negative");
       },
       [](const C& c) { return format_number(c.attack.c_I); }},
      {"c_e",
       [](C& c, V v) {
         c.attack.c_e = parse_double("c_e", v);
         if (c.attack.c_e < 0.0) throw ValidationError("c_e must be non-negative");
       },
       [](const C& c) { return format_number(c.attack.c_e); }},
      {"ordering", [](C& c, V v) { c.attack.ordering = parse_ordering(trim(v)); },
       [](const C& c) { return std::string(to_string(c.attack.ordering)); }},
      {"fixed_order",
       [](C& c, V v) {
         c.attack.fixed_order.clear();
         if (trim(v).empty()) return;
         for (auto part : split(v, ',')) c.attack.fixed_order.push_back(parse_integer<NodeId>("fixed_order", part));
       },
       [](const C& c) { return join_ids(c.attack.fixed_order); }},
      {"sweep_axis",
       [](C& c, V v) {
         if (trim(v).empty()) c.sweep_axis.reset();
         else c.sweep_axis = parse_sweep_axis(trim(v));
       },
       [](const C& c) { return c.sweep_axis ? std::string(to_string(*c.sweep_axis)) : std::string(); }},
      {"sweep_values", [](C& c, V v) { c.sweep_values = parse_number_list(v); },
       [](const C& c) { return join_numbers(c.sweep_values); }},
      {"timing", [](C& c, V v) { c.timing = parse_bool("timing", v); },
       [](const C& c) { return std::string(c.timing ? "true" : "false"); }},
      {"synth_nodes", [](C& c, V v) { c.synthetic.nodes = parse_integer<std::size_t>("synth_nodes", v); },
       [](const C& c) { return std::to_string(c.synthetic.nodes); }},
      {"synth_attach", [](C& c, V v) { c.synthetic.attach = parse_integer<std::size_t>("synth_attach", v); },
       [](const C& c) { return std::to_string(c.synthetic.attach); }},
      {"synth_triad", [](C& c, V v) { c.synthetic.triad_prob = parse_probability("synth_triad", v); },
       [](const C& c) { return format_number(c.synthetic.triad_prob); }},
      {"setcover_elements",
       [](C& c, V v) { c.setcover_elements = parse_integer<std::size_t>("setcover_elements", v); },
       [](const C& c) { return std::to_string(c.setcover_elements); }},
      {"setcover_subsets", [](C& c, V v) { c.setcover_subsets = trim(v); },
       [](const C& c) { return c.setcover_subsets; }},
      {"setcover_choice", [](C& c, V v) { c.setcover_choice = trim(v); },
       [](const C& c) { return c.setcover_choice; }},
  };
  return table;
}

const Key& find_key(std::string_view name) {
  for (const auto& key : key_table())
    if (key.name == name) return key;
  throw ValidationError(fmt::format("unknown config key '{}'", name));
}

std::string_view axis_key(SweepAxis axis) { return to_string(axis); }

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& key : key_table()) out.push_back(key.name);
    return out;
  }();
  return keys;
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
  find_key(key).set(config, value);
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& key : key_table()) out.emplace_back(key.name, key.get(config));
  return out;
}

void apply_config_text(ExperimentConfig& config, std::string_view text, const std::string& source) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
      try {
        set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
      } catch (const ValidationError& e) {
        throw ParseError(source, line_no, e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "m") return SweepAxis::M;
  if (name == "k") return SweepAxis::K;
  if (name == "p_s") return SweepAxis::SpoofProbability;
  if (name == "n_s") return SweepAxis::SeedCount;
  if (name == "p_r") return SweepAxis::RecoveryProbability;
  throw ValidationError(fmt::format("unknown sweep axis '{}' (expected m, k, p_s, n_s or p_r)", name));
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::M: return "m";
    case SweepAxis::K: return "k";
    case SweepAxis::SpoofProbability: return "p_s";
    case SweepAxis::SeedCount: return "n_s";
    case SweepAxis::RecoveryProbability: return "p_r";
  }
  return "?";
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_double("number list", part));
  return out;
}

void load_spoof_table(AttackConfig& attack, std::string_view text, const std::string& source,
                      const TrusteeNetwork& gt) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      std::vector<std::string_view> fields;
      for (auto f : split(line, ' '))
        if (!f.empty()) fields.push_back(f);
      if (fields.size() != 3) throw ParseError(source, line_no, "expected 'trustee user probability'");
      try {
        const auto v = parse_integer<NodeId>("trustee", fields[0]);
        const auto u = parse_integer<NodeId>("user", fields[1]);
        const double p = parse_probability("spoofing probability", fields[2]);
        if (u >= gt.node_count() || v >= gt.node_count() || !gt.has_trustee(u, v)) {
          throw ValidationError(fmt::format("{} is not a trustee of {}", v, u));
        }
        attack.spoof_overrides[AttackConfig::spoof_key(v, u)] = p;
      } catch (const ValidationError& e) {
        throw ParseError(source, line_no, e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

TrusteeSelection build_trustees(const SocialNetwork& g, const ExperimentConfig& config) {
  const auto adopters = adopting_users(g, config.min_degree);
  return select_trustees(g, adopters, config.trustee);
}

std::vector<NodeId> choose_seeds(const TrusteeNetwork& gt, const ExperimentConfig& config) {
  if (!config.seeds.empty()) return load_node_list(config.seeds);
  return select_seeds(gt, config.seed, &config.attack);
}

std::vector<SweepRow> run_sweep(const SocialNetwork& g, const ExperimentConfig& config) {
  if (!config.sweep_axis) throw ValidationError("sweep needs sweep_axis (m, k, p_s, n_s or p_r)");
  if (config.sweep_values.empty()) throw ValidationError("sweep needs at least one value in sweep_values");
  if (!config.trustee_network.empty() || !config.seeds.empty()) {
    throw ValidationError("sweep builds its own trustee network and seeds; unset trustee_network and seeds");
  }
  const SweepAxis axis = *config.sweep_axis;
  std::vector<double> values = config.sweep_values;
  std::sort(values.begin(), values.end());

  // Validate every point up front through the ordinary key setters.
  std::vector<ExperimentConfig> points;
  points.reserve(values.size());
  for (double v : values) {
    ExperimentConfig point = config;
    set_config_value(point, axis_key(axis), format_number(v));
    points.push_back(std::move(point));
  }
  const std::string spoof_text = config.spoof_table.empty() ? std::string() : read_file(config.spoof_table);

  std::optional<TrusteeNetwork> shared_gt;
  if (axis != SweepAxis::M) shared_gt = build_trustees(g, config).network;
  std::optional<std::vector<NodeId>> shared_seeds;
  if (shared_gt && axis != SweepAxis::SeedCount && config.seed.kind != SeedStrategyKind::Greedy) {
    shared_seeds = select_seeds(*shared_gt, config.seed);
  }

  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    auto& point = points[i];
    std::optional<TrusteeNetwork> own_gt;
    if (!shared_gt) own_gt = build_trustees(g, point).network;
    const TrusteeNetwork& gt = shared_gt ? *shared_gt : *own_gt;
    if (!spoof_text.empty()) load_spoof_table(point.attack, spoof_text, point.spoof_table, gt);
    const auto seeds = shared_seeds ? *shared_seeds : select_seeds(gt, point.seed, &point.attack);
    const auto report = run_attack(gt, seeds, point.attack);
    rows[i] = {values[i], report.final_nc, report.total_cost,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
  });
  return rows;
}

}  // namespace trustfire
