#include "trustfire/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <json.hpp>
#include <fmt/format.h>

#include "trustfire/errors.hpp"
#include "trustfire/experiment.hpp"
#include "trustfire/graph_io.hpp"
#include "trustfire/oracles.hpp"
#include "trustfire/verify.hpp"

namespace trustfire::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

// Options shared by every experiment subcommand: a config file and one flag
// per config key, applied on top of the file.
struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "key = value configuration file");
    for (const auto& key : config_keys()) cmd.add_option("--" + key, overrides[key], "config key " + key);
  }

  ExperimentConfig resolve(const CLI::App& cmd) const {
    ExperimentConfig config;
    if (!config_path.empty()) apply_config_text(config, read_file(config_path), config_path);
    // Table order, so rng_seed lands before anything that depends on it.
    for (const auto& key : config_keys()) {
      if (cmd.count("--" + key) > 0) set_config_value(config, key, overrides.at(key));
    }
    return config;
  }
};

Json config_json(const ExperimentConfig& config) {
  Json out = Json::object();
  for (const auto& [key, value] : config_entries(config)) out[key] = value;
  return out;
}

fs::path output_path(const ExperimentConfig& config, const std::string& name) {
  const fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir / name;
}

void write_json(const ExperimentConfig& config, const std::string& name, const Json& body) {
  write_file(output_path(config, name), body.dump(2) + "\n");
}

void report_stats(const std::string& what, const BuildStats& stats) {
  if (stats.duplicate_edges > 0) std::cerr << "note: " << what << ": dropped " << stats.duplicate_edges << " duplicate edges\n";
  if (stats.self_loops > 0) std::cerr << "note: " << what << ": dropped " << stats.self_loops << " self-loops\n";
}

SocialNetwork load_social(const ExperimentConfig& config) {
  if (config.social_graph.empty()) throw ValidationError("social_graph is required");
  auto loaded = load_social_network(config.social_graph, {config.remap_ids});
  report_stats(config.social_graph, loaded.stats);
  if (config.remap_ids) write_id_map(output_path(config, "id_map.txt"), loaded.external_ids);
  return std::move(loaded.graph);
}

TrusteeNetwork resolve_trustee_network(const ExperimentConfig& config) {
  if (!config.trustee_network.empty()) {
    auto loaded = load_trustee_network(config.trustee_network);
    report_stats(config.trustee_network, loaded.stats);
    return std::move(loaded.network);
  }
  if (config.social_graph.empty()) throw ValidationError("either trustee_network or social_graph is required");
  return build_trustees(load_social(config), config).network;
}

int cmd_build_trustees(const ExperimentConfig& config) {
  const auto g = load_social(config);
  const auto selection = build_trustees(g, config);
  const auto& gt = selection.network;
  write_trustee_network(output_path(config, "trustees.txt"), gt);

  fmt::memory_buffer log;
  fmt::format_to(std::back_inserter(log), "user,trustee,score\n");
  for (const auto& e : selection.log) fmt::format_to(std::back_inserter(log), "{},{},{}\n", e.user, e.trustee, e.score);
  write_file(output_path(config, "selection_log.csv"), std::string_view(log.data(), log.size()));

  Json summary;
  summary["config"] = config_json(config);
  summary["social_nodes"] = g.node_count();
  summary["social_edges"] = g.edge_count();
  summary["adopters"] = gt.adopter_count();
  summary["trustee_edges"] = gt.edge_count();
  summary["max_out_degree"] = gt.max_out_degree();
  write_json(config, "build-trustees.json", summary);

  std::cout << "adopters: " << gt.adopter_count() << "\n"
            << "trustee edges: " << gt.edge_count() << "\n"
            << "max out-degree d_o: " << gt.max_out_degree() << "\n";
  return kExitOk;
}

int cmd_select_seeds(const ExperimentConfig& config) {
  const auto gt = resolve_trustee_network(config);
  const auto seeds = select_seeds(gt, config.seed, &config.attack);
  write_node_list(output_path(config, "seeds.txt"), seeds);
  Json summary;
  summary["config"] = config_json(config);
  summary["seed_count"] = seeds.size();
  write_json(config, "select-seeds.json", summary);
  std::cout << "seeds: " << seeds.size() << "\n";
  return kExitOk;
}

int cmd_attack(ExperimentConfig config) {
  const auto gt = resolve_trustee_network(config);
  const auto seeds = choose_seeds(gt, config);
  if (!config.spoof_table.empty()) {
    load_spoof_table(config.attack, read_file(config.spoof_table), config.spoof_table, gt);
  }
  if (gt.adopter_count() > 0 && config.attack.k > gt.max_trustee_count()) {
    std::cerr << "warning: k = " << config.attack.k << " exceeds every adopter's trustee count (max "
              << gt.max_trustee_count() << "); no user can be compromised beyond the seeds\n";
  }
  const auto report = run_attack(gt, seeds, config.attack);

  fmt::memory_buffer it;
  fmt::format_to(std::back_inserter(it), "iteration,nc,messages\n");
  for (std::size_t t = 0; t < report.per_iteration_nc.size(); ++t) {
    fmt::format_to(std::back_inserter(it), "{},{},{}\n", t + 1, report.per_iteration_nc[t],
                   report.per_iteration_messages[t]);
  }
  write_file(output_path(config, "iterations.csv"), std::string_view(it.data(), it.size()));

  fmt::memory_buffer st;
  fmt::format_to(std::back_inserter(st), "node,p_a,p_c\n");
  for (NodeId u = 0; u < gt.node_count(); ++u) {
    fmt::format_to(std::back_inserter(st), "{},{},{}\n", u, report.final_state.aggregate[u],
                   report.final_state.compromise[u]);
  }
  write_file(output_path(config, "final_state.csv"), std::string_view(st.data(), st.size()));

  Json summary;
  summary["config"] = config_json(config);
  summary["nodes"] = gt.node_count();
  summary["adopters"] = gt.adopter_count();
  summary["seed_count"] = seeds.size();
  summary["final_nc"] = report.final_nc;
  summary["total_messages"] = report.total_messages;
  summary["total_cost"] = report.total_cost;
  write_json(config, "attack.json", summary);

  std::cout << "final_nc: " << format_number(report.final_nc) << "\n"
            << "total_messages: " << format_number(report.total_messages) << "\n"
            << "total_cost: " << format_number(report.total_cost) << "\n";
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& config) {
  if (!config.sweep_axis) throw ValidationError("sweep needs --sweep_axis (m, k, p_s, n_s or p_r)");
  const auto g = load_social(config);
  const auto rows = run_sweep(g, config);
  fmt::memory_buffer csv;
  fmt::format_to(std::back_inserter(csv), "{},final_nc,total_cost{}\n", to_string(*config.sweep_axis),
                 config.timing ? ",runtime_seconds" : "");
  for (const auto& row : rows) {
    fmt::format_to(std::back_inserter(csv), "{},{},{}", row.value, row.final_nc, row.total_cost);
    if (config.timing) fmt::format_to(std::back_inserter(csv), ",{}", row.runtime_seconds);
    fmt::format_to(std::back_inserter(csv), "\n");
  }
  const std::string_view text(csv.data(), csv.size());
  write_file(output_path(config, "sweep.csv"), text);
  Json summary;
  summary["config"] = config_json(config);
  summary["points"] = rows.size();
  write_json(config, "sweep.json", summary);
  std::cout << text;
  return kExitOk;
}

oracles::SetCoverInstance parse_set_cover(const ExperimentConfig& config) {
  oracles::SetCoverInstance instance;
  instance.k = config.attack.k;
  std::size_t max_element = 0;
  std::size_t start = 0;
  const std::string& text = config.setcover_subsets;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::vector<std::size_t> subset;
    for (double v : parse_number_list(part)) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw ValidationError("set-cover element ids must be non-negative integers");
      }
      subset.push_back(static_cast<std::size_t>(v));
      max_element = std::max(max_element, subset.back());
    }
    instance.subsets.push_back(std::move(subset));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  instance.ground_set_size = config.setcover_elements > 0 ? config.setcover_elements : max_element + 1;
  for (double v : parse_number_list(config.setcover_choice)) {
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw ValidationError("chosen subset indices must be non-negative integers");
    }
    instance.cover_choice.push_back(static_cast<std::size_t>(v));
  }
  return instance;
}

int cmd_gen_setcover(const ExperimentConfig& config) {
  oracles::SetCoverInstance instance;
  if (config.setcover_subsets.empty()) {
    Rng rng(config.rng_seed);
    instance = oracles::random_set_cover_instance(4, 4, 3, rng);
  } else {
    instance = parse_set_cover(config);
  }
  const auto reduction = oracles::gen_set_cover_instance(instance);
  const auto cascade = oracles::deterministic_cascade(reduction.network, reduction.seeds, instance.k);
  const bool covers = oracles::chosen_subsets_cover(instance);
  write_trustee_network(output_path(config, "trustees.txt"), reduction.network);
  write_node_list(output_path(config, "seeds.txt"), reduction.seeds);

  Json summary;
  summary["config"] = config_json(config);
  summary["ground_set_size"] = instance.ground_set_size;
  summary["subsets"] = instance.subsets;
  summary["cover_choice"] = instance.cover_choice;
  summary["k"] = instance.k;
  summary["nodes"] = reduction.network.node_count();
  summary["seeds"] = reduction.seeds.size();
  summary["l"] = reduction.target;
  summary["cascade_size"] = cascade.size();
  summary["covers"] = covers;
  write_json(config, "gen-setcover.json", summary);
  std::cout << "nodes: " << reduction.network.node_count() << "\n"
            << "l: " << reduction.target << "\n"
            << "cascade size: " << cascade.size() << "\n"
            << "chosen subsets cover: " << (covers ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_gen_synthetic(const ExperimentConfig& config) {
  const auto g = generate_preferential_attachment(config.synthetic);
  write_social_network(output_path(config, "social.txt"), g);
  Json summary;
  summary["config"] = config_json(config);
  summary["nodes"] = g.node_count();
  summary["edges"] = g.edge_count();
  write_json(config, "gen-synthetic.json", summary);
  std::cout << "nodes: " << g.node_count() << "\n" << "edges: " << g.edge_count() << "\n";
  return kExitOk;
}

int cmd_verify(std::uint64_t rng_seed, std::size_t trials, bool timing) {
  verify::Options options;
  options.rng_seed = rng_seed;
  options.forest_trials = trials;
  bool all = true;
  for (const auto& suite : verify::run_all(options)) {
    all = all && suite.passed;
    std::cout << (suite.passed ? "PASS " : "FAIL ") << suite.name << ": " << suite.detail;
    if (timing) std::cout << fmt::format(" ({:.1f}s)", suite.seconds);
    std::cout << "\n";
  }
  std::cout << (all ? "all suites passed" : "verification FAILED") << "\n";
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forest fire attack model for trustee-based social authentication"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    ConfigFlags flags;
  };
  std::map<std::string, Sub> subs;
  const std::pair<const char*, const char*> experiment_commands[] = {
      {"build-trustees", "select trustees for every adopter of a social graph"},
      {"select-seeds", "choose seed users on a trustee network"},
      {"attack", "run the attack model and write per-iteration reports"},
      {"sweep", "rerun the pipeline across values of one parameter"},
      {"gen-setcover", "write a set-cover reduction network"},
      {"gen-synthetic", "write a preferential-attachment social graph"},
  };
  for (const auto& [name, help] : experiment_commands) {
    auto& sub = subs[name];
    sub.app = app.add_subcommand(name, help);
    sub.flags.attach(*sub.app);
  }
  std::uint64_t verify_seed = verify::Options{}.rng_seed;
  std::size_t verify_trials = verify::Options{}.forest_trials;
  bool verify_timing = false;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check the model against the oracles");
  verify_cmd->add_option("--rng_seed", verify_seed, "seed for the random test instances");
  verify_cmd->add_option("--trials", verify_trials, "Monte Carlo trials per forest")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--timing", verify_timing, "print each suite's wall time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(verify_seed, verify_trials, verify_timing);
    for (auto& [name, sub] : subs) {
      if (!sub.app->parsed()) continue;
      const auto config = sub.flags.resolve(*sub.app);
      if (name == "build-trustees") return cmd_build_trustees(config);
      if (name == "select-seeds") return cmd_select_seeds(config);
      if (name == "attack") return cmd_attack(config);
      if (name == "sweep") return cmd_sweep(config);
      if (name == "gen-setcover") return cmd_gen_setcover(config);
      if (name == "gen-synthetic") return cmd_gen_synthetic(config);
    }
  } catch (const IoError& e) {
    std::cerr << "trustfire: error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "trustfire: error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "trustfire: internal error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace trustfire::cli
