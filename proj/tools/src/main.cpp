#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <thread>

#include "dihedra/cli/commands.hpp"

using namespace dihedra::cli;

int main(int argc, char** argv) {
  CLI::App app{"dihedral angle feasibility and realization"};
  Options options;
  std::vector<std::string> files;
  std::string engine = "default";
  std::string emit = "text";
  int jobs = 1;
  app.add_option("command", options.command, "describe, check, check-oracle, flow, lp, realize, shear, stellate, "
                                             "m3-check, m3-normal")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("files", files, "problem files")->required();
  app.add_option("--engine", engine, "flow, lp or oracle")->check(CLI::IsMember({"default", "flow", "lp", "oracle"}));
  app.add_option("--epsilon", options.epsilon, "strict flow epsilon: auto, lcm or p/q");
  app.add_option("--emit", emit, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "files processed in parallel")->check(CLI::PositiveNumber);
  app.add_option("--max-count", options.max_count, "m3-normal: largest coordinate enumerated");
  app.add_flag("--weak", options.weak, "non-strict flow; a weak structure passes m3-check");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (engine == "flow") options.engine = Engine::Flow;
  if (engine == "lp") options.engine = Engine::Lp;
  if (engine == "oracle") options.engine = Engine::Oracle;
  const Emit mode = emit == "json" ? Emit::Json : Emit::Text;

  std::vector<CommandResult> results(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < files.size(); k = next++) results[k] = run_file(options, files[k]);
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(jobs, static_cast<int>(files.size()));
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = 0;
  Json all = Json::array();
  for (size_t k = 0; k < files.size(); ++k) {
    const auto& r = results[k];
    status = std::max(status, r.exit_code);
    if (mode == Emit::Json) {
      all.push_back(r.doc);
      continue;
    }
    if (r.doc.contains("error")) {
      const auto& e = r.doc["error"];
      std::cerr << files[k];
      if (e.contains("line")) std::cerr << ":" << e["line"].get<int>() << ":" << e["column"].get<int>();
      std::cerr << ": " << e["kind"].get<std::string>() << " error: " << e["message"].get<std::string>() << "\n";
      continue;
    }
    std::cout << render(r, mode);
    if (k + 1 < files.size()) std::cout << "\n";
  }
  if (mode == Emit::Json) std::cout << (files.size() == 1 ? all[0] : all).dump(2) << "\n";
  return status;
}
