#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qgb/io/commands.hpp"
#include "qgb/parallel.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qgb;

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << bytes;
}

fs::path resolve(const std::string& out_dir, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : fs::path(out_dir) / p;
}

int finish(const io::CommandResult& r, const fs::path& json_path, const fs::path* csv_path = nullptr) {
  write_file(json_path, io::dump(r.report));
  if (csv_path && !r.csv.empty()) write_file(*csv_path, r.csv);
  if (r.report.contains("error")) std::cerr << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
  const bool pass = r.report.contains("pass") && r.report["pass"].is_boolean() && r.report["pass"].get<bool>();
  std::cout << r.report["command"].get<std::string>() << ": " << (pass ? "pass" : "fail") << " (exit " << r.exit_code
            << ") -> " << json_path.string() << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern-Gauss-Bonnet verification for conformally flat metrics"};
  app.require_subcommand(1);
  std::string scenario_path, out_dir = ".";
  std::vector<int> dims;
  std::optional<double> tolerance;
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: QGB_THREADS or 1)")->check(CLI::NonNegativeNumber);

  auto* vk = app.add_subcommand("verify-kernels", "check the averaged kernel identities and bounds");
  vk->add_option("--dim", dims, "dimension, repeatable (default 4 6 8)");
  vk->add_option("--out", out_dir, "output directory");
  vk->add_option("--tolerance", tolerance, "relative tolerance for the exact kernel");

  std::vector<CLI::App*> scenario_cmds;
  for (auto [name, help] : {std::pair{"cgb", "defect report and isoperimetric series"},
                            std::pair{"reconstruct", "recover alpha and C and check constancy"},
                            std::pair{"limits", "limits of r dw/dr at both ends"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "scenario JSON")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tolerance", tolerance, "override the scenario tolerance");
    scenario_cmds.push_back(sub);
  }
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->add_option("--threads", threads, "worker threads")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : io::exit_config;
  }
  if (tolerance && !(*tolerance > 0.0)) {
    std::cerr << "error: --tolerance must be positive\n";
    return io::exit_config;
  }
  set_thread_count(threads);

  try {
    if (vk->parsed())
      return finish(io::run_verify_kernels(dims, {}, tolerance), resolve(out_dir, "verify_kernels.json"));
    io::Scenario s = io::load_scenario(scenario_path);
    if (scenario_cmds[0]->parsed()) {
      const fs::path csv = resolve(out_dir, s.outputs.series);
      return finish(io::run_cgb(s, tolerance), resolve(out_dir, s.outputs.report), &csv);
    }
    if (scenario_cmds[1]->parsed())
      return finish(io::run_reconstruct(s, tolerance), resolve(out_dir, s.outputs.constancy));
    return finish(io::run_limits(s, tolerance), resolve(out_dir, s.outputs.limits));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::exit_numerical;
  }
}
