// locus: command-line front door to the library. Every command reads a
// Network JSON file (or stdin for "-") and prints JSON; failures print an
// error object and exit 1 (bad input) or 2 (internal).

#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "locus/commands.hpp"
#include "locus/render.hpp"
#include "locus/service.hpp"

using namespace locus;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Service* running = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous diameter and shortcut tools for plane networks"};
  app.require_subcommand(1);

  std::string file = "-", overlay, out_path, provenance;
  double eps = 0, gap = 0, res = 0;
  bool simple = false;
  std::uint64_t seed = 1;
  std::string host = "127.0.0.1";
  int port = 8080;

  auto with_file = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Network JSON path, or - for stdin");
    return sub;
  };
  auto* diameter = with_file("diameter", "Continuous diameter and diametral pairs");
  auto* check = with_file("check", "Whether any finite shortcut set exists");
  auto* fan = with_file("fan", "Verified fan shortcut set");
  auto* epsilon = with_file("epsilon", "Shortcut set within eps of the hull diameter");
  epsilon->add_option("--eps", eps, "Slack above diam(CH)")->required();
  auto* shortcut = with_file("shortcut", "Search for a single shortcut");
  shortcut->add_option("--gap", gap, "Required improvement (default 1e-6 d)");
  shortcut->add_option("--res", res, "Leaf resolution in arclength (default 1e-3 Lmax)");
  shortcut->add_flag("--simple", simple, "Only segments whose interior avoids the locus");
  auto* scn1 = with_file("scn1", "One segment connecting a disconnected network");
  auto* polygon = with_file("polygon", "Shortcut number of a simple polygon");
  auto* k4 = with_file("k4", "Single shortcut for a plane K4");
  auto* gen3sat = app.add_subcommand("gen3sat", "Point-cover gadget for a 3CNF formula");
  gen3sat->add_option("cnf-file", file, "DIMACS CNF path, or - for stdin");
  gen3sat->add_option("--seed", seed, "Placement seed");
  gen3sat->add_option("--provenance", provenance, "Write the provenance sidecar JSON here");
  auto* render = with_file("render", "SVG with diametral pairs highlighted");
  render->add_option("--overlay", overlay, "ShortcutSet JSON to draw on top");
  render->add_option("-o,--output", out_path, "SVG output path")->required();
  auto* serve = app.add_subcommand("serve", "Start the local JSON service");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit(error_json("Usage", e.what()));
    return 1;
  }

  try {
    if (*gen3sat) {
      Json g = cmd_gen3sat(slurp(file), seed);
      if (!provenance.empty()) {
        std::ofstream(provenance) << g["provenance"].dump(2) << '\n';
      }
      emit(g["network"]);
      return 0;
    }
    if (*serve) {
      Service service;
      if (service.bind(host, port) < 0) {
        emit(error_json("Bind", "cannot bind " + host + ":" + std::to_string(port)));
        return 1;
      }
      running = &service;
      std::signal(SIGINT, [](int) { running->stop(); });
      std::cerr << "listening on http://" << host << ':' << port << '\n';
      service.listen();
      return 0;
    }
    Network net = read_network(slurp(file));
    if (*diameter) emit(cmd_diameter(net));
    if (*check) emit(cmd_check(net));
    if (*fan) emit(cmd_fan(net));
    if (*epsilon) emit(cmd_epsilon(net, eps));
    if (*shortcut) {
      SearchOptions o;
      o.gap = gap;
      o.resolution = res;
      o.simple = simple;
      emit(cmd_shortcut(net, o));
    }
    if (*scn1) emit(cmd_scn1(net));
    if (*polygon) emit(cmd_polygon(net));
    if (*k4) emit(cmd_k4(net));
    if (*render) {
      std::optional<ShortcutSet> set;
      if (!overlay.empty()) set = shortcut_set_from_json(Json::parse(slurp(overlay)));
      std::ofstream(out_path) << render_svg(net, set ? &*set : nullptr);
      emit({{"written", out_path}});
    }
    return 0;
  } catch (const Error& e) {
    emit(error_json(e));
    return exit_code(e.code());
  } catch (const Json::exception& e) {
    emit(error_json("InvalidInput", e.what()));
    return 1;
  } catch (const std::exception& e) {
    emit(error_json("Internal", e.what()));
    return 2;
  }
}
