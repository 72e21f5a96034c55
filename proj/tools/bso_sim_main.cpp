#include <iostream>
#include <string>

#include "bso/config.hpp"
#include "bso/run.hpp"

namespace {

void usage(std::ostream& out) {
  out << "usage: bso-sim <config-path> [--out DIR] [--mode MODE]\n"
         "  modes: trajectory bso phi_sweep beam lockin oracle_compare\n"
         "  exit status: 0 ok, 1 config/I-O error, 2 numerical-accuracy "
         "failure\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string config_path, out_dir, mode;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "-h" || arg == "--help") {
      usage(std::cout);
      return 0;
    } else if (arg == "--out") {
      if (++i >= argc) {
        std::cerr << "error: --out requires a directory\n";
        return 1;
      }
      out_dir = argv[i];
    } else if (arg == "--mode") {
      if (++i >= argc) {
        std::cerr << "error: --mode requires a mode name\n";
        return 1;
      }
      mode = argv[i];
    } else if (!arg.empty() && arg[0] == '-') {
      std::cerr << "error: unknown option '" << arg << "'\n";
      usage(std::cerr);
      return 1;
    } else if (config_path.empty()) {
      config_path = arg;
    } else {
      std::cerr << "error: more than one config path given\n";
      usage(std::cerr);
      return 1;
    }
  }
  if (config_path.empty()) {
    usage(std::cerr);
    return 1;
  }

  try {
    bso::RunConfig cfg = bso::parse_config(config_path);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!mode.empty()) bso::apply_mode_override(cfg, mode);
    return bso::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
