#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <sijc/run.hpp>

namespace {

constexpr const char* kUsage =
    "usage: sijc <command> --config <path> [--out <path>] [--format csv|json]\n"
    "\n"
    "commands:\n"
    "  spectrum   closed-form eigensystem of the coupled model\n"
    "  evolve     propagate the configured initial state over the time grid\n"
    "  inversion  population-inversion expectation W(t) per backend\n"
    "  verify     run the built-in cross-check battery (exit 0 iff all pass)\n"
    "\n"
    "options:\n"
    "  --config <path>   JSON run configuration (required)\n"
    "  --out <path>      write the result table to a file instead of stdout\n"
    "  --format csv|json result encoding (default csv)\n";

struct CliArgs {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
};

int parse_args(int argc, char** argv, CliArgs& args) {
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return 2;
  }
  args.command = argv[1];
  if (args.command == "-h" || args.command == "--help") {
    std::fputs(kUsage, stdout);
    return -1;
  }
  if (args.command != "spectrum" && args.command != "evolve" &&
      args.command != "inversion" && args.command != "verify") {
    std::fprintf(stderr, "unknown command '%s'\n", args.command.c_str());
    std::fputs(kUsage, stderr);
    return 2;
  }
  for (int i = 2; i < argc; ++i) {
    const std::string flag = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "flag '%s' needs a value\n", flag.c_str());
        return nullptr;
      }
      return argv[++i];
    };
    if (flag == "--config") {
      const char* v = next();
      if (!v) return 2;
      args.config_path = v;
    } else if (flag == "--out") {
      const char* v = next();
      if (!v) return 2;
      args.out_path = v;
    } else if (flag == "--format") {
      const char* v = next();
      if (!v) return 2;
      args.format = v;
      if (args.format != "csv" && args.format != "json") {
        std::fprintf(stderr, "--format must be csv or json\n");
        return 2;
      }
    } else if (flag == "-h" || flag == "--help") {
      std::fputs(kUsage, stdout);
      return -1;
    } else {
      std::fprintf(stderr, "unknown flag '%s'\n", flag.c_str());
      std::fputs(kUsage, stderr);
      return 2;
    }
  }
  if (args.config_path.empty()) {
    std::fprintf(stderr, "--config is required\n");
    return 2;
  }
  return 0;
}

int emit(const sijc::Table& table, const std::string& format,
         const std::string& path) {
  const std::string text =
      format == "json" ? sijc::to_json_text(table) : sijc::to_csv(table);
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot open output file '%s'\n", path.c_str());
    return 2;
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CliArgs args;
  const int rc = parse_args(argc, argv, args);
  if (rc == -1) return 0;  // help requested
  if (rc != 0) return rc;

  try {
    const sijc::RunConfig cfg = sijc::load_config(args.config_path);
    const std::string format =
        args.format.empty() ? cfg.out_format : args.format;
    const std::string path = args.out_path.empty() ? cfg.out_path
                                                   : args.out_path;
    if (args.command == "spectrum")
      return emit(sijc::run_spectrum(cfg), format, path);
    if (args.command == "evolve")
      return emit(sijc::run_evolve(cfg), format, path);
    if (args.command == "inversion")
      return emit(sijc::run_inversion(cfg), format, path);
    const sijc::VerifyOutcome v = sijc::run_verify(cfg);
    const int erc = emit(v.table, format, path);
    if (erc != 0) return erc;
    return v.all_pass ? 0 : 1;
  } catch (const sijc::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
