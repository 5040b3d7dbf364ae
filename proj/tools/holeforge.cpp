// holeforge fill FILE [flags] | holeforge bench DIR [--csv PATH]
#include <cstdio>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>

#include "holeforge/driver.hpp"

namespace {

constexpr const char* kUsage =
    "usage: holeforge fill FILE [--depth N] [--case-depth N]\n"
    "                 [--max-candidates N] [--fuel N] [--json]\n"
    "                 [--trace-synth] [--trace-types] [--trace-eval]\n"
    "                 [--seq] [--parallel-goals] [--gen-scrutinees]\n"
    "                 [--prelude PATH]\n"
    "       holeforge bench DIR [--csv PATH] [--prelude PATH]\n"
    "\n"
    "The HOLEFORGE_PRELUDE variable names a prelude file; --prelude wins\n"
    "over it. fill exits 0 when every hole got a candidate, 1 on\n"
    "diagnostics, 2 when some hole came back empty.\n";

bool parseInt(const char* s, int& out) {
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 0 || v > 1000000) return false;
  out = static_cast<int>(v);
  return true;
}

// Fetches the value of a flag like `--depth N`; advances i past it.
const char* flagValue(int argc, char** argv, int& i, const char* flag) {
  if (i + 1 >= argc) {
    std::cerr << "holeforge: " << flag << " needs a value\n";
    return nullptr;
  }
  return argv[++i];
}

int runFillCmd(int argc, char** argv) {
  holeforge::FillFlags flags;
  std::string file;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    auto intFlag = [&](const char* name, std::optional<int>& slot) {
      const char* v = flagValue(argc, argv, i, name);
      if (!v) return false;
      int n;
      if (!parseInt(v, n)) {
        std::cerr << "holeforge: " << name << " wants a small non-negative"
                  << " integer, got '" << v << "'\n";
        return false;
      }
      slot = n;
      return true;
    };
    if (a == "--depth") {
      if (!intFlag("--depth", flags.depth)) return 1;
    } else if (a == "--case-depth") {
      if (!intFlag("--case-depth", flags.caseDepth)) return 1;
    } else if (a == "--max-candidates") {
      if (!intFlag("--max-candidates", flags.maxCandidates)) return 1;
    } else if (a == "--fuel") {
      if (!intFlag("--fuel", flags.fuel)) return 1;
    } else if (a == "--json") {
      flags.json = true;
    } else if (a == "--trace-synth") {
      flags.traceSynth = true;
    } else if (a == "--trace-types") {
      flags.traceTypes = true;
    } else if (a == "--trace-eval") {
      flags.traceEval = true;
    } else if (a == "--seq") {
      flags.seq = true;
    } else if (a == "--parallel-goals") {
      flags.parallelGoals = true;
    } else if (a == "--gen-scrutinees") {
      flags.genScrutinees = true;
    } else if (a == "--prelude") {
      const char* v = flagValue(argc, argv, i, "--prelude");
      if (!v) return 1;
      flags.preludePath = v;
    } else if (!a.empty() && a[0] == '-') {
      std::cerr << "holeforge: unknown flag '" << a << "'\n" << kUsage;
      return 1;
    } else if (file.empty()) {
      file = a;
    } else {
      std::cerr << "holeforge: fill takes one file\n" << kUsage;
      return 1;
    }
  }
  if (file.empty()) {
    std::cerr << "holeforge: fill needs a file\n" << kUsage;
    return 1;
  }
  return holeforge::runFill(file, flags, std::cout, std::cerr);
}

int runBenchCmd(int argc, char** argv) {
  holeforge::BenchFlags flags;
  std::string dir;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--csv") {
      const char* v = flagValue(argc, argv, i, "--csv");
      if (!v) return 1;
      flags.csvPath = v;
    } else if (a == "--prelude") {
      const char* v = flagValue(argc, argv, i, "--prelude");
      if (!v) return 1;
      flags.preludePath = v;
    } else if (!a.empty() && a[0] == '-') {
      std::cerr << "holeforge: unknown flag '" << a << "'\n" << kUsage;
      return 1;
    } else if (dir.empty()) {
      dir = a;
    } else {
      std::cerr << "holeforge: bench takes one directory\n" << kUsage;
      return 1;
    }
  }
  if (dir.empty()) {
    std::cerr << "holeforge: bench needs a directory\n" << kUsage;
    return 1;
  }
  return holeforge::runBench(dir, flags, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return 1;
  }
  std::string cmd = argv[1];
  if (cmd == "fill") return runFillCmd(argc - 2, argv + 2);
  if (cmd == "bench") return runBenchCmd(argc - 2, argv + 2);
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    std::cout << kUsage;
    return 0;
  }
  std::cerr << "holeforge: unknown command '" << cmd << "'\n" << kUsage;
  return 1;
}
