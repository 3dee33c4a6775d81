#pragma once

// CLI stub; grows subcommands as the modules land.

#include <cstdio>

namespace brank::cli {

inline int run(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "brank: subcommands not wired yet\n");
  return 64;
}

}  // namespace brank::cli
