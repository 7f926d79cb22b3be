// Command line front end; subcommands land here as the modules come online.
#include <cstdio>

#include "hypo/lie_algebra.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: hypo <subcommand> [args]\n");
    return 2;
  }
  std::fprintf(stderr, "unknown subcommand '%s'\n", argv[1]);
  return 2;
}
