// Placeholder until the recursive engine lands; prints the classical count.

#include <cstdio>

int main() {
  std::printf("exponent ladder demo: engine not wired yet\n");
  return 0;
}
