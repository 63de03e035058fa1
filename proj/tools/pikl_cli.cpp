#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fputs("pikl: no commands wired up yet\n", stderr);
  return 1;
}
