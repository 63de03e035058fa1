#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <string>

std::string g_binary;
std::string g_recipes;

int main(int argc, char** argv) {
  if (argc > 1) g_binary = argv[1];
  if (argc > 2) g_recipes = argv[2];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}

TEST_CASE("harness receives the binary and recipe locations") {
  CHECK(!g_binary.empty());
  CHECK(!g_recipes.empty());
}
