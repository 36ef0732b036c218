#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "tabsel/log.hpp"

int main(int argc, char** argv) {
  // Parse warnings from negative tests would otherwise flood the output.
  tabsel::set_log_sink({});
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
