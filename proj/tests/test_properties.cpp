#include "doctest.h"
#include "properties.hpp"

using namespace catalynet;

TEST_CASE("randomized invariants") {
  for (const auto& o : props::run_all()) {
    INFO(o.name << ": " << o.detail);
    CHECK(o.ok);
  }
}
