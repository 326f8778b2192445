#include <iostream>

#include "lsg/acceptance.hpp"

int main() {
  const auto results = lsg::acceptance::run_all(lsg::acceptance::kDefaultSeed, std::cout);
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}
