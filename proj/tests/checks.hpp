#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "condsets/errors.hpp"

// matcher for asserting which error code a CondError carries
struct ErrcIs : Catch::Matchers::MatcherGenericBase {
  condsets::Errc want;
  explicit ErrcIs(condsets::Errc w) : want(w) {}
  bool match(const condsets::CondError& e) const { return e.code == want; }
  std::string describe() const override {
    return "carries code " + std::to_string(static_cast<int>(want));
  }
};
