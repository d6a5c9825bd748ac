#pragma once

#include <chrono>
#include <string>

#include "smartreview/graph/entity.hpp"

namespace smartreview::testing {

// Provenance at a fixed instant: `tick` milliseconds after 2021-05-01T00:00Z.
inline graph::Provenance at(const std::string& user, long long tick) {
  return {user, graph::Timestamp{std::chrono::milliseconds{1619827200000LL + tick}}};
}

}  // namespace smartreview::testing
