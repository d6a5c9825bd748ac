#pragma once

#include <string_view>

#include "smartreview/article/article.hpp"

namespace smartreview::article {

// The showcase review document compiled into the binary.
std::string_view fixtureDocument();

// Imports the showcase review as the fixture user. Idempotent: returns the
// existing article when it is already present.
EntityId seedFixture(graph::Store& store);

}  // namespace smartreview::article
