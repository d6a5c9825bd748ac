#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "smartreview/article/article.hpp"
#include "smartreview/graph/store.hpp"
#include "smartreview/service/accounts.hpp"
#include "smartreview/versioning/versioning.hpp"

namespace smartreview::service {

// Everything one data directory holds:
//   <dir>/store.log        statement log
//   <dir>/accounts.json    accounts and token hashes
//   <dir>/versions/...     published snapshots
// Without a directory everything lives in memory.
class Platform {
 public:
  explicit Platform(std::optional<std::filesystem::path> dataDir = std::nullopt);

  graph::Store& store() { return *store_; }
  versioning::Versions& versions() { return *versions_; }
  Accounts& accounts() { return *accounts_; }
  article::Articles& articles() { return *articles_; }
  const std::optional<std::filesystem::path>& dataDir() const { return dataDir_; }

 private:
  std::optional<std::filesystem::path> dataDir_;
  std::unique_ptr<graph::Store> store_;
  std::unique_ptr<versioning::Versions> versions_;
  std::unique_ptr<Accounts> accounts_;
  std::unique_ptr<article::Articles> articles_;
};

}  // namespace smartreview::service
