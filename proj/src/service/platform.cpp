#include "smartreview/service/platform.hpp"

namespace smartreview::service {

Platform::Platform(std::optional<std::filesystem::path> dataDir) : dataDir_(std::move(dataDir)) {
  if (dataDir_) {
    std::filesystem::create_directories(*dataDir_);
    store_ = std::make_unique<graph::Store>(*dataDir_ / "store.log");
    versions_ = std::make_unique<versioning::Versions>(*store_, *dataDir_ / "versions");
    accounts_ = std::make_unique<Accounts>(*store_, *dataDir_ / "accounts.json");
  } else {
    store_ = std::make_unique<graph::Store>();
    versions_ = std::make_unique<versioning::Versions>(*store_);
    accounts_ = std::make_unique<Accounts>(*store_);
  }
  articles_ = std::make_unique<article::Articles>(*store_);
}

}  // namespace smartreview::service
