#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "smartreview/graph/store.hpp"

namespace smartreview::service {

struct Account {
  std::string userId;
  std::string displayName;
};

struct Registration {
  Account account;
  std::string token;  // shown once; only its hash is kept
};

// User accounts with opaque API tokens. Tokens are 256 random bits, stored
// as BLAKE2b hashes and compared in constant time. Registering an account
// also registers its user id with the store, so provenance stays resolvable.
class Accounts {
 public:
  explicit Accounts(graph::Store& store, std::optional<std::filesystem::path> file = std::nullopt);

  // InvalidName for blank or overlong names.
  Registration registerAccount(const std::string& displayName);
  // UnknownToken when no account holds the token.
  std::string authenticate(std::string_view token) const;
  std::optional<Account> find(const std::string& userId) const;
  // The account's display name, or the id itself for built-in users.
  std::string displayName(const std::string& userId) const;
  std::size_t size() const;

 private:
  struct Stored {
    Account account;
    std::string tokenHash;  // raw bytes
  };

  void save() const;

  graph::Store& store_;
  std::optional<std::filesystem::path> file_;
  mutable std::mutex mutex_;
  std::map<std::string, Stored> accounts_;
  std::uint64_t next_ = 1;
};

}  // namespace smartreview::service
