#include "smartreview/service/accounts.hpp"

#include <sodium.h>

#include <fstream>

#include "json.hpp"
#include "smartreview/error.hpp"

namespace smartreview::service {

using json = nlohmann::json;

namespace {

constexpr std::size_t kTokenBytes = 32;
constexpr std::size_t kMaxNameLength = 200;

void ensureSodium() {
  if (sodium_init() < 0) throw Error(ErrorCode::IoError, "libsodium failed to initialize");
}

std::string hashToken(std::string_view token) {
  std::string out(crypto_generichash_BYTES, '\0');
  crypto_generichash(reinterpret_cast<unsigned char*>(out.data()), out.size(),
                     reinterpret_cast<const unsigned char*>(token.data()), token.size(), nullptr,
                     0);
  return out;
}

std::string toHex(std::string_view bytes) {
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), reinterpret_cast<const unsigned char*>(bytes.data()),
                 bytes.size());
  out.pop_back();
  return out;
}

std::optional<std::string> fromHex(std::string_view hex) {
  std::string out(hex.size() / 2, '\0');
  std::size_t len = 0;
  if (sodium_hex2bin(reinterpret_cast<unsigned char*>(out.data()), out.size(), hex.data(),
                     hex.size(), nullptr, &len, nullptr) != 0 ||
      len != out.size()) {
    return std::nullopt;
  }
  return out;
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

}  // namespace

Accounts::Accounts(graph::Store& store, std::optional<std::filesystem::path> file)
    : store_(store), file_(std::move(file)) {
  ensureSodium();
  if (!file_ || !std::filesystem::exists(*file_)) return;
  std::ifstream in(*file_, std::ios::binary);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception&) {
    throw Error(ErrorCode::IoError, "corrupt accounts file " + file_->string());
  }
  next_ = j.value("next", std::uint64_t{1});
  for (const auto& a : j.at("accounts")) {
    auto hash = fromHex(a.at("tokenHash").get<std::string>());
    if (!hash) throw Error(ErrorCode::IoError, "corrupt token hash in " + file_->string());
    Stored s{{a.at("userId"), a.at("displayName")}, *hash};
    store_.registerUser(s.account.userId);
    accounts_.emplace(s.account.userId, std::move(s));
  }
}

Registration Accounts::registerAccount(const std::string& displayName) {
  if (blank(displayName) || displayName.size() > kMaxNameLength ||
      displayName.find_first_of("\r\n") != std::string::npos) {
    throw Error(ErrorCode::InvalidName, "display name must be one non-blank line");
  }
  unsigned char raw[kTokenBytes];
  randombytes_buf(raw, sizeof raw);
  std::string token = toHex(std::string_view(reinterpret_cast<char*>(raw), sizeof raw));
  sodium_memzero(raw, sizeof raw);

  std::lock_guard lock(mutex_);
  std::string userId;
  do {
    userId = "user" + std::to_string(next_++);
  } while (accounts_.count(userId) ||
           store_.read([&](const graph::GraphState& g) { return g.isUserRegistered(userId); }));
  store_.registerUser(userId);
  Stored s{{userId, displayName}, hashToken(token)};
  accounts_.emplace(userId, s);
  save();
  return {s.account, token};
}

std::string Accounts::authenticate(std::string_view token) const {
  std::string hash = hashToken(token);
  std::lock_guard lock(mutex_);
  // Visit every account so timing does not depend on which one matches.
  const Stored* match = nullptr;
  for (const auto& [id, s] : accounts_) {
    if (sodium_memcmp(s.tokenHash.data(), hash.data(), hash.size()) == 0) match = &s;
  }
  if (!match) throw Error(ErrorCode::UnknownToken, "unknown token");
  return match->account.userId;
}

std::optional<Account> Accounts::find(const std::string& userId) const {
  std::lock_guard lock(mutex_);
  auto it = accounts_.find(userId);
  if (it == accounts_.end()) return std::nullopt;
  return it->second.account;
}

std::string Accounts::displayName(const std::string& userId) const {
  auto a = find(userId);
  return a ? a->displayName : userId;
}

std::size_t Accounts::size() const {
  std::lock_guard lock(mutex_);
  return accounts_.size();
}

void Accounts::save() const {
  if (!file_) return;
  json j;
  j["next"] = next_;
  j["accounts"] = json::array();
  for (const auto& [id, s] : accounts_) {
    j["accounts"].push_back({{"userId", s.account.userId},
                             {"displayName", s.account.displayName},
                             {"tokenHash", toHex(s.tokenHash)}});
  }
  std::filesystem::create_directories(file_->parent_path());
  auto tmp = *file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump(1) << "\n";
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, *file_);
}

}  // namespace smartreview::service
