#pragma once

#include "deid/error.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deid::orch {

struct ObjectNotFound : Error {
    using Error::Error;
};

/// Keyed blob storage. Keys use '/' separators. Writes are atomic per
/// key: a reader sees either the whole object or nothing. Overwriting a
/// key with identical content is the idempotence workers rely on.
class ObjectStore {
public:
    virtual ~ObjectStore() = default;

    virtual void put(std::string_view key, std::span<const std::uint8_t> bytes) = 0;
    virtual std::vector<std::uint8_t> get(std::string_view key) const = 0;
    virtual bool exists(std::string_view key) const = 0;
    virtual std::uint64_t size(std::string_view key) const = 0;

    /// Keys under the prefix, sorted.
    virtual std::vector<std::string> list(std::string_view prefix) const = 0;

    void put_string(std::string_view key, std::string_view text);
};

/// Local directory backend; the default at desk scale. Objects are plain
/// files; atomicity comes from write-to-temp + rename.
class DirectoryStore final : public ObjectStore {
public:
    explicit DirectoryStore(std::filesystem::path root);

    void put(std::string_view key, std::span<const std::uint8_t> bytes) override;
    std::vector<std::uint8_t> get(std::string_view key) const override;
    bool exists(std::string_view key) const override;
    std::uint64_t size(std::string_view key) const override;
    std::vector<std::string> list(std::string_view prefix) const override;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path path_for(std::string_view key) const;
    std::filesystem::path root_;
};

/// Hash of the store's full content under a prefix: digests of
/// (key, object bytes) pairs in sorted key order. Two stores with equal
/// hashes hold identical objects.
std::string store_content_hash(const ObjectStore& store, std::string_view prefix = "");

}  // namespace deid::orch
