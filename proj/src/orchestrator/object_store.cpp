#include "deid/orchestrator/object_store.hpp"

#include "deid/util/digest.hpp"
#include "deid/util/text.hpp"

#include <atomic>
#include <fstream>

namespace deid::orch {

namespace fs = std::filesystem;

void ObjectStore::put_string(std::string_view key, std::string_view text) {
    put(key, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                           text.size()));
}

DirectoryStore::DirectoryStore(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
}

fs::path DirectoryStore::path_for(std::string_view key) const {
    if (key.empty()) throw Error("empty object key");
    fs::path p = root_;
    for (const auto& part : util::split(key, '/')) {
        if (part.empty() || part == "." || part == "..") {
            throw Error("invalid object key: " + std::string(key));
        }
        p /= part;
    }
    return p;
}

void DirectoryStore::put(std::string_view key, std::span<const std::uint8_t> bytes) {
    fs::path target = path_for(key);
    fs::create_directories(target.parent_path());

    static std::atomic<std::uint64_t> counter{0};
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error("object write failed: " + std::string(key));
    }
    fs::rename(tmp, target);
}

std::vector<std::uint8_t> DirectoryStore::get(std::string_view key) const {
    fs::path p = path_for(key);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ObjectNotFound("no object: " + std::string(key));
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

bool DirectoryStore::exists(std::string_view key) const {
    return fs::is_regular_file(path_for(key));
}

std::uint64_t DirectoryStore::size(std::string_view key) const {
    fs::path p = path_for(key);
    std::error_code ec;
    auto n = fs::file_size(p, ec);
    if (ec) throw ObjectNotFound("no object: " + std::string(key));
    return n;
}

std::vector<std::string> DirectoryStore::list(std::string_view prefix) const {
    std::vector<std::string> keys;
    if (!fs::exists(root_)) return keys;
    for (const auto& entry : fs::recursive_directory_iterator(root_)) {
        if (!entry.is_regular_file()) continue;
        std::string key = fs::relative(entry.path(), root_).generic_string();
        if (key.size() >= 4 && key.find(".tmp") != std::string::npos) continue;
        if (util::starts_with(key, prefix)) keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::string store_content_hash(const ObjectStore& store, std::string_view prefix) {
    std::string acc;
    for (const auto& key : store.list(prefix)) {
        auto bytes = store.get(key);
        acc += key;
        acc.push_back('\x1f');
        acc += util::hex(util::sha256(bytes));
        acc.push_back('\n');
    }
    return util::sha256_hex(acc);
}

}  // namespace deid::orch
