#pragma once

#include <cstdint>
#include <string>

namespace lenia::cli {

// FNV-1a, 64-bit. Used to fingerprint configs and run artifacts in the
// manifest; not cryptographic.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& s);
std::uint64_t hash_file(const std::string& path);
std::string hex64(std::uint64_t v);

}  // namespace lenia::cli
