#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "loadbal/instance.hpp"

namespace loadbal {

/// Instance file format (JSON):
///   {"clients":[{"id":int,"weight":int}], "servers":[{"id":int}],
///    "edges":[[clientId,serverId]]}
/// The writer emits keys in that order with arrays sorted by id, so equal
/// instances serialize to identical bytes.
std::string instance_to_json(const Instance& instance);

/// Throws InputError naming the offending field (e.g. "clients[2].weight").
Instance instance_from_json(std::string_view text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

/// FNV-1a 64-bit digest of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& instance);

}  // namespace loadbal
