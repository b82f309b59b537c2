#include "loadbal/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw InputError("unknown field '" + where + key + "'");
  }
}

std::int64_t get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw InputError("missing field '" + where + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError("field '" + where + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  ordered_json doc;
  doc["clients"] = ordered_json::array();
  for (int c = 0; c < instance.num_clients(); ++c) {
    ordered_json entry;
    entry["id"] = instance.client_vertex(c);
    entry["weight"] = instance.weight(c);
    doc["clients"].push_back(std::move(entry));
  }
  doc["servers"] = ordered_json::array();
  for (int s = 0; s < instance.num_servers(); ++s) {
    ordered_json entry;
    entry["id"] = instance.server_vertex(s);
    doc["servers"].push_back(std::move(entry));
  }
  doc["edges"] = ordered_json::array();
  for (int e = 0; e < instance.m(); ++e) {
    doc["edges"].push_back({instance.client_vertex(instance.edge_client(e)),
                            instance.server_vertex(instance.edge_server(e))});
  }
  return doc.dump() + "\n";
}

Instance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("malformed instance JSON: ") + err.what());
  }
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  reject_unknown(doc, {"clients", "servers", "edges"}, "");
  for (const char* key : {"clients", "servers", "edges"}) {
    if (!doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    if (!doc.at(key).is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  }

  std::vector<ClientSpec> clients;
  const json& cs = doc.at("clients");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string where = "clients[" + std::to_string(i) + "].";
    if (!cs[i].is_object()) throw InputError("'clients[" + std::to_string(i) + "]' must be an object");
    reject_unknown(cs[i], {"id", "weight"}, where);
    ClientSpec spec{get_int(cs[i], "id", where), get_int(cs[i], "weight", where)};
    if (spec.weight <= 0) {
      throw InputError("field '" + where + "weight' must be positive, got " + std::to_string(spec.weight));
    }
    clients.push_back(spec);
  }
  std::vector<VertexId> servers;
  const json& ss = doc.at("servers");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::string where = "servers[" + std::to_string(i) + "].";
    if (!ss[i].is_object()) throw InputError("'servers[" + std::to_string(i) + "]' must be an object");
    reject_unknown(ss[i], {"id"}, where);
    servers.push_back(get_int(ss[i], "id", where));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  const json& es = doc.at("edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const json& e = es[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("'edges[" + std::to_string(i) + "]' must be [clientId, serverId]");
    }
    edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  return Instance::build(std::move(clients), std::move(servers), std::move(edges));
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const InputError& err) {
    throw InputError(path.string() + ": " + err.what());
  }
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write instance file " + path.string());
  out << instance_to_json(instance);
  if (!out) throw InputError("write failed for " + path.string());
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : instance_to_json(instance)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace loadbal
