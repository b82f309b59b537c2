#include "loadbal/artifacts.hpp"

#include <cmath>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

using nlohmann::json;

int client_of(const Instance& instance, const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError("field '" + where + "' must be an integer");
  auto c = instance.client_index(v.get<VertexId>());
  if (!c) throw InputError("field '" + where + "' is not a client id");
  return *c;
}

int server_of(const Instance& instance, const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError("field '" + where + "' must be an integer");
  auto s = instance.server_index(v.get<VertexId>());
  if (!s) throw InputError("field '" + where + "' is not a server id");
  return *s;
}

std::vector<Mult> int_array(const json& v, std::size_t size, const std::string& where) {
  if (!v.is_array() || v.size() != size) {
    throw InputError("field '" + where + "' must be an array of " + std::to_string(size) + " integers");
  }
  std::vector<Mult> out;
  for (std::size_t i = 0; i < size; ++i) {
    if (!v[i].is_number_integer()) throw InputError("field '" + where + "[" + std::to_string(i) + "]' must be an integer");
    out.push_back(v[i].get<Mult>());
  }
  return out;
}

CapMatching parse_matching(const Instance& instance, const json& doc) {
  for (const char* key : {"client_cap", "server_cap", "edge_cap", "edges"}) {
    if (!doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  }
  CapacityProfile profile;
  profile.client_cap = int_array(doc["client_cap"], instance.num_clients(), "client_cap");
  profile.server_cap = int_array(doc["server_cap"], instance.num_servers(), "server_cap");
  const json& ec = doc["edge_cap"];
  if (ec == "one") {
    profile.edge_mode = EdgeCapMode::kOne;
  } else if (ec == "unbounded") {
    profile.edge_mode = EdgeCapMode::kUnbounded;
  } else {
    profile.edge_mode = EdgeCapMode::kExplicit;
    profile.edge_cap = int_array(ec, instance.m(), "edge_cap");
  }
  CapMatching x(instance, std::move(profile));
  const json& edges = doc["edges"];
  if (!edges.is_array()) throw InputError("field 'edges' must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& row = edges[i];
    if (!row.is_array() || row.size() != 3) throw InputError("field '" + where + "' must be [client, server, mult]");
    int c = client_of(instance, row[0], where + "[0]");
    int s = server_of(instance, row[1], where + "[1]");
    if (!row[2].is_number_integer() || row[2].get<Mult>() < 0) {
      throw InputError("field '" + where + "[2]' must be a nonnegative integer");
    }
    auto e = instance.find_edge(c, s);
    if (!e) throw InputError("field '" + where + "' is not an edge of the instance");
    x.add(instance, *e, row[2].get<Mult>());
  }
  return x;
}

}  // namespace

ordered_json trace_to_json(const SimTrace& trace) {
  ordered_json doc;
  doc["chargedRounds"] = trace.charged_rounds;
  doc["phases"] = ordered_json::array();
  for (const auto& p : trace.phases) doc["phases"].push_back({{"label", p.label}, {"rounds", p.rounds}});
  doc["simulatedMessages"] = ordered_json::array();
  for (const auto& m : trace.messages) {
    doc["simulatedMessages"].push_back({{"round", m.round}, {"edge", m.edge}, {"bits", m.bits}});
  }
  return doc;
}

ordered_json assignment_to_json(const Instance& instance, const Assignment& assignment) {
  ordered_json out = ordered_json::array();
  for (int c = 0; c < instance.num_clients(); ++c) {
    out.push_back({instance.client_vertex(c), instance.server_vertex(assignment.server_of[c])});
  }
  return out;
}

ordered_json multi_assignment_to_json(const Instance& instance, const MultiAssignment& assignment) {
  ordered_json out = ordered_json::array();
  for (int c = 0; c < instance.num_clients(); ++c) {
    ordered_json servers = ordered_json::array();
    for (int s : assignment.servers_of[c]) servers.push_back(instance.server_vertex(s));
    out.push_back({instance.client_vertex(c), std::move(servers)});
  }
  return out;
}

ordered_json norms_to_json(const LoadVector& loads) {
  ordered_json out;
  out["p1"] = loads.sum();
  out["p2"] = loads.norm(2.0);
  out["p3"] = loads.norm(3.0);
  out["inf"] = loads.max();
  return out;
}

ordered_json matching_to_json(const Instance& instance, const CapMatching& x) {
  const auto& p = x.profile();
  ordered_json doc;
  doc["kind"] = "matching";
  doc["client_cap"] = p.client_cap;
  doc["server_cap"] = p.server_cap;
  switch (p.edge_mode) {
    case EdgeCapMode::kOne: doc["edge_cap"] = "one"; break;
    case EdgeCapMode::kUnbounded: doc["edge_cap"] = "unbounded"; break;
    case EdgeCapMode::kExplicit: doc["edge_cap"] = p.edge_cap; break;
  }
  doc["edges"] = ordered_json::array();
  for (int e = 0; e < instance.m(); ++e) {
    if (x.mult(e) == 0) continue;
    doc["edges"].push_back({instance.client_vertex(instance.edge_client(e)),
                            instance.server_vertex(instance.edge_server(e)), x.mult(e)});
  }
  return doc;
}

ordered_json counterexample_to_json(const ExpansionCounterexample& ce) {
  ordered_json doc;
  doc["kind"] = "expansion-counterexample";
  doc["alpha"] = ce.alpha;
  doc["client"] = ce.instance.client_vertex(ce.client);
  doc["bound"] = ce.bound;
  doc["shortest"] = ce.shortest;
  doc["kappa"] = ce.kappa;
  doc["tau"] = ce.tau;
  doc["mult"] = ordered_json::array();
  for (int e = 0; e < ce.instance.m(); ++e) {
    if (ce.mult[e] == 0) continue;
    doc["mult"].push_back({ce.instance.client_vertex(ce.instance.edge_client(e)),
                           ce.instance.server_vertex(ce.instance.edge_server(e)), ce.mult[e]});
  }
  return doc;
}

Artifact artifact_from_json(const Instance& instance, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed artifact: ") + e.what());
  }
  // a bare pair list is an assignment
  if (doc.is_array()) doc = json{{"assignment", std::move(doc)}};
  if (!doc.is_object()) throw InputError("artifact must be a JSON object or an assignment array");
  Artifact out;
  if (doc.contains("kind") && doc["kind"] == "matching") {
    out.matching = parse_matching(instance, doc);
    return out;
  }
  if (!doc.contains("assignment")) throw InputError("artifact has neither 'kind' = \"matching\" nor 'assignment'");
  const json& rows = doc["assignment"];
  if (!rows.is_array()) throw InputError("field 'assignment' must be an array");
  const bool multi = !rows.empty() && rows[0].is_array() && rows[0].size() == 2 && rows[0][1].is_array();
  Assignment a{std::vector<int>(instance.num_clients(), -1)};
  MultiAssignment ma;
  ma.servers_of.assign(instance.num_clients(), {});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "assignment[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_array() || row.size() != 2) throw InputError("field '" + where + "' must be a pair");
    int c = client_of(instance, row[0], where + "[0]");
    if (multi) {
      if (!row[1].is_array()) throw InputError("field '" + where + "[1]' must be an array of server ids");
      for (std::size_t j = 0; j < row[1].size(); ++j) {
        ma.servers_of[c].push_back(server_of(instance, row[1][j], where + "[1][" + std::to_string(j) + "]"));
      }
    } else {
      a.server_of[c] = server_of(instance, row[1], where + "[1]");
    }
  }
  if (multi) {
    ma.r = static_cast<int>(rows[0][1].size());
    if (doc.contains("r") && doc["r"].is_number_integer()) ma.r = doc["r"].get<int>();
    out.multi_assignment = std::move(ma);
  } else {
    for (int c = 0; c < instance.num_clients(); ++c) {
      if (a.server_of[c] < 0) {
        throw InputError("field 'assignment' has no entry for client " + std::to_string(instance.client_vertex(c)));
      }
    }
    out.assignment = std::move(a);
  }
  return out;
}

}  // namespace loadbal
