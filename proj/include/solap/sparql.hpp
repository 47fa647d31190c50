#pragma once

// Minimal SPARQL 1.1 Protocol client: POSTs a SELECT query and parses the
// application/sparql-results+json response into Term bindings. Transient
// failures are retried three times with exponential backoff starting at one
// second; the per-request timeout comes from SOLAP_ENRICH_TIMEOUT_S.

#include <chrono>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "solap/rdf.hpp"

namespace solap {

struct SparqlError : std::runtime_error {
  explicit SparqlError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SparqlBindings {
  std::vector<std::string> variables;
  std::vector<std::map<std::string, Term>> rows;
};

namespace sparql_detail {

inline int timeout_seconds() {
  if (const char* env = std::getenv("SOLAP_ENRICH_TIMEOUT_S")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 30;
}

// Splits "http://host:port/path" into (scheme://host:port, /path).
inline std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw SparqlError("endpoint URL lacks a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

inline Term term_from_json(const nlohmann::json& b) {
  const std::string type = b.at("type").get<std::string>();
  const std::string value = b.at("value").get<std::string>();
  if (type == "uri") return Term::iri(value);
  if (type == "bnode") return Term::blank(value);
  if (type == "literal" || type == "typed-literal") {
    std::string datatype = vocab::kXsdString;
    std::string lang;
    if (b.contains("datatype")) datatype = b.at("datatype").get<std::string>();
    if (b.contains("xml:lang")) lang = b.at("xml:lang").get<std::string>();
    return Term::literal(value, datatype, lang);
  }
  throw SparqlError("unknown binding type '" + type + "'");
}

}  // namespace sparql_detail

inline SparqlBindings sparql_select(const std::string& endpoint,
                                    const std::string& query) {
  auto [base, path] = sparql_detail::split_endpoint(endpoint);
  int timeout = sparql_detail::timeout_seconds();

  std::string body;
  std::string last_error;
  const int attempts = 3;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::seconds(1 << (attempt - 1)));
    httplib::Client client(base);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    httplib::Params params{{"query", query}};
    httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
    auto res = client.Post(path, headers, params);
    if (!res) {
      last_error = "network failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    body = res->body;
    last_error.clear();
    break;
  }
  if (!last_error.empty())
    throw SparqlError("SPARQL request to " + endpoint + " failed after " +
                      std::to_string(attempts) + " attempts: " + last_error);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw SparqlError(std::string("malformed SPARQL results document: ") + e.what());
  }

  SparqlBindings out;
  try {
    for (const auto& v : doc.at("head").at("vars"))
      out.variables.push_back(v.get<std::string>());
    for (const auto& row : doc.at("results").at("bindings")) {
      std::map<std::string, Term> bound;
      for (auto it = row.begin(); it != row.end(); ++it)
        bound.emplace(it.key(), sparql_detail::term_from_json(it.value()));
      out.rows.push_back(std::move(bound));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SparqlError(std::string("malformed SPARQL results document: ") + e.what());
  }
  return out;
}

// Materializes every triple of the (optionally named) graph locally.
inline Graph fetch_graph(const std::string& endpoint, const std::string& graph_iri = "") {
  std::string query = "SELECT ?s ?p ?o WHERE { ";
  if (!graph_iri.empty()) query += "GRAPH <" + graph_iri + "> { ?s ?p ?o } ";
  else query += "?s ?p ?o ";
  query += "}";
  SparqlBindings bindings = sparql_select(endpoint, query);
  Graph g;
  for (const auto& row : bindings.rows) {
    auto s = row.find("s");
    auto p = row.find("p");
    auto o = row.find("o");
    if (s == row.end() || p == row.end() || o == row.end()) continue;
    if (s->second.is_literal() || !p->second.is_iri()) continue;
    g.insert(s->second, p->second, o->second);
  }
  return g;
}

}  // namespace solap
