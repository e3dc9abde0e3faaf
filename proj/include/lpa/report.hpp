// JSON reports behind the command-line front end. JSON is the machine
// interface; the plain-text renderings are derived from it. Identical inputs
// produce byte-identical JSON.

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lpa/graph.hpp"

namespace lpa {

using Json = nlohmann::ordered_json;

// Guard for subset enumerations (hereditary saturated lattice, graded
// ideals); the CLI threads LPA_GUARD_VERTICES through this.
struct ReportOptions {
  int vertex_guard = 20;
};

Json graph_summary(const Graph& g);

Json analyze_report(const Graph& g, const ReportOptions& opt = {});
Json k0_report(const Graph& g);
Json compare_report(const Graph& e, const Graph& f);
Json move_report(const Graph& g, const std::string& script);
Json monoid_report(const Graph& g, const std::vector<std::string>& equal_query,
                   int bound, bool group_check);
Json dagger_report(const std::string& fixture_json_text);
Json partition_report(long d, long r, std::optional<long> extend_n);

std::string render_text(const Json& report);

}  // namespace lpa
