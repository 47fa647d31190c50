// solap-enrich: batch enrichment of QB4OLAP cubes with topological relations.
//
// Subcommands:
//   enrich    run the enrichment pipeline over files or a SPARQL endpoint
//   validate  diff an enriched instance graph against a ground-truth file
//   gen       emit a deterministic synthetic cube (schema, instance, truth)
//   stats     print a summary of the cube found in the input

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "solap/pipeline.hpp"
#include "solap/sparql.hpp"
#include "solap/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

solap::RdfFormat format_for(const std::string& path) {
  if (path.size() >= 3 && path.compare(path.size() - 3, 3, ".nt") == 0)
    return solap::RdfFormat::NTriples;
  return solap::RdfFormat::Turtle;
}

solap::Graph load_inputs(const std::vector<std::string>& files,
                         const std::string& endpoint, const std::string& graph_iri) {
  solap::Graph merged;
  if (!endpoint.empty()) {
    merged = solap::fetch_graph(endpoint, graph_iri);
  }
  for (const std::string& f : files)
    merged.merge(solap::parse_rdf(slurp(f), format_for(f)));
  return merged;
}

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string endpoint;
  std::string graph_iri;
  std::string mode = "exact";
  std::string dispatch = "algorithm2";
  std::string index = "rtree";
  std::string polygon_agg = "union";
  bool strict = false;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir = ".";
};

solap::PipelineOptions to_pipeline_options(const CommonOpts& c) {
  solap::PipelineOptions opts;
  opts.enrich.mode = c.mode == "bbox" ? solap::GeoMode::Bbox : solap::GeoMode::Exact;
  opts.enrich.dispatch = c.dispatch == "listing8" ? solap::DispatchMode::Listing8
                                                  : solap::DispatchMode::Algorithm2;
  opts.enrich.use_index = c.index == "rtree";
  opts.enrich.strict = c.strict;
  opts.enrich.jobs = c.jobs;
  opts.polygon_agg = c.polygon_agg == "centroid" ? solap::PolygonAgg::Centroid
                     : c.polygon_agg == "mbr"    ? solap::PolygonAgg::MBR
                                                 : solap::PolygonAgg::Union;
  return opts;
}

void add_common_flags(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--input", c.inputs, "Input RDF files (.ttl or .nt)");
  cmd->add_option("--endpoint", c.endpoint, "SPARQL endpoint URL");
  cmd->add_option("--graph", c.graph_iri, "Named graph IRI at the endpoint");
  cmd->add_option("--mode", c.mode, "Geometry mode")
      ->check(CLI::IsMember({"exact", "bbox"}));
  cmd->add_option("--dispatch", c.dispatch, "Relation dispatch variant")
      ->check(CLI::IsMember({"algorithm2", "listing8"}));
  cmd->add_option("--index", c.index, "Spatial index for discover passes")
      ->check(CLI::IsMember({"rtree", "none"}));
  cmd->add_option("--polygon-agg", c.polygon_agg, "Aggregate function for polygon measures")
      ->check(CLI::IsMember({"union", "centroid", "mbr"}));
  cmd->add_flag("--strict", c.strict, "Fail on malformed geometry instead of skipping");
  cmd->add_option("--jobs", c.jobs, "Worker threads for pair evaluation");
  cmd->add_option("--out", c.out_dir, "Output directory");
}

int cmd_enrich(const CommonOpts& c) {
  if (c.inputs.empty() && c.endpoint.empty()) {
    std::cerr << "enrich: need --input files or --endpoint\n";
    return 1;
  }
  solap::Graph merged = load_inputs(c.inputs, c.endpoint, c.graph_iri);
  solap::PipelineOptions opts = to_pipeline_options(c);
  solap::PipelineResult result = solap::run_pipeline(merged, opts);

  fs::create_directories(c.out_dir);
  spit(fs::path(c.out_dir) / "enriched-instance.ttl",
       solap::serialize_rdf(result.enriched_instance));
  spit(fs::path(c.out_dir) / "enriched-schema.ttl",
       solap::serialize_rdf(result.enriched_schema));
  spit(fs::path(c.out_dir) / "report.json",
       solap::report_to_json(result.report, opts));

  std::size_t total = 0;
  for (const auto& [phase, rels] : result.report.counts) {
    std::size_t phase_total = 0;
    for (const auto& [_, n] : rels) phase_total += n;
    std::cout << phase << ": " << phase_total << " relations\n";
    total += phase_total;
  }
  std::cout << "new instance triples: " << result.report.new_triples
            << ", skipped geometries: " << result.report.skipped << "\n";
  return result.report.skipped > 0 ? 2 : 0;
}

std::set<solap::RelationTriple> relations_in_graph(const solap::Graph& g) {
  std::set<solap::RelationTriple> out;
  for (const solap::Triple& t : g)
    if (auto rel = solap::relation_from_iri(t.p.value); rel && t.s.is_iri() && t.o.is_iri())
      out.insert(solap::RelationTriple{t.s.value, *rel, t.o.value});
  return out;
}

std::set<solap::RelationTriple> load_truth(const std::string& path) {
  json doc = json::parse(slurp(path));
  std::set<solap::RelationTriple> out;
  for (const auto& entry : doc) {
    std::string rel = entry.at("rel").get<std::string>();
    std::string iri = std::string(solap::vocab::kQb4so) + rel;
    auto r = solap::relation_from_iri(iri);
    if (!r) throw std::runtime_error("unknown relation '" + rel + "' in " + path);
    out.insert(solap::RelationTriple{entry.at("s").get<std::string>(), *r,
                                     entry.at("o").get<std::string>()});
  }
  return out;
}

int cmd_validate(const std::string& enriched_path, const std::string& truth_path) {
  solap::Graph enriched = solap::parse_rdf(slurp(enriched_path), format_for(enriched_path));
  auto found = relations_in_graph(enriched);
  auto truth = load_truth(truth_path);

  std::map<std::string, long> found_counts, truth_counts;
  for (const auto& r : found) found_counts[solap::relation_name(r.rel)]++;
  for (const auto& r : truth) truth_counts[solap::relation_name(r.rel)]++;

  std::cout << "relation      found    truth     diff\n";
  std::set<std::string> names;
  for (const auto& [n, _] : found_counts) names.insert(n);
  for (const auto& [n, _] : truth_counts) names.insert(n);
  for (const auto& n : names) {
    long f = found_counts[n], t = truth_counts[n];
    std::cout << n << std::string(n.size() < 14 ? 14 - n.size() : 1, ' ') << f << "\t"
              << t << "\t" << (f - t) << "\n";
  }
  if (found == truth) {
    std::cout << "exact match (" << found.size() << " relations)\n";
    return 0;
  }
  std::size_t missing = 0, extra = 0;
  for (const auto& r : truth)
    if (!found.count(r)) ++missing;
  for (const auto& r : found)
    if (!truth.count(r)) ++extra;
  std::cout << "mismatch: " << missing << " missing, " << extra << " extra\n";
  return 1;
}

int cmd_gen(const std::string& spec_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override) {
  solap::SyntheticCubeSpec spec;
  if (!spec_path.empty()) {
    json doc = json::parse(slurp(spec_path));
    spec.rows = doc.value("rows", spec.rows);
    spec.cols = doc.value("cols", spec.cols);
    spec.partitions = doc.value("partitions", spec.partitions);
    spec.facts = doc.value("facts", spec.facts);
    spec.overlap = doc.value("overlap", spec.overlap);
    spec.link_fraction = doc.value("link_fraction", spec.link_fraction);
    spec.seed = doc.value("seed", spec.seed);
  }
  if (seed_override) spec.seed = *seed_override;

  solap::SyntheticCube cube = solap::generate_synthetic_cube(spec);
  fs::create_directories(out_dir);
  spit(fs::path(out_dir) / "schema.ttl", solap::serialize_rdf(cube.schema));
  spit(fs::path(out_dir) / "instance.ttl", solap::serialize_rdf(cube.instance));

  json truth = json::array();
  for (const auto& r : cube.truth.all())
    truth.push_back({{"s", r.subject}, {"rel", solap::relation_name(r.rel)},
                     {"o", r.object}});
  spit(fs::path(out_dir) / "truth.json", truth.dump(2) + "\n");
  std::cout << "wrote schema.ttl, instance.ttl, truth.json ("
            << cube.truth.all().size() << " ground-truth relations)\n";
  return 0;
}

int cmd_stats(const CommonOpts& c) {
  solap::Graph merged = load_inputs(c.inputs, c.endpoint, c.graph_iri);
  auto [schema_graph, instance] = solap::split_schema_instance(merged);
  solap::CubeSchema schema = solap::extract_schema(schema_graph);

  std::size_t steps = 0;
  for (const auto& [_, h] : schema.hierarchies) steps += h.steps.size();
  auto members = solap::all_level_members(instance);
  std::size_t member_count = 0;
  for (const auto& [_, ms] : members) member_count += ms.size();

  std::cout << "dimensions:      " << schema.dimensions.size() << "\n"
            << "hierarchies:     " << schema.hierarchies.size() << "\n"
            << "levels:          " << schema.levels.size() << "\n"
            << "hierarchy steps: " << steps << "\n"
            << "dsd components:  " << schema.dsd.components.size() << "\n"
            << "level members:   " << member_count << "\n"
            << "fact members:    " << solap::fact_members(instance).size() << "\n"
            << "explicit rollups:" << " " << solap::explicit_rollups(instance).size()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QB4OLAP-to-QB4SOLAP batch enrichment engine"};
  app.require_subcommand(1);

  CommonOpts enrich_opts;
  CLI::App* enrich = app.add_subcommand("enrich", "Run the enrichment pipeline");
  add_common_flags(enrich, enrich_opts);

  std::string validate_enriched, validate_truth;
  CLI::App* validate = app.add_subcommand("validate", "Diff output against ground truth");
  validate->add_option("--enriched", validate_enriched, "Enriched instance graph")
      ->required();
  validate->add_option("--truth", validate_truth, "truth.json file")->required();

  std::string gen_spec, gen_out = ".";
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic cube");
  gen->add_option("--spec", gen_spec, "Cube spec JSON file");
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--seed", gen_seed, "Random seed override")
      ->each([&](const std::string&) { gen_seed_set = true; });

  CommonOpts stats_opts;
  CLI::App* stats = app.add_subcommand("stats", "Print cube summary");
  add_common_flags(stats, stats_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enrich) return cmd_enrich(enrich_opts);
    if (*validate) return cmd_validate(validate_enriched, validate_truth);
    if (*gen)
      return cmd_gen(gen_spec, gen_out,
                     gen_seed_set ? std::optional<std::uint64_t>(gen_seed)
                                  : std::nullopt);
    if (*stats) return cmd_stats(stats_opts);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
