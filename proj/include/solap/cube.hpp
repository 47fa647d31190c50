#pragma once

// Multidimensional schema and instance views over QB4OLAP-annotated graphs.
// Extraction is read-only; the typed results feed the enrichment algorithms.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "solap/geometry.hpp"
#include "solap/rdf.hpp"
#include "solap/vocab.hpp"

namespace solap {

struct MissingSchemaElement : std::runtime_error {
  explicit MissingSchemaElement(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Cardinality { OneToOne, OneToMany, ManyToOne, ManyToMany };

inline const char* cardinality_iri(Cardinality c) {
  switch (c) {
    case Cardinality::OneToOne: return vocab::kQb4oOneToOne;
    case Cardinality::OneToMany: return vocab::kQb4oOneToMany;
    case Cardinality::ManyToOne: return vocab::kQb4oManyToOne;
    case Cardinality::ManyToMany: return vocab::kQb4oManyToMany;
  }
  return "";
}

inline std::optional<Cardinality> cardinality_from_iri(const std::string& iri) {
  if (iri == vocab::kQb4oOneToOne) return Cardinality::OneToOne;
  if (iri == vocab::kQb4oOneToMany) return Cardinality::OneToMany;
  if (iri == vocab::kQb4oManyToOne) return Cardinality::ManyToOne;
  if (iri == vocab::kQb4oManyToMany) return Cardinality::ManyToMany;
  return std::nullopt;
}

struct HierarchyStepDef {
  std::string hierarchy;
  std::string child_level;
  std::string parent_level;
  Cardinality cardinality = Cardinality::ManyToOne;
  std::set<TopoRelation> topo_rels;  // empty before enrichment

  friend bool operator<(const HierarchyStepDef& a, const HierarchyStepDef& b) {
    if (a.hierarchy != b.hierarchy) return a.hierarchy < b.hierarchy;
    if (a.child_level != b.child_level) return a.child_level < b.child_level;
    return a.parent_level < b.parent_level;
  }
};

struct HierarchyDef {
  std::string iri;
  std::set<std::string> levels;
  std::vector<HierarchyStepDef> steps;
};

struct DimensionDef {
  std::string iri;
  std::set<std::string> hierarchies;
};

// One qb:component of the DSD: either a level or a measure.
struct ComponentDef {
  enum class Kind { Level, Measure };
  Kind kind = Kind::Level;
  std::string property;  // level IRI or measure IRI
  std::optional<Cardinality> cardinality;
  std::optional<std::string> aggregate_function;  // IRI
  std::set<TopoRelation> topo_rels;               // level components, post-enrichment

  friend bool operator<(const ComponentDef& a, const ComponentDef& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.property < b.property;
  }
};

struct FactSchemaDef {
  std::string dsd_iri;
  std::vector<ComponentDef> components;

  ComponentDef* find(const std::string& property) {
    for (auto& c : components)
      if (c.property == property) return &c;
    return nullptr;
  }
  const ComponentDef* find(const std::string& property) const {
    for (const auto& c : components)
      if (c.property == property) return &c;
    return nullptr;
  }
};

struct CubeSchema {
  std::map<std::string, DimensionDef> dimensions;
  std::map<std::string, HierarchyDef> hierarchies;
  std::set<std::string> levels;
  FactSchemaDef dsd;

  const HierarchyDef* hierarchy(const std::string& iri) const {
    auto it = hierarchies.find(iri);
    return it == hierarchies.end() ? nullptr : &it->second;
  }
};

struct LevelMember {
  std::string iri;
  std::string level;
  std::map<std::string, std::vector<Term>> attributes;

  friend bool operator<(const LevelMember& a, const LevelMember& b) {
    return a.iri < b.iri;
  }
};

struct FactMember {
  std::string iri;
  std::map<std::string, std::string> level_links;          // level IRI -> member IRI
  std::map<std::string, std::vector<Term>> measures;       // measure IRI -> values
  std::set<std::pair<TopoRelation, std::string>> topo_links;

  friend bool operator<(const FactMember& a, const FactMember& b) {
    return a.iri < b.iri;
  }
};

namespace cube_detail {

// Predicates produced by enrichment or structural bookkeeping; excluded from
// attribute maps so re-running on enriched output is stable.
inline bool structural_predicate(const std::string& p) {
  if (p == vocab::kRdfType || p == vocab::kQb4oMemberOf || p == vocab::kSkosBroader)
    return true;
  return p.rfind(vocab::kQb4so, 0) == 0;
}

inline std::map<Term, std::map<Term, std::vector<Term>>> spo_index(const Graph& g) {
  std::map<Term, std::map<Term, std::vector<Term>>> idx;
  for (const Triple& t : g) idx[t.s][t.p].push_back(t.o);
  return idx;
}

}  // namespace cube_detail

inline CubeSchema extract_schema(const Graph& g) {
  CubeSchema schema;
  auto idx = cube_detail::spo_index(g);

  const Term pHasHierarchy = Term::iri(vocab::kQb4oHasHierarchy);
  const Term pInDimension = Term::iri(vocab::kQb4oInDimension);
  const Term pHasLevel = Term::iri(vocab::kQb4oHasLevel);
  const Term pInHierarchy = Term::iri(vocab::kQb4oInHierarchy);
  const Term pChildLevel = Term::iri(vocab::kQb4oChildLevel);
  const Term pParentLevel = Term::iri(vocab::kQb4oParentLevel);
  const Term pPcCardinality = Term::iri(vocab::kQb4oPcCardinality);
  const Term pPcTopoRel = Term::iri(vocab::kQb4soPcTopoRel);

  for (const Triple& t : g.match(std::nullopt, pHasHierarchy, std::nullopt)) {
    if (!t.s.is_iri() || !t.o.is_iri()) continue;
    schema.dimensions[t.s.value].iri = t.s.value;
    schema.dimensions[t.s.value].hierarchies.insert(t.o.value);
    schema.hierarchies[t.o.value].iri = t.o.value;
  }
  for (const Triple& t : g.match(std::nullopt, pInDimension, std::nullopt)) {
    if (!t.s.is_iri() || !t.o.is_iri()) continue;
    schema.dimensions[t.o.value].iri = t.o.value;
    schema.dimensions[t.o.value].hierarchies.insert(t.s.value);
    schema.hierarchies[t.s.value].iri = t.s.value;
  }
  for (const Triple& t : g.match(std::nullopt, pHasLevel, std::nullopt)) {
    if (!t.s.is_iri() || !t.o.is_iri()) continue;
    schema.hierarchies[t.s.value].iri = t.s.value;
    schema.hierarchies[t.s.value].levels.insert(t.o.value);
    schema.levels.insert(t.o.value);
  }

  // hierarchy steps: subjects carrying qb4o:inHierarchy (blank or IRI)
  for (const Triple& t : g.match(std::nullopt, pInHierarchy, std::nullopt)) {
    if (!t.o.is_iri()) continue;
    const auto& props = idx[t.s];
    HierarchyStepDef step;
    step.hierarchy = t.o.value;
    auto child = props.find(pChildLevel);
    auto parent = props.find(pParentLevel);
    if (child == props.end() || child->second.empty())
      throw MissingSchemaElement("hierarchy step in <" + step.hierarchy +
                                 "> lacks a child level");
    if (parent == props.end() || parent->second.empty())
      throw MissingSchemaElement("hierarchy step in <" + step.hierarchy +
                                 "> lacks a parent level");
    step.child_level = child->second.front().value;
    step.parent_level = parent->second.front().value;
    if (auto card = props.find(pPcCardinality); card != props.end())
      if (auto c = cardinality_from_iri(card->second.front().value))
        step.cardinality = *c;
    if (auto rels = props.find(pPcTopoRel); rels != props.end())
      for (const Term& o : rels->second)
        if (auto r = relation_from_class_iri(o.value)) step.topo_rels.insert(*r);
    auto& h = schema.hierarchies[step.hierarchy];
    h.iri = step.hierarchy;
    h.levels.insert(step.child_level);
    h.levels.insert(step.parent_level);
    schema.levels.insert(step.child_level);
    schema.levels.insert(step.parent_level);
    h.steps.push_back(step);
  }
  for (auto& [_, h] : schema.hierarchies)
    std::sort(h.steps.begin(), h.steps.end());

  // DSD components
  const Term pComponent = Term::iri(vocab::kQbComponent);
  const Term pLevel = Term::iri(vocab::kQb4oLevel);
  const Term pMeasure = Term::iri(vocab::kQbMeasure);
  const Term pCardinality = Term::iri(vocab::kQb4oCardinality);
  const Term pAgg = Term::iri(vocab::kQb4oAggregateFunction);
  const Term pTopoRel = Term::iri(vocab::kQb4soTopologicalRelation);
  for (const Triple& t : g.match(std::nullopt, pComponent, std::nullopt)) {
    if (t.s.is_iri()) schema.dsd.dsd_iri = t.s.value;
    const auto& props = idx[t.o];
    ComponentDef comp;
    if (auto lvl = props.find(pLevel); lvl != props.end()) {
      comp.kind = ComponentDef::Kind::Level;
      comp.property = lvl->second.front().value;
      schema.levels.insert(comp.property);
    } else if (auto m = props.find(pMeasure); m != props.end()) {
      comp.kind = ComponentDef::Kind::Measure;
      comp.property = m->second.front().value;
    } else {
      continue;
    }
    if (auto card = props.find(pCardinality); card != props.end())
      comp.cardinality = cardinality_from_iri(card->second.front().value);
    if (auto agg = props.find(pAgg); agg != props.end())
      comp.aggregate_function = agg->second.front().value;
    if (auto rels = props.find(pTopoRel); rels != props.end())
      for (const Term& o : rels->second)
        if (auto r = relation_from_class_iri(o.value)) comp.topo_rels.insert(*r);
    schema.dsd.components.push_back(comp);
  }
  std::sort(schema.dsd.components.begin(), schema.dsd.components.end());
  return schema;
}

inline std::set<LevelMember> level_members(const Graph& g, const std::string& level) {
  std::set<LevelMember> out;
  const Term pMemberOf = Term::iri(vocab::kQb4oMemberOf);
  const Term levelTerm = Term::iri(level);
  std::set<Term> subjects;
  for (const Triple& t : g.match(std::nullopt, pMemberOf, levelTerm))
    subjects.insert(t.s);
  if (subjects.empty()) return out;

  std::map<Term, LevelMember> members;
  for (const Term& s : subjects) {
    LevelMember m;
    m.iri = s.value;
    m.level = level;
    members.emplace(s, std::move(m));
  }
  for (const Triple& t : g) {
    auto it = members.find(t.s);
    if (it == members.end()) continue;
    if (cube_detail::structural_predicate(t.p.value)) continue;
    it->second.attributes[t.p.value].push_back(t.o);
  }
  for (auto& [_, m] : members) out.insert(std::move(m));
  return out;
}

// All qb4o:memberOf members of every level at once (single graph scan).
inline std::map<std::string, std::set<LevelMember>> all_level_members(const Graph& g) {
  std::map<Term, LevelMember> members;
  for (const Triple& t : g.match(std::nullopt, Term::iri(vocab::kQb4oMemberOf),
                                 std::nullopt)) {
    LevelMember m;
    m.iri = t.s.value;
    m.level = t.o.value;
    members.emplace(t.s, std::move(m));
  }
  for (const Triple& t : g) {
    auto it = members.find(t.s);
    if (it == members.end()) continue;
    if (cube_detail::structural_predicate(t.p.value)) continue;
    it->second.attributes[t.p.value].push_back(t.o);
  }
  std::map<std::string, std::set<LevelMember>> out;
  for (auto& [_, m] : members) out[m.level].insert(std::move(m));
  return out;
}

inline std::set<std::pair<std::string, std::string>> explicit_rollups(const Graph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const Triple& t :
       g.match(std::nullopt, Term::iri(vocab::kSkosBroader), std::nullopt))
    out.emplace(t.s.value, t.o.value);
  return out;
}

inline std::set<FactMember> fact_members(const Graph& g) {
  const Term pType = Term::iri(vocab::kRdfType);
  const Term observation = Term::iri(vocab::kQbObservation);
  const Term levelMember = Term::iri(vocab::kQb4oLevelMember);

  std::set<Term> lm_subjects;
  for (const Triple& t : g.match(std::nullopt, pType, levelMember))
    lm_subjects.insert(t.s);

  std::map<Term, FactMember> facts;
  for (const Triple& t : g.match(std::nullopt, pType, observation)) {
    FactMember f;
    f.iri = t.s.value;
    facts.emplace(t.s, std::move(f));
  }
  for (const Triple& t : g) {
    auto it = facts.find(t.s);
    if (it == facts.end()) continue;
    if (t.p.value == vocab::kRdfType) continue;
    if (t.p.value.rfind(vocab::kQb4so, 0) == 0) {
      // prior enrichment output: parse back as a topo link, never a measure
      if (auto r = relation_from_iri(t.p.value); r && t.o.is_iri())
        it->second.topo_links.emplace(*r, t.o.value);
      continue;
    }
    if (t.o.is_iri() && lm_subjects.count(t.o)) {
      it->second.level_links[t.p.value] = t.o.value;
    } else {
      it->second.measures[t.p.value].push_back(t.o);
    }
  }
  std::set<FactMember> out;
  for (auto& [_, f] : facts) out.insert(std::move(f));
  return out;
}

inline std::set<std::string> base_levels(const CubeSchema& schema) {
  std::set<std::string> out;
  for (const auto& [_, h] : schema.hierarchies) {
    std::set<std::string> parents;
    for (const auto& step : h.steps) parents.insert(step.parent_level);
    for (const auto& level : h.levels)
      if (!parents.count(level)) out.insert(level);
  }
  return out;
}

inline std::set<std::string> nm_parent_levels(const CubeSchema& schema) {
  std::set<std::string> out;
  for (const auto& [_, h] : schema.hierarchies)
    for (const auto& step : h.steps)
      if (step.cardinality == Cardinality::ManyToMany) out.insert(step.parent_level);
  return out;
}

}  // namespace solap
