#pragma once

// Vocabulary IRIs recognized by the enrichment engine.

namespace solap::vocab {

inline constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kSkos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr const char* kQb = "http://purl.org/linked-data/cube#";
inline constexpr const char* kQb4o = "http://purl.org/qb4olap/cubes#";
inline constexpr const char* kQb4so = "https://w3id.org/qb4solap#";
inline constexpr const char* kGeo = "http://www.opengis.net/ont/geosparql#";

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

inline constexpr const char* kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr const char* kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr const char* kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

inline constexpr const char* kSkosBroader = "http://www.w3.org/2004/02/skos/core#broader";

inline constexpr const char* kQbObservation = "http://purl.org/linked-data/cube#Observation";
inline constexpr const char* kQbDsd = "http://purl.org/linked-data/cube#DataStructureDefinition";
inline constexpr const char* kQbComponent = "http://purl.org/linked-data/cube#component";
inline constexpr const char* kQbMeasure = "http://purl.org/linked-data/cube#measure";
inline constexpr const char* kQbDimensionProperty = "http://purl.org/linked-data/cube#DimensionProperty";

inline constexpr const char* kQb4oLevelMember = "http://purl.org/qb4olap/cubes#LevelMember";
inline constexpr const char* kQb4oMemberOf = "http://purl.org/qb4olap/cubes#memberOf";
inline constexpr const char* kQb4oHasHierarchy = "http://purl.org/qb4olap/cubes#hasHierarchy";
inline constexpr const char* kQb4oInDimension = "http://purl.org/qb4olap/cubes#inDimension";
inline constexpr const char* kQb4oHasLevel = "http://purl.org/qb4olap/cubes#hasLevel";
inline constexpr const char* kQb4oInHierarchy = "http://purl.org/qb4olap/cubes#inHierarchy";
inline constexpr const char* kQb4oChildLevel = "http://purl.org/qb4olap/cubes#childLevel";
inline constexpr const char* kQb4oParentLevel = "http://purl.org/qb4olap/cubes#parentLevel";
inline constexpr const char* kQb4oPcCardinality = "http://purl.org/qb4olap/cubes#pcCardinality";
inline constexpr const char* kQb4oHierarchy = "http://purl.org/qb4olap/cubes#Hierarchy";
inline constexpr const char* kQb4oHierarchyStep = "http://purl.org/qb4olap/cubes#HierarchyStep";
inline constexpr const char* kQb4oLevelProperty = "http://purl.org/qb4olap/cubes#LevelProperty";
inline constexpr const char* kQb4oLevel = "http://purl.org/qb4olap/cubes#level";
inline constexpr const char* kQb4oCardinality = "http://purl.org/qb4olap/cubes#cardinality";
inline constexpr const char* kQb4oAggregateFunction = "http://purl.org/qb4olap/cubes#aggregateFunction";
inline constexpr const char* kQb4oOneToOne = "http://purl.org/qb4olap/cubes#OneToOne";
inline constexpr const char* kQb4oOneToMany = "http://purl.org/qb4olap/cubes#OneToMany";
inline constexpr const char* kQb4oManyToOne = "http://purl.org/qb4olap/cubes#ManyToOne";
inline constexpr const char* kQb4oManyToMany = "http://purl.org/qb4olap/cubes#ManyToMany";

inline constexpr const char* kQb4soWithin = "https://w3id.org/qb4solap#within";
inline constexpr const char* kQb4soIntersects = "https://w3id.org/qb4solap#intersects";
inline constexpr const char* kQb4soEquals = "https://w3id.org/qb4solap#equals";
inline constexpr const char* kQb4soOverlaps = "https://w3id.org/qb4solap#overlaps";
inline constexpr const char* kQb4soCrosses = "https://w3id.org/qb4solap#crosses";
inline constexpr const char* kQb4soWithinClass = "https://w3id.org/qb4solap#Within";
inline constexpr const char* kQb4soIntersectsClass = "https://w3id.org/qb4solap#Intersects";
inline constexpr const char* kQb4soEqualsClass = "https://w3id.org/qb4solap#Equals";
inline constexpr const char* kQb4soOverlapsClass = "https://w3id.org/qb4solap#Overlaps";
inline constexpr const char* kQb4soCrossesClass = "https://w3id.org/qb4solap#Crosses";
inline constexpr const char* kQb4soPcTopoRel = "https://w3id.org/qb4solap#pcTopoRel";
inline constexpr const char* kQb4soTopologicalRelation = "https://w3id.org/qb4solap#topologicalRelation";
inline constexpr const char* kQb4soConvexHull = "https://w3id.org/qb4solap#ConvexHull";
inline constexpr const char* kQb4soUnion = "https://w3id.org/qb4solap#Union";
inline constexpr const char* kQb4soCentroid = "https://w3id.org/qb4solap#Centroid";
inline constexpr const char* kQb4soMBR = "https://w3id.org/qb4solap#MBR";

// Spatial literal datatypes accepted by default: geo:spatialLiteral and the
// GeoSPARQL wktLiteral.
inline constexpr const char* kGeoSpatialLiteral = "http://www.opengis.net/ont/geosparql#spatialLiteral";
inline constexpr const char* kGeoWktLiteral = "http://www.opengis.net/ont/geosparql#wktLiteral";

}  // namespace solap::vocab
