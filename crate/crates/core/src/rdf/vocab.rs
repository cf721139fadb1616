//! Vocabulary IRIs used across the linter.

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const PLAIN_LITERAL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#PlainLiteral";
    pub const PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";
    pub const RESOURCE: &str = "http://www.w3.org/2000/01/rdf-schema#Resource";
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    pub const SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
    pub const THING: &str = "http://www.w3.org/2002/07/owl#Thing";
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
}

pub mod skos {
    pub const NS: &str = "http://www.w3.org/2004/02/skos/core#";
    pub const ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
    pub const EXACT_MATCH: &str = "http://www.w3.org/2004/02/skos/core#exactMatch";
    pub const CLOSE_MATCH: &str = "http://www.w3.org/2004/02/skos/core#closeMatch";
    pub const BROAD_MATCH: &str = "http://www.w3.org/2004/02/skos/core#broadMatch";
    pub const NARROW_MATCH: &str = "http://www.w3.org/2004/02/skos/core#narrowMatch";
    pub const RELATED_MATCH: &str = "http://www.w3.org/2004/02/skos/core#relatedMatch";
    pub const MATCH_PROPERTIES: [&str; 5] =
        [EXACT_MATCH, CLOSE_MATCH, BROAD_MATCH, NARROW_MATCH, RELATED_MATCH];
}

pub mod oboinowl {
    pub const NS: &str = "http://www.geneontology.org/formats/oboInOwl#";
    pub const HAS_DB_XREF: &str = "http://www.geneontology.org/formats/oboInOwl#hasDbXref";
    pub const HAS_ALTERNATIVE_ID: &str =
        "http://www.geneontology.org/formats/oboInOwl#hasAlternativeId";
}

pub mod cso {
    pub const SCHEMA_NS: &str = "http://cso.kmi.open.ac.uk/schema/cso#";
    pub const TOPICS_NS: &str = "https://cso.kmi.open.ac.uk/topics/";
    pub const RELATED_EQUIVALENT: &str = "http://cso.kmi.open.ac.uk/schema/cso#relatedEquivalent";
    pub const PREFERENTIAL_EQUIVALENT: &str =
        "http://cso.kmi.open.ac.uk/schema/cso#preferentialEquivalent";
}

pub mod dbo {
    pub const WIKI_PAGE_WIKI_LINK: &str = "http://dbpedia.org/ontology/wikiPageWikiLink";
}

/// Namespaces whose terms count as defined without a local declaration.
pub const BUILTIN_NAMESPACES: [&str; 4] = [rdf::NS, rdfs::NS, owl::NS, xsd::NS];

/// Default cross-reference properties: the two OBO xref properties and the SKOS mapping family.
pub fn default_xref_properties() -> Vec<&'static str> {
    let mut props = vec![oboinowl::HAS_DB_XREF, oboinowl::HAS_ALTERNATIVE_ID];
    props.extend(skos::MATCH_PROPERTIES);
    props
}
