#!/usr/bin/env python3
"""Generates the cso/ synonym-cluster fixture plus golden outputs.

Golden merged graph and patch are computed by a direct re-statement of the
merge rewrite and intra-cluster rule, independent of the Rust code.
"""
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "cso")

T = "https://cso.kmi.open.ac.uk/topics/"
CSO = "http://cso.kmi.open.ac.uk/schema/cso#"
DBR = "http://dbpedia.org/resource/"
WD = "http://www.wikidata.org/entity/"
YAGO = "http://yago-knowledge.org/resource/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
ALT = "http://www.w3.org/2004/02/skos/core#altLabel"
SAME = "http://www.w3.org/2002/07/owl#sameAs"
LINK = "http://schema.org/relatedLink"
REL_EQ, PREF_EQ = CSO + "relatedEquivalent", CSO + "preferentialEquivalent"
STO, CONTRIB, TOPIC = CSO + "superTopicOf", CSO + "contributesTo", CSO + "Topic"

CLUSTERS = [
    ["machine_learning", "machine_learning_methods", "machine_learning_techniques"],
    ["malicious_software", "malware", "malicious_code"],
    ["neural_networks", "neural_network"],
    ["malware_detection", "malware_analysis"],
    ["computer_science"],
]


def t(name):
    return T + name


def build():
    triples = []
    add = lambda s, p, o: triples.append((s, p, o))
    for members in CLUSTERS:
        pref = members[0]
        for m in members:
            add(("iri", t(m)), RDF_TYPE, ("iri", CSO + "Topic"))
            add(("iri", t(m)), LABEL, ("lit", m.replace("_", " ")))
            add(("iri", t(m)), PREF_EQ, ("iri", t(pref)))
            add(("iri", t(m)), LINK, ("iri", "https://en.wikipedia.org/wiki/" + m))
        for m in members[1:]:
            add(("iri", t(pref)), REL_EQ, ("iri", t(m)))
            add(("iri", t(m)), REL_EQ, ("iri", t(pref)))
    same = [
        ("machine_learning", DBR + "Machine_learning"),
        ("machine_learning_methods", DBR + "Machine_learning"),
        ("machine_learning", WD + "Q2539"),
        ("machine_learning", YAGO + "Machine_learning"),
        ("malicious_software", DBR + "Malware"),
        ("malware", DBR + "Malware"),
        ("malicious_code", DBR + "Computer_virus"),
        ("malicious_software", WD + "Q14001"),
        ("malicious_code", YAGO + "Computer_virus"),
        ("neural_networks", DBR + "Artificial_neural_network"),
        ("neural_network", DBR + "Artificial_neural_network"),
        ("neural_networks", WD + "Q192776"),
        ("neural_networks", YAGO + "Artificial_neural_network"),
        ("malware_detection", DBR + "Malware"),
        ("malware_detection", WD + "Q14001"),
        ("malware_analysis", YAGO + "Malware_analysis"),
        ("computer_science", DBR + "Computer_science"),
        ("computer_science", WD + "Q21198"),
        ("computer_science", YAGO + "Computer_science"),
    ]
    for s, o in same:
        add(("iri", t(s)), SAME, ("iri", o))
    for s, o in [("computer_science", "machine_learning"), ("computer_science", "malware"),
                 ("computer_science", "neural_networks"), ("computer_science", "neural_network"),
                 ("computer_science", "malware_detection"),
                 ("machine_learning_techniques", "neural_networks"),
                 ("malicious_software", "malware_analysis")]:
        add(("iri", t(s)), STO, ("iri", t(o)))
    for s, o in [("neural_networks", "machine_learning"), ("neural_network", "computer_science"),
                 ("malware_detection", "malicious_software"),
                 ("malware_analysis", "computer_science"),
                 ("malicious_code", "computer_science")]:
        add(("iri", t(s)), CONTRIB, ("iri", t(o)))
    return triples


def nt(term):
    kind, v = term
    if kind == "iri":
        return "<%s>" % v
    return '"%s"' % v.replace("\\", "\\\\").replace('"', '\\"')


def line(tr):
    s, p, o = tr
    return "%s <%s> %s ." % (nt(s), p, nt(o))


def merge(triples):
    mapping = {}
    for members in CLUSTERS:
        for m in members:
            mapping[t(m)] = t(members[0])
    rw = lambda term: ("iri", mapping.get(term[1], term[1])) if term[0] == "iri" else term
    out = set()
    for s, p, o in triples:
        if p in (REL_EQ, PREF_EQ):
            continue
        if p == LABEL and mapping.get(s[1], s[1]) != s[1]:
            out.add((rw(s), ALT, o))
        else:
            out.add((rw(s), p, rw(o)))
    return out


def intra_patch(triples):
    adds = []
    for members in CLUSTERS:
        refs = {m: {o[1] for s, p, o in triples
                    if s[1] == t(m) and p == SAME and o[1].startswith(DBR)} for m in members}
        targets = set().union(*refs.values())
        if len(targets) == 1:
            target = targets.pop()
            for m in members:
                if not refs[m]:
                    adds.append((t(members[0]), ("iri", t(m)), SAME, ("iri", target)))
    return adds


def write_turtle(triples, path):
    lines = ["# Synonym-cluster test fixture (CSO-shaped)",
             "@prefix topics: <%s> ." % T, "@prefix cso: <%s> ." % CSO,
             "@prefix owl: <http://www.w3.org/2002/07/owl#> .",
             "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
             "@prefix schema: <http://schema.org/> .", ""]
    short = {T: "topics:", CSO: "cso:", "http://www.w3.org/2002/07/owl#": "owl:",
             "http://www.w3.org/2000/01/rdf-schema#": "rdfs:", "http://schema.org/": "schema:"}

    def fmt(term):
        kind, v = term
        if kind == "lit":
            return '"%s"' % v
        for ns, p in short.items():
            if v.startswith(ns):
                return p + v[len(ns):]
        return "<%s>" % v

    subjects = []
    for s, _, _ in triples:
        if s not in subjects:
            subjects.append(s)
    for s in subjects:
        parts = []
        for s2, p, o in triples:
            if s2 == s:
                parts.append("%s %s" % ("a" if p == RDF_TYPE else fmt(("iri", p)), fmt(o)))
        lines.append(fmt(s) + " " + " ;\n    ".join(parts) + " .\n")
    with open(path, "w") as f:
        f.write("\n".join(lines))


def main():
    os.makedirs(OUT, exist_ok=True)
    triples = build()
    assert len(set(triples)) == len(triples)
    write_turtle(triples, os.path.join(OUT, "cso.ttl"))
    merged = merge(triples)
    with open(os.path.join(OUT, "merged.golden.nt"), "w") as f:
        f.write("".join(line(x) + "\n" for x in sorted(line(x) for x in merged) and
                        sorted(merged, key=line)))
    adds = sorted(intra_patch(triples), key=lambda a: line(a[1:]))
    with open(os.path.join(OUT, "intra_patch.golden.ttl"), "w") as f:
        f.write("# Generated by ontolint. Additions: %d, removals: 0.\n" % len(adds))
        for canon, s, p, o in adds:
            f.write("\n# ClusterRefMissing in cluster <%s>\n%s\n" % (canon, line((s, p, o))))
    with open(os.path.join(OUT, "equiv_props.txt"), "w") as f:
        f.write("%s\n" % REL_EQ)
    print("input", len(triples), "merged", len(merged), "patch", len(adds))


if __name__ == "__main__":
    main()
