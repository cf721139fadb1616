use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Bound;

use super::term::{Iri, Term, Triple};

type Key = [u32; 3];

/// Immutable in-memory triple store with SPO, POS and OSP indexes.
///
/// Term ids follow the lexicographic order of the terms' N-Triples form, so
/// iterating the SPO index yields triples in canonical serialization order.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    duplicates: usize,
}

/// Borrowed view of a stored triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Iri,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_owned(&self) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.predicate.clone(),
            object: self.object.clone(),
        }
    }
}

/// Collects triples, dropping duplicates, and freezes them into a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    seen: HashSet<Triple>,
    order: Vec<Triple>,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.seen.contains(&triple) {
            self.duplicates += 1;
            return false;
        }
        self.seen.insert(triple.clone());
        self.order.push(triple);
        true
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn build(self) -> Graph {
        let mut keyed: Vec<(String, Term)> = Vec::new();
        let mut interned: HashSet<&Term> = HashSet::new();
        for t in &self.order {
            for term in [&t.subject, &t.object] {
                if interned.insert(term) {
                    keyed.push((term.to_ntriples(), term.clone()));
                }
            }
        }
        let predicates: Vec<Term> = self
            .order
            .iter()
            .map(|t| Term::Iri(t.predicate.clone()))
            .collect();
        for p in &predicates {
            if interned.insert(p) {
                keyed.push((p.to_ntriples(), p.clone()));
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let terms: Vec<Term> = keyed.into_iter().map(|(_, t)| t).collect();
        let ids: HashMap<Term, u32> = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();

        let mut graph = Graph {
            terms,
            ids,
            duplicates: self.duplicates,
            ..Graph::default()
        };
        for (t, p) in self.order.iter().zip(&predicates) {
            let s = graph.ids[&t.subject];
            let p = graph.ids[p];
            let o = graph.ids[&t.object];
            graph.spo.insert([s, p, o]);
            graph.pos.insert([p, o, s]);
            graph.osp.insert([o, s, p]);
        }
        graph
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut b = GraphBuilder::new();
        for t in iter {
            b.insert(t);
        }
        b.build()
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Number of duplicate triples discarded while loading.
    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    fn resolve(&self, key: &Key) -> TripleRef<'_> {
        TripleRef {
            subject: &self.terms[key[0] as usize],
            predicate: self.terms[key[1] as usize]
                .as_iri()
                .expect("predicate ids always refer to IRIs"),
            object: &self.terms[key[2] as usize],
        }
    }

    /// All triples in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.spo.iter().map(move |k| self.resolve(k))
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        let (Some(&s), Some(&o)) = (self.ids.get(&triple.subject), self.ids.get(&triple.object))
        else {
            return false;
        };
        match self.ids.get(&Term::Iri(triple.predicate.clone())) {
            Some(&p) => self.spo.contains(&[s, p, o]),
            None => false,
        }
    }

    pub fn to_triples(&self) -> Vec<Triple> {
        self.iter().map(|t| t.to_owned()).collect()
    }

    /// Triples matching every bound position, in canonical order.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<TripleRef<'_>> {
        let lookup = |t: Option<&Term>| -> Result<Option<u32>, ()> {
            match t {
                None => Ok(None),
                Some(t) => self.ids.get(t).copied().map(Some).ok_or(()),
            }
        };
        let (Ok(s), Ok(p), Ok(o)) = (lookup(subject), lookup(predicate), lookup(object)) else {
            return Vec::new();
        };

        let keys: Vec<Key> = match (s, p, o) {
            (Some(s), _, _) => prefix_range(&self.spo, s, p)
                .filter(|k| o.is_none_or(|o| k[2] == o))
                .copied()
                .collect(),
            (None, Some(p), _) => {
                let mut keys: Vec<Key> = prefix_range(&self.pos, p, o)
                    .map(|k| [k[2], k[0], k[1]])
                    .collect();
                keys.sort_unstable();
                keys
            }
            (None, None, Some(o)) => {
                let mut keys: Vec<Key> = prefix_range(&self.osp, o, None)
                    .map(|k| [k[1], k[2], k[0]])
                    .collect();
                keys.sort_unstable();
                keys
            }
            (None, None, None) => self.spo.iter().copied().collect(),
        };
        keys.iter().map(|k| self.resolve(k)).collect()
    }

    /// Triples with the given predicate IRI.
    pub fn with_predicate(&self, predicate: &str) -> Vec<TripleRef<'_>> {
        match Iri::new(predicate) {
            Ok(iri) => self.match_pattern(None, Some(&Term::Iri(iri)), None),
            Err(_) => Vec::new(),
        }
    }

    /// Distinct predicates in canonical order.
    pub fn predicates(&self) -> Vec<&Iri> {
        let mut out: Vec<u32> = self.pos.iter().map(|k| k[0]).collect();
        out.dedup();
        out.into_iter()
            .filter_map(|id| self.terms[id as usize].as_iri())
            .collect()
    }

    /// Distinct subjects in canonical order.
    pub fn subjects(&self) -> Vec<&Term> {
        let mut out: Vec<u32> = self.spo.iter().map(|k| k[0]).collect();
        out.dedup();
        out.into_iter().map(|id| &self.terms[id as usize]).collect()
    }

    /// Canonical N-Triples document: one sorted line per triple.
    pub fn to_ntriples(&self) -> String {
        let mut lines: Vec<String> = self.iter().map(|t| t.to_owned().to_ntriples()).collect();
        lines.sort();
        let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| a == b)
    }
}

impl Eq for Graph {}

fn prefix_range(
    index: &BTreeSet<Key>,
    first: u32,
    second: Option<u32>,
) -> impl Iterator<Item = &Key> {
    let (lo, hi) = match second {
        Some(second) => ([first, second, 0], [first, second, u32::MAX]),
        None => ([first, 0, 0], [first, u32::MAX, u32::MAX]),
    };
    index.range((Bound::Included(lo), Bound::Included(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn triple(s: &str, p: &str, o: Term) -> Triple {
        Triple::new(iri(s), Iri::new(p).unwrap(), o).unwrap()
    }

    fn linear<'a>(
        g: &'a Graph,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Vec<TripleRef<'a>> {
        let mut out: Vec<TripleRef<'a>> = g
            .iter()
            .filter(|t| {
                s.is_none_or(|s| t.subject == s)
                    && p.is_none_or(|p| p.as_iri() == Some(t.predicate))
                    && o.is_none_or(|o| t.object == o)
            })
            .collect();
        out.sort_by_key(|t| t.to_owned().to_ntriples());
        out
    }

    #[test]
    fn duplicates_are_dropped_and_counted() {
        let t = triple("http://a", "http://p", Term::literal("x"));
        let g: Graph = vec![t.clone(), t.clone(), t].into_iter().collect();
        assert_eq!(g.len(), 1);
        assert_eq!(g.duplicates(), 2);
    }

    #[test]
    fn unbound_pattern_returns_everything() {
        let g: Graph = vec![
            triple("http://a", "http://p", iri("http://b")),
            triple("http://a", "http://q", iri("http://c")),
            triple("http://b", "http://p", Term::literal("x")),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.match_pattern(None, None, None).len(), 3);
        assert!(g.match_pattern(Some(&iri("http://zzz")), None, None).is_empty());
        let with_p = g.match_pattern(None, Some(&iri("http://p")), None);
        assert_eq!(with_p, linear(&g, None, Some(&iri("http://p")), None));
        assert_eq!(with_p.len(), 2);
    }

    #[test]
    fn iteration_follows_serialization_order() {
        let g: Graph = vec![
            triple("http://z", "http://p", Term::literal("1")),
            triple("http://a", "http://p", Term::literal("2")),
        ]
        .into_iter()
        .collect();
        let lines: Vec<String> = g.iter().map(|t| t.to_owned().to_ntriples()).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
    }

    fn arb_graph() -> impl Strategy<Value = Vec<(u8, u8, u8, bool)>> {
        prop::collection::vec((0u8..30, 0u8..6, 0u8..30, any::<bool>()), 0..500)
    }

    fn make(spec: &[(u8, u8, u8, bool)]) -> Graph {
        spec.iter()
            .map(|&(s, p, o, lit)| {
                let object = if lit {
                    Term::literal(format!("v{o}"))
                } else {
                    iri(&format!("http://n/{o}"))
                };
                triple(&format!("http://n/{s}"), &format!("http://p/{p}"), object)
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn index_lookup_equals_linear_scan(
            spec in arb_graph(),
            patterns in prop::collection::vec((0u8..32, 0u8..8, 0u8..32, any::<bool>(), 0u8..8), 60)
        ) {
            let g = make(&spec);
            for (s, p, o, lit, mask) in patterns {
                let s = (mask & 1 != 0).then(|| iri(&format!("http://n/{s}")));
                let p = (mask & 2 != 0).then(|| iri(&format!("http://p/{p}")));
                let o = (mask & 4 != 0).then(|| if lit {
                    Term::literal(format!("v{o}"))
                } else {
                    iri(&format!("http://n/{o}"))
                });
                let fast = g.match_pattern(s.as_ref(), p.as_ref(), o.as_ref());
                let slow = linear(&g, s.as_ref(), p.as_ref(), o.as_ref());
                prop_assert_eq!(fast, slow);
            }
        }

        #[test]
        fn insertion_order_does_not_matter(spec in arb_graph(), seed in any::<u64>()) {
            let g = make(&spec);
            let mut shuffled = spec.clone();
            let n = shuffled.len();
            if n > 1 {
                let mut x = seed;
                for i in (1..n).rev() {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    shuffled.swap(i, (x >> 33) as usize % (i + 1));
                }
            }
            prop_assert_eq!(g, make(&shuffled));
        }
    }
}
