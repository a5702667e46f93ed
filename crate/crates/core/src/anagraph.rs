//! Anagraphs: dictionary words bucketed by letter count.
//!
//! Each bucket holds distinct (possibly reduced) words. Its components
//! partition the words into classes known to be equal; every pair inside a
//! component stands for a relation. Reduction deletes letters that commute
//! with everything else in the bucket, which can make distinct buckets
//! coincide; those are merged, and components sharing a reduced word are
//! unified.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dsu::DisjointSet;
use crate::ingest::Dictionary;
use crate::model::{letter_count, removable_letters, CommutationSet, LetterCount, LetterSet, Word};

/// A word in a bucket together with the dictionary words that reduced to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub word: Word,
    /// Indices into the store's origin list, ascending.
    pub sources: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anagraph {
    key: LetterCount,
    vertices: Vec<Vertex>,
    /// For each vertex, the index of the smallest vertex in its component.
    components: Vec<u32>,
}

impl Anagraph {
    pub fn key(&self) -> &LetterCount {
        &self.key
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn component_label(&self, vertex: usize) -> usize {
        self.components[vertex] as usize
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.components[u] == self.components[v]
    }

    /// Components as lists of vertex indices, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &c) in self.components.iter().enumerate() {
            groups.entry(c).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Index pairs `(u, v)`, `u < v`, of vertices sharing a component.
    pub fn component_index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .filter(move |&(u, v)| self.components[u] == self.components[v])
    }

    pub(crate) fn retain_vertices(&self, keep: impl Fn(usize) -> bool) -> Option<Anagraph> {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        if kept.len() < 2 {
            return None;
        }
        let mut dsu = DisjointSet::new(kept.len());
        for a in 0..kept.len() {
            for b in a + 1..kept.len() {
                if self.same_component(kept[a], kept[b]) {
                    dsu.union(a, b);
                }
            }
        }
        Some(Anagraph {
            key: self.key.clone(),
            vertices: kept.iter().map(|&i| self.vertices[i].clone()).collect(),
            components: dsu.min_labels(),
        })
    }
}

/// Each unordered pair of distinct vertices lying in a common component,
/// exactly once.
pub fn component_pairs(g: &Anagraph) -> impl Iterator<Item = (&Word, &Word)> + '_ {
    g.component_index_pairs().map(move |(u, v)| (&g.vertices[u].word, &g.vertices[v].word))
}

#[derive(Debug)]
struct Origins {
    words: Vec<Word>,
    /// Original anagram class of each word.
    class: Vec<u32>,
}

/// How a pair of vertices in one component is justified by the dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Two dictionary words from the same anagram class.
    Direct(Word, Word),
    /// Dictionary anagram pairs whose reductions link the two vertices.
    Chain(Vec<(Word, Word)>),
}

#[derive(Debug, Clone)]
pub struct AnagraphStore {
    buckets: BTreeMap<LetterCount, Anagraph>,
    origins: Arc<Origins>,
}

impl PartialEq for AnagraphStore {
    fn eq(&self, other: &Self) -> bool {
        self.buckets == other.buckets
    }
}

impl Eq for AnagraphStore {}

impl AnagraphStore {
    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Buckets in key order.
    pub fn buckets(&self) -> impl ExactSizeIterator<Item = &Anagraph> {
        self.buckets.values()
    }

    pub fn get(&self, key: &LetterCount) -> Option<&Anagraph> {
        self.buckets.get(key)
    }

    pub fn vertex_count(&self) -> usize {
        self.buckets.values().map(Anagraph::len).sum()
    }

    pub fn origin_word(&self, source: u32) -> &Word {
        &self.origins.words[source as usize]
    }

    fn origin_class(&self, source: u32) -> u32 {
        self.origins.class[source as usize]
    }

    pub(crate) fn with_buckets(&self, buckets: impl IntoIterator<Item = Anagraph>) -> AnagraphStore {
        AnagraphStore {
            buckets: buckets.into_iter().map(|g| (g.key.clone(), g)).collect(),
            origins: Arc::clone(&self.origins),
        }
    }

    /// Whether vertices `u` and `v` of `g` have dictionary words from one
    /// anagram class among their sources.
    pub fn shares_class(&self, g: &Anagraph, u: usize, v: usize) -> bool {
        let classes = |i: usize| g.vertices[i].sources.iter().map(|&s| self.origin_class(s));
        let cu: Vec<u32> = classes(u).collect();
        classes(v).any(|c| cu.contains(&c))
    }

    /// The dictionary evidence that vertices `u` and `v` of `g` are equal.
    /// Returns `None` if they are not in one component.
    pub fn provenance(&self, g: &Anagraph, u: usize, v: usize) -> Option<Provenance> {
        if !g.same_component(u, v) {
            return None;
        }
        // Smallest same-class pair, if any.
        let direct = g.vertices[u]
            .sources
            .iter()
            .flat_map(|&a| g.vertices[v].sources.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| self.origin_class(a) == self.origin_class(b))
            .map(|(a, b)| (self.origin_word(a), self.origin_word(b)))
            .min();
        if let Some((a, b)) = direct {
            return Some(Provenance::Direct(a.clone(), b.clone()));
        }

        // Breadth-first search over vertices of the component, stepping
        // between vertices whose sources share an anagram class.
        let members: Vec<usize> = (0..g.len()).filter(|&i| g.same_component(i, u)).collect();
        let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &i in &members {
            for &s in &g.vertices[i].sources {
                by_class.entry(self.origin_class(s)).or_default().push(i);
            }
        }
        let mut came_from: HashMap<usize, (usize, u32)> = HashMap::new();
        let mut queue = VecDeque::from([u]);
        came_from.insert(u, (u, u32::MAX));
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            let mut classes: Vec<u32> = g.vertices[x].sources.iter().map(|&s| self.origin_class(s)).collect();
            classes.sort_unstable();
            classes.dedup();
            for c in classes {
                for &y in &by_class[&c] {
                    if let std::collections::hash_map::Entry::Vacant(e) = came_from.entry(y) {
                        e.insert((x, c));
                        queue.push_back(y);
                    }
                }
            }
        }
        let pick = |vertex: usize, class: u32| {
            g.vertices[vertex]
                .sources
                .iter()
                .filter(|&&s| self.origin_class(s) == class)
                .map(|&s| self.origin_word(s))
                .min()
                .expect("class taken from this vertex")
                .clone()
        };
        let mut links = Vec::new();
        let mut cur = v;
        while cur != u {
            let &(prev, class) = came_from.get(&cur)?;
            links.push((pick(prev, class), pick(cur, class)));
            cur = prev;
        }
        links.reverse();
        Some(Provenance::Chain(links))
    }
}

/// Buckets every letter count shared by at least two dictionary words; each
/// bucket starts as a single component.
pub fn build_anagraphs(d: &Dictionary) -> AnagraphStore {
    let mut classes: BTreeMap<LetterCount, Vec<u32>> = BTreeMap::new();
    for (i, w) in d.words().iter().enumerate() {
        classes.entry(letter_count(w)).or_default().push(i as u32);
    }
    let mut class = vec![u32::MAX; d.len()];
    let mut buckets = BTreeMap::new();
    for (ordinal, (key, members)) in classes.into_iter().filter(|(_, m)| m.len() >= 2).enumerate() {
        let mut vertices: Vec<Vertex> = members
            .iter()
            .map(|&i| {
                class[i as usize] = ordinal as u32;
                Vertex { word: d.words()[i as usize].clone(), sources: vec![i] }
            })
            .collect();
        vertices.sort_by(|a, b| a.word.cmp(&b.word));
        let components = vec![0; vertices.len()];
        buckets.insert(key.clone(), Anagraph { key, vertices, components });
    }
    AnagraphStore { buckets, origins: Arc::new(Origins { words: d.words().to_vec(), class }) }
}

/// Deletes every occurrence of the letters in `remove`.
pub fn reduce_word(w: &Word, remove: LetterSet) -> Word {
    Word::from_letters(w.letters().filter(|&l| !remove.contains(l)))
}

/// Counts from one [`reduce_store_with_summary`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceSummary {
    /// Buckets that lost at least one letter.
    pub buckets_reduced: usize,
    pub buckets_before: usize,
    pub buckets_after: usize,
}

impl ReduceSummary {
    pub fn changed(&self) -> bool {
        self.buckets_reduced > 0
    }
}

enum Part {
    Unchanged(Anagraph),
    Reduced(Vec<(Word, Vec<u32>, u32)>),
}

/// Reduces every bucket by the letters that commute with all others in it,
/// merges buckets whose reduced letter counts coincide, and drops buckets
/// left with a single vertex or the empty word.
pub fn reduce_store(store: AnagraphStore, commutation: &CommutationSet) -> AnagraphStore {
    reduce_store_with_summary(store, commutation).0
}

pub fn reduce_store_with_summary(store: AnagraphStore, commutation: &CommutationSet) -> (AnagraphStore, ReduceSummary) {
    let buckets_before = store.len();
    let origins = store.origins;
    let reduced: Vec<(LetterCount, Part)> = store
        .buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g| {
            let mut key = g.key.clone();
            let mut removed = LetterSet::EMPTY;
            loop {
                let step = removable_letters(&key, commutation);
                if step.is_empty() {
                    break;
                }
                removed = removed.union(step);
                key = key.without(step);
            }
            if removed.is_empty() {
                return (key, Part::Unchanged(g));
            }
            let entries = g
                .vertices
                .into_iter()
                .zip(g.components)
                .map(|(v, c)| (reduce_word(&v.word, removed), v.sources, c))
                .collect();
            (key, Part::Reduced(entries))
        })
        .collect();

    let buckets_reduced = reduced.iter().filter(|(_, p)| matches!(p, Part::Reduced(_))).count();
    let mut groups: BTreeMap<LetterCount, Vec<Part>> = BTreeMap::new();
    for (key, part) in reduced {
        groups.entry(key).or_default().push(part);
    }
    let buckets: Vec<Anagraph> = groups
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|(key, parts)| merge_parts(key, parts))
        .collect();

    let store = AnagraphStore { buckets: buckets.into_iter().map(|g| (g.key.clone(), g)).collect(), origins };
    let summary = ReduceSummary { buckets_reduced, buckets_before, buckets_after: store.len() };
    (store, summary)
}

fn merge_parts(key: LetterCount, mut parts: Vec<Part>) -> Option<Anagraph> {
    if key.is_zero() {
        return None;
    }
    if parts.len() == 1 && matches!(parts[0], Part::Unchanged(_)) {
        let Some(Part::Unchanged(g)) = parts.pop() else { unreachable!() };
        return Some(g);
    }
    let entry_lists: Vec<Vec<(Word, Vec<u32>, u32)>> = parts
        .into_iter()
        .map(|p| match p {
            Part::Unchanged(g) => {
                g.vertices.into_iter().zip(g.components).map(|(v, c)| (v.word, v.sources, c)).collect()
            }
            Part::Reduced(entries) => entries,
        })
        .collect();

    let mut sources: BTreeMap<Word, Vec<u32>> = BTreeMap::new();
    for (word, src, _) in entry_lists.iter().flatten() {
        sources.entry(word.clone()).or_default().extend(src);
    }
    if sources.len() < 2 {
        return None;
    }
    let index: HashMap<&Word, usize> = sources.keys().enumerate().map(|(i, w)| (w, i)).collect();
    let mut dsu = DisjointSet::new(sources.len());
    for entries in &entry_lists {
        let mut first_of: HashMap<u32, usize> = HashMap::new();
        for (word, _, comp) in entries {
            let i = index[word];
            let root = *first_of.entry(*comp).or_insert(i);
            dsu.union(root, i);
        }
    }
    let components = dsu.min_labels();
    let vertices = sources
        .into_iter()
        .map(|(word, mut src)| {
            src.sort_unstable();
            src.dedup();
            Vertex { word, sources: src }
        })
        .collect();
    Some(Anagraph { key, vertices, components })
}

#[derive(Serialize)]
struct BucketDump<'a> {
    key: String,
    vertices: Vec<&'a Word>,
    components: Vec<Vec<&'a Word>>,
    provenance: BTreeMap<&'a Word, Vec<&'a Word>>,
}

/// Debug dump: one object per bucket with key, vertices, components and
/// the dictionary words behind each vertex.
impl Serialize for AnagraphStore {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.buckets.values().map(|g| BucketDump {
                key: g.key.to_string(),
                vertices: g.vertices.iter().map(|v| &v.word).collect(),
                components: g
                    .components()
                    .into_iter()
                    .map(|c| c.into_iter().map(|i| &g.vertices[i].word).collect())
                    .collect(),
                provenance: g
                    .vertices
                    .iter()
                    .map(|v| (&v.word, v.sources.iter().map(|&s| self.origin_word(s)).collect()))
                    .collect(),
            }),
        )
    }
}
