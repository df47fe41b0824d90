//! Exhaustive search of the group generated by CNOT1 and CNOT2.
//!
//! Group elements are explored breadth-first from the identity. Extending a
//! circuit by one gate `g` maps the element `x` to `g · x` (the new gate acts
//! last), so the BFS depth of an element is the length of its shortest gate
//! word. Layers are expanded in the order their elements were discovered and
//! each element tries `CNOT1` before `CNOT2`; the first word found for an
//! element is therefore the lexicographically least among its shortest
//! words.
//!
//! Visited sets are keyed by complete image tables. Frontier expansion can
//! run on a rayon pool, but children are merged into the visited set
//! sequentially in frontier order, so every result is independent of the
//! number of workers.

use std::fmt;
use std::ops::Range;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{points, Generator};
use crate::perm::Perm;

/// Largest dimension accepted by [`apply_word`].
pub const MAX_WORD_DIMENSION: u32 = 64;
/// Default largest dimension for group enumeration and word search.
pub const MAX_SEARCH_DIMENSION: u32 = 31;
pub const DEFAULT_MAX_ELEMENTS: usize = 10_000_000;
/// Identifies the generator set in cache keys.
pub const GENERATOR_SET_VERSION: &str = "cnot1+cnot2/v1";

/// A circuit of CNOT gates, in the order they are applied.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GateWord {
    pub d: u32,
    pub letters: Vec<Generator>,
}

impl GateWord {
    pub fn new(d: u32, letters: Vec<Generator>) -> Self {
        GateWord { d, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> Result<Perm> {
        apply_word(self)
    }
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.letters.iter().map(Generator::to_string).collect();
        f.write_str(&names.join(" "))
    }
}

/// Evaluates a word in circuit order: the first letter acts first.
pub fn apply_word(word: &GateWord) -> Result<Perm> {
    let d = word.d;
    if d > MAX_WORD_DIMENSION {
        return Err(Error::guard("dimension", d, MAX_WORD_DIMENSION));
    }
    let mut acc = Perm::identity(points(d)?)?;
    if word.is_empty() {
        return Ok(acc);
    }
    let gens = generator_perms(d)?;
    for &g in &word.letters {
        acc = gens[g as usize].compose_unchecked(&acc);
    }
    Ok(acc)
}

fn generator_perms(d: u32) -> Result<[Perm; 2]> {
    Ok([Generator::Cnot1.perm(d)?, Generator::Cnot2.perm(d)?])
}

/// Resource limits shared by every search entry point.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Abort with [`Error::GroupTooLarge`] once this many elements are stored.
    pub max_elements: usize,
    /// Worker threads for frontier expansion; 1 runs inline, 0 uses the
    /// global rayon pool.
    pub workers: usize,
    pub max_dimension: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_elements: DEFAULT_MAX_ELEMENTS,
            workers: 1,
            max_dimension: MAX_SEARCH_DIMENSION,
        }
    }
}

impl SearchConfig {
    fn check_dimension(&self, d: u32) -> Result<usize> {
        if d > self.max_dimension {
            return Err(Error::guard("dimension", d, self.max_dimension));
        }
        points(d)
    }
}

/// Order, diameter and layer sizes of the generated group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupCensus {
    pub d: u32,
    pub order: usize,
    pub diameter: usize,
    pub counts_by_depth: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SynthesisResult {
    /// A shortest word, lexicographically least among equal lengths.
    Found { word: GateWord },
    /// The whole group was enumerated and the target is not in it.
    UnreachableExhausted { group_order: usize, diameter: usize },
    /// The depth bound stopped the search before the closure was complete.
    DepthLimit {
        explored_depth: usize,
        frontier_size: usize,
    },
}

impl SynthesisResult {
    pub fn word(&self) -> Option<&GateWord> {
        match self {
            SynthesisResult::Found { word } => Some(word),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SynthesisResult::Found { .. } => "FOUND",
            SynthesisResult::UnreachableExhausted { .. } => "UNREACHABLE_EXHAUSTED",
            SynthesisResult::DepthLimit { .. } => "DEPTH_LIMIT",
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Parent {
    index: usize,
    letter: Generator,
}

/// Layered BFS over `x ↦ step · x` for a fixed pair of step permutations.
struct Explorer<'a> {
    steps: [&'a Perm; 2],
    seen: IndexMap<Perm, Option<Parent>>,
    /// Start index of each layer in `seen`.
    layer_starts: Vec<usize>,
    closed: bool,
    pool: Option<&'a rayon::ThreadPool>,
    d: u32,
    cap: usize,
}

impl<'a> Explorer<'a> {
    fn new(
        root: Perm,
        steps: [&'a Perm; 2],
        pool: Option<&'a rayon::ThreadPool>,
        d: u32,
        cap: usize,
    ) -> Self {
        let mut seen = IndexMap::new();
        seen.insert(root, None);
        Explorer {
            steps,
            seen,
            layer_starts: vec![0],
            closed: false,
            pool,
            d,
            cap,
        }
    }

    /// Depth of the outermost non-empty layer.
    fn depth(&self) -> usize {
        self.layer_starts.len() - 1
    }

    fn frontier(&self) -> Range<usize> {
        *self.layer_starts.last().unwrap()..self.seen.len()
    }

    fn layer_of(&self, index: usize) -> usize {
        self.layer_starts.partition_point(|&s| s <= index) - 1
    }

    fn counts_by_depth(&self) -> Vec<usize> {
        let mut ends = self.layer_starts[1..].to_vec();
        ends.push(self.seen.len());
        self.layer_starts
            .iter()
            .zip(ends)
            .map(|(s, e)| e - s)
            .collect()
    }

    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    /// Unseen children of the frontier in (element, letter) order. Duplicates
    /// within the layer are kept; the caller resolves them in order.
    fn fresh_children(&self) -> Vec<(Perm, Parent)> {
        let range = self.frontier();
        let child = |index: usize, letter: Generator| {
            let (node, _) = self.seen.get_index(index).unwrap();
            let next = self.steps[letter as usize].compose_unchecked(node);
            (!self.seen.contains_key(&next)).then_some((next, Parent { index, letter }))
        };
        if self.pool.is_some() {
            self.run(|| {
                range
                    .into_par_iter()
                    .flat_map_iter(|i| Generator::ALL.into_iter().filter_map(move |g| child(i, g)))
                    .collect()
            })
        } else {
            range
                .flat_map(|i| Generator::ALL.into_iter().filter_map(move |g| child(i, g)))
                .collect()
        }
    }

    fn has_fresh_children(&self) -> bool {
        let range = self.frontier();
        let fresh = |index: usize| {
            let (node, _) = self.seen.get_index(index).unwrap();
            self.steps
                .iter()
                .any(|s| !self.seen.contains_key(&s.compose_unchecked(node)))
        };
        if self.pool.is_some() {
            self.run(|| range.into_par_iter().any(fresh))
        } else {
            range.into_iter().any(fresh)
        }
    }

    /// Expands one layer. Returns `false` once the closure is complete.
    fn advance(&mut self) -> Result<bool> {
        if self.closed {
            return Ok(false);
        }
        let children = self.fresh_children();
        let start = self.seen.len();
        for (perm, parent) in children {
            self.seen.entry(perm).or_insert(Some(parent));
            if self.seen.len() > self.cap {
                return Err(Error::GroupTooLarge {
                    d: self.d,
                    cap: self.cap,
                });
            }
        }
        if self.seen.len() == start {
            self.closed = true;
            return Ok(false);
        }
        self.layer_starts.push(start);
        Ok(true)
    }

    /// Letters along the BFS tree from the root to `index`, root first.
    fn path_to(&self, mut index: usize) -> Vec<Generator> {
        let mut letters = Vec::new();
        while let Some(Some(parent)) = self.seen.get_index(index).map(|(_, p)| *p) {
            letters.push(parent.letter);
            index = parent.index;
        }
        letters.reverse();
        letters
    }
}

fn build_pool(workers: usize) -> Result<Option<rayon::ThreadPool>> {
    if workers == 1 {
        return Ok(None);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if workers > 1 {
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map(Some)
        .map_err(|_| Error::guard("worker threads", workers as u64, 1u64))
}

/// Enumerates the full group generated by CNOT1 and CNOT2 at dimension `d`.
pub fn enumerate_group(d: u32, config: &SearchConfig) -> Result<GroupCensus> {
    let n = config.check_dimension(d)?;
    let gens = generator_perms(d)?;
    let pool = build_pool(config.workers)?;
    let mut explorer = Explorer::new(
        Perm::identity(n)?,
        [&gens[0], &gens[1]],
        pool.as_ref(),
        d,
        config.max_elements,
    );
    while explorer.advance()? {}
    Ok(GroupCensus {
        d,
        order: explorer.seen.len(),
        diameter: explorer.depth(),
        counts_by_depth: explorer.counts_by_depth(),
    })
}

/// Every element of the generated group, in BFS discovery order.
pub fn group_elements(d: u32, config: &SearchConfig) -> Result<Vec<Perm>> {
    let n = config.check_dimension(d)?;
    let gens = generator_perms(d)?;
    let pool = build_pool(config.workers)?;
    let mut explorer = Explorer::new(
        Perm::identity(n)?,
        [&gens[0], &gens[1]],
        pool.as_ref(),
        d,
        config.max_elements,
    );
    while explorer.advance()? {}
    Ok(explorer.seen.into_keys().collect())
}

fn check_target(d: u32, target: &Perm, config: &SearchConfig) -> Result<usize> {
    let n = config.check_dimension(d)?;
    if target.len() != n {
        return Err(Error::SizeMismatch {
            left: target.len(),
            right: n,
        });
    }
    Ok(n)
}

/// Shortest CNOT word equal to `target`, by forward BFS.
///
/// `max_depth` bounds the word length; `None` searches until the closure is
/// complete. Claims unreachability only after full enumeration.
pub fn find_word(
    d: u32,
    target: &Perm,
    max_depth: Option<usize>,
    config: &SearchConfig,
) -> Result<SynthesisResult> {
    let n = check_target(d, target, config)?;
    let gens = generator_perms(d)?;
    let pool = build_pool(config.workers)?;
    let mut explorer = Explorer::new(
        Perm::identity(n)?,
        [&gens[0], &gens[1]],
        pool.as_ref(),
        d,
        config.max_elements,
    );
    loop {
        if let Some(index) = explorer.seen.get_index_of(target) {
            return Ok(SynthesisResult::Found {
                word: GateWord::new(d, explorer.path_to(index)),
            });
        }
        if max_depth == Some(explorer.depth()) {
            if explorer.has_fresh_children() {
                return Ok(SynthesisResult::DepthLimit {
                    explored_depth: explorer.depth(),
                    frontier_size: explorer.frontier().len(),
                });
            }
            break;
        }
        if !explorer.advance()? {
            break;
        }
    }
    Ok(SynthesisResult::UnreachableExhausted {
        group_order: explorer.seen.len(),
        diameter: explorer.depth(),
    })
}

/// Meet-in-the-middle variant of [`find_word`] with the same outcome.
///
/// The forward side grows from the identity; the backward side grows from
/// `target` by `y ↦ g⁻¹ · y`, so a backward element at depth `k` is some
/// `v⁻¹ · target` for a word `v` of length `k`. The first layer expansion
/// producing a common element fixes the shortest length `a + b`, and every
/// shortest word passes through forward layer `a` at its `a`-th letter.
/// The least word is the minimum over those meeting elements of the stored
/// least prefix followed by the greedily least suffix.
///
/// `max_total_depth` bounds `a + b`.
pub fn bidirectional_find(
    d: u32,
    target: &Perm,
    max_total_depth: Option<usize>,
    config: &SearchConfig,
) -> Result<SynthesisResult> {
    let n = check_target(d, target, config)?;
    if target.is_identity() {
        return Ok(SynthesisResult::Found {
            word: GateWord::new(d, Vec::new()),
        });
    }
    let gens = generator_perms(d)?;
    let inverses = [gens[0].inverse(), gens[1].inverse()];
    let pool = build_pool(config.workers)?;
    let mut forward = Explorer::new(
        Perm::identity(n)?,
        [&gens[0], &gens[1]],
        pool.as_ref(),
        d,
        config.max_elements,
    );
    let mut backward = Explorer::new(
        target.clone(),
        [&inverses[0], &inverses[1]],
        pool.as_ref(),
        d,
        config.max_elements,
    );

    let exhausted = |side: &Explorer| SynthesisResult::UnreachableExhausted {
        group_order: side.seen.len(),
        diameter: side.depth(),
    };

    loop {
        if max_total_depth == Some(forward.depth() + backward.depth()) {
            if !forward.has_fresh_children() {
                return Ok(exhausted(&forward));
            }
            if !backward.has_fresh_children() {
                return Ok(exhausted(&backward));
            }
            return Ok(SynthesisResult::DepthLimit {
                explored_depth: forward.depth() + backward.depth(),
                frontier_size: forward.frontier().len() + backward.frontier().len(),
            });
        }
        let grow_forward = forward.frontier().len() <= backward.frontier().len();
        let (side, other) = if grow_forward {
            (&mut forward, &backward)
        } else {
            (&mut backward, &forward)
        };
        if !side.advance()? {
            return Ok(exhausted(side));
        }
        if side.seen.len() + other.seen.len() > config.max_elements {
            return Err(Error::GroupTooLarge {
                d,
                cap: config.max_elements,
            });
        }
        let met = side.frontier().any(|i| {
            let (node, _) = side.seen.get_index(i).unwrap();
            other.seen.contains_key(node)
        });
        if met {
            let word = canonical_meet(&forward, &backward, &gens);
            return Ok(SynthesisResult::Found {
                word: GateWord::new(d, word),
            });
        }
    }
}

fn canonical_meet(forward: &Explorer, backward: &Explorer, gens: &[Perm; 2]) -> Vec<Generator> {
    let b = backward.depth();
    let depth_back = |p: &Perm| backward.seen.get_index_of(p).map(|i| backward.layer_of(i));
    let mut best: Option<Vec<Generator>> = None;
    for index in forward.frontier() {
        let (node, _) = forward.seen.get_index(index).unwrap();
        if depth_back(node) != Some(b) {
            continue;
        }
        let mut word = forward.path_to(index);
        let mut current = node.clone();
        for remaining in (0..b).rev() {
            let (letter, next) = Generator::ALL
                .into_iter()
                .map(|g| (g, gens[g as usize].compose_unchecked(&current)))
                .find(|(_, next)| depth_back(next) == Some(remaining))
                .expect("backward layers are connected");
            word.push(letter);
            current = next;
        }
        if best.as_ref().is_none_or(|w| word < *w) {
            best = Some(word);
        }
    }
    best.expect("meeting layer is non-empty")
}
