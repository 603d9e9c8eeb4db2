//! Exact colouring: clique bounds, chromatic number, list-colouring
//! feasibility, minimum distinct colours, and a search for list assignments
//! that witness non-choosability.

mod choosability;
mod chromatic;
mod clique;
mod list;

pub use choosability::{find_bad_assignment, BoundType, ChoosabilityVerdict, SearchStats};
pub use chromatic::{chromatic_number, dsatur_coloring, ChromaticResult};
pub use clique::{max_clique_lower_bound, Clique, EXACT_CLIQUE_LIMIT};
pub use list::{
    list_feasible, min_distinct_coloring, min_distinct_colors, min_distinct_colors_exhaustive, ListOutcome,
    MIN_DISTINCT_MAX_VERTICES,
};

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

pub type Color = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("assignment covers {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("instance has {n} vertices; this routine accepts at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no proper colouring respects the lists")]
    Infeasible,
    #[error("search budget exhausted; chromatic number lies in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize },
    #[error("search budget exhausted after {} list assignments", .0.assignments_checked)]
    Inconclusive(SearchStats),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed list assignment: {0}")]
    Malformed(String),
}

/// Search limits. A limit of `None` means unbounded.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_time(time: Duration) -> Self {
        Budget {
            time: Some(time),
            nodes: None,
        }
    }

    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            time: None,
            nodes: Some(nodes),
        }
    }

    pub(crate) fn start(self) -> Meter {
        Meter {
            budget: self,
            started: Instant::now(),
            nodes: 0,
        }
    }
}

/// Running counter against a [`Budget`].
pub(crate) struct Meter {
    budget: Budget,
    started: Instant,
    pub(crate) nodes: u64,
}

impl Meter {
    /// Counts one node; returns false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.nodes.is_some_and(|limit| self.nodes > limit) {
            return false;
        }
        // the clock is only consulted every 4096 nodes
        if self.nodes & 0xfff == 0 {
            if let Some(t) = self.budget.time {
                return self.started.elapsed() < t;
            }
        }
        true
    }
}

/// A colour per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn color(&self, v: usize) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c = self.0.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

/// True iff no edge of `g` is monochromatic under `c`.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    if c.len() != g.vertex_count() {
        return Err(ColoringError::SizeMismatch {
            expected: g.vertex_count(),
            got: c.len(),
        });
    }
    Ok(g.edges().all(|(u, v)| c.0[u] != c.0[v]))
}

/// A finite set of colours: a 128-bit mask when every colour is below 128,
/// a sorted vector otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ColorSet {
    Mask(u128),
    Sorted(Vec<Color>),
}

impl ColorSet {
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Self {
        let mut v: Vec<Color> = colors.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.last().is_none_or(|&c| c < 128) {
            ColorSet::Mask(v.iter().fold(0, |m, &c| m | (1u128 << c)))
        } else {
            ColorSet::Sorted(v)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ColorSet::Mask(m) => m.count_ones() as usize,
            ColorSet::Sorted(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, c: Color) -> bool {
        match self {
            ColorSet::Mask(m) => c < 128 && (m >> c) & 1 == 1,
            ColorSet::Sorted(v) => v.binary_search(&c).is_ok(),
        }
    }

    /// Ascending iteration.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Color> + '_> {
        match self {
            ColorSet::Mask(m) => {
                let mut m = *m;
                Box::new(std::iter::from_fn(move || {
                    (m != 0).then(|| {
                        let c = m.trailing_zeros();
                        m &= m - 1;
                        c
                    })
                }))
            }
            ColorSet::Sorted(v) => Box::new(v.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<Color> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        match (self, other) {
            (ColorSet::Mask(a), ColorSet::Mask(b)) => ColorSet::Mask(a & b),
            _ => ColorSet::new(self.iter().filter(|&c| other.contains(c))),
        }
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        match (self, other) {
            (ColorSet::Mask(a), ColorSet::Mask(b)) => ColorSet::Mask(a | b),
            _ => ColorSet::new(self.iter().chain(other.iter())),
        }
    }
}

/// A list of allowed colours per vertex. Vertices with equal lists share one
/// stored [`ColorSet`], so assignments that are constant on large vertex
/// classes stay small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    pool: Vec<ColorSet>,
    list_of: Vec<usize>,
}

impl ListAssignment {
    pub fn from_lists(lists: Vec<Vec<Color>>) -> Self {
        Self::from_sets(lists.into_iter().map(ColorSet::new))
    }

    pub fn from_sets(sets: impl IntoIterator<Item = ColorSet>) -> Self {
        let mut ids: HashMap<ColorSet, usize> = HashMap::new();
        let mut pool = Vec::new();
        let list_of = sets
            .into_iter()
            .map(|s| {
                *ids.entry(s).or_insert_with_key(|s| {
                    pool.push(s.clone());
                    pool.len() - 1
                })
            })
            .collect();
        ListAssignment { pool, list_of }
    }

    /// Assignment given as a pool of distinct lists plus the pool index of
    /// each vertex.
    pub fn from_pool(pool: Vec<ColorSet>, list_of: Vec<usize>) -> Result<Self, ColoringError> {
        if let Some(&bad) = list_of.iter().find(|&&i| i >= pool.len()) {
            return Err(ColoringError::Malformed(format!("list index {bad} out of range")));
        }
        Ok(ListAssignment { pool, list_of })
    }

    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        ListAssignment {
            pool: vec![ColorSet::new(colors)],
            list_of: vec![0; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.list_of.len()
    }

    pub fn list(&self, v: usize) -> &ColorSet {
        &self.pool[self.list_of[v]]
    }

    /// Index of `v`'s list among [`Self::distinct_lists`].
    pub fn list_id(&self, v: usize) -> usize {
        self.list_of[v]
    }

    pub fn distinct_lists(&self) -> &[ColorSet] {
        &self.pool
    }

    pub fn palette(&self) -> ColorSet {
        let mut used = vec![false; self.pool.len()];
        for &i in &self.list_of {
            used[i] = true;
        }
        ColorSet::new(
            self.pool
                .iter()
                .zip(used)
                .filter(|(_, u)| *u)
                .flat_map(|(s, _)| s.iter()),
        )
    }

    pub fn min_list_len(&self) -> Option<usize> {
        self.list_of.iter().map(|&i| self.pool[i].len()).min()
    }

    /// Lists of `vertices`, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> ListAssignment {
        Self::from_sets(vertices.iter().map(|&v| self.list(v).clone()))
    }

    /// Whether `c` picks every colour from its vertex's list.
    pub fn respects(&self, c: &Coloring) -> bool {
        c.len() == self.vertex_count() && (0..c.len()).all(|v| self.list(v).contains(c.color(v)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("list assignments are always serializable")
    }
}

/// `{"lists": {"0": [..], "1": [..], ...}}` with keys in vertex order.
impl Serialize for ListAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Lists<'a>(&'a ListAssignment);
        impl Serialize for Lists<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.vertex_count()))?;
                for v in 0..self.0.vertex_count() {
                    map.serialize_entry(&v.to_string(), &self.0.list(v).to_vec())?;
                }
                map.end()
            }
        }
        let mut outer = serializer.serialize_map(Some(1))?;
        outer.serialize_entry("lists", &Lists(self))?;
        outer.end()
    }
}

impl<'de> Deserialize<'de> for ListAssignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lists: BTreeMap<String, Vec<Color>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let n = raw.lists.len();
        let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
        for (k, v) in raw.lists {
            let i: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("vertex key `{k}` is not an integer")))?;
            if i >= n {
                return Err(D::Error::custom(format!(
                    "vertex {i} out of range; lists must cover 0..{n}"
                )));
            }
            lists[i] = Some(v);
        }
        Ok(ListAssignment::from_lists(
            lists
                .into_iter()
                .map(|l| l.expect("keys are distinct and in range"))
                .collect(),
        ))
    }
}
