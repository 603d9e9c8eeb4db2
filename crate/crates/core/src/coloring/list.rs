use std::collections::BTreeMap;

use super::{is_proper, Color, Coloring, ColoringError, ListAssignment};
use crate::graph::Graph;

/// Result of [`list_feasible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListOutcome {
    /// A proper colouring drawn from the lists, when one exists.
    pub coloring: Option<Coloring>,
    /// Set when infeasibility is immediate because this vertex has an empty list.
    pub empty_list_vertex: Option<usize>,
    pub nodes: u64,
}

impl ListOutcome {
    pub fn is_feasible(&self) -> bool {
        self.coloring.is_some()
    }
}

/// Decides whether `g` has a proper colouring with every vertex coloured from
/// its list.
///
/// Backtracking picks the uncoloured vertex with the fewest remaining
/// admissible colours (ties: higher degree, then lower index) and prunes as
/// soon as some uncoloured vertex runs out of colours.
pub fn list_feasible(g: &Graph, lists: &ListAssignment) -> Result<ListOutcome, ColoringError> {
    let n = g.vertex_count();
    if lists.vertex_count() != n {
        return Err(ColoringError::SizeMismatch {
            expected: n,
            got: lists.vertex_count(),
        });
    }
    if let Some(v) = (0..n).find(|&v| lists.list(v).is_empty()) {
        return Ok(ListOutcome {
            coloring: None,
            empty_list_vertex: Some(v),
            nodes: 0,
        });
    }
    let mut s = ListSearch::new(g, lists);
    let found = s.search();
    let coloring = found.then(|| Coloring(s.color.iter().map(|&i| i as Color).collect()));
    if let Some(c) = &coloring {
        assert!(
            is_proper(g, c)? && lists.respects(c),
            "list colouring witness must be proper and respect the lists"
        );
    }
    Ok(ListOutcome {
        coloring,
        empty_list_vertex: None,
        nodes: s.nodes,
    })
}

const UNCOLORED: u64 = u64::MAX;

struct ListSearch {
    adj: Vec<Vec<usize>>,
    lists: Vec<Vec<Color>>,
    /// `blocked[v][i]`: coloured neighbours of `v` using `lists[v][i]`.
    blocked: Vec<Vec<u32>>,
    avail: Vec<usize>,
    color: Vec<u64>,
    remaining: usize,
    nodes: u64,
}

impl ListSearch {
    fn new(g: &Graph, l: &ListAssignment) -> Self {
        let n = g.vertex_count();
        let lists: Vec<Vec<Color>> = (0..n).map(|v| l.list(v).to_vec()).collect();
        ListSearch {
            adj: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            blocked: lists.iter().map(|l| vec![0; l.len()]).collect(),
            avail: lists.iter().map(Vec::len).collect(),
            lists,
            color: vec![UNCOLORED; n],
            remaining: n,
            nodes: 0,
        }
    }

    fn select(&self) -> usize {
        (0..self.color.len())
            .filter(|&v| self.color[v] == UNCOLORED)
            .min_by_key(|&v| (self.avail[v], std::cmp::Reverse(self.adj[v].len()), v))
            .expect("uncoloured vertex remains")
    }

    /// Colours `v` with `c`; false if some uncoloured neighbour is left
    /// without options. Always fully applied so that `unset` can undo it.
    fn set(&mut self, v: usize, c: Color) -> bool {
        self.color[v] = u64::from(c);
        self.remaining -= 1;
        let mut ok = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if let Ok(j) = self.lists[w].binary_search(&c) {
                self.blocked[w][j] += 1;
                if self.blocked[w][j] == 1 {
                    self.avail[w] -= 1;
                    if self.avail[w] == 0 && self.color[w] == UNCOLORED {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn unset(&mut self, v: usize) {
        let c = self.color[v] as Color;
        self.color[v] = UNCOLORED;
        self.remaining += 1;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if let Ok(j) = self.lists[w].binary_search(&c) {
                self.blocked[w][j] -= 1;
                if self.blocked[w][j] == 0 {
                    self.avail[w] += 1;
                }
            }
        }
    }

    fn search(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.nodes += 1;
        let v = self.select();
        for i in 0..self.lists[v].len() {
            if self.blocked[v][i] != 0 {
                continue;
            }
            let c = self.lists[v][i];
            if self.set(v, c) && self.search() {
                return true;
            }
            self.unset(v);
        }
        false
    }
}

/// Largest instance accepted by the minimum-distinct-colours routines.
pub const MIN_DISTINCT_MAX_VERTICES: usize = 12;

/// Minimum number of distinct colours over all proper colourings of `g`
/// drawn from `lists`.
///
/// Colours lying in exactly the same set of lists are interchangeable, so the
/// search works on colour roles (one per such set) and only ever opens the
/// next unused colour of a role. The cost depends on the number of roles and
/// on `|V(g)|`, not on the list length.
pub fn min_distinct_colors(g: &Graph, lists: &ListAssignment) -> Result<usize, ColoringError> {
    min_distinct_coloring(g, lists).map(|c| c.distinct_colors())
}

/// A proper list colouring attaining [`min_distinct_colors`].
pub fn min_distinct_coloring(g: &Graph, lists: &ListAssignment) -> Result<Coloring, ColoringError> {
    let n = check_small(g, lists)?;
    // role signature: bitmask of the vertices whose list contains the colour
    let mut roles: BTreeMap<u32, Vec<Color>> = BTreeMap::new();
    for c in lists.palette().iter() {
        let sig = (0..n).fold(0u32, |m, v| m | (u32::from(lists.list(v).contains(c)) << v));
        roles.entry(sig).or_default().push(c);
    }
    let roles: Vec<(u32, Vec<Color>)> = roles.into_iter().collect();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let options: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..roles.len()).filter(|&r| roles[r].0 >> v & 1 == 1).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));

    /// Slot `(i, j)`: vertex takes the `j`-th colour of distinct list `i`.
    type Slots = Vec<Option<(usize, usize)>>;

    struct Roles<'a> {
        adj: &'a [Vec<usize>],
        options: &'a [Vec<usize>],
        sizes: Vec<usize>,
        order: &'a [usize],
        used: Vec<usize>,
        assigned: Slots,
        best: Option<(usize, Slots)>,
    }

    impl Roles<'_> {
        fn total(&self) -> usize {
            self.used.iter().sum()
        }

        fn clashes(&self, v: usize, slot: (usize, usize)) -> bool {
            self.adj[v].iter().any(|&w| self.assigned[w] == Some(slot))
        }

        fn search(&mut self, pos: usize) {
            let total = self.total();
            if self.best.as_ref().is_some_and(|(b, _)| total >= *b) {
                return;
            }
            if pos == self.order.len() {
                self.best = Some((total, self.assigned.clone()));
                return;
            }
            let v = self.order[pos];
            for &r in &self.options[v] {
                for i in 0..self.used[r] {
                    if !self.clashes(v, (r, i)) {
                        self.assigned[v] = Some((r, i));
                        self.search(pos + 1);
                        self.assigned[v] = None;
                    }
                }
            }
            for &r in &self.options[v] {
                if self.used[r] < self.sizes[r] {
                    let i = self.used[r];
                    self.used[r] += 1;
                    self.assigned[v] = Some((r, i));
                    self.search(pos + 1);
                    self.assigned[v] = None;
                    self.used[r] -= 1;
                }
            }
        }
    }

    let mut s = Roles {
        adj: &adj,
        options: &options,
        sizes: roles.iter().map(|(_, cs)| cs.len()).collect(),
        order: &order,
        used: vec![0; roles.len()],
        assigned: vec![None; n],
        best: None,
    };
    s.search(0);
    let (_, slots) = s.best.ok_or(ColoringError::Infeasible)?;
    let coloring = Coloring(
        slots
            .into_iter()
            .map(|slot| {
                let (r, i) = slot.expect("complete assignment");
                roles[r].1[i]
            })
            .collect(),
    );
    assert!(is_proper(g, &coloring)? && lists.respects(&coloring));
    Ok(coloring)
}

/// Same quantity as [`min_distinct_colors`], by direct branch and bound over
/// actual colours with no symmetry reduction. Exponential in the list length;
/// meant as an independent cross-check on short lists.
pub fn min_distinct_colors_exhaustive(g: &Graph, lists: &ListAssignment) -> Result<usize, ColoringError> {
    let n = check_small(g, lists)?;
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let l: Vec<Vec<Color>> = (0..n).map(|v| lists.list(v).to_vec()).collect();
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut count: BTreeMap<Color, usize> = BTreeMap::new();
    let mut best = usize::MAX;

    fn go(
        v: usize,
        adj: &[Vec<usize>],
        l: &[Vec<Color>],
        color: &mut [Option<Color>],
        count: &mut BTreeMap<Color, usize>,
        best: &mut usize,
    ) {
        if count.len() >= *best {
            return;
        }
        if v == l.len() {
            *best = count.len();
            return;
        }
        for &c in &l[v] {
            if adj[v].iter().any(|&w| color[w] == Some(c)) {
                continue;
            }
            color[v] = Some(c);
            *count.entry(c).or_insert(0) += 1;
            go(v + 1, adj, l, color, count, best);
            let e = count.get_mut(&c).expect("just inserted");
            *e -= 1;
            if *e == 0 {
                count.remove(&c);
            }
            color[v] = None;
        }
    }

    go(0, &adj, &l, &mut color, &mut count, &mut best);
    if best == usize::MAX {
        Err(ColoringError::Infeasible)
    } else {
        Ok(best)
    }
}

fn check_small(g: &Graph, lists: &ListAssignment) -> Result<usize, ColoringError> {
    let n = g.vertex_count();
    if lists.vertex_count() != n {
        return Err(ColoringError::SizeMismatch {
            expected: n,
            got: lists.vertex_count(),
        });
    }
    if n > MIN_DISTINCT_MAX_VERTICES {
        return Err(ColoringError::TooLarge {
            n,
            max: MIN_DISTINCT_MAX_VERTICES,
        });
    }
    Ok(n)
}
