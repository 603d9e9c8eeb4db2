//! Re-verification of serialized certificates.
//!
//! A re-check reads only the certificate: its parameters and witness. Graphs
//! are never rebuilt; adjacency in `G_{3n}` and its products is decided by
//! group arithmetic and a breadth-first search over `Γ_m` run here, so a bug
//! in the graph code cannot confirm its own output.

use serde_json::Value;

use super::CertifyError;
use crate::cayley::{enumerate_gamma, generators, GroupVector};
use crate::certificate::{Certificate, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecheckOutcome {
    Confirmed,
    Refuted(String),
    /// The claim carries nothing a re-check could confirm.
    Unsupported(String),
}

impl RecheckOutcome {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, RecheckOutcome::Confirmed)
    }
}

pub fn recheck(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    if !matches!(cert.status, Status::Verified | Status::InfeasibleCertified) {
        return Ok(RecheckOutcome::Unsupported(format!(
            "status {} makes no positive claim",
            cert.status
        )));
    }
    match cert.claim.as_str() {
        "distance_lemma" => distance_lemma(cert),
        "power_multipartite" => power_multipartite(cert),
        "structure_theorem" => structure_theorem(cert),
        "chromatic_number" => chromatic_number(cert),
        "power_composition" => power_composition(cert),
        "counting_argument" => counting_argument(cert),
        other => Ok(RecheckOutcome::Unsupported(format!("no re-check for claim {other:?}"))),
    }
}

fn refuted(msg: impl Into<String>) -> Result<RecheckOutcome, CertifyError> {
    Ok(RecheckOutcome::Refuted(msg.into()))
}

fn param(cert: &Certificate, key: &str) -> Result<usize, CertifyError> {
    cert.parameters
        .get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| CertifyError::Malformed(format!("parameter {key:?} missing or not an integer")))
}

fn witness_array(cert: &Certificate, key: &str) -> Result<Vec<usize>, CertifyError> {
    cert.witness
        .as_ref()
        .and_then(|w| w.get(key))
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(|x| x.as_u64().map(|v| v as usize)).collect())
        .ok_or_else(|| CertifyError::Malformed(format!("witness {key:?} missing or not an integer array")))
}

/// `Γ_m` with coordinates and distances from `0`, computed by group BFS.
struct Group {
    m: usize,
    coords: Vec<Vec<u8>>,
    dist: Vec<u32>,
}

impl Group {
    fn new(m: usize) -> Result<Self, CertifyError> {
        let coords: Vec<Vec<u8>> = enumerate_gamma(m)?.iter().map(|v| v.coords().to_vec()).collect();
        let gens: Vec<Vec<u8>> = generators(m)?.iter().map(|v| v.coords().to_vec()).collect();
        let mut group = Group {
            m,
            dist: vec![u32::MAX; coords.len()],
            coords,
        };
        let zero = group.rank(&vec![0; m]);
        group.dist[zero] = 0;
        let mut queue = std::collections::VecDeque::from([zero]);
        while let Some(u) = queue.pop_front() {
            for x in &gens {
                let y: Vec<u8> = group.coords[u].iter().zip(x).map(|(a, b)| (a + b) % 3).collect();
                let v = group.rank(&y);
                if group.dist[v] == u32::MAX {
                    group.dist[v] = group.dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        Ok(group)
    }

    fn len(&self) -> usize {
        self.coords.len()
    }

    /// Base-3 value of the first `m - 1` coordinates.
    fn rank(&self, c: &[u8]) -> usize {
        c[..self.m - 1].iter().fold(0, |acc, &a| acc * 3 + a as usize)
    }

    /// Rank of `coords[v] - coords[u]`.
    fn diff(&self, u: usize, v: usize) -> usize {
        self.coords[u][..self.m - 1]
            .iter()
            .zip(&self.coords[v])
            .fold(0, |acc, (&a, &b)| acc * 3 + ((b + 3 - a) % 3) as usize)
    }

    /// Adjacency in `H_{3n}^{e}`: `d_G(y, y') + [c != c'] <= e`.
    fn h_power_adjacent(&self, u: usize, v: usize, e: u32) -> bool {
        u != v && self.dist[self.diff(u / 3, v / 3)] + u32::from(u % 3 != v % 3) <= e
    }
}

fn distance_lemma(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let m = param(cert, "m")?;
    let labels = witness_array(cert, "distances_from_zero")?;
    let vertices = enumerate_gamma(m)?;
    if labels.len() != vertices.len() {
        return refuted(format!("{} labels for {} vertices", labels.len(), vertices.len()));
    }
    let gens = generators(m)?;
    let rank = |v: &GroupVector| v.coords()[..m - 1].iter().fold(0, |acc, &a| acc * 3 + a as usize);
    // a labelling is the distance from 0 iff it is 0 exactly at 0, changes by
    // at most one along edges, and every other vertex has a smaller neighbour
    for (i, y) in vertices.iter().enumerate() {
        if (labels[i] == 0) != y.is_zero() {
            return refuted(format!("label {} at {y}", labels[i]));
        }
        let mut has_parent = y.is_zero();
        for x in &gens {
            let j = rank(&y.add(x)?);
            if labels[i].abs_diff(labels[j]) > 1 {
                return refuted(format!("labels jump by more than one along an edge at {y}"));
            }
            has_parent |= labels[j] + 1 == labels[i];
        }
        if !has_parent {
            return refuted(format!("{y} has no neighbour one step closer to 0"));
        }
        let (lhs, rhs) = (3 * labels[i], 2 * y.nnz());
        if lhs > rhs || (lhs == rhs) != y.nonzero_coords_identical() {
            return refuted(format!("inequality or equality case fails at {y}"));
        }
    }
    Ok(RecheckOutcome::Confirmed)
}

fn power_multipartite(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let m = param(cert, "m")?;
    let e = param(cert, "exponent")? as u32;
    if m % 3 != 0 {
        return refuted("dimension is not a multiple of 3");
    }
    let group = Group::new(m)?;
    let a = group.rank(&vec![1; m]);
    let b = group.rank(&vec![2; m]);
    // by translation invariance only differences matter
    for delta in 1..group.len() {
        let adjacent = group.dist[delta] <= e;
        let same_class = delta == a || delta == b;
        if adjacent == same_class {
            return refuted(format!("difference {:?} breaks the pattern", group.coords[delta]));
        }
    }
    Ok(RecheckOutcome::Confirmed)
}

fn k3_box_k3_adjacent(x: usize, y: usize) -> bool {
    let (a, b) = (x / 3 == y / 3, x % 3 == y % 3);
    a != b
}

fn structure_theorem(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let n = param(cert, "n")?;
    let e = param(cert, "exponent")? as u32;
    let bijection = witness_array(cert, "bijection")?;
    let group = Group::new(3 * n)?;
    let total = 3 * group.len();
    if bijection.len() != total {
        return refuted("bijection has the wrong length");
    }
    let mut seen = vec![false; total];
    for &b in &bijection {
        if b >= total || std::mem::replace(&mut seen[b], true) {
            return refuted("witness is not a permutation");
        }
    }
    for u in 0..total {
        for v in u + 1..total {
            let (bu, bv) = (bijection[u], bijection[v]);
            let lex = bu / 9 != bv / 9 || k3_box_k3_adjacent(bu % 9, bv % 9);
            if group.h_power_adjacent(u, v, e) != lex {
                return refuted(format!("pair ({u}, {v}) disagrees"));
            }
        }
    }
    Ok(RecheckOutcome::Confirmed)
}

fn chromatic_number(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let n = param(cert, "n")?;
    let e = param(cert, "exponent")? as u32;
    let clique = witness_array(cert, "clique")?;
    let coloring = witness_array(cert, "coloring")?;
    let chi = cert
        .stats
        .get("chi")
        .and_then(Value::as_u64)
        .ok_or_else(|| CertifyError::Malformed("stat \"chi\" missing".into()))? as usize;
    let group = Group::new(3 * n)?;
    let total = 3 * group.len();
    if coloring.len() != total || clique.iter().any(|&v| v >= total) {
        return refuted("witness does not match the vertex count");
    }
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !group.h_power_adjacent(u, v, e) {
                return refuted(format!("clique vertices {u} and {v} are not adjacent"));
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (v, &c) in coloring.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    for class in classes.values() {
        for (i, &u) in class.iter().enumerate() {
            for &v in &class[i + 1..] {
                if group.h_power_adjacent(u, v, e) {
                    return refuted(format!("vertices {u} and {v} share a colour"));
                }
            }
        }
    }
    if clique.len() != chi || classes.len() != chi {
        return refuted(format!(
            "clique of size {} and {} colours do not both equal {chi}",
            clique.len(),
            classes.len()
        ));
    }
    Ok(RecheckOutcome::Confirmed)
}

fn power_composition(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let a = param(cert, "inner_exponent")?;
    let b = param(cert, "outer_exponent")?;
    // d_{g^a}(u, v) = ceil(d_g(u, v) / a), so (g^a)^b = g^{ab} amounts to
    // ceil(d / a) <= b <=> d <= ab for every distance d that occurs
    let max_distance = match cert.parameters.get("n").and_then(Value::as_u64) {
        Some(n) => {
            let group = Group::new(3 * n as usize)?;
            *group.dist.iter().max().expect("Γ_m is nonempty") as usize + 1
        }
        None => cert
            .stats
            .get("vertices")
            .and_then(Value::as_u64)
            .ok_or_else(|| CertifyError::Malformed("stat \"vertices\" missing".into()))? as usize,
    };
    if a == 0 || b == 0 {
        return refuted("exponents must be positive");
    }
    match (1..=max_distance).find(|&d| (d.div_ceil(a) <= b) != (d <= a * b)) {
        Some(d) => refuted(format!("distance {d} separates the two powers")),
        None => Ok(RecheckOutcome::Confirmed),
    }
}

fn counting_argument(cert: &Certificate) -> Result<RecheckOutcome, CertifyError> {
    let r = param(cert, "r")?;
    let t = param(cert, "t")?;
    if t < 2 || t % 2 != 0 || r == 0 {
        return refuted("parameters outside the construction");
    }
    let half = t / 2;
    let list = |stratum: usize| -> Vec<usize> { (0..3 * half).filter(|c| c / half != stratum).collect() };
    let stratum = |x: usize| x / 3;

    // every independent triple of K3 box K3 meets all three strata
    for x in 0..9 {
        for y in x + 1..9 {
            for z in y + 1..9 {
                let independent = !k3_box_k3_adjacent(x, y) && !k3_box_k3_adjacent(x, z) && !k3_box_k3_adjacent(y, z);
                let mut hit = [false; 3];
                for v in [x, y, z] {
                    hit[stratum(v)] = true;
                }
                if independent && !hit.iter().all(|&h| h) {
                    return refuted(format!("independent triple {x},{y},{z} misses a stratum"));
                }
            }
        }
    }
    let (l0, l1, l2) = (list(0), list(1), list(2));
    if l0.iter().any(|c| l1.contains(c) && l2.contains(c)) {
        return refuted("the three lists share a colour");
    }
    // so a colour covers at most 2 of the 9 block vertices; blocks of
    // K_r[K3 box K3] are joined pairwise and need disjoint colour sets
    let needed = 9usize.div_ceil(2) * r;
    let available = 3 * half;
    if needed <= available {
        return refuted(format!("pigeonhole premise fails: {needed} <= {available}"));
    }
    if let Some(block) = cert.witness.as_ref().and_then(|w| w.get("block_coloring")) {
        let colors: Vec<usize> = block
            .as_array()
            .and_then(|a| a.iter().map(|x| x.as_u64().map(|v| v as usize)).collect())
            .ok_or_else(|| CertifyError::Malformed("block_coloring is not an integer array".into()))?;
        if colors.len() != 9 {
            return refuted("block colouring has the wrong length");
        }
        for x in 0..9 {
            if !list(stratum(x)).contains(&colors[x]) {
                return refuted(format!("block vertex {x} coloured outside its list"));
            }
            for y in x + 1..9 {
                if k3_box_k3_adjacent(x, y) && colors[x] == colors[y] {
                    return refuted(format!("block vertices {x} and {y} share a colour"));
                }
            }
        }
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 5 {
            return refuted("block colouring uses fewer than five colours");
        }
    }
    Ok(RecheckOutcome::Confirmed)
}
