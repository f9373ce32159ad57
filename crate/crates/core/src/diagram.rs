//! The glued 1-manifold aw(b), arrow moves, distances, minimal sequences and meets.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Arc, Error, Result};
use crate::matching::{enumerate, Matching};

/// Direction of a line end: `Up` is a ray of the upper matching a, `Down` a ray of b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Circle,
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Vertices in traversal order.
    pub path: Vec<usize>,
    /// Line end directions, in traversal order.
    pub ends: Option<(End, End)>,
}

impl Component {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = self.path.clone();
        v.sort_unstable();
        v
    }

    pub fn is_circle(&self) -> bool {
        self.kind == ComponentKind::Circle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedOneManifold {
    pub n: usize,
    pub components: Vec<Component>,
}

impl GluedOneManifold {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn circles(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.is_circle())
    }

    pub fn lines(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.is_circle())
    }

    /// Every line has one up end and one down end.
    pub fn is_compatible(&self) -> bool {
        self.lines().all(|c| matches!(c.ends, Some((x, y)) if x != y))
    }

    /// Component index of each vertex (index 0 unused).
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.n + 1];
        for (c, comp) in self.components.iter().enumerate() {
            for &v in &comp.path {
                out[v] = c;
            }
        }
        out
    }

    /// The vertex-set family C_{a,b}, each set sorted.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(Component::vertices).collect()
    }
}

fn check_type(a: &Matching, b: &Matching) -> Result<()> {
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::TypeMismatch(a.n(), a.k(), b.n(), b.k()));
    }
    Ok(())
}

/// Glues a (above) to the reflection of b (below).
pub fn glue(a: &Matching, b: &Matching) -> Result<GluedOneManifold> {
    check_type(a, b)?;
    let n = a.n();
    let (ma, mb) = (a.mates(), b.mates());
    let mut seen = vec![false; n + 1];
    let mut components = Vec::new();
    // Walk starting at `start`, leaving through side `upper` first.
    let walk = |start: usize, mut upper: bool, seen: &mut Vec<bool>| -> (Vec<usize>, Option<End>) {
        let mut path = vec![start];
        seen[start] = true;
        let mut v = start;
        loop {
            let mate = if upper { ma[v] } else { mb[v] };
            if mate == 0 {
                return (path, Some(if upper { End::Up } else { End::Down }));
            }
            if mate == start {
                return (path, None);
            }
            v = mate;
            seen[v] = true;
            path.push(v);
            upper = !upper;
        }
    };
    for v in 1..=n {
        if seen[v] {
            continue;
        }
        if ma[v] == 0 {
            let (path, end) = walk(v, false, &mut seen);
            components.push(Component { kind: ComponentKind::Line, path, ends: Some((End::Up, end.unwrap())) });
        } else if mb[v] == 0 {
            let (path, end) = walk(v, true, &mut seen);
            components.push(Component { kind: ComponentKind::Line, path, ends: Some((End::Down, end.unwrap())) });
        }
    }
    for v in 1..=n {
        if !seen[v] {
            let (path, end) = walk(v, true, &mut seen);
            debug_assert!(end.is_none());
            components.push(Component { kind: ComponentKind::Circle, path, ends: None });
        }
    }
    Ok(GluedOneManifold { n, components })
}

/// Membership b ∈ B_a.
pub fn compatible(a: &Matching, b: &Matching) -> Result<bool> {
    Ok(glue(a, b)?.is_compatible())
}

/// A single arrow move a → b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowMove {
    /// (i,j),(k,l) in a become (i,l),(j,k) in b.
    Quadruple { i: usize, j: usize, k: usize, l: usize },
    /// Ray i and arc (j,k) in a become arc (i,j) and ray k in b.
    Triple { i: usize, j: usize, k: usize },
}

/// All b with a → b, sorted.
pub fn arrow_successors(a: &Matching) -> Vec<Matching> {
    let mut out = Vec::new();
    let arcs = a.arcs();
    for &(i, j) in arcs {
        for &(k, l) in arcs {
            if j < k {
                let mut next: Vec<_> = arcs.iter().copied().filter(|&x| x != (i, j) && x != (k, l)).collect();
                next.extend([(i, l), (j, k)]);
                if let Ok(b) = Matching::new(a.n(), &next, a.rays()) {
                    out.push(b);
                }
            }
        }
        for &r in a.rays() {
            if r < i {
                let mut next: Vec<_> = arcs.iter().copied().filter(|&x| x != (i, j)).collect();
                next.push((r, i));
                let rays: Vec<usize> = a.rays().iter().map(|&x| if x == r { j } else { x }).collect();
                if let Ok(b) = Matching::new(a.n(), &next, &rays) {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Identifies the move if a → b.
pub fn arrow_move(a: &Matching, b: &Matching) -> Option<ArrowMove> {
    if a.n() != b.n() || a.k() != b.k() {
        return None;
    }
    let only_a: Vec<_> = a.arcs().iter().copied().filter(|&x| !b.has_arc(x)).collect();
    let only_b: Vec<_> = b.arcs().iter().copied().filter(|&x| !a.has_arc(x)).collect();
    let mv = match (only_a.as_slice(), only_b.as_slice()) {
        (&[(i, j), (k, l)], _) if j < k => ArrowMove::Quadruple { i, j, k, l },
        (&[(j, k)], &[(i, j2)]) if j2 == j && i < j && a.is_ray(i) && b.is_ray(k) => ArrowMove::Triple { i, j, k },
        _ => return None,
    };
    arrow_successors(a).contains(b).then_some(mv)
}

/// Direction of one step in a move sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// a_t → a_{t+1}
    Forward,
    /// a_t ← a_{t+1}
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSequence {
    pub matchings: Vec<Matching>,
    pub steps: Vec<Step>,
    /// True when every step was checked to split a component of a_t w(b).
    pub certified: bool,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Tie-breaking rule for the Kahn traversal that extends the arrow order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    LexMin,
    LexMax,
    Seeded(u64),
}

/// The arrow graph on B^{n-k,k} with all-pairs distances and reachability.
#[derive(Clone, Debug)]
pub struct ArrowGraph {
    pub n: usize,
    pub k: usize,
    pub nodes: Vec<Matching>,
    index: HashMap<Matching, usize>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
    reach: Vec<Vec<bool>>,
}

pub const UNREACHABLE: u32 = u32::MAX;

impl ArrowGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let nodes = enumerate(n, k)?;
        let index: HashMap<Matching, usize> = nodes.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let succ: Vec<Vec<usize>> = nodes
            .iter()
            .map(|a| arrow_successors(a).iter().map(|b| index[b]).collect())
            .collect();
        let mut pred = vec![Vec::new(); nodes.len()];
        for (a, s) in succ.iter().enumerate() {
            for &b in s {
                pred[b].push(a);
            }
        }
        let size = nodes.len();
        let mut dist = vec![vec![UNREACHABLE; size]; size];
        let mut reach = vec![vec![false; size]; size];
        for s in 0..size {
            let mut queue = VecDeque::from([s]);
            dist[s][s] = 0;
            while let Some(x) = queue.pop_front() {
                for &y in succ[x].iter().chain(&pred[x]) {
                    if dist[s][y] == UNREACHABLE {
                        dist[s][y] = dist[s][x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            let mut stack = vec![s];
            reach[s][s] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !reach[s][y] {
                        reach[s][y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        Ok(ArrowGraph { n, k, nodes, index, succ, pred, dist, reach })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index(&self, a: &Matching) -> Result<usize> {
        self.index
            .get(a)
            .copied()
            .ok_or(Error::TypeMismatch(a.n(), a.k(), self.n, self.k))
    }

    /// BFS distance in the undirected arrow graph, `UNREACHABLE` if disconnected.
    pub fn dist(&self, a: usize, b: usize) -> u32 {
        self.dist[a][b]
    }

    /// a ⪯ b: b is reachable from a by a chain of arrows.
    pub fn below(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    /// Distance checked against n - k - |aw(b)| for compatible pairs.
    pub fn distance(&self, a: &Matching, b: &Matching) -> Result<Option<u32>> {
        let (x, y) = (self.index(a)?, self.index(b)?);
        let d = self.dist(x, y);
        let glued = glue(a, b)?;
        if glued.is_compatible() {
            let formula = (self.n - self.k - glued.len()) as u32;
            if formula != d {
                return Err(Error::Domain(format!(
                    "internal: BFS distance {d} differs from n-k-|aw(b)| = {formula} for {a} and {b}"
                )));
            }
        }
        Ok((d != UNREACHABLE).then_some(d))
    }

    /// A linear extension of the arrow order: a → b puts a before b.
    pub fn linear_order(&self, tie: TieBreak) -> Result<Vec<usize>> {
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.len()).filter(|&x| indeg[x] == 0).collect();
        let mut rng = match tie {
            TieBreak::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
            _ => None,
        };
        let mut out = Vec::with_capacity(self.len());
        while !ready.is_empty() {
            ready.sort_unstable();
            let pos = match tie {
                TieBreak::LexMin => 0,
                TieBreak::LexMax => ready.len() - 1,
                TieBreak::Seeded(_) => rng.as_mut().unwrap().gen_range(0..ready.len()),
            };
            let x = ready.remove(pos);
            out.push(x);
            for &y in &self.succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                }
            }
        }
        if out.len() != self.len() {
            return Err(Error::CycleDetected);
        }
        Ok(out)
    }

    fn step_between(&self, x: usize, y: usize) -> Option<Step> {
        if self.succ[x].contains(&y) {
            Some(Step::Forward)
        } else if self.succ[y].contains(&x) {
            Some(Step::Backward)
        } else {
            None
        }
    }

    fn certify(&self, path: &[usize], b: &Matching) -> Option<Vec<Step>> {
        let mut steps = Vec::new();
        for w in path.windows(2) {
            steps.push(self.step_between(w[0], w[1])?);
            let before = glue(&self.nodes[w[0]], b).ok()?.len();
            let after = glue(&self.nodes[w[1]], b).ok()?.len();
            if after != before + 1 {
                return None;
            }
        }
        Some(steps)
    }

    /// Narrowest-then-leftmost pairing on completions, restricted back.
    fn completion_route(&self, a: &Matching, b: &Matching) -> Option<Vec<usize>> {
        let (ca, cb) = (a.complete(), b.complete());
        let mut cur = ca;
        let mut path = vec![self.index(a).ok()?];
        loop {
            let target = cb
                .arcs()
                .iter()
                .copied()
                .filter(|&x| !cur.has_arc(x))
                .min_by_key(|&(i, j)| (j - i, i));
            let Some((i, j)) = target else { break };
            let mates = cur.mates();
            let (x, y) = (mates[i], mates[j]);
            let mut arcs: Vec<_> = cur
                .arcs()
                .iter()
                .copied()
                .filter(|&(p, q)| p != i && q != i && p != j && q != j)
                .collect();
            arcs.extend([(i, j), (x.min(y), x.max(y))]);
            cur = Matching::new(cur.n(), &arcs, &[]).ok()?;
            path.push(self.index(&cur.restrict(self.k).ok()?).ok()?);
        }
        Some(path)
    }

    fn greedy_route(&self, a: usize, b: &Matching) -> Option<Vec<usize>> {
        let mut path = vec![a];
        let goal = self.index(b).ok()?;
        while *path.last().unwrap() != goal {
            let x = *path.last().unwrap();
            let here = glue(&self.nodes[x], b).ok()?.len();
            let next = self.succ[x]
                .iter()
                .chain(&self.pred[x])
                .copied()
                .find(|&y| glue(&self.nodes[y], b).map(|g| g.len() == here + 1).unwrap_or(false))?;
            path.push(next);
        }
        Some(path)
    }

    fn bfs_route(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if self.dist(a, b) == UNREACHABLE {
            return None;
        }
        let mut path = vec![a];
        while *path.last().unwrap() != b {
            let x = *path.last().unwrap();
            let next = self.succ[x]
                .iter()
                .chain(&self.pred[x])
                .copied()
                .find(|&y| self.dist(y, b) + 1 == self.dist(x, b))?;
            path.push(next);
        }
        Some(path)
    }

    /// A minimal move sequence from a to b.
    ///
    /// Compatible pairs use the completion route (then a greedy component-splitting route);
    /// every step is certified to split a component. Otherwise a BFS path is returned
    /// with `certified = false`.
    pub fn minimal_sequence(&self, a: &Matching, b: &Matching) -> Result<MoveSequence> {
        let (x, y) = (self.index(a)?, self.index(b)?);
        let build = |path: Vec<usize>, steps: Vec<Step>, certified| MoveSequence {
            matchings: path.iter().map(|&p| self.nodes[p].clone()).collect(),
            steps,
            certified,
        };
        if compatible(a, b)? {
            let d = self.dist(x, y) as usize;
            for route in [self.completion_route(a, b), self.greedy_route(x, b)].into_iter().flatten() {
                if route.len() == d + 1 && route.last() == Some(&y) {
                    if let Some(steps) = self.certify(&route, b) {
                        return Ok(build(route, steps, true));
                    }
                }
            }
        }
        let path = self.bfs_route(x, y).ok_or(Error::Incompatible)?;
        let steps = path.windows(2).map(|w| self.step_between(w[0], w[1]).unwrap()).collect();
        Ok(build(path, steps, false))
    }

    fn is_meet(&self, c: usize, a: usize, b: usize) -> bool {
        self.below(c, a) && self.below(c, b) && self.dist(a, c) + self.dist(c, b) == self.dist(a, b)
    }

    /// c with c ⪯ a, c ⪯ b and d(a,b) = d(a,c) + d(c,b).
    pub fn meet(&self, a: &Matching, b: &Matching) -> Result<Matching> {
        let (x, y) = (self.index(a)?, self.index(b)?);
        if self.dist(x, y) == UNREACHABLE {
            return Err(Error::NotFound);
        }
        let c = self.meet_constructive(x, y).or_else(|| (0..self.len()).find(|&c| self.is_meet(c, x, y)));
        c.map(|c| self.nodes[c].clone()).ok_or(Error::NotFound)
    }

    /// Strip leading backward steps while some predecessor stays on a geodesic,
    /// then the remaining geodesic is all forward.
    fn meet_constructive(&self, a: usize, b: usize) -> Option<usize> {
        let d = self.dist(a, b);
        if d == 0 {
            return Some(a);
        }
        if let Some(&a1) = self.pred[a].iter().find(|&&p| self.dist(p, b) + 1 == d) {
            let c = self.meet_constructive(a1, b)?;
            return self.is_meet(c, a, b).then_some(c);
        }
        self.below(a, b).then_some(a)
    }

    /// The exhaustive search alone, for cross-validation.
    pub fn meet_exhaustive(&self, a: &Matching, b: &Matching) -> Result<Vec<Matching>> {
        let (x, y) = (self.index(a)?, self.index(b)?);
        Ok((0..self.len()).filter(|&c| self.is_meet(c, x, y)).map(|c| self.nodes[c].clone()).collect())
    }
}

/// Convenience wrapper building the arrow graph for the pair's type.
pub fn distance(a: &Matching, b: &Matching) -> Result<Option<u32>> {
    check_type(a, b)?;
    ArrowGraph::new(a.n(), a.k())?.distance(a, b)
}

/// For nested arcs (i,l) ⊃ (j,k) of a on one circle of aw(b), with no arc of that circle
/// nested between them, the number of arcs of a nested between them. Returns offending pairs
/// whose count is odd.
pub fn winding_violations(a: &Matching, b: &Matching) -> Result<Vec<(Arc, Arc)>> {
    let g = glue(a, b)?;
    let comp = g.component_of();
    let mut bad = Vec::new();
    for &(i, l) in a.arcs() {
        for &(j, k) in a.arcs() {
            if !(i < j && k < l) || comp[i] != comp[j] || !g.components[comp[i]].is_circle() {
                continue;
            }
            let between: Vec<_> = a
                .arcs()
                .iter()
                .filter(|&&(p, q)| i < p && p < j && k < q && q < l)
                .collect();
            if between.iter().any(|&&(p, _)| comp[p] == comp[i]) {
                continue;
            }
            if between.len() % 2 == 1 {
                bad.push(((i, l), (j, k)));
            }
        }
    }
    Ok(bad)
}

/// Shuffles a slice with a seeded generator; shared by randomized checks.
pub fn seeded_shuffle<T>(items: &mut [T], seed: u64) {
    items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn glue_examples() {
        let a = mm("5: r1 u2-3 u4-5");
        let b = mm("5: u1-2 u3-4 r5");
        let g = glue(&a, &b).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.components[0].vertices(), vec![1, 2, 3, 4, 5]);
        assert!(g.is_compatible());
        let a = mm("4: u1-2 u3-4");
        let b = mm("4: u1-4 u2-3");
        let g = glue(&a, &b).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.components[0].is_circle());
        let x = mm("6: r1 u2-3 u4-5 r6");
        let g = glue(&x, &x).unwrap();
        assert_eq!((g.circles().count(), g.lines().count()), (2, 2));
        assert!(g.is_compatible());
        assert!(!compatible(&mm("4: u1-2 r3 r4"), &mm("4: r1 r2 u3-4")).unwrap());
        assert!(glue(&a, &mm("4: u1-2 r3 r4")).is_err());
    }

    #[test]
    fn arrow_examples() {
        assert_eq!(arrow_successors(&mm("4: r1 r2 u3-4")), vec![mm("4: r1 u2-3 r4")]);
        assert_eq!(arrow_successors(&mm("4: u1-2 u3-4")), vec![mm("4: u1-4 u2-3")]);
        assert!(arrow_successors(&mm("4: u1-2 r3 r4")).is_empty());
        assert_eq!(
            arrow_move(&mm("4: r1 r2 u3-4"), &mm("4: r1 u2-3 r4")),
            Some(ArrowMove::Triple { i: 2, j: 3, k: 4 })
        );
        assert_eq!(
            arrow_move(&mm("4: u1-2 u3-4"), &mm("4: u1-4 u2-3")),
            Some(ArrowMove::Quadruple { i: 1, j: 2, k: 3, l: 4 })
        );
        assert_eq!(arrow_move(&mm("4: u1-4 u2-3"), &mm("4: u1-2 u3-4")), None);
    }

    #[test]
    fn linear_orders() {
        let g = ArrowGraph::new(4, 1).unwrap();
        let order: Vec<String> = g.linear_order(TieBreak::LexMin).unwrap().iter().map(|&i| g.nodes[i].to_string()).collect();
        assert_eq!(order, vec!["4: r1 r2 u3-4", "4: r1 u2-3 r4", "4: u1-2 r3 r4"]);
        assert_eq!(ArrowGraph::new(4, 0).unwrap().linear_order(TieBreak::LexMax).unwrap(), vec![0]);
        let g = ArrowGraph::new(4, 2).unwrap();
        assert_eq!(g.nodes[g.linear_order(TieBreak::Seeded(3)).unwrap()[0]], mm("4: u1-2 u3-4"));
        for n in 1..=8 {
            for k in 0..=n / 2 {
                let g = ArrowGraph::new(n, k).unwrap();
                for tie in [TieBreak::LexMin, TieBreak::LexMax, TieBreak::Seeded(7)] {
                    let order = g.linear_order(tie).unwrap();
                    let mut pos = vec![0; g.len()];
                    for (p, &x) in order.iter().enumerate() {
                        pos[x] = p;
                    }
                    assert!(g.edges().all(|(a, b)| pos[a] < pos[b]));
                }
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&mm("4: u1-2 u3-4"), &mm("4: u1-4 u2-3")).unwrap(), Some(1));
        assert_eq!(distance(&mm("4: u1-2 u3-4"), &mm("4: u1-2 u3-4")).unwrap(), Some(0));
        assert_eq!(distance(&mm("4: u1-2 r3 r4"), &mm("4: r1 r2 u3-4")).unwrap(), Some(2));
    }

    #[test]
    fn sequence_examples() {
        let g = ArrowGraph::new(4, 2).unwrap();
        let s = g.minimal_sequence(&mm("4: u1-2 u3-4"), &mm("4: u1-4 u2-3")).unwrap();
        assert_eq!(s.steps, vec![Step::Forward]);
        assert!(s.certified);
        let a = mm("4: u1-2 u3-4");
        assert!(g.minimal_sequence(&a, &a).unwrap().is_empty());
        let g = ArrowGraph::new(5, 2).unwrap();
        let s = g.minimal_sequence(&mm("5: r1 u2-3 u4-5"), &mm("5: u1-2 u3-4 r5")).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.certified);
        let g = ArrowGraph::new(4, 1).unwrap();
        let s = g.minimal_sequence(&mm("4: u1-2 r3 r4"), &mm("4: r1 r2 u3-4")).unwrap();
        assert_eq!(s.len(), 2);
        assert!(!s.certified);
    }

    #[test]
    fn meet_examples() {
        let g = ArrowGraph::new(4, 1).unwrap();
        assert_eq!(g.meet(&mm("4: u1-2 r3 r4"), &mm("4: r1 r2 u3-4")).unwrap(), mm("4: r1 r2 u3-4"));
        assert_eq!(g.meet(&mm("4: u1-2 r3 r4"), &mm("4: r1 u2-3 r4")).unwrap(), mm("4: r1 u2-3 r4"));
        let g = ArrowGraph::new(4, 2).unwrap();
        assert_eq!(g.meet(&mm("4: u1-2 u3-4"), &mm("4: u1-4 u2-3")).unwrap(), mm("4: u1-2 u3-4"));
    }

    #[test]
    fn lines_and_rays() {
        for n in 1..=8 {
            for k in 0..=n / 2 {
                let all = enumerate(n, k).unwrap();
                for a in &all {
                    for b in &all {
                        let g = glue(a, b).unwrap();
                        assert_eq!(g.lines().count(), n - 2 * k);
                        assert!(g.circles().all(|c| c.path.len() % 2 == 0));
                        assert!(g.len() <= n - k);
                        if g.is_compatible() {
                            let comp = g.component_of();
                            for (&ra, &rb) in a.rays().iter().zip(b.rays()) {
                                assert_eq!(comp[ra], comp[rb]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn winding_invariant() {
        for n in (2..=8).step_by(2) {
            let all = enumerate(n, n / 2).unwrap();
            for a in &all {
                for b in &all {
                    assert!(winding_violations(a, b).unwrap().is_empty(), "{a} {b}");
                }
            }
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn distance_counts_components(n in 0usize..=8, k_seed in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
            let k = k_seed % (n / 2 + 1);
            let g = ArrowGraph::new(n, k).unwrap();
            let (a, b) = (&g.nodes[i % g.len()], &g.nodes[j % g.len()]);
            let d = g.distance(a, b).unwrap();
            prop_assert_eq!(d, g.distance(b, a).unwrap());
            if compatible(a, b).unwrap() {
                let components = glue(a, b).unwrap().len();
                prop_assert_eq!(d, Some((n - k - components) as u32));
            }
        }
    }
}
