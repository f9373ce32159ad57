//! Noncrossing matchings with rays, dotted matchings and their text codec.

use std::fmt;
use std::str::FromStr;

use crate::error::{Arc, Error, Result};

/// A noncrossing matching of type (n-k, k): k arcs and n-2k rays on vertices 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    arcs: Vec<Arc>,
    rays: Vec<usize>,
}

impl Matching {
    /// Checked constructor. Arcs may be given in any order.
    pub fn new(n: usize, arcs: &[Arc], rays: &[usize]) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut mark = |v: usize| -> Result<()> {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(Error::VertexReuse(v));
            }
            seen[v] = true;
            Ok(())
        };
        for &(i, j) in arcs {
            if i >= j {
                return Err(Error::ReversedArc(i, j));
            }
            mark(i)?;
            mark(j)?;
        }
        for &r in rays {
            mark(r)?;
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v]) {
            return Err(Error::BadCounts(format!("vertex {v} is not covered")));
        }
        let mut arcs = arcs.to_vec();
        arcs.sort_unstable();
        let mut rays = rays.to_vec();
        rays.sort_unstable();
        for (x, &a) in arcs.iter().enumerate() {
            for &b in &arcs[x + 1..] {
                if a.0 < b.0 && b.0 < a.1 && a.1 < b.1 {
                    return Err(Error::CrossingArcs(a, b));
                }
            }
            if let Some(&r) = rays.iter().find(|&&r| a.0 < r && r < a.1) {
                return Err(Error::RayUnderArc { ray: r, arc: a });
            }
        }
        Ok(Matching { n, arcs, rays })
    }

    /// Builds a matching whose uncovered vertices are rays.
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self> {
        let mut covered = vec![false; n + 1];
        for &(i, j) in arcs {
            for v in [i, j] {
                if v >= 1 && v <= n {
                    covered[v] = true;
                }
            }
        }
        let rays: Vec<usize> = (1..=n).filter(|&v| !covered[v]).collect();
        Matching::new(n, arcs, &rays)
    }

    pub(crate) fn from_parts_unchecked(n: usize, mut arcs: Vec<Arc>, mut rays: Vec<usize>) -> Self {
        arcs.sort_unstable();
        rays.sort_unstable();
        Matching { n, arcs, rays }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.arcs.len()
    }

    /// Number of rays, n - 2k.
    pub fn pad(&self) -> usize {
        self.rays.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn has_arc(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    pub fn is_ray(&self, v: usize) -> bool {
        self.rays.binary_search(&v).is_ok()
    }

    /// `mates()[v]` is the other endpoint of the arc at v, or 0 for a ray.
    pub fn mates(&self) -> Vec<usize> {
        let mut m = vec![0; self.n + 1];
        for &(i, j) in &self.arcs {
            m[i] = j;
            m[j] = i;
        }
        m
    }

    /// The arc through vertex v, if any.
    pub fn arc_at(&self, v: usize) -> Option<Arc> {
        self.arcs.iter().copied().find(|&(i, j)| i == v || j == v)
    }

    /// Index of the innermost arc strictly containing each arc.
    pub fn parents(&self) -> Vec<Option<usize>> {
        self.arcs
            .iter()
            .map(|&(i, j)| {
                self.arcs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(p, q))| p < i && j < q)
                    .max_by_key(|(_, &(p, _))| p)
                    .map(|(x, _)| x)
            })
            .collect()
    }

    /// Number of arcs strictly containing `arc`.
    pub fn depth(&self, arc: Arc) -> usize {
        self.arcs.iter().filter(|&&(p, q)| p < arc.0 && arc.1 < q).count()
    }

    /// Completion φ: rays become arcs reaching into n-2k new vertices on the left.
    pub fn complete(&self) -> Matching {
        let pad = self.pad();
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|&(i, j)| (i + pad, j + pad)).collect();
        for (t, &r) in self.rays.iter().enumerate() {
            arcs.push((pad - t, r + pad));
        }
        Matching::from_parts_unchecked(self.n + pad, arcs, Vec::new())
    }

    /// Restriction ψ onto type (n-k, k), the inverse of [`Matching::complete`].
    pub fn restrict(&self, k: usize) -> Result<Matching> {
        if !self.rays.is_empty() || !self.n.is_multiple_of(2) {
            return Err(Error::Domain("restriction needs a matching without rays".into()));
        }
        let half = self.n / 2;
        if k > half {
            return Err(Error::Domain(format!("k = {k} exceeds {half}")));
        }
        let pad = half - k;
        let mut arcs = Vec::new();
        let mut rays = Vec::new();
        for &(i, j) in &self.arcs {
            if j <= pad {
                return Err(Error::NotInRestrictableSet { arc: (i, j), pad });
            } else if i <= pad {
                rays.push(j - pad);
            } else {
                arcs.push((i - pad, j - pad));
            }
        }
        Ok(Matching::from_parts_unchecked(self.n - pad, arcs, rays))
    }
}

/// All matchings of type (n-k, k) in lexicographic order of their arc lists.
pub fn enumerate(n: usize, k: usize) -> Result<Vec<Matching>> {
    if 2 * k > n {
        return Err(Error::Domain(format!("k = {k} is out of range for n = {n}")));
    }
    fn go(v: usize, n: usize, k: usize, stack: &mut Vec<usize>, arcs: &mut Vec<Arc>, rays: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if v > n {
            if stack.is_empty() && arcs.len() == k {
                out.push(Matching::from_parts_unchecked(n, arcs.clone(), rays.clone()));
            }
            return;
        }
        let remaining = n - v + 1;
        if stack.len() > remaining {
            return;
        }
        if let Some(i) = stack.pop() {
            arcs.push((i, v));
            go(v + 1, n, k, stack, arcs, rays, out);
            arcs.pop();
            stack.push(i);
        }
        if arcs.len() + stack.len() < k {
            stack.push(v);
            go(v + 1, n, k, stack, arcs, rays, out);
            stack.pop();
        }
        if stack.is_empty() {
            rays.push(v);
            go(v + 1, n, k, stack, arcs, rays, out);
            rays.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// A matching with a subset of its arcs dotted. Rays count as dotted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedMatching {
    base: Matching,
    dotted: Vec<Arc>,
}

impl DottedMatching {
    pub fn new(base: Matching, dotted: &[Arc]) -> Result<Self> {
        let mut dotted = dotted.to_vec();
        dotted.sort_unstable();
        dotted.dedup();
        if let Some(&d) = dotted.iter().find(|&&d| !base.has_arc(d)) {
            return Err(Error::DotOnNonArc(d));
        }
        Ok(DottedMatching { base, dotted })
    }

    /// Validates raw vertex lists into a dotted matching.
    pub fn validate(n: usize, arcs: &[Arc], rays: &[usize], dotted: &[Arc]) -> Result<Self> {
        DottedMatching::new(Matching::new(n, arcs, rays)?, dotted)
    }

    pub fn undotted(base: Matching) -> Self {
        DottedMatching { base, dotted: Vec::new() }
    }

    pub fn all_dotted(base: Matching) -> Self {
        let dotted = base.arcs.clone();
        DottedMatching { base, dotted }
    }

    pub(crate) fn from_parts_unchecked(base: Matching, mut dotted: Vec<Arc>) -> Self {
        dotted.sort_unstable();
        DottedMatching { base, dotted }
    }

    pub fn base(&self) -> &Matching {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    pub fn dotted(&self) -> &[Arc] {
        &self.dotted
    }

    pub fn is_dotted(&self, arc: Arc) -> bool {
        self.dotted.binary_search(&arc).is_ok()
    }

    pub fn undotted_arcs(&self) -> Vec<Arc> {
        self.base.arcs.iter().copied().filter(|&a| !self.is_dotted(a)).collect()
    }

    /// Grading m: the number of undotted arcs. The homological degree is 2m.
    pub fn grading(&self) -> usize {
        self.base.k() - self.dotted.len()
    }

    /// No dotted arc is nested beneath an arc and no ray lies right of a dotted arc.
    pub fn is_standard(&self) -> bool {
        self.dotted.iter().all(|&d| {
            self.base.depth(d) == 0 && self.base.rays.iter().all(|&r| r < d.0)
        })
    }

    /// Completion with the new arcs (former rays) dotted.
    pub fn complete(&self) -> DottedMatching {
        let pad = self.base.pad();
        let base = self.base.complete();
        let dotted: Vec<Arc> = base
            .arcs
            .iter()
            .copied()
            .filter(|&(i, j)| i <= pad || self.is_dotted((i - pad, j - pad)))
            .collect();
        DottedMatching::from_parts_unchecked(base, dotted)
    }

    /// Same base with a different dot set.
    pub fn with_dotted(&self, dotted: &[Arc]) -> Result<Self> {
        DottedMatching::new(self.base.clone(), dotted)
    }
}

impl fmt::Display for DottedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(usize, String)> = self
            .base
            .arcs
            .iter()
            .map(|&(i, j)| (i, format!("{}{i}-{j}", if self.is_dotted((i, j)) { 'd' } else { 'u' })))
            .collect();
        items.extend(self.base.rays.iter().map(|&r| (r, format!("r{r}"))));
        items.sort();
        write!(f, "{}:", self.base.n)?;
        for (_, s) in items {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        DottedMatching::undotted(self.clone()).fmt(f)
    }
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Scanner<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.offset + self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: self.offset + start, msg: "number too large".into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }
}

/// Parses `<n>: item*` (empty only for n = 0) where item is `u<i>-<j>`, `d<i>-<j>` or `r<i>`.
/// `offset` is added to reported error positions.
pub(crate) fn parse_dotted(text: &str, offset: usize) -> Result<DottedMatching> {
    let mut s = Scanner { src: text.as_bytes(), pos: 0, offset };
    s.skip_ws();
    let n = s.number()?;
    s.skip_ws();
    s.expect(b':')?;
    let mut arcs = Vec::new();
    let mut rays = Vec::new();
    let mut dotted = Vec::new();
    loop {
        s.skip_ws();
        let Some(&c) = s.src.get(s.pos) else { break };
        s.pos += 1;
        match c {
            b'u' | b'd' => {
                let i = s.number()?;
                s.expect(b'-')?;
                let j = s.number()?;
                arcs.push((i, j));
                if c == b'd' {
                    dotted.push((i, j));
                }
            }
            b'r' => rays.push(s.number()?),
            _ => {
                s.pos -= 1;
                return Err(s.err(format!("unexpected character '{}'", c as char)));
            }
        }
        if s.pos < s.src.len() && !s.src[s.pos].is_ascii_whitespace() {
            return Err(s.err("items must be separated by whitespace"));
        }
    }
    if n > 0 && arcs.is_empty() && rays.is_empty() {
        return Err(s.err("expected at least one item"));
    }
    DottedMatching::validate(n, &arcs, &rays, &dotted)
}

impl FromStr for DottedMatching {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_dotted(s, 0)
    }
}

impl FromStr for Matching {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_dotted(s, 0)?.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    // Independent enumerator: every involution pattern, filtered by the definition.
    fn brute(n: usize, k: usize) -> Vec<Matching> {
        let mut out = Vec::new();
        for ends in (1..=n).combinations(2 * k) {
            let mut pairings: Vec<Vec<Arc>> = vec![vec![]];
            for _ in 0..k {
                let mut next = Vec::new();
                for p in &pairings {
                    let used: Vec<usize> = p.iter().flat_map(|&(a, b)| [a, b]).collect();
                    let free: Vec<usize> = ends.iter().copied().filter(|v| !used.contains(v)).collect();
                    let first = free[0];
                    for &other in &free[1..] {
                        let mut q = p.clone();
                        q.push((first, other));
                        next.push(q);
                    }
                }
                pairings = next;
            }
            for p in pairings {
                if let Ok(m) = Matching::from_arcs(n, &p) {
                    out.push(m);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn validate_examples() {
        let m = DottedMatching::validate(4, &[(1, 2), (3, 4)], &[], &[]).unwrap();
        assert_eq!(m.k(), 2);
        assert_eq!(
            Matching::new(4, &[(1, 3)], &[2, 4]),
            Err(Error::RayUnderArc { ray: 2, arc: (1, 3) })
        );
        assert_eq!(Matching::new(4, &[(1, 3), (2, 4)], &[]), Err(Error::CrossingArcs((1, 3), (2, 4))));
        assert_eq!(Matching::new(4, &[(1, 2), (2, 3)], &[4]), Err(Error::VertexReuse(2)));
        assert!(matches!(Matching::new(4, &[(1, 2)], &[3]), Err(Error::BadCounts(_))));
        let base = Matching::new(2, &[(1, 2)], &[]).unwrap();
        assert_eq!(DottedMatching::new(base, &[(1, 3)]), Err(Error::DotOnNonArc((1, 3))));
    }

    #[test]
    fn enumerate_examples() {
        let b31 = enumerate(4, 1).unwrap();
        let arcs: Vec<_> = b31.iter().map(|m| m.arcs().to_vec()).collect();
        assert_eq!(arcs, vec![vec![(1, 2)], vec![(2, 3)], vec![(3, 4)]]);
        assert_eq!(b31[1].rays(), &[1, 4]);
        assert_eq!(enumerate(5, 0).unwrap().len(), 1);
        assert_eq!(enumerate(6, 3).unwrap().len(), 5);
        assert!(enumerate(3, 2).is_err());
    }

    #[test]
    fn enumerate_matches_brute_force_and_count() {
        for n in 0..=10 {
            for k in 0..=n / 2 {
                let e = enumerate(n, k).unwrap();
                let expected = binom(n, k) - if k > 0 { binom(n, k - 1) } else { 0 };
                assert_eq!(e.len(), expected, "n={n} k={k}");
                if n <= 8 {
                    assert_eq!(e, brute(n, k));
                }
                for m in &e {
                    assert!(m.arcs().iter().all(|&(i, j)| (i + j) % 2 == 1));
                }
            }
        }
    }

    #[test]
    fn completion_examples() {
        let a = Matching::new(6, &[(1, 2), (4, 5)], &[3, 6]).unwrap();
        let c = a.complete();
        assert_eq!(c.arcs(), &[(1, 8), (2, 5), (3, 4), (6, 7)]);
        assert_eq!(c.restrict(2).unwrap(), a);
        let rays = Matching::new(2, &[], &[1, 2]).unwrap();
        assert_eq!(rays.complete().arcs(), &[(1, 4), (2, 3)]);
        let full = Matching::new(4, &[(1, 2), (3, 4)], &[]).unwrap();
        assert_eq!(full.complete(), full);
        assert!(matches!(
            Matching::new(8, &[(1, 2), (3, 8), (4, 5), (6, 7)], &[]).unwrap().restrict(2),
            Err(Error::NotInRestrictableSet { .. })
        ));
    }

    #[test]
    fn completion_is_a_bijection_onto_restrictable_set() {
        for n in 1..=9 {
            for k in 0..=n / 2 {
                let all = enumerate(n, k).unwrap();
                let mut images: Vec<Matching> = all.iter().map(Matching::complete).collect();
                for (a, c) in all.iter().zip(&images) {
                    assert_eq!(&c.restrict(k).unwrap(), a);
                }
                images.sort();
                images.dedup();
                assert_eq!(images.len(), all.len());
                let restrictable: Vec<Matching> = enumerate(2 * (n - k), n - k)
                    .unwrap()
                    .into_iter()
                    .filter(|m| m.restrict(k).is_ok())
                    .collect();
                assert_eq!(restrictable, images);
            }
        }
    }

    #[test]
    fn codec_examples() {
        let m: DottedMatching = "7: r1 u2-3 d4-7 u5-6".parse().unwrap();
        assert_eq!(m.base().rays(), &[1]);
        assert_eq!(m.dotted(), &[(4, 7)]);
        assert_eq!(m.grading(), 2);
        assert!(m.is_standard());
        assert_eq!(m.to_string(), "7: r1 u2-3 d4-7 u5-6");
        assert_eq!("2: u1-2".parse::<DottedMatching>().unwrap().to_string(), "2: u1-2");
        assert_eq!(
            "4: u1-3 r2 r4".parse::<DottedMatching>(),
            Err(Error::RayUnderArc { ray: 2, arc: (1, 3) })
        );
        assert!(matches!("4 u1-2".parse::<DottedMatching>(), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!("4: u1-2 x3".parse::<DottedMatching>(), Err(Error::Syntax { pos: 8, .. })));
    }

    #[test]
    fn standardness() {
        let s = |t: &str| t.parse::<DottedMatching>().unwrap().is_standard();
        assert!(s("4: d1-4 u2-3"));
        assert!(!s("4: u1-4 d2-3"));
        assert!(!s("3: d1-2 r3"));
        assert!(s("3: r1 d2-3"));
        assert!(s("3: u1-2 r3"));
    }
}
