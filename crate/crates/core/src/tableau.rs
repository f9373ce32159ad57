//! Two-row standard tableaux and their bijection with standard dotted matchings.

use std::fmt;

use itertools::Itertools;

use crate::error::{Arc, Error, Result};
use crate::matching::{DottedMatching, Matching};

/// A standard Young tableau of shape (n-m, m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl StandardTableau {
    pub fn new(top: &[usize], bottom: &[usize]) -> Result<Self> {
        let n = top.len() + bottom.len();
        let bad = |msg: &str| Err(Error::ShapeMismatch(msg.to_string()));
        if bottom.len() > top.len() {
            return bad("bottom row longer than top row");
        }
        if !top.windows(2).all(|w| w[0] < w[1]) || !bottom.windows(2).all(|w| w[0] < w[1]) {
            return bad("rows must be strictly increasing");
        }
        let mut all: Vec<usize> = top.iter().chain(bottom).copied().collect();
        all.sort_unstable();
        if all != (1..=n).collect::<Vec<_>>() {
            return bad("entries must be 1..=n");
        }
        if bottom.iter().zip(top).any(|(b, t)| b <= t) {
            return bad("columns must be strictly increasing");
        }
        Ok(StandardTableau { top: top.to_vec(), bottom: bottom.to_vec() })
    }

    /// The standard tableau whose bottom row is `bottom`.
    pub fn from_bottom(n: usize, bottom: &[usize]) -> Result<Self> {
        let top: Vec<usize> = (1..=n).filter(|v| !bottom.contains(v)).collect();
        StandardTableau::new(&top, bottom)
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn n(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn m(&self) -> usize {
        self.bottom.len()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.top.iter().join(" "), self.bottom.iter().join(" "))
    }
}

/// All standard tableaux of shape (n-m, m), ordered by bottom row.
pub fn standard_tableaux(n: usize, m: usize) -> Vec<StandardTableau> {
    if 2 * m > n {
        return Vec::new();
    }
    (1..=n)
        .combinations(m)
        .filter_map(|b| StandardTableau::from_bottom(n, &b).ok())
        .collect()
}

/// Bijection g: bottom row = right endpoints of the undotted arcs.
pub fn tableau_of(m: &DottedMatching) -> Result<StandardTableau> {
    if !m.is_standard() {
        return Err(Error::NotStandard);
    }
    let bottom: Vec<usize> = m.undotted_arcs().iter().map(|&(_, j)| j).sorted().collect();
    StandardTableau::from_bottom(m.n(), &bottom)
}

/// Inverse bijection h onto standard dotted matchings of type (n-k, k).
pub fn matching_of(t: &StandardTableau, k: usize) -> Result<DottedMatching> {
    let n = t.n();
    if t.m() > k || 2 * k > n {
        return Err(Error::ShapeMismatch(format!("shape ({},{}) with k = {k}", n - t.m(), t.m())));
    }
    let mut used = vec![false; n + 1];
    let mut arcs = Vec::new();
    for &b in &t.bottom {
        used[b] = true;
        let left = (1..b).rev().find(|&v| !used[v]).ok_or_else(|| {
            Error::ShapeMismatch(format!("no free vertex left of {b}"))
        })?;
        used[left] = true;
        arcs.push((left, b));
    }
    standard_layout(&arcs, n, k).map_err(|e| Error::ShapeMismatch(e.to_string()))
}

/// The unique standard dotted matching of type (n-k, k) whose undotted arcs are exactly `undotted`.
pub fn standard_layout(undotted: &[Arc], n: usize, k: usize) -> Result<DottedMatching> {
    let fail = |msg: String| Err(Error::NoStandardCompletion(msg));
    if undotted.len() > k || 2 * k > n {
        return fail(format!("{} undotted arcs do not fit type ({},{k})", undotted.len(), n.saturating_sub(k)));
    }
    let mut used = vec![false; n + 1];
    for &(i, j) in undotted {
        if i >= j || j > n || i == 0 || used[i] || used[j] {
            return fail(format!("invalid arc ({i},{j})"));
        }
        used[i] = true;
        used[j] = true;
    }
    let empty: Vec<usize> = (1..=n).filter(|&v| !used[v]).collect();
    if let Some((&v, &(i, j))) = empty
        .iter()
        .cartesian_product(undotted)
        .find(|(&v, &(i, j))| i < v && v < j)
    {
        return fail(format!("vertex {v} lies under undotted arc ({i},{j})"));
    }
    let pad = n - 2 * k;
    let rays = &empty[..pad];
    let dotted: Vec<Arc> = empty[pad..].chunks(2).map(|c| (c[0], c[1])).collect();
    let all: Vec<Arc> = undotted.iter().chain(&dotted).copied().collect();
    let base = Matching::new(n, &all, rays).map_err(|e| Error::NoStandardCompletion(e.to_string()))?;
    DottedMatching::new(base, &dotted)
}

/// All standard dotted matchings of type (n-k, k) with m undotted arcs, ordered by tableau.
pub fn standard_basis(n: usize, k: usize, m: usize) -> Vec<DottedMatching> {
    if m > k || 2 * k > n {
        return Vec::new();
    }
    standard_tableaux(n, m)
        .iter()
        .map(|t| matching_of(t, k).expect("every tableau has a standard matching"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate;

    fn dm(s: &str) -> DottedMatching {
        s.parse().unwrap()
    }

    #[test]
    fn tableau_examples() {
        let t = tableau_of(&dm("7: r1 u2-3 d4-7 u5-6")).unwrap();
        assert_eq!(t.top(), &[1, 2, 4, 5, 7]);
        assert_eq!(t.bottom(), &[3, 6]);
        assert_eq!(tableau_of(&dm("4: r1 r2 d3-4")).unwrap().m(), 0);
        let t = tableau_of(&dm("4: u1-2 u3-4")).unwrap();
        assert_eq!((t.top(), t.bottom()), (&[1, 3][..], &[2, 4][..]));
        assert_eq!(tableau_of(&dm("3: d1-2 r3")), Err(Error::NotStandard));
    }

    #[test]
    fn matching_examples() {
        let t = StandardTableau::new(&[1, 2, 4, 5, 7], &[3, 6]).unwrap();
        assert_eq!(matching_of(&t, 3).unwrap(), dm("7: r1 u2-3 d4-7 u5-6"));
        let one_row = StandardTableau::new(&[1, 2, 3, 4], &[]).unwrap();
        assert_eq!(matching_of(&one_row, 1).unwrap(), dm("4: r1 r2 d3-4"));
        let t = StandardTableau::new(&[1, 3], &[2, 4]).unwrap();
        assert_eq!(matching_of(&t, 2).unwrap(), dm("4: u1-2 u3-4"));
        assert!(matches!(matching_of(&t, 1), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn layout_examples() {
        assert_eq!(standard_layout(&[(2, 3), (5, 6)], 7, 3).unwrap(), dm("7: r1 u2-3 d4-7 u5-6"));
        assert_eq!(standard_layout(&[], 4, 1).unwrap(), dm("4: r1 r2 d3-4"));
        assert_eq!(standard_layout(&[(1, 2)], 2, 1).unwrap(), dm("2: u1-2"));
        assert!(matches!(standard_layout(&[(1, 4)], 4, 1), Err(Error::NoStandardCompletion(_))));
        assert!(matches!(standard_layout(&[(1, 2), (3, 4)], 4, 1), Err(Error::NoStandardCompletion(_))));
    }

    #[test]
    fn bijection_with_tableaux() {
        for n in 0..=9 {
            for k in 0..=n / 2 {
                let all = enumerate(n, k).unwrap();
                for m in 0..=k {
                    let mut filtered: Vec<DottedMatching> = all
                        .iter()
                        .flat_map(|a| {
                            a.arcs().iter().copied().combinations(k - m).map(move |d| {
                                DottedMatching::new(a.clone(), &d).unwrap()
                            })
                        })
                        .filter(DottedMatching::is_standard)
                        .collect();
                    filtered.sort();
                    let tabs = standard_tableaux(n, m);
                    let mut images: Vec<DottedMatching> =
                        tabs.iter().map(|t| matching_of(t, k).unwrap()).collect();
                    for (t, im) in tabs.iter().zip(&images) {
                        assert_eq!(&tableau_of(im).unwrap(), t);
                        assert_eq!(im.grading(), m);
                        let again = standard_layout(&im.undotted_arcs(), n, k).unwrap();
                        assert_eq!(&again, im);
                    }
                    images.sort();
                    assert_eq!(images, filtered, "n={n} k={k} m={m}");
                }
            }
        }
    }
}
