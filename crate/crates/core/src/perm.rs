//! Permutations of {1..n}: cycle and word syntax, composition, reduced words.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation stored by images: `images[i - 1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::BadPermutation(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// The adjacent transposition s_i = (i i+1).
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::BadPermutation(format!("s{i} needs 1 <= i < {n}")));
        }
        let mut p = Perm::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// Product s_{w_1} ∘ s_{w_2} ∘ ... ∘ s_{w_r}.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(Perm::identity(n), |acc, &i| Ok(acc.compose(&Perm::simple(n, i)?)))
    }

    /// Permutation built from disjoint or overlapping cycles, composed left to right as functions.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Perm::identity(n);
        for c in cycles {
            let mut images: Vec<usize> = (1..=n).collect();
            let mut seen = Vec::new();
            for &x in c {
                if x == 0 || x > n || seen.contains(&x) {
                    return Err(Error::BadPermutation(format!("bad cycle entry {x} for n = {n}")));
                }
                seen.push(x);
            }
            for (a, b) in c.iter().zip(c.iter().cycle().skip(1)) {
                images[a - 1] = *b;
            }
            acc = acc.compose(&Perm { images });
        }
        Ok(acc)
    }

    /// Parses cycle notation `(1 2 3)(4 5)`, a word `s1 s2`, or `id`/empty for the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "id" || t == "e" || t == "()" {
            return Ok(Perm::identity(n));
        }
        if t.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = t;
            while !rest.is_empty() {
                let body = rest
                    .strip_prefix('(')
                    .and_then(|r| r.split_once(')'))
                    .ok_or_else(|| Error::BadPermutation(format!("cannot parse cycles in '{t}'")))?;
                let entries = body
                    .0
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::BadPermutation(format!("bad cycle entry in '{t}'")))?;
                cycles.push(entries);
                rest = body.1.trim_start();
            }
            return Perm::from_cycles(n, &cycles);
        }
        let word = t
            .split(|c: char| c.is_whitespace() || c == ',' || c == '*')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::BadPermutation(format!("bad letter '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_word(n, &word)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// A reduced word w with σ = s_{w_1} ∘ ... ∘ s_{w_r}, found by stripping right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut stripped = Vec::new();
        while let Some(i) = (1..p.n()).find(|&i| p.apply(i) > p.apply(i + 1)) {
            p = p.compose(&Perm::simple(p.n(), i).unwrap());
            stripped.push(i);
        }
        stripped.reverse();
        stripped
    }

    pub fn length(&self) -> usize {
        (0..self.n()).tuple_combinations().filter(|&(i, j)| self.images[i] > self.images[j]).count()
    }

    /// Nontrivial cycles in canonical order.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for s in 1..=self.n() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle type as a partition (weakly decreasing, fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.n() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Stable file-name key: images joined by '-'.
    pub fn key(&self) -> String {
        if self.images.is_empty() {
            return "empty".into();
        }
        self.images.iter().join("-")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "id");
        }
        for c in cs {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Partitions of n in reverse lexicographic order, starting with (n).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation of cycle type `shape` using consecutive cycles.
pub fn class_representative(shape: &[usize]) -> Perm {
    let n: usize = shape.iter().sum();
    let mut start = 1;
    let mut cycles = Vec::new();
    for &len in shape {
        cycles.push((start..start + len).collect());
        start += len;
    }
    Perm::from_cycles(n, &cycles).expect("consecutive cycles are valid")
}
