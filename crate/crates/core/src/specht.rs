//! Two-row tabloid modules: polytabloids, matching vectors, ζ and the padding embedding.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::HomClass;
use crate::linalg::{same_row_space, KeyIndex, SpanSolver, Q};
use crate::matching::DottedMatching;
use crate::perm::Perm;
use crate::tableau::{standard_basis, standard_tableaux, StandardTableau};

/// Rational combination of tabloids of shape (n-m, m), keyed by bottom-row set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabloidVector {
    n: usize,
    m: usize,
    coords: BTreeMap<Vec<usize>, Q>,
}

impl TabloidVector {
    pub fn zero(n: usize, m: usize) -> Self {
        TabloidVector { n, m, coords: BTreeMap::new() }
    }

    pub fn tabloid(n: usize, bottom: &[usize]) -> Result<Self> {
        let mut key = bottom.to_vec();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) || key.iter().any(|&v| v == 0 || v > n) || 2 * key.len() > n {
            return Err(Error::SizeMismatch(format!("{bottom:?} is not a bottom row for n = {n}")));
        }
        let mut v = TabloidVector::zero(n, key.len());
        v.coords.insert(key, Q::one());
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coords(&self) -> &BTreeMap<Vec<usize>, Q> {
        &self.coords
    }

    pub fn get(&self, bottom: &[usize]) -> Q {
        self.coords.get(bottom).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_coord(&mut self, key: Vec<usize>, c: Q) {
        let e = self.coords.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn add(&mut self, other: &TabloidVector, scale: &Q) -> Result<()> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::SizeMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        for (k, c) in &other.coords {
            self.add_coord(k.clone(), c * scale);
        }
        Ok(())
    }
}

impl fmt::Display for TabloidVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coords.iter().enumerate() {
            let key = format!("{{{}}}", k.iter().join(","));
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{c}·v{key}")?,
                (0, true) => write!(f, "-{}·v{key}", c.abs())?,
                (_, false) => write!(f, " + {c}·v{key}")?,
                (_, true) => write!(f, " - {}·v{key}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// σ relabels entries: S ↦ σ(S).
pub fn permute(sigma: &Perm, v: &TabloidVector) -> Result<TabloidVector> {
    if sigma.n() != v.n {
        return Err(Error::SizeMismatch(format!("permutation of {} letters on n = {}", sigma.n(), v.n)));
    }
    let mut out = TabloidVector::zero(v.n, v.m);
    for (k, c) in &v.coords {
        let key: Vec<usize> = k.iter().map(|&x| sigma.apply(x)).sorted().collect();
        out.add_coord(key, c.clone());
    }
    Ok(out)
}

/// Σ_{choices} sign · v_S where each pair (lo, hi) puts hi (sign +) or lo (sign -) in the bottom row.
fn pair_expansion(n: usize, pairs: &[(usize, usize)]) -> TabloidVector {
    let mut out = TabloidVector::zero(n, pairs.len());
    for mask in 0..1usize << pairs.len() {
        let mut key = Vec::with_capacity(pairs.len());
        let mut c = Q::one();
        for (b, &(lo, hi)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                key.push(lo);
                c = -c;
            } else {
                key.push(hi);
            }
        }
        key.sort_unstable();
        out.add_coord(key, c);
    }
    out
}

/// e_T: alternating sum over the column stabilizer.
pub fn polytabloid(t: &StandardTableau) -> TabloidVector {
    let pairs: Vec<(usize, usize)> = t.top().iter().copied().zip(t.bottom().iter().copied()).collect();
    pair_expansion(t.n(), &pairs)
}

/// e_M: alternating sum over swaps of undotted arcs; dots and rays do not enter.
pub fn matching_vector(x: &DottedMatching) -> TabloidVector {
    pair_expansion(x.n(), &x.undotted_arcs())
}

/// Linear extension of M ↦ e_M.
pub fn zeta(x: &HomClass) -> TabloidVector {
    let mut out = TabloidVector::zero(x.n(), x.grading());
    for (g, c) in x.terms() {
        out.add(&matching_vector(g), &Q::from_integer(c.clone())).expect("homogeneous class");
    }
    out
}

/// Adds `pad` letters at the front of the top row: bottom sets shift by pad.
pub fn f_embed(v: &TabloidVector, pad: usize) -> TabloidVector {
    let mut out = TabloidVector::zero(v.n + pad, v.m);
    for (k, c) in &v.coords {
        out.add_coord(k.iter().map(|x| x + pad).collect(), c.clone());
    }
    out
}

/// The permutation σ' of n + pad letters acting as σ on the shifted block.
pub fn shift_perm(sigma: &Perm, pad: usize) -> Perm {
    let images: Vec<usize> = (1..=pad).chain(sigma.images().iter().map(|x| x + pad)).collect();
    Perm::from_images(images).expect("shift of a permutation")
}

/// Outcome of comparing span{e_T} with span{e_M}.
#[derive(Clone, Debug)]
pub struct ModulesEqual {
    pub equal: bool,
    pub rank_specht: usize,
    pub rank_matching: usize,
    /// Row i: coordinates of e_{M_i} over the polytabloids {e_T}.
    pub matching_in_specht: Vec<Vec<Q>>,
    /// Row i: coordinates of e_{T_i} over the matching vectors {e_M}.
    pub specht_in_matching: Vec<Vec<Q>>,
}

/// Row spaces of {e_T : T standard} and {e_M : M standard of type (n-k, k), grading m}.
pub fn modules_equal(n: usize, m: usize, k: usize) -> Result<ModulesEqual> {
    if m > k || 2 * k > n {
        return Err(Error::Domain(format!("need m ≤ k ≤ n/2, got n={n} m={m} k={k}")));
    }
    let specht: Vec<TabloidVector> = standard_tableaux(n, m).iter().map(polytabloid).collect();
    let matching: Vec<TabloidVector> = standard_basis(n, k, m).iter().map(matching_vector).collect();
    let keys = KeyIndex::new((1..=n).combinations(m).collect());
    let dense = |vs: &[TabloidVector]| -> Vec<Vec<Q>> { vs.iter().map(|v| keys.dense(&v.coords).unwrap()).collect() };
    let (ds, dm) = (dense(&specht), dense(&matching));
    let rank_specht = crate::linalg::rank(ds.clone(), keys.len());
    let rank_matching = crate::linalg::rank(dm.clone(), keys.len());
    let equal = same_row_space(&ds, &dm, keys.len());
    let solve_all = |basis: &[TabloidVector], targets: &[TabloidVector]| -> Vec<Vec<Q>> {
        match SpanSolver::new(&basis.iter().map(|v| v.coords.clone()).collect::<Vec<_>>()) {
            Some(s) => targets.iter().filter_map(|t| s.solve(&t.coords)).collect(),
            None => Vec::new(),
        }
    };
    Ok(ModulesEqual {
        equal,
        rank_specht,
        rank_matching,
        matching_in_specht: solve_all(&specht, &matching),
        specht_in_matching: solve_all(&matching, &specht),
    })
}

/// χ^λ(μ) by the Murnaghan–Nakayama rule on beta-sets.
pub fn irr_character(shape: &[usize], cycle_type: &[usize]) -> Result<i64> {
    let total: usize = shape.iter().sum();
    if total != cycle_type.iter().sum::<usize>() {
        return Err(Error::SizeMismatch(format!("{shape:?} and {cycle_type:?} have different sizes")));
    }
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::ShapeMismatch(format!("{shape:?} is not a partition")));
    }
    let l = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut parts: Vec<usize> = cycle_type.iter().copied().filter(|&p| p > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(mn(beta, &parts))
}

fn mn(beta: Vec<usize>, parts: &[usize]) -> i64 {
    let Some((&r, rest)) = parts.split_first() else { return 1 };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| b - r < x && x < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest);
    }
    total
}

/// χ^{(n-m, m)} on a permutation.
pub fn two_row_character(n: usize, m: usize, sigma: &Perm) -> Result<i64> {
    let shape: Vec<usize> = [n - m, m].into_iter().filter(|&p| p > 0).collect();
    irr_character(&shape, &sigma.cycle_type())
}

/// Integer form of a coordinate list when all entries are integral.
pub fn integral(v: &[Q]) -> Option<Vec<num::BigInt>> {
    v.iter().map(crate::linalg::to_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::homology::relation_instances;
    use crate::perm::partitions;
    use proptest::prelude::*;

    fn tv(n: usize, terms: &[(&[usize], i64)]) -> TabloidVector {
        let mut out = TabloidVector::zero(n, terms[0].0.len());
        for &(k, c) in terms {
            out.add(&TabloidVector::tabloid(n, k).unwrap(), &q(c)).unwrap();
        }
        out
    }

    fn dm(s: &str) -> DottedMatching {
        s.parse().unwrap()
    }

    #[test]
    fn permute_examples() {
        let v = tv(4, &[(&[2, 4], 1)]);
        assert_eq!(permute(&Perm::parse("(2 3)", 4).unwrap(), &v).unwrap(), tv(4, &[(&[3, 4], 1)]));
        assert_eq!(permute(&Perm::identity(4), &v).unwrap(), v);
        assert!(permute(&Perm::identity(3), &v).is_err());
    }

    #[test]
    fn polytabloid_examples() {
        let t = StandardTableau::new(&[1, 3], &[2]).unwrap();
        assert_eq!(polytabloid(&t), tv(3, &[(&[2], 1), (&[1], -1)]));
        let t = StandardTableau::new(&[1, 3], &[2, 4]).unwrap();
        assert_eq!(polytabloid(&t), tv(4, &[(&[2, 4], 1), (&[1, 4], -1), (&[2, 3], -1), (&[1, 3], 1)]));
        let t = StandardTableau::new(&[1, 2, 3], &[]).unwrap();
        assert_eq!(polytabloid(&t), TabloidVector::tabloid(3, &[]).unwrap());
    }

    #[test]
    fn matching_vector_examples() {
        assert_eq!(matching_vector(&dm("3: u1-2 r3")), tv(3, &[(&[2], 1), (&[1], -1)]));
        assert_eq!(matching_vector(&dm("4: d1-4 d2-3")), TabloidVector::tabloid(4, &[]).unwrap());
        assert_eq!(
            matching_vector(&dm("4: u1-4 u2-3")),
            tv(4, &[(&[3, 4], 1), (&[1, 3], -1), (&[2, 4], -1), (&[1, 2], 1)])
        );
        assert_eq!(zeta(&HomClass::zero(4, 2, 1)), TabloidVector::zero(4, 1));
        let sign = zeta(&HomClass::single(dm("2: u1-2")));
        assert_eq!(permute(&Perm::simple(2, 1).unwrap(), &sign).unwrap(), {
            let mut s = sign.clone();
            s.add(&sign, &q(-2)).unwrap();
            s
        });
    }

    #[test]
    fn zeta_kills_relations() {
        for n in 0..=7 {
            for k in 0..=n / 2 {
                for m in 0..=k {
                    for r in relation_instances(n, k, m).unwrap() {
                        assert!(zeta(&r.class).is_zero(), "{}", r.class);
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let v = TabloidVector::tabloid(7, &[2, 3]).unwrap();
        assert_eq!(f_embed(&v, 1), TabloidVector::tabloid(8, &[3, 4]).unwrap());
        assert_eq!(f_embed(&TabloidVector::tabloid(3, &[]).unwrap(), 1), TabloidVector::tabloid(4, &[]).unwrap());
        for x in crate::homology::dotted_generators(5, 2, 1).unwrap() {
            let completed = x.complete();
            assert_eq!(f_embed(&matching_vector(&x), x.base().pad()), matching_vector(&completed));
        }
    }

    #[test]
    fn modules_agree() {
        let r = modules_equal(4, 2, 2).unwrap();
        assert!(r.equal);
        assert_eq!((r.rank_specht, r.rank_matching), (2, 2));
        assert!(modules_equal(5, 0, 2).unwrap().equal);
        let shared = dm("4: u1-2 u3-4");
        let t = crate::tableau::tableau_of(&shared).unwrap();
        assert_eq!(matching_vector(&shared), polytabloid(&t));
    }

    #[test]
    fn character_examples() {
        assert_eq!(irr_character(&[2, 2], &[1, 1, 1, 1]).unwrap(), 2);
        assert_eq!(irr_character(&[2, 2], &[2, 2]).unwrap(), 2);
        assert_eq!(irr_character(&[2, 2], &[3, 1]).unwrap(), -1);
        assert_eq!(irr_character(&[2, 2], &[4]).unwrap(), 0);
        assert_eq!(irr_character(&[1, 1, 1], &[2, 1]).unwrap(), -1);
        for n in 1..=6 {
            for mu in partitions(n) {
                assert_eq!(irr_character(&[n], &mu).unwrap(), 1);
            }
            // column orthogonality at the identity: Σ χ(1)² = n!
            let sum: i64 = partitions(n).iter().map(|l| irr_character(l, &vec![1; n]).unwrap().pow(2)).sum();
            assert_eq!(sum, (1..=n as i64).product::<i64>());
        }
    }

    proptest! {
        #[test]
        fn permute_is_an_action(seed in any::<u64>(), n in 2usize..7) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut img: Vec<usize> = (1..=n).collect();
            img.shuffle(&mut rng);
            let s = Perm::from_images(img.clone()).unwrap();
            img.shuffle(&mut rng);
            let t = Perm::from_images(img).unwrap();
            let m = n / 2;
            let v = polytabloid(&standard_tableaux(n, m)[0]);
            prop_assert_eq!(
                permute(&s.compose(&t), &v).unwrap(),
                permute(&s, &permute(&t, &v).unwrap()).unwrap()
            );
            let pad = 2;
            prop_assert_eq!(
                f_embed(&permute(&s, &v).unwrap(), pad),
                permute(&shift_perm(&s, pad), &f_embed(&v, pad)).unwrap()
            );
        }
    }
}
