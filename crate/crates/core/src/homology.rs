//! Homology of X_{n-k,k}: dotted-matching generators, Type I/II/III relations,
//! reduction to the standard basis, and the cokernel presentation.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, One, Signed, Zero};
use rand::Rng;

use crate::diagram::{arrow_move, ArrowGraph, ArrowMove};
use crate::error::{Arc, Error, Result};
use crate::linalg::{to_integer, KeyIndex, Rref, Q};
use crate::matching::{enumerate, parse_dotted, DottedMatching, Matching};
use crate::sphere::{subspace_of, Variant};
use crate::tableau::standard_basis;

/// An integer combination of dotted matchings of one type (n-k, k) and one grading m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    n: usize,
    k: usize,
    m: usize,
    terms: BTreeMap<DottedMatching, BigInt>,
}

impl HomClass {
    pub fn zero(n: usize, k: usize, m: usize) -> Self {
        HomClass { n, k, m, terms: BTreeMap::new() }
    }

    pub fn single(x: DottedMatching) -> Self {
        let mut c = HomClass::zero(x.n(), x.k(), x.grading());
        c.terms.insert(x, BigInt::one());
        c
    }

    /// Sums terms; fails on mixed types or gradings.
    pub fn from_terms(terms: impl IntoIterator<Item = (DottedMatching, BigInt)>) -> Result<Self> {
        let mut out: Option<HomClass> = None;
        for (x, c) in terms {
            let cls = out.get_or_insert_with(|| HomClass::zero(x.n(), x.k(), x.grading()));
            cls.add_term(x, c)?;
        }
        out.ok_or_else(|| Error::Domain("empty class needs an explicit type".into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grading(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<DottedMatching, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &DottedMatching) -> BigInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: DottedMatching, c: BigInt) -> Result<()> {
        if x.n() != self.n || x.k() != self.k {
            return Err(Error::TypeMismatch(x.n(), x.k(), self.n, self.k));
        }
        if x.grading() != self.m {
            return Err(Error::InhomogeneousClass);
        }
        let e = self.terms.entry(x).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&mut self, other: &HomClass, scale: &BigInt) -> Result<()> {
        if other.m != self.m {
            return Err(Error::InhomogeneousClass);
        }
        for (x, c) in &other.terms {
            self.add_term(x.clone(), c * scale)?;
        }
        Ok(())
    }

    pub fn scaled(&self, s: &BigInt) -> HomClass {
        let mut out = HomClass::zero(self.n, self.k, self.m);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(x, c)| (x.clone(), c * s)).collect();
        }
        out
    }

    /// Parses `2·(4: u1-2 d3-4) - (4: d1-2 u3-4)` or a bare matching.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim_end();
        if !t.contains('(') {
            return Ok(HomClass::single(parse_dotted(t, 0)?));
        }
        let b = t.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos >= b.len() {
                break;
            }
            let mut sign = BigInt::one();
            match b[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if !first => return Err(Error::Syntax { pos, msg: "expected '+' or '-'".into() }),
                _ => {}
            }
            first = false;
            skip(&mut pos);
            let start = pos;
            while pos < b.len() && b[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if start == pos { BigInt::one() } else { t[start..pos].parse::<BigInt>().unwrap() };
            skip(&mut pos);
            if t[pos..].starts_with('·') {
                pos += '·'.len_utf8();
            } else if t[pos..].starts_with('*') {
                pos += 1;
            }
            skip(&mut pos);
            if b.get(pos) != Some(&b'(') {
                return Err(Error::Syntax { pos, msg: "expected '('".into() });
            }
            let close = t[pos..]
                .find(')')
                .map(|c| pos + c)
                .ok_or(Error::Syntax { pos, msg: "unclosed '('".into() })?;
            let x = parse_dotted(&t[pos + 1..close], pos + 1)?;
            terms.push((x, sign * coeff));
            pos = close + 1;
        }
        HomClass::from_terms(terms)
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{c}·({x})")?,
                (0, true) => write!(f, "-{}·({x})", c.abs())?,
                (_, false) => write!(f, " + {c}·({x})")?,
                (_, true) => write!(f, " - {}·({x})", c.abs())?,
            }
        }
        Ok(())
    }
}

/// All dotted matchings of type (n-k, k) with m undotted arcs, ordered by base then dots.
pub fn dotted_generators(n: usize, k: usize, m: usize) -> Result<Vec<DottedMatching>> {
    if m > k {
        return Ok(Vec::new());
    }
    Ok(enumerate(n, k)?
        .into_iter()
        .flat_map(|a| {
            let arcs = a.arcs().to_vec();
            arcs.into_iter()
                .combinations(k - m)
                .map(move |d| DottedMatching::from_parts_unchecked(a.clone(), d))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    TypeI,
    TypeII,
    TypeIII,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub class: HomClass,
}

fn dotted_on(base: &Matching, common: &[Arc], extra: &[Arc]) -> DottedMatching {
    let dots: Vec<Arc> = common.iter().chain(extra).copied().collect();
    DottedMatching::new(base.clone(), &dots).expect("dots lie on arcs")
}

/// Every local Type I/II/III instance in grading m.
pub fn relation_instances(n: usize, k: usize, m: usize) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    let one = BigInt::one;
    for a in enumerate(n, k)? {
        for b in crate::diagram::arrow_successors(&a) {
            let mv = arrow_move(&a, &b).expect("successor is an arrow pair");
            let moved: Vec<Arc> = match mv {
                ArrowMove::Quadruple { i, j, k, l } => vec![(i, j), (k, l)],
                ArrowMove::Triple { j, k, .. } => vec![(j, k)],
            };
            let common: Vec<Arc> = a.arcs().iter().copied().filter(|x| !moved.contains(x)).collect();
            for dots in common.iter().copied().powerset() {
                let free_common = common.len() - dots.len();
                let (kind, terms) = match mv {
                    ArrowMove::Quadruple { i, j, k, l } => {
                        let (ij, kl, il, jk) = ((i, j), (k, l), (i, l), (j, k));
                        if free_common + 1 == m {
                            (
                                RelationKind::TypeI,
                                vec![
                                    (dotted_on(&a, &dots, &[ij]), one()),
                                    (dotted_on(&a, &dots, &[kl]), one()),
                                    (dotted_on(&b, &dots, &[jk]), -one()),
                                    (dotted_on(&b, &dots, &[il]), one()),
                                ],
                            )
                        } else if free_common == m {
                            (
                                RelationKind::TypeII,
                                vec![
                                    (dotted_on(&a, &dots, &[ij, kl]), one()),
                                    (dotted_on(&b, &dots, &[il, jk]), -one()),
                                ],
                            )
                        } else {
                            continue;
                        }
                    }
                    ArrowMove::Triple { i, j, k } => {
                        if free_common != m {
                            continue;
                        }
                        (
                            RelationKind::TypeIII,
                            vec![
                                (dotted_on(&a, &dots, &[(j, k)]), one()),
                                (dotted_on(&b, &dots, &[(i, j)]), -one()),
                            ],
                        )
                    }
                };
                out.push(Relation { kind, class: HomClass::from_terms(terms)? });
            }
        }
    }
    Ok(out)
}

/// Free circles of S'_a ∩ S'_b as (vertex, sign relative to the smallest vertex).
pub fn intersection_circles(a: &Matching, b: &Matching) -> Result<Vec<Vec<(usize, i8)>>> {
    let s = subspace_of(a, Variant::Primed).intersect(&subspace_of(b, Variant::Primed))?;
    if s.is_empty() {
        return Err(Error::Incompatible);
    }
    Ok(s.free_classes())
}

/// Image of the class of S_a ∩ S_b with the circles `free` (indices into
/// [`intersection_circles`]) free and the rest pinned, in H_*(S_a).
pub fn pushforward(a: &Matching, b: &Matching, free: &[usize]) -> Result<HomClass> {
    let circles = intersection_circles(a, b)?;
    let m = free.len();
    let mut acc: Vec<(Vec<Arc>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for &c in free {
        let circle = circles.get(c).ok_or_else(|| Error::Domain(format!("no circle {c}")))?;
        let sign_of = |v: usize| circle.iter().find(|&&(x, _)| x == v).map(|&(_, s)| s);
        let options: Vec<(Arc, i8)> = a
            .arcs()
            .iter()
            .filter_map(|&e| sign_of(e.0).map(|s| (e, s)))
            .collect();
        acc = acc
            .into_iter()
            .flat_map(|(free_arcs, coeff)| {
                options.iter().map(move |&(e, s)| {
                    let mut f = free_arcs.clone();
                    f.push(e);
                    (f, &coeff * BigInt::from(s))
                })
            })
            .collect();
    }
    let mut out = HomClass::zero(a.n(), a.k(), m);
    for (free_arcs, coeff) in acc {
        let dotted: Vec<Arc> = a.arcs().iter().copied().filter(|e| !free_arcs.contains(e)).collect();
        out.add_term(DottedMatching::new(a.clone(), &dotted)?, coeff)?;
    }
    Ok(out)
}

/// The same map, restricted to arrow pairs b → a.
pub fn pushforward_inclusion(a: &Matching, b: &Matching, free: &[usize]) -> Result<HomClass> {
    arrow_move(b, a).ok_or(Error::NotAnArrowPair)?;
    pushforward(a, b, free)
}

/// Rows ψ_{b,c}(F) - ψ_{c,b}(F) over arrow pairs inside `allowed`, grading m.
pub fn psi_minus_rows(graph: &ArrowGraph, m: usize, allowed: &[bool]) -> Result<Vec<HomClass>> {
    let mut rows = Vec::new();
    for (x, y) in graph.edges() {
        if !allowed[x] || !allowed[y] {
            continue;
        }
        let (b, c) = (&graph.nodes[x], &graph.nodes[y]);
        let circles = intersection_circles(b, c)?.len();
        for free in (0..circles).combinations(m) {
            let mut row = pushforward(b, c, &free)?;
            row.add(&pushforward(c, b, &free)?, &-BigInt::one())?;
            rows.push(row);
        }
    }
    Ok(rows)
}

fn class_rows(rows: &[HomClass], index: &KeyIndex<DottedMatching>) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| {
            let mut v = vec![Q::zero(); index.len()];
            for (x, c) in r.terms() {
                v[index.get(x).expect("generator")] = Q::from_integer(c.clone());
            }
            v
        })
        .collect()
}

/// Rank of H_{2m} for m = 0..=k from the standard basis count.
pub fn betti(n: usize, k: usize) -> Result<Vec<usize>> {
    if 2 * k > n {
        return Err(Error::Domain(format!("k = {k} is out of range for n = {n}")));
    }
    Ok((0..=k).map(|m| standard_basis(n, k, m).len()).collect())
}

/// Ranks of the cokernel of ψ⁻ restricted to the matchings flagged in `allowed`.
pub fn cokernel_ranks(graph: &ArrowGraph, allowed: &[bool]) -> Result<Vec<usize>> {
    (0..=graph.k)
        .map(|m| {
            let gens: Vec<DottedMatching> = dotted_generators(graph.n, graph.k, m)?
                .into_iter()
                .filter(|g| allowed[graph.index(g.base()).unwrap()])
                .collect();
            let index = KeyIndex::new(gens);
            let rows = psi_minus_rows(graph, m, allowed)?;
            let r = Rref::new(class_rows(&rows, &index), index.len()).rank();
            Ok(index.len() - r)
        })
        .collect()
}

/// Betti numbers as the cokernel of ψ⁻ over all arrow pairs.
pub fn presentation_betti(n: usize, k: usize) -> Result<Vec<usize>> {
    let g = ArrowGraph::new(n, k)?;
    cokernel_ranks(&g, &vec![true; g.len()])
}

/// Cokernel ranks of the unions S_{≤a} along a linear order (one entry per prefix).
pub fn filtration_ranks(graph: &ArrowGraph, order: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut allowed = vec![false; graph.len()];
    order
        .iter()
        .map(|&x| {
            allowed[x] = true;
            cokernel_ranks(graph, &allowed)
        })
        .collect()
}

/// Whether the local relations and the image of ψ⁻ span the same subspace in grading m.
pub fn relations_match_presentation(n: usize, k: usize, m: usize) -> Result<bool> {
    let g = ArrowGraph::new(n, k)?;
    let index = KeyIndex::new(dotted_generators(n, k, m)?);
    let local: Vec<HomClass> = relation_instances(n, k, m)?.into_iter().map(|r| r.class).collect();
    let psi = psi_minus_rows(&g, m, &vec![true; g.len()])?;
    Ok(crate::linalg::same_row_space(&class_rows(&local, &index), &class_rows(&psi, &index), index.len()))
}

/// Linear-algebra reduction to the standard basis in one grading.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub standard: Vec<DottedMatching>,
    index: KeyIndex<DottedMatching>,
    nonstandard: usize,
    /// Pivot rows, one per nonstandard column, restricted to the standard columns.
    tails: Vec<Vec<Q>>,
}

impl Reducer {
    /// `order` fixes the elimination order of nonstandard columns by base matching.
    pub fn new(n: usize, k: usize, m: usize, order: Option<&[Matching]>) -> Result<Self> {
        let standard = standard_basis(n, k, m);
        let mut nonstd: Vec<DottedMatching> =
            dotted_generators(n, k, m)?.into_iter().filter(|g| !g.is_standard()).collect();
        if let Some(order) = order {
            let pos = |g: &DottedMatching| order.iter().position(|x| x == g.base()).unwrap_or(usize::MAX);
            nonstd.sort_by(|x, y| pos(x).cmp(&pos(y)).then_with(|| x.cmp(y)));
        }
        let nonstandard = nonstd.len();
        let index = KeyIndex::new(nonstd.into_iter().chain(standard.iter().cloned()).collect());
        let rows: Vec<HomClass> = relation_instances(n, k, m)?.into_iter().map(|r| r.class).collect();
        let rref = Rref::new(class_rows(&rows, &index), index.len());
        if rref.pivots.len() != nonstandard || rref.pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::SolveFailed(format!(
                "relations do not eliminate every nonstandard generator at ({n},{k},{m})"
            )));
        }
        let tails = rref.rows.iter().map(|r| r[nonstandard..].to_vec()).collect();
        Ok(Reducer { n, k, m, standard, index, nonstandard, tails })
    }

    /// Coordinates of x over `self.standard`.
    pub fn coordinates(&self, x: &HomClass) -> Result<Vec<BigInt>> {
        if x.grading() != self.m || x.n() != self.n || x.k() != self.k {
            return Err(Error::InhomogeneousClass);
        }
        let mut out = vec![Q::zero(); self.standard.len()];
        for (g, c) in x.terms() {
            let col = self.index.get(g).expect("every dotted matching is a generator");
            let c = Q::from_integer(c.clone());
            if col < self.nonstandard {
                for (o, t) in out.iter_mut().zip(&self.tails[col]) {
                    *o -= &c * t;
                }
            } else {
                out[col - self.nonstandard] += c;
            }
        }
        out.iter()
            .map(|v| to_integer(v).ok_or_else(|| Error::SolveFailed("non-integral coordinate".into())))
            .collect()
    }

    pub fn reduce(&self, x: &HomClass) -> Result<HomClass> {
        let coords = self.coordinates(x)?;
        self.class_from(&coords)
    }

    pub fn class_from(&self, coords: &[BigInt]) -> Result<HomClass> {
        let mut out = HomClass::zero(self.n, self.k, self.m);
        for (g, c) in self.standard.iter().zip(coords) {
            out.add_term(g.clone(), c.clone())?;
        }
        Ok(out)
    }
}

/// Right-hand side of one rewriting step.
type Rewrite = Vec<(DottedMatching, i64)>;

/// Rewriting steps available on a single dotted matching.
fn redexes(x: &DottedMatching) -> Vec<Rewrite> {
    let base = x.base();
    let parents = base.parents();
    let mut out = Vec::new();
    for (idx, &(j, k)) in base.arcs().iter().enumerate() {
        let Some(p) = parents[idx] else { continue };
        if !x.is_dotted((j, k)) {
            continue;
        }
        let (i, l) = base.arcs()[p];
        let others: Vec<Arc> = x.dotted().iter().copied().filter(|&d| d != (i, l) && d != (j, k)).collect();
        let make = |dij: bool, dkl: bool| {
            let mut arcs: Vec<Arc> = base.arcs().iter().copied().filter(|&e| e != (i, l) && e != (j, k)).collect();
            arcs.extend([(i, j), (k, l)]);
            let mut dots = others.clone();
            if dij {
                dots.push((i, j));
            }
            if dkl {
                dots.push((k, l));
            }
            DottedMatching::new(Matching::new(base.n(), &arcs, base.rays()).expect("unnesting is valid"), &dots).unwrap()
        };
        if x.is_dotted((i, l)) {
            out.push(vec![(make(true, true), 1)]);
        } else {
            let mut n1_dots = others.clone();
            n1_dots.push((i, l));
            let n1 = DottedMatching::new(base.clone(), &n1_dots).unwrap();
            out.push(vec![(make(true, false), 1), (make(false, true), 1), (n1, 1)]);
        }
    }
    if !out.is_empty() {
        return out;
    }
    let rightmost = x
        .dotted()
        .iter()
        .copied()
        .filter(|&(_, j)| base.rays().iter().any(|&r| r > j))
        .max();
    if let Some((i, j)) = rightmost {
        let k = *base.rays().iter().find(|&&r| r > j).unwrap();
        let mut arcs: Vec<Arc> = base.arcs().iter().copied().filter(|&e| e != (i, j)).collect();
        arcs.push((j, k));
        let rays: Vec<usize> = base.rays().iter().map(|&r| if r == k { i } else { r }).collect();
        let mut dots: Vec<Arc> = x.dotted().iter().copied().filter(|&d| d != (i, j)).collect();
        dots.push((j, k));
        let m = Matching::new(base.n(), &arcs, &rays).expect("ray shift is valid");
        out.push(vec![(DottedMatching::new(m, &dots).unwrap(), 1)]);
    }
    out
}

/// Reduction by oriented rewriting with randomized redex choice.
pub fn rewrite_reduce<R: Rng>(x: &HomClass, rng: &mut R) -> Result<HomClass> {
    let mut cur = x.clone();
    loop {
        let pending: Vec<(DottedMatching, Vec<Rewrite>)> = cur
            .terms()
            .keys()
            .map(|g| (g.clone(), redexes(g)))
            .filter(|(_, r)| !r.is_empty())
            .collect();
        if pending.is_empty() {
            return Ok(cur);
        }
        let (g, choices) = &pending[rng.gen_range(0..pending.len())];
        let rhs = &choices[rng.gen_range(0..choices.len())];
        let c = cur.coefficient(g);
        cur.add_term(g.clone(), -c.clone())?;
        for (y, s) in rhs {
            cur.add_term(y.clone(), &c * BigInt::from(*s))?;
        }
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::specht::zeta;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn reduction_is_a_projection(n in 0usize..=7, k_seed in any::<usize>(), m_seed in any::<usize>(), pick in any::<usize>()) {
            let k = k_seed % (n / 2 + 1);
            let m = m_seed % (k + 1);
            let gens = dotted_generators(n, k, m).unwrap();
            let x = HomClass::single(gens[pick % gens.len()].clone());
            let r = Reducer::new(n, k, m, None).unwrap();
            let y = r.reduce(&x).unwrap();
            prop_assert!(y.terms().keys().all(DottedMatching::is_standard));
            prop_assert_eq!(r.reduce(&y).unwrap(), y.clone());
            prop_assert_eq!(zeta(&y), zeta(&x));
        }
    }
}
