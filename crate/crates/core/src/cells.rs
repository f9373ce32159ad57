//! Cell decompositions of S_a: arc-forest cells c(J) and cartesian cells c(I).

use crate::diagram::{arrow_move, ArrowMove};
use crate::error::{Arc, Error, Result};
use crate::matching::{DottedMatching, Matching};
use crate::sphere::{parity_sign, subspace_of, SignedPartitionSubspace, Variant};

/// An element of E ∪ M: a parent-child edge or a root of the nesting forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForestElement {
    Edge { parent: Arc, child: Arc },
    Root(Arc),
}

/// Nesting forest of the arcs of a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcForest {
    pub arcs: Vec<Arc>,
    pub edges: Vec<(Arc, Arc)>,
    pub roots: Vec<Arc>,
}

impl ArcForest {
    /// Edges followed by roots; always k elements.
    pub fn elements(&self) -> Vec<ForestElement> {
        self.edges
            .iter()
            .map(|&(parent, child)| ForestElement::Edge { parent, child })
            .chain(self.roots.iter().map(|&r| ForestElement::Root(r)))
            .collect()
    }
}

/// Edges join each arc to the arc directly above it; roots are the outermost arcs.
pub fn arc_forest(a: &Matching) -> ArcForest {
    let parents = a.parents();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (x, &arc) in a.arcs().iter().enumerate() {
        match parents[x] {
            Some(p) => edges.push((a.arcs()[p], arc)),
            None => roots.push(arc),
        }
    }
    ArcForest { arcs: a.arcs().to_vec(), edges, roots }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCell {
    pub j: Vec<ForestElement>,
    pub dimension: usize,
}

/// All 2^k cells c(J), with dimension 2(k - |J|).
pub fn forest_cells(a: &Matching) -> Vec<ForestCell> {
    let elements = arc_forest(a).elements();
    let k = elements.len();
    (0..1usize << k)
        .map(|mask| {
            let j: Vec<ForestElement> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| elements[b]).collect();
            ForestCell { dimension: 2 * (k - j.len()), j }
        })
        .collect()
}

/// The closure of c(J) inside S_a: S_a with the constraints of J imposed.
pub fn cell_closure(a: &Matching, j: &[ForestElement]) -> SignedPartitionSubspace {
    let mut s = subspace_of(a, Variant::Plain);
    for e in j {
        match *e {
            ForestElement::Edge { parent, child } => s.relate(parent.0, child.0, 1),
            ForestElement::Root(r) => s.pin(r.0, parity_sign(r.0)),
        }
        .expect("arc endpoints are valid slots");
    }
    s
}

/// Coefficients of Σ_cells t^dim, indexed by dimension.
pub fn poincare(dims: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for d in dims {
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

/// Coefficients of (1 + t²)^k.
pub fn sphere_product_poincare(k: usize) -> Vec<usize> {
    let mut out = vec![0; 2 * k + 1];
    let mut c = 1usize;
    for i in 0..=k {
        out[2 * i] = c;
        c = c * (k - i) / (i + 1);
    }
    out
}

/// The forest element that the move b → a pins down.
pub fn designated_element(a: &Matching, b: &Matching) -> Result<ForestElement> {
    match arrow_move(b, a).ok_or(Error::NotAnArrowPair)? {
        ArrowMove::Quadruple { i, j, k, l } => Ok(ForestElement::Edge { parent: (i, l), child: (j, k) }),
        ArrowMove::Triple { i, j, .. } => Ok(ForestElement::Root((i, j))),
    }
}

/// Cells of S_a whose J contains the element forced by b → a; their union is S_a ∩ S_b.
pub fn subcomplex_cells(a: &Matching, b: &Matching) -> Result<Vec<ForestCell>> {
    let d = designated_element(a, b)?;
    Ok(forest_cells(a).into_iter().filter(|c| c.j.contains(&d)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianCell {
    /// Free (undotted) arcs.
    pub free: Vec<Arc>,
    pub dimension: usize,
}

impl CartesianCell {
    pub fn dotted_matching(&self, a: &Matching) -> DottedMatching {
        let dotted: Vec<Arc> = a.arcs().iter().copied().filter(|x| !self.free.contains(x)).collect();
        DottedMatching::new(a.clone(), &dotted).expect("subset of arcs")
    }

    /// Free arcs vary, the others sit at (-1)^i p on their left endpoint.
    pub fn closure(&self, a: &Matching) -> SignedPartitionSubspace {
        let mut s = subspace_of(a, Variant::Plain);
        for &(i, _) in a.arcs().iter().filter(|x| !self.free.contains(x)) {
            s.pin(i, parity_sign(i)).expect("valid slot");
        }
        s
    }
}

/// Cells indexed by subsets I of free arcs, dimension 2|I|.
pub fn cartesian_cells(a: &Matching) -> Vec<CartesianCell> {
    let arcs = a.arcs();
    (0..1usize << arcs.len())
        .map(|mask| {
            let free: Vec<Arc> = (0..arcs.len()).filter(|b| mask >> b & 1 == 1).map(|b| arcs[b]).collect();
            CartesianCell { dimension: 2 * free.len(), free }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::arrow_successors;
    use crate::matching::enumerate;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn forest_examples() {
        let f = arc_forest(&mm("4: u1-4 u2-3"));
        assert_eq!(f.edges, vec![((1, 4), (2, 3))]);
        assert_eq!(f.roots, vec![(1, 4)]);
        let f = arc_forest(&mm("4: u1-2 u3-4"));
        assert!(f.edges.is_empty());
        assert_eq!(f.roots.len(), 2);
        assert!(arc_forest(&mm("2: r1 r2")).elements().is_empty());
    }

    #[test]
    fn cell_dimensions() {
        let dims = |s: &str| {
            let mut d: Vec<usize> = forest_cells(&mm(s)).iter().map(|c| c.dimension).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(dims("2: u1-2"), vec![0, 2]);
        assert_eq!(dims("4: u1-4 u2-3"), vec![0, 2, 2, 4]);
        let mut c: Vec<usize> = cartesian_cells(&mm("4: u1-2 u3-4")).iter().map(|c| c.dimension).collect();
        c.sort_unstable();
        assert_eq!(c, vec![0, 2, 2, 4]);
    }

    #[test]
    fn triple_move_pins_three_points() {
        let a = mm("4: r1 u2-3 r4");
        let b = mm("4: r1 r2 u3-4");
        let cells = subcomplex_cells(&a, &b).unwrap();
        assert_eq!(cells.len(), 1);
        let s = cell_closure(&a, &cells[0].j);
        assert_eq!(s.as_point(), Some(vec![-1, 1, 1, 1]));
        assert_eq!(subcomplex_cells(&a, &a), Err(Error::NotAnArrowPair));
    }

    #[test]
    fn decompositions_have_sphere_product_homology() {
        for n in 0..=7 {
            for k in 0..=n / 2 {
                for a in enumerate(n, k).unwrap() {
                    let f = arc_forest(&a);
                    assert_eq!(f.edges.len() + f.roots.len(), k);
                    let p = poincare(forest_cells(&a).iter().map(|c| c.dimension));
                    assert_eq!(p, sphere_product_poincare(k));
                    let p = poincare(cartesian_cells(&a).iter().map(|c| c.dimension));
                    assert_eq!(p, sphere_product_poincare(k));
                    let sa = subspace_of(&a, Variant::Plain);
                    for b in enumerate(n, k).unwrap().iter().filter(|b| arrow_successors(b).contains(&a)) {
                        let sab = sa.intersect(&subspace_of(b, Variant::Plain)).unwrap();
                        let cells = subcomplex_cells(&a, b).unwrap();
                        assert_eq!(poincare(cells.iter().map(|c| c.dimension)), sphere_product_poincare(k - 1));
                        for c in &cells {
                            assert!(sab.contains(&cell_closure(&a, &c.j)).unwrap());
                        }
                        assert_eq!(cell_closure(&a, &[designated_element(&a, b).unwrap()]), sab);
                    }
                }
            }
        }
    }
}
