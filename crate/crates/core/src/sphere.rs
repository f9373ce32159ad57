//! Subspaces of (S²)^n cut out by equations x_i = ±x_j and pins x_i = ±p.

use std::fmt;

use crate::error::{Error, Result};
use crate::matching::Matching;

/// Which component family a subspace belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// S_a: x_i = x_j on arcs, ray i pinned to (-1)^i p.
    Plain,
    /// S'_a: x_i = -x_j on arcs, rays pinned to p.
    Primed,
}

/// Value of one slot after normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotValue {
    /// ±p
    Pinned(i8),
    /// sign · x_rep, with rep the smallest slot of a free class (1-based)
    Free { rep: usize, sign: i8 },
}

/// Union-find with a relative sign on each parent link and optional pins at roots.
#[derive(Clone, Debug)]
pub struct SignedPartitionSubspace {
    n: usize,
    parent: Vec<usize>,
    /// x_i = sign[i] · x_parent[i]
    sign: Vec<i8>,
    /// x_root = pin · p
    pin: Vec<Option<i8>>,
    empty: bool,
}

impl SignedPartitionSubspace {
    /// The whole space (S²)^n.
    pub fn full(n: usize) -> Self {
        SignedPartitionSubspace { n, parent: (0..n).collect(), sign: vec![1; n], pin: vec![None; n], empty: false }
    }

    pub fn empty(n: usize) -> Self {
        SignedPartitionSubspace { empty: true, ..Self::full(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    fn find(&self, mut i: usize) -> (usize, i8) {
        let mut s = 1;
        while self.parent[i] != i {
            s *= self.sign[i];
            i = self.parent[i];
        }
        (i, s)
    }

    fn check_slot(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        Ok(i - 1)
    }

    /// Imposes x_i = s · x_j (1-based slots).
    pub fn relate(&mut self, i: usize, j: usize, s: i8) -> Result<()> {
        let (i, j) = (self.check_slot(i)?, self.check_slot(j)?);
        self.relate0(i, j, s);
        Ok(())
    }

    fn relate0(&mut self, i: usize, j: usize, s: i8) {
        if self.empty {
            return;
        }
        let (ri, si) = self.find(i);
        let (rj, sj) = self.find(j);
        if ri == rj {
            if si != s * sj {
                self.empty = true;
            }
            return;
        }
        // x_ri = si x_i = si s x_j = si s sj x_rj
        let link = si * s * sj;
        self.parent[ri] = rj;
        self.sign[ri] = link;
        if let Some(p) = self.pin[ri].take() {
            self.pin0(rj, link * p);
        }
    }

    /// Imposes x_i = value · p.
    pub fn pin(&mut self, i: usize, value: i8) -> Result<()> {
        let i = self.check_slot(i)?;
        self.pin0(i, value);
        Ok(())
    }

    fn pin0(&mut self, i: usize, value: i8) {
        if self.empty {
            return;
        }
        let (r, s) = self.find(i);
        let v = s * value;
        match self.pin[r] {
            Some(existing) if existing != v => self.empty = true,
            _ => self.pin[r] = Some(v),
        }
    }

    /// Normal form of every slot; None when empty.
    pub fn canonical(&self) -> Option<Vec<SlotValue>> {
        if self.empty {
            return None;
        }
        let mut rep = vec![usize::MAX; self.n];
        let found: Vec<(usize, i8)> = (0..self.n).map(|i| self.find(i)).collect();
        for (i, &(r, _)) in found.iter().enumerate() {
            rep[r] = rep[r].min(i);
        }
        Some(
            found
                .iter()
                .map(|&(r, s)| match self.pin[r] {
                    Some(p) => SlotValue::Pinned(s * p),
                    None => {
                        let (_, s_rep) = found[rep[r]];
                        SlotValue::Free { rep: rep[r] + 1, sign: s * s_rep }
                    }
                })
                .collect(),
        )
    }

    /// Free classes as (slot, sign relative to the smallest slot), 1-based.
    pub fn free_classes(&self) -> Vec<Vec<(usize, i8)>> {
        let Some(c) = self.canonical() else { return Vec::new() };
        let mut classes: Vec<Vec<(usize, i8)>> = Vec::new();
        for (i, v) in c.iter().enumerate() {
            if let SlotValue::Free { rep, sign } = *v {
                match classes.iter_mut().find(|cl| cl[0].0 == rep) {
                    Some(class) => class.push((i + 1, sign)),
                    None => classes.push(vec![(i + 1, sign)]),
                }
            }
        }
        classes
    }

    /// Real dimension: 2 per free class; None when empty.
    pub fn dimension(&self) -> Option<usize> {
        (!self.empty).then(|| 2 * self.free_classes().len())
    }

    /// The unique point, if the subspace is a single point.
    pub fn as_point(&self) -> Option<Vec<i8>> {
        self.canonical()?
            .iter()
            .map(|v| match v {
                SlotValue::Pinned(p) => Some(*p),
                SlotValue::Free { .. } => None,
            })
            .collect()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SlotMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        if other.empty {
            out.empty = true;
            return Ok(out);
        }
        for i in 0..other.n {
            let (r, s) = other.find(i);
            if r != i {
                out.relate0(i, r, s);
            }
            if let Some(p) = other.pin[i] {
                out.pin0(i, p);
            }
        }
        Ok(out)
    }

    /// Whether `inner` ⊆ self.
    pub fn contains(&self, inner: &Self) -> Result<bool> {
        if self.n != inner.n {
            return Err(Error::SlotMismatch(self.n, inner.n));
        }
        let Some(b) = inner.canonical() else { return Ok(true) };
        if self.empty {
            return Ok(false);
        }
        let implied = |i: usize, r: usize, s: i8| match (b[i], b[r]) {
            (SlotValue::Pinned(x), SlotValue::Pinned(y)) => x == s * y,
            (SlotValue::Free { rep: p, sign: x }, SlotValue::Free { rep: q, sign: y }) => p == q && x == s * y,
            _ => false,
        };
        for (i, &slot) in b.iter().enumerate() {
            let (r, s) = self.find(i);
            if r != i && !implied(i, r, s) {
                return Ok(false);
            }
            if let Some(p) = self.pin[i] {
                if slot != SlotValue::Pinned(p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Image under a slot map.
    pub fn apply(&self, map: &PointMap) -> Result<Self> {
        if map.source != self.n {
            return Err(Error::SlotMismatch(map.source, self.n));
        }
        let mut target_of = vec![None; self.n];
        let mut out = SignedPartitionSubspace::full(map.slots.len());
        for (t, slot) in map.slots.iter().enumerate() {
            match *slot {
                MapSlot::Pin(p) => out.pin0(t, p),
                MapSlot::Copy { src, sign } => {
                    if target_of[src - 1].replace((t, sign)).is_some() {
                        return Err(Error::Domain(format!("source slot {src} copied twice")));
                    }
                }
            }
        }
        if self.empty {
            out.empty = true;
            return Ok(out);
        }
        let target = |i: usize| target_of[i].ok_or_else(|| Error::Domain(format!("source slot {} dropped", i + 1)));
        for i in 0..self.n {
            let (ti, si) = target(i)?;
            let (r, s) = self.find(i);
            if r != i {
                // y_ti = si x_i = si s x_r = si s sr y_tr
                let (tr, sr) = target(r)?;
                out.relate0(ti, tr, si * s * sr);
            }
            if let Some(p) = self.pin[i] {
                out.pin0(ti, si * p);
            }
        }
        Ok(out)
    }
}

impl PartialEq for SignedPartitionSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }
}

impl Eq for SignedPartitionSubspace {}

impl fmt::Display for SignedPartitionSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(c) = self.canonical() else { return write!(f, "empty") };
        let parts: Vec<String> = c
            .iter()
            .map(|v| match *v {
                SlotValue::Pinned(1) => "p".to_string(),
                SlotValue::Pinned(_) => "-p".to_string(),
                SlotValue::Free { rep, sign: 1 } => format!("x{rep}"),
                SlotValue::Free { rep, .. } => format!("-x{rep}"),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// S_a or S'_a.
pub fn subspace_of(a: &Matching, variant: Variant) -> SignedPartitionSubspace {
    let mut s = SignedPartitionSubspace::full(a.n());
    let arc_sign = match variant {
        Variant::Plain => 1,
        Variant::Primed => -1,
    };
    for &(i, j) in a.arcs() {
        s.relate0(i - 1, j - 1, arc_sign);
    }
    for &r in a.rays() {
        let value = match variant {
            Variant::Plain => parity_sign(r),
            Variant::Primed => 1,
        };
        s.pin0(r - 1, value);
    }
    s
}

/// (-1)^i
pub fn parity_sign(i: usize) -> i8 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapSlot {
    Pin(i8),
    /// sign · x_src, 1-based source slot
    Copy { src: usize, sign: i8 },
}

/// A map (S²)^source → (S²)^target whose slots are poles or signed copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    pub source: usize,
    pub slots: Vec<MapSlot>,
}

impl PointMap {
    /// γ: x ↦ ((-1)^i x_i).
    pub fn gamma(n: usize) -> Self {
        PointMap { source: n, slots: (1..=n).map(|i| MapSlot::Copy { src: i, sign: parity_sign(i) }).collect() }
    }

    fn pad(n: usize, target: usize) -> Result<usize> {
        let pad = target as isize - n as isize;
        if pad < 0 || pad as usize > n || (pad as usize) % 2 != n % 2 {
            return Err(Error::PadSizeMismatch { pad, n });
        }
        Ok(pad as usize)
    }

    /// η: prepend alternating poles ending with -p next to x_1.
    pub fn eta(n: usize, target: usize) -> Result<Self> {
        let pad = Self::pad(n, target)?;
        let mut slots: Vec<MapSlot> = (1..=pad).map(|t| MapSlot::Pin(parity_sign(pad - t + 1))).collect();
        slots.extend((1..=n).map(|i| MapSlot::Copy { src: i, sign: 1 }));
        Ok(PointMap { source: n, slots })
    }

    /// ι_n: prepend constant poles (-1)^{n-1} p and scale the copy by (-1)^n.
    pub fn iota(n: usize, target: usize) -> Result<Self> {
        let pad = Self::pad(n, target)?;
        let mut slots: Vec<MapSlot> = vec![MapSlot::Pin(parity_sign(n + 1)); pad];
        slots.extend((1..=n).map(|i| MapSlot::Copy { src: i, sign: parity_sign(n) }));
        Ok(PointMap { source: n, slots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::glue;
    use crate::matching::enumerate;

    fn mm(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn x31_example() {
        let a = subspace_of(&mm("4: u1-2 r3 r4"), Variant::Plain);
        let b = subspace_of(&mm("4: r1 u2-3 r4"), Variant::Plain);
        let c = subspace_of(&mm("4: r1 r2 u3-4"), Variant::Plain);
        assert_eq!(a.to_string(), "(x1, x1, -p, p)");
        assert_eq!(subspace_of(&mm("4: u1-2 r3 r4"), Variant::Primed).to_string(), "(x1, -x1, p, p)");
        assert_eq!(a.intersect(&b).unwrap().as_point(), Some(vec![-1, -1, -1, 1]));
        assert_eq!(b.intersect(&c).unwrap().as_point(), Some(vec![-1, 1, 1, 1]));
        assert!(a.intersect(&c).unwrap().is_empty());
        assert_eq!(a.intersect(&a).unwrap(), a);
        for s in [&a, &b, &c] {
            assert_eq!(s.dimension(), Some(2));
        }
        let ab = a.intersect(&b).unwrap();
        assert!(a.contains(&ab).unwrap());
        assert!(b.contains(&a.intersect(&c).unwrap()).unwrap());
        assert!(!ab.contains(&a).unwrap());
    }

    #[test]
    fn sign_cycles_empty_the_space() {
        let mut s = SignedPartitionSubspace::full(3);
        s.relate(1, 2, -1).unwrap();
        s.relate(2, 3, -1).unwrap();
        assert!(!s.is_empty());
        s.relate(1, 3, -1).unwrap();
        assert!(s.is_empty());
        let mut t = SignedPartitionSubspace::full(2);
        t.pin(1, 1).unwrap();
        t.relate(2, 1, -1).unwrap();
        assert_eq!(t.as_point(), Some(vec![1, -1]));
        t.pin(2, 1).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn gamma_swaps_families() {
        for n in 0..=8 {
            for k in 0..=n / 2 {
                for a in enumerate(n, k).unwrap() {
                    let plain = subspace_of(&a, Variant::Plain);
                    let primed = subspace_of(&a, Variant::Primed);
                    let g = PointMap::gamma(n);
                    assert_eq!(plain.apply(&g).unwrap(), primed);
                    assert_eq!(plain.apply(&g).unwrap().apply(&g).unwrap(), plain);
                    assert_eq!(plain.dimension(), Some(2 * k));
                }
            }
        }
    }

    #[test]
    fn eta_lands_in_completion_and_square_commutes() {
        for n in 1..=7 {
            for k in 0..=n / 2 {
                let target = 2 * n - 2 * k;
                let eta = PointMap::eta(n, target).unwrap();
                let iota = PointMap::iota(n, target).unwrap();
                for a in enumerate(n, k).unwrap() {
                    let s = subspace_of(&a, Variant::Plain);
                    let image = s.apply(&eta).unwrap();
                    assert!(subspace_of(&a.complete(), Variant::Plain).contains(&image).unwrap());
                    let left = image.apply(&PointMap::gamma(target)).unwrap();
                    let right = s.apply(&PointMap::gamma(n)).unwrap().apply(&iota).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
        assert!(matches!(PointMap::eta(3, 5), Err(Error::PadSizeMismatch { .. })));
        assert!(matches!(PointMap::iota(4, 3), Err(Error::PadSizeMismatch { .. })));
    }

    #[test]
    fn free_classes_count_circles() {
        for n in 1..=8 {
            for k in 0..=n / 2 {
                let all = enumerate(n, k).unwrap();
                for a in &all {
                    for b in &all {
                        let g = glue(a, b).unwrap();
                        let s = subspace_of(a, Variant::Plain).intersect(&subspace_of(b, Variant::Plain)).unwrap();
                        if g.is_compatible() {
                            assert_eq!(s.free_classes().len(), g.circles().count(), "{a} {b}");
                        } else {
                            assert!(s.is_empty(), "{a} {b}");
                        }
                    }
                }
            }
        }
    }
}
