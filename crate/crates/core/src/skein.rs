//! Skein evaluation: glue a flattened braid below M, resolve each crossing,
//! evaluate closed components by the dot rules, and reduce.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::ActionEngine;
use crate::error::{Arc, Error, Result};
use crate::homology::{HomClass, Reducer};
use crate::matching::{DottedMatching, Matching};
use crate::perm::Perm;

/// Crossing layers in the order they meet M: `layers[0]` is glued directly below M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTangle {
    pub n: usize,
    pub layers: Vec<usize>,
}

/// σ = s_{w_1} ∘ ... ∘ s_{w_r} acts on M by s_{w_r} first, so the last letter sits next to M.
pub fn flatten(n: usize, word: &[usize]) -> Result<FlatTangle> {
    if let Some(&bad) = word.iter().find(|&&i| i == 0 || i >= n) {
        return Err(Error::BadPermutation(format!("s{bad} is not a generator on {n} letters")));
    }
    Ok(FlatTangle { n, layers: word.iter().rev().copied().collect() })
}

/// Where the turnback smoothing carries an extra dot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DotPlacement {
    None,
    /// On the cap facing M.
    Upper,
    /// On the cup facing the output.
    Lower,
    Both,
}

impl DotPlacement {
    pub const ALL: [DotPlacement; 4] = [DotPlacement::None, DotPlacement::Upper, DotPlacement::Lower, DotPlacement::Both];

    fn dots(self) -> (u32, u32) {
        match self {
            DotPlacement::None => (0, 0),
            DotPlacement::Upper => (1, 0),
            DotPlacement::Lower => (0, 1),
            DotPlacement::Both => (1, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionConvention {
    pub identity_coefficient: i64,
    pub turnback_coefficient: i64,
    pub turnback_dots: DotPlacement,
    /// Value of a circle carrying one dot.
    pub dotted_circle: i64,
}

impl ResolutionConvention {
    /// The searched family; undotted circles (−2) and doubly dotted components (0) stay fixed.
    pub fn family() -> Vec<ResolutionConvention> {
        let mut out = Vec::new();
        for identity_coefficient in [-1, 1] {
            for turnback_coefficient in [-2, -1, 1, 2] {
                for turnback_dots in DotPlacement::ALL {
                    for dotted_circle in [0, 1] {
                        out.push(ResolutionConvention {
                            identity_coefficient,
                            turnback_coefficient,
                            turnback_dots,
                            dotted_circle,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for ResolutionConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "identity ×{}, turnback ×{} with dots {:?}, one-dot circle ×{}",
            self.identity_coefficient, self.turnback_coefficient, self.turnback_dots, self.dotted_circle
        )
    }
}

const UNDOTTED_CIRCLE: i64 = -2;

/// One resolution of every crossing, before evaluation.
#[derive(Clone, Debug)]
pub struct ResolvedDiagram {
    pub n: usize,
    pub levels: usize,
    /// (node, node, dots); node = level * n + position - 1.
    pub edges: Vec<(usize, usize, u32)>,
    /// Level-0 nodes attached to rays of M.
    pub rays: Vec<usize>,
    pub coefficient: i64,
}

impl ResolvedDiagram {
    /// Resolution `mask` (bit t set = layer t uses the turnback) of M glued to t.
    pub fn new(x: &DottedMatching, t: &FlatTangle, mask: u64, c: &ResolutionConvention) -> Self {
        let n = x.n();
        let mut edges = Vec::new();
        for &(i, j) in x.base().arcs() {
            edges.push((i - 1, j - 1, u32::from(x.is_dotted((i, j)))));
        }
        let mut coefficient = 1;
        for (layer, &p) in t.layers.iter().enumerate() {
            let (above, below) = (layer * n, (layer + 1) * n);
            let turn = mask >> layer & 1 == 1;
            for q in 1..=n {
                if !(turn && (q == p || q == p + 1)) {
                    edges.push((above + q - 1, below + q - 1, 0));
                }
            }
            if turn {
                let (up, down) = c.turnback_dots.dots();
                edges.push((above + p - 1, above + p, up));
                edges.push((below + p - 1, below + p, down));
                coefficient *= c.turnback_coefficient;
            } else {
                coefficient *= c.identity_coefficient;
            }
        }
        ResolvedDiagram {
            n,
            levels: t.layers.len(),
            edges,
            rays: x.base().rays().iter().map(|r| r - 1).collect(),
            coefficient,
        }
    }

    /// Applies the component rules in the given order of components; None means the diagram is zero.
    fn evaluate_with<R: Rng>(&self, k: usize, c: &ResolutionConvention, rng: Option<&mut R>) -> Result<Option<(DottedMatching, i64)>> {
        let total = (self.levels + 1) * self.n;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        #[derive(Default)]
        struct Comp {
            dots: u32,
            rays: u32,
            outputs: Vec<usize>,
        }
        let mut comps: HashMap<usize, Comp> = HashMap::new();
        for &(a, _, d) in &self.edges {
            comps.entry(find(&mut parent, a)).or_default().dots += d;
        }
        for &r in &self.rays {
            let e = comps.entry(find(&mut parent, r)).or_default();
            e.rays += 1;
            e.dots += 1;
        }
        let out_base = self.levels * self.n;
        for q in 0..self.n {
            comps.entry(find(&mut parent, out_base + q)).or_default().outputs.push(q + 1);
        }
        let mut order: Vec<Comp> = comps.into_values().collect();
        order.sort_by_key(|c| (c.outputs.clone(), c.rays, c.dots));
        if let Some(rng) = rng {
            order.shuffle(rng);
        }
        let mut coefficient = self.coefficient;
        let (mut arcs, mut rays, mut dotted) = (Vec::<Arc>::new(), Vec::new(), Vec::new());
        for comp in order {
            match (comp.outputs.as_slice(), comp.rays, comp.dots) {
                (_, _, d) if d >= 2 => return Ok(None),
                ([], 0, 0) => coefficient *= UNDOTTED_CIRCLE,
                ([], 0, _) => coefficient *= c.dotted_circle,
                ([], _, _) => return Ok(None),
                (&[i, j], 0, d) => {
                    arcs.push((i, j));
                    if d == 1 {
                        dotted.push((i, j));
                    }
                }
                (&[r], 1, 1) => rays.push(r),
                _ => return Err(Error::Domain("resolution produced an unexpected component".into())),
            }
            if coefficient == 0 {
                return Ok(None);
            }
        }
        let base = Matching::new(self.n, &arcs, &rays)?;
        if base.k() != k {
            return Err(Error::TypeMismatch(self.n, base.k(), self.n, k));
        }
        Ok(Some((DottedMatching::new(base, &dotted)?, coefficient)))
    }
}

/// Sum over all resolutions, evaluated but not reduced.
pub fn resolve_terms(x: &DottedMatching, t: &FlatTangle, c: &ResolutionConvention) -> Result<BTreeMap<DottedMatching, BigInt>> {
    resolve_terms_with::<rand::rngs::ThreadRng>(x, t, c, None)
}

fn resolve_terms_with<R: Rng>(
    x: &DottedMatching,
    t: &FlatTangle,
    c: &ResolutionConvention,
    mut rng: Option<&mut R>,
) -> Result<BTreeMap<DottedMatching, BigInt>> {
    if t.n != x.n() {
        return Err(Error::SizeMismatch(format!("tangle on {} strands below a matching on {}", t.n, x.n())));
    }
    if t.layers.len() > 24 {
        return Err(Error::Domain(format!("{} crossings is too many to expand", t.layers.len())));
    }
    let mut out: BTreeMap<DottedMatching, BigInt> = BTreeMap::new();
    for mask in 0..1u64 << t.layers.len() {
        let d = ResolvedDiagram::new(x, t, mask, c);
        if let Some((y, coeff)) = d.evaluate_with(x.k(), c, rng.as_deref_mut())? {
            *out.entry(y).or_default() += coeff;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Resolve, evaluate and reduce to the standard basis.
pub struct SkeinEvaluator {
    n: usize,
    k: usize,
    reducers: Vec<Reducer>,
}

impl SkeinEvaluator {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let reducers = (0..=k).map(|m| Reducer::new(n, k, m, None)).collect::<Result<_>>()?;
        Ok(SkeinEvaluator { n, k, reducers })
    }

    pub fn resolve_evaluate(&self, x: &DottedMatching, t: &FlatTangle, c: &ResolutionConvention) -> Result<HomClass> {
        self.finish(x, resolve_terms(x, t, c)?)
    }

    fn finish(&self, x: &DottedMatching, terms: BTreeMap<DottedMatching, BigInt>) -> Result<HomClass> {
        if (x.n(), x.k()) != (self.n, self.k) {
            return Err(Error::TypeMismatch(x.n(), x.k(), self.n, self.k));
        }
        if terms.is_empty() {
            return Ok(HomClass::zero(self.n, self.k, x.grading()));
        }
        let raw = HomClass::from_terms(terms)?;
        if raw.grading() != x.grading() {
            return Err(Error::InhomogeneousClass);
        }
        self.reducers[raw.grading()].reduce(&raw)
    }

    /// σ·M via a reduced word for σ.
    pub fn act(&self, sigma: &Perm, x: &DottedMatching, c: &ResolutionConvention) -> Result<HomClass> {
        self.act_word(&sigma.reduced_word(), x, c)
    }

    pub fn act_word(&self, word: &[usize], x: &DottedMatching, c: &ResolutionConvention) -> Result<HomClass> {
        self.resolve_evaluate(x, &flatten(self.n, word)?, c)
    }
}

pub fn resolve_evaluate(x: &DottedMatching, t: &FlatTangle, c: &ResolutionConvention) -> Result<HomClass> {
    SkeinEvaluator::new(x.n(), x.k())?.resolve_evaluate(x, t, c)
}

pub fn skein_act(sigma: &Perm, x: &DottedMatching, c: &ResolutionConvention) -> Result<HomClass> {
    SkeinEvaluator::new(x.n(), x.k())?.act(sigma, x, c)
}

#[derive(Clone, Debug)]
pub struct SkeinCalibration {
    pub n_max: usize,
    pub fits: Vec<ResolutionConvention>,
    pub chosen: ResolutionConvention,
    /// Whether some member with one-dot circle value 1 fits.
    pub dotted_circle_one_fits: bool,
}

/// Whether c reproduces the ζ-route on every standard generator and adjacent transposition, n ≤ n_max.
pub fn convention_fits(c: &ResolutionConvention, n_max: usize, cache: &[(ActionEngine, SkeinEvaluator)]) -> bool {
    if !turnback_anchor_holds(c) {
        return false;
    }
    cache.iter().filter(|(e, _)| e.n() <= n_max).all(|(engine, skein)| {
        let n = engine.n();
        (1..n).all(|i| {
            let s = Perm::simple(n, i).expect("adjacent transposition");
            (0..=engine.k()).all(|m| {
                engine.basis(m).iter().all(|b| {
                    let want = engine.act(&s, &HomClass::single(b.clone()));
                    matches!((skein.act_word(&[i], b, c), want), (Ok(got), Ok(want)) if got == want)
                })
            })
        })
    })
}

/// The n = 2 anchor: turnback alone sends the undotted cap to −2 times itself and the dotted cap to 0.
pub fn turnback_anchor_holds(c: &ResolutionConvention) -> bool {
    let only_turnback = ResolutionConvention { identity_coefficient: 0, ..*c };
    let tangle = FlatTangle { n: 2, layers: vec![1] };
    let cap = |s: &str| s.parse::<DottedMatching>().expect("literal");
    let evaluate = |x: &DottedMatching| resolve_terms(x, &tangle, &only_turnback);
    let undotted = cap("2: u1-2");
    let dotted = cap("2: d1-2");
    matches!(evaluate(&undotted), Ok(t) if t == BTreeMap::from([(undotted.clone(), BigInt::from(-2))]))
        && matches!(evaluate(&dotted), Ok(t) if t.is_empty())
}

/// Exhaustive search over the family; the lexicographically least fit is chosen.
pub fn calibrate(n_max: usize) -> Result<SkeinCalibration> {
    if n_max < 2 {
        return Err(Error::Domain(format!("calibration needs n_max ≥ 2, got {n_max}")));
    }
    let mut cache = Vec::new();
    for n in 2..=n_max {
        for k in 0..=n / 2 {
            cache.push((ActionEngine::new(n, k)?, SkeinEvaluator::new(n, k)?));
        }
    }
    let fits: Vec<ResolutionConvention> =
        ResolutionConvention::family().into_iter().filter(|c| convention_fits(c, n_max, &cache)).collect();
    let chosen = *fits.first().ok_or(Error::NoConventionFits)?;
    let dotted_circle_one_fits = fits.iter().any(|c| c.dotted_circle == 1);
    Ok(SkeinCalibration { n_max, fits, chosen, dotted_circle_one_fits })
}

/// All reduced words of σ.
pub fn reduced_words(sigma: &Perm) -> Vec<Vec<usize>> {
    if sigma.is_identity() {
        return vec![Vec::new()];
    }
    let n = sigma.n();
    let mut out = Vec::new();
    for i in (1..n).filter(|&i| sigma.apply(i) > sigma.apply(i + 1)) {
        let shorter = sigma.compose(&Perm::simple(n, i).expect("descent"));
        for mut w in reduced_words(&shorter) {
            w.push(i);
            out.push(w);
        }
    }
    out
}

/// A uniformly random word of the given length in s_1..s_{n-1}.
pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    (0..len).map(|_| rng.gen_range(1..n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::act;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dm(s: &str) -> DottedMatching {
        s.parse().unwrap()
    }

    fn cls(s: &str) -> HomClass {
        HomClass::parse(s).unwrap()
    }

    const ACTIVE: ResolutionConvention = ResolutionConvention {
        identity_coefficient: 1,
        turnback_coefficient: 1,
        turnback_dots: DotPlacement::None,
        dotted_circle: 0,
    };

    #[test]
    fn flatten_examples() {
        assert!(flatten(3, &[]).unwrap().layers.is_empty());
        assert_eq!(flatten(3, &[1, 2]).unwrap().layers, vec![2, 1]);
        assert_eq!(flatten(3, &[1, 1]).unwrap().layers, vec![1, 1]);
        assert!(flatten(3, &[3]).is_err());
    }

    #[test]
    fn anchors() {
        let id = flatten(2, &[]).unwrap();
        let x = dm("2: u1-2");
        assert_eq!(resolve_evaluate(&x, &id, &ACTIVE).unwrap(), HomClass::single(x.clone()));
        let s1 = flatten(2, &[1]).unwrap();
        assert_eq!(resolve_evaluate(&x, &s1, &ACTIVE).unwrap(), cls("-1·(2: u1-2)"));
        assert_eq!(resolve_evaluate(&dm("2: d1-2"), &s1, &ACTIVE).unwrap(), cls("2: d1-2"));
        assert!(turnback_anchor_holds(&ACTIVE));
    }

    #[test]
    fn worked_example() {
        let x = dm("3: u1-2 r3");
        let sigma = Perm::parse("(1 2 3)", 3).unwrap();
        assert_eq!(sigma.reduced_word(), vec![1, 2]);
        let got = skein_act(&sigma, &x, &ACTIVE).unwrap();
        assert_eq!(got, act(&sigma, &HomClass::single(x)).unwrap());
        assert_eq!(got, cls("3: r1 u2-3"));
    }

    #[test]
    fn calibration_is_unique_at_four() {
        let cal = calibrate(4).unwrap();
        assert_eq!(cal.fits, vec![ACTIVE]);
        assert_eq!(cal.chosen, ACTIVE);
        assert!(!cal.dotted_circle_one_fits);
        assert!(calibrate(2).unwrap().fits.contains(&ACTIVE));
    }

    #[test]
    fn component_order_is_irrelevant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            for k in 0..=n / 2 {
                for m in 0..=k {
                    for b in crate::tableau::standard_basis(n, k, m) {
                        let word = random_word(n, 5, &mut rng);
                        let t = flatten(n, &word).unwrap();
                        let plain = resolve_terms(&b, &t, &ACTIVE).unwrap();
                        for _ in 0..3 {
                            assert_eq!(resolve_terms_with(&b, &t, &ACTIVE, Some(&mut rng)).unwrap(), plain);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn words_and_random_words_match_the_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=4 {
            for k in 0..=n / 2 {
                let engine = ActionEngine::new(n, k).unwrap();
                let skein = SkeinEvaluator::new(n, k).unwrap();
                for m in 0..=k {
                    for b in engine.basis(m) {
                        for _ in 0..10 {
                            let len = rng.gen_range(0..=6);
                            let word = random_word(n, len, &mut rng);
                            let sigma = Perm::from_word(n, &word).unwrap();
                            let want = engine.act(&sigma, &HomClass::single(b.clone())).unwrap();
                            assert_eq!(skein.act_word(&word, b, &ACTIVE).unwrap(), want, "{word:?} on {b}");
                            for w in reduced_words(&sigma) {
                                assert_eq!(skein.act_word(&w, b, &ACTIVE).unwrap(), want);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_word_enumeration() {
        let w0 = Perm::from_images(vec![3, 2, 1]).unwrap();
        let mut words = reduced_words(&w0);
        words.sort();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(reduced_words(&Perm::from_images(vec![4, 3, 2, 1]).unwrap()).len(), 16);
    }
}
