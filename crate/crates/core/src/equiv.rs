//! Linear equivalence of representations: `Q M P = N` with `Q` invertible
//! and `P` monomial. Two algebras `A(M)` and `A(N)` are isomorphic exactly
//! when such a pair exists, so this module also decides algebra isomorphism.
//!
//! The search fixes a basis of `M` and tries every ordered tuple of lines of
//! `N` as its image. Once the tuple is fixed, `Q` is known up to one scale per
//! basis column; every other line of `M` then pins down ratios between those
//! scales, which are tracked in a weighted union-find while lines are matched
//! by backtracking.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::format::{rational_matrix, rational_vec};
use crate::linalg::{RatMatrix, Rational};
use crate::matroid::{normalize_direction, ColumnSubset, RankOracle, RepMatrix};
use crate::tutte::poincare_delcon;

/// A line through the origin, as its normalized direction (first nonzero
/// coordinate equal to 1), with the number of columns on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjectiveColumn {
    #[serde(with = "rational_vec")]
    pub direction: Vec<Rational>,
    pub multiplicity: usize,
}

/// Canonical multiset of column lines, sorted by direction.
pub fn line_multiset(rep: &RepMatrix) -> Vec<ProjectiveColumn> {
    let mut counts: HashMap<Vec<Rational>, usize> = HashMap::new();
    for j in 0..rep.m() {
        let dir = normalize_direction(&rep.column(j)).expect("no zero columns");
        *counts.entry(dir).or_insert(0) += 1;
    }
    let mut lines: Vec<ProjectiveColumn> = counts
        .into_iter()
        .map(|(direction, multiplicity)| ProjectiveColumn {
            direction,
            multiplicity,
        })
        .collect();
    lines.sort();
    lines
}

/// `Q M P = N`, with `P` stored as column `j` of `M` going to column
/// `perm[j]` of `N`, scaled by `scales[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    #[serde(with = "rational_matrix")]
    pub q: RatMatrix,
    pub perm: Vec<usize>,
    #[serde(with = "rational_vec")]
    pub scales: Vec<Rational>,
}

impl EquivalenceWitness {
    pub fn monomial_matrix(&self) -> RatMatrix {
        let m = self.perm.len();
        let mut p = RatMatrix::zeros(m, m);
        for (j, (&k, s)) in self.perm.iter().zip(&self.scales).enumerate() {
            p.set(j, k, s.clone());
        }
        p
    }

    /// `Q M P`.
    pub fn apply(&self, m: &RatMatrix) -> RatMatrix {
        let qm = self.q.mul(m).expect("Q is d x d");
        qm.mul(&self.monomial_matrix()).expect("P is m x m")
    }

    /// Exact re-check of `Q M P = N` plus invertibility of `Q` and `P`.
    pub fn verify(&self, m: &RepMatrix, n: &RepMatrix) -> bool {
        let mut seen = vec![false; self.perm.len()];
        let perm_ok = self.perm.len() == m.m()
            && self.perm.iter().all(|&k| k < seen.len() && !std::mem::replace(&mut seen[k], true));
        perm_ok
            && self.scales.iter().all(|s| !s.is_zero())
            && self.q.rows() == m.d()
            && self.q.det().is_ok_and(|d| !d.is_zero())
            && self.apply(m.matrix()) == *n.matrix()
    }

    /// Witness for the reverse direction, `Q^-1 N P^-1 = M`.
    pub fn inverse(&self) -> EquivalenceWitness {
        let m = self.perm.len();
        let mut perm = vec![0; m];
        let mut scales = vec![Rational::zero(); m];
        for (j, (&k, s)) in self.perm.iter().zip(&self.scales).enumerate() {
            perm[k] = j;
            scales[k] = s.recip();
        }
        EquivalenceWitness {
            q: self.q.inverse().expect("Q is invertible"),
            perm,
            scales,
        }
    }

    /// If `self` takes `M` to `N` and `next` takes `N` to `L`, the result
    /// takes `M` to `L`.
    pub fn then(&self, next: &EquivalenceWitness) -> EquivalenceWitness {
        let perm = self.perm.iter().map(|&k| next.perm[k]).collect();
        let scales = self
            .perm
            .iter()
            .zip(&self.scales)
            .map(|(&k, s)| s * &next.scales[k])
            .collect();
        EquivalenceWitness {
            q: next.q.mul(&self.q).expect("same d"),
            perm,
            scales,
        }
    }
}

/// Why two representations were found inequivalent, or that they are not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    /// `d` or `m` differ.
    Shape,
    HilbertFunction,
    ParallelProfile,
    /// Necessary conditions agree but no witness exists.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceOutcome {
    pub verdict: Verdict,
    pub witness: Option<EquivalenceWitness>,
}

impl EquivalenceOutcome {
    pub fn equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

fn parallel_profile(rep: &RepMatrix) -> Vec<usize> {
    let mut sizes: Vec<usize> = rep.parallel_classes().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

/// Full decision with cheap necessary-condition filters first.
pub fn decide_equivalence(m: &RepMatrix, n: &RepMatrix) -> EquivalenceOutcome {
    let reject = |verdict| EquivalenceOutcome {
        verdict,
        witness: None,
    };
    if m.d() != n.d() || m.m() != n.m() {
        return reject(Verdict::Shape);
    }
    if parallel_profile(m) != parallel_profile(n) {
        return reject(Verdict::ParallelProfile);
    }
    if poincare_delcon(m) != poincare_delcon(n) {
        return reject(Verdict::HilbertFunction);
    }
    let basis = m.lex_earliest_basis(ColumnSubset::full(m.m())).to_vec();
    match linearly_equivalent_from_basis(m, n, &basis) {
        Some(w) => EquivalenceOutcome {
            verdict: Verdict::Equivalent,
            witness: Some(w),
        },
        None => reject(Verdict::Search),
    }
}

pub fn linearly_equivalent(m: &RepMatrix, n: &RepMatrix) -> Option<EquivalenceWitness> {
    decide_equivalence(m, n).witness
}

/// `A(M) ~ A(N)` as algebras. The witness also extends to an automorphism
/// of `B` (the monomial part acts on the variables).
pub fn algebras_isomorphic(m: &RepMatrix, n: &RepMatrix) -> (bool, Option<EquivalenceWitness>) {
    let out = decide_equivalence(m, n);
    (out.equivalent(), out.witness)
}

/// Distinct lines of a representation with their member columns.
struct Lines {
    dirs: Vec<Vec<Rational>>,
    members: Vec<Vec<usize>>,
    of_column: Vec<usize>,
}

impl Lines {
    fn new(rep: &RepMatrix) -> Self {
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut dirs = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut of_column = Vec::with_capacity(rep.m());
        for j in 0..rep.m() {
            let dir = normalize_direction(&rep.column(j)).expect("no zero columns");
            let id = *index.entry(dir.clone()).or_insert_with(|| {
                dirs.push(dir);
                members.push(Vec::new());
                dirs.len() - 1
            });
            members[id].push(j);
            of_column.push(id);
        }
        Lines {
            dirs,
            members,
            of_column,
        }
    }

    fn len(&self) -> usize {
        self.dirs.len()
    }

    fn mult(&self, l: usize) -> usize {
        self.members[l].len()
    }
}

/// Union-find over basis scales with `scale[i] = weight[i] * scale[root]`.
#[derive(Clone)]
struct ScaleRatios {
    parent: Vec<usize>,
    weight: Vec<Rational>,
}

impl ScaleRatios {
    fn new(d: usize) -> Self {
        ScaleRatios {
            parent: (0..d).collect(),
            weight: vec![Rational::one(); d],
        }
    }

    fn find(&self, mut i: usize) -> (usize, Rational) {
        let mut w = Rational::one();
        while self.parent[i] != i {
            w *= &self.weight[i];
            i = self.parent[i];
        }
        (i, w)
    }

    /// Impose `scale[a] / scale[b] = ratio`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, ratio: &Rational) -> bool {
        let (ra, wa) = self.find(a);
        let (rb, wb) = self.find(b);
        if ra == rb {
            return &wa / &wb == *ratio;
        }
        // scale[ra] = scale[a]/wa = ratio*scale[b]/wa = ratio*wb/wa * scale[rb]
        self.parent[ra] = rb;
        self.weight[ra] = ratio * &wb / &wa;
        true
    }

    fn scales(&self) -> Vec<Rational> {
        (0..self.parent.len()).map(|i| self.find(i).1).collect()
    }
}

/// Exhaustive search with `basis` (columns of `M`, independent, size `d`)
/// as the anchor. No necessary-condition filtering.
pub fn linearly_equivalent_from_basis(
    m: &RepMatrix,
    n: &RepMatrix,
    basis: &[usize],
) -> Option<EquivalenceWitness> {
    let d = m.d();
    if d != n.d() || m.m() != n.m() || basis.len() != d {
        return None;
    }
    let lm = Lines::new(m);
    let ln = Lines::new(n);
    if lm.len() != ln.len() {
        return None;
    }
    let basis_lines: Vec<usize> = basis.iter().map(|&j| lm.of_column[j]).collect();
    let mb = RatMatrix::from_rows(basis_lines.iter().map(|&l| lm.dirs[l].clone()).collect())
        .ok()?
        .transpose();
    let mb_inv = if d == 0 { RatMatrix::zeros(0, 0) } else { mb.inverse().ok()? };
    let coords_m: Vec<Vec<Rational>> = lm.dirs.iter().map(|v| mb_inv.apply(v)).collect();
    let rest_m: Vec<usize> = (0..lm.len()).filter(|l| !basis_lines.contains(l)).collect();

    let mut tuple = Vec::with_capacity(d);
    let mut found = None;
    search_tuples(&ln, &lm, &basis_lines, &mut tuple, &mut |tuple| {
        let nt = RatMatrix::from_rows(tuple.iter().map(|&l| ln.dirs[l].clone()).collect())
            .expect("rectangular")
            .transpose();
        let Ok(nt_inv) = (if d == 0 { Ok(RatMatrix::zeros(0, 0)) } else { nt.inverse() }) else {
            return false;
        };
        let coords_n: Vec<Vec<Rational>> = ln.dirs.iter().map(|v| nt_inv.apply(v)).collect();
        let mut used = vec![false; ln.len()];
        for &t in tuple.iter() {
            used[t] = true;
        }
        let mut assign = vec![usize::MAX; lm.len()];
        for (&b, &t) in basis_lines.iter().zip(tuple.iter()) {
            assign[b] = t;
        }
        let ctx = MatchCtx {
            lm: &lm,
            ln: &ln,
            coords_m: &coords_m,
            coords_n: &coords_n,
            rest_m: &rest_m,
        };
        let Some(ratios) = ctx.match_lines(0, &mut used, &mut assign, ScaleRatios::new(d)) else {
            return false;
        };
        let lambda = ratios.scales();
        let mut nd = nt.clone();
        for i in 0..d {
            for c in 0..d {
                let v = nd.get(i, c) * &lambda[c];
                nd.set(i, c, v);
            }
        }
        let q = nd.mul(&mb_inv).expect("d x d");
        if let Some(w) = build_witness(m, n, q) {
            found = Some(w);
            return true;
        }
        false
    });
    found
}

/// Ordered tuples of distinct `N` lines matching the basis multiplicities.
fn search_tuples(
    ln: &Lines,
    lm: &Lines,
    basis_lines: &[usize],
    tuple: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if tuple.len() == basis_lines.len() {
        return visit(tuple);
    }
    let want = lm.mult(basis_lines[tuple.len()]);
    for l in 0..ln.len() {
        if tuple.contains(&l) || ln.mult(l) != want {
            continue;
        }
        tuple.push(l);
        if search_tuples(ln, lm, basis_lines, tuple, visit) {
            return true;
        }
        tuple.pop();
    }
    false
}

struct MatchCtx<'a> {
    lm: &'a Lines,
    ln: &'a Lines,
    coords_m: &'a [Vec<Rational>],
    coords_n: &'a [Vec<Rational>],
    rest_m: &'a [usize],
}

impl MatchCtx<'_> {
    /// Assign the remaining `M` lines to unused `N` lines consistently.
    fn match_lines(
        &self,
        k: usize,
        used: &mut [bool],
        assign: &mut [usize],
        ratios: ScaleRatios,
    ) -> Option<ScaleRatios> {
        let Some(&l) = self.rest_m.get(k) else {
            return Some(ratios);
        };
        let cm = &self.coords_m[l];
        let support: Vec<usize> = (0..cm.len()).filter(|&i| !cm[i].is_zero()).collect();
        for target in 0..self.ln.len() {
            if used[target] || self.ln.mult(target) != self.lm.mult(l) {
                continue;
            }
            let cn = &self.coords_n[target];
            if (0..cn.len()).any(|i| cn[i].is_zero() != cm[i].is_zero()) {
                continue;
            }
            // scale[i] proportional to cn[i] / cm[i] across the support
            let r: Vec<Rational> = support.iter().map(|&i| &cn[i] / &cm[i]).collect();
            let mut next = ratios.clone();
            let consistent = support
                .windows(2)
                .zip(r.windows(2))
                .all(|(s, q)| next.relate(s[0], s[1], &(&q[0] / &q[1])));
            if !consistent {
                continue;
            }
            used[target] = true;
            assign[l] = target;
            if let Some(done) = self.match_lines(k + 1, used, assign, next) {
                return Some(done);
            }
            used[target] = false;
            assign[l] = usize::MAX;
        }
        None
    }
}

/// Given `Q`, match columns of `Q M` to columns of `N` (lowest free index
/// first) and check the result exactly.
fn build_witness(m: &RepMatrix, n: &RepMatrix, q: RatMatrix) -> Option<EquivalenceWitness> {
    let qm = q.mul(m.matrix()).ok()?;
    let ncols: Vec<Vec<Rational>> = (0..n.m()).map(|k| n.column(k)).collect();
    let ndirs: Vec<Vec<Rational>> = ncols
        .iter()
        .map(|c| normalize_direction(c).expect("no zero columns"))
        .collect();
    let mut taken = vec![false; n.m()];
    let mut perm = Vec::with_capacity(m.m());
    let mut scales = Vec::with_capacity(m.m());
    for j in 0..m.m() {
        let v = qm.column(j);
        let dir = normalize_direction(&v)?;
        let k = (0..n.m()).find(|&k| !taken[k] && ndirs[k] == dir)?;
        taken[k] = true;
        let i = v.iter().position(|x| !x.is_zero())?;
        // v = s * N_k, and P scales column j by 1/s
        let s = &v[i] / &ncols[k][i];
        perm.push(k);
        scales.push(s.recip());
    }
    let w = EquivalenceWitness { q, perm, scales };
    w.verify(m, n).then_some(w)
}
