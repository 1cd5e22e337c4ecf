//! Factor sets and two-dimensional cohomology for a commutative kernel.
//!
//! With `H` commutative, a trivial action table, a fixed group `(M, xi) = Q`
//! and a fixed reverse representation `Q -> Aut H`, the only moving part of
//! a hypergroup is its factor table. Those tables are exactly the cocycles
//! of the factor-set identity; the tables reachable by a transversal shift
//! are the coboundaries `lam_kappa`, and the quotient classifies the
//! extensions of `H` by `Q` with that representation. No normalization is
//! imposed on cocycles: `lam(o, o)` may differ from the identity, so the
//! cocycle counts are larger than the textbook normalized ones while the
//! quotient is the same.

use std::collections::HashSet;

use thiserror::Error;

use crate::action::{orbits_kappa, ActionError};
use crate::extension::{ext_by_quotient, extensions_equal, map_e, Extension, ExtError};
use crate::group::{automorphisms, by_name, FiniteGroup, GroupError};
use crate::hypergroup::{HgError, Hypergroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("HNotAbelian: cohomology needs a commutative kernel")]
    HNotAbelian,
    #[error("SizeMismatch: cochains live over different (Q, H) pairs")]
    SizeMismatch,
    #[error("NotAReverseRepresentation: {what}")]
    NotAReverseRepresentation { what: String },
    #[error("NoWitnessFound: every coboundary product stayed a coboundary")]
    NoWitnessFound,
    #[error("SchreierMismatch: {what}")]
    SchreierMismatch { what: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hg(#[from] HgError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Construct(#[from] crate::construction::ConstructError),
}

/// A reverse representation `Q -> Aut H`: automorphism rows composing as
/// `psi([a,b]) = psi(a) ∘ psi(b)` in application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseRepresentation {
    q: FiniteGroup,
    h: FiniteGroup,
    rows: Vec<Vec<usize>>,
}

impl ReverseRepresentation {
    pub fn new(
        q: FiniteGroup,
        h: FiniteGroup,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self, CohomologyError> {
        if rows.len() != q.order() {
            return Err(CohomologyError::NotAReverseRepresentation {
                what: format!("{} rows for a group of order {}", rows.len(), q.order()),
            });
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != h.order() || row.iter().any(|&v| v >= h.order()) {
                return Err(CohomologyError::NotAReverseRepresentation {
                    what: format!("row {a} is not a map H -> H"),
                });
            }
            let mut seen = vec![false; h.order()];
            for &v in row {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(CohomologyError::NotAReverseRepresentation {
                        what: format!("row {a} is not a bijection"),
                    });
                }
            }
            for x in 0..h.order() {
                for y in 0..h.order() {
                    if row[h.mul(x, y)] != h.mul(row[x], row[y]) {
                        return Err(CohomologyError::NotAReverseRepresentation {
                            what: format!("row {a} is not a homomorphism"),
                        });
                    }
                }
            }
        }
        for a in 0..q.order() {
            for b in 0..q.order() {
                for al in 0..h.order() {
                    if rows[q.mul(a, b)][al] != rows[a][rows[b][al]] {
                        return Err(CohomologyError::NotAReverseRepresentation {
                            what: format!("reverse composition fails at ({a}, {b})"),
                        });
                    }
                }
            }
        }
        Ok(ReverseRepresentation { q, h, rows })
    }

    /// The representation sending every element to the identity automorphism.
    pub fn trivial(q: FiniteGroup, h: FiniteGroup) -> Self {
        let id: Vec<usize> = (0..h.order()).collect();
        let rows = vec![id; q.order()];
        ReverseRepresentation { q, h, rows }
    }

    /// Non-neutral elements act by inversion. Valid when inversion is an
    /// automorphism (H abelian) and squares compose to the identity.
    pub fn inversion(q: FiniteGroup, h: FiniteGroup) -> Result<Self, CohomologyError> {
        let id: Vec<usize> = (0..h.order()).collect();
        let inv: Vec<usize> = (0..h.order()).map(|x| h.inv(x)).collect();
        let rows: Vec<Vec<usize>> = (0..q.order())
            .map(|a| if a == q.identity() { id.clone() } else { inv.clone() })
            .collect();
        ReverseRepresentation::new(q, h, rows)
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn kernel(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    #[inline]
    pub fn apply(&self, a: usize, alpha: usize) -> usize {
        self.rows[a][alpha]
    }
}

/// All reverse representations `q -> Aut h`, in a fixed scan order.
pub fn all_reverse_representations(
    q: &FiniteGroup,
    h: &FiniteGroup,
) -> Vec<ReverseRepresentation> {
    let auts: Vec<Vec<usize>> = automorphisms(h).into_iter().map(|a| a.map().to_vec()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; q.order()];
    loop {
        let rows: Vec<Vec<usize>> = choice.iter().map(|&c| auts[c].clone()).collect();
        if let Ok(rep) = ReverseRepresentation::new(q.clone(), h.clone(), rows) {
            out.push(rep);
        }
        let mut i = q.order();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < auts.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// A two-dimensional cochain: a `|Q| x |Q|` table of `H`-indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cochain2 {
    q_order: usize,
    values: Vec<usize>,
}

impl Cochain2 {
    pub fn new(q_order: usize, values: Vec<usize>) -> Result<Self, CohomologyError> {
        if values.len() != q_order * q_order {
            return Err(CohomologyError::SizeMismatch);
        }
        Ok(Cochain2 { q_order, values })
    }

    pub fn zero(q: &FiniteGroup, h: &FiniteGroup) -> Self {
        Cochain2 { q_order: q.order(), values: vec![h.identity(); q.order() * q.order()] }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.values[a * self.q_order + b]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Pointwise product in `H`.
    pub fn mul(&self, other: &Cochain2, h: &FiniteGroup) -> Result<Cochain2, CohomologyError> {
        if self.q_order != other.q_order {
            return Err(CohomologyError::SizeMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| h.mul(x, y))
            .collect();
        Ok(Cochain2 { q_order: self.q_order, values })
    }

    /// Pointwise inverse in `H`.
    pub fn inv(&self, h: &FiniteGroup) -> Cochain2 {
        Cochain2 {
            q_order: self.q_order,
            values: self.values.iter().map(|&x| h.inv(x)).collect(),
        }
    }
}

/// The factor-set identity:
/// `lam(a,b)·lam([a,b],c) = ^a lam(b,c)·lam(a,[b,c])`.
pub fn is_cocycle(rep: &ReverseRepresentation, lam: &Cochain2) -> bool {
    let (q, h) = (&rep.q, &rep.h);
    if lam.q_order != q.order() {
        return false;
    }
    (0..q.order()).all(|a| {
        (0..q.order()).all(|b| {
            (0..q.order()).all(|c| {
                h.mul(lam.get(a, b), lam.get(q.mul(a, b), c))
                    == h.mul(rep.apply(a, lam.get(b, c)), lam.get(a, q.mul(b, c)))
            })
        })
    })
}

fn require_abelian(h: &FiniteGroup) -> Result<(), CohomologyError> {
    if h.is_abelian() {
        Ok(())
    } else {
        Err(CohomologyError::HNotAbelian)
    }
}

/// All cocycles, in lexicographic table order.
pub fn enumerate_z2(rep: &ReverseRepresentation) -> Result<Vec<Cochain2>, CohomologyError> {
    require_abelian(&rep.h)?;
    let q = rep.q.order();
    let h = rep.h.order();
    let mut out = Vec::new();
    let mut values = vec![0usize; q * q];
    loop {
        let candidate = Cochain2 { q_order: q, values: values.clone() };
        if is_cocycle(rep, &candidate) {
            out.push(candidate);
        }
        let mut i = values.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < h {
                break;
            }
            values[i] = 0;
        }
    }
}

/// The coboundary of a transversal shift:
/// `lam_kappa(a, b) = kappa_a · ^a kappa_b · kappa_{[a,b]}^{-1}`.
pub fn coboundary(rep: &ReverseRepresentation, kappa: &[usize]) -> Cochain2 {
    let (q, h) = (&rep.q, &rep.h);
    let mut values = Vec::with_capacity(q.order() * q.order());
    for a in 0..q.order() {
        for b in 0..q.order() {
            values.push(h.mul3(
                kappa[a],
                rep.apply(a, kappa[b]),
                h.inv(kappa[q.mul(a, b)]),
            ));
        }
    }
    Cochain2 { q_order: q.order(), values }
}

fn all_kappas(rep: &ReverseRepresentation) -> Vec<Vec<usize>> {
    let (qn, hn) = (rep.q.order(), rep.h.order());
    let mut out = Vec::new();
    let mut kappa = vec![0usize; qn];
    loop {
        out.push(kappa.clone());
        let mut i = qn;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            kappa[i] += 1;
            if kappa[i] < hn {
                break;
            }
            kappa[i] = 0;
        }
    }
}

/// All coboundaries (deduplicated), in lexicographic table order.
pub fn enumerate_b2(rep: &ReverseRepresentation) -> Result<Vec<Cochain2>, CohomologyError> {
    require_abelian(&rep.h)?;
    let mut out: Vec<Cochain2> =
        all_kappas(rep).iter().map(|k| coboundary(rep, k)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The cohomology data: cocycles, coboundaries, and the coset partition
/// with its validated group structure.
#[derive(Debug, Clone)]
pub struct H2Data {
    pub z2: Vec<Cochain2>,
    pub b2: Vec<Cochain2>,
    /// Coset partition of `z2`, each coset listing indices into `z2`;
    /// cosets ordered by their canonical (lexicographically least) member.
    pub cosets: Vec<Vec<usize>>,
    /// Canonical representative (index into `z2`) of each coset.
    pub reps: Vec<usize>,
    /// The quotient group on coset indices.
    pub group: FiniteGroup,
}

impl H2Data {
    pub fn h2_order(&self) -> usize {
        self.cosets.len()
    }
}

/// Computes `H2 = Z2 / B2` with canonical coset representatives and a
/// validated group structure on the cosets.
pub fn h2(rep: &ReverseRepresentation) -> Result<H2Data, CohomologyError> {
    require_abelian(&rep.h)?;
    let z2 = enumerate_z2(rep)?;
    let b2 = enumerate_b2(rep)?;
    let h = &rep.h;
    let mut coset_of = vec![usize::MAX; z2.len()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for i in 0..z2.len() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        for b in &b2 {
            let shifted = z2[i].mul(b, h)?;
            let j = z2
                .binary_search(&shifted)
                .map_err(|_| CohomologyError::SchreierMismatch {
                    what: "a coboundary shift left the cocycle set".into(),
                })?;
            if coset_of[j] == usize::MAX {
                coset_of[j] = cosets.len();
                members.push(j);
            }
        }
        members.sort_unstable();
        cosets.push(members);
    }
    // z2 is lexicographically sorted, so the least index is the least member
    cosets.sort_by_key(|c| c[0]);
    for (k, c) in cosets.iter().enumerate() {
        for &j in c {
            coset_of[j] = k;
        }
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let rows: Vec<Vec<usize>> = cosets
        .iter()
        .map(|ci| {
            cosets
                .iter()
                .map(|cj| {
                    let prod = z2[ci[0]].mul(&z2[cj[0]], h).expect("same shape");
                    let j = z2.binary_search(&prod).expect("cocycles are closed under *");
                    coset_of[j]
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(&rows)?;
    Ok(H2Data { z2, b2, cosets, reps, group })
}

/// Builds the trivial-action hypergroup with `(M, xi) = Q`, the twist rows
/// of `rep`, and the given factor table.
pub fn hypergroup_of_cocycle(
    rep: &ReverseRepresentation,
    lam: &Cochain2,
) -> Result<Hypergroup, CohomologyError> {
    let (q, h) = (&rep.q, &rep.h);
    let m = q.order();
    let x = Hypergroup::from_fns(
        h.clone(),
        m,
        |a, _| a,
        |a, al| rep.apply(a, al),
        |a, b| q.mul(a, b),
        |a, b| lam.get(a, b),
    )?;
    Ok(x)
}

/// Whether two cocycles give the same extension through an isomorphism
/// compatible with the fixed quotient structure.
///
/// A quotient-compatible isomorphism of the two exact products must carry
/// `f0` to `f0` and preserve the basic-set coordinate; such a map is forced
/// to be a transversal shift `alpha a -> (alpha·c_a) a`, so all candidates
/// are scanned explicitly and checked to be homomorphisms.
pub fn cocycles_give_equivalent_extensions(
    rep: &ReverseRepresentation,
    lam1: &Cochain2,
    lam2: &Cochain2,
) -> Result<bool, CohomologyError> {
    use crate::construction::{exact_product, pair_index, unpair_index};
    let x1 = hypergroup_of_cocycle(rep, lam1)?;
    let x2 = hypergroup_of_cocycle(rep, lam2)?;
    let ep1 = exact_product(&x1)?;
    let ep2 = exact_product(&x2)?;
    let h = &rep.h;
    let m = rep.q.order();
    let n = ep1.group.order();
    'next: for c in all_kappas(rep) {
        let shift = |idx: usize| {
            let (al, a) = unpair_index(idx, m);
            pair_index(h.mul(al, c[a]), a, m)
        };
        for al in 0..h.order() {
            if shift(ep1.f0.apply(al)) != ep2.f0.apply(al) {
                continue 'next;
            }
        }
        for x in 0..n {
            for y in 0..n {
                if shift(ep1.group.mul(x, y)) != ep2.group.mul(shift(x), shift(y)) {
                    continue 'next;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// The pairing of cohomology classes with extension classes.
#[derive(Debug, Clone)]
pub struct SchreierOutcome {
    pub h2: H2Data,
    /// One extension per cohomology class, from the canonical cocycle.
    pub extensions: Vec<Extension>,
    /// Orbits of the fixed-`(xi, psi)` hypergroup set under the kappa
    /// action; equals the cohomology order by the classification.
    pub fixed_psi_orbit_count: usize,
    /// Distinct cohomology classes stay distinct under quotient-compatible
    /// equivalence (the comparison that keeps the twist structure fixed).
    pub quotient_compatible_distinct: bool,
    /// Number of plain isomorphism classes among the extensions. Smaller
    /// than the cohomology order exactly when an automorphism of the
    /// quotient glues classes; reported, not asserted.
    pub iso_class_count: usize,
    /// For each class of `Ext(H, Q)` (over all representations), how many
    /// of this representation's classes land there. Reported, not asserted:
    /// different representations and quotient automorphisms may repeat
    /// ambient groups.
    pub covering_multiplicity: Vec<usize>,
}

/// Classifies the extensions with this representation by cohomology:
/// builds one hypergroup per `H2` class, maps each to its extension,
/// verifies the bijection with the cocycle orbits and the distinctness of
/// classes under quotient-compatible equivalence, and reports how the
/// classes fall together under plain extension isomorphism.
pub fn schreier_classify(
    rep: &ReverseRepresentation,
) -> Result<SchreierOutcome, CohomologyError> {
    let data = h2(rep)?;
    let mut extensions = Vec::new();
    for &r in &data.reps {
        let x = hypergroup_of_cocycle(rep, &data.z2[r])?;
        if !x.check_axioms().passed() {
            return Err(CohomologyError::SchreierMismatch {
                what: "a cocycle failed to define a hypergroup".into(),
            });
        }
        extensions.push(map_e(&x)?);
    }
    let mut quotient_compatible_distinct = true;
    let mut iso_reps: Vec<usize> = Vec::new();
    let mut iso_class_count = 0usize;
    for i in 0..extensions.len() {
        let mut fresh = true;
        for &j in &iso_reps {
            if extensions_equal(&extensions[j], &extensions[i]) {
                fresh = false;
                break;
            }
        }
        if fresh {
            iso_reps.push(i);
            iso_class_count += 1;
        }
        for j in i + 1..extensions.len() {
            if cocycles_give_equivalent_extensions(
                rep,
                &data.z2[data.reps[i]],
                &data.z2[data.reps[j]],
            )? {
                quotient_compatible_distinct = false;
            }
        }
    }
    // independent route: orbits of the fixed-psi hypergroup set under kappa
    let set: Vec<Hypergroup> = data
        .z2
        .iter()
        .map(|lam| hypergroup_of_cocycle(rep, lam))
        .collect::<Result<_, _>>()?;
    let fixed_psi_orbit_count = orbits_kappa(&set)?.len();
    if fixed_psi_orbit_count != data.h2_order() {
        return Err(CohomologyError::SchreierMismatch {
            what: format!(
                "{} kappa orbits but {} cohomology classes",
                fixed_psi_orbit_count,
                data.h2_order()
            ),
        });
    }
    // reported covering of Ext(H, Q) by this representation's classes
    let quotient_classes = ext_by_quotient(&rep.h, &rep.q)?;
    let mut covering_multiplicity = vec![0usize; quotient_classes.classes.len()];
    for e in &extensions {
        if let Some(k) = quotient_classes
            .classes
            .iter()
            .position(|c| extensions_equal(c, e))
        {
            covering_multiplicity[k] += 1;
        }
    }
    Ok(SchreierOutcome {
        h2: data,
        extensions,
        fixed_psi_orbit_count,
        quotient_compatible_distinct,
        iso_class_count,
        covering_multiplicity,
    })
}

/// Witness data for the failure of coboundary closure over a
/// noncommutative kernel.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub kappa: Vec<usize>,
    pub lambda: Vec<usize>,
    /// The product `lam_kappa * lam_lambda`, which is not a coboundary.
    pub product: Cochain2,
    /// Abelian kernels for which closure was confirmed exactly.
    pub abelian_closure_checked: Vec<&'static str>,
    /// Central-image conjugation invariance confirmed (on `d4`).
    pub central_case_checked: bool,
}

/// Exhibits, over `H = S3` and `Q = Z2` with the trivial twist, a pair of
/// coboundaries whose pointwise product is not a coboundary; confirms exact
/// closure for all abelian kernels of order at most 6, and conjugation
/// invariance of coboundaries by central-image cochains.
pub fn noncommutative_obstruction_witness() -> Result<ObstructionReport, CohomologyError> {
    let q = by_name("z2").unwrap();
    let s3 = by_name("s3").unwrap();
    let rep = ReverseRepresentation::trivial(q.clone(), s3.clone());
    let kappas = all_kappas(&rep);
    let coboundaries: HashSet<Cochain2> =
        kappas.iter().map(|k| coboundary(&rep, k)).collect();
    let mut witness = None;
    'outer: for ka in &kappas {
        for la in &kappas {
            let prod = coboundary(&rep, ka).mul(&coboundary(&rep, la), &s3)?;
            if !coboundaries.contains(&prod) {
                witness = Some((ka.clone(), la.clone(), prod));
                break 'outer;
            }
        }
    }
    let (kappa, lambda, product) = witness.ok_or(CohomologyError::NoWitnessFound)?;

    // Prop-12-style closure for abelian kernels of order <= 6
    let mut abelian_closure_checked = Vec::new();
    for name in ["z1", "z2", "z3", "z4", "v4", "z5", "z6"] {
        let h = by_name(name).unwrap();
        let rep = ReverseRepresentation::trivial(q.clone(), h.clone());
        let kappas = all_kappas(&rep);
        for ka in &kappas {
            for la in &kappas {
                let combined: Vec<usize> =
                    ka.iter().zip(la).map(|(&x, &y)| h.mul(x, y)).collect();
                let lhs = coboundary(&rep, ka).mul(&coboundary(&rep, la), &h)?;
                if lhs != coboundary(&rep, &combined) {
                    return Err(CohomologyError::SchreierMismatch {
                        what: format!("closure failed for abelian kernel {name}"),
                    });
                }
            }
        }
        abelian_closure_checked.push(name);
    }

    // central-image conjugation invariance on a kernel with a proper center
    let d4 = by_name("d4").unwrap();
    let rep = ReverseRepresentation::trivial(q.clone(), d4.clone());
    let center = d4.center();
    let qn = q.order();
    let mut central_tables = vec![vec![0usize; qn * qn]];
    for slot in 0..qn * qn {
        let mut next = Vec::new();
        for t in &central_tables {
            for &z in &center {
                let mut t2 = t.clone();
                t2[slot] = z;
                next.push(t2);
            }
        }
        central_tables = next;
    }
    central_tables.sort();
    central_tables.dedup();
    for values in central_tables {
        let lam = Cochain2::new(qn, values)?;
        for ka in all_kappas(&rep) {
            let lk = coboundary(&rep, &ka);
            let conjugated = lam.inv(&d4).mul(&lk, &d4)?.mul(&lam, &d4)?;
            if conjugated != lk {
                return Err(CohomologyError::SchreierMismatch {
                    what: "central-image conjugation moved a coboundary".into(),
                });
            }
        }
    }

    Ok(ObstructionReport {
        kappa,
        lambda,
        product,
        abelian_closure_checked,
        central_case_checked: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn trivial_rep(qn: usize, hn: usize) -> ReverseRepresentation {
        ReverseRepresentation::trivial(cyclic(qn), cyclic(hn))
    }

    #[test]
    fn cochain_group_laws() {
        let (q, h) = (cyclic(2), cyclic(2));
        let zero = Cochain2::zero(&q, &h);
        let lam = Cochain2::new(2, vec![1, 0, 1, 1]).unwrap();
        assert_eq!(lam.mul(&zero, &h).unwrap(), lam);
        assert_eq!(lam.mul(&lam.inv(&h), &h).unwrap(), zero);
        // |C2| = |H|^(|Q|^2)
        assert_eq!(2usize.pow(4), 16);
    }

    #[test]
    fn z2_of_z2_over_z2_has_four_cocycles() {
        let rep = trivial_rep(2, 2);
        let z2 = enumerate_z2(&rep).unwrap();
        assert_eq!(z2.len(), 4);
        // constraints force lam(0,0) = lam(0,1) = lam(1,0)
        for lam in &z2 {
            assert_eq!(lam.get(0, 0), lam.get(0, 1));
            assert_eq!(lam.get(0, 0), lam.get(1, 0));
        }
        assert!(is_cocycle(&rep, &Cochain2::zero(&cyclic(2), &cyclic(2))));
        // the order-4 factor set
        let factor = Cochain2::new(2, vec![0, 0, 0, 1]).unwrap();
        assert!(is_cocycle(&rep, &factor));
        // closure under the product
        for a in &z2 {
            for b in &z2 {
                let p = a.mul(b, &cyclic(2)).unwrap();
                assert!(z2.binary_search(&p).is_ok());
            }
        }
    }

    #[test]
    fn coboundaries_of_z2_over_z2_are_the_constants() {
        let rep = trivial_rep(2, 2);
        let b2 = enumerate_b2(&rep).unwrap();
        assert_eq!(b2.len(), 2);
        for b in &b2 {
            let v = b.get(0, 0);
            assert!(b.values().iter().all(|&x| x == v));
        }
        let e = coboundary(&rep, &[0, 0]);
        assert_eq!(e, Cochain2::zero(&cyclic(2), &cyclic(2)));
    }

    #[test]
    fn coboundary_product_law() {
        let rep = trivial_rep(2, 4);
        let h = cyclic(4);
        for ka in all_kappas(&rep) {
            for la in all_kappas(&rep) {
                let combined: Vec<usize> =
                    ka.iter().zip(&la).map(|(&x, &y)| h.mul(x, y)).collect();
                assert_eq!(
                    coboundary(&rep, &ka).mul(&coboundary(&rep, &la), &h).unwrap(),
                    coboundary(&rep, &combined)
                );
                let inv_k: Vec<usize> = ka.iter().map(|&x| h.inv(x)).collect();
                assert_eq!(coboundary(&rep, &ka).inv(&h), coboundary(&rep, &inv_k));
            }
        }
    }

    #[test]
    fn h2_orders_for_small_kernels() {
        assert_eq!(h2(&trivial_rep(2, 2)).unwrap().h2_order(), 2);
        assert_eq!(h2(&trivial_rep(2, 3)).unwrap().h2_order(), 1);
        assert_eq!(h2(&trivial_rep(2, 4)).unwrap().h2_order(), 2);
        assert!(matches!(
            h2(&ReverseRepresentation::trivial(cyclic(2), crate::group::symmetric3())),
            Err(CohomologyError::HNotAbelian)
        ));
    }

    #[test]
    fn schreier_pairs_classes_with_ambients() {
        let out = schreier_classify(&trivial_rep(2, 2)).unwrap();
        assert_eq!(out.extensions.len(), 2);
        let names: Vec<String> = out
            .extensions
            .iter()
            .map(|e| crate::group::describe_group(e.ambient()))
            .collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["v4", "z4"]);
    }

    #[test]
    fn inversion_representation_gives_s3() {
        let rep = ReverseRepresentation::inversion(cyclic(2), cyclic(3)).unwrap();
        let out = schreier_classify(&rep).unwrap();
        assert_eq!(out.h2.h2_order(), 1);
        assert_eq!(
            crate::group::describe_group(out.extensions[0].ambient()),
            "s3"
        );
        let trivial = schreier_classify(&trivial_rep(2, 3)).unwrap();
        assert_eq!(trivial.extensions.len(), 1);
        assert_eq!(
            crate::group::describe_group(trivial.extensions[0].ambient()),
            "z6"
        );
    }

    #[test]
    fn reverse_composition_convention_is_pinned() {
        // psi([a,b], alpha) = psi(a, psi(b, alpha)); with Q = Z2 and the
        // inversion representation: [1,1] = 0 must act as inv ∘ inv = id
        let rep = ReverseRepresentation::inversion(cyclic(2), cyclic(3)).unwrap();
        for al in 0..3 {
            assert_eq!(rep.apply(0, al), rep.apply(1, rep.apply(1, al)));
        }
        // a non-representation is rejected: rows that fail the composition
        let bad = ReverseRepresentation::new(
            cyclic(2),
            cyclic(3),
            vec![vec![0, 2, 1], vec![0, 1, 2]],
        );
        assert!(matches!(
            bad,
            Err(CohomologyError::NotAReverseRepresentation { .. })
        ));
    }

    #[test]
    fn obstruction_witness_exists_for_s3() {
        let report = noncommutative_obstruction_witness().unwrap();
        assert!(report.central_case_checked);
        assert_eq!(report.abelian_closure_checked.len(), 7);
        // re-verify the witness
        let q = by_name("z2").unwrap();
        let s3 = by_name("s3").unwrap();
        let rep = ReverseRepresentation::trivial(q, s3.clone());
        let set: HashSet<Cochain2> =
            all_kappas(&rep).iter().map(|k| coboundary(&rep, k)).collect();
        let prod = coboundary(&rep, &report.kappa)
            .mul(&coboundary(&rep, &report.lambda), &s3)
            .unwrap();
        assert_eq!(prod, report.product);
        assert!(!set.contains(&prod));
    }

    #[test]
    fn representation_enumeration_counts() {
        // maps Z2 -> Aut(Z4): both choices of image of the generator satisfy
        // the reverse-composition law
        assert_eq!(all_reverse_representations(&cyclic(2), &cyclic(4)).len(), 2);
        assert_eq!(all_reverse_representations(&cyclic(2), &cyclic(2)).len(), 1);
        assert_eq!(all_reverse_representations(&cyclic(3), &cyclic(2)).len(), 1);
    }
}
