//! Actions on the set of hypergroups and orbit machinery.
//!
//! Two families act on the hypergroups with a fixed pair `(M, H)`: maps
//! `kappa: M -> H` (a reverse action of `H^M`, geometrically a change of
//! transversal) and permutations `f` of `M` (a change of the bijection onto
//! the transversal). Together they form the wreath group `H^M x S_M`, whose
//! orbits are the classification currency of the whole crate.

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{all_permutations, automorphisms, FiniteGroup, GroupError};
use crate::hypergroup::{HgError, Hypergroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("LengthMismatch: kappa has {got} entries, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("NotAPermutation: f is not a permutation of the basic set")]
    NotAPermutation,
    #[error("SizeMismatch: wreath elements live over different (H, M) pairs")]
    SizeMismatch,
    #[error("SearchSpaceTooLarge: enumeration over |H| = {h_order}, m = {m} is not supported")]
    SearchSpaceTooLarge { h_order: usize, m: usize },
    #[error("NotClosed: the orbit of entry {index} leaves the given list")]
    NotClosed { index: usize },
    #[error(transparent)]
    Hg(#[from] HgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An element `kappa f` of the wreath group `H^M x S_M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub kappa: Vec<usize>,
    pub perm: Vec<usize>,
}

/// The wreath group of `H` by `S_M` with the product
/// `kappa f · lambda g = ((f·lambda) * kappa)(f·g)`.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    h: FiniteGroup,
    m: usize,
}

impl WreathGroup {
    pub fn new(h: FiniteGroup, m: usize) -> Self {
        WreathGroup { h, m }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn basic_len(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.h.order().pow(self.m as u32) * (1..=self.m).product::<usize>()
    }

    fn check(&self, x: &WreathElement) -> Result<(), ActionError> {
        if x.kappa.len() != self.m || x.perm.len() != self.m {
            return Err(ActionError::SizeMismatch);
        }
        if x.kappa.iter().any(|&v| v >= self.h.order()) {
            return Err(ActionError::SizeMismatch);
        }
        if !is_permutation(&x.perm) {
            return Err(ActionError::NotAPermutation);
        }
        Ok(())
    }

    pub fn id(&self) -> WreathElement {
        WreathElement {
            kappa: vec![self.h.identity(); self.m],
            perm: (0..self.m).collect(),
        }
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement, ActionError> {
        self.check(x)?;
        self.check(y)?;
        let kappa = (0..self.m)
            .map(|a| self.h.mul(y.kappa[x.perm[a]], x.kappa[a]))
            .collect();
        let perm = (0..self.m).map(|a| y.perm[x.perm[a]]).collect();
        Ok(WreathElement { kappa, perm })
    }

    /// Inverse `(f^{-1}·kappa^{-1}) f^{-1}`.
    pub fn inv(&self, x: &WreathElement) -> Result<WreathElement, ActionError> {
        self.check(x)?;
        let finv = invert_permutation(&x.perm);
        let kappa = (0..self.m).map(|a| self.h.inv(x.kappa[finv[a]])).collect();
        Ok(WreathElement { kappa, perm: finv })
    }

    /// All elements, kappa-major then permutation, both lexicographic.
    pub fn elements(&self) -> Vec<WreathElement> {
        let perms = all_permutations(self.m);
        let mut out = Vec::with_capacity(self.order());
        for_each_word(self.m, self.h.order(), |kappa| {
            for perm in &perms {
                out.push(WreathElement { kappa: kappa.to_vec(), perm: perm.clone() });
            }
        });
        out
    }

    /// The subgroup `H^M x {1_M}`, reverse isomorphic to `H^M`.
    pub fn kappa_elements(&self) -> Vec<WreathElement> {
        let id: Vec<usize> = (0..self.m).collect();
        let mut out = Vec::new();
        for_each_word(self.m, self.h.order(), |kappa| {
            out.push(WreathElement { kappa: kappa.to_vec(), perm: id.clone() });
        });
        out
    }

    /// Cayley table of the whole wreath group, validated as a group.
    pub fn cayley_table(&self) -> Result<FiniteGroup, ActionError> {
        let elems = self.elements();
        let pos: HashMap<&WreathElement, usize> =
            elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::with_capacity(elems.len());
        for x in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for y in &elems {
                row.push(pos[&self.mul(x, y)?]);
            }
            rows.push(row);
        }
        Ok(FiniteGroup::from_table(&rows)?)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}

fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Runs `f` over every word of the given length with digits `0..radix`,
/// in lexicographic order.
fn for_each_word(len: usize, radix: usize, mut f: impl FnMut(&[usize])) {
    let mut word = vec![0usize; len];
    loop {
        f(&word);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < radix {
                break;
            }
            word[i] = 0;
        }
    }
}

/// The kappa-action: rebuilds the tables along the transversal shift
/// `a -> kappa_a a`.
pub fn act_kappa(x: &Hypergroup, kappa: &[usize]) -> Result<Hypergroup, ActionError> {
    let h = x.group().clone();
    let m = x.basic_len();
    if kappa.len() != m {
        return Err(ActionError::LengthMismatch { got: kappa.len(), expected: m });
    }
    if kappa.iter().any(|&v| v >= h.order()) {
        return Err(ActionError::LengthMismatch { got: kappa.len(), expected: m });
    }
    let result = Hypergroup::from_fns(
        h.clone(),
        m,
        |a, al| x.phi(a, al),
        |a, al| h.mul3(kappa[a], x.psi(a, al), h.inv(kappa[x.phi(a, al)])),
        |a, b| x.xi(x.phi(a, kappa[b]), b),
        |a, b| {
            let ab = x.phi(a, kappa[b]);
            let target = x.xi(ab, b);
            h.mul(
                h.mul3(kappa[a], x.psi(a, kappa[b]), x.lam(ab, b)),
                h.inv(kappa[target]),
            )
        },
    )?;
    Ok(result)
}

/// The permutation action: conjugates all tables by `f`.
pub fn act_f(x: &Hypergroup, f: &[usize]) -> Result<Hypergroup, ActionError> {
    let m = x.basic_len();
    if f.len() != m || !is_permutation(f) {
        return Err(ActionError::NotAPermutation);
    }
    let finv = invert_permutation(f);
    let result = Hypergroup::from_fns(
        x.group().clone(),
        m,
        |a, al| f[x.phi(finv[a], al)],
        |a, al| x.psi(finv[a], al),
        |a, b| f[x.xi(finv[a], finv[b])],
        |a, b| x.lam(finv[a], finv[b]),
    )?;
    Ok(result)
}

/// The combined wreath action: first the kappa part, then the permutation.
pub fn act_wreath(x: &Hypergroup, w: &WreathElement) -> Result<Hypergroup, ActionError> {
    act_f(&act_kappa(x, &w.kappa)?, &w.perm)
}

fn enumeration_supported(h_order: usize, m: usize) -> bool {
    m >= 1 && ((h_order <= 3 && m <= 3) || (h_order <= 4 && m <= 2))
}

/// Enumerates every hypergroup over `h` with basic set `0..m-1`.
///
/// Backtracks over `(phi, xi, psi, lam)` with the cheap axioms first: `phi`
/// is pre-filtered to right actions, `xi` to right quasigroups with a left
/// neutral, `psi` against A1 and surjectivity, and the factor table is
/// seeded through the forced row and column of the left neutral before the
/// remaining entries are scanned against A3-A5. Every candidate passes the
/// full axiom checker before being emitted. Output is sorted by the
/// concatenated `(phi, psi, xi, lam)` key.
pub fn enumerate_hypergroups(
    h: &FiniteGroup,
    m: usize,
) -> Result<Vec<Hypergroup>, ActionError> {
    let ho = h.order();
    if !enumeration_supported(ho, m) {
        return Err(ActionError::SearchSpaceTooLarge { h_order: ho, m });
    }
    let e = h.identity();

    // phi: right actions of H on M
    let mut phis: Vec<Vec<usize>> = Vec::new();
    for_each_word(m * ho, m, |tab| {
        let phi = |a: usize, al: usize| tab[a * ho + al];
        let action = (0..m).all(|a| phi(a, e) == a)
            && (0..m).all(|a| {
                (0..ho).all(|al| {
                    (0..ho).all(|be| phi(phi(a, al), be) == phi(a, h.mul(al, be)))
                })
            });
        if action {
            phis.push(tab.to_vec());
        }
    });

    // xi: columns are permutations and some row is left neutral
    let perms = all_permutations(m);
    let mut xis: Vec<Vec<usize>> = Vec::new();
    for_each_word(m, perms.len(), |cols| {
        let mut tab = vec![0usize; m * m];
        for a in 0..m {
            for x in 0..m {
                tab[x * m + a] = perms[cols[a]][x];
            }
        }
        if (0..m).any(|o| (0..m).all(|a| tab[o * m + a] == a)) {
            xis.push(tab);
        }
    });

    let mut found: Vec<Hypergroup> = Vec::new();
    for phi in &phis {
        let phi_at = |a: usize, al: usize| phi[a * ho + al];

        // psi candidates: A6, A1, and surjectivity, given phi
        let mut psis: Vec<Vec<usize>> = Vec::new();
        for_each_word(m * ho, ho, |tab| {
            let psi = |a: usize, al: usize| tab[a * ho + al];
            if (0..m).any(|a| psi(a, e) != e) {
                return;
            }
            let a1 = (0..m).all(|a| {
                (0..ho).all(|al| {
                    (0..ho).all(|be| {
                        psi(a, h.mul(al, be)) == h.mul(psi(a, al), psi(phi_at(a, al), be))
                    })
                })
            });
            if !a1 {
                return;
            }
            let mut hit = vec![false; ho];
            for &v in tab {
                hit[v] = true;
            }
            if hit.iter().all(|&b| b) {
                psis.push(tab.to_vec());
            }
        });

        for xi in &xis {
            let xi_at = |a: usize, b: usize| xi[a * m + b];
            let o = (0..m)
                .find(|&o| (0..m).all(|a| xi_at(o, a) == a))
                .expect("pre-filtered to have a left neutral");
            // A7: the left neutral is a fixed point of the action
            if (0..ho).any(|al| phi_at(o, al) != o) {
                continue;
            }
            for psi in &psis {
                let psi_at = |a: usize, al: usize| psi[a * ho + al];
                // A2 couples phi, psi, xi
                let a2 = (0..m).all(|a| {
                    (0..m).all(|b| {
                        (0..ho).all(|al| {
                            phi_at(xi_at(a, b), al)
                                == xi_at(phi_at(a, psi_at(b, al)), phi_at(b, al))
                        })
                    })
                });
                if !a2 {
                    continue;
                }
                for theta_inv in 0..ho {
                    let theta = h.inv(theta_inv);
                    // A8 and A10 pin the neutral row of psi and column of xi
                    if (0..ho).any(|al| psi_at(o, al) != h.mul3(theta_inv, al, theta)) {
                        continue;
                    }
                    if (0..m).any(|a| xi_at(a, o) != phi_at(a, theta_inv)) {
                        continue;
                    }
                    // lam is forced on row o (A9) and column o (A11)
                    let mut lam = vec![usize::MAX; m * m];
                    for b in 0..m {
                        lam[o * m + b] = theta_inv;
                    }
                    for a in 0..m {
                        lam[a * m + o] = psi_at(a, theta_inv);
                    }
                    let free: Vec<usize> = (0..m * m)
                        .filter(|&i| i / m != o && i % m != o)
                        .collect();
                    for_each_word(free.len(), ho, |vals| {
                        for (slot, &v) in free.iter().zip(vals) {
                            lam[*slot] = v;
                        }
                        let lam_at = |a: usize, b: usize| lam[a * m + b];
                        let a4 = (0..m).all(|a| {
                            (0..m).all(|b| {
                                (0..m).all(|c| {
                                    xi_at(xi_at(a, b), c)
                                        == xi_at(phi_at(a, lam_at(b, c)), xi_at(b, c))
                                })
                            })
                        });
                        if !a4 {
                            return;
                        }
                        let a3 = (0..m).all(|a| {
                            (0..m).all(|b| {
                                (0..ho).all(|al| {
                                    let ba = psi_at(b, al);
                                    h.mul(lam_at(a, b), psi_at(xi_at(a, b), al))
                                        == h.mul(
                                            psi_at(a, ba),
                                            lam_at(phi_at(a, ba), phi_at(b, al)),
                                        )
                                })
                            })
                        });
                        if !a3 {
                            return;
                        }
                        let a5 = (0..m).all(|a| {
                            (0..m).all(|b| {
                                (0..m).all(|c| {
                                    let bc = lam_at(b, c);
                                    h.mul(lam_at(a, b), lam_at(xi_at(a, b), c))
                                        == h.mul(
                                            psi_at(a, bc),
                                            lam_at(phi_at(a, bc), xi_at(b, c)),
                                        )
                                })
                            })
                        });
                        if !a5 {
                            return;
                        }
                        let candidate = Hypergroup::new(
                            h.clone(),
                            m,
                            phi.clone(),
                            psi.clone(),
                            xi.clone(),
                            lam.clone(),
                        )
                        .expect("tables have the right shape");
                        assert!(
                            candidate.check_axioms().passed(),
                            "enumeration produced a non-hypergroup"
                        );
                        found.push(candidate);
                    });
                }
            }
        }
    }
    found.sort_by_key(|x| x.table_key());
    Ok(found)
}

/// All trivial-action hypergroups over `h` with the fixed group table `xi`.
///
/// The twist rows range over `Aut H` and the factor table over the entries
/// not forced by the neutral element, filtered by the reduced axioms (B)
/// and (C); everything emitted passes the full axiom checker.
pub fn enumerate_trivial_phi_fixed_xi(
    h: &FiniteGroup,
    xi_rows: &[Vec<usize>],
) -> Result<Vec<Hypergroup>, ActionError> {
    let q = FiniteGroup::from_table(xi_rows)?;
    let m = q.order();
    let ho = h.order();
    let o = q.identity();
    let auts: Vec<Vec<usize>> = automorphisms(h).into_iter().map(|a| a.map().to_vec()).collect();

    let mut xi = vec![0usize; m * m];
    for a in 0..m {
        for b in 0..m {
            xi[a * m + b] = q.mul(a, b);
        }
    }
    let mut phi = vec![0usize; m * ho];
    for a in 0..m {
        for al in 0..ho {
            phi[a * ho + al] = a;
        }
    }

    let mut found = Vec::new();
    for_each_word(m, auts.len(), |rows| {
        let psi_at = |a: usize, al: usize| auts[rows[a]][al];
        for theta_inv in 0..ho {
            let theta = h.inv(theta_inv);
            if (0..ho).any(|al| psi_at(o, al) != h.mul3(theta_inv, al, theta)) {
                continue;
            }
            let mut lam = vec![usize::MAX; m * m];
            for b in 0..m {
                lam[o * m + b] = theta_inv;
            }
            for a in 0..m {
                lam[a * m + o] = psi_at(a, theta_inv);
            }
            let free: Vec<usize> =
                (0..m * m).filter(|&i| i / m != o && i % m != o).collect();
            for_each_word(free.len(), ho, |vals| {
                for (slot, &v) in free.iter().zip(vals) {
                    lam[*slot] = v;
                }
                let lam_at = |a: usize, b: usize| lam[a * m + b];
                // (B): ^{[a,b]} alpha = (a,b)^{-1} ^a(^b alpha) (a,b)
                let b_ok = (0..m).all(|a| {
                    (0..m).all(|b| {
                        let lab = lam_at(a, b);
                        (0..ho).all(|al| {
                            psi_at(q.mul(a, b), al)
                                == h.mul3(h.inv(lab), psi_at(a, psi_at(b, al)), lab)
                        })
                    })
                });
                if !b_ok {
                    return;
                }
                // (C): (a,b)(­[a,b],c) = ^a(b,c)(a,[b,c])
                let c_ok = (0..m).all(|a| {
                    (0..m).all(|b| {
                        (0..m).all(|c| {
                            h.mul(lam_at(a, b), lam_at(q.mul(a, b), c))
                                == h.mul(psi_at(a, lam_at(b, c)), lam_at(a, q.mul(b, c)))
                        })
                    })
                });
                if !c_ok {
                    return;
                }
                let mut psi = vec![0usize; m * ho];
                for a in 0..m {
                    for al in 0..ho {
                        psi[a * ho + al] = psi_at(a, al);
                    }
                }
                let candidate =
                    Hypergroup::new(h.clone(), m, phi.clone(), psi, xi.clone(), lam.clone())
                        .expect("tables have the right shape");
                assert!(
                    candidate.check_axioms().passed(),
                    "trivial-phi enumeration produced a non-hypergroup"
                );
                found.push(candidate);
            });
        }
    });
    found.sort_by_key(|x| x.table_key());
    Ok(found)
}

/// All labeled group tables on `0..m-1` isomorphic to `q`.
pub fn labeled_tables_isomorphic_to(q: &FiniteGroup) -> Vec<Vec<Vec<usize>>> {
    let m = q.order();
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::new();
    for p in all_permutations(m) {
        let pinv = invert_permutation(&p);
        let rows: Vec<Vec<usize>> = (0..m)
            .map(|a| (0..m).map(|b| p[q.mul(pinv[a], pinv[b])]).collect())
            .collect();
        if !tables.contains(&rows) {
            tables.push(rows);
        }
    }
    tables.sort();
    tables
}

/// All trivial-action hypergroups whose `(M, xi)` is isomorphic to `q`.
pub fn enumerate_trivial_phi_class(
    h: &FiniteGroup,
    q: &FiniteGroup,
) -> Result<Vec<Hypergroup>, ActionError> {
    let mut found = Vec::new();
    for rows in labeled_tables_isomorphic_to(q) {
        found.extend(enumerate_trivial_phi_fixed_xi(h, &rows)?);
    }
    found.sort_by_key(|x| x.table_key());
    Ok(found)
}

/// One orbit of the wreath action on a list of hypergroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted indices into the input list.
    pub members: Vec<usize>,
    /// The member with the lexicographically least table key.
    pub representative: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Partitions `list` into orbits under the given wreath elements.
///
/// The list must be closed under the action (true for enumeration output);
/// an escaping image is reported as [`ActionError::NotClosed`].
pub fn orbits_under(
    list: &[Hypergroup],
    elements: &[WreathElement],
) -> Result<OrbitPartition, ActionError> {
    let index: HashMap<Vec<usize>, usize> =
        list.iter().enumerate().map(|(i, x)| (x.table_key(), i)).collect();
    let mut visited = vec![false; list.len()];
    let mut orbits = Vec::new();
    for start in 0..list.len() {
        if visited[start] {
            continue;
        }
        let mut members = Vec::new();
        for w in elements {
            let y = act_wreath(&list[start], w)?;
            match index.get(&y.table_key()) {
                Some(&j) => {
                    if !visited[j] {
                        visited[j] = true;
                        members.push(j);
                    }
                }
                None => return Err(ActionError::NotClosed { index: start }),
            }
        }
        members.sort_unstable();
        let representative = members
            .iter()
            .copied()
            .min_by_key(|&j| list[j].table_key())
            .expect("orbit contains its seed");
        orbits.push(Orbit { members, representative });
    }
    Ok(OrbitPartition { orbits })
}

/// Orbits under the full wreath group of the list's `(H, M)` pair.
pub fn orbits_full(list: &[Hypergroup]) -> Result<OrbitPartition, ActionError> {
    match list.first() {
        None => Ok(OrbitPartition { orbits: Vec::new() }),
        Some(x) => {
            let w = WreathGroup::new(x.group().clone(), x.basic_len());
            orbits_under(list, &w.elements())
        }
    }
}

/// Orbits under the kappa-only subgroup `(H^M)_rev`.
pub fn orbits_kappa(list: &[Hypergroup]) -> Result<OrbitPartition, ActionError> {
    match list.first() {
        None => Ok(OrbitPartition { orbits: Vec::new() }),
        Some(x) => {
            let w = WreathGroup::new(x.group().clone(), x.basic_len());
            orbits_under(list, &w.kappa_elements())
        }
    }
}

/// The wreath elements whose permutation part is an automorphism of the
/// given binary table on `M`: the stabilizer of a fixed `xi` inside the
/// wreath group (kappa maps alone do not move `xi` of a trivial-action
/// hypergroup, and these are the only permutations that fix it).
pub fn xi_stabilizer_elements(h: &FiniteGroup, xi_rows: &[Vec<usize>]) -> Vec<WreathElement> {
    let m = xi_rows.len();
    let auts: Vec<Vec<usize>> = all_permutations(m)
        .into_iter()
        .filter(|f| {
            (0..m).all(|a| (0..m).all(|b| f[xi_rows[a][b]] == xi_rows[f[a]][f[b]]))
        })
        .collect();
    let mut out = Vec::new();
    for_each_word(m, h.order(), |kappa| {
        for f in &auts {
            out.push(WreathElement { kappa: kappa.to_vec(), perm: f.clone() });
        }
    });
    out
}

/// Orbits under the full stabilizer of the fixed `xi` table: kappa maps
/// combined with table automorphisms.
pub fn orbits_xi_stabilizer(
    list: &[Hypergroup],
    xi_rows: &[Vec<usize>],
) -> Result<OrbitPartition, ActionError> {
    match list.first() {
        None => Ok(OrbitPartition { orbits: Vec::new() }),
        Some(x) => {
            let elements = xi_stabilizer_elements(x.group(), xi_rows);
            orbits_under(list, &elements)
        }
    }
}

/// Whether `y` lies in the wreath orbit of `x`.
pub fn same_orbit(x: &Hypergroup, y: &Hypergroup) -> Result<bool, ActionError> {
    if x.group() != y.group() || x.basic_len() != y.basic_len() {
        return Ok(false);
    }
    let w = WreathGroup::new(x.group().clone(), x.basic_len());
    for elem in w.elements() {
        if act_wreath(x, &elem)? == *y {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The lexicographically least hypergroup in the orbit of `x`.
pub fn orbit_canonical_form(x: &Hypergroup) -> Result<Hypergroup, ActionError> {
    let w = WreathGroup::new(x.group().clone(), x.basic_len());
    let mut best = x.clone();
    let mut best_key = x.table_key();
    for elem in w.elements() {
        let y = act_wreath(x, &elem)?;
        let key = y.table_key();
        if key < best_key {
            best_key = key;
            best = y;
        }
    }
    Ok(best)
}
