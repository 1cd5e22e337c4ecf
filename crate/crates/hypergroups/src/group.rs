//! Exact finite-group machinery on Cayley tables.
//!
//! Groups are given by an `n × n` multiplication table over element indices
//! `0..n-1`. Everything here is validated and exact: subgroups, right cosets,
//! right transversals, homomorphisms, isomorphism search, automorphism
//! groups, quotients, and a brute-force enumeration of all groups of order
//! up to 8 (one representative per isomorphism class) that serves as an
//! independent oracle for the classification routines.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest order accepted by [`enumerate_groups_oracle`].
pub const ORACLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("NotLatinSquare: row {row}, column {col} violates the Latin-square property")]
    NotLatinSquare { row: usize, col: usize },
    #[error("NoIdentity: the table has no two-sided identity element")]
    NoIdentity,
    #[error("NotAssociative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("NoInverse: element {elem} has no two-sided inverse")]
    NoInverse { elem: usize },
    #[error("NotASubgroup: {reason}")]
    NotASubgroup { reason: String },
    #[error("NotATransversal: {reason}")]
    NotATransversal { reason: String },
    #[error("NotNormal: subgroup is not normal, quotient operation is ill-defined")]
    NotNormal,
    #[error("NotAHomomorphism: map breaks the product of ({x}, {y})")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("OrderTooLarge: order {order} is outside the supported range 1..={limit}")]
    OrderTooLarge { order: usize, limit: usize },
}

/// A finite group of order `n` as a validated Cayley table over `0..n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={}, e={})", self.order, self.identity)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and wraps it as a group.
    ///
    /// Checks, in order: squareness and entry range, the Latin-square
    /// property, existence of a two-sided identity, associativity, and
    /// two-sided inverses. The first violated cell is reported.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotLatinSquare { row: r, col: row.len().min(n) });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
            }
        }
        // Latin: duplicates in a row, then duplicates in a column.
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let v = rows[r][c];
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let v = rows[r][c];
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
                seen[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| rows[e][i] == i && rows[i][e] == i))
            .ok_or(GroupError::NoIdentity)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rows[rows[i][j]][k] != rows[i][rows[j][k]] {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| rows[i][j] == identity && rows[j][i] == identity) {
                Some(j) => inverse[i] = j,
                None => return Err(GroupError::NoInverse { elem: i }),
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            table.extend_from_slice(row);
        }
        Ok(FiniteGroup { order: n, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Product of three elements, left to right.
    #[inline]
    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Conjugate `a` by `g`: `g^{-1} a g`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul3(self.inv(g), a, g)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|r| self.table[r * self.order..(r + 1) * self.order].to_vec())
            .collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the center `Z(G)`.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Sorted multiset of element orders; cheap isomorphism invariant.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Checks that `elems` (sorted, unique) is a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        self.subgroup_violation(elems).is_none()
    }

    fn subgroup_violation(&self, elems: &[usize]) -> Option<String> {
        if elems.is_empty() {
            return Some("empty set".to_string());
        }
        let mut member = vec![false; self.order];
        for (i, &x) in elems.iter().enumerate() {
            if x >= self.order {
                return Some(format!("element {x} out of range"));
            }
            if i > 0 && elems[i - 1] >= x {
                return Some("elements must be sorted and unique".to_string());
            }
            member[x] = true;
        }
        if !member[self.identity] {
            return Some("identity is missing".to_string());
        }
        for &x in elems {
            for &y in elems {
                if !member[self.mul(x, y)] {
                    return Some(format!("not closed: {x}*{y} escapes the set"));
                }
            }
            if !member[self.inv(x)] {
                return Some(format!("inverse of {x} escapes the set"));
            }
        }
        None
    }

    fn require_subgroup(&self, elems: &[usize]) -> Result<(), GroupError> {
        match self.subgroup_violation(elems) {
            None => Ok(()),
            Some(reason) => Err(GroupError::NotASubgroup { reason }),
        }
    }

    /// Closure of a seed set under products; result is sorted.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut stack: Vec<usize> = vec![self.identity];
        for &x in seed {
            if !member[x] {
                member[x] = true;
                stack.push(x);
            }
        }
        let mut i = 0;
        while i < stack.len() {
            let x = stack[i];
            i += 1;
            for j in 0..stack.len() {
                for p in [self.mul(x, stack[j]), self.mul(stack[j], x)] {
                    if !member[p] {
                        member[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&x| member[x]).collect();
        out.sort_unstable();
        out
    }

    /// All subgroups, each a sorted element list, ordered by (size, elements).
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![self.identity]];
        let mut i = 0;
        while i < found.len() {
            let base = found[i].clone();
            i += 1;
            for x in 0..self.order {
                if base.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seed = base.clone();
                seed.push(x);
                let closed = self.subgroup_closure(&seed);
                if !found.contains(&closed) {
                    found.push(closed);
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// Right cosets `H·a` of a subgroup. The subgroup itself comes first,
    /// the rest are ordered by their minimal element; each coset is sorted.
    pub fn right_cosets(&self, h_elems: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        self.require_subgroup(h_elems)?;
        let mut seen = vec![false; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut coset: Vec<usize> = h_elems.iter().map(|&h| self.mul(h, a)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets.sort_by_key(|c| c[0]);
        let h_pos = cosets
            .iter()
            .position(|c| c.binary_search(&self.identity).is_ok())
            .expect("identity lies in some coset");
        cosets.swap(0, h_pos);
        // keep the non-subgroup cosets in minimal-element order
        cosets[1..].sort_by_key(|c| c[0]);
        Ok(cosets)
    }

    pub fn is_normal_subgroup(&self, h_elems: &[usize]) -> bool {
        if !self.is_subgroup(h_elems) {
            return false;
        }
        h_elems
            .iter()
            .all(|&h| (0..self.order).all(|g| h_elems.binary_search(&self.conj(h, g)).is_ok()))
    }

    /// The abstract group of a subgroup, on positions into the sorted list.
    pub fn subgroup_table(&self, h_elems: &[usize]) -> Result<FiniteGroup, GroupError> {
        self.require_subgroup(h_elems)?;
        let pos: HashMap<usize, usize> =
            h_elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows: Vec<Vec<usize>> = h_elems
            .iter()
            .map(|&x| h_elems.iter().map(|&y| pos[&self.mul(x, y)]).collect())
            .collect();
        FiniteGroup::from_table(&rows)
    }

    /// Quotient by a normal subgroup: the group on coset indices (subgroup
    /// coset first, as in [`right_cosets`]) plus the element -> coset map.
    pub fn quotient_group(
        &self,
        h_elems: &[usize],
    ) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_normal_subgroup(h_elems) {
            self.require_subgroup(h_elems)?;
            return Err(GroupError::NotNormal);
        }
        let cosets = self.right_cosets(h_elems)?;
        let mut coset_of = vec![usize::MAX; self.order];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let rows: Vec<Vec<usize>> = cosets
            .iter()
            .map(|ci| cosets.iter().map(|cj| coset_of[self.mul(ci[0], cj[0])]).collect())
            .collect();
        Ok((FiniteGroup::from_table(&rows)?, coset_of))
    }
}

/// A right transversal: one chosen element per right coset of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    parent: FiniteGroup,
    subgroup: Vec<usize>,
    members: Vec<usize>,
}

impl Transversal {
    /// Validates that `members` meets every right coset of `subgroup` exactly once.
    pub fn new(
        parent: FiniteGroup,
        subgroup: Vec<usize>,
        members: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let cosets = parent.right_cosets(&subgroup)?;
        if members.len() != cosets.len() {
            return Err(GroupError::NotATransversal {
                reason: format!("{} members for {} cosets", members.len(), cosets.len()),
            });
        }
        let mut hit = vec![0usize; cosets.len()];
        for &x in &members {
            if x >= parent.order() {
                return Err(GroupError::NotATransversal {
                    reason: format!("element {x} out of range"),
                });
            }
            let c = cosets
                .iter()
                .position(|c| c.binary_search(&x).is_ok())
                .expect("every element lies in a coset");
            hit[c] += 1;
        }
        if let Some(c) = hit.iter().position(|&k| k != 1) {
            return Err(GroupError::NotATransversal {
                reason: format!("coset {c} is met {} times", hit[c]),
            });
        }
        Ok(Transversal { parent, subgroup, members })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

/// All right transversals to a subgroup, in lexicographic order of the
/// choice made per coset (cosets in [`FiniteGroup::right_cosets`] order).
pub fn enumerate_transversals(
    g: &FiniteGroup,
    h_elems: &[usize],
) -> Result<Vec<Transversal>, GroupError> {
    let cosets = g.right_cosets(h_elems)?;
    let m = cosets.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; m];
    loop {
        let members: Vec<usize> = (0..m).map(|i| cosets[i][choice[i]]).collect();
        out.push(Transversal {
            parent: g.clone(),
            subgroup: h_elems.to_vec(),
            members,
        });
        // odometer over coset positions
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < cosets[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// A homomorphism between finite groups, given elementwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupMorphism {
    /// Validates `map[x*y] == map[x]*map[y]` on all pairs.
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() || map.iter().any(|&v| v >= target.order()) {
            return Err(GroupError::NotAHomomorphism { x: map.len(), y: 0 });
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(GroupMorphism { source, target, map })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Image of the source, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Diagram-order composite: first `self`, then `g`.
    pub fn then(&self, g: &GroupMorphism) -> Result<GroupMorphism, GroupError> {
        if self.target != g.source {
            return Err(GroupError::NotAHomomorphism { x: 0, y: 0 });
        }
        let map = self.map.iter().map(|&v| g.map[v]).collect();
        GroupMorphism::new(self.source.clone(), g.target.clone(), map)
    }

    pub fn identity(g: &FiniteGroup) -> GroupMorphism {
        GroupMorphism {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.order()).collect(),
        }
    }
}

/// Isomorphism search with a partial assignment already fixed.
///
/// Backtracks over images of the least unmapped element, pruning by element
/// order and propagating products of mapped elements. The first isomorphism
/// in this fixed order is returned, so results are deterministic.
pub fn isomorphism_extending(
    g: &FiniteGroup,
    g2: &FiniteGroup,
    seed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(g, g2, seed, &mut |map| {
        found = Some(map.to_vec());
        true
    });
    found
}

/// Some isomorphism `g -> g2`, if one exists (deterministic first-found).
pub fn isomorphism(g: &FiniteGroup, g2: &FiniteGroup) -> Option<GroupMorphism> {
    if g.order() != g2.order() || g.order_multiset() != g2.order_multiset() {
        return None;
    }
    let map = isomorphism_extending(g, g2, &[(g.identity(), g2.identity())])?;
    Some(GroupMorphism { source: g.clone(), target: g2.clone(), map })
}

/// All isomorphisms `g -> g2`, sorted by their element map.
pub fn all_isomorphisms(g: &FiniteGroup, g2: &FiniteGroup) -> Vec<GroupMorphism> {
    if g.order() != g2.order() || g.order_multiset() != g2.order_multiset() {
        return Vec::new();
    }
    let mut maps: Vec<Vec<usize>> = Vec::new();
    search_isomorphisms(g, g2, &[(g.identity(), g2.identity())], &mut |map| {
        maps.push(map.to_vec());
        false
    });
    maps.sort();
    maps.into_iter()
        .map(|map| GroupMorphism { source: g.clone(), target: g2.clone(), map })
        .collect()
}

/// The automorphism group of `g` as an explicit list of isomorphisms.
pub fn automorphisms(g: &FiniteGroup) -> Vec<GroupMorphism> {
    all_isomorphisms(g, g)
}

/// Core backtracking used by the isomorphism searches. `emit` is called for
/// every complete bijective solution; returning `true` stops the search.
fn search_isomorphisms(
    g: &FiniteGroup,
    g2: &FiniteGroup,
    seed: &[(usize, usize)],
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = g.order();
    if n != g2.order() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut pinned = vec![(g.identity(), g2.identity())];
    pinned.extend_from_slice(seed);
    for (x, y) in pinned {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || g.element_order(x) != g2.element_order(y) {
            return false;
        }
        map[x] = y;
        used[y] = true;
    }
    if !propagate(g, g2, &mut map, &mut used) {
        return false;
    }
    extend(g, g2, &mut map, &mut used, emit)
}

/// Closes a partial map under products; false on contradiction.
fn propagate(
    g: &FiniteGroup,
    g2: &FiniteGroup,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    loop {
        let mut changed = false;
        let known: Vec<usize> = (0..g.order()).filter(|&x| map[x] != usize::MAX).collect();
        for &x in &known {
            for &y in &known {
                let z = g.mul(x, y);
                let tz = g2.mul(map[x], map[y]);
                if map[z] == usize::MAX {
                    if used[tz] {
                        return false;
                    }
                    map[z] = tz;
                    used[tz] = true;
                    changed = true;
                } else if map[z] != tz {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn extend(
    g: &FiniteGroup,
    g2: &FiniteGroup,
    map: &mut [usize],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let x = match (0..g.order()).find(|&x| map[x] == usize::MAX) {
        Some(x) => x,
        None => return emit(map),
    };
    let ord = g.element_order(x);
    for c in 0..g2.order() {
        if used[c] || g2.element_order(c) != ord {
            continue;
        }
        let mut map2 = map.to_vec();
        let mut used2 = used.to_vec();
        map2[x] = c;
        used2[c] = true;
        if propagate(g, g2, &mut map2, &mut used2) && extend(g, g2, &mut map2, &mut used2, emit) {
            return true;
        }
    }
    false
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Lexicographically minimal flattened Cayley table over all relabelings
/// that fix the identity at index 0.
pub fn canonical_form(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    // bring the identity to 0 first
    let base = relabel_identity_to_zero(g);
    if n <= 1 {
        return base.flat_table().to_vec();
    }
    let mut best: Option<Vec<usize>> = None;
    for perm in all_permutations(n - 1) {
        // sigma: old -> new, fixing 0
        let mut sigma = vec![0usize; n];
        for (i, &p) in perm.iter().enumerate() {
            sigma[i + 1] = p + 1;
        }
        let mut inv_sigma = vec![0usize; n];
        for (old, &new) in sigma.iter().enumerate() {
            inv_sigma[new] = old;
        }
        let mut flat = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                flat.push(sigma[base.mul(inv_sigma[i], inv_sigma[j])]);
            }
        }
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
    }
    best.unwrap()
}

/// Relabels so the identity sits at index 0 (swapping 0 and the identity).
pub fn relabel_identity_to_zero(g: &FiniteGroup) -> FiniteGroup {
    let e = g.identity();
    if e == 0 {
        return g.clone();
    }
    let n = g.order();
    let sigma = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| sigma(g.mul(sigma(i), sigma(j)))).collect())
        .collect();
    FiniteGroup::from_table(&rows).expect("relabeling preserves the group laws")
}

/// Enumerates all groups of order `n <= 8` up to isomorphism.
///
/// Backtracking over the Cayley table with the identity fixed at 0, the
/// Latin-square constraint maintained by masks, and associativity checked
/// incrementally on every assignment. Tables are visited in lexicographic
/// order, so the first member of each isomorphism class is its canonical
/// (lexicographically minimal) table.
pub fn enumerate_groups_oracle(n: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    if n == 0 || n > ORACLE_LIMIT {
        return Err(GroupError::OrderTooLarge { order: n, limit: ORACLE_LIMIT });
    }
    if n == 1 {
        return Ok(vec![FiniteGroup::from_table(&[vec![0]])?]);
    }
    const UNDEF: usize = usize::MAX;
    let mut t = vec![vec![UNDEF; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    let mut row_used = vec![0u16; n];
    let mut col_used = vec![0u16; n];
    for i in 0..n {
        row_used[i] |= 1 << i; // t[i][0] = i
        col_used[i] |= 1 << i; // t[0][i] = i
    }
    let cells: Vec<(usize, usize)> =
        (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    let mut reps: Vec<(Vec<usize>, FiniteGroup)> = Vec::new();
    fill(n, &mut t, &mut row_used, &mut col_used, &cells, 0, &mut reps);
    Ok(reps.into_iter().map(|(_, g)| g).collect())
}

fn fill(
    n: usize,
    t: &mut Vec<Vec<usize>>,
    row_used: &mut [u16],
    col_used: &mut [u16],
    cells: &[(usize, usize)],
    idx: usize,
    reps: &mut Vec<(Vec<usize>, FiniteGroup)>,
) {
    if idx == cells.len() {
        let rows: Vec<Vec<usize>> = t.clone();
        let g = FiniteGroup::from_table(&rows).expect("search maintains the group laws");
        let fp = g.order_multiset();
        let is_new = reps
            .iter()
            .filter(|(f, _)| *f == fp)
            .all(|(_, rep)| isomorphism(rep, &g).is_none());
        if is_new {
            reps.push((fp, g));
        }
        return;
    }
    let (r, c) = cells[idx];
    for v in 0..n {
        let bit = 1u16 << v;
        if row_used[r] & bit != 0 || col_used[c] & bit != 0 {
            continue;
        }
        t[r][c] = v;
        row_used[r] |= bit;
        col_used[c] |= bit;
        if assoc_ok(n, t, r, c, v) {
            fill(n, t, row_used, col_used, cells, idx + 1, reps);
        }
        t[r][c] = usize::MAX;
        row_used[r] &= !bit;
        col_used[c] &= !bit;
    }
}

/// Incremental associativity check for the newly assigned cell `t[r][c] = v`:
/// every triple whose four table lookups just became complete is verified.
fn assoc_ok(n: usize, t: &[Vec<usize>], r: usize, c: usize, v: usize) -> bool {
    const UNDEF: usize = usize::MAX;
    // (x, y) = (r, c): compare (r*c)*z with r*(c*z)
    for z in 0..n {
        let b = t[c][z];
        if b != UNDEF {
            let lhs = t[v][z];
            let rhs = t[r][b];
            if lhs != UNDEF && rhs != UNDEF && lhs != rhs {
                return false;
            }
        }
    }
    // (y, z) = (r, c): compare (x*r)*c with x*(r*c)
    for x in 0..n {
        let a = t[x][r];
        if a != UNDEF {
            let lhs = t[a][c];
            let rhs = t[x][v];
            if lhs != UNDEF && rhs != UNDEF && lhs != rhs {
                return false;
            }
        }
    }
    // cell is the outer-left lookup: triples (x, y, c) with x*y = r
    for x in 0..n {
        for y in 0..n {
            if t[x][y] == r {
                let b = t[y][c];
                if b != UNDEF {
                    let rhs = t[x][b];
                    if rhs != UNDEF && rhs != v {
                        return false;
                    }
                }
            }
        }
    }
    // cell is the outer-right lookup: triples (r, y, z) with y*z = c
    for y in 0..n {
        for z in 0..n {
            if t[y][z] == c {
                let a = t[r][y];
                if a != UNDEF {
                    let lhs = t[a][z];
                    if lhs != UNDEF && lhs != v {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// --- named groups -----------------------------------------------------------

/// Cyclic group of order `n`, identity 0.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(&rows).expect("cyclic table is a group")
}

/// Direct product on pair indices `(a, b) -> a*|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let (xa, xb) = (x / nb, x % nb);
            (0..n)
                .map(|y| {
                    let (ya, yb) = (y / nb, y % nb);
                    a.mul(xa, ya) * nb + b.mul(xb, yb)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows).expect("product table is a group")
}

/// Klein four-group `Z2 x Z2`.
pub fn klein() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

fn perm_group_table(elems: &[Vec<usize>]) -> FiniteGroup {
    let pos: HashMap<&[usize], usize> =
        elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|p| {
            elems
                .iter()
                .map(|q| {
                    // diagram order: apply p, then q
                    let composed: Vec<usize> = p.iter().map(|&x| q[x]).collect();
                    pos[composed.as_slice()]
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows).expect("permutation composition is a group")
}

/// Symmetric group on 3 letters; elements in lexicographic one-line order.
pub fn symmetric3() -> FiniteGroup {
    perm_group_table(&all_permutations(3))
}

/// Dihedral group of the square: rotations `r^0..r^3` then reflections `s, sr, sr^2, sr^3`.
pub fn dihedral4() -> FiniteGroup {
    let r = vec![1usize, 2, 3, 0];
    let s = vec![3usize, 2, 1, 0];
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&x| q[x]).collect() };
    let mut elems: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3]];
    for _ in 0..3 {
        elems.push(compose(elems.last().unwrap(), &r));
    }
    for i in 0..4 {
        elems.push(compose(&s, &elems[i]));
    }
    perm_group_table(&elems)
}

/// Quaternion group `{1, -1, i, -i, j, -j, k, -k}` in that index order.
pub fn quaternion8() -> FiniteGroup {
    // element = (axis, sign): axis 0 is the scalar, axes 1..3 are i, j, k
    let decode = |x: usize| (x / 2, x % 2 == 1);
    let encode = |axis: usize, neg: bool| axis * 2 + usize::from(neg);
    let mul = |x: usize, y: usize| -> usize {
        let (a, na) = decode(x);
        let (b, nb) = decode(y);
        let neg = na ^ nb;
        if a == 0 {
            encode(b, neg)
        } else if b == 0 {
            encode(a, neg)
        } else if a == b {
            encode(0, !neg) // i*i = -1
        } else {
            // i*j = k and cyclically; the reverse order picks up a sign
            let c = 6 - a - b;
            let cyclic = matches!((a, b), (1, 2) | (2, 3) | (3, 1));
            encode(c, neg ^ !cyclic)
        }
    };
    let rows: Vec<Vec<usize>> = (0..8).map(|x| (0..8).map(|y| mul(x, y)).collect()).collect();
    FiniteGroup::from_table(&rows).expect("quaternion table is a group")
}

/// Built-in groups addressable by name: `z1..z8`, `v4`, `s3`, `d4`, `q8`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    match name {
        "z1" => Some(cyclic(1)),
        "z2" => Some(cyclic(2)),
        "z3" => Some(cyclic(3)),
        "z4" => Some(cyclic(4)),
        "z5" => Some(cyclic(5)),
        "z6" => Some(cyclic(6)),
        "z7" => Some(cyclic(7)),
        "z8" => Some(cyclic(8)),
        "v4" => Some(klein()),
        "s3" => Some(symmetric3()),
        "d4" => Some(dihedral4()),
        "q8" => Some(quaternion8()),
        _ => None,
    }
}

/// A human-readable structural name: a built-in name when isomorphic to one,
/// else the invariant-factor decomposition for abelian groups, else a
/// generic `order<n>` tag.
pub fn describe_group(g: &FiniteGroup) -> String {
    for name in ["z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "v4", "s3", "d4", "q8"] {
        let h = by_name(name).unwrap();
        if g.order() == h.order() && isomorphism(g, &h).is_some() {
            return name.to_string();
        }
    }
    if g.is_abelian() {
        if let Some(parts) = abelian_decomposition(g) {
            return parts
                .iter()
                .map(|p| format!("z{p}"))
                .collect::<Vec<_>>()
                .join("x");
        }
    }
    format!("order{}", g.order())
}

/// Cyclic factors of an abelian group, largest first, found by peeling off
/// maximal-order cyclic direct factors.
fn abelian_decomposition(g: &FiniteGroup) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    let mut factors = Vec::new();
    let mut current = g.clone();
    while current.order() > 1 {
        let max_ord = (0..current.order()).map(|x| current.element_order(x)).max().unwrap();
        factors.push(max_ord);
        let x = (0..current.order()).find(|&x| current.element_order(x) == max_ord).unwrap();
        let cyc = current.subgroup_closure(&[x]);
        if cyc.len() == current.order() {
            break;
        }
        let (q, _) = current.quotient_group(&cyc).ok()?;
        current = q;
    }
    Some(factors)
}
